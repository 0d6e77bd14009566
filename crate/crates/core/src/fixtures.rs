//! Reference frameworks used by the tests and shipped as example files.

use crate::geometry::{int, ratio, Vec3};
use crate::model::{Angle, CadConstraint, Framework, Line, Payload, Plane};

fn v3(x: i64, y: i64, z: i64) -> Vec3 {
    Vec3::from_ints(x, y, z)
}

/// Two dice joined by plane-plane parallel, plane-plane perpendicular,
/// line-plane distance and point-point coincidence. Overconstrained but rigid.
pub fn dice() -> Framework {
    let mut fw = Framework::with_bodies(["A", "B"]);
    fw.push(CadConstraint::new(
        1,
        2,
        Payload::PlanePlaneParallel {
            point_i: v3(0, 2, 0),
            point_j: v3(0, 1, 0),
            normal: v3(0, 1, 0),
        },
    ))
    .push(CadConstraint::new(
        1,
        2,
        Payload::PlanePlanePerpendicular {
            plane_i: Plane::new(v3(0, 2, 0), v3(1, 0, 0)),
            plane_j: Plane::new(v3(0, 0, 1), v3(0, 0, 1)),
        },
    ))
    .push(CadConstraint::new(
        1,
        2,
        Payload::LinePlaneDistance {
            line_i: Line::new(v3(0, 2, 0), v3(0, 0, 1)),
            plane_j: Plane::new(v3(0, 1, 0), v3(0, 1, 0)),
            distance: int(1),
        },
    ))
    .push(CadConstraint::new(
        1,
        2,
        Payload::PointPointCoincidence { point: v3(0, 1, 1) },
    ));
    fw
}

/// The dice without the line-plane distance; minimally rigid.
pub fn dice_minus_e3() -> Framework {
    dice().without(2)
}

/// Two dice sharing one line: they can slide along it and turn about it.
pub fn dice_one_line_coincidence() -> Framework {
    let mut fw = Framework::with_bodies(["A", "B"]);
    fw.push(CadConstraint::new(
        1,
        2,
        Payload::LineLineCoincidence {
            line: Line::new(v3(0, 1, 0), v3(0, 0, 1)),
        },
    ));
    fw
}

/// Two dice sharing two skew lines: 8 rows, rigid and overconstrained.
pub fn dice_two_line_coincidences() -> Framework {
    let mut fw = dice_one_line_coincidence();
    fw.push(CadConstraint::new(
        1,
        2,
        Payload::LineLineCoincidence {
            line: Line::new(v3(0, 1, 1), v3(1, 0, 0)),
        },
    ));
    fw
}

/// Three bodies whose primitive cad graph is (6,6,3,3)-nested tight but which
/// keep one flex: C translates along x.
///
/// A-B share the x-axis and carry two bars parallel to it, so B can only slide
/// along x relative to A. A-C share the plane z = 5 and fix the angle between
/// A's x-direction and C's line `(3,4,0)`, so C can only translate in that
/// plane. B-C keeps B's line `x = 0, y = 3` inside C's plane `y = 3`, which
/// stops C in y but not in x.
pub fn counterexample() -> Framework {
    let mut fw = Framework::with_bodies(["A", "B", "C"]);
    fw.push(CadConstraint::new(
        1,
        2,
        Payload::LineLineCoincidence {
            line: Line::new(v3(0, 0, 0), v3(1, 0, 0)),
        },
    ))
    .push(CadConstraint::new(
        1,
        2,
        Payload::PointPointDistance {
            point_i: v3(0, 1, 0),
            point_j: v3(1, 1, 0),
            distance: int(1),
        },
    ))
    .push(CadConstraint::new(
        1,
        2,
        Payload::PointPointDistance {
            point_i: v3(0, 0, 1),
            point_j: v3(2, 0, 1),
            distance: int(2),
        },
    ))
    .push(CadConstraint::new(
        1,
        3,
        Payload::PlanePlaneCoincidence {
            plane: Plane::new(v3(0, 0, 5), v3(0, 0, 1)),
        },
    ))
    .push(CadConstraint::new(
        1,
        3,
        Payload::LineLineFixedAngular {
            line_i: Line::new(v3(0, 0, 0), v3(1, 0, 0)),
            line_j: Line::new(v3(0, 0, 5), v3(3, 4, 0)),
            angle: Angle::from_cos(ratio(3, 5)),
        },
    ))
    .push(CadConstraint::new(
        2,
        3,
        Payload::LinePlaneCoincidence {
            line_i: Line::new(v3(0, 3, 0), v3(0, 0, 1)),
            plane_j: Plane::new(v3(0, 3, 0), v3(0, 1, 0)),
        },
    ));
    fw
}

/// Named reference frameworks, in a fixed order.
pub fn corpus() -> Vec<(&'static str, Framework)> {
    vec![
        ("dice", dice()),
        ("dice-minus-e3", dice_minus_e3()),
        ("dice-one-line-coincidence", dice_one_line_coincidence()),
        ("dice-two-line-coincidences", dice_two_line_coincidences()),
        ("fig12-counterexample", counterexample()),
        ("empty-two-bodies", Framework::with_bodies(["A", "B"])),
    ]
}
