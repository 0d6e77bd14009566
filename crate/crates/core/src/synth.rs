//! Random valid constraints and frameworks for property tests.
//!
//! Each payload is laid out in a convenient frame (axis-aligned normals,
//! rational angles from rational points on the unit circle) and then moved by
//! a random rational rigid motion, so distances and angles stay exact.

use rand::Rng;

use crate::geometry::{cayley_rotation, int, Scalar, Vec3};
use crate::model::{Angle, CadConstraint, ConstraintKind, Framework, Line, Payload, Plane};

fn coord<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    Scalar::new(rng.gen_range(-12i64..=12).into(), rng.gen_range(1i64..=4).into())
}

fn nonzero<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    loop {
        let x = coord(rng);
        if x != int(0) {
            return x;
        }
    }
}

fn positive<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    Scalar::new(rng.gen_range(1i64..=12).into(), rng.gen_range(1i64..=4).into())
}

fn point<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    Vec3::new(coord(rng), coord(rng), coord(rng))
}

fn direction<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    loop {
        let d = point(rng);
        if !d.is_zero() {
            return d;
        }
    }
}

fn z_axis<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    Vec3::new(int(0), int(0), nonzero(rng))
}

fn in_xy<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    loop {
        let d = Vec3::new(coord(rng), coord(rng), int(0));
        if !d.is_zero() {
            return d;
        }
    }
}

/// `(cos, sin)` of a rational point on the unit circle, avoiding the four
/// axis points.
fn circle_point<R: Rng + ?Sized>(rng: &mut R) -> (Scalar, Scalar) {
    loop {
        let t = Scalar::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into());
        let t2 = &t * &t;
        let denom = int(1) + &t2;
        let c = (int(1) - &t2) / &denom;
        let s = (int(2) * &t) / &denom;
        if c != int(0) && s != int(0) {
            return (c, s);
        }
    }
}

fn point_on(line: &Line, s: &Scalar) -> Vec3 {
    &line.point + &(&line.direction * s)
}

fn canonical<R: Rng + ?Sized>(kind: ConstraintKind, rng: &mut R) -> Payload {
    use ConstraintKind as K;
    match kind {
        K::PointPointCoincidence => Payload::PointPointCoincidence { point: point(rng) },
        K::PointPointDistance => {
            let a = positive(rng);
            let p = point(rng);
            let q = &p + &Vec3::new(a.clone(), int(0), int(0));
            Payload::PointPointDistance {
                point_i: p,
                point_j: q,
                distance: a,
            }
        }
        K::PointLineCoincidence => {
            let line = Line::new(point(rng), direction(rng));
            Payload::PointLineCoincidence {
                point_i: point_on(&line, &coord(rng)),
                line_j: line,
            }
        }
        K::PointLineDistance => {
            let a = positive(rng);
            let line = Line::new(Vec3::new(int(0), int(0), coord(rng)), z_axis(rng));
            Payload::PointLineDistance {
                point_i: Vec3::new(a.clone(), int(0), coord(rng)),
                line_j: line,
                distance: a,
            }
        }
        K::PointPlaneCoincidence => {
            let h = coord(rng);
            Payload::PointPlaneCoincidence {
                point_i: Vec3::new(coord(rng), coord(rng), h.clone()),
                plane_j: Plane::new(Vec3::new(coord(rng), coord(rng), h), z_axis(rng)),
            }
        }
        K::PointPlaneDistance => {
            let h = coord(rng);
            let a = positive(rng);
            Payload::PointPlaneDistance {
                point_i: Vec3::new(coord(rng), coord(rng), &h + &a),
                plane_j: Plane::new(Vec3::new(coord(rng), coord(rng), h), z_axis(rng)),
                distance: a,
            }
        }
        K::LineLineParallel => Payload::LineLineParallel {
            point_i: point(rng),
            point_j: point(rng),
            direction: direction(rng),
        },
        K::LineLinePerpendicular => {
            let (a, b) = (nonzero(rng), coord(rng));
            Payload::LineLinePerpendicular {
                line_i: Line::new(point(rng), Vec3::new(a.clone(), b.clone(), int(0))),
                line_j: Line::new(point(rng), Vec3::new(-b, a, coord(rng))),
            }
        }
        K::LineLineFixedAngular => {
            let (c, s) = circle_point(rng);
            let scale = positive(rng);
            Payload::LineLineFixedAngular {
                line_i: Line::new(point(rng), Vec3::new(positive(rng), int(0), int(0))),
                line_j: Line::new(point(rng), Vec3::new(&c * &scale, &s * &scale, int(0))),
                angle: Angle::from_cos(c),
            }
        }
        K::LineLineCoincidence => Payload::LineLineCoincidence {
            line: Line::new(point(rng), direction(rng)),
        },
        K::LineLineDistance => {
            let a = positive(rng);
            let di = Vec3::new(nonzero(rng), int(0), int(0));
            let dj = Vec3::new(coord(rng), nonzero(rng), int(0));
            let li = Line::new(Vec3::new(int(0), int(0), int(0)), di);
            let lj = Line::new(Vec3::new(int(0), int(0), a.clone()), dj);
            Payload::LineLineDistance {
                line_i: Line::new(point_on(&li, &coord(rng)), li.direction.clone()),
                line_j: Line::new(point_on(&lj, &coord(rng)), lj.direction.clone()),
                distance: a,
            }
        }
        K::LinePlaneParallel => Payload::LinePlaneParallel {
            line_i: Line::new(point(rng), in_xy(rng)),
            plane_j: Plane::new(point(rng), z_axis(rng)),
        },
        K::LinePlanePerpendicular => Payload::LinePlanePerpendicular {
            line_i: Line::new(point(rng), z_axis(rng)),
            plane_j: Plane::new(point(rng), z_axis(rng)),
        },
        K::LinePlaneFixedAngular => {
            let (c, s) = circle_point(rng);
            let scale = positive(rng);
            Payload::LinePlaneFixedAngular {
                line_i: Line::new(point(rng), Vec3::new(&c * &scale, int(0), &s * &scale)),
                plane_j: Plane::new(point(rng), z_axis(rng)),
                angle: Angle::from_cos(c),
            }
        }
        K::LinePlaneCoincidence => {
            let h = coord(rng);
            Payload::LinePlaneCoincidence {
                line_i: Line::new(Vec3::new(coord(rng), coord(rng), h.clone()), in_xy(rng)),
                plane_j: Plane::new(Vec3::new(coord(rng), coord(rng), h), z_axis(rng)),
            }
        }
        K::LinePlaneDistance => {
            let h = coord(rng);
            let a = positive(rng);
            Payload::LinePlaneDistance {
                line_i: Line::new(Vec3::new(coord(rng), coord(rng), &h - &a), in_xy(rng)),
                plane_j: Plane::new(Vec3::new(coord(rng), coord(rng), h), z_axis(rng)),
                distance: a,
            }
        }
        K::PlanePlaneParallel => Payload::PlanePlaneParallel {
            point_i: point(rng),
            point_j: point(rng),
            normal: direction(rng),
        },
        K::PlanePlanePerpendicular => {
            let (a, b) = (nonzero(rng), coord(rng));
            Payload::PlanePlanePerpendicular {
                plane_i: Plane::new(point(rng), Vec3::new(a.clone(), b.clone(), int(0))),
                plane_j: Plane::new(point(rng), Vec3::new(-b, a, coord(rng))),
            }
        }
        K::PlanePlaneFixedAngular => {
            let (c, s) = circle_point(rng);
            let scale = positive(rng);
            Payload::PlanePlaneFixedAngular {
                plane_i: Plane::new(point(rng), Vec3::new(int(0), int(0), positive(rng))),
                plane_j: Plane::new(point(rng), Vec3::new(int(0), &s * &scale, &c * &scale)),
                angle: Angle::from_cos(c),
            }
        }
        K::PlanePlaneCoincidence => Payload::PlanePlaneCoincidence {
            plane: Plane::new(point(rng), direction(rng)),
        },
        K::PlanePlaneDistance => {
            let h = coord(rng);
            let a = positive(rng);
            Payload::PlanePlaneDistance {
                point_i: Vec3::new(coord(rng), coord(rng), &h + &a),
                point_j: Vec3::new(coord(rng), coord(rng), h),
                normal: z_axis(rng),
                distance: a,
            }
        }
    }
}

/// A consistent payload of the given kind in general position.
pub fn random_payload<R: Rng + ?Sized>(kind: ConstraintKind, rng: &mut R) -> Payload {
    let w = Vec3::new(coord(rng), coord(rng), coord(rng));
    canonical(kind, rng).transformed(&cayley_rotation(&w), &point(rng))
}

pub fn random_constraint<R: Rng + ?Sized>(kind: ConstraintKind, i: usize, j: usize, rng: &mut R) -> CadConstraint {
    CadConstraint::new(i, j, random_payload(kind, rng))
}

/// Between 2 and `max_bodies` bodies and up to `max_constraints` constraints
/// of random kinds on random body pairs.
pub fn random_framework<R: Rng + ?Sized>(rng: &mut R, max_bodies: usize, max_constraints: usize) -> Framework {
    let n = rng.gen_range(2..=max_bodies.max(2));
    let mut fw = Framework::with_bodies((1..=n).map(|k| format!("B{k}")));
    let m = rng.gen_range(0..=max_constraints);
    for _ in 0..m {
        let i = rng.gen_range(1..=n);
        let mut j = rng.gen_range(1..n);
        if j >= i {
            j += 1;
        }
        let kind = ConstraintKind::ALL[rng.gen_range(0..21)];
        fw.push(random_constraint(kind, i, j, rng));
    }
    fw
}
