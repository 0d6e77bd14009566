//! Bodies, geometric elements, the 21 cad constraints and the graphs derived
//! from them.
//!
//! Geometry is always given in world coordinates at a concrete realization.
//! Directions (line directions, plane normals) are stored unnormalized.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::geometry::{int, mat_vec, Scalar, Vec3};
use crate::sparsity::{Edge, EdgeColor, MultiGraph};

/// 1-based body index.
pub type BodyId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Body {
    pub id: BodyId,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    pub point: Vec3,
    pub direction: Vec3,
}

impl Line {
    pub fn new(point: Vec3, direction: Vec3) -> Self {
        Line { point, direction }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Plane {
    pub point: Vec3,
    pub normal: Vec3,
}

impl Plane {
    pub fn new(point: Vec3, normal: Vec3) -> Self {
        Plane { point, normal }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GeometricElement {
    Point(Vec3),
    Line(Line),
    Plane(Plane),
}

/// A fixed angle, stored through its cosine.
///
/// `degrees` is kept when the angle came in as degrees so it can be written
/// back out unchanged; in that case `cos` may be a rational approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct Angle {
    pub cos: Scalar,
    pub degrees: Option<f64>,
    exact: bool,
}

impl Angle {
    pub fn from_cos(cos: Scalar) -> Self {
        Angle {
            cos,
            degrees: None,
            exact: true,
        }
    }

    /// Exact for multiples of 60 and 90 degrees, approximate otherwise.
    pub fn from_degrees(degrees: f64) -> Self {
        let reduced = degrees.rem_euclid(360.0);
        let exact_cos = [
            (0.0, int(1)),
            (60.0, Scalar::new(1.into(), 2.into())),
            (90.0, int(0)),
            (120.0, Scalar::new((-1).into(), 2.into())),
            (180.0, int(-1)),
            (240.0, Scalar::new((-1).into(), 2.into())),
            (270.0, int(0)),
            (300.0, Scalar::new(1.into(), 2.into())),
        ]
        .into_iter()
        .find(|(d, _)| *d == reduced)
        .map(|(_, c)| c);
        match exact_cos {
            Some(cos) => Angle {
                cos,
                degrees: Some(degrees),
                exact: true,
            },
            None => {
                let c = degrees.to_radians().cos();
                let cos = Scalar::from_float(c).unwrap_or_else(Scalar::zero);
                Angle {
                    cos,
                    degrees: Some(degrees),
                    exact: false,
                }
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }
}

/// The 21 constraint kinds, numbered as in the usual enumeration (1..=21).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintKind {
    PointPointCoincidence,
    PointPointDistance,
    PointLineCoincidence,
    PointLineDistance,
    PointPlaneCoincidence,
    PointPlaneDistance,
    LineLineParallel,
    LineLinePerpendicular,
    LineLineFixedAngular,
    LineLineCoincidence,
    LineLineDistance,
    LinePlaneParallel,
    LinePlanePerpendicular,
    LinePlaneFixedAngular,
    LinePlaneCoincidence,
    LinePlaneDistance,
    PlanePlaneParallel,
    PlanePlanePerpendicular,
    PlanePlaneFixedAngular,
    PlanePlaneCoincidence,
    PlanePlaneDistance,
}

impl ConstraintKind {
    pub const ALL: [ConstraintKind; 21] = [
        ConstraintKind::PointPointCoincidence,
        ConstraintKind::PointPointDistance,
        ConstraintKind::PointLineCoincidence,
        ConstraintKind::PointLineDistance,
        ConstraintKind::PointPlaneCoincidence,
        ConstraintKind::PointPlaneDistance,
        ConstraintKind::LineLineParallel,
        ConstraintKind::LineLinePerpendicular,
        ConstraintKind::LineLineFixedAngular,
        ConstraintKind::LineLineCoincidence,
        ConstraintKind::LineLineDistance,
        ConstraintKind::LinePlaneParallel,
        ConstraintKind::LinePlanePerpendicular,
        ConstraintKind::LinePlaneFixedAngular,
        ConstraintKind::LinePlaneCoincidence,
        ConstraintKind::LinePlaneDistance,
        ConstraintKind::PlanePlaneParallel,
        ConstraintKind::PlanePlanePerpendicular,
        ConstraintKind::PlanePlaneFixedAngular,
        ConstraintKind::PlanePlaneCoincidence,
        ConstraintKind::PlanePlaneDistance,
    ];

    /// Position in the enumeration, 1..=21.
    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn name(self) -> &'static str {
        use ConstraintKind::*;
        match self {
            PointPointCoincidence => "point_point_coincidence",
            PointPointDistance => "point_point_distance",
            PointLineCoincidence => "point_line_coincidence",
            PointLineDistance => "point_line_distance",
            PointPlaneCoincidence => "point_plane_coincidence",
            PointPlaneDistance => "point_plane_distance",
            LineLineParallel => "line_line_parallel",
            LineLinePerpendicular => "line_line_perpendicular",
            LineLineFixedAngular => "line_line_fixed_angular",
            LineLineCoincidence => "line_line_coincidence",
            LineLineDistance => "line_line_distance",
            LinePlaneParallel => "line_plane_parallel",
            LinePlanePerpendicular => "line_plane_perpendicular",
            LinePlaneFixedAngular => "line_plane_fixed_angular",
            LinePlaneCoincidence => "line_plane_coincidence",
            LinePlaneDistance => "line_plane_distance",
            PlanePlaneParallel => "plane_plane_parallel",
            PlanePlanePerpendicular => "plane_plane_perpendicular",
            PlanePlaneFixedAngular => "plane_plane_fixed_angular",
            PlanePlaneCoincidence => "plane_plane_coincidence",
            PlanePlaneDistance => "plane_plane_distance",
        }
    }

    pub fn from_name(name: &str) -> Option<ConstraintKind> {
        ConstraintKind::ALL.into_iter().find(|k| k.name() == name)
    }

    /// `(angular, blind)` primitive counts.
    pub fn primitive_counts(self) -> (usize, usize) {
        use ConstraintKind::*;
        match self {
            PointPointCoincidence => (0, 3),
            PointPointDistance => (0, 1),
            PointLineCoincidence => (0, 2),
            PointLineDistance => (0, 1),
            PointPlaneCoincidence => (0, 1),
            PointPlaneDistance => (0, 1),
            LineLineParallel => (2, 0),
            LineLinePerpendicular => (1, 0),
            LineLineFixedAngular => (1, 0),
            LineLineCoincidence => (2, 2),
            LineLineDistance => (0, 1),
            LinePlaneParallel => (1, 0),
            LinePlanePerpendicular => (2, 0),
            LinePlaneFixedAngular => (1, 0),
            LinePlaneCoincidence => (1, 1),
            LinePlaneDistance => (1, 1),
            PlanePlaneParallel => (2, 0),
            PlanePlanePerpendicular => (1, 0),
            PlanePlaneFixedAngular => (1, 0),
            PlanePlaneCoincidence => (2, 1),
            PlanePlaneDistance => (2, 1),
        }
    }

    pub fn is_distance(self) -> bool {
        use ConstraintKind::*;
        matches!(
            self,
            PointPointDistance
                | PointLineDistance
                | PointPlaneDistance
                | LineLineDistance
                | LinePlaneDistance
                | PlanePlaneDistance
        )
    }
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Geometric data of a constraint. Elements suffixed `_i` are affixed to the
/// first body of the edge, `_j` to the second; unsuffixed elements are shared.
#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    PointPointCoincidence {
        point: Vec3,
    },
    PointPointDistance {
        point_i: Vec3,
        point_j: Vec3,
        distance: Scalar,
    },
    PointLineCoincidence {
        point_i: Vec3,
        line_j: Line,
    },
    PointLineDistance {
        point_i: Vec3,
        line_j: Line,
        distance: Scalar,
    },
    PointPlaneCoincidence {
        point_i: Vec3,
        plane_j: Plane,
    },
    PointPlaneDistance {
        point_i: Vec3,
        plane_j: Plane,
        distance: Scalar,
    },
    LineLineParallel {
        point_i: Vec3,
        point_j: Vec3,
        direction: Vec3,
    },
    LineLinePerpendicular {
        line_i: Line,
        line_j: Line,
    },
    LineLineFixedAngular {
        line_i: Line,
        line_j: Line,
        angle: Angle,
    },
    LineLineCoincidence {
        line: Line,
    },
    LineLineDistance {
        line_i: Line,
        line_j: Line,
        distance: Scalar,
    },
    LinePlaneParallel {
        line_i: Line,
        plane_j: Plane,
    },
    LinePlanePerpendicular {
        line_i: Line,
        plane_j: Plane,
    },
    LinePlaneFixedAngular {
        line_i: Line,
        plane_j: Plane,
        angle: Angle,
    },
    LinePlaneCoincidence {
        line_i: Line,
        plane_j: Plane,
    },
    LinePlaneDistance {
        line_i: Line,
        plane_j: Plane,
        distance: Scalar,
    },
    PlanePlaneParallel {
        point_i: Vec3,
        point_j: Vec3,
        normal: Vec3,
    },
    PlanePlanePerpendicular {
        plane_i: Plane,
        plane_j: Plane,
    },
    PlanePlaneFixedAngular {
        plane_i: Plane,
        plane_j: Plane,
        angle: Angle,
    },
    PlanePlaneCoincidence {
        plane: Plane,
    },
    PlanePlaneDistance {
        point_i: Vec3,
        point_j: Vec3,
        normal: Vec3,
        distance: Scalar,
    },
}

impl Payload {
    pub fn kind(&self) -> ConstraintKind {
        use ConstraintKind as K;
        match self {
            Payload::PointPointCoincidence { .. } => K::PointPointCoincidence,
            Payload::PointPointDistance { .. } => K::PointPointDistance,
            Payload::PointLineCoincidence { .. } => K::PointLineCoincidence,
            Payload::PointLineDistance { .. } => K::PointLineDistance,
            Payload::PointPlaneCoincidence { .. } => K::PointPlaneCoincidence,
            Payload::PointPlaneDistance { .. } => K::PointPlaneDistance,
            Payload::LineLineParallel { .. } => K::LineLineParallel,
            Payload::LineLinePerpendicular { .. } => K::LineLinePerpendicular,
            Payload::LineLineFixedAngular { .. } => K::LineLineFixedAngular,
            Payload::LineLineCoincidence { .. } => K::LineLineCoincidence,
            Payload::LineLineDistance { .. } => K::LineLineDistance,
            Payload::LinePlaneParallel { .. } => K::LinePlaneParallel,
            Payload::LinePlanePerpendicular { .. } => K::LinePlanePerpendicular,
            Payload::LinePlaneFixedAngular { .. } => K::LinePlaneFixedAngular,
            Payload::LinePlaneCoincidence { .. } => K::LinePlaneCoincidence,
            Payload::LinePlaneDistance { .. } => K::LinePlaneDistance,
            Payload::PlanePlaneParallel { .. } => K::PlanePlaneParallel,
            Payload::PlanePlanePerpendicular { .. } => K::PlanePlanePerpendicular,
            Payload::PlanePlaneFixedAngular { .. } => K::PlanePlaneFixedAngular,
            Payload::PlanePlaneCoincidence { .. } => K::PlanePlaneCoincidence,
            Payload::PlanePlaneDistance { .. } => K::PlanePlaneDistance,
        }
    }

    pub fn distance(&self) -> Option<&Scalar> {
        match self {
            Payload::PointPointDistance { distance, .. }
            | Payload::PointLineDistance { distance, .. }
            | Payload::PointPlaneDistance { distance, .. }
            | Payload::LineLineDistance { distance, .. }
            | Payload::LinePlaneDistance { distance, .. }
            | Payload::PlanePlaneDistance { distance, .. } => Some(distance),
            _ => None,
        }
    }

    /// Every direction vector in the payload (line directions and normals).
    pub fn directions(&self) -> Vec<&Vec3> {
        let mut out = Vec::new();
        self.visit(&mut |_| {}, &mut |d| out.push(d));
        out
    }

    fn visit<'a>(&'a self, point: &mut dyn FnMut(&'a Vec3), dir: &mut dyn FnMut(&'a Vec3)) {
        let line = |l: &'a Line, point: &mut dyn FnMut(&'a Vec3), dir: &mut dyn FnMut(&'a Vec3)| {
            point(&l.point);
            dir(&l.direction);
        };
        match self {
            Payload::PointPointCoincidence { point: p } => point(p),
            Payload::PointPointDistance { point_i, point_j, .. } => {
                point(point_i);
                point(point_j);
            }
            Payload::PointLineCoincidence { point_i, line_j } | Payload::PointLineDistance { point_i, line_j, .. } => {
                point(point_i);
                line(line_j, point, dir);
            }
            Payload::PointPlaneCoincidence { point_i, plane_j }
            | Payload::PointPlaneDistance { point_i, plane_j, .. } => {
                point(point_i);
                point(&plane_j.point);
                dir(&plane_j.normal);
            }
            Payload::LineLineParallel {
                point_i,
                point_j,
                direction,
            } => {
                point(point_i);
                point(point_j);
                dir(direction);
            }
            Payload::LineLinePerpendicular { line_i, line_j }
            | Payload::LineLineFixedAngular { line_i, line_j, .. }
            | Payload::LineLineDistance { line_i, line_j, .. } => {
                line(line_i, point, dir);
                line(line_j, point, dir);
            }
            Payload::LineLineCoincidence { line: l } => line(l, point, dir),
            Payload::LinePlaneParallel { line_i, plane_j }
            | Payload::LinePlanePerpendicular { line_i, plane_j }
            | Payload::LinePlaneFixedAngular { line_i, plane_j, .. }
            | Payload::LinePlaneCoincidence { line_i, plane_j }
            | Payload::LinePlaneDistance { line_i, plane_j, .. } => {
                line(line_i, point, dir);
                point(&plane_j.point);
                dir(&plane_j.normal);
            }
            Payload::PlanePlaneParallel {
                point_i,
                point_j,
                normal,
            }
            | Payload::PlanePlaneDistance {
                point_i,
                point_j,
                normal,
                ..
            } => {
                point(point_i);
                point(point_j);
                dir(normal);
            }
            Payload::PlanePlanePerpendicular { plane_i, plane_j }
            | Payload::PlanePlaneFixedAngular { plane_i, plane_j, .. } => {
                point(&plane_i.point);
                dir(&plane_i.normal);
                point(&plane_j.point);
                dir(&plane_j.normal);
            }
            Payload::PlanePlaneCoincidence { plane } => {
                point(&plane.point);
                dir(&plane.normal);
            }
        }
    }

    /// Apply the rigid motion `x -> R x + t` to every element. Directions are
    /// only rotated. Distances and angles are unchanged.
    pub fn transformed(&self, rotation: &[Vec3; 3], translation: &Vec3) -> Payload {
        let p = |x: &Vec3| &mat_vec(rotation, x) + translation;
        let d = |x: &Vec3| mat_vec(rotation, x);
        let line = |l: &Line| Line::new(p(&l.point), d(&l.direction));
        let plane = |pl: &Plane| Plane::new(p(&pl.point), d(&pl.normal));
        match self {
            Payload::PointPointCoincidence { point } => Payload::PointPointCoincidence { point: p(point) },
            Payload::PointPointDistance {
                point_i,
                point_j,
                distance,
            } => Payload::PointPointDistance {
                point_i: p(point_i),
                point_j: p(point_j),
                distance: distance.clone(),
            },
            Payload::PointLineCoincidence { point_i, line_j } => Payload::PointLineCoincidence {
                point_i: p(point_i),
                line_j: line(line_j),
            },
            Payload::PointLineDistance {
                point_i,
                line_j,
                distance,
            } => Payload::PointLineDistance {
                point_i: p(point_i),
                line_j: line(line_j),
                distance: distance.clone(),
            },
            Payload::PointPlaneCoincidence { point_i, plane_j } => Payload::PointPlaneCoincidence {
                point_i: p(point_i),
                plane_j: plane(plane_j),
            },
            Payload::PointPlaneDistance {
                point_i,
                plane_j,
                distance,
            } => Payload::PointPlaneDistance {
                point_i: p(point_i),
                plane_j: plane(plane_j),
                distance: distance.clone(),
            },
            Payload::LineLineParallel {
                point_i,
                point_j,
                direction,
            } => Payload::LineLineParallel {
                point_i: p(point_i),
                point_j: p(point_j),
                direction: d(direction),
            },
            Payload::LineLinePerpendicular { line_i, line_j } => Payload::LineLinePerpendicular {
                line_i: line(line_i),
                line_j: line(line_j),
            },
            Payload::LineLineFixedAngular { line_i, line_j, angle } => Payload::LineLineFixedAngular {
                line_i: line(line_i),
                line_j: line(line_j),
                angle: angle.clone(),
            },
            Payload::LineLineCoincidence { line: l } => Payload::LineLineCoincidence { line: line(l) },
            Payload::LineLineDistance {
                line_i,
                line_j,
                distance,
            } => Payload::LineLineDistance {
                line_i: line(line_i),
                line_j: line(line_j),
                distance: distance.clone(),
            },
            Payload::LinePlaneParallel { line_i, plane_j } => Payload::LinePlaneParallel {
                line_i: line(line_i),
                plane_j: plane(plane_j),
            },
            Payload::LinePlanePerpendicular { line_i, plane_j } => Payload::LinePlanePerpendicular {
                line_i: line(line_i),
                plane_j: plane(plane_j),
            },
            Payload::LinePlaneFixedAngular { line_i, plane_j, angle } => Payload::LinePlaneFixedAngular {
                line_i: line(line_i),
                plane_j: plane(plane_j),
                angle: angle.clone(),
            },
            Payload::LinePlaneCoincidence { line_i, plane_j } => Payload::LinePlaneCoincidence {
                line_i: line(line_i),
                plane_j: plane(plane_j),
            },
            Payload::LinePlaneDistance {
                line_i,
                plane_j,
                distance,
            } => Payload::LinePlaneDistance {
                line_i: line(line_i),
                plane_j: plane(plane_j),
                distance: distance.clone(),
            },
            Payload::PlanePlaneParallel {
                point_i,
                point_j,
                normal,
            } => Payload::PlanePlaneParallel {
                point_i: p(point_i),
                point_j: p(point_j),
                normal: d(normal),
            },
            Payload::PlanePlanePerpendicular { plane_i, plane_j } => Payload::PlanePlanePerpendicular {
                plane_i: plane(plane_i),
                plane_j: plane(plane_j),
            },
            Payload::PlanePlaneFixedAngular {
                plane_i,
                plane_j,
                angle,
            } => Payload::PlanePlaneFixedAngular {
                plane_i: plane(plane_i),
                plane_j: plane(plane_j),
                angle: angle.clone(),
            },
            Payload::PlanePlaneCoincidence { plane: pl } => Payload::PlanePlaneCoincidence { plane: plane(pl) },
            Payload::PlanePlaneDistance {
                point_i,
                point_j,
                normal,
                distance,
            } => Payload::PlanePlaneDistance {
                point_i: p(point_i),
                point_j: p(point_j),
                normal: d(normal),
                distance: distance.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CadConstraint {
    pub i: BodyId,
    pub j: BodyId,
    pub payload: Payload,
}

impl CadConstraint {
    pub fn new(i: BodyId, j: BodyId, payload: Payload) -> Self {
        CadConstraint { i, j, payload }
    }

    pub fn kind(&self) -> ConstraintKind {
        self.payload.kind()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Framework {
    pub bodies: Vec<Body>,
    pub constraints: Vec<CadConstraint>,
}

impl Framework {
    /// Framework with bodies `1..=labels.len()`.
    pub fn with_bodies<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        let bodies = labels
            .into_iter()
            .enumerate()
            .map(|(k, label)| Body {
                id: k + 1,
                label: label.into(),
            })
            .collect();
        Framework {
            bodies,
            constraints: Vec::new(),
        }
    }

    pub fn body_count(&self) -> usize {
        self.bodies.len()
    }

    pub fn push(&mut self, c: CadConstraint) -> &mut Self {
        self.constraints.push(c);
        self
    }

    /// Copy without the constraint at `index`.
    pub fn without(&self, index: usize) -> Framework {
        let mut fw = self.clone();
        fw.constraints.remove(index);
        fw
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Index of the offending constraint, if any.
    pub constraint: Option<usize>,
    pub edge: Option<(BodyId, BodyId)>,
    pub kind: Option<ConstraintKind>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.constraint, self.edge, self.kind) {
            (Some(c), Some((i, j)), Some(k)) => {
                write!(f, "constraint #{c} ({k} on edge {i}-{j}): {}", self.message)
            }
            _ => f.write_str(&self.message),
        }
    }
}

const ANGLE_TOLERANCE: f64 = 1e-9;

/// Check that the payloads are consistent with the realization they describe.
pub fn validate(fw: &Framework) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = fw.bodies.len();
    let mut ids: Vec<BodyId> = fw.bodies.iter().map(|b| b.id).collect();
    ids.sort_unstable();
    if ids.iter().enumerate().any(|(k, &id)| id != k + 1) {
        out.push(Violation {
            constraint: None,
            edge: None,
            kind: None,
            message: format!("body ids must be exactly 1..={n}, got {ids:?}"),
        });
    }
    for (index, c) in fw.constraints.iter().enumerate() {
        let mut report = |message: String| {
            out.push(Violation {
                constraint: Some(index),
                edge: Some((c.i, c.j)),
                kind: Some(c.kind()),
                message,
            })
        };
        if c.i == c.j {
            report("constraint joins a body to itself".into());
        }
        for id in [c.i, c.j] {
            if id == 0 || id > n {
                report(format!("unknown body id {id}"));
            }
        }
        for message in payload_violations(&c.payload) {
            report(message);
        }
    }
    out
}

fn payload_violations(payload: &Payload) -> Vec<String> {
    let mut out = Vec::new();
    if payload.directions().iter().any(|d| d.is_zero()) {
        out.push("direction or normal is the zero vector".to_string());
        return out;
    }
    if let Some(a) = payload.distance() {
        if a.is_negative() {
            out.push(format!("distance {a} is negative"));
            return out;
        }
    }
    let mut require = |ok: bool, what: &str| {
        if !ok {
            out.push(what.to_string());
        }
    };
    match payload {
        Payload::PointPointCoincidence { .. }
        | Payload::LineLineParallel { .. }
        | Payload::LineLineCoincidence { .. }
        | Payload::PlanePlaneParallel { .. }
        | Payload::PlanePlaneCoincidence { .. } => {}
        Payload::PointPointDistance {
            point_i,
            point_j,
            distance,
        } => {
            let w = point_i - point_j;
            require(
                w.norm_squared() == distance * distance,
                "realized point distance differs from payload",
            );
        }
        Payload::PointLineCoincidence { point_i, line_j } => {
            let w = point_i - &line_j.point;
            require(w.cross(&line_j.direction).is_zero(), "point does not lie on the line");
        }
        Payload::PointLineDistance {
            point_i,
            line_j,
            distance,
        } => {
            let w = point_i - &line_j.point;
            let d = &line_j.direction;
            require(
                w.cross(d).norm_squared() == distance * distance * d.norm_squared(),
                "realized point-line distance differs from payload",
            );
        }
        Payload::PointPlaneCoincidence { point_i, plane_j } => {
            let w = point_i - &plane_j.point;
            require(w.dot(&plane_j.normal).is_zero(), "point does not lie in the plane");
        }
        Payload::PointPlaneDistance {
            point_i,
            plane_j,
            distance,
        } => {
            require(
                plane_offset_matches(point_i, &plane_j.point, &plane_j.normal, distance),
                "realized point-plane distance differs from payload",
            );
        }
        Payload::LineLinePerpendicular { line_i, line_j } => {
            require(
                line_i.direction.dot(&line_j.direction).is_zero(),
                "lines are not perpendicular",
            );
        }
        Payload::LineLineFixedAngular { line_i, line_j, angle } => {
            check_angle(&line_i.direction, &line_j.direction, angle, false, &mut out);
        }
        Payload::LineLineDistance {
            line_i,
            line_j,
            distance,
        } => {
            let w = &line_i.point - &line_j.point;
            let n = line_i.direction.cross(&line_j.direction);
            let ok = if n.is_zero() {
                let d = &line_i.direction;
                w.cross(d).norm_squared() == distance * distance * d.norm_squared()
            } else {
                let s = w.dot(&n);
                &s * &s == distance * distance * n.norm_squared()
            };
            require(ok, "realized line-line distance differs from payload");
        }
        Payload::LinePlaneParallel { line_i, plane_j } => {
            require(
                line_i.direction.dot(&plane_j.normal).is_zero(),
                "line is not parallel to the plane",
            );
        }
        Payload::LinePlanePerpendicular { line_i, plane_j } => {
            require(
                line_i.direction.cross(&plane_j.normal).is_zero(),
                "line is not perpendicular to the plane",
            );
        }
        Payload::LinePlaneFixedAngular { line_i, plane_j, angle } => {
            check_angle(&line_i.direction, &plane_j.normal, angle, true, &mut out);
        }
        Payload::LinePlaneCoincidence { line_i, plane_j } => {
            require(
                line_i.direction.dot(&plane_j.normal).is_zero(),
                "line is not parallel to the plane",
            );
            let w = &line_i.point - &plane_j.point;
            require(w.dot(&plane_j.normal).is_zero(), "line does not lie in the plane");
        }
        Payload::LinePlaneDistance {
            line_i,
            plane_j,
            distance,
        } => {
            require(
                line_i.direction.dot(&plane_j.normal).is_zero(),
                "line is not parallel to the plane",
            );
            require(
                plane_offset_matches(&line_i.point, &plane_j.point, &plane_j.normal, distance),
                "realized line-plane distance differs from payload",
            );
        }
        Payload::PlanePlanePerpendicular { plane_i, plane_j } => {
            require(
                plane_i.normal.dot(&plane_j.normal).is_zero(),
                "planes are not perpendicular",
            );
        }
        Payload::PlanePlaneFixedAngular {
            plane_i,
            plane_j,
            angle,
        } => {
            check_angle(&plane_i.normal, &plane_j.normal, angle, false, &mut out);
        }
        Payload::PlanePlaneDistance {
            point_i,
            point_j,
            normal,
            distance,
        } => {
            require(
                plane_offset_matches(point_i, point_j, normal, distance),
                "realized plane-plane distance differs from payload",
            );
        }
    }
    out
}

fn plane_offset_matches(p: &Vec3, plane_point: &Vec3, normal: &Vec3, distance: &Scalar) -> bool {
    let s = (p - plane_point).dot(normal);
    &s * &s == distance * distance * normal.norm_squared()
}

/// `complement` selects the line-plane convention: the angle is measured
/// against the plane, so the cosine of the angle with the normal is its sine.
fn check_angle(a: &Vec3, b: &Vec3, angle: &Angle, complement: bool, out: &mut Vec<String>) {
    let cos2 = &angle.cos * &angle.cos;
    if cos2 > Scalar::one() {
        out.push(format!("cosine {} is outside [-1, 1]", angle.cos));
        return;
    }
    let target = if complement { Scalar::one() - &cos2 } else { cos2 };
    let dot = a.dot(b);
    let lhs = &dot * &dot;
    let rhs = target * a.norm_squared() * b.norm_squared();
    let ok = if angle.is_exact() {
        lhs == rhs
    } else {
        let scale = (a.norm_squared() * b.norm_squared()).to_f64().unwrap_or(1.0);
        let diff = (lhs - rhs).to_f64().unwrap_or(f64::INFINITY).abs();
        diff <= ANGLE_TOLERANCE * scale.max(1.0)
    };
    if !ok {
        out.push("realized angle differs from payload".to_string());
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CadEdge {
    pub i: BodyId,
    pub j: BodyId,
    pub kind: ConstraintKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CadGraph {
    pub vertices: Vec<BodyId>,
    pub edges: Vec<CadEdge>,
}

pub fn cad_graph_of(fw: &Framework) -> CadGraph {
    let mut vertices: Vec<BodyId> = fw.bodies.iter().map(|b| b.id).collect();
    vertices.sort_unstable();
    CadGraph {
        vertices,
        edges: fw
            .constraints
            .iter()
            .map(|c| CadEdge {
                i: c.i,
                j: c.j,
                kind: c.kind(),
            })
            .collect(),
    }
}

/// One primitive constraint seen as an edge of the primitive cad graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveEdge {
    pub i: BodyId,
    pub j: BodyId,
    pub color: EdgeColor,
    /// Index of the source edge in the cad graph.
    pub constraint: usize,
    /// Position among the primitives of the source edge.
    pub ordinal: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrimitiveCadGraph {
    pub vertices: Vec<BodyId>,
    /// Per source constraint: red edges first, then black.
    pub edges: Vec<PrimitiveEdge>,
}

impl PrimitiveCadGraph {
    pub fn red_edges(&self) -> impl Iterator<Item = &PrimitiveEdge> {
        self.edges.iter().filter(|e| e.color == EdgeColor::Red)
    }

    pub fn black_edges(&self) -> impl Iterator<Item = &PrimitiveEdge> {
        self.edges.iter().filter(|e| e.color == EdgeColor::Black)
    }

    /// Colored multigraph on vertices `0..n`, where vertex `k` is the `k`-th
    /// smallest body id.
    pub fn to_multigraph(&self) -> MultiGraph {
        let index = |id: BodyId| {
            self.vertices
                .binary_search(&id)
                .expect("primitive edge references a vertex of the graph")
        };
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::colored(index(e.i), index(e.j), e.color))
            .collect();
        MultiGraph::new(self.vertices.len(), edges).expect("cad graphs are loop free")
    }
}

pub fn primitive_graph_of(g: &CadGraph) -> PrimitiveCadGraph {
    let mut edges = Vec::new();
    for (index, e) in g.edges.iter().enumerate() {
        let (angular, blind) = e.kind.primitive_counts();
        let colors = std::iter::repeat_n(EdgeColor::Red, angular).chain(std::iter::repeat_n(EdgeColor::Black, blind));
        for (ordinal, color) in colors.enumerate() {
            edges.push(PrimitiveEdge {
                i: e.i,
                j: e.j,
                color,
                constraint: index,
                ordinal,
            });
        }
    }
    PrimitiveCadGraph {
        vertices: g.vertices.clone(),
        edges,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("radius {0} must be positive")]
    InvalidRadius(Scalar),
}

/// Tangency between a sphere or cylinder on body `i` and an element on body `j`.
#[derive(Debug, Clone, PartialEq)]
pub enum Tangency {
    SphereSphere {
        center_i: Vec3,
        radius_i: Scalar,
        center_j: Vec3,
        radius_j: Scalar,
        internal: bool,
    },
    SpherePlane {
        center: Vec3,
        radius: Scalar,
        plane: Plane,
    },
    SphereLine {
        center: Vec3,
        radius: Scalar,
        line: Line,
    },
    SpherePoint {
        center: Vec3,
        radius: Scalar,
        point: Vec3,
    },
    CylinderCylinder {
        axis_i: Line,
        radius_i: Scalar,
        axis_j: Line,
        radius_j: Scalar,
        internal: bool,
    },
    CylinderSphere {
        axis: Line,
        radius_cylinder: Scalar,
        center: Vec3,
        radius_sphere: Scalar,
        internal: bool,
    },
    CylinderPlane {
        axis: Line,
        radius: Scalar,
        plane: Plane,
    },
    CylinderLine {
        axis: Line,
        radius: Scalar,
        line: Line,
    },
    CylinderPoint {
        axis: Line,
        radius: Scalar,
        point: Vec3,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TangencyConstraint {
    pub i: BodyId,
    pub j: BodyId,
    pub tangency: Tangency,
}

fn contact_distance(r1: &Scalar, r2: &Scalar, internal: bool) -> Scalar {
    if internal {
        (r1 - r2).abs()
    } else {
        r1 + r2
    }
}

/// Rewrite a tangency as the equivalent distance constraint. Cylinders are
/// handled by using the axis in place of the sphere center.
pub fn reduce_tangency(t: &TangencyConstraint) -> Result<CadConstraint, ModelError> {
    let positive = |r: &Scalar| {
        if r.is_positive() {
            Ok(())
        } else {
            Err(ModelError::InvalidRadius(r.clone()))
        }
    };
    let (i, j) = (t.i, t.j);
    let c = match &t.tangency {
        Tangency::SphereSphere {
            center_i,
            radius_i,
            center_j,
            radius_j,
            internal,
        } => {
            positive(radius_i)?;
            positive(radius_j)?;
            CadConstraint::new(
                i,
                j,
                Payload::PointPointDistance {
                    point_i: center_i.clone(),
                    point_j: center_j.clone(),
                    distance: contact_distance(radius_i, radius_j, *internal),
                },
            )
        }
        Tangency::SpherePlane { center, radius, plane } => {
            positive(radius)?;
            CadConstraint::new(
                i,
                j,
                Payload::PointPlaneDistance {
                    point_i: center.clone(),
                    plane_j: plane.clone(),
                    distance: radius.clone(),
                },
            )
        }
        Tangency::SphereLine { center, radius, line } => {
            positive(radius)?;
            CadConstraint::new(
                i,
                j,
                Payload::PointLineDistance {
                    point_i: center.clone(),
                    line_j: line.clone(),
                    distance: radius.clone(),
                },
            )
        }
        Tangency::SpherePoint { center, radius, point } => {
            positive(radius)?;
            CadConstraint::new(
                i,
                j,
                Payload::PointPointDistance {
                    point_i: center.clone(),
                    point_j: point.clone(),
                    distance: radius.clone(),
                },
            )
        }
        Tangency::CylinderCylinder {
            axis_i,
            radius_i,
            axis_j,
            radius_j,
            internal,
        } => {
            positive(radius_i)?;
            positive(radius_j)?;
            CadConstraint::new(
                i,
                j,
                Payload::LineLineDistance {
                    line_i: axis_i.clone(),
                    line_j: axis_j.clone(),
                    distance: contact_distance(radius_i, radius_j, *internal),
                },
            )
        }
        // point-line distance puts the point first, so the bodies swap
        Tangency::CylinderSphere {
            axis,
            radius_cylinder,
            center,
            radius_sphere,
            internal,
        } => {
            positive(radius_cylinder)?;
            positive(radius_sphere)?;
            CadConstraint::new(
                j,
                i,
                Payload::PointLineDistance {
                    point_i: center.clone(),
                    line_j: axis.clone(),
                    distance: contact_distance(radius_cylinder, radius_sphere, *internal),
                },
            )
        }
        Tangency::CylinderPlane { axis, radius, plane } => {
            positive(radius)?;
            CadConstraint::new(
                i,
                j,
                Payload::LinePlaneDistance {
                    line_i: axis.clone(),
                    plane_j: plane.clone(),
                    distance: radius.clone(),
                },
            )
        }
        Tangency::CylinderLine { axis, radius, line } => {
            positive(radius)?;
            CadConstraint::new(
                i,
                j,
                Payload::LineLineDistance {
                    line_i: axis.clone(),
                    line_j: line.clone(),
                    distance: radius.clone(),
                },
            )
        }
        Tangency::CylinderPoint { axis, radius, point } => {
            positive(radius)?;
            CadConstraint::new(
                j,
                i,
                Payload::PointLineDistance {
                    point_i: point.clone(),
                    line_j: axis.clone(),
                    distance: radius.clone(),
                },
            )
        }
    };
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geometry::ratio;

    fn v3(x: i64, y: i64, z: i64) -> Vec3 {
        Vec3::from_ints(x, y, z)
    }

    #[test]
    fn dice_validates() {
        assert_eq!(validate(&fixtures::dice()), vec![]);
    }

    #[test]
    fn shared_point_is_always_consistent() {
        let mut fw = Framework::with_bodies(["A", "B"]);
        fw.push(CadConstraint::new(
            1,
            2,
            Payload::PointPointCoincidence {
                point: Vec3::new(ratio(1, 3), ratio(-7, 2), int(11)),
            },
        ));
        assert!(validate(&fw).is_empty());
    }

    #[test]
    fn wrong_line_plane_distance_is_reported() {
        let mut fw = fixtures::dice();
        if let Payload::LinePlaneDistance { distance, .. } = &mut fw.constraints[2].payload {
            *distance = int(2);
        } else {
            panic!("dice constraint (iii) is a line-plane distance");
        }
        let v = validate(&fw);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].constraint, Some(2));
        assert_eq!(v[0].edge, Some((1, 2)));
        assert_eq!(v[0].kind, Some(ConstraintKind::LinePlaneDistance));
    }

    #[test]
    fn structural_violations() {
        let mut fw = Framework::with_bodies(["A", "B"]);
        fw.push(CadConstraint::new(
            1,
            1,
            Payload::PointPointCoincidence { point: v3(0, 0, 0) },
        ));
        fw.push(CadConstraint::new(
            1,
            3,
            Payload::PointPointCoincidence { point: v3(0, 0, 0) },
        ));
        fw.push(CadConstraint::new(
            1,
            2,
            Payload::LineLineParallel {
                point_i: v3(0, 0, 0),
                point_j: v3(1, 0, 0),
                direction: Vec3::zero(),
            },
        ));
        fw.push(CadConstraint::new(
            1,
            2,
            Payload::PointPointDistance {
                point_i: v3(0, 0, 0),
                point_j: v3(1, 0, 0),
                distance: int(-1),
            },
        ));
        let v = validate(&fw);
        let constraints: Vec<_> = v.iter().map(|x| x.constraint).collect();
        assert_eq!(constraints, vec![Some(0), Some(1), Some(2), Some(3)]);

        let mut bad_ids = Framework::with_bodies(["A", "B"]);
        bad_ids.bodies[1].id = 5;
        assert_eq!(validate(&bad_ids).len(), 1);
    }

    #[test]
    fn angle_validation() {
        let line = |d: Vec3| Line::new(Vec3::zero(), d);
        let mut fw = Framework::with_bodies(["A", "B"]);
        fw.push(CadConstraint::new(
            1,
            2,
            Payload::LineLineFixedAngular {
                line_i: line(v3(1, 0, 0)),
                line_j: line(v3(3, 4, 0)),
                angle: Angle::from_cos(ratio(3, 5)),
            },
        ));
        // 45 degrees between the line and the plane, inexact cosine
        fw.push(CadConstraint::new(
            1,
            2,
            Payload::LinePlaneFixedAngular {
                line_i: line(v3(1, 0, 0)),
                plane_j: Plane::new(Vec3::zero(), v3(1, 1, 0)),
                angle: Angle::from_degrees(45.0),
            },
        ));
        fw.push(CadConstraint::new(
            1,
            2,
            Payload::PlanePlaneFixedAngular {
                plane_i: Plane::new(Vec3::zero(), v3(1, 0, 0)),
                plane_j: Plane::new(Vec3::zero(), v3(1, 1, 0)),
                angle: Angle::from_cos(ratio(1, 2)),
            },
        ));
        let v = validate(&fw);
        assert_eq!(v.len(), 1, "{v:?}");
        assert_eq!(v[0].constraint, Some(2));
        assert!(!Angle::from_degrees(45.0).is_exact());
        assert!(Angle::from_degrees(-60.0).is_exact());
        assert_eq!(Angle::from_degrees(-60.0).cos, ratio(1, 2));
    }

    #[test]
    fn cad_graph_of_dice() {
        let g = cad_graph_of(&fixtures::dice());
        assert_eq!(g.vertices, vec![1, 2]);
        let kinds: Vec<_> = g.edges.iter().map(|e| e.kind).collect();
        assert_eq!(
            kinds,
            vec![
                ConstraintKind::PlanePlaneParallel,
                ConstraintKind::PlanePlanePerpendicular,
                ConstraintKind::LinePlaneDistance,
                ConstraintKind::PointPointCoincidence,
            ]
        );
        assert_eq!(cad_graph_of(&Framework::default()), CadGraph::default());
    }

    #[test]
    fn parallel_constraints_stay_parallel_edges() {
        let mut fw = Framework::with_bodies(["A", "B"]);
        for _ in 0..2 {
            fw.push(CadConstraint::new(
                1,
                2,
                Payload::PointPointCoincidence { point: v3(0, 0, 0) },
            ));
        }
        let g = cad_graph_of(&fw);
        assert_eq!(g.edges.len(), 2);
        assert_eq!(g.edges[0], g.edges[1]);
    }

    #[test]
    fn dice_primitive_graph() {
        let h = primitive_graph_of(&cad_graph_of(&fixtures::dice()));
        let red: Vec<_> = h.red_edges().map(|e| e.constraint).collect();
        let black: Vec<_> = h.black_edges().map(|e| e.constraint).collect();
        assert_eq!(red, vec![0, 0, 1, 2]);
        assert_eq!(black, vec![2, 3, 3, 3]);
        assert_eq!(h.vertices, vec![1, 2]);
    }

    #[test]
    fn single_distance_is_one_black_edge() {
        let g = CadGraph {
            vertices: vec![1, 2],
            edges: vec![CadEdge {
                i: 1,
                j: 2,
                kind: ConstraintKind::PointPointDistance,
            }],
        };
        let h = primitive_graph_of(&g);
        assert_eq!(h.red_edges().count(), 0);
        assert_eq!(h.black_edges().count(), 1);
    }

    #[test]
    fn counterexample_primitive_graph_counts() {
        let h = primitive_graph_of(&cad_graph_of(&fixtures::counterexample()));
        assert_eq!(h.vertices.len(), 3);
        assert_eq!(h.red_edges().count(), 6);
        assert_eq!(h.black_edges().count(), 6);
    }

    #[test]
    fn primitive_graph_totals_follow_counts_for_every_kind() {
        let edges: Vec<CadEdge> = ConstraintKind::ALL
            .iter()
            .map(|&kind| CadEdge { i: 1, j: 2, kind })
            .collect();
        let g = CadGraph {
            vertices: vec![1, 2],
            edges,
        };
        let h = primitive_graph_of(&g);
        let (red, black) = ConstraintKind::ALL.iter().fold((0, 0), |(r, b), k| {
            let (a, bl) = k.primitive_counts();
            (r + a, b + bl)
        });
        assert_eq!(h.red_edges().count(), red);
        assert_eq!(h.black_edges().count(), black);
        assert_eq!(primitive_graph_of(&g), h);
        for (index, kind) in ConstraintKind::ALL.iter().enumerate() {
            let own: Vec<_> = h.edges.iter().filter(|e| e.constraint == index).collect();
            let r = own.iter().filter(|e| e.color == EdgeColor::Red).count();
            assert_eq!((r, own.len() - r), kind.primitive_counts(), "{kind}");
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for (n, kind) in ConstraintKind::ALL.iter().enumerate() {
            assert_eq!(kind.number(), n + 1);
            assert_eq!(ConstraintKind::from_name(kind.name()), Some(*kind));
        }
        assert_eq!(ConstraintKind::from_name("sphere_sphere"), None);
    }

    #[test]
    fn sphere_sphere_tangency() {
        let t = TangencyConstraint {
            i: 1,
            j: 2,
            tangency: Tangency::SphereSphere {
                center_i: v3(0, 0, 0),
                radius_i: int(1),
                center_j: v3(3, 0, 0),
                radius_j: int(2),
                internal: false,
            },
        };
        let c = reduce_tangency(&t).unwrap();
        assert_eq!(
            c.payload,
            Payload::PointPointDistance {
                point_i: v3(0, 0, 0),
                point_j: v3(3, 0, 0),
                distance: int(3),
            }
        );
        let mut fw = Framework::with_bodies(["A", "B"]);
        fw.push(c);
        assert!(validate(&fw).is_empty());

        let mut inner = t.clone();
        if let Tangency::SphereSphere { internal, center_j, .. } = &mut inner.tangency {
            *internal = true;
            *center_j = v3(1, 0, 0);
        }
        assert_eq!(reduce_tangency(&inner).unwrap().payload.distance(), Some(&int(1)));
    }

    #[test]
    fn sphere_plane_and_cylinder_plane_tangency() {
        let plane = Plane::new(v3(0, 0, 0), v3(0, 0, 1));
        let sphere = TangencyConstraint {
            i: 1,
            j: 2,
            tangency: Tangency::SpherePlane {
                center: v3(4, 4, 1),
                radius: int(1),
                plane: plane.clone(),
            },
        };
        let c = reduce_tangency(&sphere).unwrap();
        assert_eq!(c.kind(), ConstraintKind::PointPlaneDistance);
        assert_eq!(c.payload.distance(), Some(&int(1)));

        let axis = Line::new(v3(0, 0, 1), v3(1, 0, 0));
        let cylinder = TangencyConstraint {
            i: 1,
            j: 2,
            tangency: Tangency::CylinderPlane {
                axis: axis.clone(),
                radius: int(1),
                plane: plane.clone(),
            },
        };
        let c = reduce_tangency(&cylinder).unwrap();
        assert_eq!(
            c.payload,
            Payload::LinePlaneDistance {
                line_i: axis,
                plane_j: plane,
                distance: int(1)
            }
        );
        let mut fw = Framework::with_bodies(["A", "B"]);
        fw.push(reduce_tangency(&sphere).unwrap());
        fw.push(c);
        assert!(validate(&fw).is_empty());
    }

    #[test]
    fn tangent_configurations_validate() {
        let axis = Line::new(v3(0, 0, 0), v3(0, 0, 1));
        let cases = vec![
            Tangency::SphereLine {
                center: v3(2, 0, 5),
                radius: int(2),
                line: axis.clone(),
            },
            Tangency::SpherePoint {
                center: v3(0, 3, 0),
                radius: int(5),
                point: v3(4, 0, 0),
            },
            Tangency::CylinderPoint {
                axis: axis.clone(),
                radius: int(5),
                point: v3(3, 4, 9),
            },
            Tangency::CylinderSphere {
                axis: axis.clone(),
                radius_cylinder: int(1),
                center: v3(0, 3, 2),
                radius_sphere: int(2),
                internal: false,
            },
            Tangency::CylinderLine {
                axis: axis.clone(),
                radius: int(2),
                line: Line::new(v3(0, 2, 0), v3(1, 0, 0)),
            },
            Tangency::CylinderCylinder {
                axis_i: axis.clone(),
                radius_i: int(1),
                axis_j: Line::new(v3(3, 0, 7), v3(0, 1, 0)),
                radius_j: int(2),
                internal: false,
            },
        ];
        for tangency in cases {
            let c = reduce_tangency(&TangencyConstraint { i: 1, j: 2, tangency }).unwrap();
            let mut fw = Framework::with_bodies(["A", "B"]);
            fw.push(c);
            assert!(validate(&fw).is_empty(), "{:?}", fw.constraints[0]);
        }
    }

    #[test]
    fn cylinder_point_swaps_bodies() {
        let t = TangencyConstraint {
            i: 1,
            j: 2,
            tangency: Tangency::CylinderPoint {
                axis: Line::new(v3(0, 0, 0), v3(0, 0, 1)),
                radius: int(1),
                point: v3(1, 0, 0),
            },
        };
        let c = reduce_tangency(&t).unwrap();
        assert_eq!((c.i, c.j), (2, 1));
        assert_eq!(c.kind(), ConstraintKind::PointLineDistance);
    }

    #[test]
    fn nonpositive_radius_is_rejected() {
        let t = TangencyConstraint {
            i: 1,
            j: 2,
            tangency: Tangency::SpherePlane {
                center: v3(0, 0, 0),
                radius: int(0),
                plane: Plane::new(v3(0, 0, 0), v3(0, 0, 1)),
            },
        };
        assert_eq!(reduce_tangency(&t), Err(ModelError::InvalidRadius(int(0))));
    }
}
