//! Rigidity-matrix rows for each cad constraint.
//!
//! A row is stored through its coefficients on body `i`, ordered
//! `(v-block, -omega-block)` to pair with the starred screw `(v, -omega)` of
//! that body; the coefficients on body `j` are the negation.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::geometry::{join4, orthogonal_pair, GeometryError, Scalar, Tensor6, Vec3};
use crate::model::{BodyId, CadConstraint, ConstraintKind, Payload};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowClass {
    Angular,
    Blind,
}

impl RowClass {
    pub fn name(self) -> &'static str {
        match self {
            RowClass::Angular => "angular",
            RowClass::Blind => "blind",
        }
    }
}

impl fmt::Display for RowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RowSource {
    pub constraint: usize,
    pub ordinal: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrimitiveRow {
    pub body_i: BodyId,
    pub body_j: BodyId,
    pub class: RowClass,
    pub coeff_i: Tensor6,
    pub source: RowSource,
}

impl PrimitiveRow {
    pub fn coeff_j(&self) -> Tensor6 {
        self.coeff_i.neg()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("{kind}: a direction or normal is the zero vector")]
    DegenerateDirection { kind: ConstraintKind },
    #[error("{kind}: {reason}")]
    DegenerateConstraint { kind: ConstraintKind, reason: &'static str },
    #[error("{kind} with distance 0; use the matching coincidence constraint instead")]
    ZeroDistance { kind: ConstraintKind },
}

/// `-omega`-block `dj x di`: keeps the angle between `di` (body i) and `dj`
/// (body j) fixed.
pub fn bb_angular_fixed(di: &Vec3, dj: &Vec3) -> Result<Tensor6, GeometryError> {
    let axis = dj.cross(di);
    if axis.is_zero() {
        return Err(GeometryError::ParallelDirections);
    }
    Ok(Tensor6::from_blocks(&Vec3::zero(), &axis))
}

/// Two rows forcing `omega x d = 0`.
pub fn bb_angular_parallel(d: &Vec3) -> Result<(Tensor6, Tensor6), GeometryError> {
    let (u1, u2) = orthogonal_pair(d)?;
    Ok((
        Tensor6::from_blocks(&Vec3::zero(), &u1),
        Tensor6::from_blocks(&Vec3::zero(), &u2),
    ))
}

/// One row forcing the velocity of `p` to be orthogonal to `c`.
pub fn bb_blind_orthogonal(p: &Vec3, c: &Vec3) -> Result<Tensor6, GeometryError> {
    if c.is_zero() {
        return Err(GeometryError::DegenerateDirection);
    }
    Ok(join4(
        &p.extend(Scalar::from_integer(1.into())),
        &c.extend(Scalar::zero()),
    ))
}

/// Two rows forcing the velocity of `p` to be parallel to `c`.
pub fn bb_blind_parallel(p: &Vec3, c: &Vec3) -> Result<(Tensor6, Tensor6), GeometryError> {
    let (u1, u2) = orthogonal_pair(c)?;
    Ok((bb_blind_orthogonal(p, &u1)?, bb_blind_orthogonal(p, &u2)?))
}

fn point_coincidence_rows(p: &Vec3) -> [Tensor6; 3] {
    let z = Scalar::zero;
    let one = || Scalar::from_integer(1.into());
    [
        Tensor6([one(), z(), z(), z(), -p.z.clone(), p.y.clone()]),
        Tensor6([z(), one(), z(), p.z.clone(), z(), -p.x.clone()]),
        Tensor6([z(), z(), one(), -p.y.clone(), p.x.clone(), z()]),
    ]
}

/// Perpendicular from the line through `q` with direction `d` towards `p`,
/// scaled by `|d|^2`.
fn perpendicular_towards(p: &Vec3, q: &Vec3, d: &Vec3) -> Vec3 {
    let w = p - q;
    &(&w * &d.norm_squared()) - &(d * &w.dot(d))
}

/// Point on the line `(pi, di)` closest to the line `(pj, dj)`.
fn closest_point(pi: &Vec3, di: &Vec3, pj: &Vec3, dj: &Vec3) -> Option<Vec3> {
    let n = di.cross(dj);
    if n.is_zero() {
        return None;
    }
    let s = (pj - pi).cross(dj).dot(&n) / n.norm_squared();
    Some(pi + &(di * &s))
}

struct Rows {
    angular: Vec<Tensor6>,
    blind: Vec<Tensor6>,
}

impl Rows {
    fn new() -> Self {
        Rows {
            angular: Vec::new(),
            blind: Vec::new(),
        }
    }

    fn angular(mut self, t: Tensor6) -> Self {
        self.angular.push(t);
        self
    }

    fn angular2(mut self, (a, b): (Tensor6, Tensor6)) -> Self {
        self.angular.extend([a, b]);
        self
    }

    fn blind(mut self, t: Tensor6) -> Self {
        self.blind.push(t);
        self
    }

    fn blind2(mut self, (a, b): (Tensor6, Tensor6)) -> Self {
        self.blind.extend([a, b]);
        self
    }
}

/// Rows of one constraint, attributed to constraint index 0.
pub fn compile(c: &CadConstraint) -> Result<Vec<PrimitiveRow>, CompileError> {
    compile_at(0, c)
}

/// Rows of the constraint at position `index`: angular rows first, then blind,
/// each in building-block order.
pub fn compile_at(index: usize, c: &CadConstraint) -> Result<Vec<PrimitiveRow>, CompileError> {
    let kind = c.kind();
    if c.payload.distance().is_some_and(Zero::is_zero) {
        return Err(CompileError::ZeroDistance { kind });
    }
    if c.payload.directions().iter().any(|d| d.is_zero()) {
        return Err(CompileError::DegenerateDirection { kind });
    }
    let rows = build(&c.payload)?;
    let classes = std::iter::repeat(RowClass::Angular)
        .zip(rows.angular)
        .chain(std::iter::repeat(RowClass::Blind).zip(rows.blind));
    let mut out = Vec::new();
    for (ordinal, (class, coeff_i)) in classes.enumerate() {
        if coeff_i.is_zero() {
            return Err(CompileError::DegenerateConstraint {
                kind,
                reason: "the realization makes a row vanish",
            });
        }
        out.push(PrimitiveRow {
            body_i: c.i,
            body_j: c.j,
            class,
            coeff_i,
            source: RowSource {
                constraint: index,
                ordinal,
            },
        });
    }
    Ok(out)
}

fn build(payload: &Payload) -> Result<Rows, CompileError> {
    let kind = payload.kind();
    let g = |e: GeometryError| match e {
        GeometryError::DegenerateDirection => CompileError::DegenerateDirection { kind },
        GeometryError::ParallelDirections => CompileError::DegenerateConstraint {
            kind,
            reason: "the two directions are parallel, so the angle row vanishes",
        },
    };
    let degenerate = |reason| CompileError::DegenerateConstraint { kind, reason };
    let one = || Scalar::from_integer(1.into());
    let rows = Rows::new();
    Ok(match payload {
        Payload::PointPointCoincidence { point } => point_coincidence_rows(point).into_iter().fold(rows, Rows::blind),
        Payload::PointPointDistance { point_i, point_j, .. } => {
            rows.blind(join4(&point_i.extend(one()), &point_j.extend(one())))
        }
        Payload::PointLineCoincidence { point_i, line_j } => {
            rows.blind2(bb_blind_parallel(point_i, &line_j.direction).map_err(g)?)
        }
        Payload::PointLineDistance { point_i, line_j, .. } => {
            let d_hat = perpendicular_towards(point_i, &line_j.point, &line_j.direction);
            if d_hat.is_zero() {
                return Err(degenerate(
                    "the point lies on the line, so the perpendicular is undefined",
                ));
            }
            rows.blind(bb_blind_orthogonal(point_i, &d_hat).map_err(g)?)
        }
        Payload::PointPlaneCoincidence { point_i, plane_j } | Payload::PointPlaneDistance { point_i, plane_j, .. } => {
            rows.blind(bb_blind_orthogonal(point_i, &plane_j.normal).map_err(g)?)
        }
        Payload::LineLineParallel { direction, .. } => rows.angular2(bb_angular_parallel(direction).map_err(g)?),
        Payload::LineLinePerpendicular { line_i, line_j } | Payload::LineLineFixedAngular { line_i, line_j, .. } => {
            rows.angular(bb_angular_fixed(&line_i.direction, &line_j.direction).map_err(g)?)
        }
        Payload::LineLineCoincidence { line } => rows
            .angular2(bb_angular_parallel(&line.direction).map_err(g)?)
            .blind2(bb_blind_parallel(&line.point, &line.direction).map_err(g)?),
        Payload::LineLineDistance { line_i, line_j, .. } => {
            let p = closest_point(&line_i.point, &line_i.direction, &line_j.point, &line_j.direction)
                .ok_or_else(|| degenerate("parallel lines have no unique closest point"))?;
            let n = line_i.direction.cross(&line_j.direction);
            rows.blind(bb_blind_orthogonal(&p, &n).map_err(g)?)
        }
        Payload::LinePlaneParallel { line_i, plane_j } | Payload::LinePlaneFixedAngular { line_i, plane_j, .. } => {
            rows.angular(bb_angular_fixed(&line_i.direction, &plane_j.normal).map_err(g)?)
        }
        Payload::LinePlanePerpendicular { line_i, .. } => {
            rows.angular2(bb_angular_parallel(&line_i.direction).map_err(g)?)
        }
        Payload::LinePlaneCoincidence { line_i, plane_j } | Payload::LinePlaneDistance { line_i, plane_j, .. } => rows
            .angular(bb_angular_fixed(&line_i.direction, &plane_j.normal).map_err(g)?)
            .blind(bb_blind_orthogonal(&line_i.point, &plane_j.normal).map_err(g)?),
        Payload::PlanePlaneParallel { normal, .. } => rows.angular2(bb_angular_parallel(normal).map_err(g)?),
        Payload::PlanePlanePerpendicular { plane_i, plane_j }
        | Payload::PlanePlaneFixedAngular { plane_i, plane_j, .. } => {
            rows.angular(bb_angular_fixed(&plane_i.normal, &plane_j.normal).map_err(g)?)
        }
        Payload::PlanePlaneCoincidence { plane } => rows
            .angular2(bb_angular_parallel(&plane.normal).map_err(g)?)
            .blind(bb_blind_orthogonal(&plane.point, &plane.normal).map_err(g)?),
        Payload::PlanePlaneDistance { point_i, normal, .. } => rows
            .angular2(bb_angular_parallel(normal).map_err(g)?)
            .blind(bb_blind_orthogonal(point_i, normal).map_err(g)?),
    })
}
