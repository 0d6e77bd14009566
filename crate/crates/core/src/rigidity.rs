//! Rigidity matrix assembly and infinitesimal rigidity verdicts.
//!
//! Each body owns six columns, `(v-block, -omega-block)`, bodies ordered by id.
//! All verdicts are infinitesimal: they concern first-order motions at the
//! given realization.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::compiler::{compile_at, CompileError, PrimitiveRow, RowClass, RowSource};
use crate::geometry::{cayley_rotation, Scalar, Vec3};
use crate::linalg;
use crate::model::{validate, BodyId, Framework, Violation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RigidityError {
    #[error("framework is invalid: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("constraint #{constraint}: {source}")]
    Compile {
        constraint: usize,
        #[source]
        source: CompileError,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowMeta {
    pub source: RowSource,
    pub class: RowClass,
    pub body_i: BodyId,
    pub body_j: BodyId,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RigidityMatrix {
    pub n: usize,
    pub rows: Vec<Vec<Scalar>>,
    pub meta: Vec<RowMeta>,
}

impl RigidityMatrix {
    pub fn width(&self) -> usize {
        6 * self.n
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    fn push(&mut self, row: &PrimitiveRow) {
        let mut dense = vec![Scalar::zero(); self.width()];
        let (bi, bj) = ((row.body_i - 1) * 6, (row.body_j - 1) * 6);
        for (k, x) in row.coeff_i.iter().enumerate() {
            dense[bi + k] = x.clone();
            dense[bj + k] = -x.clone();
        }
        self.rows.push(dense);
        self.meta.push(RowMeta {
            source: row.source,
            class: row.class,
            body_i: row.body_i,
            body_j: row.body_j,
        });
    }

    /// Rows whose source constraint is not in `dropped`.
    fn rows_without(&self, dropped: &[bool]) -> Vec<Vec<Scalar>> {
        self.rows
            .iter()
            .zip(&self.meta)
            .filter(|(_, m)| !dropped[m.source.constraint])
            .map(|(r, _)| r.clone())
            .collect()
    }
}

/// Build the rigidity matrix; constraint rows appear in input order.
pub fn assemble(fw: &Framework) -> Result<RigidityMatrix, RigidityError> {
    let mut m = RigidityMatrix {
        n: fw.body_count(),
        rows: Vec::new(),
        meta: Vec::new(),
    };
    for (index, c) in fw.constraints.iter().enumerate() {
        let rows = compile_at(index, c).map_err(|source| RigidityError::Compile {
            constraint: index,
            source,
        })?;
        for row in &rows {
            m.push(row);
        }
    }
    Ok(m)
}

pub fn rank(m: &RigidityMatrix) -> usize {
    linalg::rank(&m.rows)
}

/// Rotations `rho_1..3` followed by translations `tau_1..3`, the same unit
/// pattern repeated for every body.
pub fn trivial_basis(n: usize) -> Vec<Vec<Scalar>> {
    let column = |offset: usize| {
        let mut t = vec![Scalar::zero(); 6 * n];
        for b in 0..n {
            t[6 * b + offset] = Scalar::one();
        }
        t
    };
    [3, 4, 5, 0, 1, 2].into_iter().map(column).collect()
}

/// Whether `m` annihilates every trivial motion.
pub fn annihilates_trivial_motions(m: &RigidityMatrix) -> bool {
    trivial_basis(m.n)
        .iter()
        .all(|t| linalg::mat_vec(&m.rows, t).iter().all(Zero::is_zero))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    Rational,
    /// Elimination in f64; entries below `tolerance * max(1, max |a|)` are zero.
    Float {
        tolerance: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum FlexBasis {
    Exact(Vec<Vec<Scalar>>),
    Float(Vec<Vec<f64>>),
}

impl FlexBasis {
    pub fn len(&self) -> usize {
        match self {
            FlexBasis::Exact(v) => v.len(),
            FlexBasis::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Rank and dof of the rows touching one connected group of bodies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDof {
    pub bodies: Vec<BodyId>,
    pub rows: usize,
    pub rank: usize,
    pub dof: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RigidityReport {
    pub n: usize,
    pub rows: usize,
    pub rank: usize,
    pub dof: usize,
    pub is_rigid: bool,
    pub is_minimally_rigid: bool,
    pub is_overconstrained: bool,
    /// Sorted row indices; removing all of them leaves a row basis.
    pub redundant_rows: Vec<usize>,
    pub redundant_sources: Vec<RowSource>,
    /// Kernel vectors orthogonal to the trivial motions, one per dof.
    pub flex_basis: FlexBasis,
    pub components: Vec<ComponentDof>,
    pub trivial_kernel_ok: bool,
}

trait RankEngine {
    fn rank(&self, rows: &[Vec<Scalar>], width: usize) -> usize;
}

struct Exact;

impl RankEngine for Exact {
    fn rank(&self, rows: &[Vec<Scalar>], _width: usize) -> usize {
        linalg::rank(rows)
    }
}

struct Float(f64);

impl RankEngine for Float {
    fn rank(&self, rows: &[Vec<Scalar>], width: usize) -> usize {
        linalg::float_rank(&linalg::to_f64(rows), width, self.0)
    }
}

/// Two passes. First, in input order, drop each whole constraint whose rows
/// add nothing to the rank of the constraints still kept. Then scan the
/// remaining rows in order and flag those dependent on earlier kept rows.
fn redundant_rows(m: &RigidityMatrix, engine: &dyn RankEngine, full_rank: usize) -> Vec<usize> {
    let constraint_count = m.meta.iter().map(|r| r.source.constraint + 1).max().unwrap_or(0);
    let mut dropped = vec![false; constraint_count];
    for c in 0..constraint_count {
        dropped[c] = true;
        if engine.rank(&m.rows_without(&dropped), m.width()) != full_rank {
            dropped[c] = false;
        }
    }
    let mut out = Vec::new();
    let mut kept: Vec<Vec<Scalar>> = Vec::new();
    let mut kept_rank = 0;
    for (index, (row, meta)) in m.rows.iter().zip(&m.meta).enumerate() {
        if dropped[meta.source.constraint] {
            out.push(index);
            continue;
        }
        kept.push(row.clone());
        let r = engine.rank(&kept, m.width());
        if r == kept_rank {
            kept.pop();
            out.push(index);
        } else {
            kept_rank = r;
        }
    }
    out
}

fn body_components(fw: &Framework) -> Vec<Vec<BodyId>> {
    let n = fw.body_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for c in &fw.constraints {
        let (a, b) = (find(&mut parent, c.i - 1), find(&mut parent, c.j - 1));
        parent[a.max(b)] = a.min(b);
    }
    let mut groups: Vec<Vec<BodyId>> = Vec::new();
    let mut root_group = vec![usize::MAX; n];
    for b in 0..n {
        let r = find(&mut parent, b);
        if root_group[r] == usize::MAX {
            root_group[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_group[r]].push(b + 1);
    }
    groups
}

fn component_breakdown(fw: &Framework, m: &RigidityMatrix, engine: &dyn RankEngine) -> Vec<ComponentDof> {
    body_components(fw)
        .into_iter()
        .map(|bodies| {
            let cols: Vec<usize> = bodies.iter().flat_map(|&b| (b - 1) * 6..b * 6).collect();
            let rows: Vec<Vec<Scalar>> = m
                .rows
                .iter()
                .zip(&m.meta)
                .filter(|(_, meta)| bodies.contains(&meta.body_i))
                .map(|(r, _)| cols.iter().map(|&c| r[c].clone()).collect())
                .collect();
            let rank = engine.rank(&rows, cols.len());
            ComponentDof {
                dof: 6 * bodies.len() - 6 - rank,
                rows: rows.len(),
                rank,
                bodies,
            }
        })
        .collect()
}

pub fn analyze(fw: &Framework) -> Result<RigidityReport, RigidityError> {
    analyze_with(fw, Mode::Rational)
}

pub fn analyze_with(fw: &Framework, mode: Mode) -> Result<RigidityReport, RigidityError> {
    let violations = validate(fw);
    if !violations.is_empty() {
        return Err(RigidityError::Invalid(violations));
    }
    let m = assemble(fw)?;
    let n = m.n;
    let width = m.width();
    let engine: Box<dyn RankEngine> = match mode {
        Mode::Rational => Box::new(Exact),
        Mode::Float { tolerance } => Box::new(Float(tolerance)),
    };
    let rank = engine.rank(&m.rows, width);
    let full = (6 * n).saturating_sub(6);
    let dof = full.saturating_sub(rank);
    let mut stacked = m.rows.clone();
    if n > 0 {
        stacked.extend(trivial_basis(n));
    }
    let flex_basis = match mode {
        Mode::Rational => FlexBasis::Exact(linalg::nullspace(&stacked, width)),
        Mode::Float { tolerance } => {
            FlexBasis::Float(linalg::float_nullspace(&linalg::to_f64(&stacked), width, tolerance))
        }
    };
    let redundant = redundant_rows(&m, engine.as_ref(), rank);
    Ok(RigidityReport {
        n,
        rows: m.row_count(),
        rank,
        dof,
        is_rigid: rank == full,
        is_minimally_rigid: rank == full && rank == m.row_count(),
        is_overconstrained: m.row_count() > rank,
        redundant_sources: redundant.iter().map(|&r| m.meta[r].source).collect(),
        redundant_rows: redundant,
        flex_basis,
        components: component_breakdown(fw, &m, engine.as_ref()),
        trivial_kernel_ok: annihilates_trivial_motions(&m),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbAudit {
    pub base_rank: usize,
    pub trial_ranks: Vec<usize>,
}

impl PerturbAudit {
    pub fn rank_changed(&self) -> bool {
        self.trial_ranks.iter().any(|&r| r != self.base_rank)
    }
}

fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(rng.gen_range(-20i64..=20).into(), 100.into())
}

/// Re-evaluate the rank after moving every constraint's geometry by its own
/// small random rigid motion. Each payload stays consistent, so this probes
/// whether the rank at the given realization is special.
pub fn perturb_audit(fw: &Framework, trials: usize, seed: u64) -> Result<PerturbAudit, RigidityError> {
    let base_rank = rank(&assemble(fw)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trial_ranks = Vec::with_capacity(trials);
    for _ in 0..trials {
        let mut moved = fw.clone();
        for c in &mut moved.constraints {
            let w = Vec3::new(
                small_rational(&mut rng),
                small_rational(&mut rng),
                small_rational(&mut rng),
            );
            let t = Vec3::new(
                small_rational(&mut rng),
                small_rational(&mut rng),
                small_rational(&mut rng),
            );
            c.payload = c.payload.transformed(&cayley_rotation(&w), &t);
        }
        trial_ranks.push(rank(&assemble(&moved)?));
    }
    Ok(PerturbAudit { base_rank, trial_ranks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geometry::int;

    fn row(values: [i64; 12]) -> Vec<Scalar> {
        values.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn dice_matrix_entries() {
        let m = assemble(&fixtures::dice()).unwrap();
        let expected = [
            [0, 0, 0, -1, 0, 0, 0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1],
            [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1, 0],
            [0, 0, 0, 1, 0, 0, 0, 0, 0, -1, 0, 0],
            [0, -1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
            [1, 0, 0, 0, -1, 1, -1, 0, 0, 0, 1, -1],
            [0, 1, 0, 1, 0, 0, 0, -1, 0, -1, 0, 0],
            [0, 0, 1, -1, 0, 0, 0, 0, -1, 1, 0, 0],
        ];
        assert_eq!(m.rows, expected.map(row).to_vec());
        assert_eq!(rank(&m), 6);
    }

    #[test]
    fn empty_framework() {
        let fw = Framework::with_bodies(["A", "B"]);
        let m = assemble(&fw).unwrap();
        assert_eq!((m.row_count(), m.width()), (0, 12));
        assert_eq!(rank(&m), 0);
        let r = analyze(&fw).unwrap();
        assert_eq!(r.dof, 6);
        assert_eq!(r.flex_basis.len(), 6);
        assert!(!r.is_rigid);
        assert_eq!(r.components.len(), 2);
    }

    #[test]
    fn trivial_basis_layout() {
        let one = trivial_basis(1);
        assert_eq!(one.len(), 6);
        let mut seen: Vec<usize> = one
            .iter()
            .map(|t| t.iter().position(|x| !x.is_zero()).unwrap())
            .collect();
        seen.sort_unstable();
        assert_eq!(seen, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(trivial_basis(2)[3], row([1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn point_coincidence_has_rank_three() {
        let fw = fixtures::dice().without(0).without(0).without(0);
        assert_eq!(rank(&assemble(&fw).unwrap()), 3);
    }

    #[test]
    fn dice_report() {
        let r = analyze(&fixtures::dice()).unwrap();
        assert_eq!((r.rank, r.dof), (6, 0));
        assert!(r.is_rigid && r.is_overconstrained && !r.is_minimally_rigid);
        assert_eq!(r.redundant_rows, vec![3, 4]);
        assert!(r.redundant_sources.iter().all(|s| s.constraint == 2));
        assert!(r.trivial_kernel_ok);
        assert!(r.flex_basis.is_empty());
    }

    #[test]
    fn float_mode_agrees() {
        for (_, fw) in fixtures::corpus() {
            let exact = analyze(&fw).unwrap();
            let float = analyze_with(&fw, Mode::Float { tolerance: 1e-9 }).unwrap();
            assert_eq!(exact.rank, float.rank);
            assert_eq!(exact.redundant_rows, float.redundant_rows);
            assert_eq!(exact.flex_basis.len(), float.flex_basis.len());
        }
    }

    #[test]
    fn components_split_disconnected_bodies() {
        let mut fw = fixtures::dice_minus_e3();
        fw.bodies.push(crate::model::Body {
            id: 3,
            label: "C".into(),
        });
        let r = analyze(&fw).unwrap();
        assert_eq!(r.dof, 6);
        assert_eq!(r.components.len(), 2);
        assert_eq!(r.components[0].bodies, vec![1, 2]);
        assert_eq!(r.components[0].dof, 0);
        assert_eq!(r.components[1].dof, 0);
    }

    #[test]
    fn invalid_framework_is_rejected() {
        let mut fw = fixtures::dice();
        fw.constraints[0].j = 1;
        assert!(matches!(analyze(&fw), Err(RigidityError::Invalid(_))));
    }

    #[test]
    fn perturbation_keeps_dice_rank() {
        let audit = perturb_audit(&fixtures::dice(), 5, 7).unwrap();
        assert_eq!(audit.base_rank, 6);
        assert_eq!(audit.trial_ranks.len(), 5);
    }
}
