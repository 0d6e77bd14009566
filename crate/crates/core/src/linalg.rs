//! Dense exact and floating-point elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::geometry::Scalar;

/// Scale a rational row to integers by the lcm of its denominators.
fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Exact rank by fraction-free (Bareiss) elimination. Pivots are taken
/// column by column from the first remaining row with a nonzero entry.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..width {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..m.len() {
            let factor = m[r][col].clone();
            for c in col..width {
                let value = (&pivot * &m[r][c] - &factor * &m[rank][c]) / &prev;
                m[r][c] = value;
            }
        }
        prev = pivot;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(rows: &[Vec<Scalar>], width: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for c in col..width {
                    let delta = &factor * &m[r][c];
                    m[i][c] -= delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Basis of `{x : A x = 0}`, one vector per free column in increasing order.
pub fn nullspace(rows: &[Vec<Scalar>], width: usize) -> Vec<Vec<Scalar>> {
    let (reduced, pivots) = rref(rows, width);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Scalar::zero(); width];
            x[f] = Scalar::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

pub fn mat_vec(rows: &[Vec<Scalar>], x: &[Scalar]) -> Vec<Scalar> {
    rows.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// Growing row basis kept in echelon form, for greedy independence tests.
#[derive(Debug, Clone, Default)]
pub struct IncrementalBasis {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl IncrementalBasis {
    pub fn new() -> Self {
        IncrementalBasis::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, row: &[Scalar]) -> Vec<Scalar> {
        let mut r = row.to_vec();
        for (pivot, b) in &self.rows {
            if !r[*pivot].is_zero() {
                let factor = r[*pivot].clone();
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= &factor * y;
                }
            }
        }
        r
    }

    pub fn is_independent(&self, row: &[Scalar]) -> bool {
        self.reduce(row).iter().any(|x| !x.is_zero())
    }

    /// Add `row` if it is independent of the rows so far; returns whether it was.
    pub fn insert(&mut self, row: &[Scalar]) -> bool {
        let r = self.reduce(row);
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[pivot].recip();
        let r: Vec<Scalar> = r.iter().map(|x| x * &inv).collect();
        for (_, b) in &mut self.rows {
            if !b[pivot].is_zero() {
                let factor = b[pivot].clone();
                for (x, y) in b.iter_mut().zip(&r) {
                    *x -= &factor * y;
                }
            }
        }
        self.rows.push((pivot, r));
        true
    }
}

/// Largest absolute entry, at least 1; tolerances are relative to it.
fn scale(rows: &[Vec<f64>]) -> f64 {
    rows.iter().flatten().fold(1.0f64, |acc, x| acc.max(x.abs()))
}

/// Reduced echelon form with partial pivoting; entries below
/// `tolerance * max(1, max |a_ij|)` count as zero.
pub fn float_rref(rows: &[Vec<f64>], width: usize, tolerance: f64) -> (Vec<Vec<f64>>, Vec<usize>) {
    let eps = tolerance * scale(rows);
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == m.len() {
            break;
        }
        let (p, best) = (r..m.len())
            .map(|i| (i, m[i][col].abs()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= eps {
            for row in m.iter_mut().skip(r) {
                row[col] = 0.0;
            }
            continue;
        }
        m.swap(r, p);
        let inv = 1.0 / m[r][col];
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..m.len() {
            if i != r {
                let factor = m[i][col];
                if factor != 0.0 {
                    for c in col..width {
                        m[i][c] -= factor * m[r][c];
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn float_rank(rows: &[Vec<f64>], width: usize, tolerance: f64) -> usize {
    float_rref(rows, width, tolerance).1.len()
}

pub fn float_nullspace(rows: &[Vec<f64>], width: usize, tolerance: f64) -> Vec<Vec<f64>> {
    let (reduced, pivots) = float_rref(rows, width, tolerance);
    (0..width)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut x = vec![0.0; width];
            x[f] = 1.0;
            for (row, &p) in reduced.iter().zip(&pivots) {
                x[p] = -row[f];
            }
            x
        })
        .collect()
}

pub fn to_f64(rows: &[Vec<Scalar>]) -> Vec<Vec<f64>> {
    use num_traits::ToPrimitive;
    rows.iter()
        .map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, ratio};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&m(&[&[0, 0, 0]])), 0);
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
        assert_eq!(rank(&m(&[&[1, 0], &[0, 1], &[1, 1]])), 2);
        let frac = vec![vec![ratio(1, 2), ratio(1, 3)], vec![ratio(3, 2), int(1)]];
        assert_eq!(rank(&frac), 1);
    }

    #[test]
    fn nullspace_basis() {
        let a = m(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        let ns = nullspace(&a, 4);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            assert!(mat_vec(&a, x).iter().all(Zero::is_zero));
        }
        assert_eq!(nullspace(&[], 3).len(), 3);
    }

    #[test]
    fn incremental_basis_tracks_rank() {
        let rows = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 3, 4]]);
        let mut b = IncrementalBasis::new();
        let kept: Vec<bool> = rows.iter().map(|r| b.insert(r)).collect();
        assert_eq!(kept, vec![true, false, true, false]);
        assert_eq!(b.rank(), 2);
    }

    #[test]
    fn float_mode_on_exact_matrix() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let f = to_f64(&a);
        assert_eq!(float_rank(&f, 3, 1e-9), 2);
        assert_eq!(float_nullspace(&f, 3, 1e-9).len(), 1);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
    }

    proptest! {
        #[test]
        fn bareiss_matches_rref_and_nullity(a in small_matrix()) {
            let rows: Vec<Vec<Scalar>> = a.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
            let width = rows[0].len();
            let r = rank(&rows);
            prop_assert_eq!(r, rref(&rows, width).1.len());
            prop_assert_eq!(r + nullspace(&rows, width).len(), width);
            let mut b = IncrementalBasis::new();
            for row in &rows {
                b.insert(row);
            }
            prop_assert_eq!(b.rank(), r);
            prop_assert_eq!(float_rank(&to_f64(&rows), width, 1e-9), r);
        }
    }
}
