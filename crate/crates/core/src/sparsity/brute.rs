//! Exhaustive oracles that apply the counting definitions directly.

use super::{MultiGraph, NestedCounts, SparsityCounts, SparsityError};

pub const BRUTE_FORCE_MAX_VERTICES: usize = 12;
pub const BRUTE_FORCE_MAX_EDGES: usize = 20;

fn check_vertices(g: &MultiGraph) -> Result<(), SparsityError> {
    if g.vertex_count() > BRUTE_FORCE_MAX_VERTICES {
        return Err(SparsityError::OracleTooLarge {
            vertices: g.vertex_count(),
            max: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    Ok(())
}

fn check_edges(g: &MultiGraph) -> Result<(), SparsityError> {
    check_vertices(g)?;
    if g.edge_count() > BRUTE_FORCE_MAX_EDGES {
        return Err(SparsityError::TooManyEdges {
            edges: g.edge_count(),
            max: BRUTE_FORCE_MAX_EDGES,
        });
    }
    Ok(())
}

/// Number of edges with both ends in each vertex subset (indexed by bitmask).
fn spans<'a>(n: usize, edges: impl Iterator<Item = (usize, usize)> + Clone + 'a) -> Vec<i64> {
    (0..1usize << n)
        .map(|mask| {
            edges
                .clone()
                .filter(|&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1)
                .count() as i64
        })
        .collect()
}

fn sparse_edges(n: usize, edges: &[(usize, usize)], c: SparsityCounts) -> bool {
    spans(n, edges.iter().copied())
        .iter()
        .enumerate()
        .all(|(mask, &m)| m == 0 || m <= c.bound(mask.count_ones() as usize))
}

/// Every vertex subset spanning at least one edge spans at most `k n' - l`.
pub fn sparse_bruteforce(g: &MultiGraph, c: SparsityCounts) -> Result<bool, SparsityError> {
    check_vertices(g)?;
    let edges: Vec<_> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    Ok(sparse_edges(g.vertex_count(), &edges, c))
}

/// Inclusion-maximal vertex sets of size at least 2 spanning exactly
/// `k n' - l` edges.
pub fn tight_components_bruteforce(g: &MultiGraph, c: SparsityCounts) -> Result<Vec<Vec<usize>>, SparsityError> {
    check_vertices(g)?;
    let n = g.vertex_count();
    let span = spans(n, g.edges().iter().map(|e| (e.u, e.v)));
    let tight: Vec<usize> = (0..1usize << n)
        .filter(|&mask| {
            let size = mask.count_ones() as usize;
            size >= 2 && span[mask] > 0 && span[mask] == c.bound(size)
        })
        .collect();
    let mut out: Vec<Vec<usize>> = tight
        .iter()
        .filter(|&&a| !tight.iter().any(|&b| b != a && a & b == a))
        .map(|&mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
        .collect();
    out.sort();
    Ok(out)
}

/// The definition of nested sparsity applied to an edge subset.
pub fn nested_sparse_bruteforce(g: &MultiGraph, subset: &[usize], nc: NestedCounts) -> Result<bool, SparsityError> {
    check_vertices(g)?;
    let all: Vec<_> = subset.iter().map(|&i| (g.edges()[i].u, g.edges()[i].v)).collect();
    let red: Vec<_> = subset
        .iter()
        .filter(|&&i| g.edges()[i].is_red())
        .map(|&i| (g.edges()[i].u, g.edges()[i].v))
        .collect();
    Ok(sparse_edges(g.vertex_count(), &all, nc.outer) && sparse_edges(g.vertex_count(), &red, nc.inner))
}

fn nested_sparse_masks(g: &MultiGraph, nc: NestedCounts) -> Result<Vec<bool>, SparsityError> {
    check_edges(g)?;
    (0..1usize << g.edge_count())
        .map(|mask| {
            let subset: Vec<usize> = (0..g.edge_count()).filter(|&i| mask >> i & 1 == 1).collect();
            nested_sparse_bruteforce(g, &subset, nc)
        })
        .collect()
}

/// Size of a largest nested-sparse edge subset, by enumerating all subsets.
pub fn max_nested_sparse_bruteforce(g: &MultiGraph, nc: NestedCounts) -> Result<usize, SparsityError> {
    let ok = nested_sparse_masks(g, nc)?;
    Ok((0..ok.len())
        .filter(|&mask| ok[mask])
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// Every nested-sparse edge subset to which no further edge can be added.
pub fn inclusion_maximal_nested_sets(g: &MultiGraph, nc: NestedCounts) -> Result<Vec<Vec<usize>>, SparsityError> {
    let ok = nested_sparse_masks(g, nc)?;
    let m = g.edge_count();
    Ok((0..ok.len())
        .filter(|&mask| ok[mask] && (0..m).all(|i| mask >> i & 1 == 1 || !ok[mask | 1 << i]))
        .map(|mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparsity::Edge;

    #[test]
    fn empty_graph_is_sparse() {
        let g = MultiGraph::new(4, vec![]).unwrap();
        assert!(sparse_bruteforce(&g, SparsityCounts::new(2, 3).unwrap()).unwrap());
    }

    #[test]
    fn too_large() {
        let g = MultiGraph::new(13, vec![]).unwrap();
        assert!(matches!(
            sparse_bruteforce(&g, SparsityCounts::new(1, 1).unwrap()),
            Err(SparsityError::OracleTooLarge { vertices: 13, .. })
        ));
    }

    #[test]
    fn k4_is_not_laman_sparse() {
        let e = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let g = MultiGraph::new(4, e.iter().map(|&(u, v)| Edge::new(u, v)).collect()).unwrap();
        assert!(!sparse_bruteforce(&g, SparsityCounts::new(2, 3).unwrap()).unwrap());
        let h = g.subgraph(&[0, 1, 2, 3, 4]);
        assert!(sparse_bruteforce(&h, SparsityCounts::new(2, 3).unwrap()).unwrap());
        assert_eq!(
            tight_components_bruteforce(&h, SparsityCounts::new(2, 3).unwrap()).unwrap(),
            vec![vec![0, 1, 2, 3]]
        );
    }
}
