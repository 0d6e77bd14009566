use super::pebble::{is_sparse, pebble_components};
use super::{matroid_intersect, MultiGraph, NestedCounts, SparsityError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NestedMode {
    Decision,
    Extraction,
    Components,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NestedResult {
    Decision(bool),
    /// Indices of a maximum nested-sparse edge set, sorted.
    Extraction(Vec<usize>),
    Components(Vec<Vec<usize>>),
}

fn checked(nc: NestedCounts) -> Result<NestedCounts, SparsityError> {
    NestedCounts::new(nc.outer.k, nc.outer.l, nc.inner.k, nc.inner.l)
}

/// Pebble-game check of the nested condition on an edge subset.
pub fn is_nested_sparse(g: &MultiGraph, subset: &[usize], nc: NestedCounts) -> bool {
    let edges = g.edges();
    is_sparse(
        g.vertex_count(),
        subset.iter().map(|&i| (edges[i].u, edges[i].v)),
        nc.outer,
    ) && is_sparse(
        g.vertex_count(),
        subset
            .iter()
            .filter(|&&i| edges[i].is_red())
            .map(|&i| (edges[i].u, edges[i].v)),
        nc.inner,
    )
}

/// A maximum-size nested-sparse edge subset. The first matroid is
/// outer-sparsity of all edges; the second is inner-sparsity of the red edges
/// with black edges unconstrained. Uncolored edges count as black.
pub fn nested_extract(g: &MultiGraph, nc: NestedCounts) -> Result<Vec<usize>, SparsityError> {
    let nc = checked(nc)?;
    let n = g.vertex_count();
    let edges = g.edges();
    let m1 = |set: &[usize]| is_sparse(n, set.iter().map(|&i| (edges[i].u, edges[i].v)), nc.outer);
    let m2 = |set: &[usize]| {
        is_sparse(
            n,
            set.iter()
                .filter(|&&i| edges[i].is_red())
                .map(|&i| (edges[i].u, edges[i].v)),
            nc.inner,
        )
    };
    Ok(matroid_intersect(edges.len(), &m1, &m2))
}

pub fn nested_decision(g: &MultiGraph, nc: NestedCounts) -> Result<bool, SparsityError> {
    Ok(nested_extract(g, nc)?.len() == g.edge_count())
}

/// Outer-count pebble-game components of a maximum nested-sparse subgraph.
pub fn nested_components(g: &MultiGraph, nc: NestedCounts) -> Result<Vec<Vec<usize>>, SparsityError> {
    let kept = nested_extract(g, nc)?;
    pebble_components(&g.subgraph(&kept), nc.outer)
}

/// Nested sparse with exactly `k1 n - l1` edges.
pub fn nested_tight(g: &MultiGraph, nc: NestedCounts) -> Result<bool, SparsityError> {
    let tight_size = nc.outer.bound(g.vertex_count()) == g.edge_count() as i64;
    Ok(tight_size && nested_decision(g, nc)?)
}

pub fn nested(g: &MultiGraph, nc: NestedCounts, mode: NestedMode) -> Result<NestedResult, SparsityError> {
    Ok(match mode {
        NestedMode::Decision => NestedResult::Decision(nested_decision(g, nc)?),
        NestedMode::Extraction => NestedResult::Extraction(nested_extract(g, nc)?),
        NestedMode::Components => NestedResult::Components(nested_components(g, nc)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparsity::{Edge, EdgeColor};

    fn colored(n: usize, red: &[(usize, usize)], black: &[(usize, usize)]) -> MultiGraph {
        let mut edges: Vec<Edge> = red.iter().map(|&(u, v)| Edge::colored(u, v, EdgeColor::Red)).collect();
        edges.extend(black.iter().map(|&(u, v)| Edge::colored(u, v, EdgeColor::Black)));
        MultiGraph::new(n, edges).unwrap()
    }

    #[test]
    fn dice_primitive_graph_is_not_nested_sparse() {
        let g = colored(2, &[(0, 1); 4], &[(0, 1); 4]);
        let nc = NestedCounts::body_and_cad();
        assert!(!nested_decision(&g, nc).unwrap());
        let kept = nested_extract(&g, nc).unwrap();
        assert_eq!(kept.len(), 6);
        assert!(kept.iter().filter(|&&i| g.edges()[i].is_red()).count() <= 3);
    }

    #[test]
    fn minimal_dice_is_nested_tight() {
        let g = colored(2, &[(0, 1); 3], &[(0, 1); 3]);
        assert!(nested_tight(&g, NestedCounts::body_and_cad()).unwrap());
        assert_eq!(
            nested_components(&g, NestedCounts::body_and_cad()).unwrap(),
            vec![vec![0, 1]]
        );
    }

    #[test]
    fn uncolored_triangle_under_plain_counts() {
        let g = MultiGraph::new(3, vec![Edge::new(0, 1), Edge::new(1, 2), Edge::new(2, 0)]).unwrap();
        let nc = NestedCounts::new(2, 3, 2, 3).unwrap();
        assert!(nested_decision(&g, nc).unwrap());
        assert_eq!(
            nested(&g, nc, NestedMode::Components).unwrap(),
            NestedResult::Components(vec![vec![0, 1, 2]])
        );
    }
}
