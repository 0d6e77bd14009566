//! (k,l)-sparsity, pebble games, matroid intersection and nested sparsity on
//! colored multigraphs.

mod brute;
mod matroid;
mod nested;
mod pebble;

use std::fmt;

use thiserror::Error;

pub use brute::{
    inclusion_maximal_nested_sets, max_nested_sparse_bruteforce, nested_sparse_bruteforce, sparse_bruteforce,
    tight_components_bruteforce, BRUTE_FORCE_MAX_EDGES, BRUTE_FORCE_MAX_VERTICES,
};
pub use matroid::{matroid_intersect, IndependenceOracle};
pub use nested::{
    is_nested_sparse, nested, nested_components, nested_decision, nested_extract, nested_tight, NestedMode,
    NestedResult,
};
pub use pebble::{is_sparse, pebble_components, pebble_decision, PebbleGame};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SparsityError {
    #[error("counts (k={k}, l={l}) are unsupported: the pebble game requires 0 <= l < 2k")]
    UnsupportedCounts { k: usize, l: usize },
    #[error("nested counts need inner ({k2},{l2}) at least as restrictive as outer ({k1},{l1})")]
    InnerNotRestrictive { k1: usize, l1: usize, k2: usize, l2: usize },
    #[error("edge {index} is a loop at vertex {vertex}")]
    Loop { index: usize, vertex: usize },
    #[error("edge {index} references vertex {vertex} but the graph has {vertex_count} vertices")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("brute-force oracle limited to {max} vertices, graph has {vertices}")]
    OracleTooLarge { vertices: usize, max: usize },
    #[error("edge-subset enumeration limited to {max} edges, graph has {edges}")]
    TooManyEdges { edges: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeColor {
    Red,
    Black,
}

impl EdgeColor {
    pub fn name(self) -> &'static str {
        match self {
            EdgeColor::Red => "red",
            EdgeColor::Black => "black",
        }
    }
}

impl fmt::Display for EdgeColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub color: Option<EdgeColor>,
}

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        Edge { u, v, color: None }
    }

    pub fn colored(u: usize, v: usize, color: EdgeColor) -> Self {
        Edge {
            u,
            v,
            color: Some(color),
        }
    }

    pub fn is_red(&self) -> bool {
        self.color == Some(EdgeColor::Red)
    }
}

/// Loop-free multigraph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl MultiGraph {
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self, SparsityError> {
        for (index, e) in edges.iter().enumerate() {
            for vertex in [e.u, e.v] {
                if vertex >= vertex_count {
                    return Err(SparsityError::VertexOutOfRange {
                        index,
                        vertex,
                        vertex_count,
                    });
                }
            }
            if e.u == e.v {
                return Err(SparsityError::Loop { index, vertex: e.u });
            }
        }
        Ok(MultiGraph { vertex_count, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Subgraph on the same vertices keeping the listed edges, in that order.
    pub fn subgraph(&self, edges: &[usize]) -> MultiGraph {
        MultiGraph {
            vertex_count: self.vertex_count,
            edges: edges.iter().map(|&i| self.edges[i]).collect(),
        }
    }

    pub fn red_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_red()).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SparsityCounts {
    pub k: usize,
    pub l: usize,
}

impl SparsityCounts {
    pub fn new(k: usize, l: usize) -> Result<Self, SparsityError> {
        if l >= 2 * k {
            return Err(SparsityError::UnsupportedCounts { k, l });
        }
        Ok(SparsityCounts { k, l })
    }

    /// `k n - l`, the edge bound for an `n`-vertex set (may be negative).
    pub fn bound(&self, n: usize) -> i64 {
        (self.k * n) as i64 - self.l as i64
    }
}

impl fmt::Display for SparsityCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NestedCounts {
    pub outer: SparsityCounts,
    pub inner: SparsityCounts,
}

impl NestedCounts {
    pub fn new(k1: usize, l1: usize, k2: usize, l2: usize) -> Result<Self, SparsityError> {
        let outer = SparsityCounts::new(k1, l1)?;
        let inner = SparsityCounts::new(k2, l2)?;
        if k2 > k1 || 2 * k2 + l1 > 2 * k1 + l2 {
            return Err(SparsityError::InnerNotRestrictive { k1, l1, k2, l2 });
        }
        Ok(NestedCounts { outer, inner })
    }

    /// Body-and-cad counts (6,6,3,3).
    pub fn body_and_cad() -> Self {
        NestedCounts::new(6, 6, 3, 3).expect("valid counts")
    }
}

impl fmt::Display for NestedCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            self.outer.k, self.outer.l, self.inner.k, self.inner.l
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loops_and_bad_vertices_are_rejected() {
        assert_eq!(
            MultiGraph::new(1, vec![Edge::new(0, 0)]),
            Err(SparsityError::Loop { index: 0, vertex: 0 })
        );
        assert!(matches!(
            MultiGraph::new(2, vec![Edge::new(0, 2)]),
            Err(SparsityError::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn count_ranges() {
        assert!(SparsityCounts::new(3, 0).is_ok());
        assert!(SparsityCounts::new(6, 11).is_ok());
        assert_eq!(
            SparsityCounts::new(2, 4),
            Err(SparsityError::UnsupportedCounts { k: 2, l: 4 })
        );
        assert!(SparsityCounts::new(0, 0).is_err());
        assert!(NestedCounts::new(6, 6, 3, 3).is_ok());
        assert!(NestedCounts::new(2, 2, 1, 1).is_ok());
        assert!(NestedCounts::new(3, 3, 6, 6).is_err());
    }

    #[test]
    fn subgraph_keeps_order() {
        let g = MultiGraph::new(3, vec![Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 2)]).unwrap();
        let h = g.subgraph(&[2, 0]);
        assert_eq!(h.edges(), &[Edge::new(0, 2), Edge::new(0, 1)]);
        assert_eq!(h.vertex_count(), 3);
    }
}
