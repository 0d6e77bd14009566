use std::collections::VecDeque;

use super::{MultiGraph, SparsityCounts, SparsityError};

/// State of a (k,l)-pebble game. Every accepted edge is oriented out of the
/// vertex that paid a pebble for it, so `pebbles(v) + outdegree(v) = k`.
#[derive(Debug, Clone)]
pub struct PebbleGame {
    counts: SparsityCounts,
    pebbles: Vec<usize>,
    /// Heads of the out-edges of each vertex, with multiplicity.
    out: Vec<Vec<usize>>,
}

impl PebbleGame {
    pub fn new(vertex_count: usize, counts: SparsityCounts) -> Self {
        PebbleGame {
            counts,
            pebbles: vec![counts.k; vertex_count],
            out: vec![Vec::new(); vertex_count],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.pebbles.len()
    }

    pub fn pebbles(&self, v: usize) -> usize {
        self.pebbles[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn total_pebbles(&self) -> usize {
        self.pebbles.iter().sum()
    }

    pub fn invariant_holds(&self) -> bool {
        (0..self.vertex_count()).all(|v| self.pebbles[v] + self.out[v].len() == self.counts.k)
    }

    /// Try to insert `uv`; returns whether the edge was accepted.
    pub fn try_add(&mut self, u: usize, v: usize) -> bool {
        assert_ne!(u, v, "pebble game edges must not be loops");
        if !self.gather(u, v, self.counts.l + 1) {
            return false;
        }
        let tail = if self.pebbles[u] > 0 { u } else { v };
        let head = if tail == u { v } else { u };
        self.pebbles[tail] -= 1;
        self.out[tail].push(head);
        true
    }

    /// Move pebbles onto `{u, v}` until they hold `target`, or as many as
    /// can be reached. Returns whether `target` was met.
    fn gather(&mut self, u: usize, v: usize, target: usize) -> bool {
        while self.pebbles[u] + self.pebbles[v] < target {
            let moved = (self.pebbles[u] < self.counts.k && self.fetch(u, v))
                || (self.pebbles[v] < self.counts.k && self.fetch(v, u));
            if !moved {
                return false;
            }
        }
        true
    }

    /// Depth-first search from `root` (never entering `other`) for a free
    /// pebble; the path is reversed so the pebble ends up on `root`.
    fn fetch(&mut self, root: usize, other: usize) -> bool {
        let n = self.vertex_count();
        let mut visited = vec![false; n];
        // parent[w] = (vertex, index into its out list) of the edge used to reach w
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        visited[root] = true;
        visited[other] = true;
        let mut stack = vec![root];
        let mut found = None;
        'search: while let Some(x) = stack.pop() {
            for (slot, &y) in self.out[x].iter().enumerate() {
                if visited[y] {
                    continue;
                }
                visited[y] = true;
                parent[y] = Some((x, slot));
                if self.pebbles[y] > 0 {
                    found = Some(y);
                    break 'search;
                }
                stack.push(y);
            }
        }
        let Some(target) = found else {
            return false;
        };
        let mut path = Vec::new();
        let mut w = target;
        while let Some((x, slot)) = parent[w] {
            path.push((x, slot, w));
            w = x;
        }
        // reverse each edge x -> w into w -> x; slots stay valid because each
        // vertex appears at most once as a tail on a simple path
        for &(x, slot, w) in &path {
            self.out[x].swap_remove(slot);
            self.out[w].push(x);
        }
        self.pebbles[target] -= 1;
        self.pebbles[root] += 1;
        true
    }

    /// Vertices that can reach a free pebble on some vertex outside `{u, v}`.
    fn reaches_free_pebble(&self, u: usize, v: usize) -> Vec<bool> {
        let n = self.vertex_count();
        let mut reverse = vec![Vec::new(); n];
        for (x, heads) in self.out.iter().enumerate() {
            for &y in heads {
                reverse[y].push(x);
            }
        }
        let mut marked = vec![false; n];
        let mut queue = VecDeque::new();
        for w in 0..n {
            if w != u && w != v && self.pebbles[w] > 0 {
                marked[w] = true;
                queue.push_back(w);
            }
        }
        while let Some(y) = queue.pop_front() {
            for &x in &reverse[y] {
                if !marked[x] {
                    marked[x] = true;
                    queue.push_back(x);
                }
            }
        }
        marked
    }

    /// The maximal tight vertex set spanning `uv`, if any. May reorient edges.
    fn tight_set_containing(&mut self, u: usize, v: usize) -> Option<Vec<usize>> {
        if self.gather(u, v, self.counts.l + 1) {
            return None;
        }
        let free = self.reaches_free_pebble(u, v);
        Some((0..self.vertex_count()).filter(|&w| !free[w]).collect())
    }
}

fn play(g: &MultiGraph, counts: SparsityCounts) -> (PebbleGame, Vec<usize>) {
    let mut game = PebbleGame::new(g.vertex_count(), counts);
    let accepted = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| game.try_add(e.u, e.v))
        .map(|(i, _)| i)
        .collect();
    (game, accepted)
}

/// Indices of the edges accepted by the pebble game, processed in input order.
/// The graph is (k,l)-sparse iff every edge is accepted.
pub fn pebble_decision(g: &MultiGraph, counts: SparsityCounts) -> Result<Vec<usize>, SparsityError> {
    let counts = SparsityCounts::new(counts.k, counts.l)?;
    Ok(play(g, counts).1)
}

/// Whether the given edges (ignoring color) form a (k,l)-sparse graph on
/// `vertex_count` vertices. Stops at the first rejected edge.
pub fn is_sparse<I>(vertex_count: usize, edges: I, counts: SparsityCounts) -> bool
where
    I: IntoIterator<Item = (usize, usize)>,
{
    let mut game = PebbleGame::new(vertex_count, counts);
    edges.into_iter().all(|(u, v)| game.try_add(u, v))
}

/// Maximal vertex sets spanning (k,l)-tight subgraphs of the accepted
/// subgraph, each sorted, listed by smallest vertex. Single vertices are not
/// reported.
pub fn pebble_components(g: &MultiGraph, counts: SparsityCounts) -> Result<Vec<Vec<usize>>, SparsityError> {
    let counts = SparsityCounts::new(counts.k, counts.l)?;
    let (mut game, accepted) = play(g, counts);
    let n = g.vertex_count();
    let mut components: Vec<Vec<bool>> = Vec::new();
    for &index in &accepted {
        let e = g.edges()[index];
        if components.iter().any(|c| c[e.u] && c[e.v]) {
            continue;
        }
        if let Some(set) = game.tight_set_containing(e.u, e.v) {
            let mut member = vec![false; n];
            for w in set {
                member[w] = true;
            }
            components.retain(|c| (0..n).any(|w| c[w] && !member[w]));
            components.push(member);
        }
    }
    let mut out: Vec<Vec<usize>> = components
        .into_iter()
        .map(|c| (0..n).filter(|&w| c[w]).collect::<Vec<_>>())
        .filter(|c| c.len() >= 2)
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparsity::Edge;

    fn graph(n: usize, edges: &[(usize, usize)]) -> MultiGraph {
        MultiGraph::new(n, edges.iter().map(|&(u, v)| Edge::new(u, v)).collect()).unwrap()
    }

    fn counts(k: usize, l: usize) -> SparsityCounts {
        SparsityCounts::new(k, l).unwrap()
    }

    #[test]
    fn triangle_is_laman_tight() {
        let g = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(pebble_decision(&g, counts(2, 3)).unwrap(), vec![0, 1, 2]);
        assert_eq!(pebble_components(&g, counts(2, 3)).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn k4_rejects_one_edge() {
        let g = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(pebble_decision(&g, counts(2, 3)).unwrap().len(), 5);
    }

    #[test]
    fn six_parallel_edges_are_body_bar_tight() {
        let g = graph(2, &[(0, 1); 6]);
        assert_eq!(pebble_decision(&g, counts(6, 6)).unwrap().len(), 6);
        let h = graph(2, &[(0, 1); 7]);
        assert_eq!(pebble_decision(&h, counts(6, 6)).unwrap().len(), 6);
    }

    #[test]
    fn two_disjoint_triangles() {
        let g = graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert_eq!(
            pebble_components(&g, counts(2, 3)).unwrap(),
            vec![vec![0, 1, 2], vec![3, 4, 5]]
        );
    }

    #[test]
    fn path_components_are_its_edges() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(
            pebble_components(&g, counts(2, 3)).unwrap(),
            vec![vec![0, 1], vec![1, 2]]
        );
    }

    #[test]
    fn invariant_holds_after_every_move() {
        let g = graph(
            5,
            &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 1), (1, 3), (2, 4), (0, 4)],
        );
        let mut game = PebbleGame::new(5, counts(2, 3));
        for e in g.edges() {
            game.try_add(e.u, e.v);
            assert!(game.invariant_holds());
            assert!(game.total_pebbles() >= 3);
        }
    }

    #[test]
    fn out_of_range_counts_are_rejected() {
        let g = graph(2, &[(0, 1)]);
        assert_eq!(
            pebble_decision(&g, SparsityCounts { k: 1, l: 2 }),
            Err(SparsityError::UnsupportedCounts { k: 1, l: 2 })
        );
    }
}
