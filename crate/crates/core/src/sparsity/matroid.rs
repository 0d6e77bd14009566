use std::collections::VecDeque;

/// Independence predicate of a matroid on elements `0..m`.
///
/// Results are unspecified if the predicate is not a matroid.
pub trait IndependenceOracle {
    fn is_independent(&self, set: &[usize]) -> bool;
}

impl<F: Fn(&[usize]) -> bool> IndependenceOracle for F {
    fn is_independent(&self, set: &[usize]) -> bool {
        self(set)
    }
}

/// Maximum-cardinality common independent set of two matroids on
/// `0..ground_size`, by shortest augmenting paths in the exchange graph.
/// Ties are broken towards lower element indices. The result is sorted.
pub fn matroid_intersect(ground_size: usize, m1: &dyn IndependenceOracle, m2: &dyn IndependenceOracle) -> Vec<usize> {
    let mut in_set = vec![false; ground_size];
    loop {
        let current: Vec<usize> = (0..ground_size).filter(|&e| in_set[e]).collect();
        match augmenting_path(ground_size, &in_set, &current, m1, m2) {
            Some(path) => {
                for e in path {
                    in_set[e] = !in_set[e];
                }
            }
            None => return current,
        }
    }
}

fn augmenting_path(
    ground_size: usize,
    in_set: &[bool],
    current: &[usize],
    m1: &dyn IndependenceOracle,
    m2: &dyn IndependenceOracle,
) -> Option<Vec<usize>> {
    let outside: Vec<usize> = (0..ground_size).filter(|&e| !in_set[e]).collect();
    let with = |x: usize| {
        let mut s = current.to_vec();
        s.push(x);
        s
    };
    let swap = |y: usize, x: usize| {
        let mut s: Vec<usize> = current.iter().copied().filter(|&e| e != y).collect();
        s.push(x);
        s
    };
    let sources: Vec<bool> = (0..ground_size)
        .map(|e| !in_set[e] && m1.is_independent(&with(e)))
        .collect();
    let sinks: Vec<bool> = (0..ground_size)
        .map(|e| !in_set[e] && m2.is_independent(&with(e)))
        .collect();

    // arcs: y -> x when I - y + x is independent in m1,
    //       x -> y when I - y + x is independent in m2
    let mut arcs: Vec<Vec<usize>> = vec![Vec::new(); ground_size];
    for &y in current {
        for &x in &outside {
            if m1.is_independent(&swap(y, x)) {
                arcs[y].push(x);
            }
            if m2.is_independent(&swap(y, x)) {
                arcs[x].push(y);
            }
        }
    }
    for a in &mut arcs {
        a.sort_unstable();
    }

    let mut parent: Vec<Option<usize>> = vec![None; ground_size];
    let mut seen = vec![false; ground_size];
    let mut queue = VecDeque::new();
    for e in 0..ground_size {
        if sources[e] {
            seen[e] = true;
            queue.push_back(e);
        }
    }
    while let Some(a) = queue.pop_front() {
        if sinks[a] {
            let mut path = vec![a];
            let mut w = a;
            while let Some(p) = parent[w] {
                path.push(p);
                w = p;
            }
            return Some(path);
        }
        for &b in &arcs[a] {
            if !seen[b] {
                seen[b] = true;
                parent[b] = Some(a);
                queue.push_back(b);
            }
        }
    }
    None
}
