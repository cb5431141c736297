//! Backtracking isomorphism test for small 3-graphs, used by tests and the
//! deletion/contraction consistency checks.

use std::collections::BTreeSet;

use crate::model::{ThreeGraph, Triple, Vertex};

/// Degree profile used to prune the search: (degree, sorted pair multiplicities).
fn profile(h: &ThreeGraph, v: Vertex) -> (usize, Vec<usize>) {
    let d = h.vertex_degree(v).unwrap();
    let mut mults: Vec<usize> = h
        .vertices()
        .filter(|&w| w != v)
        .map(|w| h.pair_multiplicity(v, w).unwrap())
        .filter(|&m| m > 0)
        .collect();
    mults.sort_unstable();
    (d, mults)
}

pub fn are_isomorphic(a: &ThreeGraph, b: &ThreeGraph) -> bool {
    if a.n_vertices() != b.n_vertices() || a.triple_count() != b.triple_count() {
        return false;
    }
    let n = a.n_vertices();
    let prof_a: Vec<_> = (1..=n as Vertex).map(|v| profile(a, v)).collect();
    let prof_b: Vec<_> = (1..=n as Vertex).map(|v| profile(b, v)).collect();
    {
        let mut sa = prof_a.clone();
        let mut sb = prof_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return false;
        }
    }
    let b_triples: BTreeSet<Triple> = b.triples().iter().copied().collect();
    let mut mapping: Vec<Option<Vertex>> = vec![None; n + 1];
    let mut used = vec![false; n + 1];
    extend(a, &prof_a, &prof_b, &b_triples, &mut mapping, &mut used, 1)
}

fn extend(
    a: &ThreeGraph,
    prof_a: &[(usize, Vec<usize>)],
    prof_b: &[(usize, Vec<usize>)],
    b_triples: &BTreeSet<Triple>,
    mapping: &mut Vec<Option<Vertex>>,
    used: &mut Vec<bool>,
    next: Vertex,
) -> bool {
    let n = a.n_vertices();
    if next as usize > n {
        return true;
    }
    for cand in 1..=n as Vertex {
        if used[cand as usize] || prof_a[next as usize - 1] != prof_b[cand as usize - 1] {
            continue;
        }
        mapping[next as usize] = Some(cand);
        used[cand as usize] = true;
        // every triple of `a` fully mapped so far must land in `b`
        let consistent = a.triples().iter().all(|t| {
            let [p, q, r] = t.vertices();
            if p > next || q > next || r > next {
                return true;
            }
            let img = Triple::new(
                mapping[p as usize].unwrap(),
                mapping[q as usize].unwrap(),
                mapping[r as usize].unwrap(),
            );
            matches!(img, Ok(x) if b_triples.contains(&x))
        });
        if consistent && extend(a, prof_a, prof_b, b_triples, mapping, used, next + 1) {
            return true;
        }
        mapping[next as usize] = None;
        used[cand as usize] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_twin_is_isomorphic() {
        let a = crate::families::twin();
        let b = ThreeGraph::new(5, vec![(1, 2, 5), (1, 3, 5), (1, 4, 5)]).unwrap();
        assert!(are_isomorphic(&a, &b));
    }

    #[test]
    fn different_graphs_are_not() {
        let a = crate::families::twin();
        let b = ThreeGraph::new(5, vec![(1, 2, 3), (1, 4, 5), (2, 4, 5)]).unwrap();
        assert!(!are_isomorphic(&a, &b));
    }
}
