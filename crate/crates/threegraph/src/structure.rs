//! Existence-side structural checks: connectivity, the component-count
//! necessary condition, block parity, the all-pairs sufficient condition,
//! the Hamiltonian bound, and the 1-suspension orientation transfer.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{Multigraph, ThreeGraph, Triple, Vertex};
use crate::signs::TripleOrientation;

/// Connected iff the underlying graph is connected.
pub fn is_connected(h: &ThreeGraph) -> bool {
    h.underlying_graph().is_connected()
}

/// Components of `H - S` with the odd-component count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub components: Vec<Vec<Vertex>>,
    pub odd_count: usize,
}

pub fn components_after_removal(h: &ThreeGraph, s: &[Vertex]) -> ComponentReport {
    let residue = h.remove_vertices(s);
    let components = residue.components();
    let odd_count = components.iter().filter(|c| c.len() % 2 == 1).count();
    ComponentReport {
        components,
        odd_count,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TutteOutcome {
    Passes,
    Violation { s: Vec<Vertex>, q: usize },
}

/// Checks `q(H-S) <= |S| - 1` for every nonempty `S`, in subset-lexicographic
/// order (so the reported violation is the first in that order). A spanning
/// tree can only exist if this passes.
pub fn tutte_like_check(h: &ThreeGraph, cap: usize) -> Result<TutteOutcome> {
    let n = h.n_vertices();
    if n > cap {
        return Err(Error::TooLarge(n, cap));
    }
    let mut s: Vec<Vertex> = Vec::new();
    fn scan(h: &ThreeGraph, s: &mut Vec<Vertex>, from: Vertex) -> Option<(Vec<Vertex>, usize)> {
        for v in from..=h.n_vertices() as Vertex {
            s.push(v);
            let q = components_after_removal(h, s).odd_count;
            if q + 1 > s.len() {
                return Some((s.clone(), q));
            }
            if let Some(hit) = scan(h, s, v + 1) {
                return Some(hit);
            }
            s.pop();
        }
        None
    }
    Ok(match scan(h, &mut s, 1) {
        Some((s, q)) => TutteOutcome::Violation { s, q },
        None => TutteOutcome::Passes,
    })
}

/// Blocks (maximal 2-connected subgraphs, or bridge edges, or isolated
/// vertices) of the multigraph, as sorted vertex sets.
pub fn blocks(g: &Multigraph) -> Vec<Vec<Vertex>> {
    // iterative lowpoint algorithm over the simple skeleton
    let verts = g.vertices().to_vec();
    let idx: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    let adj: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| g.neighbors(v).into_iter().map(|w| idx[&w]).collect())
        .collect();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![usize::MAX; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out: Vec<Vec<Vertex>> = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        u: usize,
        parent: Option<usize>,
        adj: &[Vec<usize>],
        disc: &mut [usize],
        low: &mut [usize],
        timer: &mut usize,
        edge_stack: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<usize>>,
    ) {
        disc[u] = *timer;
        low[u] = *timer;
        *timer += 1;
        let mut parent_skipped = false;
        for &w in &adj[u] {
            if Some(w) == parent && !parent_skipped {
                parent_skipped = true;
                continue;
            }
            if disc[w] == usize::MAX {
                edge_stack.push((u, w));
                dfs(w, Some(u), adj, disc, low, timer, edge_stack, out);
                low[u] = low[u].min(low[w]);
                if low[w] >= disc[u] {
                    // u is a cut vertex (or the root); pop one block
                    let mut block = Vec::new();
                    while let Some(&(a, b)) = edge_stack.last() {
                        edge_stack.pop();
                        block.push(a);
                        block.push(b);
                        if (a, b) == (u, w) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    out.push(block);
                }
            } else if disc[w] < disc[u] {
                edge_stack.push((u, w));
                low[u] = low[u].min(disc[w]);
            }
        }
    }

    let mut blocks_idx: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if disc[start] == usize::MAX {
            dfs(
                start,
                None,
                &adj,
                &mut disc,
                &mut low,
                &mut timer,
                &mut edge_stack,
                &mut blocks_idx,
            );
            if adj[start].is_empty() {
                blocks_idx.push(vec![start]);
            }
        }
    }
    for block in blocks_idx {
        out.push(block.into_iter().map(|i| verts[i]).collect());
    }
    out.sort();
    out
}

/// Some block of even cardinality of the underlying graph, if any. Such a
/// block rules out a spanning tree.
pub fn even_block_obstruction(h: &ThreeGraph) -> Option<Vec<Vertex>> {
    blocks(&h.underlying_graph())
        .into_iter()
        .find(|b| b.len() % 2 == 0)
}

/// True iff `|V|` is odd and every pair of vertices lies in some triple; a
/// spanning tree is then guaranteed to exist.
pub fn multiplicity_condition(h: &ThreeGraph) -> bool {
    let n = h.n_vertices();
    if n % 2 == 0 {
        return false;
    }
    let g = h.underlying_graph();
    for a in 1..=n as Vertex {
        for b in a + 1..=n as Vertex {
            if g.multiplicity(a, b) == 0 {
                return false;
            }
        }
    }
    true
}

/// For a Hamiltonian graph of odd order, `q(G-S) <= |S|-1` holds for every
/// nonempty `S`; this verifies the given cycle and then the bound
/// exhaustively, cross-validating the component machinery.
pub fn hamiltonian_q_bound(g: &Multigraph, cycle: &[Vertex]) -> Result<bool> {
    let n = g.n_vertices();
    if n % 2 == 0 {
        return Err(Error::EvenVertexCount);
    }
    if n > 15 {
        return Err(Error::TooLarge(n, 15));
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if cycle.len() != n || sorted != g.vertices() {
        return Err(Error::NotHamiltonianCycle);
    }
    for i in 0..n {
        let a = cycle[i];
        let b = cycle[(i + 1) % n];
        if g.multiplicity(a, b) == 0 {
            return Err(Error::NotHamiltonianCycle);
        }
    }
    // exhaustive subset scan
    let verts = g.vertices().to_vec();
    for mask in 1u32..(1 << n) {
        let s: Vec<Vertex> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
        let rest = g.delete_vertices(&s);
        let q = rest.components().iter().filter(|c| c.len() % 2 == 1).count();
        if q + 1 > s.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An edge orientation: for each pair `(a,b)` with `a < b`, whether the edge
/// is directed ascending `a -> b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrientation {
    ascending: BTreeMap<(Vertex, Vertex), bool>,
}

impl EdgeOrientation {
    /// Everything directed from the smaller to the larger endpoint.
    pub fn all_ascending(g: &Multigraph) -> Self {
        EdgeOrientation {
            ascending: g.pairs().map(|p| (p, true)).collect(),
        }
    }

    pub fn from_directed_pairs(pairs: &[(Vertex, Vertex)]) -> Self {
        EdgeOrientation {
            ascending: pairs
                .iter()
                .map(|&(from, to)| ((from.min(to), from.max(to)), from < to))
                .collect(),
        }
    }

    pub fn is_ascending(&self, a: Vertex, b: Vertex) -> Option<bool> {
        self.ascending.get(&(a.min(b), a.max(b))).copied()
    }

    /// True iff the edge is directed `from -> to`.
    pub fn directs(&self, from: Vertex, to: Vertex) -> Option<bool> {
        let asc = self.is_ascending(from, to)?;
        Some(if from < to { asc } else { !asc })
    }

    pub fn pairs(&self) -> impl Iterator<Item = ((Vertex, Vertex), bool)> + '_ {
        self.ascending.iter().map(|(&p, &asc)| (p, asc))
    }

    /// Pairs oriented descending (the flip set relative to all-ascending).
    pub fn descending_pairs(&self) -> Vec<(Vertex, Vertex)> {
        self.ascending
            .iter()
            .filter(|(_, &asc)| !asc)
            .map(|(&p, _)| p)
            .collect()
    }

    pub fn flipped(&self, flips: &[(Vertex, Vertex)]) -> Self {
        let mut ascending = self.ascending.clone();
        for &(a, b) in flips {
            if let Some(x) = ascending.get_mut(&(a.min(b), a.max(b))) {
                *x = !*x;
            }
        }
        EdgeOrientation { ascending }
    }

    /// Reverses every edge incident to `v`.
    pub fn vertex_flipped(&self, v: Vertex) -> Self {
        let ascending = self
            .ascending
            .iter()
            .map(|(&(a, b), &asc)| ((a, b), if a == v || b == v { !asc } else { asc }))
            .collect();
        EdgeOrientation { ascending }
    }

    /// Number of forward edges when traversing the (even) cycle once.
    pub fn forward_count(&self, cycle: &[Vertex]) -> usize {
        (0..cycle.len())
            .filter(|&i| {
                self.directs(cycle[i], cycle[(i + 1) % cycle.len()])
                    .expect("cycle edge oriented")
            })
            .count()
    }

    pub fn is_oddly_oriented(&self, cycle: &[Vertex]) -> bool {
        self.forward_count(cycle) % 2 == 1
    }
}

/// Transfers an edge orientation of `g` to a triple orientation of the
/// 1-suspension of `g`: edge `i -> j` becomes the cyclic order `(i j apex)`.
pub fn transfer_orientation_1susp(
    g: &Multigraph,
    orient: &EdgeOrientation,
) -> Result<TripleOrientation> {
    let h = crate::suspension::suspend(g, 1);
    let apex = h.n_vertices() as Vertex;
    let mut signs = BTreeMap::new();
    for (a, b) in g.pairs() {
        let asc = orient
            .is_ascending(a, b)
            .ok_or(Error::NotASuspension)?;
        let t = Triple::new(a, b, apex)?;
        // (a b apex) is canonical for a < b < apex; reversing the edge flips it
        signs.insert(t, if asc { 1 } else { -1 });
    }
    TripleOrientation::from_signs(&h, signs)
}

/// Inverse of [`transfer_orientation_1susp`]: reads the edge orientation off
/// a triple orientation of a 1-suspension (`apex` must be the top label and
/// lie in every triple).
pub fn orientation_from_1susp(h: &ThreeGraph, omega: &TripleOrientation) -> Result<EdgeOrientation> {
    let apex = h.n_vertices() as Vertex;
    let mut ascending = BTreeMap::new();
    for t in h.triples() {
        if !t.contains(apex) {
            return Err(Error::NotASuspension);
        }
        let vs = t.vertices();
        let mut rest = vs.iter().copied().filter(|&v| v != apex);
        let a = rest.next().unwrap();
        let b = rest.next().unwrap();
        let s = omega
            .sign(t)
            .ok_or(Error::OrientationIncomplete(t.vertices()))?;
        ascending.insert((a.min(b), a.max(b)), s == 1);
    }
    Ok(EdgeOrientation { ascending })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::trees::count_spanning_trees;

    #[test]
    fn connectivity_examples() {
        assert!(is_connected(&families::twin()));
        assert!(is_connected(&families::complete(5).unwrap()));
        let two = ThreeGraph::new(6, vec![(1, 2, 3), (4, 5, 6)]).unwrap();
        assert!(!is_connected(&two));
    }

    #[test]
    fn tutte_on_twin_and_trees() {
        let twin = families::twin();
        assert_eq!(
            tutte_like_check(&twin, 15).unwrap(),
            TutteOutcome::Violation { s: vec![4, 5], q: 3 }
        );
        // a spanning tree as its own 3-graph passes
        let tree = ThreeGraph::new(5, vec![(1, 2, 3), (3, 4, 5)]).unwrap();
        assert_eq!(tutte_like_check(&tree, 15).unwrap(), TutteOutcome::Passes);
        let k17 = ThreeGraph::empty(17);
        assert_eq!(tutte_like_check(&k17, 15), Err(Error::TooLarge(17, 15)));
    }

    #[test]
    fn no_tree_hamiltonian_fixtures_pass_tutte() {
        for i in [1, 2] {
            let h = families::no_tree_hamiltonian(i).unwrap();
            assert_eq!(
                tutte_like_check(&h, 15).unwrap(),
                TutteOutcome::Passes,
                "index {i}"
            );
            assert_eq!(count_spanning_trees(&h), 0u32.into());
        }
    }

    #[test]
    fn no_tree_hamiltonian_fixtures_are_hamiltonian() {
        let h1 = families::no_tree_hamiltonian(1).unwrap();
        let g1 = h1.underlying_graph();
        assert!(hamiltonian_q_bound(&g1, &[4, 8, 7, 9, 5, 3, 6, 1, 2]).unwrap());
        let h2 = families::no_tree_hamiltonian(2).unwrap();
        let g2 = h2.underlying_graph();
        assert!(hamiltonian_q_bound(&g2, &[1, 5, 6, 4, 7, 3, 9, 8, 11, 2, 10]).unwrap());
    }

    #[test]
    fn block_examples() {
        let single = ThreeGraph::new(3, vec![(1, 2, 3)]).unwrap();
        assert!(even_block_obstruction(&single).is_none());
        let two_sharing_one = ThreeGraph::new(5, vec![(1, 2, 3), (3, 4, 5)]).unwrap();
        assert!(even_block_obstruction(&two_sharing_one).is_none());
        let two_sharing_two = ThreeGraph::new(4, vec![(1, 2, 3), (1, 2, 4)]).unwrap();
        assert_eq!(even_block_obstruction(&two_sharing_two), Some(vec![1, 2, 3, 4]));
    }

    #[test]
    fn block_decomposition_on_paths() {
        let g = Multigraph::from_edges(4, &[(1, 2), (2, 3), (3, 4)]);
        let b = blocks(&g);
        assert_eq!(b, vec![vec![1, 2], vec![2, 3], vec![3, 4]]);
        let iso = Multigraph::complete_vertex_range(2);
        assert_eq!(blocks(&iso), vec![vec![1], vec![2]]);
    }

    #[test]
    fn multiplicity_condition_examples() {
        assert!(multiplicity_condition(&families::sts(7).unwrap()));
        assert!(multiplicity_condition(&families::complete(5).unwrap()));
        assert!(!multiplicity_condition(&families::twin()));
    }

    #[test]
    fn hamiltonian_examples() {
        let c5 = Multigraph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]);
        assert!(hamiltonian_q_bound(&c5, &[1, 2, 3, 4, 5]).unwrap());
        let k7_under = families::complete(7).unwrap().underlying_graph();
        assert!(hamiltonian_q_bound(&k7_under, &[1, 2, 3, 4, 5, 6, 7]).unwrap());
        assert_eq!(
            hamiltonian_q_bound(&c5, &[1, 2, 3, 5, 4]),
            Err(Error::NotHamiltonianCycle)
        );
        let c4 = Multigraph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]);
        assert_eq!(
            hamiltonian_q_bound(&c4, &[1, 2, 3, 4]),
            Err(Error::EvenVertexCount)
        );
    }

    #[test]
    fn one_susp_transfer_round_trip() {
        let g = Multigraph::from_edges(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        let orient = EdgeOrientation::all_ascending(&g).flipped(&[(1, 3), (2, 4)]);
        let omega = transfer_orientation_1susp(&g, &orient).unwrap();
        let h = crate::suspension::suspend(&g, 1);
        let back = orientation_from_1susp(&h, &omega).unwrap();
        assert_eq!(back, orient);
    }
}
