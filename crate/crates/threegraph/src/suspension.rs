//! Suspensions `G^U`: construction, the impossibility of uniform-sign
//! orientations for three or more apexes, the 2-suspension orientation
//! calculus (u/v-orientations, agreeing edges, quasi-perfect-matching
//! unions), and the forbidden-subgraph decision for 2-suspensions.

use std::collections::BTreeSet;

use crate::decision::{decide_3pfaffian, decide_graph_pfaffian, Decision};
use crate::error::{Error, Result};
use crate::model::{Multigraph, ThreeGraph, Triple, Vertex};
use crate::signs::{sequence_parity, TripleOrientation};
use crate::trees::{
    has_perfect_matching, has_quasi_perfect_matching, perfect_matchings, spanning_trees,
    Matching, QuasiPerfectMatching, SpanningTree,
};

/// The suspension of `g` from `k` fresh apex vertices: triples `{i,j,apex}`
/// for every edge `ij` and every apex. The graph's vertices must be the
/// contiguous range `1..=n`; apexes take the labels `n+1..=n+k`.
pub fn suspend(g: &Multigraph, k: usize) -> ThreeGraph {
    let n = g.n_vertices();
    assert_eq!(
        g.vertices(),
        (1..=n as Vertex).collect::<Vec<_>>(),
        "suspension needs a contiguous vertex range"
    );
    let mut triples = Vec::new();
    for (a, b) in g.pairs() {
        for apex in 1..=k {
            triples.push((a, b, (n + apex) as Vertex));
        }
    }
    ThreeGraph::new(n + k, triples).expect("apexes are fresh")
}

/// Decision report for a suspension with three or more apexes: when the
/// suspension has any spanning tree it admits no uniform-sign orientation,
/// witnessed (when extractable) by six trees that permute three apexes over
/// a common base vertex.
#[derive(Debug)]
pub struct KSuspReport {
    pub suspension: ThreeGraph,
    pub decision: Decision<Triple>,
    /// Enumeration indices of a six-tree permuting family, if one exists.
    pub permuting_family: Option<[usize; 6]>,
}

pub fn k_susp_impossibility(g: &Multigraph, k: usize) -> Result<KSuspReport> {
    if k < 3 {
        return Err(Error::BadParameters(format!(
            "impossibility statement needs k >= 3 apexes, got {k}"
        )));
    }
    let h = suspend(g, k);
    let decision = decide_3pfaffian(&h);
    let permuting_family = find_permuting_family(g, &h);
    Ok(KSuspReport {
        suspension: h,
        decision,
        permuting_family,
    })
}

/// Looks for a tree containing `{x,a,u}, {x,b,v}, {x,c,w}` for three apexes
/// and reports the indices of its six apex-permuted variants.
fn find_permuting_family(g: &Multigraph, h: &ThreeGraph) -> Option<[usize; 6]> {
    let n = g.n_vertices() as Vertex;
    let trees: Vec<SpanningTree> = spanning_trees(h).collect();
    let index_of = |triples: &[Triple]| -> Option<usize> {
        let mut sorted = triples.to_vec();
        sorted.sort_unstable();
        trees.iter().position(|t| t.triples() == sorted.as_slice())
    };
    for tree in &trees {
        for x in 1..=n {
            // apex-incident triples through x, one per apex
            let mut per_apex: Vec<(Vertex, Triple)> = Vec::new();
            for t in tree.triples() {
                let [a, b, c] = t.vertices();
                let apex = [a, b, c].into_iter().find(|&v| v > n);
                if let Some(u) = apex {
                    if t.contains(x) && !per_apex.iter().any(|(w, _)| *w == u) {
                        per_apex.push((u, *t));
                    }
                }
            }
            if per_apex.len() < 3 {
                continue;
            }
            let (u, tu) = per_apex[0];
            let (v, tv) = per_apex[1];
            let (w, tw) = per_apex[2];
            let other = |t: &Triple, apex: Vertex| -> Vertex {
                t.vertices()
                    .into_iter()
                    .find(|&y| y != x && y != apex)
                    .unwrap()
            };
            let (a, b, c) = (other(&tu, u), other(&tv, v), other(&tw, w));
            if a == b || b == c || a == c {
                continue;
            }
            let rest: Vec<Triple> = tree
                .triples()
                .iter()
                .filter(|t| **t != tu && **t != tv && **t != tw)
                .copied()
                .collect();
            let mut family = [0usize; 6];
            let mut ok = true;
            for (slot, (pu, pv, pw)) in [
                (u, v, w),
                (u, w, v),
                (v, u, w),
                (v, w, u),
                (w, u, v),
                (w, v, u),
            ]
            .into_iter()
            .enumerate()
            {
                let mut triples = rest.clone();
                triples.push(Triple::new(x, a, pu).unwrap());
                triples.push(Triple::new(x, b, pv).unwrap());
                triples.push(Triple::new(x, c, pw).unwrap());
                match index_of(&triples) {
                    Some(i) => family[slot] = i,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Some(family);
            }
        }
    }
    None
}

/// Classification of a connected component of the union of two quasi-perfect
/// matchings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnionComponentKind {
    /// An even cycle (a doubled shared edge is a 2-cycle).
    Cycle,
    /// Two edge-disjoint cycles joined by a (possibly empty) path.
    CyclePair,
    /// Three internally vertex-disjoint paths with common endpoints.
    Theta,
}

#[derive(Clone, Debug)]
pub struct QpmUnionReport {
    pub components: Vec<(Vec<Vertex>, UnionComponentKind)>,
}

impl QpmUnionReport {
    /// The structural facts the union always satisfies: all components but
    /// one are even cycles, and the exceptional one has odd order.
    pub fn satisfies_union_shape(&self) -> bool {
        let special: Vec<_> = self
            .components
            .iter()
            .filter(|(_, k)| *k != UnionComponentKind::Cycle)
            .collect();
        special.len() == 1
            && special[0].0.len() % 2 == 1
            && self
                .components
                .iter()
                .filter(|(_, k)| *k == UnionComponentKind::Cycle)
                .all(|(c, _)| c.len() % 2 == 0)
    }
}

/// Classifies the components of `Q1 ∪ Q2` (as a multigraph: an edge lying in
/// both matchings is doubled).
pub fn classify_qpm_union(
    q1: &QuasiPerfectMatching,
    q2: &QuasiPerfectMatching,
) -> Result<QpmUnionReport> {
    if q1.vertices() != q2.vertices() {
        return Err(Error::MismatchedVertexSets);
    }
    let verts = q1.vertices();
    // multigraph union
    let mut edges: Vec<(Vertex, Vertex)> = q1.all_edges();
    edges.extend(q2.all_edges());
    let mut components: Vec<(Vec<Vertex>, UnionComponentKind)> = Vec::new();
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    for &start in &verts {
        if seen.contains(&start) {
            continue;
        }
        // collect the component
        let mut comp = vec![start];
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(a, b) in &edges {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if seen.insert(w) {
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        let comp_edges: Vec<(Vertex, Vertex)> = edges
            .iter()
            .copied()
            .filter(|&(a, b)| comp.binary_search(&a).is_ok() && comp.binary_search(&b).is_ok())
            .collect();
        let degree = |v: Vertex| -> usize {
            comp_edges
                .iter()
                .filter(|&&(a, b)| a == v || b == v)
                .count()
        };
        let max_deg = comp.iter().map(|&v| degree(v)).max().unwrap_or(0);
        let kind = if max_deg <= 2 {
            UnionComponentKind::Cycle
        } else if comp.iter().any(|&v| degree(v) == 4)
            || has_multigraph_bridge(&comp, &comp_edges)
        {
            // a degree-4 hub means two cycles sharing a vertex (empty path);
            // a bridge, two cycles joined by a proper path
            UnionComponentKind::CyclePair
        } else {
            UnionComponentKind::Theta
        };
        components.push((comp, kind));
    }
    Ok(QpmUnionReport { components })
}

/// A single-copy edge whose removal disconnects the component.
fn has_multigraph_bridge(comp: &[Vertex], edges: &[(Vertex, Vertex)]) -> bool {
    let distinct: BTreeSet<(Vertex, Vertex)> = edges.iter().copied().collect();
    for &(a, b) in &distinct {
        let copies = edges.iter().filter(|&&e| e == (a, b)).count();
        if copies > 1 {
            continue;
        }
        // connectivity without this edge
        let mut seen = BTreeSet::new();
        seen.insert(comp[0]);
        let mut stack = vec![comp[0]];
        while let Some(v) = stack.pop() {
            for &(p, q) in edges {
                if (p, q) == (a, b) {
                    continue;
                }
                let w = if p == v {
                    q
                } else if q == v {
                    p
                } else {
                    continue;
                };
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if seen.len() < comp.len() {
            return true;
        }
    }
    false
}

/// The u- and v-orientations of the base graph carried by a triple
/// orientation of the 2-suspension, with per-edge agreeing flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSuspOrientation {
    pub u_orient: crate::structure::EdgeOrientation,
    pub v_orient: crate::structure::EdgeOrientation,
}

impl TwoSuspOrientation {
    /// Reads both orientations off a triple orientation of `suspend(g, 2)`.
    pub fn from_triple_orientation(g: &Multigraph, omega: &TripleOrientation) -> Result<Self> {
        let n = g.n_vertices() as Vertex;
        let (u, v) = (n + 1, n + 2);
        let mut u_dir = Vec::new();
        let mut v_dir = Vec::new();
        for (a, b) in g.pairs() {
            let tu = Triple::new(a, b, u)?;
            let tv = Triple::new(a, b, v)?;
            let su = omega.sign(&tu).ok_or(Error::NotASuspension)?;
            let sv = omega.sign(&tv).ok_or(Error::NotASuspension)?;
            u_dir.push(if su == 1 { (a, b) } else { (b, a) });
            v_dir.push(if sv == 1 { (a, b) } else { (b, a) });
        }
        Ok(TwoSuspOrientation {
            u_orient: crate::structure::EdgeOrientation::from_directed_pairs(&u_dir),
            v_orient: crate::structure::EdgeOrientation::from_directed_pairs(&v_dir),
        })
    }

    /// The corresponding triple orientation of `suspend(g, 2)`.
    pub fn to_triple_orientation(&self, g: &Multigraph) -> Result<TripleOrientation> {
        let h = suspend(g, 2);
        let n = g.n_vertices() as Vertex;
        let mut signs = std::collections::BTreeMap::new();
        for (a, b) in g.pairs() {
            let su = self.u_orient.is_ascending(a, b).ok_or(Error::NotASuspension)?;
            let sv = self.v_orient.is_ascending(a, b).ok_or(Error::NotASuspension)?;
            signs.insert(Triple::new(a, b, n + 1)?, if su { 1 } else { -1 });
            signs.insert(Triple::new(a, b, n + 2)?, if sv { 1 } else { -1 });
        }
        TripleOrientation::from_signs(&h, signs)
    }

    /// An edge agrees when its two triples carry equal signs, i.e. the u- and
    /// v-orientations point the same way.
    pub fn is_agreeing(&self, a: Vertex, b: Vertex) -> Option<bool> {
        Some(self.u_orient.is_ascending(a, b)? == self.v_orient.is_ascending(a, b)?)
    }
}

/// A spanning tree of `suspend(g, 2)` given by its matching split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspSplit {
    pub m_u: Matching,
    pub m_v: Matching,
}

impl SuspSplit {
    /// The shared vertex of the two matchings (the path center).
    pub fn center(&self) -> Option<Vertex> {
        let cover_u: BTreeSet<Vertex> = self.m_u.iter().flat_map(|&(a, b)| [a, b]).collect();
        let cover_v: BTreeSet<Vertex> = self.m_v.iter().flat_map(|&(a, b)| [a, b]).collect();
        let mut inter = cover_u.intersection(&cover_v);
        let y = inter.next().copied();
        if inter.next().is_some() {
            return None;
        }
        y
    }

    /// The spanning tree of `suspend(g, 2)`.
    pub fn to_tree(&self, g: &Multigraph) -> Result<SpanningTree> {
        let n = g.n_vertices() as Vertex;
        let mut triples = Vec::new();
        for &(a, b) in &self.m_u {
            triples.push(Triple::new(a, b, n + 1)?);
        }
        for &(a, b) in &self.m_v {
            triples.push(Triple::new(a, b, n + 2)?);
        }
        SpanningTree::new(g.n_vertices() + 2, triples)
    }

    /// Reads the split off a spanning tree of `suspend(g, 2)`.
    pub fn from_tree(g: &Multigraph, tree: &SpanningTree) -> Result<Self> {
        let n = g.n_vertices() as Vertex;
        let (u, v) = (n + 1, n + 2);
        let mut m_u = Vec::new();
        let mut m_v = Vec::new();
        for t in tree.triples() {
            let [a, b, c] = t.vertices();
            if c == u {
                m_u.push((a, b));
            } else if c == v {
                m_v.push((a, b));
            } else {
                return Err(Error::NotASuspension);
            }
        }
        m_u.sort_unstable();
        m_v.sort_unstable();
        Ok(SuspSplit { m_u, m_v })
    }
}

/// Sign of a 2-suspension spanning tree straight from its split: the parity
/// of the word `i1 j1 ... u x y z v` (pairs written along their u/v
/// directions) times `(-1)^{alpha_u(xy) + alpha_v(yz)}`, where `x y z` is the
/// center path with `xy` in the u-side.
pub fn two_susp_tree_sign(
    g: &Multigraph,
    orient: &TwoSuspOrientation,
    split: &SuspSplit,
) -> Result<i8> {
    let n = g.n_vertices() as Vertex;
    let (u, v) = (n + 1, n + 2);
    let y = split.center().ok_or(Error::NotASuspension)?;
    let path_u = split
        .m_u
        .iter()
        .copied()
        .find(|&(a, b)| a == y || b == y)
        .ok_or(Error::NotASuspension)?;
    let path_v = split
        .m_v
        .iter()
        .copied()
        .find(|&(a, b)| a == y || b == y)
        .ok_or(Error::NotASuspension)?;
    let x = if path_u.0 == y { path_u.1 } else { path_u.0 };
    let z = if path_v.0 == y { path_v.1 } else { path_v.0 };
    let mut word: Vec<Vertex> = Vec::new();
    for &(a, b) in split.m_u.iter().filter(|&&e| e != path_u) {
        let asc = orient
            .u_orient
            .is_ascending(a, b)
            .ok_or(Error::NotASuspension)?;
        if asc {
            word.extend([a, b]);
        } else {
            word.extend([b, a]);
        }
    }
    for &(a, b) in split.m_v.iter().filter(|&&e| e != path_v) {
        let asc = orient
            .v_orient
            .is_ascending(a, b)
            .ok_or(Error::NotASuspension)?;
        if asc {
            word.extend([a, b]);
        } else {
            word.extend([b, a]);
        }
    }
    word.extend([u, x, y, z, v]);
    let mut sign = sequence_parity(&word);
    if !orient.u_orient.directs(x, y).ok_or(Error::NotASuspension)? {
        sign = -sign;
    }
    if !orient.v_orient.directs(y, z).ok_or(Error::NotASuspension)? {
        sign = -sign;
    }
    Ok(sign)
}

/// Outcome of checking an orientation of a 2-suspension.
#[derive(Debug)]
pub enum OrientationCheck {
    Valid,
    /// Two spanning trees forced to opposite signs.
    Counterexample {
        t1: SpanningTree,
        t2: SpanningTree,
    },
}

/// Checks the three structural conditions equivalent to an orientation of
/// `suspend(g, 2)` having uniform tree signs:
/// (a) every even cycle with a quasi-perfect matching in its complement is
///     all-agreeing and oddly oriented,
/// (b) every 2-path with a perfect matching in its complement has exactly one
///     agreeing edge,
/// (c) every 4-path with a perfect matching in its complement satisfies the
///     direction parity `x2 -> x3 iff x4 -> x3` in both orientations.
pub fn check_2susp_orientation(
    g: &Multigraph,
    omega: &TripleOrientation,
) -> Result<OrientationCheck> {
    let orient = TwoSuspOrientation::from_triple_orientation(g, omega)?;

    // (a) part 1: single edges (2-cycles) must agree
    for (a, b) in g.pairs() {
        let rest = g.delete_vertices(&[a, b]);
        if !has_quasi_perfect_matching(&rest) {
            continue;
        }
        if !orient.is_agreeing(a, b).unwrap() {
            let q = crate::trees::quasi_perfect_matchings(&rest)
                .into_iter()
                .next()
                .unwrap();
            let base = split_of_qpm(&q);
            let mut s1 = base.clone();
            s1.m_u.push((a, b));
            s1.m_u.sort_unstable();
            let mut s2 = base;
            s2.m_v.push((a, b));
            s2.m_v.sort_unstable();
            return Ok(OrientationCheck::Counterexample {
                t1: s1.to_tree(g)?,
                t2: s2.to_tree(g)?,
            });
        }
    }

    // (a) part 2: even cycles of length >= 4 must be oddly oriented
    for cycle in even_cycles(g) {
        let rest = g.delete_vertices(&cycle);
        if !has_quasi_perfect_matching(&rest) {
            continue;
        }
        if !orient.u_orient.is_oddly_oriented(&cycle) {
            let q = crate::trees::quasi_perfect_matchings(&rest)
                .into_iter()
                .next()
                .unwrap();
            let base = split_of_qpm(&q);
            let mut s1 = base.clone();
            let mut s2 = base;
            for i in (0..cycle.len()).step_by(2) {
                s1.m_u.push(sorted_pair(cycle[i], cycle[i + 1]));
                s2.m_u.push(sorted_pair(cycle[i + 1], cycle[(i + 2) % cycle.len()]));
            }
            s1.m_u.sort_unstable();
            s2.m_u.sort_unstable();
            return Ok(OrientationCheck::Counterexample {
                t1: s1.to_tree(g)?,
                t2: s2.to_tree(g)?,
            });
        }
    }

    // (b): 2-paths with perfect matching in the complement
    for (x, y, z) in two_paths(g) {
        let rest = g.delete_vertices(&[x, y, z]);
        if !has_perfect_matching(&rest) {
            continue;
        }
        let agree_xy = orient.is_agreeing(x, y).unwrap();
        let agree_yz = orient.is_agreeing(y, z).unwrap();
        if agree_xy == agree_yz {
            let m = perfect_matchings(&rest).into_iter().next().unwrap();
            let s1 = SuspSplit {
                m_u: sorted_with(&m, &[sorted_pair(x, y)]),
                m_v: vec![sorted_pair(y, z)],
            };
            let s2 = SuspSplit {
                m_u: sorted_with(&m, &[sorted_pair(y, z)]),
                m_v: vec![sorted_pair(x, y)],
            };
            return Ok(OrientationCheck::Counterexample {
                t1: s1.to_tree(g)?,
                t2: s2.to_tree(g)?,
            });
        }
    }

    // (c): 4-paths with perfect matching in the complement
    for p in four_paths(g) {
        let rest = g.delete_vertices(&p);
        if !has_perfect_matching(&rest) {
            continue;
        }
        let [x1, x2, x3, x4, x5] = p;
        let u_ok = orient.u_orient.directs(x2, x3).unwrap()
            == orient.u_orient.directs(x4, x3).unwrap();
        let v_ok = orient.v_orient.directs(x2, x3).unwrap()
            == orient.v_orient.directs(x4, x3).unwrap();
        if !(u_ok && v_ok) {
            let m = perfect_matchings(&rest).into_iter().next().unwrap();
            let s1 = SuspSplit {
                m_u: sorted_with(&m, &[sorted_pair(x1, x2), sorted_pair(x4, x5)]),
                m_v: vec![sorted_pair(x2, x3)],
            };
            let s2 = SuspSplit {
                m_u: sorted_with(&m, &[sorted_pair(x1, x2), sorted_pair(x4, x5)]),
                m_v: vec![sorted_pair(x3, x4)],
            };
            return Ok(OrientationCheck::Counterexample {
                t1: s1.to_tree(g)?,
                t2: s2.to_tree(g)?,
            });
        }
    }
    Ok(OrientationCheck::Valid)
}

fn sorted_pair(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    (a.min(b), a.max(b))
}

fn sorted_with(m: &Matching, extra: &[(Vertex, Vertex)]) -> Matching {
    let mut out = m.clone();
    out.extend_from_slice(extra);
    out.sort_unstable();
    out
}

/// Splits a quasi-perfect matching into a u/v seed: the first path edge and
/// the independent edges go to the u side, the second path edge to v.
fn split_of_qpm(q: &QuasiPerfectMatching) -> SuspSplit {
    let mut m_u = q.matching.clone();
    m_u.push(sorted_pair(q.path.0 .0, q.path.0 .1));
    m_u.sort_unstable();
    SuspSplit {
        m_u,
        m_v: vec![sorted_pair(q.path.1 .0, q.path.1 .1)],
    }
}

/// All simple cycles of even length >= 4, as vertex sequences starting at
/// their smallest vertex with the second entry below the last (one sequence
/// per cycle).
pub fn even_cycles(g: &Multigraph) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let verts = g.vertices().to_vec();
    for &start in &verts {
        let mut path = vec![start];
        cycle_dfs(g, start, &mut path, &mut out);
    }
    out
}

fn cycle_dfs(g: &Multigraph, start: Vertex, path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
    let last = *path.last().unwrap();
    for w in g.neighbors(last) {
        if w == start && path.len() >= 4 {
            if path.len() % 2 == 0 && path[1] < *path.last().unwrap() {
                out.push(path.clone());
            }
            continue;
        }
        if w > start && !path.contains(&w) {
            path.push(w);
            cycle_dfs(g, start, path, out);
            path.pop();
        }
    }
}

/// All 2-paths `x-y-z` with `x < z`.
fn two_paths(g: &Multigraph) -> Vec<(Vertex, Vertex, Vertex)> {
    let mut out = Vec::new();
    for &y in g.vertices() {
        let nbrs = g.neighbors(y);
        for (i, &x) in nbrs.iter().enumerate() {
            for &z in nbrs.iter().skip(i + 1) {
                out.push((x, y, z));
            }
        }
    }
    out
}

/// All 4-paths as vertex sequences, one orientation each (`x1 < x5`).
fn four_paths(g: &Multigraph) -> Vec<[Vertex; 5]> {
    let mut out = Vec::new();
    let verts = g.vertices().to_vec();
    for &x1 in &verts {
        let mut path = vec![x1];
        path_dfs(g, 5, &mut path, &mut |p: &[Vertex]| {
            if p[0] < p[4] {
                out.push([p[0], p[1], p[2], p[3], p[4]]);
            }
        });
    }
    out
}

fn path_dfs<F: FnMut(&[Vertex])>(g: &Multigraph, len: usize, path: &mut Vec<Vertex>, emit: &mut F) {
    if path.len() == len {
        emit(path);
        return;
    }
    let last = *path.last().unwrap();
    for w in g.neighbors(last) {
        if !path.contains(&w) {
            path.push(w);
            path_dfs(g, len, path, emit);
            path.pop();
        }
    }
}

/// The four forbidden shapes for 2-suspensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForbiddenKind {
    C3,
    C5,
    P6,
    K23Minus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenWitness {
    pub kind: ForbiddenKind,
    /// Vertices of the subgraph: cycle order for C3/C5, path order for P6,
    /// `[hub3, hub2, pendant, leaf1, leaf2]` for `K23Minus`.
    pub vertices: Vec<Vertex>,
    pub complement_matching: Matching,
}

/// First subgraph isomorphic to `C3`, `C5`, `P6` or `K_{2,3}` minus an edge
/// whose complement has a perfect matching, scanning the shapes in that
/// order.
pub fn find_forbidden_subgraph(g: &Multigraph) -> Option<ForbiddenWitness> {
    let verts = g.vertices().to_vec();
    // C3
    for (i, &a) in verts.iter().enumerate() {
        for (j, &b) in verts.iter().enumerate().skip(i + 1) {
            if !g.has_pair(a, b) {
                continue;
            }
            for &c in verts.iter().skip(j + 1) {
                if g.has_pair(a, c) && g.has_pair(b, c) {
                    let rest = g.delete_vertices(&[a, b, c]);
                    if let Some(m) = perfect_matchings(&rest).into_iter().next() {
                        return Some(ForbiddenWitness {
                            kind: ForbiddenKind::C3,
                            vertices: vec![a, b, c],
                            complement_matching: m,
                        });
                    }
                }
            }
        }
    }
    // C5: odd cycles of length 5
    for cycle in cycles_of_length(g, 5) {
        let rest = g.delete_vertices(&cycle);
        if let Some(m) = perfect_matchings(&rest).into_iter().next() {
            return Some(ForbiddenWitness {
                kind: ForbiddenKind::C5,
                vertices: cycle,
                complement_matching: m,
            });
        }
    }
    // P6: paths with six edges (seven vertices)
    let mut hit: Option<ForbiddenWitness> = None;
    for &x1 in &verts {
        if hit.is_some() {
            break;
        }
        let mut path = vec![x1];
        path_dfs(g, 7, &mut path, &mut |p: &[Vertex]| {
            if hit.is_some() || p[0] > p[6] {
                return;
            }
            let rest = g.delete_vertices(p);
            if let Some(m) = perfect_matchings(&rest).into_iter().next() {
                hit = Some(ForbiddenWitness {
                    kind: ForbiddenKind::P6,
                    vertices: p.to_vec(),
                    complement_matching: m,
                });
            }
        });
    }
    if hit.is_some() {
        return hit;
    }
    // K_{2,3} minus an edge: hubs p (degree 3) and q (degree 2), pendant w
    // on p only, leaves l1, l2 on both
    for &p in &verts {
        for &q in &verts {
            if p == q {
                continue;
            }
            for &w in &verts {
                if w == p || w == q || !g.has_pair(p, w) {
                    continue;
                }
                let leaves: Vec<Vertex> = verts
                    .iter()
                    .copied()
                    .filter(|&l| {
                        l != p && l != q && l != w && g.has_pair(p, l) && g.has_pair(q, l)
                    })
                    .collect();
                for (i, &l1) in leaves.iter().enumerate() {
                    for &l2 in leaves.iter().skip(i + 1) {
                        let sub = vec![p, q, w, l1, l2];
                        let rest = g.delete_vertices(&sub);
                        if let Some(m) = perfect_matchings(&rest).into_iter().next() {
                            return Some(ForbiddenWitness {
                                kind: ForbiddenKind::K23Minus,
                                vertices: sub,
                                complement_matching: m,
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

fn cycles_of_length(g: &Multigraph, len: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for &start in g.vertices() {
        let mut path = vec![start];
        fn go(
            g: &Multigraph,
            start: Vertex,
            len: usize,
            path: &mut Vec<Vertex>,
            out: &mut Vec<Vec<Vertex>>,
        ) {
            let last = *path.last().unwrap();
            if path.len() == len {
                if g.has_pair(last, start) && path[1] < *path.last().unwrap() {
                    out.push(path.clone());
                }
                return;
            }
            for w in g.neighbors(last) {
                if w > start && !path.contains(&w) {
                    path.push(w);
                    go(g, start, len, path, out);
                    path.pop();
                }
            }
        }
        go(g, start, len, &mut path, &mut out);
    }
    out
}

/// Verdict of the structural 2-suspension decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoSuspVerdict {
    /// No spanning tree at all (no quasi-perfect matching of the base).
    Vacuous,
    /// Orientable: all per-vertex graphs are Pfaffian and no forbidden
    /// subgraph occurs.
    Orientable,
    /// `G - i` is not Pfaffian.
    NonPfaffianVertex(Vertex),
    /// A forbidden subgraph with a perfect matching in its complement.
    Forbidden(ForbiddenWitness),
}

impl TwoSuspVerdict {
    pub fn is_orientable(&self) -> bool {
        matches!(self, TwoSuspVerdict::Vacuous | TwoSuspVerdict::Orientable)
    }
}

/// Decides whether `suspend(g, 2)` admits a uniform-sign orientation, purely
/// from the base graph: every `G - i` must be Pfaffian and no `C3`, `C5`,
/// `P6` or `K_{2,3}` minus an edge may have a perfect matching in its
/// complement.
pub fn decide_2susp(g: &Multigraph) -> TwoSuspVerdict {
    if !has_quasi_perfect_matching(g) {
        return TwoSuspVerdict::Vacuous;
    }
    for &i in g.vertices() {
        if !decide_graph_pfaffian(&g.delete_vertex(i)).is_witness() {
            return TwoSuspVerdict::NonPfaffianVertex(i);
        }
    }
    if let Some(w) = find_forbidden_subgraph(g) {
        return TwoSuspVerdict::Forbidden(w);
    }
    TwoSuspVerdict::Orientable
}

/// A subdivision of `K_{3,3}` with all branch paths of odd length, plus a
/// quasi-perfect matching of its complement.
#[derive(Clone, Debug)]
pub struct K33Witness {
    pub branch: [Vertex; 6],
    pub paths: Vec<Vec<Vertex>>,
    pub complement_qpm: QuasiPerfectMatching,
}

/// Searches a bipartite graph for an even subdivision of `K_{3,3}` whose
/// complement has a quasi-perfect matching.
pub fn find_even_k33_subdivision(g: &Multigraph) -> Result<Option<K33Witness>> {
    if g.n_vertices() > 14 {
        return Err(Error::TooLarge(g.n_vertices(), 14));
    }
    let coloring = bipartition(g).ok_or(Error::BadParameters("graph is not bipartite".into()))?;
    let part0: Vec<Vertex> = g
        .vertices()
        .iter()
        .copied()
        .filter(|v| !coloring[v])
        .collect();
    let part1: Vec<Vertex> = g
        .vertices()
        .iter()
        .copied()
        .filter(|v| coloring[v])
        .collect();
    for a in subsets3(&part0) {
        for b in subsets3(&part1) {
            let branch = [a[0], a[1], a[2], b[0], b[1], b[2]];
            let mut used: BTreeSet<Vertex> = branch.iter().copied().collect();
            let mut paths: Vec<Vec<Vertex>> = Vec::new();
            if extend_k33(g, &branch, 0, &mut used, &mut paths) {
                let rest_vertices: Vec<Vertex> = g
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|v| used.contains(v))
                    .collect();
                let rest = g.delete_vertices(&rest_vertices);
                if let Some(q) = crate::trees::quasi_perfect_matchings(&rest).into_iter().next() {
                    return Ok(Some(K33Witness {
                        branch,
                        paths,
                        complement_qpm: q,
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn bipartition(g: &Multigraph) -> Option<std::collections::BTreeMap<Vertex, bool>> {
    let mut color = std::collections::BTreeMap::new();
    for &start in g.vertices() {
        if color.contains_key(&start) {
            continue;
        }
        color.insert(start, false);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let cv = color[&v];
            for w in g.neighbors(v) {
                match color.get(&w) {
                    None => {
                        color.insert(w, !cv);
                        stack.push(w);
                    }
                    Some(&cw) if cw == cv => return None,
                    _ => {}
                }
            }
        }
    }
    Some(color)
}

fn subsets3(verts: &[Vertex]) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            for k in j + 1..verts.len() {
                out.push([verts[i], verts[j], verts[k]]);
            }
        }
    }
    out
}

/// Finds internally disjoint paths for the nine branch pairs, in order.
fn extend_k33(
    g: &Multigraph,
    branch: &[Vertex; 6],
    pair_index: usize,
    used: &mut BTreeSet<Vertex>,
    paths: &mut Vec<Vec<Vertex>>,
) -> bool {
    if pair_index == 9 {
        return true;
    }
    let from = branch[pair_index / 3];
    let to = branch[3 + pair_index % 3];
    // DFS over paths from `from` to `to` avoiding used vertices internally
    let mut path = vec![from];
    fn go(
        g: &Multigraph,
        to: Vertex,
        branch: &[Vertex; 6],
        used: &mut BTreeSet<Vertex>,
        path: &mut Vec<Vertex>,
        pair_index: usize,
        paths: &mut Vec<Vec<Vertex>>,
    ) -> bool {
        let last = *path.last().unwrap();
        for w in g.neighbors(last) {
            if w == to {
                paths.push(path.clone().into_iter().chain([to]).collect());
                let internal: Vec<Vertex> = path[1..].to_vec();
                for &x in &internal {
                    used.insert(x);
                }
                if extend_k33(g, branch, pair_index + 1, used, paths) {
                    return true;
                }
                for &x in &internal {
                    used.remove(&x);
                }
                paths.pop();
                continue;
            }
            if used.contains(&w) || path.contains(&w) {
                continue;
            }
            path.push(w);
            if go(g, to, branch, used, path, pair_index, paths) {
                return true;
            }
            path.pop();
        }
        false
    }
    go(g, to, branch, used, &mut path, pair_index, paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::quasi_perfect_matchings;

    fn k4() -> Multigraph {
        Multigraph::from_edges(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    }

    #[test]
    fn suspend_shapes() {
        assert_eq!(suspend(&k4(), 1).triple_count(), 6);
        let edge = Multigraph::from_edges(2, &[(1, 2)]);
        assert_eq!(suspend(&edge, 2).triple_count(), 2);
        let c4 = Multigraph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]);
        let s = suspend(&c4, 2);
        assert_eq!(s.triple_count(), 8);
        assert_eq!(s.n_vertices(), 6);
    }

    #[test]
    fn star_3susp_is_certificate_with_permuting_family() {
        let star = Multigraph::from_edges(4, &[(1, 4), (2, 4), (3, 4)]);
        let report = k_susp_impossibility(&star, 3).unwrap();
        assert!(!report.decision.is_witness());
        let family = report.permuting_family.expect("six permuting trees");
        // three positive, three negative
        let h = &report.suspension;
        let trees: Vec<SpanningTree> = spanning_trees(h).collect();
        let w0 = TripleOrientation::canonical(h);
        let signs: Vec<i8> = family
            .iter()
            .map(|&i| crate::signs::tree_sign(&trees[i], &w0).unwrap())
            .collect();
        assert_eq!(signs.iter().filter(|&&s| s == 1).count(), 3);
        assert_eq!(signs.iter().filter(|&&s| s == -1).count(), 3);
    }

    #[test]
    fn two_star_gadget_3susp_is_certificate() {
        // edges ax, bx, cy, dy on vertices a,b,c,d,x,y = 1,2,3,4,5,6
        let g = Multigraph::from_edges(6, &[(1, 5), (2, 5), (3, 6), (4, 6)]);
        let report = k_susp_impossibility(&g, 3).unwrap();
        assert!(!report.decision.is_witness());
    }

    #[test]
    fn treeless_suspension_is_vacuous() {
        // a single vertex with no edges: no spanning tree in any suspension
        let g = Multigraph::complete_vertex_range(1);
        let report = k_susp_impossibility(&g, 3).unwrap();
        match report.decision {
            Decision::Witness(w) => assert!(w.vacuous),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn union_of_equal_qpms() {
        let g = Multigraph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]);
        let qs = quasi_perfect_matchings(&g);
        let report = classify_qpm_union(&qs[0], &qs[0]).unwrap();
        assert!(report.satisfies_union_shape());
        // the doubled path is the one special component
        let special: Vec<_> = report
            .components
            .iter()
            .filter(|(_, k)| *k != UnionComponentKind::Cycle)
            .collect();
        assert_eq!(special.len(), 1);
        assert_eq!(special[0].1, UnionComponentKind::CyclePair);
    }

    #[test]
    fn union_shape_over_all_pairs() {
        let g = Multigraph::from_edges(
            7,
            &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 1), (2, 5), (3, 6)],
        );
        let qs = quasi_perfect_matchings(&g);
        for q1 in &qs {
            for q2 in &qs {
                let report = classify_qpm_union(q1, q2).unwrap();
                assert!(report.satisfies_union_shape(), "{q1:?} vs {q2:?}");
            }
        }
    }

    #[test]
    fn bipartite_unions_have_even_paths_and_cycles() {
        let g = Multigraph::from_edges(
            7,
            &[(1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (3, 7), (1, 6), (2, 7)],
        );
        let qs = quasi_perfect_matchings(&g);
        for q1 in &qs {
            for q2 in &qs {
                for (comp, kind) in classify_qpm_union(q1, q2).unwrap().components {
                    if kind == UnionComponentKind::Cycle {
                        assert_eq!(comp.len() % 2, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn mismatched_union_rejected() {
        let g1 = Multigraph::from_edges(3, &[(1, 2), (2, 3)]);
        let g2 = Multigraph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]);
        let q1 = quasi_perfect_matchings(&g1).pop().unwrap();
        let q2 = quasi_perfect_matchings(&g2).pop().unwrap();
        assert_eq!(
            classify_qpm_union(&q1, &q2).err(),
            Some(Error::MismatchedVertexSets)
        );
    }

    #[test]
    fn forbidden_subgraph_examples() {
        // C3 plus a disjoint edge
        let g = Multigraph::from_edges(5, &[(1, 2), (1, 3), (2, 3), (4, 5)]);
        let w = find_forbidden_subgraph(&g).unwrap();
        assert_eq!(w.kind, ForbiddenKind::C3);
        assert_eq!(w.vertices, vec![1, 2, 3]);
        assert_eq!(w.complement_matching, vec![(4, 5)]);

        // a bare 6-edge path: the empty complement has the empty matching
        let p6 = Multigraph::from_edges(
            7,
            &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)],
        );
        let w = find_forbidden_subgraph(&p6).unwrap();
        assert_eq!(w.kind, ForbiddenKind::P6);
        assert!(w.complement_matching.is_empty());

        // C4 plus a disjoint edge has none of the shapes
        let c4e = Multigraph::from_edges(6, &[(1, 2), (2, 3), (3, 4), (4, 1), (5, 6)]);
        assert!(find_forbidden_subgraph(&c4e).is_none());
    }

    #[test]
    fn decide_2susp_on_disjoint_edges_plus_path() {
        // a 2-path plus one disjoint edge: orientable
        let g = Multigraph::from_edges(5, &[(1, 2), (2, 3), (4, 5)]);
        assert_eq!(decide_2susp(&g), TwoSuspVerdict::Orientable);
        // triangle with empty complement: forbidden
        let c3 = Multigraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]);
        assert!(matches!(decide_2susp(&c3), TwoSuspVerdict::Forbidden(_)));
    }

    #[test]
    fn k33_subdivision_search() {
        let k33_edges: Vec<(Vertex, Vertex)> = (1u32..=3)
            .flat_map(|a| (4u32..=6).map(move |b| (a, b)))
            .collect();
        let k33 = Multigraph::from_edges(6, &k33_edges);
        // complement empty: no quasi-perfect matching there
        assert!(find_even_k33_subdivision(&k33).unwrap().is_none());

        // K33 plus a disjoint 2-path: witness found
        let mut edges = k33_edges.clone();
        edges.push((7, 8));
        edges.push((8, 9));
        let g = Multigraph::from_edges(9, &edges);
        let w = find_even_k33_subdivision(&g).unwrap().expect("witness");
        assert_eq!(w.paths.len(), 9);

        // C6 has no K33 subdivision
        let c6 = Multigraph::from_edges(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]);
        assert!(find_even_k33_subdivision(&c6).unwrap().is_none());

        let odd = Multigraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]);
        assert!(find_even_k33_subdivision(&odd).is_err());
    }

    #[test]
    fn split_round_trip() {
        let g = Multigraph::from_edges(3, &[(1, 2), (2, 3)]);
        let split = SuspSplit {
            m_u: vec![(1, 2)],
            m_v: vec![(2, 3)],
        };
        let tree = split.to_tree(&g).unwrap();
        assert_eq!(SuspSplit::from_tree(&g, &tree).unwrap(), split);
    }
}
