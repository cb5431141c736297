//! The 3-uniform hypergraph data model, its underlying multigraph and the
//! deletion / contraction operators.
//!
//! Vertices are dense integer labels `1..=n`. Triples are stored canonically
//! sorted; orientations live elsewhere (see [`crate::signs`]). All values are
//! immutable after construction.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// A vertex label, 1-based.
pub type Vertex = u32;

/// An unordered 3-subset of vertices, stored sorted ascending.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple([Vertex; 3]);

impl Triple {
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Result<Self> {
        let mut v = [a, b, c];
        v.sort_unstable();
        if v[0] == v[1] {
            return Err(Error::DegenerateTriple(v[0]));
        }
        if v[1] == v[2] {
            return Err(Error::DegenerateTriple(v[1]));
        }
        Ok(Triple(v))
    }

    pub fn vertices(&self) -> [Vertex; 3] {
        self.0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn contains_pair(&self, a: Vertex, b: Vertex) -> bool {
        self.contains(a) && self.contains(b)
    }

    /// The vertex of the triple other than `a` and `b`, if `{a,b}` is a pair of it.
    pub fn third(&self, a: Vertex, b: Vertex) -> Option<Vertex> {
        if !self.contains_pair(a, b) {
            return None;
        }
        self.0.iter().copied().find(|&v| v != a && v != b)
    }

    /// The three unordered pairs of the triple.
    pub fn pairs(&self) -> [(Vertex, Vertex); 3] {
        let [a, b, c] = self.0;
        [(a, b), (a, c), (b, c)]
    }

    pub fn intersection_size(&self, other: &Triple) -> usize {
        self.0.iter().filter(|v| other.contains(**v)).count()
    }
}

impl std::fmt::Debug for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// A 3-uniform hypergraph on vertex set `{1..n}` with a set of triples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThreeGraph {
    n_vertices: usize,
    triples: Vec<Triple>,
}

impl ThreeGraph {
    /// Builds a 3-graph from raw tuples. Duplicate input triples collapse to one.
    pub fn new<I>(n_vertices: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Vertex)>,
    {
        let mut set = BTreeSet::new();
        for (a, b, c) in triples {
            let t = Triple::new(a, b, c)?;
            for v in t.vertices() {
                if v == 0 || v as usize > n_vertices {
                    return Err(Error::OutOfRange(v, n_vertices));
                }
            }
            set.insert(t);
        }
        Ok(ThreeGraph {
            n_vertices,
            triples: set.into_iter().collect(),
        })
    }

    pub fn from_triples(n_vertices: usize, triples: Vec<Triple>) -> Result<Self> {
        Self::new(
            n_vertices,
            triples.iter().map(|t| {
                let [a, b, c] = t.vertices();
                (a, b, c)
            }),
        )
    }

    /// An empty 3-graph on `n` vertices.
    pub fn empty(n_vertices: usize) -> Self {
        ThreeGraph {
            n_vertices,
            triples: Vec::new(),
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Triples in lexicographic order of their sorted vertex lists.
    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn triple_count(&self) -> usize {
        self.triples.len()
    }

    pub fn has_triple(&self, t: &Triple) -> bool {
        self.triples.binary_search(t).is_ok()
    }

    /// Position of `t` in the lexicographic triple order.
    pub fn triple_index(&self, t: &Triple) -> Option<usize> {
        self.triples.binary_search(t).ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        1..=self.n_vertices as Vertex
    }

    fn check_present(&self, t: &Triple) -> Result<()> {
        if self.has_triple(t) {
            Ok(())
        } else {
            Err(Error::TripleAbsent(t.vertices()))
        }
    }

    /// Same vertex set, `t` removed.
    pub fn delete_triple(&self, t: &Triple) -> Result<ThreeGraph> {
        self.check_present(t)?;
        Ok(ThreeGraph {
            n_vertices: self.n_vertices,
            triples: self.triples.iter().filter(|x| *x != t).copied().collect(),
        })
    }

    /// Contracts `t = abc`: the survivor is `min(a,b,c)`; triples meeting `t`
    /// in two vertices are dropped, those meeting it in one are relabelled.
    /// Remaining vertices are compacted to `1..n-2`; the order-preserving map
    /// is returned alongside.
    pub fn contract_triple(&self, t: &Triple) -> Result<(ThreeGraph, RelabelMap)> {
        self.check_present(t)?;
        let [a, b, c] = t.vertices(); // a < b < c, survivor a
        let map = RelabelMap::contracting(self.n_vertices, b, c);
        let mut set = BTreeSet::new();
        for x in &self.triples {
            if x == t {
                continue;
            }
            match x.intersection_size(t) {
                0 => {
                    let [p, q, r] = x.vertices();
                    set.insert(
                        Triple::new(map.apply(p).unwrap(), map.apply(q).unwrap(), map.apply(r).unwrap())
                            .expect("disjoint triples stay non-degenerate"),
                    );
                }
                1 => {
                    let [p, q, r] = x.vertices();
                    let img = |v: Vertex| {
                        if v == b || v == c {
                            map.apply(a).unwrap()
                        } else {
                            map.apply(v).unwrap()
                        }
                    };
                    set.insert(
                        Triple::new(img(p), img(q), img(r))
                            .expect("one shared vertex stays non-degenerate"),
                    );
                }
                _ => {} // decreased in size to a pair or less: dropped
            }
        }
        let contracted = ThreeGraph {
            n_vertices: self.n_vertices - 2,
            triples: set.into_iter().collect(),
        };
        Ok((contracted, map))
    }

    /// The underlying multigraph: pair `ab` with multiplicity `#{c : abc in triples}`.
    pub fn underlying_graph(&self) -> Multigraph {
        let mut g = Multigraph::complete_vertex_range(self.n_vertices);
        for t in &self.triples {
            for (a, b) in t.pairs() {
                g.add_edge(a, b);
            }
        }
        g
    }

    /// Deletes the vertices of `s`; triples shrink to their surviving part.
    /// Labels are preserved (no compaction); empty intersections are dropped.
    pub fn remove_vertices(&self, s: &[Vertex]) -> MixedHypergraph {
        let removed: BTreeSet<Vertex> = s.iter().copied().collect();
        let mut edges = BTreeSet::new();
        for t in &self.triples {
            let rest: Vec<Vertex> = t
                .vertices()
                .iter()
                .copied()
                .filter(|v| !removed.contains(v))
                .collect();
            if !rest.is_empty() {
                edges.insert(rest);
            }
        }
        let vertices = self
            .vertices()
            .filter(|v| !removed.contains(v))
            .collect();
        MixedHypergraph { vertices, edges }
    }

    /// The 3-graph `H - v` on the surviving labels: size-3 residue of
    /// [`ThreeGraph::remove_vertices`], with the vertex set left uncompacted.
    pub fn delete_vertex_keep_labels(&self, v: Vertex) -> (Vec<Vertex>, Vec<Triple>) {
        let vertices = self.vertices().filter(|&x| x != v).collect();
        let triples = self
            .triples
            .iter()
            .filter(|t| !t.contains(v))
            .copied()
            .collect();
        (vertices, triples)
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v == 0 || v as usize > self.n_vertices {
            Err(Error::OutOfRange(v, self.n_vertices))
        } else {
            Ok(())
        }
    }

    /// `m(ab)`, the number of triples containing the pair.
    pub fn pair_multiplicity(&self, a: Vertex, b: Vertex) -> Result<usize> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(Error::DegenerateTriple(a));
        }
        Ok(self.triples.iter().filter(|t| t.contains_pair(a, b)).count())
    }

    /// `d(a)`, the number of triples containing the vertex.
    pub fn vertex_degree(&self, a: Vertex) -> Result<usize> {
        self.check_vertex(a)?;
        Ok(self.triples.iter().filter(|t| t.contains(a)).count())
    }
}

/// Order-preserving relabelling produced by a contraction.
#[derive(Clone, Debug)]
pub struct RelabelMap {
    old_to_new: Vec<Option<Vertex>>, // index = old label
}

impl RelabelMap {
    fn contracting(n: usize, dropped1: Vertex, dropped2: Vertex) -> Self {
        let mut old_to_new = vec![None; n + 1];
        let mut next: Vertex = 1;
        for old in 1..=n as Vertex {
            if old == dropped1 || old == dropped2 {
                continue;
            }
            old_to_new[old as usize] = Some(next);
            next += 1;
        }
        RelabelMap { old_to_new }
    }

    /// New label of a surviving old vertex.
    pub fn apply(&self, old: Vertex) -> Option<Vertex> {
        self.old_to_new.get(old as usize).copied().flatten()
    }
}

/// A multigraph on an explicit (sorted) vertex set with edge multiplicities.
///
/// Vertex deletion keeps the remaining labels, so edges of `G - v` refer to
/// the same vertices as in `G`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Multigraph {
    vertices: Vec<Vertex>,
    mult: BTreeMap<(Vertex, Vertex), usize>,
}

impl Multigraph {
    /// Graph with vertex set `1..=n` and no edges.
    pub fn complete_vertex_range(n: usize) -> Self {
        Multigraph {
            vertices: (1..=n as Vertex).collect(),
            mult: BTreeMap::new(),
        }
    }

    pub fn with_vertices(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Multigraph {
            vertices,
            mult: BTreeMap::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut g = Multigraph::complete_vertex_range(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: Vertex, b: Vertex) {
        assert!(a != b, "loops are not allowed");
        assert!(self.has_vertex(a) && self.has_vertex(b), "edge endpoint outside vertex set");
        let key = (a.min(b), a.max(b));
        *self.mult.entry(key).or_insert(0) += 1;
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Distinct pairs in sorted order, with multiplicities.
    pub fn edges(&self) -> impl Iterator<Item = ((Vertex, Vertex), usize)> + '_ {
        self.mult.iter().map(|(&k, &m)| (k, m))
    }

    /// Distinct pairs in sorted order.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.mult.keys().copied()
    }

    pub fn pair_count(&self) -> usize {
        self.mult.len()
    }

    pub fn multiplicity(&self, a: Vertex, b: Vertex) -> usize {
        if a == b {
            return 0;
        }
        let key = (a.min(b), a.max(b));
        self.mult.get(&key).copied().unwrap_or(0)
    }

    pub fn has_pair(&self, a: Vertex, b: Vertex) -> bool {
        self.multiplicity(a, b) > 0
    }

    /// Degree counting multiplicities.
    pub fn degree(&self, v: Vertex) -> usize {
        self.mult
            .iter()
            .filter(|((a, b), _)| *a == v || *b == v)
            .map(|(_, m)| m)
            .sum()
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .mult
            .keys()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Deletes a vertex, keeping the remaining labels.
    pub fn delete_vertex(&self, v: Vertex) -> Multigraph {
        let vertices = self.vertices.iter().copied().filter(|&x| x != v).collect();
        let mult = self
            .mult
            .iter()
            .filter(|((a, b), _)| *a != v && *b != v)
            .map(|(&k, &m)| (k, m))
            .collect();
        Multigraph { vertices, mult }
    }

    /// Deletes several vertices at once, keeping the remaining labels.
    pub fn delete_vertices(&self, vs: &[Vertex]) -> Multigraph {
        let removed: BTreeSet<Vertex> = vs.iter().copied().collect();
        let vertices = self
            .vertices
            .iter()
            .copied()
            .filter(|x| !removed.contains(x))
            .collect();
        let mult = self
            .mult
            .iter()
            .filter(|((a, b), _)| !removed.contains(a) && !removed.contains(b))
            .map(|(&k, &m)| (k, m))
            .collect();
        Multigraph { vertices, mult }
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let comps = self.components();
        comps.len() == 1
    }

    /// Connected components as sorted vertex lists, in order of smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen: BTreeSet<Vertex> = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Hypergraph with edges of size 1, 2 or 3, arising from vertex deletion.
/// Vertex labels are the surviving originals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MixedHypergraph {
    pub vertices: Vec<Vertex>,
    pub edges: BTreeSet<Vec<Vertex>>,
}

impl MixedHypergraph {
    /// Connected components over the full surviving vertex set.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for v in &self.vertices {
            adj.entry(*v).or_default();
        }
        for e in &self.edges {
            for i in 0..e.len() {
                for j in i + 1..e.len() {
                    adj.get_mut(&e[i]).unwrap().push(e[j]);
                    adj.get_mut(&e[j]).unwrap().push(e[i]);
                }
            }
        }
        let mut seen: BTreeSet<Vertex> = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(v) = stack.pop() {
                for &w in &adj[&v] {
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Number of components spanning an odd number of vertices.
    pub fn odd_component_count(&self) -> usize {
        self.components().iter().filter(|c| c.len() % 2 == 1).count()
    }

    /// The size-3 edges, as triples.
    pub fn size3_edges(&self) -> Vec<Triple> {
        self.edges
            .iter()
            .filter(|e| e.len() == 3)
            .map(|e| Triple::new(e[0], e[1], e[2]).unwrap())
            .collect()
    }
}
