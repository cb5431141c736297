//! Cycle/forest predicates, spanning-tree and matching enumeration, the
//! Prüfer-style codec for complete 3-graphs, and the tree-to-matching
//! correspondence.
//!
//! Enumeration is exhaustive backtracking with union-find pruning, which is
//! the intended regime here: desk-scale instances, deterministic lexicographic
//! order, streams that never materialize the full tree list.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{Multigraph, ThreeGraph, Triple, Vertex};

/// A spanning tree: `(n-1)/2` triples of the host, cycle-free, covering all
/// `n` vertices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SpanningTree {
    n_vertices: usize,
    triples: Vec<Triple>, // sorted
}

impl SpanningTree {
    /// Validates that `triples` is a spanning tree on `1..=n`.
    pub fn new(n_vertices: usize, mut triples: Vec<Triple>) -> Result<Self> {
        triples.sort_unstable();
        triples.dedup();
        if n_vertices % 2 == 0 || triples.len() != (n_vertices - 1) / 2 {
            return Err(Error::NotASpanningTree);
        }
        let mut dsu = UnionFind::new(n_vertices);
        for t in &triples {
            for v in t.vertices() {
                if v == 0 || v as usize > n_vertices {
                    return Err(Error::OutOfRange(v, n_vertices));
                }
            }
            if !dsu.join_triple(t) {
                return Err(Error::NotASpanningTree);
            }
        }
        Ok(SpanningTree { n_vertices, triples })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.binary_search(t).is_ok()
    }

    /// Leaves: triples with two degree-1 vertices.
    pub fn leaves(&self) -> Vec<Triple> {
        let mut deg: BTreeMap<Vertex, usize> = BTreeMap::new();
        for t in &self.triples {
            for v in t.vertices() {
                *deg.entry(v).or_insert(0) += 1;
            }
        }
        self.triples
            .iter()
            .filter(|t| t.vertices().iter().filter(|v| deg[v] == 1).count() >= 2)
            .copied()
            .collect()
    }
}

/// Union-find over vertices with an explicit undo stack, so the backtracking
/// enumerator can roll back. No path compression; union by size.
struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    // (child that was attached, its previous parent-size target)
    undo: Vec<(u32, u32)>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..=n as u32).collect(),
            size: vec![1; n + 1],
            undo: Vec::new(),
        }
    }

    fn find(&self, mut v: u32) -> u32 {
        while self.parent[v as usize] != v {
            v = self.parent[v as usize];
        }
        v
    }

    /// Joins the three vertices of `t`; returns false (without applying
    /// anything) if any two of them already share a component.
    fn join_triple(&mut self, t: &Triple) -> bool {
        let [a, b, c] = t.vertices();
        let (ra, rb, rc) = (self.find(a), self.find(b), self.find(c));
        if ra == rb || ra == rc || rb == rc {
            return false;
        }
        self.union_roots(ra, rb);
        let rab = self.find(ra);
        self.union_roots(rab, rc);
        true
    }

    fn union_roots(&mut self, ra: u32, rb: u32) {
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        self.undo.push((small, big));
    }

    fn mark(&self) -> usize {
        self.undo.len()
    }

    fn rollback(&mut self, mark: usize) {
        while self.undo.len() > mark {
            let (small, big) = self.undo.pop().unwrap();
            self.parent[small as usize] = small;
            self.size[big as usize] -= self.size[small as usize];
        }
    }
}

/// True iff `t` (a subset of the host's triples) contains no cycle, including
/// the 2-cycles formed by two triples sharing two vertices.
pub fn is_forest(h: &ThreeGraph, t: &[Triple]) -> Result<bool> {
    for x in t {
        if !h.has_triple(x) {
            return Err(Error::TripleAbsent(x.vertices()));
        }
    }
    let mut dsu = UnionFind::new(h.n_vertices());
    let mut seen = BTreeSet::new();
    for x in t {
        if !seen.insert(*x) {
            continue;
        }
        if !dsu.join_triple(x) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Externally-driven stream of the spanning trees of `h`, in lexicographic
/// order of sorted triple lists.
pub struct SpanningTreeIter<'a> {
    h: &'a ThreeGraph,
    need: usize,
    /// Bitmask of vertices covered by triples `i..` (suffix cover), used to
    /// prune branches that can no longer reach every vertex.
    suffix_cover: Vec<u64>,
    dsu: UnionFind,
    chosen: Vec<usize>,
    marks: Vec<usize>,
    next_index: usize,
    done: bool,
    started: bool,
}

fn vertex_mask(t: &Triple) -> u64 {
    t.vertices().iter().map(|v| 1u64 << (v - 1)).sum()
}

impl<'a> SpanningTreeIter<'a> {
    fn new(h: &'a ThreeGraph) -> Self {
        assert!(
            h.n_vertices() <= 64,
            "tree enumeration uses 64-bit cover masks; hosts above 64 vertices are unsupported"
        );
        let m = h.triple_count();
        let mut suffix_cover = vec![0u64; m + 1];
        for i in (0..m).rev() {
            suffix_cover[i] = suffix_cover[i + 1] | vertex_mask(&h.triples()[i]);
        }
        let n = h.n_vertices();
        let need = if n % 2 == 1 { (n - 1) / 2 } else { usize::MAX };
        SpanningTreeIter {
            h,
            need,
            suffix_cover,
            dsu: UnionFind::new(n),
            chosen: Vec::new(),
            marks: Vec::new(),
            next_index: 0,
            done: n % 2 == 0,
            started: false,
        }
    }

    fn covered_mask(&self) -> u64 {
        self.chosen
            .iter()
            .map(|&i| vertex_mask(&self.h.triples()[i]))
            .fold(0, |a, b| a | b)
    }

    fn all_mask(&self) -> u64 {
        if self.h.n_vertices() == 64 {
            u64::MAX
        } else {
            (1u64 << self.h.n_vertices()) - 1
        }
    }

    /// Pops the deepest choice and moves its index forward.
    fn backtrack(&mut self) -> bool {
        match self.chosen.pop() {
            Some(i) => {
                self.dsu.rollback(self.marks.pop().unwrap());
                self.next_index = i + 1;
                true
            }
            None => {
                self.done = true;
                false
            }
        }
    }
}

impl<'a> Iterator for SpanningTreeIter<'a> {
    type Item = SpanningTree;

    fn next(&mut self) -> Option<SpanningTree> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.need == 0 {
                // single-vertex host: the empty tree
                self.done = true;
                return Some(SpanningTree {
                    n_vertices: self.h.n_vertices(),
                    triples: Vec::new(),
                });
            }
        } else if !self.backtrack() {
            // resume after the previously emitted tree
            return None;
        }
        loop {
            // the loop top is only reached with an incomplete selection:
            // completed trees are emitted as soon as the last triple joins
            let remaining = self.need - self.chosen.len();
            if self.next_index + remaining > self.h.triple_count() {
                if !self.backtrack() {
                    return None;
                }
                continue;
            }
            // cover prune: every still-uncovered vertex must appear among the
            // remaining candidate triples
            let uncovered = self.all_mask() & !self.covered_mask();
            if uncovered & !self.suffix_cover[self.next_index] != 0 {
                if !self.backtrack() {
                    return None;
                }
                continue;
            }
            let i = self.next_index;
            let t = self.h.triples()[i];
            let mark = self.dsu.mark();
            if self.dsu.join_triple(&t) {
                self.chosen.push(i);
                self.marks.push(mark);
                self.next_index = i + 1;
                if self.chosen.len() == self.need {
                    let triples: Vec<Triple> = self
                        .chosen
                        .iter()
                        .map(|&j| self.h.triples()[j])
                        .collect();
                    return Some(SpanningTree {
                        n_vertices: self.h.n_vertices(),
                        triples,
                    });
                }
            } else {
                self.next_index = i + 1;
            }
        }
    }
}

/// Every spanning tree exactly once, lexicographically.
pub fn spanning_trees(h: &ThreeGraph) -> SpanningTreeIter<'_> {
    SpanningTreeIter::new(h)
}

/// `|T(H)|`, never materializing the tree list.
pub fn count_spanning_trees(h: &ThreeGraph) -> BigUint {
    let n = h.n_vertices();
    assert!(
        n <= 64,
        "tree enumeration uses 64-bit cover masks; hosts above 64 vertices are unsupported"
    );
    if n % 2 == 0 {
        return BigUint::zero();
    }
    let need = (n - 1) / 2;
    if need == 0 {
        return BigUint::from(1u32);
    }
    let m = h.triple_count();
    let mut suffix_cover = vec![0u64; m + 1];
    for i in (0..m).rev() {
        suffix_cover[i] = suffix_cover[i + 1] | vertex_mask(&h.triples()[i]);
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut dsu = UnionFind::new(n);
    count_from(h, &mut dsu, 0, 0, need, &suffix_cover, all)
}

fn count_from(
    h: &ThreeGraph,
    dsu: &mut UnionFind,
    covered: u64,
    start: usize,
    remaining: usize,
    suffix_cover: &[u64],
    all: u64,
) -> BigUint {
    if remaining == 0 {
        return if covered == all {
            BigUint::from(1u32)
        } else {
            BigUint::zero()
        };
    }
    let mut total = BigUint::zero();
    if h.triple_count() < remaining || start > h.triple_count() - remaining {
        return total;
    }
    for i in start..=h.triple_count() - remaining {
        // every uncovered vertex must still occur among triples i..
        if covered | suffix_cover[i] != all {
            break;
        }
        let t = h.triples()[i];
        let mark = dsu.mark();
        if dsu.join_triple(&t) {
            total += count_from(
                h,
                dsu,
                covered | vertex_mask(&t),
                i + 1,
                remaining - 1,
                suffix_cover,
                all,
            );
            dsu.rollback(mark);
        }
    }
    total
}

/// Parallel count partitioned by the first chosen triple index; the result is
/// a deterministic sum and equals [`count_spanning_trees`].
pub fn count_spanning_trees_parallel(h: &ThreeGraph, threads: usize) -> BigUint {
    let n = h.n_vertices();
    if threads <= 1 || h.triple_count() == 0 || n % 2 == 0 || n == 1 {
        return count_spanning_trees(h);
    }
    let need = (n - 1) / 2;
    let m = h.triple_count();
    let mut suffix_cover = vec![0u64; m + 1];
    for i in (0..m).rev() {
        suffix_cover[i] = suffix_cover[i + 1] | vertex_mask(&h.triples()[i]);
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let counter = std::sync::atomic::AtomicUsize::new(0);
    let mut partials: Vec<BigUint> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for _ in 0..threads.min(m) {
            let counter = &counter;
            let suffix_cover = &suffix_cover;
            handles.push(scope.spawn(move || {
                let mut local = BigUint::zero();
                loop {
                    let first = counter.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if first >= m {
                        return local;
                    }
                    if suffix_cover[first] != all {
                        continue;
                    }
                    let t = h.triples()[first];
                    let mut dsu = UnionFind::new(n);
                    dsu.join_triple(&t);
                    local += count_from(
                        h,
                        &mut dsu,
                        vertex_mask(&t),
                        first + 1,
                        need - 1,
                        suffix_cover,
                        all,
                    );
                }
            }));
        }
        for handle in handles {
            partials.push(handle.join().expect("worker panicked"));
        }
    });
    partials.into_iter().sum()
}

/// Prüfer-style code for spanning trees of the complete 3-graph on `2n+1`
/// vertices: a sequence over `[2n+1]` of length `n-1` and a perfect matching
/// of `[2n]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PruferCode {
    pub gamma: Vec<Vertex>,
    pub matching: Vec<(Vertex, Vertex)>,
}

/// Encodes a spanning tree on `[2n+1]` by canonical leaf pruning rooted at
/// `2n+1`: leaves where the root has degree 1 are ignored, and among the rest
/// the leaf with the smallest degree-1 vertex goes first.
pub fn prufer_encode(tree: &SpanningTree, n: usize) -> Result<PruferCode> {
    if tree.n_vertices() != 2 * n + 1 || n == 0 {
        return Err(Error::NotASpanningTree);
    }
    let root = (2 * n + 1) as Vertex;
    let mut triples: Vec<Triple> = tree.triples().to_vec();
    let mut deg: BTreeMap<Vertex, usize> = BTreeMap::new();
    for t in &triples {
        for v in t.vertices() {
            *deg.entry(v).or_insert(0) += 1;
        }
    }
    let mut gamma = Vec::new();
    let mut matching = Vec::new();
    while triples.len() > 1 {
        // eligible leaf: two degree-1 vertices, root not among them
        let mut best: Option<(Vertex, usize)> = None;
        for (i, t) in triples.iter().enumerate() {
            let deg1: Vec<Vertex> = t
                .vertices()
                .iter()
                .copied()
                .filter(|v| deg[v] == 1)
                .collect();
            if deg1.len() != 2 || deg1.contains(&root) {
                continue;
            }
            let key = *deg1.iter().min().unwrap();
            if best.map_or(true, |(k, _)| key < k) {
                best = Some((key, i));
            }
        }
        let (_, idx) = best.expect("a tree with two or more triples has an eligible leaf");
        let t = triples.remove(idx);
        let mut deg1: Vec<Vertex> = t
            .vertices()
            .iter()
            .copied()
            .filter(|v| deg[v] == 1)
            .collect();
        deg1.sort_unstable();
        let connector = t
            .vertices()
            .iter()
            .copied()
            .find(|v| !deg1.contains(v))
            .unwrap();
        gamma.push(connector);
        matching.push((deg1[0], deg1[1]));
        for v in t.vertices() {
            *deg.get_mut(&v).unwrap() -= 1;
        }
    }
    let last = triples[0];
    if !last.contains(root) {
        return Err(Error::NotASpanningTree);
    }
    let mut rest: Vec<Vertex> = last
        .vertices()
        .iter()
        .copied()
        .filter(|&v| v != root)
        .collect();
    rest.sort_unstable();
    matching.push((rest[0], rest[1]));
    matching.sort_unstable();
    Ok(PruferCode { gamma, matching })
}

/// Decodes a `(gamma, matching)` pair into the unique spanning tree of the
/// complete 3-graph on `[2n+1]`.
///
/// A matching pair becomes available once neither endpoint occurs in the
/// remaining code suffix; each step consumes the available pair with the
/// smallest vertex.
pub fn prufer_decode(code: &PruferCode, n: usize) -> Result<SpanningTree> {
    if n == 0 {
        return Err(Error::MalformedCode("n must be at least 1".into()));
    }
    let total = (2 * n + 1) as Vertex;
    if code.gamma.len() != n - 1 {
        return Err(Error::MalformedCode(format!(
            "gamma has length {}, expected {}",
            code.gamma.len(),
            n - 1
        )));
    }
    if code.gamma.iter().any(|&c| c == 0 || c > total) {
        return Err(Error::MalformedCode("gamma entry out of range".into()));
    }
    if code.matching.len() != n {
        return Err(Error::MalformedCode(format!(
            "matching has {} pairs, expected {}",
            code.matching.len(),
            n
        )));
    }
    let mut partner: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for &(a, b) in &code.matching {
        if a == b || a == 0 || b == 0 || a >= total || b >= total {
            return Err(Error::MalformedCode("matching pair out of range".into()));
        }
        if partner.insert(a, b).is_some() || partner.insert(b, a).is_some() {
            return Err(Error::MalformedCode("matching reuses a vertex".into()));
        }
    }
    if partner.len() != 2 * n {
        return Err(Error::MalformedCode("matching does not cover [2n]".into()));
    }

    let mut alive: BTreeSet<Vertex> = partner.keys().copied().collect();
    let mut triples = Vec::new();
    for i in 0..n - 1 {
        let c = code.gamma[i];
        let suffix = &code.gamma[i..];
        let a = alive
            .iter()
            .copied()
            .find(|&v| !suffix.contains(&v) && !suffix.contains(&partner[&v]))
            .expect("an eligible pair always exists: the suffix blocks fewer pairs than remain");
        let b = partner[&a];
        triples.push(
            Triple::new(a, b, c)
                .map_err(|_| Error::MalformedCode("pair collides with its connector".into()))?,
        );
        alive.remove(&a);
        alive.remove(&b);
    }
    let a = *alive.iter().next().unwrap();
    let b = partner[&a];
    triples.push(Triple::new(a, b, total).unwrap());
    SpanningTree::new(2 * n + 1, triples)
}

/// A perfect matching given as sorted disjoint pairs.
pub type Matching = Vec<(Vertex, Vertex)>;

/// All perfect matchings of `g` (as pair sets; parallel edges do not
/// multiply), in lexicographic order.
pub fn perfect_matchings(g: &Multigraph) -> Vec<Matching> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut uncovered: BTreeSet<Vertex> = g.vertices().iter().copied().collect();
    pm_extend(g, &mut uncovered, &mut current, &mut out);
    out
}

fn pm_extend(
    g: &Multigraph,
    uncovered: &mut BTreeSet<Vertex>,
    current: &mut Matching,
    out: &mut Vec<Matching>,
) {
    let v = match uncovered.iter().next() {
        None => {
            out.push(current.clone());
            return;
        }
        Some(&v) => v,
    };
    uncovered.remove(&v);
    for w in g.neighbors(v) {
        if w > v && uncovered.contains(&w) {
            uncovered.remove(&w);
            current.push((v, w));
            pm_extend(g, uncovered, current, out);
            current.pop();
            uncovered.insert(w);
        }
    }
    uncovered.insert(v);
}

pub fn has_perfect_matching(g: &Multigraph) -> bool {
    fn go(g: &Multigraph, uncovered: &mut BTreeSet<Vertex>) -> bool {
        let v = match uncovered.iter().next() {
            None => return true,
            Some(&v) => v,
        };
        uncovered.remove(&v);
        for w in g.neighbors(v) {
            if uncovered.contains(&w) {
                uncovered.remove(&w);
                if go(g, uncovered) {
                    uncovered.insert(w);
                    uncovered.insert(v);
                    return true;
                }
                uncovered.insert(w);
            }
        }
        uncovered.insert(v);
        false
    }
    let mut uncovered: BTreeSet<Vertex> = g.vertices().iter().copied().collect();
    if uncovered.len() % 2 == 1 {
        return false;
    }
    go(g, &mut uncovered)
}

/// A quasi-perfect matching: independent edges plus one path of two edges
/// sharing the center, jointly partitioning the vertex set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuasiPerfectMatching {
    pub center: Vertex,
    /// The path edges `(x, center)` and `(center, z)` with `x < z`.
    pub path: ((Vertex, Vertex), (Vertex, Vertex)),
    /// The independent edges.
    pub matching: Matching,
}

impl QuasiPerfectMatching {
    /// The path ends `x < z`.
    pub fn ends(&self) -> (Vertex, Vertex) {
        let (x, _) = self.path.0;
        let (_, z) = self.path.1;
        (x, z)
    }

    /// All edges (path first), as sorted pairs.
    pub fn all_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = vec![
            sort_pair(self.path.0 .0, self.path.0 .1),
            sort_pair(self.path.1 .0, self.path.1 .1),
        ];
        out.extend(self.matching.iter().copied());
        out
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = vec![self.center];
        let (x, z) = self.ends();
        out.push(x);
        out.push(z);
        for &(a, b) in &self.matching {
            out.push(a);
            out.push(b);
        }
        out.sort_unstable();
        out
    }
}

fn sort_pair(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    (a.min(b), a.max(b))
}

/// All quasi-perfect matchings, ordered by (center, ends, matching).
pub fn quasi_perfect_matchings(g: &Multigraph) -> Vec<QuasiPerfectMatching> {
    let mut out = Vec::new();
    for &y in g.vertices() {
        let nbrs = g.neighbors(y);
        for (i, &x) in nbrs.iter().enumerate() {
            for &z in nbrs.iter().skip(i + 1) {
                let rest = g.delete_vertices(&[x, y, z]);
                for m in perfect_matchings(&rest) {
                    out.push(QuasiPerfectMatching {
                        center: y,
                        path: ((x, y), (y, z)),
                        matching: m,
                    });
                }
            }
        }
    }
    out
}

pub fn has_quasi_perfect_matching(g: &Multigraph) -> bool {
    for &y in g.vertices() {
        let nbrs = g.neighbors(y);
        for (i, &x) in nbrs.iter().enumerate() {
            for &z in nbrs.iter().skip(i + 1) {
                if has_perfect_matching(&g.delete_vertices(&[x, y, z])) {
                    return true;
                }
            }
        }
    }
    false
}

/// The unique `(M, f)` pair of a spanning tree rooted at `v`: `M` matches the
/// two far vertices of each triple, `f` maps that pair to the triple's vertex
/// closest to the root.
pub fn tree_to_matching(tree: &SpanningTree, v: Vertex) -> (Matching, BTreeMap<(Vertex, Vertex), Vertex>) {
    // BFS from v over the incidence structure to find each triple's root-side vertex
    let mut dist: BTreeMap<Vertex, usize> = BTreeMap::new();
    dist.insert(v, 0);
    let mut frontier = vec![v];
    let mut remaining: Vec<Triple> = tree.triples().to_vec();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        remaining.retain(|t| {
            if let Some(&w) = t.vertices().iter().find(|w| frontier.contains(w)) {
                for u in t.vertices() {
                    if u != w && !dist.contains_key(&u) {
                        dist.insert(u, dist[&w] + 1);
                        next.push(u);
                    }
                }
                false
            } else {
                true
            }
        });
        frontier = next;
    }
    let mut matching = Vec::new();
    let mut f = BTreeMap::new();
    for t in tree.triples() {
        let anchor = t
            .vertices()
            .into_iter()
            .min_by_key(|u| dist.get(u).copied().unwrap_or(usize::MAX))
            .unwrap();
        let mut far: Vec<Vertex> = t.vertices().iter().copied().filter(|&u| u != anchor).collect();
        far.sort_unstable();
        matching.push((far[0], far[1]));
        f.insert((far[0], far[1]), anchor);
    }
    matching.sort_unstable();
    (matching, f)
}

/// For a candidate `(M, f)`: true iff the triple set `{ij f(ij)}` has no
/// cycle of the kind excluded by the tree-matching correspondence.
fn f_has_cycle(m: &Matching, f: &BTreeMap<(Vertex, Vertex), Vertex>) -> bool {
    // successor structure: edge e -> edge containing f(e)
    let mut owner: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (i, &(a, b)) in m.iter().enumerate() {
        owner.insert(a, i);
        owner.insert(b, i);
    }
    let succ: Vec<Option<usize>> = m.iter().map(|e| owner.get(&f[e]).copied()).collect();
    // functional graph: any cycle reachable?
    let mut state = vec![0u8; m.len()]; // 0 unvisited, 1 in progress, 2 done
    for start in 0..m.len() {
        let mut path = Vec::new();
        let mut cur = start;
        loop {
            match state[cur] {
                2 => break,
                1 => return true,
                _ => {}
            }
            state[cur] = 1;
            path.push(cur);
            match succ[cur] {
                Some(nxt) => cur = nxt,
                None => break,
            }
        }
        for i in path {
            state[i] = 2;
        }
    }
    false
}

fn enumerate_apex_functions(
    m: &Matching,
    choices: &[Vec<Vertex>],
    assignment: &mut Vec<Vertex>,
    out: &mut Vec<(Matching, BTreeMap<(Vertex, Vertex), Vertex>)>,
) {
    if assignment.len() == m.len() {
        let f: BTreeMap<(Vertex, Vertex), Vertex> = m
            .iter()
            .copied()
            .zip(assignment.iter().copied())
            .collect();
        if !f_has_cycle(m, &f) {
            out.push((m.clone(), f));
        }
        return;
    }
    for &c in &choices[assignment.len()] {
        assignment.push(c);
        enumerate_apex_functions(m, choices, assignment, out);
        assignment.pop();
    }
}

/// Report of the two mutually inverse maps between spanning trees of `h` and
/// valid `(matching, apex-function)` pairs at `v`.
#[derive(Debug)]
pub struct CorrespondenceReport {
    pub tree_count: usize,
    pub pair_count: usize,
    pub mutually_inverse: bool,
}

pub fn tree_matching_correspondence(h: &ThreeGraph, v: Vertex) -> CorrespondenceReport {
    let trees: Vec<SpanningTree> = spanning_trees(h).collect();
    let encoded: BTreeSet<(Matching, Vec<((Vertex, Vertex), Vertex)>)> = trees
        .iter()
        .map(|t| {
            let (m, f) = tree_to_matching(t, v);
            (m, f.into_iter().collect())
        })
        .collect();

    // enumerate all (M, f) with triples inside h and no f-cycle
    let g = h.underlying_graph().delete_vertex(v);
    let mut pairs = Vec::new();
    for m in perfect_matchings(&g) {
        let choices: Vec<Vec<Vertex>> = m
            .iter()
            .map(|&(a, b)| {
                h.triples()
                    .iter()
                    .filter_map(|t| t.third(a, b))
                    .collect::<Vec<_>>()
            })
            .collect();
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut assignment: Vec<Vertex> = Vec::with_capacity(m.len());
        enumerate_apex_functions(&m, &choices, &mut assignment, &mut pairs);
    }

    // reconstruct trees from pairs and compare
    let mut rebuilt: BTreeSet<Vec<Triple>> = BTreeSet::new();
    let mut mutually_inverse = true;
    for (m, f) in &pairs {
        let triples: Vec<Triple> = m
            .iter()
            .map(|&(a, b)| Triple::new(a, b, f[&(a, b)]).unwrap())
            .collect();
        match SpanningTree::new(h.n_vertices(), triples) {
            Ok(t) => {
                let (m2, f2) = tree_to_matching(&t, v);
                if &m2 != m || &f2 != f {
                    mutually_inverse = false;
                }
                rebuilt.insert(t.triples().to_vec());
            }
            Err(_) => {
                mutually_inverse = false;
            }
        }
    }
    let tree_sets: BTreeSet<Vec<Triple>> =
        trees.iter().map(|t| t.triples().to_vec()).collect();
    if rebuilt != tree_sets || encoded.len() != trees.len() || pairs.len() != trees.len() {
        mutually_inverse = false;
    }
    CorrespondenceReport {
        tree_count: trees.len(),
        pair_count: pairs.len(),
        mutually_inverse,
    }
}
