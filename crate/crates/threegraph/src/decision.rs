//! Deciding 3-Pfaffian orientability (and graph Pfaffian orientability) via
//! an incremental GF(2) linear system over the triple (edge) columns.
//!
//! Rows stream in from the tree (matching) enumeration; the reduced basis
//! carries two augmented target bits and, per basis row, the set of original
//! row indices that sum to it. When both targets turn inconsistent, those
//! sets assemble a certificate of at most rank+1 rows; otherwise a solution
//! of a feasible system is a witness flip set.

use crate::error::{Error, Result};
use crate::model::{Multigraph, ThreeGraph, Triple, Vertex};
use crate::signs::{tree_sign, TripleOrientation};
use crate::trees::{perfect_matchings, spanning_trees, Matching};

/// A dense GF(2) row over a fixed column count.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn zero(len: usize) -> Self {
        BitRow {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        for (i, w) in self.words.iter().enumerate() {
            if *w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }
}

struct BasisRow {
    pivot: usize,
    row: BitRow,
    /// Augmented bits for the two targets (all-positive, all-negative).
    aug: [bool; 2],
    /// Original row indices summing to this reduced row.
    combo: Vec<usize>,
}

/// Incremental reduced basis of 0/1 rows with two augmented targets and
/// combination tracking.
pub struct Gf2System {
    cols: usize,
    rows_seen: usize,
    basis: Vec<BasisRow>,
    /// First inconsistency proof per target, as original row indices.
    inconsistent: [Option<Vec<usize>>; 2],
}

impl Gf2System {
    pub fn new(cols: usize) -> Self {
        Gf2System {
            cols,
            rows_seen: 0,
            basis: Vec::new(),
            inconsistent: [None, None],
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn rows_seen(&self) -> usize {
        self.rows_seen
    }

    /// Feeds one row; `target` is the bit for the all-positive system (the
    /// all-negative system gets its complement).
    ///
    /// Basis rows are kept mutually reduced (no basis row contains another's
    /// pivot column), so one pass over the basis fully reduces a new row and
    /// the solve below can zero all free columns.
    pub fn insert(&mut self, mut row: BitRow, target: bool) {
        let index = self.rows_seen;
        self.rows_seen += 1;
        if self.both_inconsistent() {
            return;
        }
        let mut aug = [target, !target];
        let mut combo: Vec<usize> = vec![index];
        for b in &self.basis {
            if row.get(b.pivot) {
                row.xor_assign(&b.row);
                aug[0] ^= b.aug[0];
                aug[1] ^= b.aug[1];
                combo = symmetric_difference(&combo, &b.combo);
            }
        }
        match row.first_one() {
            None => {
                // dependent row: nonzero residual target bit = inconsistency
                for s in 0..2 {
                    if aug[s] && self.inconsistent[s].is_none() {
                        self.inconsistent[s] = Some(combo.clone());
                    }
                }
            }
            Some(pivot) => {
                // back-reduce existing rows so the invariant is kept
                for b in &mut self.basis {
                    if b.row.get(pivot) {
                        b.row.xor_assign(&row);
                        b.aug[0] ^= aug[0];
                        b.aug[1] ^= aug[1];
                        b.combo = symmetric_difference(&b.combo, &combo);
                    }
                }
                self.basis.push(BasisRow {
                    pivot,
                    row,
                    aug,
                    combo,
                });
            }
        }
    }

    pub fn both_inconsistent(&self) -> bool {
        self.inconsistent.iter().all(|x| x.is_some())
    }

    /// A solution of a still-consistent system, as the set of flip columns;
    /// `which` is 0 for all-positive, 1 for all-negative.
    pub fn solve(&self, which: usize) -> Option<Vec<usize>> {
        if self.inconsistent[which].is_some() {
            return None;
        }
        // reduced echelon: free columns zero, pivot column = its target bit
        let mut flips: Vec<usize> = self
            .basis
            .iter()
            .filter(|b| b.aug[which])
            .map(|b| b.pivot)
            .collect();
        flips.sort_unstable();
        debug_assert!(flips.iter().all(|&c| c < self.cols));
        Some(flips)
    }

    pub fn inconsistency_proof(&self, which: usize) -> Option<&[usize]> {
        self.inconsistent[which].as_deref()
    }
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let (mut sa, mut sb) = (a.to_vec(), b.to_vec());
    sa.sort_unstable();
    sb.sort_unstable();
    while i < sa.len() && j < sb.len() {
        match sa[i].cmp(&sb[j]) {
            std::cmp::Ordering::Less => {
                out.push(sa[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(sb[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&sa[i..]);
    out.extend_from_slice(&sb[j..]);
    out
}

/// A uniform-sign orientation witness over columns of type `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<C> {
    /// Columns to flip, relative to the canonical (all-ascending) reference.
    pub flips: Vec<C>,
    /// The uniform sign the flips produce.
    pub uniform_sign: i8,
    /// True when there is nothing to orient (no row at all).
    pub vacuous: bool,
}

/// A proof that neither target system is solvable: for each target, row
/// indices whose rows sum to zero while the target bits sum to one. Indices
/// refer to the deterministic enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub positive_combo: Vec<usize>,
    pub negative_combo: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision<C> {
    Witness(Witness<C>),
    Certificate(Certificate),
}

impl<C> Decision<C> {
    pub fn is_witness(&self) -> bool {
        matches!(self, Decision::Witness(_))
    }
}

/// Decides whether some triple orientation makes every spanning tree the
/// same sign. Streams trees in lexicographic order; prefers the all-positive
/// witness when both targets are feasible. A 3-graph without spanning trees
/// is vacuously orientable. The witness flip set is relative to the
/// canonical orientation.
pub fn decide_3pfaffian(h: &ThreeGraph) -> Decision<Triple> {
    decide_3pfaffian_from(h, &TripleOrientation::canonical(h))
}

/// Same decision with witness flips reported relative to `reference`.
pub fn decide_3pfaffian_from(h: &ThreeGraph, reference: &TripleOrientation) -> Decision<Triple> {
    let mut system = Gf2System::new(h.triple_count());
    for tree in spanning_trees(h) {
        let mut row = BitRow::zero(h.triple_count());
        for t in tree.triples() {
            row.set(h.triple_index(t).unwrap());
        }
        let target = tree_sign(&tree, reference).expect("orientation covers the host") == -1;
        system.insert(row, target);
        if system.both_inconsistent() {
            break;
        }
    }
    finish_decision(system, |cols| {
        cols.into_iter().map(|c| h.triples()[c]).collect()
    })
}

fn finish_decision<C, F>(system: Gf2System, to_columns: F) -> Decision<C>
where
    F: FnOnce(Vec<usize>) -> Vec<C>,
{
    if system.rows_seen() == 0 {
        return Decision::Witness(Witness {
            flips: Vec::new(),
            uniform_sign: 1,
            vacuous: true,
        });
    }
    for which in 0..2 {
        if let Some(cols) = system.solve(which) {
            return Decision::Witness(Witness {
                flips: to_columns(cols),
                uniform_sign: if which == 0 { 1 } else { -1 },
                vacuous: false,
            });
        }
    }
    Decision::Certificate(Certificate {
        positive_combo: system.inconsistency_proof(0).unwrap().to_vec(),
        negative_combo: system.inconsistency_proof(1).unwrap().to_vec(),
    })
}

/// Recomputes every tree sign under the flipped orientation (relative to the
/// canonical one) and checks it is constant.
pub fn verify_witness(h: &ThreeGraph, flips: &[Triple]) -> bool {
    verify_witness_from(h, &TripleOrientation::canonical(h), flips)
}

/// [`verify_witness`] with an explicit reference orientation.
pub fn verify_witness_from(
    h: &ThreeGraph,
    reference: &TripleOrientation,
    flips: &[Triple],
) -> bool {
    let omega = reference.flipped(flips);
    let mut seen: Option<i8> = None;
    for tree in spanning_trees(h) {
        let s = match tree_sign(&tree, &omega) {
            Ok(s) => s,
            Err(_) => return false,
        };
        match seen {
            None => seen = Some(s),
            Some(prev) if prev != s => return false,
            _ => {}
        }
    }
    true
}

/// Re-sums the named tree rows and target bits over GF(2): both combinations
/// must give a zero row with target sum one.
pub fn verify_certificate(h: &ThreeGraph, cert: &Certificate) -> Result<bool> {
    let trees: Vec<_> = spanning_trees(h).collect();
    let w0 = TripleOrientation::canonical(h);
    for (which, combo) in [(0usize, &cert.positive_combo), (1, &cert.negative_combo)] {
        let mut row = BitRow::zero(h.triple_count());
        let mut target_sum = false;
        for &i in combo {
            let tree = trees
                .get(i)
                .ok_or(Error::IndexOutOfRange(i, trees.len()))?;
            for t in tree.triples() {
                let mut single = BitRow::zero(h.triple_count());
                single.set(h.triple_index(t).unwrap());
                row.xor_assign(&single);
            }
            let neg = tree_sign(tree, &w0)? == -1;
            target_sum ^= if which == 0 { neg } else { !neg };
        }
        if !row.is_zero() || !target_sum {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Analogue for graphs: rows are perfect matchings, columns are edges, the
/// target bit is the crossing parity. The witness flip set is relative to
/// the all-ascending orientation.
pub fn decide_graph_pfaffian(g: &Multigraph) -> Decision<(Vertex, Vertex)> {
    let pairs: Vec<(Vertex, Vertex)> = g.pairs().collect();
    let mut system = Gf2System::new(pairs.len());
    for m in perfect_matchings(g) {
        let mut row = BitRow::zero(pairs.len());
        for e in &m {
            row.set(pairs.binary_search(e).unwrap());
        }
        let target = crate::pfaffian::matching_sign(&m) == -1;
        system.insert(row, target);
        if system.both_inconsistent() {
            break;
        }
    }
    finish_decision(system, |cols| cols.into_iter().map(|c| pairs[c]).collect())
}

/// Adjusted sign of a perfect matching under an edge orientation:
/// crossing parity times `(-1)^{#descending edges}`.
pub fn adjusted_matching_sign(
    orient: &crate::structure::EdgeOrientation,
    m: &Matching,
) -> Option<i8> {
    let mut sign = crate::pfaffian::matching_sign(m);
    for &(a, b) in m {
        if !orient.is_ascending(a, b)? {
            sign = -sign;
        }
    }
    Some(sign)
}

pub fn verify_graph_witness(g: &Multigraph, flips: &[(Vertex, Vertex)]) -> bool {
    let orient = crate::structure::EdgeOrientation::all_ascending(g).flipped(flips);
    let mut seen: Option<i8> = None;
    for m in perfect_matchings(g) {
        let s = match adjusted_matching_sign(&orient, &m) {
            Some(s) => s,
            None => return false,
        };
        match seen {
            None => seen = Some(s),
            Some(prev) if prev != s => return false,
            _ => {}
        }
    }
    true
}

pub fn verify_graph_certificate(g: &Multigraph, cert: &Certificate) -> Result<bool> {
    let pairs: Vec<(Vertex, Vertex)> = g.pairs().collect();
    let matchings = perfect_matchings(g);
    for (which, combo) in [(0usize, &cert.positive_combo), (1, &cert.negative_combo)] {
        let mut row = BitRow::zero(pairs.len());
        let mut target_sum = false;
        for &i in combo {
            let m = matchings
                .get(i)
                .ok_or(Error::IndexOutOfRange(i, matchings.len()))?;
            for e in m {
                let mut single = BitRow::zero(pairs.len());
                single.set(pairs.binary_search(e).unwrap());
                row.xor_assign(&single);
            }
            let neg = crate::pfaffian::matching_sign(m) == -1;
            target_sum ^= if which == 0 { neg } else { !neg };
        }
        if !row.is_zero() || !target_sum {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    Delete,
    Contract,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Minimality {
    /// Every single deletion and contraction is 3-Pfaffian.
    Minimal,
    /// A reduction that is still non-3-Pfaffian.
    Reducible { triple: Triple, op: Reduction },
}

/// For a non-3-Pfaffian input, checks whether every triple deletion and
/// contraction is 3-Pfaffian.
pub fn minimality_check(h: &ThreeGraph) -> Result<Minimality> {
    if decide_3pfaffian(h).is_witness() {
        return Err(Error::NotNonPfaffian);
    }
    for t in h.triples() {
        let deleted = h.delete_triple(t)?;
        if !decide_3pfaffian(&deleted).is_witness() {
            return Ok(Minimality::Reducible {
                triple: *t,
                op: Reduction::Delete,
            });
        }
        let (contracted, _) = h.contract_triple(t)?;
        if !decide_3pfaffian(&contracted).is_witness() {
            return Ok(Minimality::Reducible {
                triple: *t,
                op: Reduction::Contract,
            });
        }
    }
    Ok(Minimality::Minimal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn table1_certificates() {
        for i in 1..=3 {
            let f = families::table1(i).unwrap();
            match decide_3pfaffian(&f.graph) {
                Decision::Certificate(cert) => {
                    assert!(verify_certificate(&f.graph, &cert).unwrap());
                    assert!(cert.positive_combo.len() <= f.graph.triple_count() + 1);
                    assert!(cert.negative_combo.len() <= f.graph.triple_count() + 1);
                }
                other => panic!("fixture {i} should be non-orientable: {other:?}"),
            }
        }
    }

    #[test]
    fn table3_witness() {
        let f = families::table3();
        match decide_3pfaffian(&f.graph) {
            Decision::Witness(w) => {
                assert!(!w.vacuous);
                assert!(verify_witness(&f.graph, &w.flips));
            }
            other => panic!("expected a witness: {other:?}"),
        }
        // the tabulated flip set is relative to the fixture's own orientation
        match decide_3pfaffian_from(&f.graph, &f.orientation) {
            Decision::Witness(w) => {
                assert!(verify_witness_from(&f.graph, &f.orientation, &w.flips));
                assert!(verify_witness_from(
                    &f.graph,
                    &f.orientation,
                    &families::table3_witness_flips()
                ));
                assert_eq!(w.uniform_sign, 1);
            }
            other => panic!("expected a witness: {other:?}"),
        }
    }

    #[test]
    fn single_tree_is_orientable() {
        let h = ThreeGraph::new(5, vec![(1, 2, 3), (3, 4, 5)]).unwrap();
        match decide_3pfaffian(&h) {
            Decision::Witness(w) => {
                assert!(!w.vacuous);
                assert!(verify_witness(&h, &w.flips));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn no_trees_is_vacuous() {
        match decide_3pfaffian(&families::twin()) {
            Decision::Witness(w) => assert!(w.vacuous),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn corrupted_witness_fails() {
        let f = families::table3();
        let mut flips = families::table3_witness_flips();
        flips.push(Triple::new(3, 8, 9).unwrap()); // one extra flip
        assert!(!verify_witness(&f.graph, &flips));
    }

    #[test]
    fn corrupted_certificate_fails() {
        let f = families::table1(1).unwrap();
        if let Decision::Certificate(mut cert) = decide_3pfaffian(&f.graph) {
            cert.positive_combo.pop();
            assert_eq!(verify_certificate(&f.graph, &cert), Ok(false));
            cert.positive_combo.push(99);
            assert!(matches!(
                verify_certificate(&f.graph, &cert),
                Err(Error::IndexOutOfRange(99, _))
            ));
        } else {
            panic!("fixture 1 must certify");
        }
    }

    #[test]
    fn graph_decisions() {
        let k4 = Multigraph::from_edges(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        match decide_graph_pfaffian(&k4) {
            Decision::Witness(w) => assert!(verify_graph_witness(&k4, &w.flips)),
            other => panic!("K4 is orientable: {other:?}"),
        }
        let k33 = Multigraph::from_edges(
            6,
            &[(1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6)],
        );
        match decide_graph_pfaffian(&k33) {
            Decision::Certificate(cert) => {
                assert!(verify_graph_certificate(&k33, &cert).unwrap())
            }
            other => panic!("K33 is not orientable: {other:?}"),
        }
        // at most one perfect matching: always a witness
        let path = Multigraph::from_edges(4, &[(1, 2), (2, 3), (3, 4)]);
        assert!(decide_graph_pfaffian(&path).is_witness());
    }

    #[test]
    fn minimality_of_table1() {
        for i in 1..=3 {
            let f = families::table1(i).unwrap();
            assert_eq!(minimality_check(&f.graph).unwrap(), Minimality::Minimal);
        }
    }

    #[test]
    fn minimality_rejects_orientable_inputs() {
        let f = families::table2(1).unwrap();
        assert_eq!(minimality_check(&f.graph), Err(Error::NotNonPfaffian));
    }

    #[test]
    fn prop63_nonminimal_example() {
        let h = families::prop63_two_edges(5, 1, 2, 3, 4).unwrap();
        assert!(!decide_3pfaffian(&h).is_witness());
        assert!(matches!(
            minimality_check(&h).unwrap(),
            Minimality::Reducible { .. }
        ));
    }
}
