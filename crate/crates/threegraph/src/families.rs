//! Deterministic generators for the named 3-graph instances used throughout:
//! complete 3-graphs, the twin graph, the tabulated minimal non-3-Pfaffian
//! fixtures, the interlaced family, the cycle-of-triangles families and small
//! Steiner triple systems.
//!
//! Letter-labelled fixtures map vertices digits-first-then-letters onto
//! `1..=n`; each generator also emits the label map, since tree signs depend
//! on the vertex order.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{ThreeGraph, Triple, Vertex};
use crate::signs::TripleOrientation;

/// The complete 3-graph on an odd number of vertices.
pub fn complete(n: usize) -> Result<ThreeGraph> {
    if n % 2 == 0 {
        return Err(Error::EvenOrder(n));
    }
    let mut triples = Vec::new();
    for a in 1..=n as Vertex {
        for b in a + 1..=n as Vertex {
            for c in b + 1..=n as Vertex {
                triples.push((a, b, c));
            }
        }
    }
    ThreeGraph::new(n, triples)
}

/// Smallest connected 3-graph of odd order without a spanning tree: three
/// triples through a common pair. Vertices a,b,c,u,v map to 1..5.
pub fn twin() -> ThreeGraph {
    ThreeGraph::new(5, vec![(4, 5, 1), (4, 5, 2), (4, 5, 3)]).unwrap()
}

/// Label map for [`twin`].
pub fn twin_labels() -> Vec<(Vertex, String)> {
    ["a", "b", "c", "u", "v"]
        .iter()
        .enumerate()
        .map(|(i, s)| ((i + 1) as Vertex, s.to_string()))
        .collect()
}

/// The interlaced family on vertices `0,1',1,2',2,...,k',k` (mapped in that
/// traversal order to `1..=2k+1`): star triples `{0,i,i'}` and cycle triples
/// `{i-2,i-1,i'}` with indices mod `k`. Under the canonical orientation the
/// star tree is positive and the tree picked by an independent set `I` has
/// sign `(-1)^{|I|-1}`.
pub fn interlaced(k: usize) -> Result<ThreeGraph> {
    if k < 3 {
        return Err(Error::BadParameters(format!(
            "interlaced family needs k >= 3, got {k}"
        )));
    }
    let unprimed = |i: usize| -> Vertex {
        // cyclic index 1..=k
        let i = ((i as i64 - 1).rem_euclid(k as i64) + 1) as usize;
        (2 * i + 1) as Vertex
    };
    let primed = |i: usize| -> Vertex { (2 * i) as Vertex };
    let apex: Vertex = 1;
    let mut triples = Vec::new();
    for i in 1..=k {
        triples.push((apex, unprimed(i), primed(i)));
        triples.push((unprimed(i + k - 2), unprimed(i + k - 1), primed(i)));
    }
    ThreeGraph::new(2 * k + 1, triples)
}

/// The star triple `s_i = {0,i,i'}` of [`interlaced`].
pub fn interlaced_star_triple(k: usize, i: usize) -> Triple {
    assert!(1 <= i && i <= k);
    Triple::new(1, (2 * i + 1) as Vertex, (2 * i) as Vertex).unwrap()
}

/// The cycle triple `t_i = {i-2,i-1,i'}` of [`interlaced`].
pub fn interlaced_cycle_triple(k: usize, i: usize) -> Triple {
    assert!(1 <= i && i <= k);
    let unprimed = |j: i64| -> Vertex {
        let j = (j - 1).rem_euclid(k as i64) + 1;
        (2 * j + 1) as Vertex
    };
    Triple::new(unprimed(i as i64 - 2), unprimed(i as i64 - 1), (2 * i) as Vertex).unwrap()
}

/// A labelled fixture carrying a fixed orientation and its signed tree
/// table for regression.
#[derive(Clone, Debug)]
pub struct TableFixture {
    pub graph: ThreeGraph,
    pub orientation: TripleOrientation,
    pub labels: Vec<(Vertex, String)>,
    /// Rows in table order: the tree's triples and its sign.
    pub expected: Vec<(Vec<Triple>, i8)>,
}

fn build_fixture(
    labels: &[&str],
    oriented_triples: &[&str],
    rows: &[(&[&str], i8)],
) -> TableFixture {
    let index: BTreeMap<char, Vertex> = labels
        .iter()
        .enumerate()
        .map(|(i, s)| {
            assert_eq!(s.len(), 1);
            (s.chars().next().unwrap(), (i + 1) as Vertex)
        })
        .collect();
    let word = |s: &str| -> [Vertex; 3] {
        let cs: Vec<char> = s.chars().collect();
        assert_eq!(cs.len(), 3, "triple word {s}");
        [index[&cs[0]], index[&cs[1]], index[&cs[2]]]
    };
    let words: Vec<[Vertex; 3]> = oriented_triples.iter().map(|s| word(s)).collect();
    let graph = ThreeGraph::new(
        labels.len(),
        words.iter().map(|w| (w[0], w[1], w[2])),
    )
    .unwrap();
    let orientation = TripleOrientation::from_cyclic_words(&graph, &words).unwrap();
    let expected = rows
        .iter()
        .map(|(tr, sign)| {
            let mut triples: Vec<Triple> = tr
                .iter()
                .map(|s| {
                    let w = word(s);
                    Triple::new(w[0], w[1], w[2]).unwrap()
                })
                .collect();
            triples.sort_unstable();
            (triples, *sign)
        })
        .collect();
    TableFixture {
        graph,
        orientation,
        labels: labels
            .iter()
            .enumerate()
            .map(|(i, s)| ((i + 1) as Vertex, s.to_string()))
            .collect(),
        expected,
    }
}

/// The three minimal non-3-Pfaffian fixtures (six trees each, alternating
/// signs in table order).
pub fn table1(index: usize) -> Result<TableFixture> {
    match index {
        1 => Ok(build_fixture(
            &["0", "1", "2", "3", "a", "b", "c"],
            &["012", "023", "031", "1ab", "2bc", "3ca"],
            &[
                (&["012", "1ab", "3ca"], 1),
                (&["012", "2bc", "3ca"], -1),
                (&["023", "2bc", "1ab"], 1),
                (&["023", "3ca", "1ab"], -1),
                (&["031", "3ca", "2bc"], 1),
                (&["031", "1ab", "2bc"], -1),
            ],
        )),
        2 => Ok(build_fixture(
            &["0", "1", "2", "3", "4", "a", "b", "c", "d"],
            &["013", "024", "1ab", "2bc", "3cd", "4da"],
            &[
                (&["013", "1ab", "2bc", "4da"], -1),
                (&["013", "3cd", "2bc", "4da"], 1),
                (&["024", "2bc", "1ab", "3cd"], -1),
                (&["024", "4da", "1ab", "3cd"], 1),
                (&["013", "024", "2bc", "4da"], 1),
                (&["013", "024", "1ab", "3cd"], -1),
            ],
        )),
        3 => Ok(build_fixture(
            &["0", "1", "2", "3", "4", "a", "b", "c", "d"],
            &["012", "034", "1ab", "2bc", "3cd", "4da"],
            &[
                (&["012", "2bc", "3cd", "4da"], 1),
                (&["012", "1ab", "4da", "3cd"], -1),
                (&["034", "4da", "1ab", "2bc"], 1),
                (&["034", "3cd", "2bc", "1ab"], -1),
                (&["012", "1ab", "034", "3cd"], 1),
                (&["012", "2bc", "034", "4da"], -1),
            ],
        )),
        other => Err(Error::BadIndex(other)),
    }
}

/// The first two members of the interlaced family in their tabulated letter
/// labelling: entry 1 is 3-Pfaffian (four trees, all negative), entry 2 is
/// not (seven trees).
pub fn table2(index: usize) -> Result<TableFixture> {
    match index {
        1 => Ok(build_fixture(
            &["0", "1", "2", "3", "a", "b", "c"],
            &["01a", "02b", "03c", "1bc", "2ca", "3ab"],
            &[
                (&["01a", "2ca", "3ab"], -1),
                (&["02b", "3ab", "1bc"], -1),
                (&["03c", "1bc", "2ca"], -1),
                (&["01a", "02b", "03c"], -1),
            ],
        )),
        2 => Ok(build_fixture(
            &["0", "1", "2", "3", "4", "a", "b", "c", "d"],
            &["01c", "02d", "03a", "04b", "1ab", "2bc", "3cd", "4da"],
            &[
                (&["01c", "2bc", "3cd", "4da"], 1),
                (&["02d", "3cd", "4da", "1ab"], 1),
                (&["03a", "4da", "1ab", "2bc"], 1),
                (&["04b", "1ab", "2bc", "3cd"], 1),
                (&["01c", "03a", "2bc", "4da"], -1),
                (&["02d", "04b", "3cd", "1ab"], -1),
                (&["01c", "02d", "03a", "04b"], 1),
            ],
        )),
        other => Err(Error::BadIndex(other)),
    }
}

/// The k = 5 member of the interlaced family in its tabulated letter
/// labelling (eleven trees); flipping `{02d, 03e, 04a, 05b, 1ab}` makes all
/// trees positive.
pub fn table3() -> TableFixture {
    build_fixture(
        &["0", "1", "2", "3", "4", "5", "a", "b", "c", "d", "e"],
        &[
            "01c", "02d", "03e", "04a", "05b", "1ab", "2bc", "3cd", "4de", "5ea",
        ],
        &[
            (&["01c", "2bc", "3cd", "4de", "5ea"], 1),
            (&["02d", "3cd", "4de", "5ea", "1ab"], 1),
            (&["03e", "4de", "5ea", "1ab", "2bc"], 1),
            (&["04a", "5ea", "1ab", "2bc", "3cd"], 1),
            (&["05b", "1ab", "2bc", "3cd", "4de"], 1),
            (&["01c", "04a", "2bc", "3cd", "5ea"], -1),
            (&["02d", "05b", "3cd", "4de", "1ab"], -1),
            (&["03e", "01c", "4de", "5ea", "2bc"], -1),
            (&["04a", "02d", "5ea", "1ab", "3cd"], -1),
            (&["05b", "03e", "1ab", "2bc", "4de"], -1),
            (&["01c", "02d", "03e", "04a", "05b"], 1),
        ],
    )
}

/// The tabulated uniform-sign flip set for [`table3`]: `{02d, 03e, 04a, 05b, 1ab}`.
pub fn table3_witness_flips() -> Vec<Triple> {
    // 0->1, digits i -> i+1, a..e -> 7..11
    let mut v = vec![
        Triple::new(1, 3, 10).unwrap(),
        Triple::new(1, 4, 11).unwrap(),
        Triple::new(1, 5, 7).unwrap(),
        Triple::new(1, 6, 8).unwrap(),
        Triple::new(2, 7, 8).unwrap(),
    ];
    v.sort_unstable();
    v
}

/// Cycle of triangles `{2k,1,2},{2,3,4},...,{2k-2,2k-1,2k}` plus an apex
/// vertex 0 joined to outer (odd) vertices. Vertices `0..2k` map to
/// `1..=2k+1`. The `two_edges` variant adds `{0,2x-1,2y-1}` and
/// `{0,2z-1,2t-1}`; the `triangle` variant the three triples on
/// `{0} x {2x-1,2y-1,2z-1}`.
pub fn prop63_two_edges(k: usize, x: usize, y: usize, z: usize, t: usize) -> Result<ThreeGraph> {
    let params = [x, y, z, t];
    if k < 4
        || params.iter().any(|&p| p == 0 || p > k)
        || (1..4).any(|i| params[i..].contains(&params[i - 1]))
    {
        return Err(Error::BadParameters(format!(
            "two-edges family needs k >= 4 and distinct x,y,z,t in 1..=k, got k={k}, ({x},{y},{z},{t})"
        )));
    }
    let mut triples = cycle_of_triangles(k);
    let odd = |i: usize| -> Vertex { (2 * i - 1 + 1) as Vertex };
    triples.push((1, odd(x), odd(y)));
    triples.push((1, odd(z), odd(t)));
    ThreeGraph::new(2 * k + 1, triples)
}

pub fn prop63_triangle(k: usize, x: usize, y: usize, z: usize) -> Result<ThreeGraph> {
    let params = [x, y, z];
    if k < 3
        || params.iter().any(|&p| p == 0 || p > k)
        || (1..3).any(|i| params[i..].contains(&params[i - 1]))
    {
        return Err(Error::BadParameters(format!(
            "triangle family needs k >= 3 and distinct x,y,z in 1..=k, got k={k}, ({x},{y},{z})"
        )));
    }
    let mut triples = cycle_of_triangles(k);
    let odd = |i: usize| -> Vertex { (2 * i - 1 + 1) as Vertex };
    triples.push((1, odd(x), odd(y)));
    triples.push((1, odd(y), odd(z)));
    triples.push((1, odd(z), odd(x)));
    ThreeGraph::new(2 * k + 1, triples)
}

/// `{2k,1,2}` and `{2i,2i+1,2i+2}` for `i = 1..k-1`, shifted by one because
/// vertex 0 maps to label 1.
fn cycle_of_triangles(k: usize) -> Vec<(Vertex, Vertex, Vertex)> {
    let v = |i: usize| -> Vertex { (i + 1) as Vertex };
    let mut triples = vec![(v(2 * k), v(1), v(2))];
    for i in 1..k {
        triples.push((v(2 * i), v(2 * i + 1), v(2 * i + 2)));
    }
    triples
}

/// The unique Steiner triple systems of orders 7 (Fano plane) and 9 (the
/// affine plane of order 3), in fixed classical labelings.
pub fn sts(order: usize) -> Result<ThreeGraph> {
    match order {
        7 => ThreeGraph::new(
            7,
            vec![
                (1, 2, 4),
                (2, 3, 5),
                (3, 4, 6),
                (4, 5, 7),
                (5, 6, 1),
                (6, 7, 2),
                (7, 1, 3),
            ],
        ),
        9 => ThreeGraph::new(
            9,
            vec![
                (1, 2, 3),
                (4, 5, 6),
                (7, 8, 9),
                (1, 4, 7),
                (2, 5, 8),
                (3, 6, 9),
                (1, 5, 9),
                (2, 6, 7),
                (3, 4, 8),
                (1, 6, 8),
                (2, 4, 9),
                (3, 5, 7),
            ],
        ),
        other => Err(Error::UnsupportedOrder(other)),
    }
}

/// A partial Steiner triple system on 19 vertices whose residue at the apex
/// (vertex 19) is a forest of six disjoint triangles while the underlying
/// graph minus the apex contains a subdivision of `K_{3,3}` spanning it, so
/// the graph-side reduction decides non-orientability.
///
/// Branch triangles `{a_i, x_i, y_i}` and `{b_j, u_j, w_j}`; apex triples
/// realize the white matching `a_i b_i`, `x_i u_{i+1}`, `y_i w_{i+2}`.
pub fn psts_with_k33_reduction() -> ThreeGraph {
    let v: Vertex = 19;
    let mut triples: Vec<(Vertex, Vertex, Vertex)> = Vec::new();
    for i in 1..=3u32 {
        triples.push((i, 3 + i, 6 + i));
        triples.push((9 + i, 12 + i, 15 + i));
        triples.push((i, 9 + i, v));
        triples.push((3 + i, 12 + (i % 3) + 1, v));
        triples.push((6 + i, 15 + ((i + 1) % 3) + 1, v));
    }
    ThreeGraph::new(19, triples).unwrap()
}

/// Seven-vertex gadget with three distinguished vertices 1,2,3: any forest
/// connecting all three of them is forced through a cycle of triples, so no
/// spanning forest puts them in one component.
pub fn white_gadget() -> ThreeGraph {
    // whites 1,2,3; blacks p=4, q=5, r=6, s=7
    ThreeGraph::new(
        7,
        vec![(1, 5, 6), (2, 6, 7), (3, 5, 7), (4, 5, 6), (4, 5, 7)],
    )
    .unwrap()
}

/// Hamiltonian-underlying 3-graphs without a spanning tree, witnessing that
/// the component-count necessary condition is not sufficient.
///
/// Index 1: two induced parts sharing the pair `{4,5}` (nine vertices).
/// Index 2: two copies of [`white_gadget`] sharing the vertices 1,2,3
/// (eleven vertices).
pub fn no_tree_hamiltonian(index: usize) -> Result<ThreeGraph> {
    match index {
        1 => ThreeGraph::new(
            9,
            vec![
                (1, 2, 4),
                (2, 3, 5),
                (1, 3, 6),
                (4, 8, 9),
                (5, 8, 9),
                (7, 8, 9),
            ],
        ),
        2 => ThreeGraph::new(
            11,
            vec![
                (1, 5, 6),
                (2, 6, 7),
                (3, 5, 7),
                (4, 5, 6),
                (4, 5, 7),
                (1, 9, 10),
                (2, 10, 11),
                (3, 9, 11),
                (8, 9, 10),
                (8, 9, 11),
            ],
        ),
        other => Err(Error::BadIndex(other)),
    }
}
