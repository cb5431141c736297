//! Property tests over randomly generated instances.

use num_bigint::BigInt;
use proptest::prelude::*;

use threegraph::families;
use threegraph::model::{ThreeGraph, Triple, Vertex};
use threegraph::pfaffian::{
    determinant_exact, epsilon, hr_expansion, pfaffian_exact, signed_count_via_pfaffian,
    SkewMatrix,
};
use threegraph::signs::{
    flip_sign_delta, signed_tree_census, tree_sign, tree_sign_with_order, TripleOrientation,
};
use threegraph::trees::{prufer_decode, prufer_encode, spanning_trees, PruferCode};

fn arb_skew(dim: usize) -> impl Strategy<Value = SkewMatrix<BigInt>> {
    proptest::collection::vec(-9i64..=9, dim * (dim - 1) / 2).prop_map(move |vals| {
        let mut it = vals.into_iter();
        SkewMatrix::from_upper(dim, |_, _| BigInt::from(it.next().unwrap()))
    })
}

/// A random subset of the triples of `K_7` that still spans every vertex
/// reasonably often, plus an orientation mask.
fn arb_sub7() -> impl Strategy<Value = (ThreeGraph, Vec<Triple>)> {
    (proptest::collection::vec(proptest::bool::weighted(0.4), 35), proptest::collection::vec(any::<bool>(), 35))
        .prop_map(|(keep, flip)| {
            let k7 = families::complete(7).unwrap();
            let triples: Vec<Triple> = k7
                .triples()
                .iter()
                .zip(&keep)
                .filter(|(_, k)| **k)
                .map(|(t, _)| *t)
                .collect();
            let h = ThreeGraph::from_triples(7, triples.clone()).unwrap();
            let flips: Vec<Triple> = triples
                .iter()
                .zip(&flip)
                .filter(|(_, f)| **f)
                .map(|(t, _)| *t)
                .collect();
            (h, flips)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pfaffian_squared_is_determinant(m in prop_oneof![arb_skew(4), arb_skew(6), arb_skew(8)]) {
        let pf = pfaffian_exact(&m).unwrap();
        prop_assert_eq!(&pf * &pf, determinant_exact(&m));
    }

    #[test]
    fn epsilon_is_alternating(i in 1u32..=9, j in 1u32..=9, k in 1u32..=9) {
        prop_assert_eq!(epsilon(i, j, k), -epsilon(j, i, k));
        prop_assert_eq!(epsilon(i, j, k), epsilon(j, k, i));
    }

    #[test]
    fn signed_count_equals_census_on_random_hosts((h, flips) in arb_sub7()) {
        let omega = TripleOrientation::canonical(&h).flipped(&flips);
        let (p, m) = signed_tree_census(&h, &omega).unwrap();
        let diff = BigInt::from(p as i64 - m as i64);
        prop_assert_eq!(signed_count_via_pfaffian(&h, &omega, 1).unwrap(), diff.clone());
        prop_assert_eq!(hr_expansion(&h, &omega).unwrap(), diff);
    }

    #[test]
    fn sign_relation_is_exact((h, flips) in arb_sub7()) {
        let w0 = TripleOrientation::canonical(&h);
        let w1 = w0.flipped(&flips);
        for tree in spanning_trees(&h).take(10) {
            let delta = flip_sign_delta(&tree, &w0, &w1).unwrap();
            prop_assert_eq!(
                tree_sign(&tree, &w1).unwrap(),
                delta * tree_sign(&tree, &w0).unwrap()
            );
        }
    }

    #[test]
    fn tree_sign_ignores_composition_order((h, _) in arb_sub7(), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(seed);
        let w0 = TripleOrientation::canonical(&h);
        if let Some(tree) = spanning_trees(&h).next() {
            let reference = tree_sign(&tree, &w0).unwrap();
            let mut order = tree.triples().to_vec();
            order.shuffle(&mut rng);
            prop_assert_eq!(tree_sign_with_order(&tree, &w0, &order).unwrap(), reference);
        }
    }

    #[test]
    fn prufer_round_trip_on_random_codes(
        gamma in proptest::collection::vec(1u32..=9, 3),
        pairing in proptest::sample::select(vec![
            [(1u32,2u32),(3,4),(5,6),(7,8)],
            [(1,3),(2,4),(5,7),(6,8)],
            [(1,4),(2,6),(3,8),(5,7)],
            [(1,8),(2,7),(3,6),(4,5)],
            [(1,5),(2,8),(3,7),(4,6)],
        ]),
    ) {
        let code = PruferCode { gamma, matching: pairing.to_vec() };
        let tree = prufer_decode(&code, 4).unwrap();
        prop_assert_eq!(prufer_encode(&tree, 4).unwrap(), code);
    }

    #[test]
    fn spanning_trees_are_forests_with_exact_size((h, _) in arb_sub7()) {
        for tree in spanning_trees(&h).take(50) {
            prop_assert_eq!(tree.triples().len(), 3);
            prop_assert!(threegraph::trees::is_forest(&h, tree.triples()).unwrap());
            let mut covered: Vec<Vertex> = tree
                .triples()
                .iter()
                .flat_map(|t| t.vertices())
                .collect();
            covered.sort_unstable();
            covered.dedup();
            prop_assert_eq!(covered.len(), 7);
        }
    }
}
