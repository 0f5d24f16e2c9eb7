use dgpair::catalog::{self, NAMES};
use dgpair::cone::{
    build_cone, equivalence_action, mc_pair_verify, pair_equiv_verify, random_equivalence,
    sample_mc,
};
use dgpair::graded::{koszul_sign, unshuffles};
use dgpair::linf::{bernoulli, i_coefficient, TransferMode, TransferredLinf};
use dgpair::scalar::{binomial, factorial};
use dgpair::{sample, Permutation, Q};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn inversions(images: &[usize]) -> usize {
    let mut n = 0;
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            if images[a] > images[b] {
                n += 1;
            }
        }
    }
    n
}

fn permutation(n: usize, keys: &[u32]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by_key(|&i| (keys[i], i));
    idx
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn koszul_sign_on_odd_and_even(keys in proptest::collection::vec(0u32..100, 1..7), odd in any::<bool>()) {
        let images = permutation(keys.len(), &keys);
        let sigma = Permutation::new(images.clone()).unwrap();
        let deg = if odd { 1 } else { 2 };
        let degrees = vec![deg; keys.len()];
        let s = koszul_sign(&sigma, &degrees).unwrap();
        let expected = if odd && inversions(&images) % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(s, expected);
    }

    #[test]
    fn unshuffle_count(p in 0usize..5, q in 0usize..5) {
        let n = binomial(p + q, p);
        prop_assert_eq!(Q::from_integer((unshuffles(p, q).len() as i64).into()), n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cone_differential_squares_to_zero(entry in 0usize..NAMES.len()) {
        let e = catalog::entry::<Q>(NAMES[entry]).unwrap();
        let cone = build_cone(&e.diagram).unwrap();
        for i in -2..4 {
            let a = cone.d_matrix(i + 1);
            let b = cone.d_matrix(i);
            for row in &a {
                for c in 0..b.first().map_or(0, |r| r.len()) {
                    let mut acc = Q::zero();
                    for (k, x) in row.iter().enumerate() {
                        acc += x * &b[k][c];
                    }
                    prop_assert!(acc.is_zero(), "{} degree {}", NAMES[entry], i);
                }
            }
        }
    }

    #[test]
    fn gauge_action_preserves_witnesses(entry in 0usize..NAMES.len(), seed in any::<u64>()) {
        let e = catalog::entry::<Q>(NAMES[entry]).unwrap();
        let ring = catalog::ring::<Q>("eps3").unwrap();
        let w = sample_mc(&e.diagram, &ring, seed);
        prop_assert!(mc_pair_verify(&e.diagram, &ring, &w));
        let mut rng = sample::rng(seed ^ 0x5eed);
        let ew = random_equivalence(&e.diagram, &ring, &mut rng);
        let moved = equivalence_action(&e.diagram, &ring, &w, &ew).unwrap();
        prop_assert!(mc_pair_verify(&e.diagram, &ring, &moved));
        prop_assert!(pair_equiv_verify(&e.diagram, &ring, &w, &moved, &ew).unwrap());
    }

    #[test]
    fn tree_and_closed_brackets_agree(entry in 0usize..NAMES.len(), arity in 1usize..4, seed in any::<u64>()) {
        let e = catalog::entry::<Q>(NAMES[entry]).unwrap();
        let tree = TransferredLinf::new(&e.diagram, arity, TransferMode::Tree);
        let closed = TransferredLinf::new(&e.diagram, arity, TransferMode::Closed);
        let space = tree.cone.space();
        let degrees: Vec<i32> = space.degrees().into_iter().collect();
        let mut rng = sample::rng(seed);
        let mut vs = Vec::new();
        let mut ds = Vec::new();
        for _ in 0..arity {
            let d = *sample::pick(&mut rng, &degrees);
            vs.push(sample::vector::<Q>(&mut rng, &space.in_degree(d), 0.6));
            ds.push(d);
        }
        prop_assert_eq!(tree.bracket_vectors(&vs, &ds), closed.bracket_vectors(&vs, &ds));
    }
}

#[test]
fn i_coefficients_are_scaled_bernoulli_numbers() {
    for j in 1..12 {
        let expected = -bernoulli::<Q>(j) / factorial::<Q>(j);
        assert_eq!(i_coefficient::<Q>(j), expected, "j = {j}");
    }
    assert_eq!(bernoulli::<Q>(0), Q::one());
}
