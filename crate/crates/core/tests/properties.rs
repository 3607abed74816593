//! Property tests for the exact building blocks: rationals, lattices, the
//! group action, the expression grammar and bracket invariants.

mod common;

use nglie::block::{BlockISpec, SuperSpec};
use nglie::expr;
use nglie::grpalg::Budget;
use nglie::ham_contact::HamSpec;
use nglie::lattice::{BlockMatrix, Lattice};
use nglie::linalg::{self, RatMatrix};
use nglie::rational::{fmt_rational, parse_rational, rat, RatVector, Rational};
use nglie::weyl::WeylAlgebra;
use nglie::witt::WittSpec;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn vector(dim: usize) -> impl Strategy<Value = RatVector> {
    prop::collection::vec(small_rat(), dim).prop_map(RatVector)
}

fn lattice(dim: usize) -> impl Strategy<Value = Lattice> {
    prop::collection::vec(vector(dim), 0..=3).prop_map(move |g| Lattice::new(g, dim).unwrap())
}

/// Invertible block-triangular elements of `G(1, 1)`.
fn group_element() -> impl Strategy<Value = BlockMatrix> {
    (small_rat(), small_rat(), small_rat())
        .prop_filter("invertible diagonal", |(a, _, d)| a != &rat(0, 1) && d != &rat(0, 1))
        .prop_map(|(a, c, d)| {
            let m: RatMatrix = vec![vec![a, rat(0, 1)], vec![c, d]];
            BlockMatrix::check(m, 1, 1).unwrap()
        })
}

fn budget() -> Budget {
    Budget {
        max_terms: 3,
        max_nat_exponent: 2,
        generator_coeff_bound: 2,
        coeff_bound: 3,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_text_round_trip(r in small_rat()) {
        prop_assert_eq!(parse_rational(&fmt_rational(&r)).unwrap(), r);
    }

    #[test]
    fn lattice_contains_its_generators(l in lattice(2)) {
        for g in l.generators() {
            prop_assert!(l.contains(g.as_slice()).unwrap());
        }
        prop_assert!(l.contains(RatVector::zeros(2).as_slice()).unwrap());
    }

    #[test]
    fn canonical_form_ignores_generator_order(gens in prop::collection::vec(vector(2), 1..=3)) {
        let mut reversed = gens.clone();
        reversed.reverse();
        let a = Lattice::new(gens.clone(), 2).unwrap();
        let b = Lattice::new(reversed, 2).unwrap();
        prop_assert_eq!(&a, &b);
        // Adding a sum of generators does not change the lattice.
        let mut extra = gens.clone();
        let sum = gens.iter().fold(RatVector::zeros(2), |acc, g| &acc + g);
        extra.push(sum);
        prop_assert_eq!(Lattice::new(extra, 2).unwrap(), a);
    }

    #[test]
    fn unimodular_change_of_generators(v in vector(2), w in vector(2), k in -3i64..=3) {
        let a = Lattice::new(vec![v.clone(), w.clone()], 2).unwrap();
        let sheared = &w + &v.scale(&rat(k, 1));
        let b = Lattice::new(vec![v, sheared], 2).unwrap();
        prop_assert!(a.equals(&b).unwrap());
    }

    #[test]
    fn action_is_a_group_action(g in group_element(), h in group_element(), l in lattice(2)) {
        let lhs = g.act_lattice(&h.act_lattice(&l).unwrap()).unwrap();
        let rhs = g.compose(&h).unwrap().act_lattice(&l).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(BlockMatrix::identity(1, 1).act_lattice(&l).unwrap(), l.clone());
        let inv = linalg::inverse(g.entries()).unwrap();
        let g_inv = BlockMatrix::check(inv, 1, 1).unwrap();
        prop_assert_eq!(g_inv.act_lattice(&g.act_lattice(&l).unwrap()).unwrap(), l);
    }

    #[test]
    fn algebra_elements_round_trip_through_text(seed in any::<u64>()) {
        let spec = BlockISpec::example_3_1(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = spec.base().random_elem(&budget(), &mut rng);
        prop_assert_eq!(expr::parse_alg(spec.base(), &expr::render_alg(&a)).unwrap(), a);
    }

    #[test]
    fn witt_elements_round_trip_through_text(seed in any::<u64>()) {
        let spec = common::witt_111();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = spec.random_elem(&budget(), &mut rng);
        prop_assert_eq!(expr::parse_witt(&spec, &expr::render_witt(&w)).unwrap(), w);
    }

    #[test]
    fn weyl_operators_round_trip_through_text(seed in any::<u64>()) {
        let alg = WeylAlgebra::new(common::witt_111());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = alg.random_op(&budget(), &mut rng);
        prop_assert_eq!(expr::parse_weyl(&alg, &expr::render_weyl(&a)).unwrap(), a);
    }

    #[test]
    fn super_elements_round_trip_through_text(seed in any::<u64>()) {
        let spec = SuperSpec::super_virasoro().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = spec
            .random_homogeneous(0, &budget(), &mut rng)
            .add(&spec.random_homogeneous(1, &budget(), &mut rng));
        prop_assert_eq!(expr::parse_super(spec.base(), &expr::render_super(&x)).unwrap(), x);
    }

    #[test]
    fn witt_bracket_is_bilinear_and_skew(seed in any::<u64>(), c in small_rat()) {
        let spec = WittSpec::example_2_19(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, d) = (
            spec.random_elem(&budget(), &mut rng),
            spec.random_elem(&budget(), &mut rng),
            spec.random_elem(&budget(), &mut rng),
        );
        prop_assert!(spec.bracket(&a, &b).add(&spec.bracket(&b, &a)).is_zero());
        let lhs = spec.bracket(&a.scale(&c).add(&d), &b);
        let rhs = spec.bracket(&a, &b).scale(&c).add(&spec.bracket(&d, &b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn poisson_bracket_is_a_biderivation(seed in any::<u64>()) {
        let spec = HamSpec::classical(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = spec.base();
        let (u, v, w) = (
            base.random_elem(&budget(), &mut rng),
            base.random_elem(&budget(), &mut rng),
            base.random_elem(&budget(), &mut rng),
        );
        let lhs = spec.bracket(&u, &v.mul(&w));
        let rhs = spec.bracket(&u, &v).mul(&w).add(&v.mul(&spec.bracket(&u, &w)));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(spec.bracket(&base.one(), &u).is_zero());
    }

    #[test]
    fn weyl_product_agrees_with_composition(seed in any::<u64>()) {
        let alg = WeylAlgebra::new(common::witt_111());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = alg.random_op(&budget(), &mut rng);
        let b = alg.random_op(&budget(), &mut rng);
        let u = alg.witt().base().random_elem(&budget(), &mut rng);
        prop_assert_eq!(alg.apply(&alg.mul(&a, &b), &u), alg.apply(&a, &alg.apply(&b, &u)));
    }
}
