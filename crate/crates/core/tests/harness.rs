//! Negative controls and edge cases for the verification harness: each
//! checker must be able to fail, and the window tools must report what they
//! cannot see.

mod common;

use nglie::block::{BlockISpec, SuperElem, SuperSpec};
use nglie::grpalg::AlgElem;
use nglie::lattice::Lattice;
use nglie::rational::{int, RatVector};
use nglie::verify::{self, TrialConfig};
use nglie::witt::{WittElem, WittSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn non_central_monomial_fails_centrality_with_witness() {
    let spec = BlockISpec::example_3_1(2).unwrap();
    let cfg = TrialConfig::new(1, 50);
    let sample = |r: &mut ChaCha8Rng| spec.base().random_elem(&cfg.budget, r);
    let bracket = |a: &AlgElem, b: &AlgElem| spec.bracket(a, b);

    let central = AlgElem::monomial(spec.central().unwrap());
    assert!(verify::check_centrality("block1", &cfg, &central, sample, bracket).passed);

    let window = verify::alg_window(spec.base(), 1, 1);
    let other = window.iter().find(|x| !spec.bracket(x, &window[0]).is_zero()).unwrap();
    let rep = verify::check_centrality("block1", &cfg, other, sample, bracket);
    assert!(!rep.passed);
    let w = rep.witness.unwrap();
    assert_eq!(w.inputs.len(), 1);
    assert_ne!(w.residual, "0");
}

#[test]
fn closure_catches_a_broken_sampler() {
    let w = WittSpec::new(0, 0, 2, Lattice::integral(2)).unwrap();
    let rho = RatVector::from_ints(&[1, 0]);
    let cfg = TrialConfig::new(1, 50);
    let bracket = |a: &WittElem, b: &WittElem| w.bracket(a, b);
    let member = |x: &WittElem| w.s_member(x, &rho).unwrap();

    let good = |r: &mut ChaCha8Rng| w.s_random(&rho, &cfg.budget, r).unwrap();
    assert!(verify::check_closure("s", &cfg, good, bracket, member).passed);

    // Arbitrary vector fields are not divergence-free, and neither are most
    // of their brackets.
    let broken = |r: &mut ChaCha8Rng| w.random_elem(&cfg.budget, r);
    let rep = verify::check_closure("s", &cfg, broken, bracket, member);
    assert!(!rep.passed);
    assert!(rep.witness.is_some());
}

#[test]
fn central_element_spans_a_one_dimensional_ideal() {
    let spec = BlockISpec::example_3_1(2).unwrap();
    let window = verify::alg_window(spec.base(), 1, 1);
    let central = AlgElem::monomial(spec.central().unwrap());
    let rep = verify::ideal_probe(&central, &window, &AlgElem::zero(), 3, |a, b| spec.bracket(a, b));
    assert_eq!(rep.label, "heuristic");
    assert_eq!(rep.dims[0], 1);
    assert!(rep.dims.iter().all(|&d| d == 1), "{:?}", rep.dims);

    let other = window.iter().find(|x| !spec.bracket(x, &window[0]).is_zero()).unwrap();
    let rep = verify::ideal_probe(other, &window, &AlgElem::zero(), 3, |a, b| spec.bracket(a, b));
    assert!(*rep.dims.last().unwrap() > 1, "{rep:?}");
}

#[test]
fn odd_triples_satisfy_graded_jacobi_with_equal_signs() {
    let spec = SuperSpec::super_virasoro().unwrap();
    let budget = common::matrix_budget();
    for seed in 0..40 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let odd = |r: &mut ChaCha8Rng| spec.random_homogeneous(1, &budget, r);
        let (x, y, z) = (odd(&mut rng), odd(&mut rng), odd(&mut rng));
        let br = |a: &SuperElem, b: &SuperElem| spec.bracket(a, b);
        // Odd-odd brackets are symmetric.
        assert_eq!(br(&x, &y), br(&y, &x));
        // Every sign in the graded sum is −1, so the plain cyclic sum vanishes.
        let sum = br(&br(&x, &y), &z).add(&br(&br(&y, &z), &x)).add(&br(&br(&z, &x), &y));
        assert!(sum.is_zero(), "seed {seed}: {sum:?}");
    }
}

/// Divergence-free fields `x^ρ S(0,0,2; ℤ²)` with `ρ = (1,0)`: window of
/// `x^{α+ρ}∂_i` with `|α_i| ≤ radius`, generated by `x^{α+ρ}(α₂∂₁ − α₁∂₂)` and
/// the two constant fields at `α = 0`.
fn twisted_s_window(radius: i64) -> (WittSpec, Vec<WittElem>, Vec<WittElem>) {
    let w = WittSpec::new(0, 0, 2, Lattice::integral(2)).unwrap();
    let rho = RatVector::from_ints(&[1, 0]);
    let field = |a: i64, b: i64, p: usize| {
        w.elem(AlgElem::monomial(w.base().x(RatVector::from_ints(&[a + 1, b]))), p)
    };
    let mut window = Vec::new();
    let mut gens = Vec::new();
    for a in -radius..=radius {
        for b in -radius..=radius {
            window.push(field(a, b, 0));
            window.push(field(a, b, 1));
            if (a, b) == (0, 0) {
                gens.push(field(0, 0, 0));
                gens.push(field(0, 0, 1));
            } else {
                gens.push(field(a, b, 0).scale(&int(b)).add(&field(a, b, 1).scale(&int(-a))));
            }
        }
    }
    for g in &gens {
        assert!(w.s_member(g, &rho).unwrap());
    }
    (w, window, gens)
}

#[test]
fn twisted_divergence_free_codimension_is_inconclusive_on_windows() {
    let (w, window, gens) = twisted_s_window(3);
    let d = verify::derived_span(&gens, &window, &w.zero(), 1, |a, b| w.bracket(a, b));
    let derived = d.dims()[0];
    let leaked = d.summary().leaked_pairs[0];
    let verdict = if d.leakage_free() { "conclusive" } else { "inconclusive" };
    println!(
        "twisted S codimension on window: generators {}, derived {}, deficit {}, leaked pairs {}: {verdict}",
        gens.len(),
        derived,
        gens.len() - derived,
        leaked
    );
    // Every window of this shape leaks, so no codimension is asserted.
    assert_eq!(verdict, "inconclusive");

    // What the window does show exactly: no bracket of window elements has
    // a component in degree ρ, so both constant fields there stay outside.
    let degree_rho = [&gens[gens.len() / 2 - 1], &gens[gens.len() / 2]];
    for x in degree_rho {
        assert!(!d.contains(x));
    }
}
