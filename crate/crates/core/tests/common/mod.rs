//! Fixtures shared by the integration suites.
#![allow(dead_code)]

use nglie::grpalg::{Budget, JFlag};
use nglie::ham_contact::{ContactSpec, HamSpec};
use nglie::lattice::Lattice;
use nglie::linalg::RatMatrix;
use nglie::rational::{int, RatVector, Rational};
use nglie::weyl::{IdealPattern, WeylAlgebra};
use nglie::witt::WittSpec;
use num_traits::Zero;

fn zeros(n: usize) -> RatMatrix {
    vec![vec![Rational::zero(); n]; n]
}

/// `d0 = 2`, `Γ₀ = ℤ²` paired by `Φ`, `Γ₁ = ℤ(1,0)`, `k = k1 = 1`.
pub fn ham_rank_two_pairing() -> HamSpec {
    let mut phi = zeros(4);
    phi[0][1] = int(1);
    phi[1][0] = int(-1);
    HamSpec::new(
        1,
        1,
        Lattice::integral(2),
        Lattice::from_ints(&[&[1, 0]], 2).unwrap(),
        vec![JFlag::Nat; 2],
        phi,
        vec![RatVector::from_ints(&[0, 0, 1, 0])],
    )
    .unwrap()
}

/// `d0 = 1`, `Γ₀ = ℤ` paired against `Γ₁ = ℤ(1,0)`, `k = 1`, `k1 = 0`.
pub fn ham_rank_one_mixed() -> HamSpec {
    let mut phi = zeros(3);
    phi[0][1] = int(1);
    phi[1][0] = int(-1);
    HamSpec::new(
        1,
        0,
        Lattice::integral(1),
        Lattice::from_ints(&[&[1, 0]], 2).unwrap(),
        vec![JFlag::Nat; 2],
        phi,
        vec![RatVector::zeros(3)],
    )
    .unwrap()
}

/// `k = 1`, `Γ₁ = ℤ(1,0)`, `Γ₀ = 0`, `J = ℕ³`, `σ_1 = −1_[1]`.
pub fn contact_nontrivial() -> ContactSpec {
    ContactSpec::new(
        1,
        Lattice::zero(1),
        Lattice::from_ints(&[&[1, 0]], 2).unwrap(),
        vec![JFlag::Nat; 3],
        RatVector::zeros(3),
        vec![RatVector::from_ints(&[0, -1, 0])],
    )
    .unwrap()
}

/// `ℓ1 = ℓ2 = ℓ3 = 1`, `Γ = ℤ²`.
pub fn witt_111() -> WittSpec {
    WittSpec::new(1, 1, 1, Lattice::integral(2)).unwrap()
}

/// Weyl algebra over `ℓ1 = 1, ℓ2 = 1`, `Γ = ℤ`, with the `k = 2` pattern
/// `m = (1), (0)`, `n = (0), (1)` at `ℓ' = 1`.
pub fn weyl_pattern() -> (WeylAlgebra, IdealPattern) {
    let alg = WeylAlgebra::new(WittSpec::new(1, 1, 0, Lattice::integral(1)).unwrap());
    let p = IdealPattern::new(&alg, 1, vec![vec![1], vec![0]], vec![vec![0], vec![1]]).unwrap();
    (alg, p)
}

/// Budget for matrix-valued trials.
pub fn matrix_budget() -> Budget {
    Budget {
        max_terms: 2,
        max_nat_exponent: 1,
        generator_coeff_bound: 2,
        coeff_bound: 3,
    }
}

/// Budget for identities built from nested products, whose size grows
/// quickly with the number of terms.
pub fn nested_budget() -> Budget {
    Budget {
        max_terms: 4,
        max_nat_exponent: 2,
        generator_coeff_bound: 2,
        coeff_bound: 3,
    }
}
