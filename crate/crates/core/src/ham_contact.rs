//! Hamiltonian-type Poisson brackets and Contact-type brackets on
//! `A(Γ, J)`, together with the lattice side conditions they require.
//!
//! Hamiltonian group vectors are laid out as `(Γ₀ block | Γ₁ block)` with
//! `d0` external coordinates followed by `2k` derivation coordinates.
//! Contact group vectors use coordinates `0..=2k`, coordinate `0` being the
//! distinguished one; internal indices equal the usual `0..2k` labels.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grpalg::{AlgElem, AlgebraSpec, JFlag, Violation};
use crate::lattice::Lattice;
use crate::linalg::{self, RatMatrix};
use crate::rational::{int, RatVector, Rational};

#[derive(Clone, Debug)]
pub struct HamSpec {
    k: usize,
    k1: usize,
    d0: usize,
    gamma0: Lattice,
    gamma1: Lattice,
    base: AlgebraSpec,
    phi: RatMatrix,
    sigma: Vec<RatVector>,
    /// `Φ` minus the standard symplectic pairing on planes `k1+1..k`.
    psi: RatMatrix,
}

impl HamSpec {
    /// `gamma0 ⊂ ℚ^{d0}`, `gamma1 ⊂ ℚ^{2k}`, `j` has `2k` flags, `phi` is
    /// `(d0+2k)×(d0+2k)` and `sigma` holds `σ_1..σ_k` in full coordinates.
    pub fn new(
        k: usize,
        k1: usize,
        gamma0: Lattice,
        gamma1: Lattice,
        j: Vec<JFlag>,
        phi: RatMatrix,
        sigma: Vec<RatVector>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::Shape("k must be positive".into()));
        }
        if k1 > k {
            return Err(Error::Shape(format!("k1 = {k1} exceeds k = {k}")));
        }
        if gamma1.ambient_dim() != 2 * k {
            return Err(Error::DimensionMismatch {
                expected: 2 * k,
                found: gamma1.ambient_dim(),
            });
        }
        if j.len() != 2 * k {
            return Err(Error::DimensionMismatch {
                expected: 2 * k,
                found: j.len(),
            });
        }
        let d0 = gamma0.ambient_dim();
        let n = d0 + 2 * k;
        if phi.len() != n || phi.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("Φ must be {n}x{n}")));
        }
        if sigma.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: sigma.len(),
            });
        }
        if let Some(s) = sigma.iter().find(|s| s.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: s.dim(),
            });
        }
        let base = AlgebraSpec::new(gamma0.direct_sum(&gamma1), j, d0)?;
        let mut psi = phi.clone();
        for p in k1..k {
            let a = d0 + p;
            let b = d0 + k + p;
            psi[a][b] -= Rational::one();
            psi[b][a] += Rational::one();
        }
        Ok(HamSpec {
            k,
            k1,
            d0,
            gamma0,
            gamma1,
            base,
            phi,
            sigma,
            psi,
        })
    }

    /// `Γ₀ = Γ₁ = {0}`, `k1 = 0`, `J = ℕ^{2k}`, `Φ = 0`: polynomials in
    /// `t_1..t_{2k}` with the standard Poisson bracket.
    pub fn classical(k: usize) -> Result<Self> {
        Self::new(
            k,
            0,
            Lattice::zero(0),
            Lattice::zero(2 * k),
            vec![JFlag::Nat; 2 * k],
            vec![vec![Rational::zero(); 2 * k]; 2 * k],
            vec![RatVector::zeros(2 * k); k],
        )
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn d0(&self) -> usize {
        self.d0
    }

    pub fn base(&self) -> &AlgebraSpec {
        &self.base
    }

    pub fn phi(&self) -> &RatMatrix {
        &self.phi
    }

    pub fn sigma(&self) -> &[RatVector] {
        &self.sigma
    }

    pub fn gamma0(&self) -> &Lattice {
        &self.gamma0
    }

    pub fn gamma1(&self) -> &Lattice {
        &self.gamma1
    }

    fn x1_nonzero(&self, p: usize) -> bool {
        self.gamma1.projection_nonzero(p)
    }

    /// `℧`: the 0-based Γ₁ coordinates `p, k+p` of planes where both
    /// projections of Γ₁ are nonzero.
    pub fn mho(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for p in 0..self.k {
            if self.x1_nonzero(p) && self.x1_nonzero(self.k + p) {
                out.push(p);
                out.push(self.k + p);
            }
        }
        out.sort_unstable();
        out
    }

    /// `φ(a, b) = a·Φ·bᵀ`.
    pub fn phi_form(&self, a: &[Rational], b: &[Rational]) -> Rational {
        linalg::bilinear(a, &self.phi, b)
    }

    /// Whether `φ(v, γ) = 0` for every `γ ∈ Γ`.
    pub fn in_radical(&self, v: &[Rational]) -> bool {
        self.base
            .gamma()
            .generators()
            .iter()
            .all(|g| self.phi_form(v, g.as_slice()).is_zero())
    }

    fn full_unit(&self, p: usize) -> RatVector {
        RatVector::unit(self.d0 + 2 * self.k, self.d0 + p)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.base.validate_coordinates("4.5", &[]);
        let n = self.d0 + 2 * self.k;
        for i in 0..n {
            for j in 0..n {
                if self.phi[i][j] != -&self.phi[j][i] {
                    out.push(Violation::new(
                        "skew",
                        format!("Φ is not skew-symmetric at ({}, {})", i + 1, j + 1),
                    ));
                }
            }
        }
        for p in 0..self.k1 {
            if !self.x1_nonzero(p) && !self.x1_nonzero(self.k + p) {
                out.push(Violation::new(
                    "4.13",
                    format!(
                        "plane {}: X_p(Γ₁) and X_(k+p)(Γ₁) are both trivial but p ≤ k1",
                        p + 1
                    ),
                ));
            }
        }
        if !self.condition_4_15() {
            out.push(Violation::new(
                "4.15",
                "some nonzero α₀ ∈ Γ₀ is φ-orthogonal to every β ∈ Γ vanishing on ℧",
            ));
        }
        for p in 0..2 * self.k {
            let plane = p % self.k;
            if !self.x1_nonzero(p) {
                continue;
            }
            let e = RatVector::unit(2 * self.k, p);
            if plane >= self.k1 {
                if !self.gamma1.contains_unchecked(e.as_slice()) {
                    out.push(Violation::new(
                        "4.16",
                        format!("1_[{}] must lie in Γ₁", p + 1),
                    ));
                }
            } else if !self.in_radical(self.full_unit(p).as_slice()) {
                out.push(Violation::new(
                    "4.17",
                    format!("1_[{}] must lie in the radical of φ", p + 1),
                ));
            }
        }
        for (p, s) in self.sigma.iter().enumerate() {
            if p < self.k1 {
                let off_plane = (0..n).any(|c| {
                    c != self.d0 + p && c != self.d0 + self.k + p && !s[c].is_zero()
                });
                if s.is_zero() {
                    out.push(Violation::new("4.18", format!("σ_{} must be nonzero", p + 1)));
                } else if off_plane {
                    out.push(Violation::new(
                        "4.18",
                        format!("σ_{} must lie in ℚ1_[{}] + ℚ1_[{}]", p + 1, p + 1, self.k + p + 1),
                    ));
                } else if !self.base.gamma().contains_unchecked(s.as_slice()) {
                    out.push(Violation::new("4.18", format!("σ_{} must lie in Γ", p + 1)));
                } else if !self.in_radical(s.as_slice()) {
                    out.push(Violation::new(
                        "4.18",
                        format!("σ_{} must lie in the radical of φ", p + 1),
                    ));
                }
            } else if !s.is_zero() {
                out.push(Violation::new(
                    "4.18",
                    format!("σ_{} must be 0 because {} > k1", p + 1, p + 1),
                ));
            }
        }
        out
    }

    /// Decides `{α₀ ∈ Γ₀ : φ(α₀, β) = 0 ∀β ∈ Γ'} = {0}` where `Γ'` is the
    /// sublattice of Γ vanishing on ℧.
    ///
    /// `N = {v : φ(v, Γ') = 0}` is a ℚ-subspace, and a nonzero rational
    /// vector of `span_ℚ Γ₀ ∩ N` has an integer multiple in `Γ₀`, so the
    /// condition is `span_ℚ Γ₀ ∩ N = 0`. Since `Γ = Γ₀ ⊕ Γ₁`,
    /// `span_ℚ Γ' = span_ℚ Γ₀ ⊕ (span_ℚ Γ₁ ∩ V)` with `V` the coordinate
    /// subspace cut out by ℧; the test is that `B₀·Φ·Wᵀ` has full row rank
    /// for bases `B₀` of `span_ℚ Γ₀` and `W` of `span_ℚ Γ'`.
    fn condition_4_15(&self) -> bool {
        let n = self.d0 + 2 * self.k;
        let embed0 = |v: &RatVector| {
            let mut x = v.0.clone();
            x.extend(RatVector::zeros(2 * self.k).0);
            x
        };
        let embed1 = |v: &[Rational]| {
            let mut x = RatVector::zeros(self.d0).0;
            x.extend(v.iter().cloned());
            x
        };
        let b0: RatMatrix = linalg::rref(
            &self.gamma0.basis().iter().map(embed0).collect::<Vec<_>>(),
        )
        .0;
        if b0.is_empty() {
            return true;
        }
        let b1: RatMatrix = self.gamma1.basis().into_iter().map(|v| v.0).collect();
        let mho = self.mho();
        let mut w: RatMatrix = b0.clone();
        if !b1.is_empty() {
            // Combinations c·B₁ whose ℧ coordinates vanish.
            let restricted: RatMatrix = mho
                .iter()
                .map(|&q| b1.iter().map(|row| row[q].clone()).collect())
                .collect();
            let combos = if restricted.is_empty() {
                linalg::identity(b1.len())
            } else {
                linalg::nullspace(&restricted, b1.len())
            };
            for c in combos {
                let v = linalg::vec_mat(&c, &b1);
                w.push(embed1(&v));
            }
        }
        let m: RatMatrix = b0
            .iter()
            .map(|row| {
                w.iter()
                    .map(|col| linalg::bilinear(row, &self.phi, col))
                    .collect()
            })
            .collect();
        debug_assert!(m.iter().all(|r| r.len() == w.len()) && n > 0);
        linalg::rank(&m) == b0.len()
    }

    /// `ψ(α, β) = φ(α, β) − Σ_{p>k1} (α_p β_{k+p} − α_{k+p} β_p)`.
    pub fn scalar_form(&self, a: &[Rational], b: &[Rational]) -> Rational {
        linalg::bilinear(a, &self.psi, b)
    }

    /// The bracket of `A` before passing to `A/𝔽1_A`.
    pub fn bracket(&self, u: &AlgElem, v: &AlgElem) -> AlgElem {
        let b = &self.base;
        let mut out = AlgElem::zero();
        for p in 0..self.k {
            let q = self.k + p;
            let mut part = b.d_unchecked(p, u).mul(&b.d_unchecked(q, v));
            part.add_assign(&b.d_unchecked(q, u).mul(&b.d_unchecked(p, v)).neg());
            out.add_assign(&part.shift(&self.sigma[p]));
        }
        for (m1, c1) in u.terms() {
            for (m2, c2) in v.terms() {
                let s = self.scalar_form(m1.gamma.as_slice(), m2.gamma.as_slice());
                if !s.is_zero() {
                    out.add_term(m1.mul(m2), s * c1 * c2);
                }
            }
        }
        out
    }

    /// Representative modulo `𝔽1_A`.
    pub fn quotient_rep(&self, a: &AlgElem) -> AlgElem {
        let one = self.base.one_monomial();
        a.filter(|m| *m != one)
    }
}

#[derive(Clone, Debug)]
pub struct ContactSpec {
    k: usize,
    gamma0: Lattice,
    gamma1: Lattice,
    base: AlgebraSpec,
    sigma0: RatVector,
    sigma: Vec<RatVector>,
}

impl ContactSpec {
    /// `gamma0 ⊂ ℚ`, `gamma1 ⊂ ℚ^{2k}`, `j` has `2k+1` flags, `sigma0` and
    /// each of `σ_1..σ_k` live in ℚ^{2k+1}.
    pub fn new(
        k: usize,
        gamma0: Lattice,
        gamma1: Lattice,
        j: Vec<JFlag>,
        sigma0: RatVector,
        sigma: Vec<RatVector>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::Shape("k must be positive".into()));
        }
        if gamma0.ambient_dim() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: gamma0.ambient_dim(),
            });
        }
        if gamma1.ambient_dim() != 2 * k {
            return Err(Error::DimensionMismatch {
                expected: 2 * k,
                found: gamma1.ambient_dim(),
            });
        }
        let n = 2 * k + 1;
        if sigma.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: sigma.len(),
            });
        }
        if let Some(s) = std::iter::once(&sigma0).chain(&sigma).find(|s| s.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: s.dim(),
            });
        }
        let gamma = gamma0.direct_sum(&gamma1);
        let o1: Vec<usize> = (1..n).filter(|&p| gamma1.projection_nonzero(p - 1)).collect();
        let o2: Vec<usize> = (1..n).filter(|p| !o1.contains(p)).collect();
        let base = AlgebraSpec::new(gamma, j, 0)?.with_euler_sets(o1, o2)?;
        Ok(ContactSpec {
            k,
            gamma0,
            gamma1,
            base,
            sigma0,
            sigma,
        })
    }

    /// `Γ = {0}`, `J = ℕ^{2k+1}`: polynomials in `t_0..t_{2k}`.
    pub fn classical(k: usize) -> Result<Self> {
        let n = 2 * k + 1;
        Self::new(
            k,
            Lattice::zero(1),
            Lattice::zero(2 * k),
            vec![JFlag::Nat; n],
            RatVector::zeros(n),
            vec![RatVector::zeros(n); k],
        )
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> &AlgebraSpec {
        &self.base
    }

    pub fn sigma0(&self) -> &RatVector {
        &self.sigma0
    }

    pub fn sigma(&self) -> &[RatVector] {
        &self.sigma
    }

    pub fn gamma0(&self) -> &Lattice {
        &self.gamma0
    }

    pub fn gamma1(&self) -> &Lattice {
        &self.gamma1
    }

    /// `X_p(Γ₁) ≠ {0}` for a coordinate `p ∈ 1..=2k`.
    fn x1_nonzero(&self, p: usize) -> bool {
        self.gamma1.projection_nonzero(p - 1)
    }

    fn full_gamma_meets_axis(&self, p: usize) -> bool {
        // ℚ1_[p] ∩ Γ ≠ {0} iff 1_[p] lies in span_ℚ Γ.
        let rows: RatMatrix = self.base.gamma().basis().into_iter().map(|v| v.0).collect();
        linalg::in_span(&rows, RatVector::unit(2 * self.k + 1, p).as_slice())
    }

    pub fn validate(&self) -> Vec<Violation> {
        let n = 2 * self.k + 1;
        let g = self.base.gamma();
        let mut out = self.base.validate_coordinates("4.28", &[]);
        for (p, &flag) in self.base.j().iter().enumerate().skip(1) {
            if !self.x1_nonzero(p) && flag != JFlag::Nat {
                out.push(Violation::new(
                    "4.40",
                    format!("coordinate {p} has X_p(Γ₁) = {{0}} so J_{p} must be ℕ"),
                ));
            }
        }
        for (idx, s) in self.sigma.iter().enumerate() {
            let p = idx + 1;
            let q = self.k + p;
            let unit = |r: usize| RatVector::unit(n, r);
            let (code, expected) = match (self.x1_nonzero(p), self.x1_nonzero(q)) {
                (true, false) => ("4.37", -&unit(p)),
                (false, true) => ("4.38", -&unit(q)),
                (true, true) => ("4.39", &-&unit(p) - &unit(q)),
                (false, false) => ("4.42", RatVector::zeros(n)),
            };
            if *s != expected {
                out.push(Violation::new(
                    code,
                    format!("σ_{p} must equal {expected}, found {s}"),
                ));
            } else if !g.contains_unchecked(s.as_slice()) {
                out.push(Violation::new(code, format!("σ_{p} = {s} must lie in Γ")));
            }
            if code == "4.39" {
                for r in [p, q] {
                    if !self.full_gamma_meets_axis(r) {
                        out.push(Violation::new(
                            "4.39",
                            format!("ℚ1_[{r}] ∩ Γ must be nonzero"),
                        ));
                    }
                }
            }
        }
        let s0 = &self.sigma0;
        if (1..n).any(|c| !s0[c].is_zero())
            || !self.gamma0.contains_unchecked(&s0.0[..1])
        {
            out.push(Violation::new(
                "4.42",
                format!("σ_0 = {s0} must lie in Γ₀·1_[0]"),
            ));
        }
        out
    }

    /// The Euler derivation `∂`.
    pub fn euler(&self, a: &AlgElem) -> AlgElem {
        self.base
            .euler_derive(a)
            .expect("contact algebras always carry Euler sets")
    }

    /// `(2 − ∂)(a)`.
    fn two_minus_euler(&self, a: &AlgElem) -> AlgElem {
        a.scale(&int(2)).sub(&self.euler(a))
    }

    pub fn bracket(&self, u: &AlgElem, v: &AlgElem) -> AlgElem {
        let b = &self.base;
        let mut first = b.d_unchecked(0, u).mul(&self.two_minus_euler(v));
        first.add_assign(&self.two_minus_euler(u).mul(&b.d_unchecked(0, v)).neg());
        let mut out = first.shift(&self.sigma0);
        for idx in 0..self.k {
            let p = idx + 1;
            let q = self.k + p;
            let mut part = b.d_unchecked(p, u).mul(&b.d_unchecked(q, v));
            part.add_assign(&b.d_unchecked(q, u).mul(&b.d_unchecked(p, v)).neg());
            out.add_assign(&part.shift(&self.sigma[idx]));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpalg::Budget;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zeros(n: usize) -> RatMatrix {
        vec![vec![Rational::zero(); n]; n]
    }

    #[test]
    fn classical_hamiltonian() {
        let h = HamSpec::classical(1).unwrap();
        assert!(h.validate().is_empty());
        let t1 = AlgElem::monomial(h.base().t(vec![1, 0]));
        let t2 = AlgElem::monomial(h.base().t(vec![0, 1]));
        assert_eq!(h.bracket(&t1, &t2), h.base().one());
        assert!(h.quotient_rep(&h.bracket(&t1, &t2)).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = h.base().random_elem(&Budget::default(), &mut rng);
        assert!(h.bracket(&h.base().one(), &v).is_zero());
    }

    #[test]
    fn skew_and_sigma_violations() {
        let mut phi = zeros(2);
        phi[0][1] = int(1);
        let h = HamSpec::new(
            1,
            0,
            Lattice::zero(0),
            Lattice::zero(2),
            vec![JFlag::Nat; 2],
            phi,
            vec![RatVector::zeros(2)],
        )
        .unwrap();
        assert!(h.validate().iter().any(|v| v.code == "skew"));

        let h = HamSpec::new(
            1,
            1,
            Lattice::zero(0),
            Lattice::from_ints(&[&[1, 0]], 2).unwrap(),
            vec![JFlag::Nat; 2],
            zeros(2),
            vec![RatVector::zeros(2)],
        )
        .unwrap();
        assert!(h.validate().iter().any(|v| v.code == "4.18"));
    }

    /// Γ₀ = ℤ² with a symplectic pairing, Γ₁ = ℤ(1,0), k = k1 = 1.
    fn osborn_zhao_like() -> HamSpec {
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

    /// Γ₀ = ℤ paired against Γ₁ = ℤ(1,0), k = 1, k1 = 0.
    fn mixed_rank_one() -> HamSpec {
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

    #[test]
    fn nonclassical_specs_validate() {
        assert_eq!(osborn_zhao_like().validate(), vec![]);
        assert_eq!(mixed_rank_one().validate(), vec![]);
    }

    #[test]
    fn condition_4_15_detects_degenerate_gamma0() {
        // Rank-1 Γ₀ with Φ = 0 everywhere: α₀ = 1 is orthogonal to all of Γ.
        let h = HamSpec::new(
            1,
            0,
            Lattice::integral(1),
            Lattice::from_ints(&[&[1, 0]], 2).unwrap(),
            vec![JFlag::Nat; 2],
            zeros(3),
            vec![RatVector::zeros(3)],
        )
        .unwrap();
        assert!(h.validate().iter().any(|v| v.code == "4.15"));
    }

    #[test]
    fn condition_4_15_respects_mho() {
        // Γ₁ = ℤ², so ℧ = {1, 2} and Γ' = Γ₀: pairing Γ₀ only with Γ₁ is not
        // enough.
        let mut phi = zeros(3);
        phi[0][1] = int(1);
        phi[1][0] = int(-1);
        let h = HamSpec::new(
            1,
            0,
            Lattice::integral(1),
            Lattice::integral(2),
            vec![JFlag::Nat; 2],
            phi,
            vec![RatVector::zeros(3)],
        )
        .unwrap();
        assert_eq!(h.mho(), vec![0, 1]);
        assert!(h.validate().iter().any(|v| v.code == "4.15"));
    }

    #[test]
    fn hamiltonian_skew_on_nonclassical() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for h in [osborn_zhao_like(), mixed_rank_one()] {
            for _ in 0..10 {
                let u = h.base().random_elem(&Budget::default(), &mut rng);
                let v = h.base().random_elem(&Budget::default(), &mut rng);
                assert_eq!(h.bracket(&u, &v), h.bracket(&v, &u).neg());
                assert!(h.bracket(&h.base().one(), &v).is_zero());
            }
        }
    }

    #[test]
    fn classical_contact() {
        let c = ContactSpec::classical(1).unwrap();
        assert!(c.validate().is_empty());
        let t = |i: &[u32]| AlgElem::monomial(c.base().t(i.to_vec()));
        assert_eq!(c.bracket(&t(&[1, 0, 0]), &t(&[0, 1, 0])), t(&[0, 1, 0]));
        assert!(c.bracket(&t(&[1, 0, 0]), &t(&[0, 1, 1])).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = c.base().random_elem(&Budget::default(), &mut rng);
        assert!(c.bracket(&u, &u).is_zero());
    }

    #[test]
    fn contact_sigma_cases() {
        let n = 3;
        let make = |s1: RatVector, j: Vec<JFlag>| {
            ContactSpec::new(
                1,
                Lattice::zero(1),
                Lattice::from_ints(&[&[1, 0]], 2).unwrap(),
                j,
                RatVector::zeros(n),
                vec![s1],
            )
            .unwrap()
        };
        let good = make(RatVector::from_ints(&[0, -1, 0]), vec![JFlag::Nat; 3]);
        assert_eq!(good.validate(), vec![]);
        let bad = make(RatVector::zeros(3), vec![JFlag::Nat; 3]);
        assert!(bad.validate().iter().any(|v| v.code == "4.37"));
        let bad_j = make(
            RatVector::from_ints(&[0, -1, 0]),
            vec![JFlag::Nat, JFlag::Nat, JFlag::Zero],
        );
        assert!(bad_j.validate().iter().any(|v| v.code == "4.40"));
    }
}
