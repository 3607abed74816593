//! Witt-type Lie algebras `W(ℓ1,ℓ2,ℓ3;Γ) = A·D` and their divergence-free
//! subalgebras `x^ρ S(ℓ1,ℓ2,ℓ3;Γ)`.
//!
//! The algebra `A(ℓ1,ℓ2,ℓ3;Γ)` is realized as `A(Γ', J)` with `Γ'` the
//! lattice `Γ` padded by `ℓ1` leading zero coordinates and
//! `J = (ℕ^{ℓ1+ℓ2}, {0}^{ℓ3})`. With this layout `∂_p` is a pure `t`
//! derivative for `p < ℓ1`, the mixed `∂* + ∂_t` for the next `ℓ2`
//! coordinates and the pure degree operator for the last `ℓ3`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::grpalg::{AlgElem, AlgebraSpec, Budget, JFlag, Violation};
use crate::lattice::Lattice;
use crate::rational::RatVector;

#[derive(Clone, Debug)]
pub struct WittSpec {
    l1: usize,
    l2: usize,
    l3: usize,
    gamma: Lattice,
    base: AlgebraSpec,
}

impl WittSpec {
    /// `gamma` lives in ℚ^{ℓ2+ℓ3}.
    pub fn new(l1: usize, l2: usize, l3: usize, gamma: Lattice) -> Result<Self> {
        if l1 + l2 + l3 == 0 {
            return Err(Error::Shape("ℓ1 + ℓ2 + ℓ3 must be positive".into()));
        }
        if gamma.ambient_dim() != l2 + l3 {
            return Err(Error::DimensionMismatch {
                expected: l2 + l3,
                found: gamma.ambient_dim(),
            });
        }
        let mut j = vec![JFlag::Nat; l1 + l2];
        j.extend(std::iter::repeat_n(JFlag::Zero, l3));
        let base = AlgebraSpec::new(gamma.pad_front(l1), j, 0)?;
        Ok(WittSpec {
            l1,
            l2,
            l3,
            gamma,
            base,
        })
    }

    /// `ℓ1 = 0, ℓ2 = k, ℓ3 = 0, Γ = ℤ^k`: Laurent polynomials in
    /// `t_1..t_k` times polynomials in `t_{k+1}..t_{2k}`, with derivations
    /// `t_i ∂_{t_i} + ∂_{t_{k+i}}`.
    pub fn example_2_19(k: usize) -> Result<Self> {
        Self::new(0, k, 0, Lattice::integral(k))
    }

    pub fn l1(&self) -> usize {
        self.l1
    }

    pub fn l2(&self) -> usize {
        self.l2
    }

    pub fn l3(&self) -> usize {
        self.l3
    }

    pub fn l(&self) -> usize {
        self.l1 + self.l2 + self.l3
    }

    /// The lattice in ℚ^{ℓ2+ℓ3}, before padding.
    pub fn gamma(&self) -> &Lattice {
        &self.gamma
    }

    pub fn base(&self) -> &AlgebraSpec {
        &self.base
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.l2 + self.l3 > 0 && !self.gamma.is_nondegenerate() {
            out.push(Violation::new(
                "2.10",
                format!(
                    "Γ has rank {} but must be nondegenerate in ℚ^{}",
                    self.gamma.rank(),
                    self.l2 + self.l3
                ),
            ));
        }
        out.extend(self.base.validate_coordinates("2.10", &[]));
        out
    }

    pub fn zero(&self) -> WittElem {
        WittElem::zero(self.l())
    }

    /// `a ∂_p`.
    pub fn elem(&self, a: AlgElem, p: usize) -> WittElem {
        let mut w = self.zero();
        w.coeffs[p] = a;
        w
    }

    pub fn check(&self, w: &WittElem) -> Result<()> {
        if w.coeffs.len() != self.l() {
            return Err(Error::SpecMismatch(format!(
                "expected {} derivation slots, found {}",
                self.l(),
                w.coeffs.len()
            )));
        }
        w.coeffs.iter().try_for_each(|c| self.base.check(c))
    }

    /// `Σ_p u_p ∂_p(a)`.
    pub fn apply(&self, w: &WittElem, a: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero();
        for (p, u) in w.coeffs.iter().enumerate() {
            if !u.is_zero() {
                out.add_assign(&u.mul(&self.base.d_unchecked(p, a)));
            }
        }
        out
    }

    /// `Σ_{p,q} (u_p ∂_p(v_q) − v_p ∂_p(u_q)) ∂_q`.
    pub fn bracket(&self, w1: &WittElem, w2: &WittElem) -> WittElem {
        let coeffs = (0..self.l())
            .map(|q| self.apply(w1, &w2.coeffs[q]).sub(&self.apply(w2, &w1.coeffs[q])))
            .collect();
        WittElem { coeffs }
    }

    /// `Σ_p ∂_p(u_p)`.
    pub fn divergence(&self, w: &WittElem) -> AlgElem {
        let mut out = AlgElem::zero();
        for (p, u) in w.coeffs.iter().enumerate() {
            out.add_assign(&self.base.d_unchecked(p, u));
        }
        out
    }

    /// `ρ` padded into the unified group coordinates.
    fn padded(&self, rho: &RatVector) -> Result<RatVector> {
        if rho.dim() != self.l2 + self.l3 {
            return Err(Error::DimensionMismatch {
                expected: self.l2 + self.l3,
                found: rho.dim(),
            });
        }
        if !self.gamma.contains_unchecked(rho.as_slice()) {
            return Err(Error::NotInGroup(rho.to_string()));
        }
        let mut v = RatVector::zeros(self.l1).0;
        v.extend(rho.0.iter().cloned());
        Ok(RatVector(v))
    }

    /// `x^ρ · w`, with `ρ ∈ Γ` given in ℚ^{ℓ2+ℓ3}.
    pub fn twist(&self, rho: &RatVector, w: &WittElem) -> Result<WittElem> {
        let r = self.padded(rho)?;
        Ok(w.shift(&r))
    }

    /// Whether `div(x^{−ρ} w) = 0`.
    pub fn s_member(&self, w: &WittElem, rho: &RatVector) -> Result<bool> {
        let r = self.padded(rho)?;
        Ok(self.divergence(&w.shift(&-&r)).is_zero())
    }

    /// `x^ρ (∂_q(u) ∂_p − ∂_p(u) ∂_q)` for random `u` and `p ≠ q`.
    pub fn s_random<R: Rng>(
        &self,
        rho: &RatVector,
        budget: &Budget,
        rng: &mut R,
    ) -> Result<WittElem> {
        let r = self.padded(rho)?;
        if self.l() < 2 {
            return Err(Error::Shape(
                "sampling divergence-free elements needs ℓ ≥ 2".into(),
            ));
        }
        let u = self.base.random_elem(budget, rng);
        let p = rng.gen_range(0..self.l());
        let mut q = rng.gen_range(0..self.l() - 1);
        if q >= p {
            q += 1;
        }
        Ok(self.s_from_potential(&u, p, q).shift(&r))
    }

    /// `∂_q(u) ∂_p − ∂_p(u) ∂_q`, always divergence-free.
    pub fn s_from_potential(&self, u: &AlgElem, p: usize, q: usize) -> WittElem {
        let mut w = self.zero();
        w.coeffs[p] = self.base.d_unchecked(q, u);
        w.coeffs[q] = self.base.d_unchecked(p, u).neg();
        w
    }

    pub fn random_elem<R: Rng>(&self, budget: &Budget, rng: &mut R) -> WittElem {
        // Spread at most `max_terms` monomials across the slots.
        let mut w = self.zero();
        let n = rng.gen_range(1..=budget.max_terms.max(1));
        for _ in 0..n {
            let p = rng.gen_range(0..self.l());
            let b = Budget {
                max_terms: 1,
                ..*budget
            };
            let a = self.base.random_elem(&b, rng);
            w.coeffs[p].add_assign(&a);
        }
        w
    }
}

/// `Σ_p u_p ∂_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittElem {
    pub coeffs: Vec<AlgElem>,
}

impl WittElem {
    pub fn zero(l: usize) -> Self {
        WittElem {
            coeffs: vec![AlgElem::zero(); l],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(AlgElem::is_zero)
    }

    pub fn add(&self, other: &WittElem) -> WittElem {
        WittElem {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &crate::rational::Rational) -> WittElem {
        WittElem {
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn shift(&self, delta: &RatVector) -> WittElem {
        WittElem {
            coeffs: self.coeffs.iter().map(|a| a.shift(delta)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpalg::Monomial;
    use crate::rational::int;

    fn t(spec: &WittSpec, i: &[u32]) -> AlgElem {
        AlgElem::monomial(spec.base().t(i.to_vec()))
    }

    #[test]
    fn euler_operator_on_square() {
        let s = WittSpec::new(1, 0, 0, Lattice::zero(0)).unwrap();
        let w = s.elem(t(&s, &[1]), 0);
        assert_eq!(s.apply(&w, &t(&s, &[2])), t(&s, &[2]).scale(&int(2)));
        assert!(s.apply(&w, &s.base().one()).is_zero());
    }

    #[test]
    fn bracket_examples() {
        let s = WittSpec::new(1, 0, 0, Lattice::zero(0)).unwrap();
        let t1d1 = s.elem(t(&s, &[1]), 0);
        let d1 = s.elem(s.base().one(), 0);
        assert_eq!(s.bracket(&t1d1, &d1), d1.scale(&int(-1)));
        assert!(s.bracket(&t1d1, &t1d1).is_zero());

        let s = WittSpec::new(0, 0, 1, Lattice::integral(1)).unwrap();
        let x = |n: i64| AlgElem::monomial(s.base().x(RatVector::from_ints(&[n])));
        assert_eq!(
            s.bracket(&s.elem(x(1), 0), &s.elem(x(2), 0)),
            s.elem(x(3), 0)
        );
    }

    #[test]
    fn divergence_and_s_membership() {
        let s = WittSpec::new(2, 0, 0, Lattice::zero(0)).unwrap();
        let rho = RatVector::zeros(0);
        assert_eq!(s.divergence(&s.elem(t(&s, &[1, 0]), 0)), s.base().one());
        assert!(s.divergence(&s.elem(s.base().one(), 1)).is_zero());

        let mut w = s.zero();
        w.coeffs[1] = t(&s, &[1, 0]);
        w.coeffs[0] = t(&s, &[0, 1]).neg();
        assert!(s.s_member(&w, &rho).unwrap());
        assert!(!s.s_member(&s.elem(t(&s, &[1, 0]), 0), &rho).unwrap());

        let w = s.s_from_potential(&t(&s, &[1, 1]), 0, 1);
        let mut expected = s.zero();
        expected.coeffs[0] = t(&s, &[1, 0]);
        expected.coeffs[1] = t(&s, &[0, 1]).neg();
        assert_eq!(w, expected);
        assert!(s.s_from_potential(&s.base().one(), 0, 1).is_zero());
    }

    #[test]
    fn twist_requires_group_element() {
        let s = WittSpec::new(1, 1, 1, Lattice::integral(2)).unwrap();
        let w = s.zero();
        assert!(matches!(
            s.s_member(&w, &RatVector(vec![crate::rational::rat(1, 2), int(0)])),
            Err(Error::NotInGroup(_))
        ));
    }

    #[test]
    fn example_2_19_layout() {
        let s = WittSpec::example_2_19(2).unwrap();
        assert!(s.validate().is_empty());
        // x^{e1} ∂_1 acting on t^{(1,0)}: ∂_1 = x-degree plus d/dt.
        let x1 = AlgElem::monomial(s.base().x(RatVector::from_ints(&[1, 0])));
        let w = s.elem(x1.clone(), 0);
        let m = Monomial::new(RatVector::from_ints(&[2, 0]), vec![1, 0]);
        let got = s.apply(&w, &AlgElem::monomial(m));
        let expected = AlgElem::from_terms([
            (Monomial::new(RatVector::from_ints(&[3, 0]), vec![1, 0]), int(2)),
            (Monomial::new(RatVector::from_ints(&[3, 0]), vec![0, 0]), int(1)),
        ]);
        assert_eq!(got, expected);
    }

    #[test]
    fn degenerate_gamma_is_reported() {
        let s = WittSpec::new(0, 0, 2, Lattice::from_ints(&[&[1, 0]], 2).unwrap()).unwrap();
        let v = s.validate();
        assert!(v.iter().any(|x| x.code == "2.10"));
    }
}
