//! The generalized Weyl algebra `𝔸 = Σ_n A·D^n ⊂ End A` over a Witt-type
//! algebra `A = A(ℓ1,ℓ2,ℓ3;Γ)`, stored in normal order (all functions to
//! the left of all derivations), and the involution `τ`.

pub mod matrix;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::grpalg::{random_coeff, AlgElem, Budget, Monomial};
use crate::rational::Rational;
use crate::witt::WittSpec;

pub use matrix::{IdealPattern, WeylMatrix};

/// Key of a normal-ordered term `x^{γ,i} ∂^n`.
pub type WeylKey = (Monomial, Vec<u32>);

/// A finite combination `Σ c · x^{γ,i} ∂^n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeylOp {
    terms: BTreeMap<WeylKey, Rational>,
}

impl WeylOp {
    pub fn zero() -> Self {
        WeylOp::default()
    }

    pub fn term(m: Monomial, n: Vec<u32>, c: Rational) -> Self {
        let mut w = WeylOp::zero();
        w.add_term(m, n, c);
        w
    }

    /// `a · ∂^0`.
    pub fn from_alg(a: &AlgElem, l: usize) -> Self {
        let mut w = WeylOp::zero();
        for (m, c) in a.terms() {
            w.add_term(m.clone(), vec![0; l], c.clone());
        }
        w
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (WeylKey, Rational)>) -> Self {
        let mut w = WeylOp::zero();
        for ((m, n), c) in terms {
            w.add_term(m, n, c);
        }
        w
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylKey, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, n: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((m, n)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &WeylOp) {
        for ((m, n), c) in &other.terms {
            self.add_term(m.clone(), n.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &WeylOp) -> WeylOp {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &WeylOp) -> WeylOp {
        let mut out = self.clone();
        for ((m, n), c) in &other.terms {
            out.add_term(m.clone(), n.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> WeylOp {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> WeylOp {
        if c.is_zero() {
            return WeylOp::zero();
        }
        WeylOp {
            terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
        }
    }

    /// Coefficient of `1 = x^{0,0} ∂^0`.
    pub fn constant_coeff(&self) -> Rational {
        self.terms
            .iter()
            .find(|((m, n), _)| m.is_one() && n.iter().all(|&e| e == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    fn max_order(&self) -> Option<u32> {
        self.terms.keys().map(|(_, n)| n.iter().sum()).max()
    }
}

fn binom(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Every multi-index `k` with `k ≤ m` componentwise.
fn sub_indices(m: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(m.len())];
    for &mp in m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=mp).map(move |kp| {
                    let mut v = prefix.clone();
                    v.push(kp);
                    v
                })
            })
            .collect();
    }
    out
}

/// The generalized Weyl algebra attached to a Witt-type specification.
#[derive(Clone, Debug)]
pub struct WeylAlgebra {
    witt: WittSpec,
}

impl WeylAlgebra {
    pub fn new(witt: WittSpec) -> Self {
        WeylAlgebra { witt }
    }

    pub fn witt(&self) -> &WittSpec {
        &self.witt
    }

    pub fn l(&self) -> usize {
        self.witt.l()
    }

    pub fn one(&self) -> WeylOp {
        WeylOp::term(self.witt.base().one_monomial(), vec![0; self.l()], Rational::one())
    }

    /// `∂^n`.
    pub fn d_pow(&self, n: Vec<u32>) -> WeylOp {
        WeylOp::term(self.witt.base().one_monomial(), n, Rational::one())
    }

    /// `x^{0,i}`: a pure `t` monomial as an operator.
    pub fn t(&self, i: Vec<u32>) -> WeylOp {
        WeylOp::term(self.witt.base().t(i), vec![0; self.l()], Rational::one())
    }

    pub fn check(&self, a: &WeylOp) -> Result<()> {
        for ((m, n), _) in a.terms() {
            self.witt.base().check_monomial(m)?;
            if n.len() != self.l() {
                return Err(Error::SpecMismatch(format!(
                    "expected {} derivation exponents, found {}",
                    self.l(),
                    n.len()
                )));
            }
        }
        Ok(())
    }

    /// `∂_p^k` on a monomial: `Σ_j C(k,j) γ_p^{k−j} (i_p)_j x^{γ, i − j e_p}`.
    fn d_power_monomial(&self, p: usize, k: u32, m: &Monomial, c: &Rational, out: &mut AlgElem) {
        let g = &m.gamma[p];
        let ip = m.i[p];
        let mut falling = BigInt::one();
        for j in 0..=k.min(ip) {
            if j > 0 {
                falling *= BigInt::from(ip - (j - 1));
            }
            let gpow = if k - j == 0 {
                Rational::one()
            } else if g.is_zero() {
                continue;
            } else {
                num_traits::pow(g.clone(), (k - j) as usize)
            };
            let coeff = c * gpow * Rational::from_integer(binom(k, j) * &falling);
            let mut lowered = m.clone();
            lowered.i[p] -= j;
            out.add_term(lowered, coeff);
        }
    }

    /// `∂^k(a)`.
    pub fn d_power(&self, k: &[u32], a: &AlgElem) -> AlgElem {
        let mut cur = a.clone();
        for (p, &kp) in k.iter().enumerate() {
            if kp == 0 || cur.is_zero() {
                continue;
            }
            cur = cur.map_terms(|m, c, out| self.d_power_monomial(p, kp, m, c, out));
        }
        cur
    }

    /// Normal-ordered product via the multi-Leibniz rule.
    pub fn mul(&self, a: &WeylOp, b: &WeylOp) -> WeylOp {
        let mut out = WeylOp::zero();
        // Group the right factor by derivation exponent so ∂^k(v) is shared.
        let mut right: BTreeMap<&Vec<u32>, AlgElem> = BTreeMap::new();
        for ((m, n), c) in b.terms() {
            right.entry(n).or_default().add_term(m.clone(), c.clone());
        }
        for ((u, m_exp), cu) in a.terms() {
            for k in sub_indices(m_exp) {
                let mut weight = BigInt::one();
                for (mp, kp) in m_exp.iter().zip(&k) {
                    weight *= binom(*mp, *kp);
                }
                let weight = Rational::from_integer(weight) * cu;
                for (n_exp, v) in &right {
                    let dv = self.d_power(&k, v);
                    let total: Vec<u32> = m_exp
                        .iter()
                        .zip(&k)
                        .zip(n_exp.iter())
                        .map(|((mp, kp), np)| mp - kp + np)
                        .collect();
                    for (mv, cv) in dv.terms() {
                        out.add_term(u.mul(mv), total.clone(), &weight * cv);
                    }
                }
            }
        }
        out
    }

    /// `Σ c x^{γ,i} ∂^n(u)`.
    pub fn apply(&self, a: &WeylOp, u: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero();
        for ((m, n), c) in a.terms() {
            let du = self.d_power(n, u);
            for (mu, cu) in du.terms() {
                out.add_term(m.mul(mu), c * cu);
            }
        }
        out
    }

    pub fn commutator(&self, a: &WeylOp, b: &WeylOp) -> WeylOp {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    fn check_ell_prime(&self, ell_prime: usize) -> Result<()> {
        if ell_prime > self.witt.l1() {
            return Err(Error::IndexOutOfRange {
                index: ell_prime,
                bound: self.witt.l1() + 1,
            });
        }
        Ok(())
    }

    /// `τ(u t̄^{m'} ∂̄^{m''} ∂̃^n) = (−∂̃)^n · u t̄^{m''} ∂̄^{m'}`, where the
    /// barred factors use the first `ℓ'` coordinates.
    pub fn tau(&self, a: &WeylOp, ell_prime: usize) -> Result<WeylOp> {
        self.check_ell_prime(ell_prime)?;
        let l = self.l();
        let mut out = WeylOp::zero();
        for ((m, n), c) in a.terms() {
            let mut swapped_m = m.clone();
            let mut swapped_n = vec![0; l];
            swapped_m.i[..ell_prime].copy_from_slice(&n[..ell_prime]);
            swapped_n[..ell_prime].copy_from_slice(&m.i[..ell_prime]);
            let core = WeylOp::term(swapped_m, swapped_n, c.clone());
            let mut tail = vec![0; l];
            tail[ell_prime..].copy_from_slice(&n[ell_prime..]);
            let odd = tail.iter().map(|&e| e as u64).sum::<u64>() % 2 == 1;
            let prefix = if odd {
                self.d_pow(tail).neg()
            } else {
                self.d_pow(tail)
            };
            out.add_assign(&self.mul(&prefix, &core));
        }
        Ok(out)
    }

    /// `∂̃^n` for `n ∈ ℕ^{ℓ−ℓ'}`.
    pub fn d_tilde(&self, ell_prime: usize, n: &[u32]) -> WeylOp {
        let mut full = vec![0; ell_prime];
        full.extend_from_slice(n);
        self.d_pow(full)
    }

    /// Finds `a` with `∂̃^{left} · a · ∂̃^{right} = w`, if any.
    pub fn divide(
        &self,
        w: &WeylOp,
        ell_prime: usize,
        left: &[u32],
        right: &[u32],
    ) -> Option<WeylOp> {
        let mut b = WeylOp::zero();
        for ((m, n), c) in w.terms() {
            let mut reduced = n.clone();
            for (q, &r) in right.iter().enumerate() {
                let p = ell_prime + q;
                if reduced[p] < r {
                    return None;
                }
                reduced[p] -= r;
            }
            b.add_term(m.clone(), reduced, c.clone());
        }
        if left.iter().all(|&e| e == 0) {
            return Some(b);
        }
        let prefix = self.d_tilde(ell_prime, left);
        let mut residual = b;
        let mut quotient = WeylOp::zero();
        while let Some(top) = residual.max_order() {
            let mut step = WeylOp::zero();
            for ((m, n), c) in residual.terms() {
                if n.iter().sum::<u32>() != top {
                    continue;
                }
                let mut reduced = n.clone();
                for (q, &r) in left.iter().enumerate() {
                    let p = ell_prime + q;
                    if reduced[p] < r {
                        return None;
                    }
                    reduced[p] -= r;
                }
                step.add_term(m.clone(), reduced, c.clone());
            }
            residual = residual.sub(&self.mul(&prefix, &step));
            quotient.add_assign(&step);
        }
        Some(quotient)
    }

    /// A random operator: random monomials with random derivation exponents.
    pub fn random_op<R: Rng>(&self, budget: &Budget, rng: &mut R) -> WeylOp {
        let n = rng.gen_range(1..=budget.max_terms.max(1));
        let mut out = WeylOp::zero();
        for _ in 0..n {
            let m = self.witt.base().random_monomial(budget, rng);
            let d = (0..self.l())
                .map(|_| rng.gen_range(0..=budget.max_nat_exponent))
                .collect();
            out.add_term(m, d, random_coeff(budget, rng));
        }
        out
    }

    /// `∂_i t_j − t_j ∂_i` for the pure `t` coordinates `i, j < ℓ1 + ℓ2`.
    pub fn canonical_commutator(&self, i: usize, j: usize) -> WeylOp {
        let mut e = vec![0; self.l()];
        e[i] = 1;
        let mut tj = vec![0; self.l()];
        tj[j] = 1;
        self.commutator(&self.d_pow(e), &self.t(tj))
    }

    /// Scalar multiple of the identity operator.
    pub fn scalar(&self, c: &Rational) -> WeylOp {
        self.one().scale(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;
    use crate::rational::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn classical(l: usize) -> WeylAlgebra {
        WeylAlgebra::new(WittSpec::new(l, 0, 0, Lattice::zero(0)).unwrap())
    }

    #[test]
    fn defining_relations() {
        let w = classical(2);
        assert_eq!(w.canonical_commutator(0, 0), w.one());
        assert!(w.canonical_commutator(0, 1).is_zero());
        let d1 = w.d_pow(vec![1, 0]);
        let t1 = w.t(vec![1, 0]);
        assert_eq!(
            w.mul(&d1, &t1),
            WeylOp::from_terms([
                ((w.witt().base().t(vec![1, 0]), vec![1, 0]), int(1)),
                ((w.witt().base().one_monomial(), vec![0, 0]), int(1)),
            ])
        );
        assert_eq!(
            w.mul(&t1, &d1),
            WeylOp::term(w.witt().base().t(vec![1, 0]), vec![1, 0], int(1))
        );
        let d1sq = w.d_pow(vec![2, 0]);
        assert_eq!(
            w.mul(&d1sq, &t1),
            WeylOp::from_terms([
                ((w.witt().base().t(vec![1, 0]), vec![2, 0]), int(1)),
                ((w.witt().base().one_monomial(), vec![1, 0]), int(2)),
            ])
        );
    }

    #[test]
    fn action_and_composition() {
        let w = classical(1);
        let op = WeylOp::term(w.witt().base().t(vec![1]), vec![1], int(1));
        let t2 = AlgElem::monomial(w.witt().base().t(vec![2]));
        assert_eq!(w.apply(&op, &t2), t2.scale(&int(2)));
        assert_eq!(w.apply(&w.one(), &t2), t2);

        let spec = WittSpec::new(1, 1, 1, Lattice::integral(2)).unwrap();
        let w = WeylAlgebra::new(spec);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let bud = Budget {
            max_terms: 3,
            max_nat_exponent: 2,
            ..Budget::default()
        };
        for _ in 0..10 {
            let a = w.random_op(&bud, &mut rng);
            let b = w.random_op(&bud, &mut rng);
            let u = w.witt().base().random_elem(&bud, &mut rng);
            assert_eq!(w.apply(&w.mul(&a, &b), &u), w.apply(&a, &w.apply(&b, &u)));
        }
    }

    #[test]
    fn tau_examples() {
        let w = classical(1);
        let d1 = w.d_pow(vec![1]);
        let t1 = w.t(vec![1]);
        assert_eq!(w.tau(&d1, 1).unwrap(), t1);
        assert_eq!(w.tau(&t1, 1).unwrap(), d1);
        let t1d1 = WeylOp::term(w.witt().base().t(vec![1]), vec![1], int(1));
        assert_eq!(w.tau(&t1d1, 1).unwrap(), t1d1);
        // ℓ' = 0: formal adjoint, ∂ ↦ −∂.
        assert_eq!(w.tau(&d1, 0).unwrap(), d1.neg());
        assert!(w.tau(&d1, 2).is_err());
    }

    #[test]
    fn division() {
        let w = classical(2);
        let b = w.witt().base();
        let t1d2sq = WeylOp::term(b.t(vec![1, 0]), vec![0, 2], int(1));
        let with_tail = t1d2sq.add(&WeylOp::term(b.one_monomial(), vec![0, 1], int(2)));
        assert_eq!(w.divide(&with_tail, 1, &[1], &[1]), None);
        assert_eq!(w.divide(&t1d2sq, 1, &[1], &[1]), Some(w.t(vec![1, 0])));

        // ∂_2 t_2 ∂_2 = t_2 ∂_2² + ∂_2, so the quotient is t_2.
        let t2 = w.t(vec![0, 1]);
        let d2 = w.d_pow(vec![0, 1]);
        let prod = w.mul(&w.mul(&d2, &t2), &d2);
        assert_eq!(w.divide(&prod, 1, &[1], &[1]), Some(t2));
    }
}
