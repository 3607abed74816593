//! The commutative semigroup algebra `A(Γ, J)`.
//!
//! A basis monomial `x^{γ,i}` pairs a group exponent `γ ∈ Γ ⊂ ℚ^{d0+d}` with
//! a semigroup exponent `i ∈ ℕ^d`. The derivation `∂_p` acts by
//! `∂_p x^{γ,i} = γ_{d0+p} x^{γ,i} + i_p x^{γ,i-e_p}`; the leading `d0`
//! coordinates of `γ` carry no derivation.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::rational::{int, rat, RatVector, Rational};

/// The semigroup attached to one derivation coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JFlag {
    /// `J_p = ℕ`
    Nat,
    /// `J_p = {0}`
    Zero,
}

/// One failed side condition, keyed by a short machine-readable code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: String,
    pub message: String,
}

impl Violation {
    pub fn new(code: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            code: code.into(),
            message: message.into(),
        }
    }
}

/// Bounds for random element generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_terms: usize,
    pub max_nat_exponent: u32,
    pub generator_coeff_bound: i64,
    pub coeff_bound: i64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_terms: 6,
            max_nat_exponent: 3,
            generator_coeff_bound: 3,
            coeff_bound: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub gamma: RatVector,
    pub i: Vec<u32>,
}

impl Monomial {
    pub fn new(gamma: RatVector, i: Vec<u32>) -> Self {
        Monomial { gamma, i }
    }

    /// `x^{0,0}`, the identity `1_A`.
    pub fn one(group_dim: usize, d: usize) -> Self {
        Monomial {
            gamma: RatVector::zeros(group_dim),
            i: vec![0; d],
        }
    }

    pub fn is_one(&self) -> bool {
        self.gamma.is_zero() && self.i.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            gamma: &self.gamma + &other.gamma,
            i: self.i.iter().zip(&other.i).map(|(a, b)| a + b).collect(),
        }
    }

    /// Shifts the group exponent by `delta`.
    pub fn shift(&self, delta: &RatVector) -> Monomial {
        Monomial {
            gamma: &self.gamma + delta,
            i: self.i.clone(),
        }
    }
}

/// A finite rational combination of monomials. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgElem {
    terms: BTreeMap<Monomial, Rational>,
}

impl AlgElem {
    pub fn zero() -> Self {
        AlgElem::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut e = AlgElem::zero();
        e.add_term(m, c);
        e
    }

    pub fn one(group_dim: usize, d: usize) -> Self {
        Self::monomial(Monomial::one(group_dim, d))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut e = AlgElem::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
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

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn remove_term(&mut self, m: &Monomial) {
        self.terms.remove(m);
    }

    pub fn add(&self, other: &AlgElem) -> AlgElem {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &AlgElem) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &AlgElem) -> AlgElem {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> AlgElem {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> AlgElem {
        if c.is_zero() {
            return AlgElem::zero();
        }
        AlgElem {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Multiplies by the monomial `x^{δ,0}`.
    pub fn shift(&self, delta: &RatVector) -> AlgElem {
        AlgElem {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.shift(delta), c.clone()))
                .collect(),
        }
    }

    /// Applies `f` to every term and sums the results.
    pub fn map_terms(&self, mut f: impl FnMut(&Monomial, &Rational, &mut AlgElem)) -> AlgElem {
        let mut out = AlgElem::zero();
        for (m, c) in &self.terms {
            f(m, c, &mut out);
        }
        out
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> AlgElem {
        AlgElem {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl FromIterator<(Monomial, Rational)> for AlgElem {
    fn from_iter<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        AlgElem::from_terms(iter)
    }
}

/// Data determining `A(Γ, J)`: `d` derivation coordinates, `d0` external
/// group coordinates, the lattice `Γ ⊂ ℚ^{d0+d}` and the flags `J`.
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    d: usize,
    ext_rank: usize,
    gamma: Lattice,
    j: Vec<JFlag>,
    euler_sets: Option<(Vec<usize>, Vec<usize>)>,
}

impl AlgebraSpec {
    pub fn new(gamma: Lattice, j: Vec<JFlag>, ext_rank: usize) -> Result<Self> {
        let d = j.len();
        if gamma.ambient_dim() != ext_rank + d {
            return Err(Error::DimensionMismatch {
                expected: ext_rank + d,
                found: gamma.ambient_dim(),
            });
        }
        Ok(AlgebraSpec {
            d,
            ext_rank,
            gamma,
            j,
            euler_sets: None,
        })
    }

    /// Attaches the Euler weighting sets `(℧1, ℧2)` (0-based coordinates).
    pub fn with_euler_sets(mut self, o1: Vec<usize>, o2: Vec<usize>) -> Result<Self> {
        for &p in o1.iter().chain(&o2) {
            if p >= self.d {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    bound: self.d,
                });
            }
        }
        if o1.iter().any(|p| o2.contains(p)) {
            return Err(Error::Shape("Euler weighting sets must be disjoint".into()));
        }
        self.euler_sets = Some((o1, o2));
        Ok(self)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ext_rank(&self) -> usize {
        self.ext_rank
    }

    pub fn group_dim(&self) -> usize {
        self.ext_rank + self.d
    }

    pub fn gamma(&self) -> &Lattice {
        &self.gamma
    }

    pub fn j(&self) -> &[JFlag] {
        &self.j
    }

    pub fn euler_sets(&self) -> Option<(&[usize], &[usize])> {
        self.euler_sets
            .as_ref()
            .map(|(a, b)| (a.as_slice(), b.as_slice()))
    }

    pub fn one(&self) -> AlgElem {
        AlgElem::one(self.group_dim(), self.d)
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.group_dim(), self.d)
    }

    /// `x^{γ,0}`.
    pub fn x(&self, gamma: RatVector) -> Monomial {
        Monomial::new(gamma, vec![0; self.d])
    }

    /// `x^{0,i}`.
    pub fn t(&self, i: Vec<u32>) -> Monomial {
        Monomial::new(RatVector::zeros(self.group_dim()), i)
    }

    /// Whether `X_p(Γ) + J_p ≠ {0}` for the derivation coordinate `p`.
    pub fn coordinate_nontrivial(&self, p: usize) -> bool {
        self.j[p] == JFlag::Nat || self.gamma.projection_nonzero(self.ext_rank + p)
    }

    /// Reports every derivation coordinate where both `X_p(Γ)` and `J_p`
    /// are trivial, tagged with `code`. Coordinates in `relaxed` are skipped.
    pub fn validate_coordinates(&self, code: &str, relaxed: &[usize]) -> Vec<Violation> {
        (0..self.d)
            .filter(|p| !relaxed.contains(p) && !self.coordinate_nontrivial(*p))
            .map(|p| {
                Violation::new(
                    code,
                    format!("coordinate {}: X_p(Γ) and J_p are both trivial", p + 1),
                )
            })
            .collect()
    }

    pub fn validate_nondegenerate(&self, code: &str) -> Vec<Violation> {
        if self.gamma.is_nondegenerate() {
            Vec::new()
        } else {
            vec![Violation::new(
                code,
                format!(
                    "Γ has rank {} but must span ℚ^{}",
                    self.gamma.rank(),
                    self.gamma.ambient_dim()
                ),
            )]
        }
    }

    /// Checks that `m` is a basis monomial of this algebra.
    pub fn check_monomial(&self, m: &Monomial) -> Result<()> {
        if m.gamma.dim() != self.group_dim() || m.i.len() != self.d {
            return Err(Error::SpecMismatch(format!(
                "monomial has shape ({}, {}) but the algebra needs ({}, {})",
                m.gamma.dim(),
                m.i.len(),
                self.group_dim(),
                self.d
            )));
        }
        if !self.gamma.contains_unchecked(m.gamma.as_slice()) {
            return Err(Error::SpecMismatch(format!(
                "group exponent {} is not in Γ",
                m.gamma
            )));
        }
        if let Some(p) = (0..self.d).find(|&p| self.j[p] == JFlag::Zero && m.i[p] != 0) {
            return Err(Error::SpecMismatch(format!(
                "t-exponent {} is nonzero but J_{} = {{0}}",
                p + 1,
                p + 1
            )));
        }
        Ok(())
    }

    pub fn check(&self, a: &AlgElem) -> Result<()> {
        a.terms().try_for_each(|(m, _)| self.check_monomial(m))
    }

    /// `∂_p` on a single monomial, accumulated into `out` with factor `c`.
    pub fn derive_monomial_into(&self, p: usize, m: &Monomial, c: &Rational, out: &mut AlgElem) {
        let g = &m.gamma[self.ext_rank + p];
        if !g.is_zero() {
            out.add_term(m.clone(), c * g);
        }
        if m.i[p] > 0 {
            let mut lowered = m.clone();
            lowered.i[p] -= 1;
            out.add_term(lowered, c * int(m.i[p] as i64));
        }
    }

    /// `∂_p` for a 0-based derivation coordinate `p`.
    pub fn derive(&self, p: usize, a: &AlgElem) -> Result<AlgElem> {
        if p >= self.d {
            return Err(Error::IndexOutOfRange {
                index: p,
                bound: self.d,
            });
        }
        Ok(self.d_unchecked(p, a))
    }

    pub(crate) fn d_unchecked(&self, p: usize, a: &AlgElem) -> AlgElem {
        a.map_terms(|m, c, out| self.derive_monomial_into(p, m, c, out))
    }

    /// `(∂_p + κ)(a)`.
    pub(crate) fn d_shifted(&self, p: usize, kappa: &Rational, a: &AlgElem) -> AlgElem {
        let mut out = self.d_unchecked(p, a);
        out.add_assign(&a.scale(kappa));
        out
    }

    /// Euler weight of a monomial: `Σ_{℧1} γ_p + Σ_{℧2} i_q`.
    pub fn euler_weight(&self, m: &Monomial) -> Result<Rational> {
        let (o1, o2) = self.euler_sets().ok_or(Error::MissingEulerSets)?;
        let mut w = Rational::zero();
        for &p in o1 {
            w += &m.gamma[self.ext_rank + p];
        }
        for &q in o2 {
            w += int(m.i[q] as i64);
        }
        Ok(w)
    }

    pub fn euler_derive(&self, a: &AlgElem) -> Result<AlgElem> {
        let mut out = AlgElem::zero();
        for (m, c) in a.terms() {
            out.add_term(m.clone(), c * self.euler_weight(m)?);
        }
        Ok(out)
    }

    /// A random element drawn according to `budget`.
    pub fn random_elem<R: Rng>(&self, budget: &Budget, rng: &mut R) -> AlgElem {
        let n = rng.gen_range(1..=budget.max_terms.max(1));
        let mut out = AlgElem::zero();
        for _ in 0..n {
            let m = self.random_monomial(budget, rng);
            out.add_term(m, random_coeff(budget, rng));
        }
        out
    }

    pub fn random_monomial<R: Rng>(&self, budget: &Budget, rng: &mut R) -> Monomial {
        let b = budget.generator_coeff_bound;
        let mut gamma = RatVector::zeros(self.group_dim());
        for g in self.gamma.generators() {
            let k = rng.gen_range(-b..=b);
            if k != 0 {
                gamma = &gamma + &g.scale(&int(k));
            }
        }
        let i = self
            .j
            .iter()
            .map(|f| match f {
                JFlag::Nat => rng.gen_range(0..=budget.max_nat_exponent),
                JFlag::Zero => 0,
            })
            .collect();
        Monomial::new(gamma, i)
    }
}

/// A nonzero rational with numerator and denominator bounded by
/// `budget.coeff_bound`.
pub fn random_coeff<R: Rng>(budget: &Budget, rng: &mut R) -> Rational {
    let b = budget.coeff_bound.max(1);
    let mut n = rng.gen_range(1..=b);
    if rng.gen_bool(0.5) {
        n = -n;
    }
    rat(n, rng.gen_range(1..=b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(xs: &[Rational]) -> RatVector {
        RatVector(xs.to_vec())
    }

    fn half_spec() -> AlgebraSpec {
        let l = Lattice::new(vec![v(&[rat(1, 2), int(0)]), v(&[int(0), int(1)])], 2).unwrap();
        AlgebraSpec::new(l, vec![JFlag::Nat, JFlag::Nat], 0).unwrap()
    }

    #[test]
    fn coordinate_validation() {
        let z2 = Lattice::integral(2);
        let s = AlgebraSpec::new(z2, vec![JFlag::Zero, JFlag::Zero], 0).unwrap();
        assert!(s.validate_coordinates("3.5", &[]).is_empty());

        let col = Lattice::from_ints(&[&[0, 1]], 2).unwrap();
        let s = AlgebraSpec::new(col.clone(), vec![JFlag::Zero, JFlag::Zero], 0).unwrap();
        let viol = s.validate_coordinates("3.5", &[]);
        assert_eq!(viol.len(), 1);
        assert_eq!(viol[0].code, "3.5");
        assert!(viol[0].message.starts_with("coordinate 1"));

        let s = AlgebraSpec::new(col, vec![JFlag::Nat, JFlag::Zero], 0).unwrap();
        assert!(s.validate_coordinates("3.5", &[]).is_empty());
    }

    #[test]
    fn product_adds_exponents() {
        let s = half_spec();
        let a = AlgElem::monomial(Monomial::new(v(&[rat(1, 2), int(0)]), vec![1, 0]));
        let b = AlgElem::monomial(Monomial::new(v(&[rat(1, 2), int(0)]), vec![0, 2]));
        let p = a.mul(&b);
        assert_eq!(
            p,
            AlgElem::monomial(Monomial::new(v(&[int(1), int(0)]), vec![1, 2]))
        );
        assert_eq!(s.one().mul(&a), a);

        let alpha = AlgElem::monomial(s.x(v(&[rat(1, 2), int(0)])));
        let beta = AlgElem::monomial(s.x(v(&[int(0), int(1)])));
        let sum = alpha.add(&beta);
        let expected = AlgElem::from_terms([
            (s.x(v(&[int(1), int(0)])), int(1)),
            (s.x(v(&[rat(1, 2), int(1)])), int(2)),
            (s.x(v(&[int(0), int(2)])), int(1)),
        ]);
        assert_eq!(sum.mul(&sum), expected);
    }

    #[test]
    fn derivation_convention() {
        let s = half_spec();
        let a = AlgElem::monomial(Monomial::new(v(&[rat(1, 2), int(0)]), vec![2, 0]));
        let expected = AlgElem::from_terms([
            (Monomial::new(v(&[rat(1, 2), int(0)]), vec![2, 0]), rat(1, 2)),
            (Monomial::new(v(&[rat(1, 2), int(0)]), vec![1, 0]), int(2)),
        ]);
        assert_eq!(s.derive(0, &a).unwrap(), expected);
        assert!(s.derive(0, &s.one()).unwrap().is_zero());
        assert!(matches!(
            s.derive(2, &a),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn external_coordinates_carry_no_derivation() {
        let l = Lattice::integral(3);
        let s = AlgebraSpec::new(l, vec![JFlag::Nat, JFlag::Nat], 1).unwrap();
        let a = AlgElem::monomial(s.x(RatVector::from_ints(&[5, 0, 0])));
        assert!(s.derive(0, &a).unwrap().is_zero());
        assert!(s.derive(1, &a).unwrap().is_zero());
        let b = AlgElem::monomial(s.x(RatVector::from_ints(&[5, 2, 0])));
        assert_eq!(s.derive(0, &b).unwrap(), b.scale(&int(2)));
    }

    #[test]
    fn euler() {
        let s = AlgebraSpec::new(Lattice::zero(2), vec![JFlag::Nat, JFlag::Nat], 0)
            .unwrap()
            .with_euler_sets(vec![], vec![0, 1])
            .unwrap();
        let t1 = AlgElem::monomial(s.t(vec![1, 0]));
        assert_eq!(s.euler_derive(&t1).unwrap(), t1);
        assert!(s.euler_derive(&s.one()).unwrap().is_zero());
        assert!(matches!(
            half_spec().euler_derive(&t1),
            Err(Error::MissingEulerSets)
        ));
    }

    #[test]
    fn vector_space_ops() {
        let s = half_spec();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = s.random_elem(&Budget::default(), &mut rng);
        assert!(a.add(&a.neg()).is_zero());
        assert!(a.scale(&int(0)).is_zero());
        let x = AlgElem::monomial(s.x(v(&[int(1), int(0)])));
        assert_eq!(x.add(&x), x.scale(&int(2)));
    }

    #[test]
    fn random_elements_are_members_and_reproducible() {
        let s = AlgebraSpec::new(
            Lattice::integral(2),
            vec![JFlag::Nat, JFlag::Zero],
            0,
        )
        .unwrap();
        let budget = Budget {
            max_terms: 1,
            ..Budget::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let a = s.random_elem(&budget, &mut rng);
        assert!(a.len() <= 1);
        s.check(&a).unwrap();

        let draw = || {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            s.random_elem(&Budget::default(), &mut rng)
        };
        assert_eq!(draw(), draw());
        s.check(&draw()).unwrap();
    }

    #[test]
    fn membership_check_rejects_foreign_monomials() {
        let s = AlgebraSpec::new(Lattice::integral(2), vec![JFlag::Nat, JFlag::Zero], 0).unwrap();
        let bad_gamma = AlgElem::monomial(s.x(v(&[rat(1, 2), int(0)])));
        assert!(matches!(s.check(&bad_gamma), Err(Error::SpecMismatch(_))));
        let bad_t = AlgElem::monomial(s.t(vec![0, 1]));
        assert!(matches!(s.check(&bad_t), Err(Error::SpecMismatch(_))));
    }
}
