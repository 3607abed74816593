//! Block-type brackets on `A(Γ, J)`: Class I on `A_2`, Class II on `A_4`,
//! and the Class III Lie superalgebra on `A_2 × A_2`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::grpalg::{AlgElem, AlgebraSpec, Budget, JFlag, Monomial, Violation};
use crate::lattice::Lattice;
use crate::rational::{int, rat, RatVector, Rational};

/// `σ1 = (0,1)`.
pub fn sigma1() -> RatVector {
    RatVector::from_ints(&[0, 1])
}

/// `σ2 = (0,2)`.
pub fn sigma2() -> RatVector {
    RatVector::from_ints(&[0, 2])
}

/// `ℤ^n + ℤ·(1/m)(e_1 + … + e_s)`, with the fractional diagonal on the first
/// `s` coordinates.
pub fn diagonal_extension(n: usize, s: usize, m: i64) -> Result<Lattice> {
    if m <= 0 {
        return Err(Error::SpecFile(format!("m must be positive, got {m}")));
    }
    let mut gens: Vec<RatVector> = (0..n).map(|i| RatVector::unit(n, i)).collect();
    let mut diag = RatVector::zeros(n);
    for x in diag.0.iter_mut().take(s) {
        *x = rat(1, m);
    }
    gens.push(diag);
    Lattice::new(gens, n)
}

/// `[u,v] = ∂_1(u)∂_2(v) − ∂_2(u)∂_1(v) + u∂_1(v) − ∂_1(u)v` on an algebra
/// with two derivation coordinates.
fn class_one(base: &AlgebraSpec, u: &AlgElem, v: &AlgElem) -> AlgElem {
    let d1u = base.d_unchecked(0, u);
    let d2u = base.d_unchecked(1, u);
    let d1v = base.d_unchecked(0, v);
    let d2v = base.d_unchecked(1, v);
    let mut out = d1u.mul(&d2v);
    out.add_assign(&d2u.mul(&d1v).neg());
    out.add_assign(&u.mul(&d1v));
    out.add_assign(&d1u.mul(v).neg());
    out
}

fn require_two(base: &AlgebraSpec) -> Result<()> {
    if base.d() != 2 || base.ext_rank() != 0 {
        return Err(Error::Shape(
            "this family needs exactly two derivation coordinates".into(),
        ));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct BlockISpec {
    base: AlgebraSpec,
    sigma1_in: bool,
    sigma2_in: bool,
}

impl BlockISpec {
    pub fn new(base: AlgebraSpec) -> Result<Self> {
        require_two(&base)?;
        let sigma1_in = base.gamma().contains_unchecked(sigma1().as_slice());
        let sigma2_in = base.gamma().contains_unchecked(sigma2().as_slice());
        Ok(BlockISpec {
            base,
            sigma1_in,
            sigma2_in,
        })
    }

    /// `Γ = ℤ² + ℤ(1/m, 1/m)`, `J = ℕ²`: the algebra spanned by
    /// `t_1^{±1}, t_2^{±1}, t_3, t_4, (t_1 t_2)^{1/m}`.
    pub fn example_3_1(m: i64) -> Result<Self> {
        let base = AlgebraSpec::new(diagonal_extension(2, 2, m)?, vec![JFlag::Nat; 2], 0)?;
        Self::new(base)
    }

    pub fn base(&self) -> &AlgebraSpec {
        &self.base
    }

    pub fn sigma1_in_gamma(&self) -> bool {
        self.sigma1_in
    }

    pub fn sigma2_in_gamma(&self) -> bool {
        self.sigma2_in
    }

    pub fn validate(&self) -> Vec<Violation> {
        self.base.validate_coordinates("3.5", &[])
    }

    pub fn bracket(&self, u: &AlgElem, v: &AlgElem) -> AlgElem {
        class_one(&self.base, u, v)
    }

    /// `x^{σ1,0}`, or `None` when `σ1 ∉ Γ`.
    pub fn central(&self) -> Option<Monomial> {
        self.sigma1_in.then(|| self.base.x(sigma1()))
    }

    /// Representative modulo `𝔽x^{σ1,0}`.
    pub fn quotient_rep(&self, a: &AlgElem) -> AlgElem {
        match self.central() {
            Some(c) => a.filter(|m| *m != c),
            None => a.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BlockIISpec {
    base: AlgebraSpec,
    kappa: RatVector,
    sigma: RatVector,
    rho: RatVector,
}

impl BlockIISpec {
    pub fn new(base: AlgebraSpec, kappa: RatVector) -> Result<Self> {
        if base.d() != 4 || base.ext_rank() != 0 {
            return Err(Error::Shape(
                "Class II needs exactly four derivation coordinates".into(),
            ));
        }
        if kappa.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: kappa.dim(),
            });
        }
        let k = &kappa.0;
        let sigma = RatVector(vec![int(0), int(0), -&k[2], -&k[3]]);
        let rho = RatVector(vec![
            k[0].clone(),
            k[1].clone(),
            &k[2] * int(-2),
            &k[3] * int(-2),
        ]);
        Ok(BlockIISpec {
            base,
            kappa,
            sigma,
            rho,
        })
    }

    /// `Γ = ℤ⁴ + ℤ(1/m)(1,1,1,1)`, `J = ℕ⁴`, `κ = (n,n,n,n)`.
    pub fn example_3_2(m: i64, n: i64) -> Result<Self> {
        let base = AlgebraSpec::new(diagonal_extension(4, 4, m)?, vec![JFlag::Nat; 4], 0)?;
        Self::new(base, RatVector::from_ints(&[n, n, n, n]))
    }

    pub fn base(&self) -> &AlgebraSpec {
        &self.base
    }

    pub fn kappa(&self) -> &RatVector {
        &self.kappa
    }

    /// `σ = (0,0,−κ3,−κ4)`.
    pub fn sigma(&self) -> &RatVector {
        &self.sigma
    }

    /// `ρ = (κ1,κ2,−2κ3,−2κ4)`.
    pub fn rho(&self) -> &RatVector {
        &self.rho
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.base.validate_coordinates("3.5", &[]);
        let g = self.base.gamma();
        for p in 0..4 {
            if !g.contains_unchecked(RatVector::unit(4, p).as_slice()) {
                out.push(Violation::new(
                    "3.19",
                    format!("Γ must contain ℤ⁴ but misses the unit vector e_{}", p + 1),
                ));
            }
        }
        let k = &self.kappa.0;
        let halves = [
            RatVector(vec![k[0].clone(), k[1].clone(), int(0), int(0)]),
            RatVector(vec![int(0), int(0), k[2].clone(), k[3].clone()]),
        ];
        for h in halves {
            if h.is_zero() {
                out.push(Violation::new("3.20", format!("{h} must be nonzero")));
            } else if !g.contains_unchecked(h.as_slice()) {
                out.push(Violation::new("3.20", format!("{h} must lie in Γ")));
            }
        }
        out
    }

    fn poisson_part(&self, u: &AlgElem, v: &AlgElem) -> AlgElem {
        let b = &self.base;
        let mut out = b.d_unchecked(0, u).mul(&b.d_unchecked(1, v));
        out.add_assign(&b.d_unchecked(1, u).mul(&b.d_unchecked(0, v)).neg());
        out.shift(&self.kappa)
    }

    /// `x^κ(∂_1u∂_2v − ∂_2u∂_1v) + (∂_3+κ3)(u)(∂_4+κ4)(v) − (∂_4+κ4)(u)(∂_3+κ3)(v)`.
    pub fn bracket(&self, u: &AlgElem, v: &AlgElem) -> AlgElem {
        let b = &self.base;
        let k = &self.kappa.0;
        let mut out = self.poisson_part(u, v);
        out.add_assign(&b.d_shifted(2, &k[2], u).mul(&b.d_shifted(3, &k[3], v)));
        out.add_assign(&b.d_shifted(3, &k[3], u).mul(&b.d_shifted(2, &k[2], v)).neg());
        out
    }

    /// The printed variant whose trailing products feed `u` into all four
    /// slots. Kept only to exhibit why it cannot be the intended bracket.
    pub fn bracket_literal(&self, u: &AlgElem, v: &AlgElem) -> AlgElem {
        let b = &self.base;
        let k = &self.kappa.0;
        let mut out = self.poisson_part(u, v);
        out.add_assign(&b.d_shifted(2, &k[2], u).mul(&b.d_shifted(3, &k[3], u)));
        out.add_assign(&b.d_shifted(3, &k[3], u).mul(&b.d_shifted(2, &k[2], u)).neg());
        out
    }

    /// `x^{σ,0}`.
    pub fn central(&self) -> Option<Monomial> {
        self.base
            .gamma()
            .contains_unchecked(self.sigma.as_slice())
            .then(|| self.base.x(self.sigma.clone()))
    }

    pub fn quotient_rep(&self, a: &AlgElem) -> AlgElem {
        match self.central() {
            Some(c) => a.filter(|m| *m != c),
            None => a.clone(),
        }
    }
}

/// A ℤ₂-graded pair `u_(0) + v_(1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SuperElem {
    pub even: AlgElem,
    pub odd: AlgElem,
}

impl SuperElem {
    pub fn new(even: AlgElem, odd: AlgElem) -> Self {
        SuperElem { even, odd }
    }

    pub fn even(a: AlgElem) -> Self {
        SuperElem {
            even: a,
            odd: AlgElem::zero(),
        }
    }

    pub fn odd(a: AlgElem) -> Self {
        SuperElem {
            even: AlgElem::zero(),
            odd: a,
        }
    }

    pub fn zero() -> Self {
        SuperElem::default()
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// `Some(0)` or `Some(1)` for homogeneous nonzero elements.
    pub fn parity(&self) -> Option<u8> {
        match (self.even.is_zero(), self.odd.is_zero()) {
            (false, true) => Some(0),
            (true, false) => Some(1),
            _ => None,
        }
    }

    pub fn add(&self, other: &SuperElem) -> SuperElem {
        SuperElem {
            even: self.even.add(&other.even),
            odd: self.odd.add(&other.odd),
        }
    }

    pub fn scale(&self, c: &Rational) -> SuperElem {
        SuperElem {
            even: self.even.scale(c),
            odd: self.odd.scale(c),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuperSpec {
    base: AlgebraSpec,
    kappa: RatVector,
}

impl SuperSpec {
    pub fn new(base: AlgebraSpec, kappa: RatVector) -> Result<Self> {
        require_two(&base)?;
        if kappa.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: kappa.dim(),
            });
        }
        Ok(SuperSpec { base, kappa })
    }

    /// `Γ = ℤ² + ℤ(1/k, 1/k)`, `J = ℕ²`, `κ = (m, n)`.
    pub fn example_3_3(k: i64, m: i64, n: i64) -> Result<Self> {
        let base = AlgebraSpec::new(diagonal_extension(2, 2, k)?, vec![JFlag::Nat; 2], 0)?;
        Self::new(base, RatVector::from_ints(&[m, n]))
    }

    /// `J = {0}`, `Γ = ℤ × {0}`, `κ = (1, 0)`: the centerless super
    /// Virasoro algebra.
    pub fn super_virasoro() -> Result<Self> {
        let base = AlgebraSpec::new(
            Lattice::from_ints(&[&[1, 0]], 2)?,
            vec![JFlag::Zero; 2],
            0,
        )?;
        Self::new(base, RatVector::from_ints(&[1, 0]))
    }

    pub fn base(&self) -> &AlgebraSpec {
        &self.base
    }

    pub fn kappa(&self) -> &RatVector {
        &self.kappa
    }

    /// Coordinate 2 is allowed to be fully trivial here.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.base.validate_coordinates("3.5", &[1]);
        if !self.base.gamma().contains_unchecked(self.kappa.as_slice()) {
            out.push(Violation::new(
                "3.29",
                format!("κ = {} must lie in Γ", self.kappa),
            ));
        }
        out
    }

    pub fn check(&self, x: &SuperElem) -> Result<()> {
        self.base.check(&x.even)?;
        self.base.check(&x.odd)
    }

    fn even_odd(&self, u: &AlgElem, v: &AlgElem) -> AlgElem {
        let b = &self.base;
        let k1 = &self.kappa[0];
        let k2 = &self.kappa[1];
        let half = rat(1, 2);
        let d1u = b.d_unchecked(0, u);
        let d2u = b.d_unchecked(1, u);
        let mut left = b.d_unchecked(1, v);
        left.add_assign(&v.scale(&((k2 - int(1)) * &half)));
        let mut right = b.d_unchecked(0, v);
        right.add_assign(&v.scale(&(k1 * &half)));
        let mut out = d1u.mul(&left);
        out.add_assign(&u.sub(&d2u).mul(&right));
        out
    }

    /// The graded bracket, extended bilinearly over both components.
    pub fn bracket(&self, x: &SuperElem, y: &SuperElem) -> SuperElem {
        let mut even = class_one(&self.base, &x.even, &y.even);
        if !x.odd.is_zero() && !y.odd.is_zero() {
            even.add_assign(&x.odd.mul(&y.odd).shift(&self.kappa));
        }
        let mut odd = AlgElem::zero();
        if !x.even.is_zero() && !y.odd.is_zero() {
            odd.add_assign(&self.even_odd(&x.even, &y.odd));
        }
        if !x.odd.is_zero() && !y.even.is_zero() {
            odd.add_assign(&self.even_odd(&y.even, &x.odd).neg());
        }
        SuperElem { even, odd }
    }

    /// Whether `J ≠ {0}`.
    pub fn has_nat(&self) -> bool {
        self.base.j().contains(&JFlag::Nat)
    }

    /// `((0,3) − κ)/2`.
    pub fn excluded_odd_degree(&self) -> RatVector {
        let target = RatVector::from_ints(&[0, 3]);
        (&target - &self.kappa).scale(&rat(1, 2))
    }

    /// Membership of the odd part `v` in `B̃_1`.
    pub fn b1_member(&self, v: &AlgElem) -> bool {
        if self.has_nat() {
            return true;
        }
        let bad = self.excluded_odd_degree();
        v.terms().all(|(m, _)| m.gamma != bad)
    }

    /// `(x^{σ1,0})_(0)` when `σ1 ∈ Γ`.
    pub fn central(&self) -> Option<Monomial> {
        self.base
            .gamma()
            .contains_unchecked(sigma1().as_slice())
            .then(|| self.base.x(sigma1()))
    }

    pub fn quotient_rep(&self, x: &SuperElem) -> SuperElem {
        match self.central() {
            Some(c) => SuperElem {
                even: x.even.filter(|m| *m != c),
                odd: x.odd.clone(),
            },
            None => x.clone(),
        }
    }

    /// A random homogeneous element of the requested parity.
    pub fn random_homogeneous<R: Rng>(&self, parity: u8, budget: &Budget, rng: &mut R) -> SuperElem {
        let a = self.base.random_elem(budget, rng);
        if parity == 0 {
            SuperElem::even(a)
        } else {
            SuperElem::odd(a)
        }
    }

    /// A random odd element of `B̃_1`: excluded degrees are dropped.
    pub fn random_b1<R: Rng>(&self, budget: &Budget, rng: &mut R) -> AlgElem {
        let a = self.base.random_elem(budget, rng);
        if self.has_nat() {
            return a;
        }
        let bad = self.excluded_odd_degree();
        a.filter(|m| m.gamma != bad)
    }
}
