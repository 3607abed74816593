//! Matrices over the generalized Weyl algebra: the ideal patterns
//! `B_r^{(i)} B_l^{(j)} = ∂̃^{n_i} 𝔸 ∂̃^{m_j}`, the signed maps `ρ`, the
//! anti-automorphism `∗`, and the `gl`, `sl`, `o` and `sp` constructions.

use num_traits::{One, Zero};
use rand::Rng;

use super::{WeylAlgebra, WeylOp};
use crate::error::{Error, Result};
use crate::grpalg::Budget;
use crate::rational::{int, rat, Rational};

/// Principal ideal data `(ℓ', m_1..m_k, n_1..n_k)` with each vector in
/// `ℕ^{ℓ−ℓ'}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPattern {
    pub ell_prime: usize,
    pub m: Vec<Vec<u32>>,
    pub n: Vec<Vec<u32>>,
}

fn weight(v: &[u32]) -> u64 {
    v.iter().map(|&e| e as u64).sum()
}

impl IdealPattern {
    /// Validates shapes against `alg` and the common parity of
    /// `|m_i| + |n_i|`.
    pub fn new(alg: &WeylAlgebra, ell_prime: usize, m: Vec<Vec<u32>>, n: Vec<Vec<u32>>) -> Result<Self> {
        if ell_prime > alg.witt().l1() {
            return Err(Error::IndexOutOfRange {
                index: ell_prime,
                bound: alg.witt().l1() + 1,
            });
        }
        if m.is_empty() || m.len() != n.len() {
            return Err(Error::Shape(format!(
                "need the same positive number of m and n vectors, found {} and {}",
                m.len(),
                n.len()
            )));
        }
        let width = alg.l() - ell_prime;
        if let Some(v) = m.iter().chain(&n).find(|v| v.len() != width) {
            return Err(Error::DimensionMismatch {
                expected: width,
                found: v.len(),
            });
        }
        let parity = (weight(&m[0]) + weight(&n[0])) % 2;
        if m.iter().zip(&n).any(|(a, b)| (weight(a) + weight(b)) % 2 != parity) {
            return Err(Error::Shape(
                "|m_i| + |n_i| must have the same parity for every i".into(),
            ));
        }
        Ok(IdealPattern { ell_prime, m, n })
    }

    /// The pattern with every ideal equal to `𝔸`.
    pub fn trivial(alg: &WeylAlgebra, ell_prime: usize, k: usize) -> Result<Self> {
        let width = alg.l().saturating_sub(ell_prime);
        Self::new(alg, ell_prime, vec![vec![0; width]; k], vec![vec![0; width]; k])
    }

    pub fn k(&self) -> usize {
        self.m.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylMatrix {
    size: usize,
    entries: Vec<WeylOp>,
}

impl WeylMatrix {
    pub fn zero(size: usize) -> Self {
        WeylMatrix {
            size,
            entries: vec![WeylOp::zero(); size * size],
        }
    }

    pub fn from_rows(rows: Vec<Vec<WeylOp>>) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::Shape("matrix must be square".into()));
        }
        Ok(WeylMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &WeylOp {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, a: WeylOp) {
        self.entries[i * self.size + j] = a;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[WeylOp]> {
        self.entries.chunks(self.size.max(1))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(WeylOp::is_zero)
    }

    fn zip_with(&self, other: &WeylMatrix, f: impl Fn(&WeylOp, &WeylOp) -> WeylOp) -> WeylMatrix {
        WeylMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &WeylMatrix) -> WeylMatrix {
        self.zip_with(other, WeylOp::add)
    }

    pub fn sub(&self, other: &WeylMatrix) -> WeylMatrix {
        self.zip_with(other, WeylOp::sub)
    }

    pub fn scale(&self, c: &Rational) -> WeylMatrix {
        WeylMatrix {
            size: self.size,
            entries: self.entries.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> WeylMatrix {
        self.scale(&int(-1))
    }
}

impl WeylAlgebra {
    /// `c · I_k`.
    pub fn scalar_matrix(&self, size: usize, c: &Rational) -> WeylMatrix {
        let mut out = WeylMatrix::zero(size);
        for i in 0..size {
            out.set(i, i, self.scalar(c));
        }
        out
    }

    pub fn identity_matrix(&self, size: usize) -> WeylMatrix {
        self.scalar_matrix(size, &Rational::one())
    }

    pub fn check_matrix(&self, a: &WeylMatrix) -> Result<()> {
        a.entries.iter().try_for_each(|e| self.check(e))
    }

    pub fn matrix_mul(&self, a: &WeylMatrix, b: &WeylMatrix) -> Result<WeylMatrix> {
        if a.size != b.size {
            return Err(Error::Shape(format!(
                "matrix sizes differ: {} vs {}",
                a.size, b.size
            )));
        }
        let n = a.size;
        let mut out = WeylMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = WeylOp::zero();
                for l in 0..n {
                    let (x, y) = (a.get(i, l), b.get(l, j));
                    if !x.is_zero() && !y.is_zero() {
                        acc.add_assign(&self.mul(x, y));
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// `AB − BA`.
    pub fn matrix_bracket(&self, a: &WeylMatrix, b: &WeylMatrix) -> Result<WeylMatrix> {
        Ok(self.matrix_mul(a, b)?.sub(&self.matrix_mul(b, a)?))
    }

    /// Representative of `A` modulo `𝔽I_k`.
    pub fn sl_rep(&self, a: &WeylMatrix) -> WeylMatrix {
        if a.size == 0 {
            return a.clone();
        }
        let trace_const = (0..a.size).fold(Rational::zero(), |acc, i| acc + a.get(i, i).constant_coeff());
        let c = trace_const / int(a.size as i64);
        a.sub(&self.scalar_matrix(a.size, &c))
    }

    /// The `(i, j)` slot pattern: indices are taken mod `k`.
    fn slot(&self, p: &IdealPattern, i: usize, j: usize) -> (usize, usize) {
        (i % p.k(), j % p.k())
    }

    fn check_pattern_size(&self, a: &WeylMatrix, p: &IdealPattern, factor: usize) -> Result<()> {
        if a.size != factor * p.k() {
            return Err(Error::Shape(format!(
                "matrix has size {} but the pattern needs {}",
                a.size,
                factor * p.k()
            )));
        }
        Ok(())
    }

    /// The core `r` of `a = ∂̃^{n_i} r ∂̃^{m_j}`.
    pub fn slot_core(&self, a: &WeylOp, i: usize, j: usize, p: &IdealPattern) -> Option<WeylOp> {
        self.divide(a, p.ell_prime, &p.n[i], &p.m[j])
    }

    /// `∂̃^{n_i} r ∂̃^{m_j}`.
    pub fn slot_embed(&self, r: &WeylOp, i: usize, j: usize, p: &IdealPattern) -> WeylOp {
        let left = self.d_tilde(p.ell_prime, &p.n[i]);
        let right = self.d_tilde(p.ell_prime, &p.m[j]);
        self.mul(&self.mul(&left, r), &right)
    }

    fn member_with(&self, a: &WeylMatrix, p: &IdealPattern) -> bool {
        (0..a.size).all(|i| {
            (0..a.size).all(|j| {
                let (si, sj) = self.slot(p, i, j);
                self.slot_core(a.get(i, j), si, sj, p).is_some()
            })
        })
    }

    /// Membership in `gl(B_l, B_r)` (size `k`).
    pub fn gl_member(&self, a: &WeylMatrix, p: &IdealPattern) -> bool {
        a.size == p.k() && self.member_with(a, p)
    }

    /// Membership in `Ψ'` (size `2k`, slots taken mod `k`).
    pub fn psi_prime_member(&self, a: &WeylMatrix, p: &IdealPattern) -> bool {
        a.size == 2 * p.k() && self.member_with(a, p)
    }

    /// `ρ(∂̃^{n_i} r ∂̃^{m_j}) = (−1)^{|n_i|+|m_j|} ∂̃^{n_j} τ(r) ∂̃^{m_i}`.
    pub fn rho_signed(&self, a: &WeylOp, i: usize, j: usize, p: &IdealPattern) -> Result<WeylOp> {
        if i >= p.k() || j >= p.k() {
            return Err(Error::IndexOutOfRange {
                index: i.max(j),
                bound: p.k(),
            });
        }
        let r = self.slot_core(a, i, j, p).ok_or_else(|| {
            Error::Membership(format!(
                "entry is not in ∂̃^{:?} 𝔸 ∂̃^{:?}",
                p.n[i], p.m[j]
            ))
        })?;
        let out = self.slot_embed(&self.tau(&r, p.ell_prime)?, j, i, p);
        if (weight(&p.n[i]) + weight(&p.m[j])) % 2 == 1 {
            Ok(out.neg())
        } else {
            Ok(out)
        }
    }

    fn star_with(&self, a: &WeylMatrix, p: &IdealPattern) -> Result<WeylMatrix> {
        let n = a.size;
        let mut out = WeylMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                // Entry (j, i) sits in slot (j mod k, i mod k).
                let (sj, si) = self.slot(p, j, i);
                out.set(i, j, self.rho_signed(a.get(j, i), sj, si, p)?);
            }
        }
        Ok(out)
    }

    /// `(A∗)_{ij} = ρ(a_{ji})` on `Ψ`.
    pub fn star(&self, a: &WeylMatrix, p: &IdealPattern) -> Result<WeylMatrix> {
        self.check_pattern_size(a, p, 1)?;
        self.star_with(a, p)
    }

    /// `(A − A∗)/2`.
    pub fn o_project(&self, a: &WeylMatrix, p: &IdealPattern) -> Result<WeylMatrix> {
        Ok(a.sub(&self.star(a, p)?).scale(&rat(1, 2)))
    }

    /// `A ∈ Ψ` and `A∗ = −A`; `∗` is only defined on `Ψ`.
    pub fn o_member(&self, a: &WeylMatrix, p: &IdealPattern) -> bool {
        self.star(a, p).is_ok_and(|s| s == a.neg())
    }

    /// `S = [[0, I_k], [−I_k, 0]]`.
    pub fn symplectic_unit(&self, k: usize) -> WeylMatrix {
        let mut s = WeylMatrix::zero(2 * k);
        for i in 0..k {
            s.set(i, k + i, self.one());
            s.set(k + i, i, self.one().neg());
        }
        s
    }

    /// `∗` on `Ψ'`.
    pub fn star_prime(&self, a: &WeylMatrix, p: &IdealPattern) -> Result<WeylMatrix> {
        self.check_pattern_size(a, p, 2)?;
        self.star_with(a, p)
    }

    /// `ρ(A) = −S A∗ S` on `Ψ'`.
    pub fn sp_rho(&self, a: &WeylMatrix, p: &IdealPattern) -> Result<WeylMatrix> {
        // S only permutes blocks and flips signs, so apply it by index:
        // (S B S)_{ij} = s_i s'_j B_{π(i), π(j)} with π swapping the halves.
        let k = p.k();
        let st = self.star_prime(a, p)?;
        let swap = |i: usize| if i < k { i + k } else { i - k };
        let mut out = WeylMatrix::zero(2 * k);
        for i in 0..2 * k {
            for j in 0..2 * k {
                let entry = st.get(swap(i), swap(j));
                // −(S B S)_{ij}: the signs s_i = ±1 (rows) and s'_j = ∓1
                // (columns) combine with the leading minus.
                if (i < k) == (j < k) {
                    out.set(i, j, entry.clone());
                } else {
                    out.set(i, j, entry.neg());
                }
            }
        }
        Ok(out)
    }

    /// `(A − ρ(A))/2`.
    pub fn sp_project(&self, a: &WeylMatrix, p: &IdealPattern) -> Result<WeylMatrix> {
        Ok(a.sub(&self.sp_rho(a, p)?).scale(&rat(1, 2)))
    }

    /// `A ∈ Ψ'` and `ρ(A) = −A`. `ρ` is only defined on `Ψ'`, so computing
    /// it already decides pattern membership.
    pub fn sp_member(&self, a: &WeylMatrix, p: &IdealPattern) -> bool {
        self.sp_rho(a, p).is_ok_and(|r| r == a.neg())
    }

    /// Random member of `Ψ` (`factor = 1`) or `Ψ'` (`factor = 2`): each entry
    /// is `∂̃^{n_i} r ∂̃^{m_j}` for a random `r`.
    pub fn random_pattern_matrix<R: Rng>(
        &self,
        p: &IdealPattern,
        factor: usize,
        budget: &Budget,
        rng: &mut R,
    ) -> WeylMatrix {
        let n = factor * p.k();
        let mut out = WeylMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let (si, sj) = self.slot(p, i, j);
                let r = self.random_op(budget, rng);
                out.set(i, j, self.slot_embed(&r, si, sj, p));
            }
        }
        out
    }

    /// Random `size × size` matrix with unrestricted entries.
    pub fn random_matrix<R: Rng>(&self, size: usize, budget: &Budget, rng: &mut R) -> WeylMatrix {
        let mut out = WeylMatrix::zero(size);
        for i in 0..size {
            for j in 0..size {
                out.set(i, j, self.random_op(budget, rng));
            }
        }
        out
    }
}
