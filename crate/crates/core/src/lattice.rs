//! Finitely generated subgroups of ℚ^n and the block-triangular group
//! `G(ℓ2, ℓ3)` acting on them.
//!
//! A lattice is stored together with its canonical form `(H, D)`: `D` is the
//! least positive integer with `D·L ⊆ ℤ^n` and `H` is the row Hermite normal
//! form of `D·L` (positive pivots, entries above each pivot reduced into
//! `[0, pivot)`, zero rows dropped). Two generator lists span the same
//! subgroup exactly when their canonical forms are identical.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::rational::{RatVector, Rational};

#[derive(Clone, Debug)]
pub struct Lattice {
    ambient_dim: usize,
    generators: Vec<RatVector>,
    denom: BigInt,
    hnf: Vec<Vec<BigInt>>,
}

impl Lattice {
    /// The ℤ-span of `generators` inside ℚ^`ambient_dim`.
    pub fn new(generators: Vec<RatVector>, ambient_dim: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.dim() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: g.dim(),
            });
        }
        let (hnf, denom) = canonical_form(&generators, ambient_dim);
        Ok(Lattice {
            ambient_dim,
            generators,
            denom,
            hnf,
        })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::new(Vec::new(), ambient_dim).expect("empty generator list")
    }

    /// ℤ^n.
    pub fn integral(ambient_dim: usize) -> Self {
        let gens = (0..ambient_dim)
            .map(|i| RatVector::unit(ambient_dim, i))
            .collect();
        Self::new(gens, ambient_dim).expect("unit vectors")
    }

    pub fn from_ints(rows: &[&[i64]], ambient_dim: usize) -> Result<Self> {
        Self::new(rows.iter().map(|r| RatVector::from_ints(r)).collect(), ambient_dim)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[RatVector] {
        &self.generators
    }

    /// `(H, D)` as described in the module docs.
    pub fn canonical(&self) -> (&[Vec<BigInt>], &BigInt) {
        (&self.hnf, &self.denom)
    }

    /// A ℤ-basis of the lattice: the rows of `H / D`.
    pub fn basis(&self) -> Vec<RatVector> {
        self.hnf
            .iter()
            .map(|row| {
                RatVector(
                    row.iter()
                        .map(|x| Rational::new(x.clone(), self.denom.clone()))
                        .collect(),
                )
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.hnf.len()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == self.ambient_dim
    }

    pub fn is_zero(&self) -> bool {
        self.hnf.is_empty()
    }

    /// Whether the coordinate projection `X_r(L)` is nonzero.
    pub fn projection_nonzero(&self, r: usize) -> bool {
        self.hnf.iter().any(|row| !row[r].is_zero())
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        Ok(self.contains_unchecked(v))
    }

    pub(crate) fn contains_unchecked(&self, v: &[Rational]) -> bool {
        // Clear denominators; anything in L has D·v integral.
        let mut w = Vec::with_capacity(v.len());
        for x in v {
            let scaled = x * Rational::from_integer(self.denom.clone());
            if !scaled.is_integer() {
                return false;
            }
            w.push(scaled.to_integer());
        }
        let mut col = 0;
        for row in &self.hnf {
            let pivot_col = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            if w[col..pivot_col].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, r) = w[pivot_col].div_rem(&row[pivot_col]);
            if !r.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (x, y) in w.iter_mut().zip(row) {
                    *x -= &q * y;
                }
            }
            col = pivot_col + 1;
        }
        w.iter().all(Zero::is_zero)
    }

    /// Lattice equality via canonical forms.
    pub fn equals(&self, other: &Lattice) -> Result<bool> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(self.denom == other.denom && self.hnf == other.hnf)
    }

    /// `self ⊕ other` inside ℚ^(n+m).
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let n = self.ambient_dim;
        let m = other.ambient_dim;
        let mut gens = Vec::new();
        for g in &self.generators {
            let mut v = g.0.clone();
            v.extend(RatVector::zeros(m).0);
            gens.push(RatVector(v));
        }
        for g in &other.generators {
            let mut v = RatVector::zeros(n).0;
            v.extend(g.0.iter().cloned());
            gens.push(RatVector(v));
        }
        Lattice::new(gens, n + m).expect("dimensions agree")
    }

    /// Embeds into ℚ^(pad + n) by prepending `pad` zero coordinates.
    pub fn pad_front(&self, pad: usize) -> Lattice {
        Lattice::zero(pad).direct_sum(self)
    }

    pub fn to_json(&self) -> CanonicalJson {
        CanonicalJson {
            ambient_dim: self.ambient_dim,
            denominator: self.denom.to_string(),
            hnf: self
                .hnf
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.denom == other.denom && self.hnf == other.hnf
    }
}

impl Eq for Lattice {}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D={} H=[", self.denom)?;
        for (i, row) in self.hnf.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}

/// Serializable canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalJson {
    pub ambient_dim: usize,
    pub denominator: String,
    pub hnf: Vec<Vec<String>>,
}

fn canonical_form(gens: &[RatVector], dim: usize) -> (Vec<Vec<BigInt>>, BigInt) {
    let d = gens
        .iter()
        .flat_map(|g| g.0.iter())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| {
            g.0.iter()
                .map(|x| (x * Rational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect();
    let h = hermite_normal_form(rows, dim);
    // Shrink D to the least denominator of the subgroup itself.
    let g = h.iter().flatten().fold(d.clone(), |acc, x| acc.gcd(x));
    if g.is_one() {
        (h, d)
    } else {
        let h = h
            .into_iter()
            .map(|row| row.into_iter().map(|x| x / &g).collect())
            .collect();
        (h, d / g)
    }
}

/// Row-style Hermite normal form of an integer matrix: positive pivots with
/// the entries above each pivot reduced into `[0, pivot)`. Zero rows are
/// dropped.
pub fn hermite_normal_form(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        while let Some(p) = (r..m.len())
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].abs())
        {
            m.swap(r, p);
            let mut clean = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !m[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = m[r].clone();
        for row in m.iter_mut().take(r) {
            let q = row[c].div_floor(&pivot_row[c]);
            if !q.is_zero() {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// An element of `G(ℓ2, ℓ3)`: block lower-triangular with invertible
/// diagonal blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMatrix {
    l2: usize,
    l3: usize,
    entries: RatMatrix,
    inverse: RatMatrix,
}

impl BlockMatrix {
    /// Validates membership of `m` in `G(ℓ2, ℓ3)`.
    pub fn check(m: RatMatrix, l2: usize, l3: usize) -> Result<Self> {
        let n = l2 + l3;
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("expected a {n}x{n} matrix")));
        }
        for (i, row) in m.iter().enumerate().take(l2) {
            for (j, x) in row.iter().enumerate().skip(l2) {
                if !x.is_zero() {
                    return Err(Error::Shape(format!(
                        "entry ({},{}) lies in the top-right {l2}x{l3} block and must be 0",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let a: RatMatrix = m[..l2].iter().map(|r| r[..l2].to_vec()).collect();
        let c: RatMatrix = m[l2..].iter().map(|r| r[l2..].to_vec()).collect();
        if l2 > 0 && linalg::inverse(&a).is_none() {
            return Err(Error::Singular("A block".into()));
        }
        if l3 > 0 && linalg::inverse(&c).is_none() {
            return Err(Error::Singular("C block".into()));
        }
        let inverse = linalg::inverse(&m).unwrap_or_default();
        Ok(BlockMatrix {
            l2,
            l3,
            entries: m,
            inverse,
        })
    }

    pub fn identity(l2: usize, l3: usize) -> Self {
        Self::check(linalg::identity(l2 + l3), l2, l3).expect("identity is in the group")
    }

    pub fn dim(&self) -> usize {
        self.l2 + self.l3
    }

    pub fn entries(&self) -> &RatMatrix {
        &self.entries
    }

    /// Group product `self · other`.
    pub fn compose(&self, other: &BlockMatrix) -> Result<BlockMatrix> {
        if self.l2 != other.l2 || self.l3 != other.l3 {
            return Err(Error::Shape("block sizes differ".into()));
        }
        Self::check(linalg::mat_mul(&self.entries, &other.entries), self.l2, self.l3)
    }

    /// `g(α) = α · g⁻¹`.
    pub fn act_vector(&self, alpha: &RatVector) -> Result<RatVector> {
        if alpha.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: alpha.dim(),
            });
        }
        Ok(RatVector(linalg::vec_mat(&alpha.0, &self.inverse)))
    }

    pub fn act_lattice(&self, l: &Lattice) -> Result<Lattice> {
        if l.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: l.ambient_dim(),
            });
        }
        let gens = l
            .generators()
            .iter()
            .map(|g| self.act_vector(g))
            .collect::<Result<Vec<_>>>()?;
        Lattice::new(gens, self.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn v(xs: &[Rational]) -> RatVector {
        RatVector(xs.to_vec())
    }

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn canonical_examples() {
        let l = Lattice::new(vec![v(&[int(1), int(0)]), v(&[int(0), rat(1, 2)])], 2).unwrap();
        let (h, d) = l.canonical();
        assert_eq!(d, &BigInt::from(2));
        assert_eq!(h, big(&[&[2, 0], &[0, 1]]).as_slice());

        let l = Lattice::from_ints(&[&[2, 0], &[3, 0]], 2).unwrap();
        let (h, d) = l.canonical();
        assert_eq!(d, &BigInt::from(1));
        assert_eq!(h, big(&[&[1, 0]]).as_slice());
        assert_eq!(l, Lattice::from_ints(&[&[1, 0]], 2).unwrap());

        let l = Lattice::from_ints(&[&[1, 1]], 2).unwrap();
        assert_eq!(l.canonical().0, big(&[&[1, 1]]).as_slice());
    }

    #[test]
    fn shared_denominator_is_minimal() {
        // Generators with denominators 2 and 4 that only span ½ℤ.
        let l = Lattice::new(vec![v(&[rat(1, 2)]), v(&[rat(1, 4) * int(2)])], 1).unwrap();
        assert_eq!(l.canonical().1, &BigInt::from(2));
        let l = Lattice::new(vec![v(&[rat(2, 4)]), v(&[rat(6, 4)])], 1).unwrap();
        assert_eq!(l.canonical(), (big(&[&[1]]).as_slice(), &BigInt::from(2)));
    }

    #[test]
    fn membership() {
        let l = Lattice::new(vec![v(&[int(1), int(0)]), v(&[int(0), rat(1, 2)])], 2).unwrap();
        assert!(l.contains(&[int(3), rat(-5, 2)]).unwrap());
        assert!(!l.contains(&[rat(1, 2), int(0)]).unwrap());
        assert!(l.contains(&[int(1)]).is_err());
        let z = Lattice::zero(2);
        assert!(z.contains(&[int(0), int(0)]).unwrap());
        assert!(!z.contains(&[int(1), int(0)]).unwrap());
        // A non-pivot column must cancel exactly.
        let l = Lattice::from_ints(&[&[1, 1]], 2).unwrap();
        assert!(l.contains(&[int(-3), int(-3)]).unwrap());
        assert!(!l.contains(&[int(1), int(2)]).unwrap());
    }

    #[test]
    fn equality_and_rank() {
        let a = Lattice::from_ints(&[&[1, 0], &[0, 1]], 2).unwrap();
        let b = Lattice::from_ints(&[&[1, 1], &[0, 1]], 2).unwrap();
        assert!(a.equals(&b).unwrap());
        let c = Lattice::from_ints(&[&[1, 0]], 2).unwrap();
        let d = Lattice::from_ints(&[&[2, 0]], 2).unwrap();
        assert!(!c.equals(&d).unwrap());
        assert!(a.equals(&Lattice::zero(3)).is_err());

        assert!(Lattice::new(vec![v(&[int(1), int(0)]), v(&[int(0), rat(1, 2)])], 2)
            .unwrap()
            .is_nondegenerate());
        assert!(!c.is_nondegenerate());
        assert!(!Lattice::from_ints(&[&[1, 2], &[2, 4]], 2)
            .unwrap()
            .is_nondegenerate());
    }

    #[test]
    fn lattice_new_rejects_bad_dims() {
        assert!(matches!(
            Lattice::from_ints(&[&[1, 0, 0]], 2),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn block_group_membership() {
        let m = |rows: &[&[i64]]| -> RatMatrix {
            rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
        };
        assert!(BlockMatrix::check(m(&[&[2, 0], &[0, 1]]), 1, 1).is_ok());
        assert!(matches!(
            BlockMatrix::check(m(&[&[1, 1], &[0, 1]]), 1, 1),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            BlockMatrix::check(m(&[&[0, 0], &[1, 1]]), 1, 1),
            Err(Error::Singular(_))
        ));
        // B sits bottom-left and may be anything.
        assert!(BlockMatrix::check(m(&[&[1, 0], &[5, 1]]), 1, 1).is_ok());
    }

    #[test]
    fn block_action() {
        let g = BlockMatrix::check(vec![vec![int(2), int(0)], vec![int(0), int(1)]], 1, 1).unwrap();
        let a = RatVector::from_ints(&[1, 3]);
        assert_eq!(g.act_vector(&a).unwrap(), v(&[rat(1, 2), int(3)]));
        assert_eq!(BlockMatrix::identity(1, 1).act_vector(&a).unwrap(), a);

        let gl = g.act_lattice(&Lattice::integral(2)).unwrap();
        let expected = Lattice::new(vec![v(&[rat(1, 2), int(0)]), v(&[int(0), int(1)])], 2).unwrap();
        assert_eq!(gl, expected);
        assert!(gl.is_nondegenerate());
    }
}
