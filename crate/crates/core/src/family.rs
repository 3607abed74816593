//! A single dispatch point over every algebra family: validation, element
//! parsing, bracket evaluation, the law suites and structure-constant export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::block::{BlockISpec, BlockIISpec, SuperElem, SuperSpec};
use crate::error::{Error, Result};
use crate::expr;
use crate::grpalg::{random_coeff, AlgElem, AlgebraSpec, Violation};
use crate::ham_contact::{ContactSpec, HamSpec};
use crate::rational::RatVector;
use crate::verify::{self, LawElem, Report, Sparse, TrialConfig};
use crate::weyl::{IdealPattern, WeylAlgebra, WeylMatrix, WeylOp};
use crate::witt::{WittElem, WittSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylKind {
    Gl,
    Sl,
    O,
    Sp,
}

#[derive(Clone, Debug)]
pub enum Family {
    Witt(WittSpec),
    /// Divergence-free elements twisted by `x^ρ`.
    S { witt: WittSpec, rho: RatVector },
    Block1(BlockISpec),
    Block2(BlockIISpec),
    Block3(SuperSpec),
    Ham(HamSpec),
    Contact(ContactSpec),
    Weyl {
        kind: WeylKind,
        alg: WeylAlgebra,
        pattern: IdealPattern,
    },
}

/// Finite window for structure constants: `|c_r| ≤ coeff_bound` on the
/// generators of Γ and exponents `≤ nat_bound` on ℕ coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WindowSpec {
    pub coeff_bound: i64,
    pub nat_bound: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScTerm {
    pub k: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<ScTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Leak {
    pub i: usize,
    pub j: usize,
    pub bracket: String,
}

/// Structure constants `[b_i, b_j] = Σ_k c_{ij}^k b_k` over a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureConstants {
    pub family: String,
    pub window: WindowSpec,
    pub basis: Vec<String>,
    pub brackets: Vec<ScEntry>,
    pub leakage: Vec<Leak>,
}

impl StructureConstants {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structure constants always serialize") + "\n"
    }
}

fn structure_constants<T: Sparse>(
    family: &str,
    window: WindowSpec,
    basis: &[T],
    bracket: impl Fn(&T, &T) -> T + Sync,
) -> StructureConstants {
    let index: BTreeMap<T::Key, usize> = basis
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.entries().into_iter().map(move |(k, _)| (k, i)))
        .collect();
    let n = basis.len();
    let results: Vec<(usize, usize, T)> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            (i, j, bracket(&basis[i], &basis[j]))
        })
        .collect();
    let mut brackets = Vec::new();
    let mut leakage = Vec::new();
    for (i, j, r) in results {
        if r.is_zero() {
            continue;
        }
        let entries = r.entries();
        if entries.iter().all(|(k, _)| index.contains_key(k)) {
            let mut terms: Vec<ScTerm> = entries
                .into_iter()
                .map(|(k, c)| ScTerm {
                    k: index[&k],
                    coeff: c.to_string(),
                })
                .collect();
            terms.sort_by_key(|t| t.k);
            brackets.push(ScEntry { i, j, terms });
        } else {
            leakage.push(Leak {
                i,
                j,
                bracket: r.render(),
            });
        }
    }
    StructureConstants {
        family: family.to_string(),
        window,
        basis: basis.iter().map(LawElem::render).collect(),
        brackets,
        leakage,
    }
}

fn alg_sampler<'a>(
    spec: &'a AlgebraSpec,
    cfg: &'a TrialConfig,
) -> impl Fn(&mut ChaCha8Rng) -> AlgElem + Sync + 'a {
    move |r| spec.random_elem(&cfg.budget, r)
}

fn no_central(family: &str) -> Error {
    Error::Unsupported(format!("this `{family}` spec has no central element in Γ"))
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Witt(_) => "witt",
            Family::S { .. } => "s",
            Family::Block1(_) => "block1",
            Family::Block2(_) => "block2",
            Family::Block3(_) => "block3",
            Family::Ham(_) => "ham",
            Family::Contact(_) => "contact",
            Family::Weyl { kind, .. } => match kind {
                WeylKind::Gl => "weyl-gl",
                WeylKind::Sl => "weyl-sl",
                WeylKind::O => "weyl-o",
                WeylKind::Sp => "weyl-sp",
            },
        }
    }

    /// The commutative algebra the family is built on.
    pub fn base(&self) -> &AlgebraSpec {
        match self {
            Family::Witt(w) | Family::S { witt: w, .. } => w.base(),
            Family::Block1(b) => b.base(),
            Family::Block2(b) => b.base(),
            Family::Block3(b) => b.base(),
            Family::Ham(h) => h.base(),
            Family::Contact(c) => c.base(),
            Family::Weyl { alg, .. } => alg.witt().base(),
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        match self {
            Family::Witt(w) => w.validate(),
            Family::S { witt, rho } => {
                let mut out = witt.validate();
                if !witt.gamma().contains_unchecked(rho.as_slice()) {
                    out.push(Violation::new("2.32", format!("ρ = {rho} must lie in Γ")));
                }
                out
            }
            Family::Block1(b) => b.validate(),
            Family::Block2(b) => b.validate(),
            Family::Block3(b) => b.validate(),
            Family::Ham(h) => h.validate(),
            Family::Contact(c) => c.validate(),
            Family::Weyl { alg, .. } => alg.witt().validate(),
        }
    }

    /// Human-readable summary: family, dimensions, canonical Γ and any
    /// violations.
    pub fn summary(&self) -> String {
        let base = self.base();
        let mut out = String::new();
        let _ = writeln!(out, "family: {}", self.name());
        let _ = writeln!(out, "group dimension: {}", base.group_dim());
        let _ = writeln!(out, "semigroup dimension: {}", base.d());
        let _ = writeln!(out, "gamma: {}", base.gamma());
        match self {
            Family::Ham(h) => {
                let _ = writeln!(out, "k = {}, k1 = {}", h.k(), h.k1());
            }
            Family::Contact(c) => {
                let _ = writeln!(out, "k = {}", c.k());
            }
            Family::Weyl { alg, pattern, .. } => {
                let _ = writeln!(
                    out,
                    "l = {}, ell_prime = {}, k = {}",
                    alg.l(),
                    pattern.ell_prime,
                    pattern.k()
                );
            }
            _ => {}
        }
        let violations = self.validate();
        if violations.is_empty() {
            let _ = writeln!(out, "violations: none");
        } else {
            for v in &violations {
                let _ = writeln!(out, "violation {}: {}", v.code, v.message);
            }
        }
        out
    }

    /// Parses both operands, brackets them and renders the canonical result
    /// (the quotient representative for quotient families).
    pub fn bracket_text(&self, a: &str, b: &str) -> Result<String> {
        let out = match self {
            Family::Witt(w) | Family::S { witt: w, .. } => {
                let (x, y) = (expr::parse_witt(w, a)?, expr::parse_witt(w, b)?);
                expr::render_witt(&w.bracket(&x, &y))
            }
            Family::Block1(s) => {
                let (x, y) = (expr::parse_alg(s.base(), a)?, expr::parse_alg(s.base(), b)?);
                expr::render_alg(&s.quotient_rep(&s.bracket(&x, &y)))
            }
            Family::Block2(s) => {
                let (x, y) = (expr::parse_alg(s.base(), a)?, expr::parse_alg(s.base(), b)?);
                expr::render_alg(&s.quotient_rep(&s.bracket(&x, &y)))
            }
            Family::Block3(s) => {
                let (x, y) = (expr::parse_super(s.base(), a)?, expr::parse_super(s.base(), b)?);
                expr::render_super(&s.quotient_rep(&s.bracket(&x, &y)))
            }
            Family::Ham(s) => {
                let (x, y) = (expr::parse_alg(s.base(), a)?, expr::parse_alg(s.base(), b)?);
                expr::render_alg(&s.quotient_rep(&s.bracket(&x, &y)))
            }
            Family::Contact(s) => {
                let (x, y) = (expr::parse_alg(s.base(), a)?, expr::parse_alg(s.base(), b)?);
                expr::render_alg(&s.bracket(&x, &y))
            }
            Family::Weyl { kind, alg, .. } => {
                let x = expr::parse_weyl_matrix(alg, a)?;
                let y = expr::parse_weyl_matrix(alg, b)?;
                let r = alg.matrix_bracket(&x, &y)?;
                let r = if *kind == WeylKind::Sl { alg.sl_rep(&r) } else { r };
                expr::render_weyl_matrix(&r)
            }
        };
        Ok(out)
    }

    /// The law identifiers accepted by [`Family::verify`].
    pub fn laws(&self) -> &'static [&'static str] {
        match self {
            Family::Witt(_) => &["skew", "jacobi", "divergence", "composition"],
            Family::S { .. } => &["skew", "jacobi", "closure"],
            Family::Block1(_) => &["skew", "jacobi", "centrality", "leibniz"],
            Family::Block2(_) => &["skew", "jacobi", "centrality", "skew-literal", "jacobi-literal"],
            Family::Block3(_) => &["super-jacobi", "centrality"],
            Family::Ham(_) => &["skew", "jacobi", "centrality", "leibniz"],
            Family::Contact(_) => &["skew", "jacobi"],
            Family::Weyl { kind, .. } => match kind {
                WeylKind::Gl => &["associativity", "composition", "tau", "closure"],
                WeylKind::Sl => &["associativity", "composition", "tau", "closure", "sl-rep"],
                WeylKind::O => &["associativity", "composition", "tau", "closure", "star", "rho"],
                WeylKind::Sp => &["associativity", "composition", "tau", "closure"],
            },
        }
    }

    /// Runs one law. Unknown laws for the family are an error.
    pub fn verify(&self, law: &str, cfg: &TrialConfig) -> Result<Report> {
        let family = self.name();
        let unknown = || Error::UnknownLaw {
            law: law.to_string(),
            family: family.to_string(),
        };
        if !self.laws().contains(&law) {
            return Err(unknown());
        }
        let report = match self {
            Family::Witt(w) => witt_law(w, law, cfg),
            Family::S { witt, rho } => s_law(witt, rho, law, cfg)?,
            Family::Block1(s) => {
                let sample = alg_sampler(s.base(), cfg);
                let br = |a: &AlgElem, b: &AlgElem| s.bracket(a, b);
                match law {
                    "skew" => verify::check_skew(family, cfg, sample, br),
                    "jacobi" => verify::check_jacobi(family, cfg, sample, br),
                    "leibniz" => verify::check_leibniz(family, cfg, sample, br, |a, b| a.mul(b)),
                    _ => {
                        let c = AlgElem::monomial(s.central().ok_or_else(|| no_central(family))?);
                        verify::check_centrality(family, cfg, &c, sample, br)
                    }
                }
            }
            Family::Block2(s) => {
                let sample = alg_sampler(s.base(), cfg);
                let br = |a: &AlgElem, b: &AlgElem| s.bracket(a, b);
                let lit = |a: &AlgElem, b: &AlgElem| s.bracket_literal(a, b);
                match law {
                    "skew" => verify::check_skew(family, cfg, sample, br),
                    "jacobi" => verify::check_jacobi(family, cfg, sample, br),
                    "skew-literal" => relabel(verify::check_skew(family, cfg, sample, lit), law),
                    "jacobi-literal" => relabel(verify::check_jacobi(family, cfg, sample, lit), law),
                    _ => {
                        let c = AlgElem::monomial(s.central().ok_or_else(|| no_central(family))?);
                        verify::check_centrality(family, cfg, &c, sample, br)
                    }
                }
            }
            Family::Block3(s) => match law {
                "super-jacobi" => verify::check_super_jacobi(family, s, cfg),
                _ => {
                    let c = SuperElem::even(AlgElem::monomial(
                        s.central().ok_or_else(|| no_central(family))?,
                    ));
                    let sample = |r: &mut ChaCha8Rng| {
                        let parity = r.gen_range(0..2u8);
                        s.random_homogeneous(parity, &cfg.budget, r)
                    };
                    verify::check_centrality(family, cfg, &c, sample, |a, b| s.bracket(a, b))
                }
            },
            Family::Ham(s) => {
                let sample = alg_sampler(s.base(), cfg);
                let br = |a: &AlgElem, b: &AlgElem| s.bracket(a, b);
                match law {
                    "skew" => verify::check_skew(family, cfg, sample, br),
                    "jacobi" => verify::check_jacobi(family, cfg, sample, br),
                    "leibniz" => verify::check_leibniz(family, cfg, sample, br, |a, b| a.mul(b)),
                    _ => verify::check_centrality(family, cfg, &s.base().one(), sample, br),
                }
            }
            Family::Contact(s) => {
                let sample = alg_sampler(s.base(), cfg);
                let br = |a: &AlgElem, b: &AlgElem| s.bracket(a, b);
                match law {
                    "skew" => verify::check_skew(family, cfg, sample, br),
                    _ => verify::check_jacobi(family, cfg, sample, br),
                }
            }
            Family::Weyl { kind, alg, pattern } => weyl_law(family, *kind, alg, pattern, law, cfg)?,
        };
        Ok(report)
    }

    /// Structure constants over a monomial window. Quotient families drop
    /// their central monomial from the basis and reduce every bracket.
    pub fn export_sc(&self, window: WindowSpec) -> Result<StructureConstants> {
        let family = self.name();
        let alg_basis = |spec: &AlgebraSpec, central: Option<crate::grpalg::Monomial>| -> Vec<AlgElem> {
            verify::monomial_window(spec, window.coeff_bound, window.nat_bound)
                .into_iter()
                .filter(|m| Some(m) != central.as_ref())
                .map(AlgElem::monomial)
                .collect()
        };
        let sc = match self {
            Family::Witt(w) => {
                let monos = verify::monomial_window(w.base(), window.coeff_bound, window.nat_bound);
                let basis: Vec<WittElem> = (0..w.l())
                    .flat_map(|p| monos.iter().map(move |m| (p, m)))
                    .map(|(p, m)| w.elem(AlgElem::monomial(m.clone()), p))
                    .collect();
                structure_constants(family, window, &basis, |a, b| w.bracket(a, b))
            }
            Family::Block1(s) => {
                let basis = alg_basis(s.base(), s.central());
                structure_constants(family, window, &basis, |a, b| s.quotient_rep(&s.bracket(a, b)))
            }
            Family::Block2(s) => {
                let basis = alg_basis(s.base(), s.central());
                structure_constants(family, window, &basis, |a, b| s.quotient_rep(&s.bracket(a, b)))
            }
            Family::Block3(s) => {
                let central = s.central();
                let evens = alg_basis(s.base(), central).into_iter().map(SuperElem::even);
                let odds = alg_basis(s.base(), None).into_iter().map(SuperElem::odd);
                let basis: Vec<SuperElem> = evens.chain(odds).collect();
                structure_constants(family, window, &basis, |a, b| s.quotient_rep(&s.bracket(a, b)))
            }
            Family::Ham(s) => {
                let basis = alg_basis(s.base(), Some(s.base().one_monomial()));
                structure_constants(family, window, &basis, |a, b| s.quotient_rep(&s.bracket(a, b)))
            }
            Family::Contact(s) => {
                let basis = alg_basis(s.base(), None);
                structure_constants(family, window, &basis, |a, b| s.bracket(a, b))
            }
            Family::S { .. } | Family::Weyl { .. } => {
                return Err(Error::Unsupported(format!(
                    "family `{family}` has no monomial basis to export"
                )))
            }
        };
        Ok(sc)
    }
}

fn relabel(mut r: Report, law: &str) -> Report {
    r.law = law.to_string();
    r
}

fn witt_law(w: &WittSpec, law: &str, cfg: &TrialConfig) -> Report {
    let family = "witt";
    let sample = |r: &mut ChaCha8Rng| w.random_elem(&cfg.budget, r);
    let br = |a: &WittElem, b: &WittElem| w.bracket(a, b);
    match law {
        "skew" => verify::check_skew(family, cfg, sample, br),
        "jacobi" => verify::check_jacobi(family, cfg, sample, br),
        "divergence" => verify::check_identity(
            law,
            family,
            cfg,
            |r| vec![sample(r), sample(r)],
            |v| {
                let (a, b) = (&v[0], &v[1]);
                let lhs = w.divergence(&w.bracket(a, b));
                let rhs = w.apply(a, &w.divergence(b)).sub(&w.apply(b, &w.divergence(a)));
                verify::nonzero(&lhs.sub(&rhs))
            },
        ),
        _ => verify::check_identity(
            law,
            family,
            cfg,
            |r| {
                vec![
                    (sample(r), w.base().random_elem(&cfg.budget, r)),
                    (sample(r), w.base().random_elem(&cfg.budget, r)),
                ]
            },
            |v| {
                let (a, b) = (&v[0].0, &v[1].0);
                let br = w.bracket(a, b);
                [&v[0].1, &v[1].1].into_iter().find_map(|u| {
                    let lhs = w.apply(&br, u);
                    let rhs = w.apply(a, &w.apply(b, u)).sub(&w.apply(b, &w.apply(a, u)));
                    verify::nonzero(&lhs.sub(&rhs))
                })
            },
        ),
    }
}

fn s_law(w: &WittSpec, rho: &RatVector, law: &str, cfg: &TrialConfig) -> Result<Report> {
    let family = "s";
    // Fail early on a bad ρ or ℓ < 2 instead of inside the trials.
    w.s_random(rho, &cfg.budget, &mut cfg.rng(0))?;
    let sample = |r: &mut ChaCha8Rng| w.s_random(rho, &cfg.budget, r).expect("checked above");
    let br = |a: &WittElem, b: &WittElem| w.bracket(a, b);
    Ok(match law {
        "skew" => verify::check_skew(family, cfg, sample, br),
        "jacobi" => verify::check_jacobi(family, cfg, sample, br),
        _ => verify::check_closure(family, cfg, sample, br, |x| {
            w.s_member(x, rho).unwrap_or(false)
        }),
    })
}

fn weyl_law(
    family: &str,
    kind: WeylKind,
    alg: &WeylAlgebra,
    pattern: &IdealPattern,
    law: &str,
    cfg: &TrialConfig,
) -> Result<Report> {
    let op = |r: &mut ChaCha8Rng| alg.random_op(&cfg.budget, r);
    let mul = |a: &WeylOp, b: &WeylOp| alg.mul(a, b);
    let factor = if kind == WeylKind::Sp { 2 } else { 1 };
    let raw = |r: &mut ChaCha8Rng| alg.random_pattern_matrix(pattern, factor, &cfg.budget, r);
    let mmul = |a: &WeylMatrix, b: &WeylMatrix| alg.matrix_mul(a, b).expect("sizes agree");
    let mbr = |a: &WeylMatrix, b: &WeylMatrix| alg.matrix_bracket(a, b).expect("sizes agree");
    let report = match law {
        "associativity" => verify::check_identity(
            law,
            family,
            cfg,
            |r| vec![op(r), op(r), op(r)],
            |v| verify::nonzero(&mul(&mul(&v[0], &v[1]), &v[2]).sub(&mul(&v[0], &mul(&v[1], &v[2])))),
        ),
        "composition" => verify::check_identity(
            law,
            family,
            cfg,
            |r| {
                let u = alg.witt().base().random_elem(&cfg.budget, r);
                vec![(op(r), u), (op(r), AlgElem::zero())]
            },
            |v| {
                let (a, b, u) = (&v[0].0, &v[1].0, &v[0].1);
                let lhs = alg.apply(&mul(a, b), u);
                verify::nonzero(&lhs.sub(&alg.apply(a, &alg.apply(b, u))))
            },
        ),
        "tau" => verify::check_involution(family, cfg, op, |a| alg.tau(a, pattern.ell_prime), mul),
        "closure" => match kind {
            WeylKind::Gl | WeylKind::Sl => {
                verify::check_closure(family, cfg, raw, mbr, |x| alg.gl_member(x, pattern))
            }
            WeylKind::O => {
                let sample = |r: &mut ChaCha8Rng| {
                    alg.o_project(&raw(r), pattern).expect("pattern members project")
                };
                verify::check_closure(family, cfg, sample, mbr, |x| alg.o_member(x, pattern))
            }
            WeylKind::Sp => {
                let sample = |r: &mut ChaCha8Rng| {
                    alg.sp_project(&raw(r), pattern).expect("pattern members project")
                };
                verify::check_closure(family, cfg, sample, mbr, |x| alg.sp_member(x, pattern))
            }
        },
        "sl-rep" => verify::check_identity(
            law,
            family,
            cfg,
            |r| {
                let c = random_coeff(&cfg.budget, r);
                vec![(raw(r), alg.scalar(&c))]
            },
            |v| {
                let (a, c) = (&v[0].0, v[0].1.constant_coeff());
                let shifted = a.add(&alg.scalar_matrix(a.size(), &c));
                verify::nonzero(&alg.sl_rep(&shifted).sub(&alg.sl_rep(a)))
            },
        ),
        "star" => verify::check_involution(family, cfg, raw, |a| alg.star(a, pattern), mmul),
        _ => {
            // ρ on every slot: ρ_{ji}(ρ_{ij}(a)) = a for a = ∂̃^{n_i} r ∂̃^{m_j}.
            let k = pattern.k();
            verify::check_identity(
                law,
                family,
                cfg,
                |r| vec![op(r)],
                |v| {
                    (0..k * k).find_map(|s| {
                        let (i, j) = (s / k, s % k);
                        let a = alg.slot_embed(&v[0], i, j, pattern);
                        let back = alg
                            .rho_signed(&a, i, j, pattern)
                            .and_then(|b| alg.rho_signed(&b, j, i, pattern));
                        match back {
                            Ok(b) => verify::nonzero(&b.sub(&a)).map(|x| format!("slot ({i},{j}): {x}")),
                            Err(e) => Some(format!("slot ({i},{j}): map undefined: {e}")),
                        }
                    })
                },
            )
        }
    };
    Ok(report)
}
