//! Seeded property checks for algebraic laws, exact derived spans over finite
//! monomial windows, and a heuristic ideal-growth probe.
//!
//! Every trial draws its inputs from its own ChaCha stream (seed, trial), so a
//! report depends only on the [`TrialConfig`]. Trials run in parallel and the
//! first failing trial by index is the one reported.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::block::{SuperElem, SuperSpec};
use crate::error::Result;
use crate::expr;
use crate::grpalg::{AlgElem, AlgebraSpec, Budget, JFlag, Monomial};
use crate::rational::{int, RatVector, Rational};
use crate::weyl::{WeylKey, WeylMatrix, WeylOp};
use crate::witt::WittElem;

/// Elements a law can be checked on.
pub trait LawElem: Clone + PartialEq + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    /// Canonical text, parseable back by [`crate::expr`].
    fn render(&self) -> String;
    /// Copies of `self` with exactly one term removed.
    fn drop_one(&self) -> Vec<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }
}

/// Elements with a coordinate expansion over a monomial basis.
pub trait Sparse: LawElem {
    type Key: Ord + Clone + Debug + Send + Sync;
    fn entries(&self) -> Vec<(Self::Key, Rational)>;
}

impl LawElem for AlgElem {
    fn is_zero(&self) -> bool {
        AlgElem::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        AlgElem::add(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        AlgElem::scale(self, c)
    }
    fn render(&self) -> String {
        expr::render_alg(self)
    }
    fn drop_one(&self) -> Vec<Self> {
        self.terms()
            .map(|(m, _)| self.filter(|n| n != m))
            .collect()
    }
}

impl Sparse for AlgElem {
    type Key = Monomial;
    fn entries(&self) -> Vec<(Monomial, Rational)> {
        self.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
    }
}

impl LawElem for WittElem {
    fn is_zero(&self) -> bool {
        WittElem::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        WittElem::add(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        WittElem::scale(self, c)
    }
    fn render(&self) -> String {
        expr::render_witt(self)
    }
    fn drop_one(&self) -> Vec<Self> {
        let mut out = Vec::new();
        for (p, a) in self.coeffs.iter().enumerate() {
            for smaller in a.drop_one() {
                let mut w = self.clone();
                w.coeffs[p] = smaller;
                out.push(w);
            }
        }
        out
    }
}

impl Sparse for WittElem {
    type Key = (usize, Monomial);
    fn entries(&self) -> Vec<((usize, Monomial), Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(p, a)| a.terms().map(move |(m, c)| ((p, m.clone()), c.clone())))
            .collect()
    }
}

impl LawElem for SuperElem {
    fn is_zero(&self) -> bool {
        SuperElem::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        SuperElem::add(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        SuperElem::scale(self, c)
    }
    fn render(&self) -> String {
        expr::render_super(self)
    }
    fn drop_one(&self) -> Vec<Self> {
        let evens = self
            .even
            .drop_one()
            .into_iter()
            .map(|e| SuperElem::new(e, self.odd.clone()));
        let odds = self
            .odd
            .drop_one()
            .into_iter()
            .map(|o| SuperElem::new(self.even.clone(), o));
        evens.chain(odds).collect()
    }
}

impl Sparse for SuperElem {
    type Key = (u8, Monomial);
    fn entries(&self) -> Vec<((u8, Monomial), Rational)> {
        let even = self.even.terms().map(|(m, c)| ((0, m.clone()), c.clone()));
        let odd = self.odd.terms().map(|(m, c)| ((1, m.clone()), c.clone()));
        even.chain(odd).collect()
    }
}

impl LawElem for WeylOp {
    fn is_zero(&self) -> bool {
        WeylOp::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        WeylOp::add(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        WeylOp::scale(self, c)
    }
    fn render(&self) -> String {
        expr::render_weyl(self)
    }
    fn drop_one(&self) -> Vec<Self> {
        self.terms()
            .map(|((m, n), c)| {
                let mut w = self.clone();
                w.add_term(m.clone(), n.clone(), -c.clone());
                w
            })
            .collect()
    }
}

impl Sparse for WeylOp {
    type Key = WeylKey;
    fn entries(&self) -> Vec<(WeylKey, Rational)> {
        self.terms().map(|(k, c)| (k.clone(), c.clone())).collect()
    }
}

impl LawElem for WeylMatrix {
    fn is_zero(&self) -> bool {
        WeylMatrix::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        WeylMatrix::add(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        WeylMatrix::scale(self, c)
    }
    fn render(&self) -> String {
        expr::render_weyl_matrix(self)
    }
    fn drop_one(&self) -> Vec<Self> {
        let n = self.size();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for smaller in self.get(i, j).drop_one() {
                    let mut m = self.clone();
                    m.set(i, j, smaller);
                    out.push(m);
                }
            }
        }
        out
    }
}

/// Pairs such as an operator with a test function, rendered `a | b`.
impl<A: LawElem, B: LawElem> LawElem for (A, B) {
    fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        (self.0.add(&other.0), self.1.add(&other.1))
    }
    fn scale(&self, c: &Rational) -> Self {
        (self.0.scale(c), self.1.scale(c))
    }
    fn render(&self) -> String {
        format!("{} | {}", self.0.render(), self.1.render())
    }
    fn drop_one(&self) -> Vec<Self> {
        let left = self.0.drop_one().into_iter().map(|a| (a, self.1.clone()));
        let right = self.1.drop_one().into_iter().map(|b| (self.0.clone(), b));
        left.chain(right).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub seed: u64,
    pub trials: usize,
    pub budget: Budget,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            seed: 1,
            trials: 200,
            budget: Budget::default(),
        }
    }
}

impl TrialConfig {
    pub fn new(seed: u64, trials: usize) -> Self {
        TrialConfig {
            seed,
            trials,
            budget: Budget::default(),
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    /// The generator for trial `trial`: stream `trial` of the seeded cipher.
    pub fn rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }
}

/// A failing input tuple and its non-zero residual, both rendered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: usize,
    pub inputs: Vec<String>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub law: String,
    pub family: String,
    pub config: serde_json::Value,
    pub passed: bool,
    pub trials_run: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// `Some(rendering)` when `x` is non-zero.
pub fn nonzero<T: LawElem>(x: &T) -> Option<String> {
    (!x.is_zero()).then(|| x.render())
}

/// Greedy term-dropping: keep removing single terms while the residual stays
/// non-zero.
fn minimize<T: LawElem>(
    mut inputs: Vec<T>,
    mut residual: String,
    check: &(impl Fn(&[T]) -> Option<String> + Sync),
) -> (Vec<T>, String) {
    'outer: loop {
        for idx in 0..inputs.len() {
            for cand in inputs[idx].drop_one() {
                let mut trial = inputs.clone();
                trial[idx] = cand;
                if let Some(r) = check(&trial) {
                    inputs = trial;
                    residual = r;
                    continue 'outer;
                }
            }
        }
        return (inputs, residual);
    }
}

/// Runs `cfg.trials` trials of an arbitrary identity: `sample` draws the
/// inputs and `residual` returns `Some` on failure.
pub fn check_identity<T: LawElem>(
    law: &str,
    family: &str,
    cfg: &TrialConfig,
    sample: impl Fn(&mut ChaCha8Rng) -> Vec<T> + Sync,
    residual: impl Fn(&[T]) -> Option<String> + Sync,
) -> Report {
    check_identity_with(law, family, cfg, json!(cfg), sample, residual)
}

fn check_identity_with<T: LawElem>(
    law: &str,
    family: &str,
    cfg: &TrialConfig,
    config: serde_json::Value,
    sample: impl Fn(&mut ChaCha8Rng) -> Vec<T> + Sync,
    residual: impl Fn(&[T]) -> Option<String> + Sync,
) -> Report {
    let failure = (0..cfg.trials).into_par_iter().find_map_first(|t| {
        let inputs = sample(&mut cfg.rng(t));
        residual(&inputs).map(|r| (t, inputs, r))
    });
    let (trials_run, witness) = match failure {
        None => (cfg.trials, None),
        Some((t, inputs, r)) => {
            let (inputs, r) = minimize(inputs, r, &residual);
            let witness = Witness {
                trial: t,
                inputs: inputs.iter().map(LawElem::render).collect(),
                residual: r,
            };
            (t + 1, Some(witness))
        }
    };
    Report {
        law: law.to_string(),
        family: family.to_string(),
        config,
        passed: witness.is_none(),
        trials_run,
        witness,
    }
}

/// `[a,b] + [b,a] = 0`.
pub fn check_skew<T: LawElem>(
    family: &str,
    cfg: &TrialConfig,
    sample: impl Fn(&mut ChaCha8Rng) -> T + Sync,
    bracket: impl Fn(&T, &T) -> T + Sync,
) -> Report {
    check_identity(
        "skew",
        family,
        cfg,
        |r| vec![sample(r), sample(r)],
        |v| nonzero(&bracket(&v[0], &v[1]).add(&bracket(&v[1], &v[0]))),
    )
}

/// `[[a,b],c] + [[b,c],a] + [[c,a],b] = 0`.
pub fn check_jacobi<T: LawElem>(
    family: &str,
    cfg: &TrialConfig,
    sample: impl Fn(&mut ChaCha8Rng) -> T + Sync,
    bracket: impl Fn(&T, &T) -> T + Sync,
) -> Report {
    check_identity(
        "jacobi",
        family,
        cfg,
        |r| vec![sample(r), sample(r), sample(r)],
        |v| {
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            let sum = bracket(&bracket(a, b), c)
                .add(&bracket(&bracket(b, c), a))
                .add(&bracket(&bracket(c, a), b));
            nonzero(&sum)
        },
    )
}

fn sign(p: u8, q: u8) -> Rational {
    if p * q % 2 == 1 {
        int(-1)
    } else {
        Rational::one()
    }
}

/// Graded skewness and the graded Jacobi identity on random homogeneous
/// triples of independently chosen parities.
pub fn check_super_jacobi(family: &str, spec: &SuperSpec, cfg: &TrialConfig) -> Report {
    let budget = cfg.budget;
    check_identity(
        "super-jacobi",
        family,
        cfg,
        |r| {
            (0..3)
                .map(|_| {
                    let parity = r.gen_range(0..2u8);
                    spec.random_homogeneous(parity, &budget, r)
                })
                .collect()
        },
        |v| {
            let br = |a: &SuperElem, b: &SuperElem| spec.bracket(a, b);
            let par = |a: &SuperElem| a.parity().unwrap_or(0);
            let (x, y, z) = (&v[0], &v[1], &v[2]);
            let (px, py, pz) = (par(x), par(y), par(z));
            let skew = br(x, y).add(&br(y, x).scale(&sign(px, py)));
            if !skew.is_zero() {
                return Some(format!("graded skew: {}", skew.render()));
            }
            let sum = br(&br(x, y), z)
                .scale(&sign(px, pz))
                .add(&br(&br(y, z), x).scale(&sign(py, px)))
                .add(&br(&br(z, x), y).scale(&sign(pz, py)));
            nonzero(&sum).map(|s| format!("graded jacobi: {s}"))
        },
    )
}

/// `[candidate, a] = 0` for random `a`.
pub fn check_centrality<T: LawElem>(
    family: &str,
    cfg: &TrialConfig,
    candidate: &T,
    sample: impl Fn(&mut ChaCha8Rng) -> T + Sync,
    bracket: impl Fn(&T, &T) -> T + Sync,
) -> Report {
    let config = json!({ "candidate": candidate.render(), "trials": cfg });
    check_identity_with(
        "centrality",
        family,
        cfg,
        config,
        |r| vec![sample(r)],
        |v| nonzero(&bracket(candidate, &v[0])),
    )
}

/// `[candidate, b] = 0` for every `b` of a finite window, in order.
pub fn check_centrality_window<T: LawElem>(
    family: &str,
    candidate: &T,
    window: &[T],
    bracket: impl Fn(&T, &T) -> T + Sync,
) -> Report {
    let failure = window
        .par_iter()
        .enumerate()
        .find_map_first(|(i, b)| nonzero(&bracket(candidate, b)).map(|r| (i, r)));
    let witness = failure.as_ref().map(|(i, r)| Witness {
        trial: *i,
        inputs: vec![window[*i].render()],
        residual: r.clone(),
    });
    Report {
        law: "centrality-window".into(),
        family: family.into(),
        config: json!({ "candidate": candidate.render(), "window": window.len() }),
        passed: witness.is_none(),
        trials_run: failure.map_or(window.len(), |(i, _)| i + 1),
        witness,
    }
}

/// `[u, v·w] = [u,v]·w + v·[u,w]`.
pub fn check_leibniz<T: LawElem>(
    family: &str,
    cfg: &TrialConfig,
    sample: impl Fn(&mut ChaCha8Rng) -> T + Sync,
    bracket: impl Fn(&T, &T) -> T + Sync,
    product: impl Fn(&T, &T) -> T + Sync,
) -> Report {
    check_identity(
        "leibniz",
        family,
        cfg,
        |r| vec![sample(r), sample(r), sample(r)],
        |x| {
            let (u, v, w) = (&x[0], &x[1], &x[2]);
            let lhs = bracket(u, &product(v, w));
            let rhs = product(&bracket(u, v), w).add(&product(v, &bracket(u, w)));
            nonzero(&lhs.sub(&rhs))
        },
    )
}

/// `member([a,b])` for sampled `a, b`.
pub fn check_closure<T: LawElem>(
    family: &str,
    cfg: &TrialConfig,
    sample: impl Fn(&mut ChaCha8Rng) -> T + Sync,
    bracket: impl Fn(&T, &T) -> T + Sync,
    member: impl Fn(&T) -> bool + Sync,
) -> Report {
    check_identity(
        "closure",
        family,
        cfg,
        |r| vec![sample(r), sample(r)],
        |v| {
            let b = bracket(&v[0], &v[1]);
            (!member(&b)).then(|| b.render())
        },
    )
}

/// `f(f(a)) = a` and `f(a·b) = f(b)·f(a)`.
pub fn check_involution<T: LawElem>(
    family: &str,
    cfg: &TrialConfig,
    sample: impl Fn(&mut ChaCha8Rng) -> T + Sync,
    map: impl Fn(&T) -> Result<T> + Sync,
    product: impl Fn(&T, &T) -> T + Sync,
) -> Report {
    check_identity(
        "involution",
        family,
        cfg,
        |r| vec![sample(r), sample(r)],
        |v| {
            let (a, b) = (&v[0], &v[1]);
            let run = || -> Result<Option<String>> {
                let twice = map(&map(a)?)?;
                if let Some(r) = nonzero(&twice.sub(a)) {
                    return Ok(Some(format!("involutivity: {r}")));
                }
                let lhs = map(&product(a, b))?;
                let rhs = product(&map(b)?, &map(a)?);
                Ok(nonzero(&lhs.sub(&rhs)).map(|r| format!("anti-multiplicativity: {r}")))
            };
            run().unwrap_or_else(|e| Some(format!("map undefined: {e}")))
        },
    )
}

/// Sparse row echelon form with a two-tier column order: keys outside the
/// window pivot first, so rows pivoting inside the window span exactly the
/// intersection with the window.
#[derive(Clone, Debug)]
struct Echelon<K: Ord> {
    rows: BTreeMap<(u8, K), BTreeMap<(u8, K), Rational>>,
}

type Row<K> = BTreeMap<(u8, K), Rational>;

impl<K: Ord + Clone> Echelon<K> {
    fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }

    fn reduce(&self, mut v: Row<K>) -> Row<K> {
        for (p, row) in &self.rows {
            if let Some(c) = v.get(p).cloned() {
                for (k, x) in row {
                    let e = v.entry(k.clone()).or_insert_with(Rational::zero);
                    *e -= &c * x;
                    if e.is_zero() {
                        v.remove(k);
                    }
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    fn insert(&mut self, v: Row<K>) -> bool {
        let v = self.reduce(v);
        let Some((pivot, lead)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let v: Row<K> = v.into_iter().map(|(k, c)| (k, c / &lead)).collect();
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                for (k, x) in &v {
                    let e = row.entry(k.clone()).or_insert_with(Rational::zero);
                    *e -= &c * x;
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
            }
        }
        self.rows.insert(pivot, v);
        true
    }

    fn inside_rows(&self) -> impl Iterator<Item = &Row<K>> {
        self.rows.iter().filter(|((tier, _), _)| *tier == 1).map(|(_, r)| r)
    }
}

/// Window bookkeeping: each key of a single-term window element maps to that
/// element normalized to coefficient 1.
struct Window<T: Sparse> {
    basis: BTreeMap<T::Key, T>,
}

impl<T: Sparse> Window<T> {
    fn new(window: &[T]) -> Self {
        let mut basis = BTreeMap::new();
        for w in window {
            for (k, c) in w.entries() {
                basis
                    .entry(k)
                    .or_insert_with(|| w.scale(&(Rational::one() / c)));
            }
        }
        Window { basis }
    }

    fn row(&self, x: &T) -> (Row<T::Key>, bool) {
        let mut leaked = false;
        let row = x
            .entries()
            .into_iter()
            .map(|(k, c)| {
                let tier = u8::from(self.basis.contains_key(&k));
                leaked |= tier == 0;
                ((tier, k), c)
            })
            .collect();
        (row, leaked)
    }

    /// Rebuilds an element from its in-window coordinates.
    fn element(&self, row: &Row<T::Key>, zero: &T) -> T {
        row.iter()
            .filter(|((tier, _), _)| *tier == 1)
            .fold(zero.clone(), |acc, ((_, k), c)| acc.add(&self.basis[k].scale(c)))
    }
}

/// Exact derived spans of a finite window.
#[derive(Clone, Debug)]
pub struct DerivedWindow<T: Sparse> {
    window: Vec<T>,
    levels: Vec<Echelon<T::Key>>,
    /// Per level, the pairs `(i, j)` whose bracket leaves the window.
    pub leakage: Vec<Vec<(usize, usize)>>,
}

/// Serializable summary of a [`DerivedWindow`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedSummary {
    pub window_dim: usize,
    pub dims: Vec<usize>,
    pub leaked_pairs: Vec<usize>,
    pub missing: Vec<String>,
}

impl<T: Sparse> DerivedWindow<T> {
    /// Dimension of each derived level inside the window.
    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|e| e.inside_rows().count()).collect()
    }

    /// Whether `x` lies in the deepest computed level.
    pub fn contains(&self, x: &T) -> bool {
        let w = Window::new(&self.window);
        let (row, leaked) = w.row(x);
        let Some(last) = self.levels.last() else {
            return x.is_zero();
        };
        !leaked && last.reduce(row).is_empty()
    }

    /// Window elements not in the deepest level, in window order.
    pub fn missing(&self) -> Vec<T> {
        self.window.iter().filter(|x| !self.contains(x)).cloned().collect()
    }

    pub fn leakage_free(&self) -> bool {
        self.leakage.iter().all(Vec::is_empty)
    }

    pub fn summary(&self) -> DerivedSummary {
        DerivedSummary {
            window_dim: self.window.len(),
            dims: self.dims(),
            leaked_pairs: self.leakage.iter().map(Vec::len).collect(),
            missing: self.missing().iter().map(LawElem::render).collect(),
        }
    }
}

/// Iterates `V_0 = window`, `V_{n+1} = span[V_n, V_n] ∩ span(window)` for
/// `depth` levels. `window` must consist of single-term elements; brackets
/// leaving the window are recorded in `leakage`.
pub fn derived_window<T: Sparse>(
    window: &[T],
    zero: &T,
    depth: usize,
    bracket: impl Fn(&T, &T) -> T + Sync,
) -> DerivedWindow<T> {
    derived_span(window, window, zero, depth, bracket)
}

/// Like [`derived_window`], but starts from arbitrary `generators` whose
/// terms lie in the span of the single-term `window`. This covers
/// subalgebras such as divergence-free fields, whose natural basis
/// elements have several terms.
pub fn derived_span<T: Sparse>(
    generators: &[T],
    window: &[T],
    zero: &T,
    depth: usize,
    bracket: impl Fn(&T, &T) -> T + Sync,
) -> DerivedWindow<T> {
    let w = Window::new(window);
    let mut current: Vec<T> = generators.to_vec();
    let mut levels = Vec::new();
    let mut leakage = Vec::new();
    for _ in 0..depth {
        let pairs: Vec<(usize, usize)> = (0..current.len())
            .flat_map(|i| (i..current.len()).map(move |j| (i, j)))
            .collect();
        let rows: Vec<(Row<T::Key>, bool)> = pairs
            .par_iter()
            .map(|&(i, j)| w.row(&bracket(&current[i], &current[j])))
            .collect();
        let mut ech = Echelon::new();
        let mut leaked = Vec::new();
        for (&(i, j), (row, leak)) in pairs.iter().zip(rows) {
            if leak {
                leaked.push((i, j));
            }
            ech.insert(row);
        }
        current = ech.inside_rows().map(|r| w.element(r, zero)).collect();
        levels.push(ech);
        leakage.push(leaked);
    }
    DerivedWindow {
        window: window.to_vec(),
        levels,
        leakage,
    }
}

/// Output of [`ideal_probe`]; the label is always `"heuristic"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub label: &'static str,
    pub window_dim: usize,
    pub dims: Vec<usize>,
    pub truncated_terms: usize,
}

/// Repeatedly brackets `elem` with the window and records the dimension of
/// the reached subspace after each round. Terms leaving the window are
/// dropped and counted, so the result is evidence only.
pub fn ideal_probe<T: Sparse>(
    elem: &T,
    window: &[T],
    zero: &T,
    depth: usize,
    bracket: impl Fn(&T, &T) -> T + Sync,
) -> ProbeReport {
    let w = Window::new(window);
    let mut truncated = 0usize;
    let mut project = |x: &T| -> Row<T::Key> {
        let (row, _) = w.row(x);
        let before = row.len();
        let row: Row<T::Key> = row.into_iter().filter(|((tier, _), _)| *tier == 1).collect();
        truncated += before - row.len();
        row
    };
    let mut ech = Echelon::new();
    let start = project(elem);
    let mut frontier = Vec::new();
    if ech.insert(start.clone()) {
        frontier.push(w.element(&start, zero));
    }
    let mut dims = vec![ech.rows.len()];
    for _ in 0..depth {
        if frontier.is_empty() {
            break;
        }
        let products: Vec<T> = frontier
            .par_iter()
            .flat_map_iter(|v| window.iter().map(|b| bracket(b, v)).collect::<Vec<_>>())
            .collect();
        let mut next = Vec::new();
        for p in &products {
            let row = project(p);
            if ech.insert(row.clone()) {
                next.push(w.element(&row, zero));
            }
        }
        frontier = next;
        dims.push(ech.rows.len());
    }
    ProbeReport {
        label: "heuristic",
        window_dim: w.basis.len(),
        dims,
        truncated_terms: truncated,
    }
}

/// All monomials `x^{γ,i}` with `γ = Σ c_r b_r` over the canonical basis of
/// Γ, `|c_r| ≤ coeff_bound`, and `i_p ≤ nat_bound` on ℕ coordinates.
pub fn monomial_window(spec: &AlgebraSpec, coeff_bound: i64, nat_bound: u32) -> Vec<Monomial> {
    let basis = spec.gamma().basis();
    let dim = spec.group_dim();
    let mut gammas = vec![RatVector::zeros(dim)];
    for b in &basis {
        gammas = gammas
            .iter()
            .flat_map(|g| (-coeff_bound..=coeff_bound).map(move |c| g + &b.scale(&int(c))))
            .collect();
    }
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for flag in spec.j() {
        let top = if *flag == JFlag::Nat { nat_bound } else { 0 };
        exps = exps
            .iter()
            .flat_map(|e| {
                (0..=top).map(move |x| {
                    let mut e = e.clone();
                    e.push(x);
                    e
                })
            })
            .collect();
    }
    let set: BTreeSet<Monomial> = gammas
        .iter()
        .flat_map(|g| exps.iter().map(move |i| Monomial::new(g.clone(), i.clone())))
        .collect();
    set.into_iter().collect()
}

/// The window as unit elements of `A`.
pub fn alg_window(spec: &AlgebraSpec, coeff_bound: i64, nat_bound: u32) -> Vec<AlgElem> {
    monomial_window(spec, coeff_bound, nat_bound)
        .into_iter()
        .map(AlgElem::monomial)
        .collect()
}

/// Even then odd copies of the window.
pub fn super_window(spec: &AlgebraSpec, coeff_bound: i64, nat_bound: u32) -> Vec<SuperElem> {
    let w = alg_window(spec, coeff_bound, nat_bound);
    w.iter()
        .cloned()
        .map(SuperElem::even)
        .chain(w.iter().cloned().map(SuperElem::odd))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::BlockISpec;
    use crate::lattice::Lattice;
    use crate::witt::WittSpec;

    fn poly1() -> AlgebraSpec {
        AlgebraSpec::new(Lattice::zero(1), vec![JFlag::Nat], 0).unwrap()
    }

    #[test]
    fn zero_bracket_passes() {
        let s = poly1();
        let cfg = TrialConfig::new(1, 20);
        let zero = |_: &AlgElem, _: &AlgElem| AlgElem::zero();
        let sample = |r: &mut ChaCha8Rng| s.random_elem(&cfg.budget, r);
        assert!(check_skew("abelian", &cfg, sample, zero).passed);
        assert!(check_jacobi("abelian", &cfg, sample, zero).passed);
    }

    #[test]
    fn failures_are_minimized_and_deterministic() {
        let s = poly1();
        let cfg = TrialConfig::new(7, 50);
        let sample = |r: &mut ChaCha8Rng| s.random_elem(&cfg.budget, r);
        // The product is symmetric, so it fails skewness.
        let run = || check_skew("product", &cfg, sample, |a: &AlgElem, b: &AlgElem| a.mul(b));
        let rep = run();
        assert!(!rep.passed);
        let w = rep.witness.clone().unwrap();
        assert_eq!(rep.trials_run, w.trial + 1);
        for input in &w.inputs {
            assert_eq!(expr::parse_alg(&s, input).unwrap().len(), 1);
        }
        let a = expr::parse_alg(&s, &w.inputs[0]).unwrap();
        let b = expr::parse_alg(&s, &w.inputs[1]).unwrap();
        assert_eq!(a.mul(&b).scale(&int(2)).render(), w.residual);
        assert_eq!(run().to_json(), rep.to_json());
    }

    #[test]
    fn central_window() {
        let b = BlockISpec::new(
            AlgebraSpec::new(Lattice::integral(2), vec![JFlag::Zero; 2], 0).unwrap(),
        )
        .unwrap();
        let window = alg_window(b.base(), 2, 0);
        assert_eq!(window.len(), 25);
        let c = AlgElem::monomial(b.central().unwrap());
        let rep = check_centrality_window("block1", &c, &window, |x, y| b.bracket(x, y));
        assert!(rep.passed);
        let not_central = AlgElem::monomial(b.base().x(RatVector::from_ints(&[1, 0])));
        let rep = check_centrality_window("block1", &not_central, &window, |x, y| b.bracket(x, y));
        assert!(!rep.passed);
    }

    #[test]
    fn abelian_window_has_empty_derived_span() {
        let s = poly1();
        let window = alg_window(&s, 0, 3);
        let d = derived_window(&window, &AlgElem::zero(), 1, |_, _| AlgElem::zero());
        assert_eq!(d.dims(), vec![0]);
        assert_eq!(d.missing().len(), 4);
        assert!(d.leakage_free());
    }

    #[test]
    fn witt_probe_fills_window() {
        let w = WittSpec::new(1, 0, 0, Lattice::zero(0)).unwrap();
        let window: Vec<WittElem> = (0..=5)
            .map(|n| w.elem(AlgElem::monomial(w.base().t(vec![n])), 0))
            .collect();
        let d = w.elem(w.base().one(), 0);
        let rep = ideal_probe(&d, &window, &w.zero(), 6, |a, b| w.bracket(a, b));
        assert_eq!(rep.label, "heuristic");
        assert_eq!(*rep.dims.last().unwrap(), 6);
    }
}
