//! Text syntax for elements: a recursive-descent parser and the canonical
//! renderer.
//!
//! ```text
//! element  := ['+'|'-'] term (('+'|'-') term)* ;
//! term     := rational | [rational '*'] factor ('*' factor)* ;
//! rational := ['-'] digits ['/' digits] ;
//! factor   := 'x[' rational (',' rational)* ']' | 't[' digits (',' digits)* ']'
//!           | 'D[' digits ']' | 'P[' digits (',' digits)* ']' ;
//! super    := 'even{' [element] '}' 'odd{' [element] '}' ;
//! ```
//!
//! `D[p]` names the derivation `∂_p` with `p` counted from 1. Rendering always
//! prints the coefficient (`1*x[3,0]`, `-1*D[1]`), omits zero `x`, `t` and
//! `P` parts, and prints the zero element as `0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::block::SuperElem;
use crate::error::{Error, Result};
use crate::grpalg::{AlgElem, AlgebraSpec, Monomial};
use crate::rational::{fmt_rational, RatVector, Rational};
use crate::weyl::{WeylAlgebra, WeylMatrix, WeylOp};
use crate::witt::{WittElem, WittSpec};

/// One parsed term before it is interpreted against an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTerm {
    pub coeff: Rational,
    pub x: Option<Vec<Rational>>,
    pub t: Option<Vec<u32>>,
    /// 1-based derivation indices, one entry per `D[·]` factor.
    pub d: Vec<usize>,
    pub p: Option<Vec<u32>>,
    /// Byte offset of the term, for diagnostics.
    pub pos: usize,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    base: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, base: usize) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            base,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.base + self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("ascii digits parse"))
    }

    fn small(&mut self) -> Result<u32> {
        let pos = self.pos;
        let n = self.digits()?;
        u32::try_from(n).map_err(|_| Error::parse(self.base + pos, "integer too large"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let neg = self.eat(b'-');
        let num = self.digits()?;
        let den = if self.eat(b'/') {
            let pos = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                return Err(Error::parse(self.base + pos, "zero denominator"));
            }
            d
        } else {
            BigInt::one()
        };
        let r = Rational::new(num, den);
        Ok(if neg { -r } else { r })
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.expect(b'[')?;
        let mut out = vec![item(self)?];
        while self.eat(b',') {
            out.push(item(self)?);
        }
        self.expect(b']')?;
        Ok(out)
    }

    fn factor(&mut self, term: &mut RawTerm) -> Result<()> {
        let tag = self.peek().ok_or_else(|| self.err("expected a factor"))?;
        self.pos += 1;
        match tag {
            b'x' => {
                let v = self.list(Self::rational)?;
                merge(&mut term.x, v, |a, b| a + b, self.base + self.pos)?;
            }
            b't' => {
                let v = self.list(Self::small)?;
                merge(&mut term.t, v, |a, b| a + b, self.base + self.pos)?;
            }
            b'P' => {
                let v = self.list(Self::small)?;
                merge(&mut term.p, v, |a, b| a + b, self.base + self.pos)?;
            }
            b'D' => {
                self.expect(b'[')?;
                let pos = self.pos;
                let p = self.small()? as usize;
                if p == 0 {
                    return Err(Error::parse(self.base + pos, "derivations are numbered from 1"));
                }
                self.expect(b']')?;
                term.d.push(p);
            }
            _ => {
                self.pos -= 1;
                return Err(self.err("expected one of x[, t[, D[, P["));
            }
        }
        Ok(())
    }

    fn term(&mut self, sign: bool) -> Result<RawTerm> {
        self.skip_ws();
        let mut term = RawTerm {
            coeff: Rational::one(),
            x: None,
            t: None,
            d: Vec::new(),
            p: None,
            pos: self.base + self.pos,
        };
        let starts_number = matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == b'-');
        if starts_number {
            term.coeff = self.rational()?;
            if !self.eat(b'*') {
                if !sign {
                    term.coeff = -term.coeff;
                }
                return Ok(term);
            }
        }
        self.factor(&mut term)?;
        while self.eat(b'*') {
            self.factor(&mut term)?;
        }
        if !sign {
            term.coeff = -term.coeff;
        }
        Ok(term)
    }

    fn element(&mut self) -> Result<Vec<RawTerm>> {
        let mut sign = true;
        if self.eat(b'-') {
            sign = false;
        } else {
            self.eat(b'+');
        }
        let mut out = vec![self.term(sign)?];
        loop {
            if self.eat(b'+') {
                out.push(self.term(true)?);
            } else if self.eat(b'-') {
                out.push(self.term(false)?);
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            Err(self.err("unexpected trailing input"))
        } else {
            Ok(())
        }
    }
}

fn merge<T: Clone>(
    slot: &mut Option<Vec<T>>,
    v: Vec<T>,
    add: impl Fn(&T, &T) -> T,
    pos: usize,
) -> Result<()> {
    match slot {
        None => *slot = Some(v),
        Some(old) => {
            if old.len() != v.len() {
                return Err(Error::parse(pos, "repeated factor with a different arity"));
            }
            *old = old.iter().zip(&v).map(|(a, b)| add(a, b)).collect();
        }
    }
    Ok(())
}

/// Parses an element into raw terms without interpreting it.
pub fn parse_raw(src: &str) -> Result<Vec<RawTerm>> {
    let mut p = Parser::new(src, 0);
    let out = p.element()?;
    p.finish()?;
    Ok(out)
}

fn monomial_of(spec: &AlgebraSpec, t: &RawTerm) -> Result<Monomial> {
    let gamma = match &t.x {
        Some(v) if v.len() != spec.group_dim() => {
            return Err(Error::parse(
                t.pos,
                format!("x[..] needs {} entries, found {}", spec.group_dim(), v.len()),
            ))
        }
        Some(v) => RatVector(v.clone()),
        None => RatVector::zeros(spec.group_dim()),
    };
    let i = match &t.t {
        Some(v) if v.len() != spec.d() => {
            return Err(Error::parse(
                t.pos,
                format!("t[..] needs {} entries, found {}", spec.d(), v.len()),
            ))
        }
        Some(v) => v.clone(),
        None => vec![0; spec.d()],
    };
    let m = Monomial::new(gamma, i);
    spec.check_monomial(&m)
        .map_err(|e| Error::parse(t.pos, e.to_string()))?;
    Ok(m)
}

fn alg_from_terms(spec: &AlgebraSpec, terms: &[RawTerm]) -> Result<AlgElem> {
    let mut out = AlgElem::zero();
    for t in terms {
        if !t.d.is_empty() || t.p.is_some() {
            return Err(Error::parse(t.pos, "D[..] and P[..] are not allowed here"));
        }
        out.add_term(monomial_of(spec, t)?, t.coeff.clone());
    }
    Ok(out)
}

/// Parses an element of `A(Γ, J)`.
pub fn parse_alg(spec: &AlgebraSpec, src: &str) -> Result<AlgElem> {
    alg_from_terms(spec, &parse_raw(src)?)
}

/// Parses a Witt-type element: every non-zero term carries exactly one `D[p]`.
pub fn parse_witt(spec: &WittSpec, src: &str) -> Result<WittElem> {
    let mut w = spec.zero();
    for t in parse_raw(src)? {
        if t.p.is_some() {
            return Err(Error::parse(t.pos, "P[..] is not allowed in Witt elements"));
        }
        let bare_zero = t.coeff.is_zero() && t.x.is_none() && t.t.is_none() && t.d.is_empty();
        if bare_zero {
            continue;
        }
        let p = match t.d.as_slice() {
            [p] if *p <= spec.l() => *p - 1,
            [p] => {
                return Err(Error::parse(
                    t.pos,
                    format!("D[{p}] out of range 1..={}", spec.l()),
                ))
            }
            _ => return Err(Error::parse(t.pos, "each term needs exactly one D[p]")),
        };
        let m = monomial_of(spec.base(), &t)?;
        w.coeffs[p].add_term(m, t.coeff);
    }
    Ok(w)
}

/// Parses `even{…} odd{…}`; either side may be empty.
pub fn parse_super(spec: &AlgebraSpec, src: &str) -> Result<SuperElem> {
    let mut p = Parser::new(src, 0);
    let side = |p: &mut Parser, name: &str| -> Result<AlgElem> {
        p.skip_ws();
        if !p.src[p.pos..].starts_with(name.as_bytes()) {
            return Err(p.err(format!("expected `{name}{{`")));
        }
        p.pos += name.len();
        p.expect(b'{')?;
        if p.eat(b'}') {
            return Ok(AlgElem::zero());
        }
        let terms = p.element()?;
        p.expect(b'}')?;
        alg_from_terms(spec, &terms)
    };
    let even = side(&mut p, "even")?;
    let odd = side(&mut p, "odd")?;
    p.finish()?;
    Ok(SuperElem::new(even, odd))
}

/// Parses a Weyl operator; `D[p]` is shorthand for `P[e_p]`.
pub fn parse_weyl(alg: &WeylAlgebra, src: &str) -> Result<WeylOp> {
    let l = alg.l();
    let base = alg.witt().base();
    let mut out = WeylOp::zero();
    for t in parse_raw(src)? {
        let mut n = match &t.p {
            Some(v) if v.len() != l => {
                return Err(Error::parse(
                    t.pos,
                    format!("P[..] needs {l} entries, found {}", v.len()),
                ))
            }
            Some(v) => v.clone(),
            None => vec![0; l],
        };
        for &p in &t.d {
            if p > l {
                return Err(Error::parse(t.pos, format!("D[{p}] out of range 1..={l}")));
            }
            n[p - 1] += 1;
        }
        let m = monomial_of(base, &t)?;
        out.add_term(m, n, t.coeff);
    }
    Ok(out)
}

/// Parses a JSON array of rows of Weyl operator strings.
pub fn parse_weyl_matrix(alg: &WeylAlgebra, src: &str) -> Result<WeylMatrix> {
    let rows: Vec<Vec<String>> =
        serde_json::from_str(src).map_err(|e| Error::parse(0, format!("bad matrix JSON: {e}")))?;
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_weyl(alg, s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    WeylMatrix::from_rows(rows)
}

fn join_list<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// The `x[..]*t[..]` factors of a monomial, empty for `1`.
pub fn render_factors(m: &Monomial) -> Vec<String> {
    let mut out = Vec::new();
    if !m.gamma.is_zero() {
        out.push(format!("x[{}]", m.gamma.to_strings().join(",")));
    }
    if m.i.iter().any(|&e| e != 0) {
        out.push(format!("t[{}]", join_list(&m.i)));
    }
    out
}

/// Joins `(coefficient, factors)` pairs in the canonical style.
fn render_terms(terms: impl IntoIterator<Item = (Rational, Vec<String>)>) -> String {
    let mut out = String::new();
    for (c, factors) in terms {
        let body = std::iter::once(fmt_rational(&c.abs()))
            .chain(factors)
            .collect::<Vec<_>>()
            .join("*");
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn render_alg(a: &AlgElem) -> String {
    render_terms(a.terms().map(|(m, c)| (c.clone(), render_factors(m))))
}

pub fn render_witt(w: &WittElem) -> String {
    render_terms(w.coeffs.iter().enumerate().flat_map(|(p, a)| {
        a.terms().map(move |(m, c)| {
            let mut f = render_factors(m);
            f.push(format!("D[{}]", p + 1));
            (c.clone(), f)
        })
    }))
}

fn render_side(a: &AlgElem) -> String {
    if a.is_zero() {
        String::new()
    } else {
        render_alg(a)
    }
}

pub fn render_super(x: &SuperElem) -> String {
    format!("even{{{}}} odd{{{}}}", render_side(&x.even), render_side(&x.odd))
}

pub fn render_weyl(a: &WeylOp) -> String {
    render_terms(a.terms().map(|((m, n), c)| {
        let mut f = render_factors(m);
        if n.iter().any(|&e| e != 0) {
            f.push(format!("P[{}]", join_list(n)));
        }
        (c.clone(), f)
    }))
}

/// Rows of rendered entries, as a compact JSON array.
pub fn render_weyl_matrix(a: &WeylMatrix) -> String {
    let rows: Vec<Vec<String>> = a.rows().map(|r| r.iter().map(render_weyl).collect()).collect();
    serde_json::to_string(&rows).expect("string arrays always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpalg::JFlag;
    use crate::lattice::Lattice;
    use crate::rational::{int, rat};

    fn spec() -> AlgebraSpec {
        AlgebraSpec::new(Lattice::integral(2), vec![JFlag::Nat, JFlag::Zero], 0).unwrap()
    }

    #[test]
    fn renders_canonically() {
        let s = spec();
        let a = AlgElem::from_terms([
            (s.x(RatVector::from_ints(&[3, 0])), int(1)),
            (s.one_monomial(), rat(-1, 2)),
            (s.t(vec![2, 0]), int(-4)),
        ]);
        assert_eq!(render_alg(&a), "-1/2 - 4*t[2,0] + 1*x[3,0]");
        assert_eq!(render_alg(&AlgElem::zero()), "0");
    }

    #[test]
    fn parses_and_round_trips() {
        let s = spec();
        let a = parse_alg(&s, "-2*x[1,-1]*t[1,0] + 3/4 - x[0,1]*x[1,0]").unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.coeff(&s.x(RatVector::from_ints(&[1, 1]))), int(-1));
        assert_eq!(parse_alg(&s, &render_alg(&a)).unwrap(), a);
        assert_eq!(parse_alg(&s, "0").unwrap(), AlgElem::zero());
        assert_eq!(parse_alg(&s, "x[1,0] - x[1,0]").unwrap(), AlgElem::zero());
    }

    #[test]
    fn rejects_bad_input() {
        let s = spec();
        for bad in ["x[1]", "t[0,1]", "x[1/2,0]", "2*", "x[1,0] +", "D[1]", "y[1]", "1/0"] {
            assert!(matches!(parse_alg(&s, bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn witt_syntax() {
        let w = WittSpec::new(1, 0, 0, Lattice::zero(0)).unwrap();
        let a = parse_witt(&w, "t[1]*D[1]").unwrap();
        let b = parse_witt(&w, "D[1]").unwrap();
        assert_eq!(render_witt(&w.bracket(&a, &b)), "-1*D[1]");
        assert!(parse_witt(&w, "t[1]").is_err());
        assert!(parse_witt(&w, "D[2]").is_err());
        assert!(parse_witt(&w, "D[1]*D[1]").is_err());
        assert_eq!(parse_witt(&w, "0").unwrap(), w.zero());
    }

    #[test]
    fn super_syntax() {
        let s = spec();
        let x = parse_super(&s, "even{x[1,0]} odd{}").unwrap();
        assert_eq!(x.parity(), Some(0));
        assert_eq!(render_super(&x), "even{1*x[1,0]} odd{}");
        assert_eq!(parse_super(&s, &render_super(&x)).unwrap(), x);
        assert!(parse_super(&s, "even{x[1,0]}").is_err());
    }

    #[test]
    fn weyl_syntax() {
        let alg = WeylAlgebra::new(WittSpec::new(2, 0, 0, Lattice::zero(0)).unwrap());
        let a = parse_weyl(&alg, "t[1,0]*D[1]*D[1] + 2*P[0,3]").unwrap();
        assert_eq!(render_weyl(&a), "2*P[0,3] + 1*t[1,0]*P[2,0]");
        assert_eq!(parse_weyl(&alg, &render_weyl(&a)).unwrap(), a);
        let m = WeylMatrix::from_rows(vec![vec![a.clone(), WeylOp::zero()], vec![alg.one(), a]]).unwrap();
        let text = render_weyl_matrix(&m);
        assert_eq!(parse_weyl_matrix(&alg, &text).unwrap(), m);
    }
}
