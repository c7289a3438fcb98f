//! Exact sparse multivariate (Laurent) polynomials over Q, their parsing,
//! canonical printing, evaluation, derivatives, face restriction and
//! monomial substitution by unimodular integer matrices.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::mat::{self, IVec};
use crate::{Error, Result};

pub type Rat = BigRational;

/// Exponent vector in Z^n (N^n for input polynomials).
pub type Expo = Vec<i64>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

/// Graded-lexicographic comparison (total degree first, then lex).
pub fn grlex(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Which ground field the map is considered over. Coefficients are always
/// exact rationals; the tag steers root filtering and the numeric oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Field {
    Real,
    Complex,
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Real => write!(f, "real"),
            Field::Complex => write!(f, "complex"),
        }
    }
}

/// Sparse polynomial: map from exponent vectors to nonzero rational
/// coefficients. The support is exactly the key set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Expo, Rat>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn monomial(n: usize, expo: Expo, c: Rat) -> Self {
        assert_eq!(expo.len(), n);
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(expo, c);
        }
        p
    }

    pub fn variable(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(n, e, Rat::one())
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Expo, Rat)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            p.add_term(&e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Rat)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Expo> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, e: &[i64]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&vec![0; self.n])
    }

    pub fn add_term(&mut self, e: &[i64], c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.to_vec()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(e);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n);
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n);
        let mut r = Polynomial::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Expo = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(&e, c1 * c2);
            }
        }
        r
    }

    /// Multiplies by the monomial x^v (v may be negative: Laurent shift).
    pub fn shift(&self, v: &[i64]) -> Polynomial {
        assert_eq!(v.len(), self.n);
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(v).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&x| x < 0))
    }

    /// Total degree (max over terms of the coordinate sum); zero poly -> 0.
    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> i64 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        let mut r = Polynomial::zero(self.n);
        for (e, c) in &self.terms {
            if e[var] != 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                r.add_term(&e2, c * rat(e[var]));
            }
        }
        r
    }

    pub fn eval_rat(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.n);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k >= 0 {
                    for _ in 0..k {
                        t *= &x[i];
                    }
                } else {
                    for _ in 0..(-k) {
                        t /= &x[i];
                    }
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = rat_to_f64(c);
                for (i, &k) in e.iter().enumerate() {
                    t *= x[i].powi(k as i32);
                }
                t
            })
            .sum()
    }

    pub fn eval_c64(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = Complex64::new(rat_to_f64(c), 0.0);
                for (i, &k) in e.iter().enumerate() {
                    t *= x[i].powi(k as i32);
                }
                t
            })
            .sum()
    }

    /// Sets variable `var` to an exact rational value; result keeps n vars
    /// with degree 0 in `var`.
    pub fn substitute_value(&self, var: usize, value: &Rat) -> Polynomial {
        let mut r = Polynomial::zero(self.n);
        for (e, c) in &self.terms {
            let k = e[var];
            assert!(k >= 0, "substitution into Laurent exponent");
            let mut t = c.clone();
            for _ in 0..k {
                t *= value;
            }
            let mut e2 = e.clone();
            e2[var] = 0;
            r.add_term(&e2, t);
        }
        r
    }

    /// Sets the trailing variables var >= keep to zero. Terms with a
    /// positive exponent there vanish; negative exponents are an error.
    pub fn set_trailing_zero(&self, keep: usize) -> Polynomial {
        let mut r = Polynomial::zero(self.n);
        for (e, c) in &self.terms {
            let tail = &e[keep..];
            assert!(
                tail.iter().all(|&x| x >= 0),
                "negative exponent hit a zero substitution"
            );
            if tail.iter().all(|&x| x == 0) {
                r.add_term(e, c.clone());
            }
        }
        r
    }

    /// Reinterprets the polynomial in the first `m` variables; every term
    /// must have zero exponents beyond position m.
    pub fn project_to(&self, m: usize) -> Polynomial {
        let mut r = Polynomial::zero(m);
        for (e, c) in &self.terms {
            assert!(e[m..].iter().all(|&x| x == 0), "projection loses exponents");
            r.add_term(&e[..m], c.clone());
        }
        r
    }

    /// Embeds into a larger variable set (new variables appended).
    pub fn embed(&self, n: usize) -> Polynomial {
        assert!(n >= self.n);
        let mut r = Polynomial::zero(n);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.resize(n, 0);
            r.add_term(&e2, c.clone());
        }
        r
    }

    /// Coefficients of the polynomial viewed as univariate in `var`, from
    /// degree 0 up; each coefficient has degree 0 in `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let d = self.degree_in(var);
        let mut out = vec![Polynomial::zero(self.n); (d + 1) as usize];
        for (e, c) in &self.terms {
            assert!(e[var] >= 0);
            let mut e2 = e.clone();
            let k = e2[var] as usize;
            e2[var] = 0;
            out[k].add_term(&e2, c.clone());
        }
        out
    }

    /// Monomial substitution x^a -> z^{Ua}. U acts on column vectors and
    /// must be unimodular; the result is a Laurent polynomial in general.
    pub fn monomial_substitute(&self, u: &[IVec]) -> Result<Polynomial> {
        if u.len() != self.n || u.iter().any(|r| r.len() != self.n) {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: u.len(),
            });
        }
        let d = mat::det(u);
        if d != 1 && d != -1 {
            return Err(Error::NotUnimodular(d));
        }
        let mut r = Polynomial::zero(self.n);
        for (e, c) in &self.terms {
            r.add_term(&mat::mat_vec(u, e), c.clone());
        }
        Ok(r)
    }

    /// Keeps exactly the terms whose exponents lie on the given face
    /// (a point set); used for the restricted sub-systems.
    pub fn restrict_to_points(&self, points: &[Expo]) -> Polynomial {
        let set: std::collections::BTreeSet<&Expo> = points.iter().collect();
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| set.contains(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Canonical text form: terms in descending graded-lex order, explicit
    /// `*` and `^`, rationals as p/q.
    pub fn display(&self, vars: &[&str]) -> String {
        assert_eq!(vars.len(), self.n);
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&Expo> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex(b, a));
        let mut out = String::new();
        for (idx, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let is_const = e.iter().all(|&x| x == 0);
            let mut factors: Vec<String> = vec![];
            if !mag.is_one() || is_const {
                factors.push(format_rat(&mag));
            }
            for (i, &k) in e.iter().enumerate() {
                if k == 1 {
                    factors.push(vars[i].to_string());
                } else if k != 0 {
                    factors.push(format!("{}^{}", vars[i], k));
                }
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        out
    }
}

pub fn format_rat(c: &Rat) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// A polynomial map f = (f_1, ..., f_n): K^n -> K^n.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialMap {
    pub components: Vec<Polynomial>,
    pub field: Field,
}

impl PolynomialMap {
    pub fn new(components: Vec<Polynomial>, field: Field) -> Result<Self> {
        let n = components.len();
        if n == 0 {
            return Err(Error::DegenerateMap("empty map".into()));
        }
        for p in &components {
            if p.nvars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: p.nvars(),
                });
            }
            if p.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            if p.has_negative_exponent() {
                return Err(Error::NegativeExponent);
            }
        }
        Ok(PolynomialMap { components, field })
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    /// f(0): the vector of constant terms.
    pub fn value_at_origin(&self) -> Vec<Rat> {
        self.components.iter().map(|p| p.constant_term()).collect()
    }

    /// True iff f(0) lies in the torus, i.e. every component has a nonzero
    /// constant term.
    pub fn is_normalized(&self) -> bool {
        self.components.iter().all(|p| !p.constant_term().is_zero())
    }

    /// The translation f - f(0) + c, which moves f(0) to c. The
    /// non-properness sets translate equivariantly; callers undo the shift
    /// on the outputs.
    pub fn translate(&self, c: &[Rat]) -> PolynomialMap {
        let n = self.n();
        let comps = self
            .components
            .iter()
            .zip(c)
            .map(|(p, ci)| {
                let shift = ci - p.constant_term();
                p.add(&Polynomial::constant(n, shift))
            })
            .collect();
        PolynomialMap {
            components: comps,
            field: self.field,
        }
    }

    pub fn eval_f64(&self, x: &[f64]) -> Vec<f64> {
        self.components.iter().map(|p| p.eval_f64(x)).collect()
    }

    pub fn eval_c64(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.components.iter().map(|p| p.eval_c64(x)).collect()
    }
}

// ---------------------------------------------------------------------------
// Parsing

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LPar,
    RPar,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Tok::End, start));
        }
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'(' => {
                self.pos += 1;
                Tok::LPar
            }
            b')' => {
                self.pos += 1;
                Tok::RPar
            }
            b'0'..=b'9' => {
                let numer = self.read_uint()?;
                self.skip_ws();
                if self.pos < self.src.len() && self.src[self.pos] == b'/' {
                    self.pos += 1;
                    self.skip_ws();
                    let dstart = self.pos;
                    let denom = self.read_uint()?;
                    if denom.is_zero() {
                        return Err(Error::Parse {
                            pos: dstart,
                            msg: "zero denominator in rational literal".into(),
                        });
                    }
                    Tok::Num(Rat::new(numer, denom))
                } else {
                    Tok::Num(Rat::from_integer(numer))
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut end = self.pos;
                while end < self.src.len()
                    && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                {
                    end += 1;
                }
                let name = std::str::from_utf8(&self.src[self.pos..end]).unwrap().to_string();
                self.pos = end;
                Tok::Ident(name)
            }
            other => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character `{}`", other as char),
                })
            }
        };
        Ok((tok, start))
    }

    fn read_uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse {
                pos: start,
                msg: "expected a digit".into(),
            });
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse::<BigInt>().map_err(|e| Error::Parse {
            pos: start,
            msg: e.to_string(),
        })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    look: (Tok, usize),
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn advance(&mut self) -> Result<()> {
        self.look = self.lexer.next()?;
        Ok(())
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let n = self.vars.len();
        let mut acc;
        match self.look.0 {
            Tok::Minus => {
                self.advance()?;
                acc = self.term()?.neg();
            }
            Tok::Plus => {
                self.advance()?;
                acc = self.term()?;
            }
            _ => acc = self.term()?,
        }
        loop {
            match self.look.0 {
                Tok::Plus => {
                    self.advance()?;
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.advance()?;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        let _ = n;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.look.0 == Tok::Star {
            self.advance()?;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        while matches!(self.look.0, Tok::Minus | Tok::Plus) {
            if self.look.0 == Tok::Minus {
                negate = !negate;
            }
            self.advance()?;
        }
        let mut base = self.atom()?;
        if self.look.0 == Tok::Caret {
            self.advance()?;
            let (tok, pos) = self.look.clone();
            let Tok::Num(k) = tok else {
                return Err(Error::Parse {
                    pos,
                    msg: "expected a nonnegative integer exponent after `^`".into(),
                });
            };
            if !k.is_integer() || k.is_negative() {
                return Err(Error::Parse {
                    pos,
                    msg: "exponent must be a nonnegative integer".into(),
                });
            }
            let k = k.to_integer().to_i64().ok_or(Error::Parse {
                pos,
                msg: "exponent too large".into(),
            })?;
            self.advance()?;
            let mut acc = Polynomial::constant(self.vars.len(), Rat::one());
            for _ in 0..k {
                acc = acc.mul(&base);
            }
            base = acc;
        }
        Ok(if negate { base.neg() } else { base })
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let n = self.vars.len();
        let (tok, pos) = self.look.clone();
        match tok {
            Tok::Num(c) => {
                self.advance()?;
                Ok(Polynomial::constant(n, c))
            }
            Tok::Ident(name) => {
                let Some(i) = self.vars.iter().position(|v| *v == name) else {
                    return Err(Error::UnknownVariable(name));
                };
                self.advance()?;
                Ok(Polynomial::variable(n, i))
            }
            Tok::LPar => {
                self.advance()?;
                let e = self.expr()?;
                if self.look.0 != Tok::RPar {
                    return Err(Error::Parse {
                        pos: self.look.1,
                        msg: "expected `)`".into(),
                    });
                }
                self.advance()?;
                Ok(e)
            }
            _ => Err(Error::Parse {
                pos,
                msg: "expected a number, variable or `(`".into(),
            }),
        }
    }
}

/// Parses a polynomial expression over `+ - * ^`, integer/rational
/// literals and the declared variable names. Parsing is exact.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<Polynomial> {
    let mut parser = Parser {
        lexer: Lexer::new(text),
        look: (Tok::End, 0),
        vars,
    };
    parser.advance()?;
    let p = parser.expr()?;
    if parser.look.0 != Tok::End {
        return Err(Error::Parse {
            pos: parser.look.1,
            msg: "trailing input after expression".into(),
        });
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_expands_products() {
        let vs = vars(&["u", "v"]);
        let p = parse_polynomial("v*(u-1)", &vs).unwrap();
        assert_eq!(p.coeff(&[1, 1]), rat(1));
        assert_eq!(p.coeff(&[0, 1]), rat(-1));
        assert_eq!(p.num_terms(), 2);

        let q = parse_polynomial("v^2*(u^2-3*u+2)", &vs).unwrap();
        assert_eq!(q.coeff(&[2, 2]), rat(1));
        assert_eq!(q.coeff(&[1, 2]), rat(-3));
        assert_eq!(q.coeff(&[0, 2]), rat(2));
        assert_eq!(q.num_terms(), 3);

        let z = parse_polynomial("0", &vs).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn parse_errors() {
        let vs = vars(&["x"]);
        assert!(matches!(
            parse_polynomial("x + y", &vs),
            Err(Error::UnknownVariable(_))
        ));
        assert!(matches!(
            parse_polynomial("x + ", &vs),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial("x^(2)", &vs),
            Err(Error::Parse { .. })
        ));
        let p = parse_polynomial("1/2*x + 3/4", &vs).unwrap();
        assert_eq!(p.coeff(&[1]), rat_frac(1, 2));
        assert_eq!(p.coeff(&[0]), rat_frac(3, 4));
    }

    #[test]
    fn display_graded_lex() {
        let vs = vars(&["u", "v"]);
        let p = parse_polynomial("2 - 3*u + u^2*v - v", &vs).unwrap();
        assert_eq!(p.display(&["u", "v"]), "u^2*v - 3*u - v + 2");
        let roundtrip = parse_polynomial(&p.display(&["u", "v"]), &vs).unwrap();
        assert_eq!(roundtrip, p);
    }

    #[test]
    fn monomial_substitution_examples() {
        let vs = vars(&["u", "v"]);
        // p = uv - v, U = [[-1,1],[1,0]] (x_j = prod z_i^{u_ij}) -> z_2 - z_1
        let p = parse_polynomial("u*v - v", &vs).unwrap();
        let u = vec![vec![-1, 1], vec![1, 0]];
        let q = p.monomial_substitute(&u).unwrap();
        assert_eq!(q.coeff(&[0, 1]), rat(1)); // z_2 from (1,1) -> (0,1)
        assert_eq!(q.coeff(&[1, 0]), rat(-1)); // -z_1 from (0,1) -> (1,0)
        assert_eq!(q.num_terms(), 2);

        // identity leaves p unchanged
        let id = mat::identity(2);
        assert_eq!(p.monomial_substitute(&id).unwrap(), p);

        // non-unimodular rejected
        let bad = vec![vec![2, 0], vec![0, 1]];
        assert!(p.monomial_substitute(&bad).is_err());
    }

    #[test]
    fn substitution_composes_and_inverts() {
        let vs = vars(&["u", "v"]);
        let p = parse_polynomial("u*v - v + 3*u^4", &vs).unwrap();
        let u = vec![vec![-1, 1], vec![1, 0]];
        let v = vec![vec![1, 0], vec![-1, 1]];
        let vu = mat::mat_mul(&v, &u);
        let a = p
            .monomial_substitute(&u)
            .unwrap()
            .monomial_substitute(&v)
            .unwrap();
        let b = p.monomial_substitute(&vu).unwrap();
        assert_eq!(a, b);
        let uinv = mat::inverse_unimodular(&u).unwrap();
        assert_eq!(
            p.monomial_substitute(&u).unwrap().monomial_substitute(&uinv).unwrap(),
            p
        );
    }

    #[test]
    fn eval_and_derivative() {
        let vs = vars(&["x", "y"]);
        let p = parse_polynomial("x^2*y + 3*x - 1/2", &vs).unwrap();
        assert_eq!(p.eval_rat(&[rat(2), rat(3)]), rat(12) + rat(6) - rat_frac(1, 2));
        let px = p.partial_derivative(0);
        assert_eq!(px, parse_polynomial("2*x*y + 3", &vs).unwrap());
    }
}
