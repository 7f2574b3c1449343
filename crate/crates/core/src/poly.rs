//! Sparse exact-rational multivariate polynomials with weighted-order
//! machinery: weighted orders, least-weight parts, weighted degrees,
//! truncation, differentiation, evaluation, and a text parser.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used for all coefficients.
pub type Q = BigRational;

/// Builds the exact rational `n/d`.
pub fn rat(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the exact integer rational `n`.
pub fn int(n: i64) -> Q {
    Q::from(BigInt::from(n))
}

/// A monomial as a fixed-length exponent vector.
///
/// Ordered by graded lexicographic order with the standard (unweighted)
/// grading: first compare total degree, then exponent vectors
/// lexicographically with earlier variables more significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    /// The constant monomial in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The monomial `x_i` in `nvars` variables.
    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// Sum of exponents.
    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Weighted degree `Σ w_i·e_i`.
    pub fn weight(&self, w: &WeightVector) -> u64 {
        self.0
            .iter()
            .zip(w.as_slice())
            .map(|(&e, &wi)| e as u64 * wi)
            .sum()
    }

    /// Componentwise product (monomial multiplication).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// A vector of positive integer weights.
///
/// Blowup weight vectors additionally require gcd 1; ambient weighted
/// projective space weights only require positivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    /// Weights for a weighted blowup: all positive and gcd 1.
    pub fn blowup(weights: Vec<u64>) -> Result<Self> {
        let wv = Self::ambient(weights)?;
        let g = wv.0.iter().fold(0u64, |acc, &w| gcd(acc, w));
        if g != 1 {
            return Err(Error::invalid(format!(
                "blowup weights must have gcd 1, got gcd {g}"
            )));
        }
        Ok(wv)
    }

    /// Ambient weights: all positive, no gcd condition.
    pub fn ambient(weights: Vec<u64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::invalid("weight vector must be nonempty"));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::invalid("weights must be positive"));
        }
        Ok(WeightVector(weights))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// Largest single weight.
    pub fn max_weight(&self) -> u64 {
        *self.0.iter().max().expect("nonempty")
    }

    /// Exact product of all weights.
    pub fn product(&self) -> Q {
        self.0
            .iter()
            .fold(Q::one(), |acc, &w| acc * Q::from(BigInt::from(w)))
    }
}

/// Greatest common divisor of two non-negative integers.
pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Least common multiple of two positive integers.
pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// A sparse polynomial with exact rational coefficients.
///
/// Invariants: no stored zero coefficients; every monomial has length
/// `nvars`. Terms are kept in a map ordered by graded lex, so iteration
/// order is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    /// The zero polynomial in `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// A single-term polynomial `coeff · m`.
    pub fn term(coeff: Q, m: Monomial) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        Polynomial { nvars, terms }
    }

    /// The variable `x_i` as a polynomial in `nvars` variables.
    pub fn var(i: usize, nvars: usize) -> Self {
        Polynomial::term(Q::one(), Monomial::var(i, nvars))
    }

    /// The constant polynomial `c` in `nvars` variables.
    pub fn constant(c: Q, nvars: usize) -> Self {
        Polynomial::term(c, Monomial::one(nvars))
    }

    /// Builds a polynomial from (coefficient, monomial) pairs, combining
    /// like terms and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Q, Monomial)>) -> Result<Self> {
        let mut p = Polynomial::zero(nvars);
        for (c, m) in terms {
            if m.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: m.nvars(),
                });
            }
            p.add_term(c, m);
        }
        Ok(p)
    }

    fn add_term(&mut self, c: Q, m: Monomial) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    /// The coefficient of `m` (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Constant term of the polynomial.
    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Largest monomial present, by graded lex.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    fn check_dims(&self, other: usize) -> Result<()> {
        if self.nvars != other {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: other,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dims(other.nvars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dims(other.nvars)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(c1.clone() * c2.clone(), m1.mul(m2));
            }
        }
        Ok(out)
    }

    /// Multiplies by a single monomial (no allocation of a temporary
    /// polynomial).
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Integer power.
    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::constant(Q::one(), self.nvars);
        for _ in 0..k {
            out = out.mul(self).expect("same nvars");
        }
        out
    }

    /// The weighted order `𝒘(f) = min Σ w_i·a_i`, or `None` (infinity)
    /// for the zero polynomial.
    pub fn weighted_order(&self, w: &WeightVector) -> Result<Option<u64>> {
        self.check_dims(w.len())?;
        Ok(self.terms.keys().map(|m| m.weight(w)).min())
    }

    /// The sub-polynomial of terms of minimal weighted order.
    pub fn least_weight_part(&self, w: &WeightVector) -> Result<Polynomial> {
        self.check_dims(w.len())?;
        let ord = self
            .weighted_order(w)?
            .ok_or(Error::ZeroPolynomial)?;
        Ok(Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight(w) == ord)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    /// The weighted degree `max Σ w_i·a_i`.
    pub fn weighted_degree(&self, w: &WeightVector) -> Result<u64> {
        self.check_dims(w.len())?;
        self.terms
            .keys()
            .map(|m| m.weight(w))
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Maximum total degree (standard grading); errors on zero.
    pub fn total_degree(&self) -> Result<u64> {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Keeps exactly the terms of `w`-weight ≤ `n`.
    pub fn truncate(&self, n: u64, w: &WeightVector) -> Result<Polynomial> {
        self.check_dims(w.len())?;
        Ok(Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight(w) <= n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    /// Keeps exactly the terms of total degree ≤ `n`.
    pub fn truncate_total_degree(&self, n: u64) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() <= n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when every term has the same `w`-weight.
    pub fn is_quasihomogeneous(&self, w: &WeightVector) -> Result<bool> {
        self.check_dims(w.len())?;
        let mut weights = self.terms.keys().map(|m| m.weight(w));
        match weights.next() {
            None => Ok(true),
            Some(first) => Ok(weights.all(|x| x == first)),
        }
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial> {
        if i >= self.nvars {
            return Err(Error::invalid(format!(
                "variable index {i} out of range for {} variables",
                self.nvars
            )));
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut em = m.clone();
            em.0[i] = e - 1;
            out.add_term(c.clone() * Q::from(BigInt::from(e)), em);
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Q]) -> Result<Q> {
        self.check_dims(point.len())?;
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v *= point[i].clone();
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitutes `x_i ↦ subs[i]`; all `subs` must share a variable count.
    pub fn substitute(&self, subs: &[Polynomial]) -> Result<Polynomial> {
        self.check_dims(subs.len())?;
        let out_nvars = match subs.first() {
            Some(p) => p.nvars,
            None => return Err(Error::invalid("empty substitution")),
        };
        for s in subs {
            if s.nvars != out_nvars {
                return Err(Error::DimensionMismatch {
                    expected: out_nvars,
                    got: s.nvars,
                });
            }
        }
        // Cache powers of each substituted polynomial.
        let mut powers: Vec<Vec<Polynomial>> = subs
            .iter()
            .map(|s| vec![Polynomial::constant(Q::one(), out_nvars), s.clone()])
            .collect();
        let mut out = Polynomial::zero(out_nvars);
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(c.clone(), out_nvars);
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&subs[i])?;
                    powers[i].push(next);
                }
                prod = prod.mul(&powers[i][e as usize])?;
            }
            out = out.add(&prod)?;
        }
        Ok(out)
    }

    /// Renders with the given variable names (one per variable).
    pub fn display_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars, "name count must match nvars");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        // Descending graded lex: largest term first.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.total_degree() == 0 {
                factors.push(abs.to_string());
            }
            for (j, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[j].clone()),
                    _ => factors.push(format!("{}^{}", names[j], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Default variable names `x0, x1, …`.
    pub fn default_names(nvars: usize) -> Vec<String> {
        (0..nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&Polynomial::default_names(self.nvars)))
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Maps external variable names to internal indices, in order of first
/// appearance.
#[derive(Debug, Clone, Default)]
pub struct VarTable {
    names: Vec<String>,
}

impl VarTable {
    pub fn new() -> Self {
        VarTable::default()
    }

    /// Pre-declares names so indices follow a fixed order.
    pub fn with_names(names: &[&str]) -> Self {
        VarTable {
            names: names.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    fn index_of(&mut self, name: &str) -> usize {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            i
        } else {
            self.names.push(name.to_string());
            self.names.len() - 1
        }
    }
}

/// Intermediate parse product: terms with variable indices assigned but the
/// final variable count not yet fixed.
#[derive(Debug, Clone)]
struct RawPoly {
    terms: Vec<(Q, Vec<(usize, u32)>)>,
}

impl RawPoly {
    fn finalize(&self, nvars: usize) -> Polynomial {
        let mut p = Polynomial::zero(nvars);
        for (c, factors) in &self.terms {
            let mut m = Monomial::one(nvars);
            for &(i, e) in factors {
                m.0[i] += e;
            }
            p.add_term(c.clone(), m);
        }
        p
    }
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    src: std::marker::PhantomData<&'a str>,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
            src: std::marker::PhantomData,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn parse_uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let mut digits = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.bump().unwrap());
        }
        if digits.is_empty() {
            return Err(self.err("expected an integer"));
        }
        digits
            .parse::<BigInt>()
            .map_err(|e| self.err(format!("bad integer: {e}")))
    }

    fn parse_name(&mut self) -> Result<String> {
        self.skip_ws();
        let mut name = String::new();
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {
                name.push(self.bump().unwrap());
            }
            _ => return Err(self.err("expected a variable name")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
            name.push(self.bump().unwrap());
        }
        Ok(name)
    }

    /// coeff := int [ '/' int ]
    fn parse_coeff(&mut self) -> Result<Q> {
        let num = self.parse_uint()?;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.bump();
            let den = self.parse_uint()?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(Q::new(num, den))
        } else {
            Ok(Q::from(num))
        }
    }

    /// factor := name [ '^' int ]
    fn parse_factor(&mut self, vars: &mut VarTable) -> Result<(usize, u32)> {
        let name = self.parse_name()?;
        let idx = vars.index_of(&name);
        self.skip_ws();
        let exp = if self.peek() == Some('^') {
            self.bump();
            let e = self.parse_uint()?;
            u32::try_from(&e).map_err(|_| self.err("exponent too large"))?
        } else {
            1
        };
        Ok((idx, exp))
    }

    /// term := [coeff] ['*'] factor ('*' factor)*  |  coeff
    fn parse_term(&mut self, vars: &mut VarTable) -> Result<(Q, Vec<(usize, u32)>)> {
        self.skip_ws();
        let mut coeff = Q::one();
        let mut factors: Vec<(usize, u32)> = Vec::new();
        let mut saw_coeff = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.parse_coeff()?;
            saw_coeff = true;
            // Optional '*' between coefficient and first factor.
            self.eat('*');
        }
        self.skip_ws();
        if matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            factors.push(self.parse_factor(vars)?);
            while self.eat('*') {
                factors.push(self.parse_factor(vars)?);
            }
        } else if !saw_coeff {
            return Err(self.err("expected a coefficient or variable"));
        }
        Ok((coeff, factors))
    }

    /// poly := ['-'] term (('+'|'-') term)*
    fn parse_poly(&mut self, vars: &mut VarTable) -> Result<RawPoly> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut sign = if self.eat('-') { -Q::one() } else { Q::one() };
        loop {
            let (c, fs) = self.parse_term(vars)?;
            terms.push((sign.clone() * c, fs));
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    sign = Q::one();
                }
                Some('-') => {
                    self.bump();
                    sign = -Q::one();
                }
                _ => break,
            }
        }
        Ok(RawPoly { terms })
    }
}

/// Parses one polynomial, assigning variable indices through `vars` in order
/// of first appearance; the result has `nvars = vars.len()` after the call.
///
/// When several polynomials must share a variable space, parse them all with
/// one `VarTable` via [`parse_system`] so the final counts agree.
pub fn parse_polynomial(text: &str, vars: &mut VarTable) -> Result<Polynomial> {
    let mut lx = Lexer::new(text);
    let raw = lx.parse_poly(vars)?;
    if !lx.at_end() {
        return Err(lx.err(format!(
            "unexpected character {:?}",
            lx.peek().unwrap()
        )));
    }
    Ok(raw.finalize(vars.len()))
}

/// Parses a comma-separated system of polynomials over a shared variable
/// table; every returned polynomial has the same `nvars`.
pub fn parse_system(text: &str, vars: &mut VarTable) -> Result<Vec<Polynomial>> {
    let mut lx = Lexer::new(text);
    let mut raws = Vec::new();
    loop {
        raws.push(lx.parse_poly(vars)?);
        if !lx.eat(',') {
            break;
        }
    }
    if !lx.at_end() {
        return Err(lx.err(format!(
            "unexpected character {:?}",
            lx.peek().unwrap()
        )));
    }
    Ok(raws.iter().map(|r| r.finalize(vars.len())).collect())
}
