//! Sparse multivariate polynomials with exact rational coefficients, and the
//! transforms acting on them: normalization, homogenization, the flip
//! (exponent reversal), and substitution by rational matrices.
//!
//! Variables are `t0, t1, ...`; variable 0 is by convention the homogenizing
//! variable. Terms are kept in a canonical order (ascending total degree,
//! lexicographically descending within a degree), which fixes serialization.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::matrix::RationalMatrix;
use crate::rational::{factorial, format_rat, parse_rat, rat_one, Rat};
use crate::{Error, Result};

/// Exponent vector of a single monomial. Entries are per-variable exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        Exponent(entries)
    }

    pub fn zero(num_vars: usize) -> Self {
        Exponent(vec![0; num_vars])
    }

    pub fn unit(num_vars: usize, var: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[var] = 1;
        Exponent(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        if self.0.len() != other.0.len() {
            return None;
        }
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Exponent(out))
    }

    pub fn plus(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.0.len(), other.0.len());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Exponent(v)
    }
}

impl From<&[u32]> for Exponent {
    fn from(v: &[u32]) -> Self {
        Exponent(v.to_vec())
    }
}

/// Canonical term order: total degree first, then lexicographically
/// descending (so `t0^2` precedes `t0*t1` within degree 2).
impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Sparse polynomial in `num_vars` variables over the rationals. Zero
/// coefficients are never stored, so equality of term maps is equality of
/// polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Exponent, Rat>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rat) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(Exponent::zero(num_vars), c);
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, rat_one())
    }

    pub fn variable(num_vars: usize, var: usize) -> Result<Self> {
        if var >= num_vars {
            return Err(Error::VarIndexOutOfRange {
                index: var,
                num_vars,
            });
        }
        let mut p = Self::zero(num_vars);
        p.add_term(Exponent::unit(num_vars, var), rat_one());
        Ok(p)
    }

    /// Builds from (exponent, coefficient) pairs; repeated exponents are
    /// accumulated and zero results dropped.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rat)>,
    {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::VarCountMismatch(e.len(), num_vars));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Convenience for integer-coefficient literals in tests and fixtures.
    pub fn from_int_terms(num_vars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            num_vars,
            terms
                .iter()
                .map(|(e, c)| (Exponent::from(*e), crate::rational::rat_int(*c))),
        )
        .expect("exponent arity matches num_vars")
    }

    fn add_term(&mut self, exp: Exponent, coef: Rat) {
        if coef.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coef;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &Exponent) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Exponent::total).max().unwrap_or(0)
    }

    /// Smallest total degree among the terms; 0 for the zero polynomial.
    pub fn trailing_degree(&self) -> u32 {
        self.terms.keys().map(Exponent::total).min().unwrap_or(0)
    }

    pub fn degree_in_var(&self, var: usize) -> Result<u32> {
        if var >= self.num_vars {
            return Err(Error::VarIndexOutOfRange {
                index: var,
                num_vars: self.num_vars,
            });
        }
        Ok(self.terms.keys().map(|e| e.get(var)).max().unwrap_or(0))
    }

    /// The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Exponent::total);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.num_vars != other.num_vars {
            return Err(Error::VarCountMismatch(self.num_vars, other.num_vars));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.num_vars != other.num_vars {
            return Err(Error::VarCountMismatch(self.num_vars, other.num_vars));
        }
        let mut out = Polynomial::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.plus(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.num_vars);
        for _ in 0..n {
            acc = acc.mul(self).expect("same arity");
        }
        acc
    }

    /// Iterated partial derivative along a multi-index.
    pub fn partial_derivative(&self, alpha: &Exponent) -> Polynomial {
        assert_eq!(alpha.len(), self.num_vars, "derivative multi-index arity");
        let mut out = Polynomial::zero(self.num_vars);
        for (e, c) in &self.terms {
            if let Some(rest) = e.checked_sub(alpha) {
                let mut factor = rat_one();
                for i in 0..self.num_vars {
                    // falling factorial e_i (e_i - 1) ... (rest_i + 1)
                    for k in (rest.get(i) + 1)..=e.get(i) {
                        factor *= Rat::from_integer(k.into());
                    }
                }
                out.add_term(rest, c * &factor);
            }
        }
        out
    }

    /// The normalization operator: divides each term by the product of the
    /// factorials of its exponents. Linear over terms.
    pub fn normalize(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.num_vars);
        for (e, c) in &self.terms {
            let mut den = num_bigint::BigInt::from(1u32);
            for i in 0..self.num_vars {
                den *= factorial(e.get(i));
            }
            out.add_term(e.clone(), c / Rat::from_integer(den));
        }
        out
    }

    /// Adds a homogenizing variable in position 0 so the result is
    /// homogeneous of `target_degree`.
    pub fn homogenize(&self, target_degree: u32) -> Result<Polynomial> {
        let actual = self.total_degree();
        if !self.is_zero() && target_degree < actual {
            return Err(Error::HomogenizeDegreeTooSmall {
                target: target_degree,
                actual,
            });
        }
        let mut out = Polynomial::zero(self.num_vars + 1);
        for (e, c) in &self.terms {
            let mut entries = Vec::with_capacity(self.num_vars + 1);
            entries.push(target_degree - e.total());
            entries.extend_from_slice(e.entries());
            out.add_term(Exponent::new(entries), c.clone());
        }
        Ok(out)
    }

    /// Substitutes 1 for the chosen variable and drops it.
    pub fn dehomogenize(&self, var: usize) -> Result<Polynomial> {
        if var >= self.num_vars {
            return Err(Error::VarIndexOutOfRange {
                index: var,
                num_vars: self.num_vars,
            });
        }
        let mut out = Polynomial::zero(self.num_vars - 1);
        for (e, c) in &self.terms {
            let mut entries = Vec::with_capacity(self.num_vars - 1);
            for (i, x) in e.entries().iter().enumerate() {
                if i != var {
                    entries.push(*x);
                }
            }
            out.add_term(Exponent::new(entries), c.clone());
        }
        Ok(out)
    }

    /// Exponent reversal: the coefficient of `u^(n-alpha)` in the result is
    /// the coefficient of `t^alpha` here. Requires `n` to dominate the
    /// per-variable degrees.
    pub fn flip(&self, n: &[u32]) -> Result<Polynomial> {
        if n.len() != self.num_vars {
            return Err(Error::VarCountMismatch(n.len(), self.num_vars));
        }
        for var in 0..self.num_vars {
            let degree = self.degree_in_var(var)?;
            if n[var] < degree {
                return Err(Error::FlipDegreeTooSmall {
                    var,
                    bound: n[var],
                    degree,
                });
            }
        }
        let mut out = Polynomial::zero(self.num_vars);
        for (e, c) in &self.terms {
            let flipped: Vec<u32> = n.iter().zip(e.entries()).map(|(m, a)| m - a).collect();
            out.add_term(Exponent::new(flipped), c.clone());
        }
        Ok(out)
    }

    /// Evaluates at the linear forms given by the rows of `a`: variable `i`
    /// becomes `sum_j a[i][j] u_j`. The result has `a.cols()` variables.
    pub fn substitute_matrix(&self, a: &RationalMatrix) -> Result<Polynomial> {
        if a.rows() != self.num_vars {
            return Err(Error::MatrixRowMismatch {
                rows: a.rows(),
                expected: self.num_vars,
            });
        }
        let out_vars = a.cols();
        // Per-variable powers of the row linear forms, built on demand.
        let mut powers: Vec<Vec<Polynomial>> = (0..self.num_vars)
            .map(|_| vec![Polynomial::one(out_vars)])
            .collect();
        let forms: Vec<Polynomial> = (0..self.num_vars)
            .map(|i| {
                Polynomial::from_terms(
                    out_vars,
                    (0..out_vars).map(|j| (Exponent::unit(out_vars, j), a.get(i, j).clone())),
                )
                .expect("arity")
            })
            .collect();
        let mut out = Polynomial::zero(out_vars);
        for (e, c) in &self.terms {
            let mut prod = Polynomial::constant(out_vars, c.clone());
            for i in 0..self.num_vars {
                let k = e.get(i) as usize;
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap().mul(&forms[i]).expect("arity");
                    powers[i].push(next);
                }
                prod = prod.mul(&powers[i][k]).expect("arity");
            }
            out = out.add(&prod).expect("arity");
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.num_vars {
            return Err(Error::VarCountMismatch(point.len(), self.num_vars));
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.entries().iter().enumerate() {
                for _ in 0..k {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Canonical text form, e.g. `1/2*t0^2 + 3*t0*t1 - t1^2`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || e.total() == 0 {
                factors.push(format_rat(&abs));
            }
            for (i, &k) in e.entries().iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(format!("t{i}")),
                    _ => factors.push(format!("t{i}^{k}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parses the text form. `num_vars` overrides the inferred variable
    /// count (which is one past the largest index mentioned).
    pub fn parse_text(input: &str, num_vars: Option<usize>) -> Result<Polynomial> {
        let raw_terms = split_terms(input)?;
        let mut parsed: Vec<(Vec<(usize, u32)>, Rat)> = Vec::new();
        let mut max_var: usize = 0;
        for (sign, body) in raw_terms {
            let (coef, vars) = parse_term(&body)?;
            for (v, _) in &vars {
                max_var = max_var.max(*v + 1);
            }
            parsed.push((vars, if sign { -coef } else { coef }));
        }
        let inferred = max_var.max(1);
        let n = match num_vars {
            Some(n) => {
                if n < max_var {
                    return Err(Error::Parse(format!(
                        "variable index exceeds requested count {n}"
                    )));
                }
                n
            }
            None => inferred,
        };
        let mut poly = Polynomial::zero(n);
        for (vars, coef) in parsed {
            let mut e = vec![0u32; n];
            for (v, k) in vars {
                e[v] += k;
            }
            poly.add_term(Exponent::new(e), coef);
        }
        Ok(poly)
    }
}

fn split_terms(input: &str) -> Result<Vec<(bool, String)>> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut sign = false;
    let mut chars = compact.chars().peekable();
    let mut expect_term_start = true;
    while let Some(c) = chars.next() {
        match c {
            '+' | '-' if !expect_term_start => {
                terms.push((sign, std::mem::take(&mut current)));
                sign = c == '-';
                expect_term_start = true;
            }
            '+' if expect_term_start && current.is_empty() => {}
            '-' if expect_term_start && current.is_empty() => {
                sign = !sign;
            }
            '/' => {
                // keep the slash and the following sign (if any) glued to the term
                current.push('/');
                if let Some(&next) = chars.peek() {
                    if next == '-' || next == '+' {
                        current.push(chars.next().unwrap());
                    }
                }
                expect_term_start = false;
            }
            _ => {
                current.push(c);
                expect_term_start = false;
            }
        }
    }
    if current.is_empty() {
        return Err(Error::Parse("dangling sign".into()));
    }
    terms.push((sign, current));
    Ok(terms)
}

fn parse_term(body: &str) -> Result<(Rat, Vec<(usize, u32)>)> {
    let mut coef = rat_one();
    let mut vars: Vec<(usize, u32)> = Vec::new();
    if body.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{body}`")));
        }
        if let Some(rest) = factor.strip_prefix('t') {
            let (idx, exp) = match rest.split_once('^') {
                Some((i, k)) => {
                    let idx: usize = i
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable `{factor}`")))?;
                    let k: u32 = k
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent `{factor}`")))?;
                    (idx, k)
                }
                None => (
                    rest.parse()
                        .map_err(|_| Error::Parse(format!("bad variable `{factor}`")))?,
                    1,
                ),
            };
            vars.push((idx, exp));
        } else {
            coef *= parse_rat(factor)?;
        }
    }
    Ok((coef, vars))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    num_vars: usize,
    terms: Vec<TermJson>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let json = PolyJson {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.entries().to_vec(),
                    coef: format_rat(c),
                })
                .collect(),
        };
        json.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = PolyJson::deserialize(deserializer)?;
        let mut poly = Polynomial::zero(json.num_vars);
        for term in json.terms {
            if term.exp.len() != json.num_vars {
                return Err(D::Error::custom("exponent arity mismatch"));
            }
            let coef = parse_rat(&term.coef).map_err(D::Error::custom)?;
            poly.add_term(Exponent::new(term.exp), coef);
        }
        Ok(poly)
    }
}
