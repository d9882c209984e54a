use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Univariate polynomial in `q` with exact integer coefficients.
///
/// Stored densely by exponent with trailing zeros trimmed, so two equal
/// polynomials always have identical representations. Only the nonzero
/// terms are ever exposed (iteration, text and JSON forms).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

/// Avalanche polynomials are polynomials with nonnegative coefficients; the
/// sign is checked where it matters (see [`Poly::is_nonnegative`]).
pub type AvalanchePoly = Poly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParsePolyError {
    #[error("empty polynomial")]
    Empty,
    #[error("malformed term `{0}`")]
    BadTerm(String),
    #[error("invalid JSON polynomial: {0}")]
    Json(String),
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// `coeff * q^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = coeff.into();
        Poly::from_dense(coeffs)
    }

    /// Builds from a dense coefficient vector (index = exponent).
    pub fn from_dense(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<BigInt>,
    {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (e, c) in terms {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] += c.into();
        }
        Poly::from_dense(coeffs)
    }

    /// Builds from a histogram of small counts (index = exponent).
    pub fn from_counts(counts: &[u128]) -> Self {
        Poly::from_dense(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exponent(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficient of `q^exp` (zero when absent).
    pub fn coeff(&self, exp: usize) -> BigInt {
        self.coeffs.get(exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms().count()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn scale(&self, factor: &BigInt) -> Poly {
        Poly::from_dense(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// `sum_m m^r * a_m`.
    pub fn moment(&self, r: u32) -> BigInt {
        self.terms().map(|(e, c)| BigInt::from(e).pow(r) * c).sum()
    }

    /// Value at `q = 1`: the total number of labels counted.
    pub fn mass(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Adds `factor * q^shift * self` into a dense accumulator, growing it
    /// as needed.
    pub(crate) fn add_scaled_shifted_into(
        &self,
        acc: &mut Vec<BigInt>,
        factor: &BigInt,
        shift: usize,
    ) {
        if self.coeffs.is_empty() {
            return;
        }
        let need = self.coeffs.len() + shift;
        if acc.len() < need {
            acc.resize(need, BigInt::zero());
        }
        for (slot, c) in acc[shift..].iter_mut().zip(&self.coeffs) {
            if !c.is_zero() {
                *slot += c * factor;
            }
        }
    }

    /// Human text form, e.g. `5*q^1 + 2*q^2`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// JSON pair list `[[exp, "coeff"], ...]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }

    /// Accepts the JSON pair list, a JSON object carrying one under `"poly"`
    /// (as the CLI emits), or the text form.
    pub fn parse_any(input: &str) -> Result<Poly, ParsePolyError> {
        #[derive(Deserialize)]
        struct Wrapped {
            poly: Poly,
        }
        let json = |e: serde_json::Error| ParsePolyError::Json(e.to_string());
        let trimmed = input.trim();
        if trimmed.starts_with('[') {
            serde_json::from_str(trimmed).map_err(json)
        } else if trimmed.starts_with('{') {
            serde_json::from_str::<Wrapped>(trimmed)
                .map(|w| w.poly)
                .map_err(json)
        } else {
            trimmed.parse()
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "q^{e}")?;
            } else {
                write!(f, "{c}*q^{e}")?;
            }
        }
        Ok(())
    }
}

fn parse_term(term: &str) -> Result<(usize, BigInt), ParsePolyError> {
    let bad = || ParsePolyError::BadTerm(term.to_string());
    let t: String = term.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.as_str()),
    };
    let (coeff_part, q_part) = match body.find('q') {
        None => (Some(body), None),
        Some(pos) => {
            let (c, q) = body.split_at(pos);
            let c = if c.is_empty() {
                None
            } else {
                Some(c.strip_suffix('*').ok_or_else(bad)?)
            };
            (c, Some(&q[1..]))
        }
    };
    let mut coeff = match coeff_part {
        Some(c) if !c.is_empty() && c.bytes().all(|b| b.is_ascii_digit()) => {
            c.parse::<BigInt>().map_err(|_| bad())?
        }
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    let exp = match q_part {
        None => 0,
        Some("") => 1,
        Some(rest) => {
            let digits = rest.strip_prefix('^').ok_or_else(bad)?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            digits.parse::<usize>().map_err(|_| bad())?
        }
    };
    if negative {
        coeff = -coeff;
    }
    Ok((exp, coeff))
}

impl FromStr for Poly {
    type Err = ParsePolyError;

    /// Parses the text form. Terms are `c*q^e`, `q^e`, `c*q`, `q` or a bare
    /// constant, joined by `+` or `-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParsePolyError::Empty);
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for ch in s.chars() {
            match ch {
                '+' => terms.push(parse_term(&std::mem::take(&mut cur))?),
                // a sign opens a term; anywhere else it ends one
                '-' if cur.trim().is_empty() => cur.push('-'),
                '-' => {
                    terms.push(parse_term(&std::mem::take(&mut cur))?);
                    cur.push('-');
                }
                c => cur.push(c),
            }
        }
        terms.push(parse_term(&cur)?);
        Ok(Poly::from_terms(terms))
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.term_count()))?;
        for (e, c) in self.terms() {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Text(String),
    Int(i64),
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<(usize, CoeffRepr)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(pairs.len());
        for (e, c) in pairs {
            let c = match c {
                CoeffRepr::Int(i) => BigInt::from(i),
                CoeffRepr::Text(s) => s
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|_| de::Error::custom(format!("bad coefficient `{s}`")))?,
            };
            terms.push((e, c));
        }
        Ok(Poly::from_terms(terms))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        let mut coeffs = std::mem::take(&mut self.coeffs);
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        *self = Poly::from_dense(coeffs);
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut acc = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.terms() {
            rhs.add_scaled_shifted_into(&mut acc, a, i);
        }
        Poly::from_dense(acc)
    }
}
