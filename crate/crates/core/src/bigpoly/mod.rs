//! Sparse univariate polynomials over the integers.

mod gcd;
pub(crate) mod parse;
mod resultant;

pub use gcd::{gcd_z, gcd_z_many, squarefree_part};
pub use parse::{parse_json, parse_text, to_json};
pub use resultant::{
    discriminant, discriminant_with_limit, divides, resultant, resultant_bareiss, resultant_modular,
    resultant_with_limit, DEFAULT_RESULTANT_LIMIT,
};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Univariate polynomial with arbitrary-precision integer coefficients.
///
/// Terms are kept sorted by strictly decreasing exponent with no zero
/// coefficients; the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u64, BigInt)>", into = "Vec<(u64, BigInt)>")]
pub struct IntPoly {
    terms: Vec<(u64, BigInt)>,
}

impl TryFrom<Vec<(u64, BigInt)>> for IntPoly {
    type Error = std::convert::Infallible;
    fn try_from(terms: Vec<(u64, BigInt)>) -> std::result::Result<Self, Self::Error> {
        Ok(IntPoly::from_terms(terms))
    }
}

impl From<IntPoly> for Vec<(u64, BigInt)> {
    fn from(p: IntPoly) -> Self {
        p.terms
    }
}

impl IntPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(1, BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: u64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(exp, c)],
            }
        }
    }

    /// Build from terms in any order; like exponents are combined.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (u64, C)>) -> Self {
        let mut acc: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_default() += c.into();
        }
        Self::from_map(acc)
    }

    /// Dense coefficients, `coeffs[i]` multiplying `x^i`.
    pub fn from_coeffs<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| (i as u64, c.into())),
        )
    }

    fn from_map(map: BTreeMap<u64, BigInt>) -> Self {
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Self { terms }
    }

    pub fn terms(&self) -> &[(u64, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree, with `None` standing for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn constant_term(&self) -> BigInt {
        match self.terms.last() {
            Some((0, c)) => c.clone(),
            _ => BigInt::zero(),
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: u64) -> BigInt {
        self.terms
            .binary_search_by(|(e, _)| exp.cmp(e))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// Dense coefficient vector, lowest degree first.
    pub fn to_dense(&self) -> Vec<BigInt> {
        let Some(d) = self.degree() else {
            return Vec::new();
        };
        let mut out = vec![BigInt::zero(); d as usize + 1];
        for (e, c) in &self.terms {
            out[*e as usize] = c.clone();
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                std::cmp::Ordering::Greater => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((*eb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((*ea, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Self { terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut acc: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                *acc.entry(ea + eb).or_default() += ca * cb;
            }
        }
        Self::from_map(acc)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| *e > 0)
                .map(|(e, c)| (e - 1, c * BigInt::from(*e)))
                .collect(),
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        // Horner over the sparse gaps.
        let mut acc = BigInt::zero();
        let mut prev: Option<u64> = None;
        for (e, c) in &self.terms {
            if let Some(pe) = prev {
                acc *= num_traits::pow(x.clone(), (pe - e) as usize);
            }
            acc += c;
            prev = Some(*e);
        }
        if let Some(pe) = prev {
            acc *= num_traits::pow(x.clone(), pe as usize);
        }
        acc
    }

    /// gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c / &g)).collect(),
        }
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one()
    }

    /// Exact quotient `self / divisor` over Z, or `None` when the division
    /// leaves a remainder or needs fractions.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (dlead_e, dlead_c) = divisor.terms.first()?;
        let mut rem: BTreeMap<u64, BigInt> =
            self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        let mut quotient = Vec::new();
        while let Some((&e, c)) = rem.last_key_value() {
            if e < *dlead_e {
                return None;
            }
            let (q, r) = c.div_rem(dlead_c);
            if !r.is_zero() {
                return None;
            }
            let shift = e - dlead_e;
            for (de, dc) in &divisor.terms {
                let slot = rem.entry(de + shift).or_default();
                *slot -= &q * dc;
                if slot.is_zero() {
                    rem.remove(&(de + shift));
                }
            }
            quotient.push((shift, q));
        }
        Some(Self { terms: quotient })
    }

    /// Natural log of the largest absolute coefficient.
    pub fn height(&self) -> Result<f64> {
        let max = self
            .terms
            .iter()
            .map(|(_, c)| c.abs())
            .max()
            .ok_or(Error::ZeroPolynomial("height"))?;
        Ok(ln_bigint(&max))
    }

    /// Natural log of the Euclidean norm of the coefficient vector.
    pub fn log_norm2(&self) -> Result<f64> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("log_norm2"));
        }
        let sq: BigInt = self.terms.iter().map(|(_, c)| c * c).sum();
        Ok(ln_bigint(&sq) / 2.0)
    }

    /// Total bits of the binary expansions of all coefficients and exponents.
    pub fn bit_size(&self) -> u64 {
        self.terms
            .iter()
            .map(|(e, c)| c.bits().max(1) + (64 - e.leading_zeros() as u64).max(1))
            .sum()
    }
}

/// Natural log of a positive big integer without overflow.
pub fn ln_bigint(n: &BigInt) -> f64 {
    assert!(n.is_positive(), "log of non-positive integer");
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{e}")?,
                (_, false) => write!(f, "{mag}*x^{e}")?,
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for IntPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_text(s)
    }
}
