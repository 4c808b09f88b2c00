//! Exact resultants and discriminants.
//!
//! [`resultant`] recovers the integer by CRT over word primes, using the
//! Hadamard row bound to decide how many primes are needed.
//! [`resultant_bareiss`] is the independent fraction-free Sylvester
//! determinant used to cross-check it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gcd::{word_primes, Crt};
use super::IntPoly;
use crate::arith::Modulus;
use crate::error::{Error, Result};
use crate::modp::{reduce, reduce_bigint, resultant_mod};

/// Default cap on `deg a + deg b` for exact resultants.
pub const DEFAULT_RESULTANT_LIMIT: usize = 2000;

const MIN_CRT_PRIMES: usize = 3;

pub fn resultant(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    resultant_with_limit(a, b, DEFAULT_RESULTANT_LIMIT)
}

pub fn resultant_with_limit(a: &IntPoly, b: &IntPoly, limit: usize) -> Result<BigInt> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Err(Error::ZeroPolynomial("resultant"));
    };
    let total = (da + db) as usize;
    if total > limit {
        return Err(Error::ResultantTooLarge { total, limit });
    }
    resultant_modular(a, b)
}

fn constant_case(a: &IntPoly, b: &IntPoly) -> Option<BigInt> {
    let da = a.degree()?;
    let db = b.degree()?;
    if da == 0 {
        return Some(num_traits::pow(a.leading_coeff()?.clone(), db as usize));
    }
    if db == 0 {
        return Some(num_traits::pow(b.leading_coeff()?.clone(), da as usize));
    }
    None
}

/// Resultant by CRT over word primes not dividing either leading coefficient.
pub fn resultant_modular(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial("resultant"));
    }
    if let Some(r) = constant_case(a, b) {
        return Ok(r);
    }
    let log_bound = crate::bounds::hadamard_log_resultant(a, b)?;
    // Need M > 2|Res|; one extra bit of slack for rounding in the bound.
    let bits_needed = (log_bound / std::f64::consts::LN_2).ceil() as u64 + 3;
    let lc_a = a.leading_coeff().unwrap();
    let lc_b = b.leading_coeff().unwrap();
    let mut crt: Option<Crt> = None;
    let mut used = 0usize;
    for p in word_primes() {
        let m = Modulus::new(p);
        if reduce_bigint(lc_a, &m) == 0 || reduce_bigint(lc_b, &m) == 0 {
            continue;
        }
        let r = resultant_mod(&reduce(a, p).poly, &reduce(b, p).poly);
        match crt.as_mut() {
            None => crt = Some(Crt::new(p, &[r])),
            Some(c) => c.absorb(p, &[r]),
        }
        used += 1;
        let c = crt.as_ref().unwrap();
        if used >= MIN_CRT_PRIMES && c.modulus.bits() > bits_needed {
            return Ok(c.symmetric().pop().unwrap());
        }
    }
    unreachable!("word prime sequence exhausted")
}

/// Sylvester matrix: `deg b` shifted rows of `a`, then `deg a` shifted rows of `b`.
pub fn sylvester_matrix(a: &IntPoly, b: &IntPoly) -> Vec<Vec<BigInt>> {
    let da = a.degree().unwrap_or(0) as usize;
    let db = b.degree().unwrap_or(0) as usize;
    let n = da + db;
    let mut rows = Vec::with_capacity(n);
    let ca: Vec<BigInt> = a.to_dense().into_iter().rev().collect();
    let cb: Vec<BigInt> = b.to_dense().into_iter().rev().collect();
    for i in 0..db {
        let mut row = vec![BigInt::zero(); n];
        row[i..i + da + 1].clone_from_slice(&ca);
        rows.push(row);
    }
    for i in 0..da {
        let mut row = vec![BigInt::zero(); n];
        row[i..i + db + 1].clone_from_slice(&cb);
        rows.push(row);
    }
    rows
}

/// Fraction-free (Bareiss) determinant.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v.div_floor(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant as the Bareiss determinant of the Sylvester matrix.
pub fn resultant_bareiss(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial("resultant"));
    }
    if let Some(r) = constant_case(a, b) {
        return Ok(r);
    }
    Ok(bareiss_determinant(sylvester_matrix(a, b)))
}

pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    discriminant_with_limit(f, DEFAULT_RESULTANT_LIMIT)
}

/// `(-1)^{d(d-1)/2}·Res(f, f')/lc(f)`.
pub fn discriminant_with_limit(f: &IntPoly, limit: usize) -> Result<BigInt> {
    let d = f.degree().ok_or(Error::ZeroPolynomial("discriminant"))?;
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let r = resultant_with_limit(f, &f.derivative(), limit)?;
    let lc = f.leading_coeff().unwrap();
    debug_assert!((&r % lc).is_zero());
    let q = r / lc;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
}

/// Whether `p` divides `n` (for `n` of any size).
pub fn divides(p: u64, n: &BigInt) -> bool {
    (n.abs() % BigInt::from(p)).is_zero()
}
