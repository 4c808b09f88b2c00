//! Dense polynomials over prime fields `F_p`, `p < 2^62`, and the per-prime
//! root-counting kernels used by every sweep.

mod brute;
mod euclid;
mod mul;
mod roots;

pub use brute::{brute_force_system_root, DEFAULT_BRUTE_FORCE_BUDGET};
pub use euclid::{gcd, resultant_mod};
pub use roots::{
    common_root_exists, degree_pattern, has_root, has_root_sparse, root_count, root_count_scan,
    root_count_sparse, DegreePattern, SparseModPoly,
};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::Modulus;
use crate::bigpoly::IntPoly;

/// Polynomial over `F_p` with dense coefficients, `coeffs[i]` multiplying `x^i`.
///
/// Stored coefficients are reduced into `[0, p)` and the vector is trimmed so
/// its last entry is nonzero; the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    modulus: Modulus,
    coeffs: Vec<u64>,
}

/// Result of reducing an integer polynomial mod `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub poly: ModPoly,
    /// `p` divided the leading coefficient, so the degree dropped.
    pub degree_dropped: bool,
}

/// `c mod p` for a big integer, into `[0, p)`.
pub fn reduce_bigint(c: &BigInt, m: &Modulus) -> u64 {
    match c.to_i64() {
        Some(v) => m.reduce_i64(v),
        None => {
            let p = BigInt::from(m.p());
            let r = ((c % &p) + &p) % &p;
            r.to_u64().expect("residue fits u64")
        }
    }
}

/// Coefficientwise reduction of `f` mod `p`.
pub fn reduce(f: &IntPoly, p: u64) -> Reduction {
    let m = Modulus::new(p);
    let Some(deg) = f.degree() else {
        return Reduction {
            poly: ModPoly::zero(m),
            degree_dropped: false,
        };
    };
    let mut coeffs = vec![0u64; deg as usize + 1];
    for (e, c) in f.terms() {
        coeffs[*e as usize] = reduce_bigint(c, &m);
    }
    let poly = ModPoly::from_vec(m, coeffs);
    let degree_dropped = poly.degree() != Some(deg as usize);
    Reduction {
        poly,
        degree_dropped,
    }
}

impl ModPoly {
    pub fn zero(modulus: Modulus) -> Self {
        Self {
            modulus,
            coeffs: Vec::new(),
        }
    }

    pub fn one(modulus: Modulus) -> Self {
        Self::from_vec(modulus, vec![1])
    }

    /// `x`.
    pub fn x(modulus: Modulus) -> Self {
        Self::from_vec(modulus, vec![0, 1])
    }

    /// From residues already in `[0, p)`; trailing zeros are trimmed.
    pub fn from_vec(modulus: Modulus, coeffs: Vec<u64>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < modulus.p()));
        let mut f = Self { modulus, coeffs };
        f.trim();
        f
    }

    /// From arbitrary signed coefficients, lowest degree first.
    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        let m = Modulus::new(p);
        Self::from_vec(m, coeffs.iter().map(|&c| m.reduce_i64(c)).collect())
    }

    pub(crate) fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn p(&self) -> u64 {
        self.modulus.p()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let m = &self.modulus;
        let xm = m.to_mont(x % m.p());
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| m.add(m.mont_mul(acc, xm), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                m.add(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Self::from_vec(m, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                m.sub(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Self::from_vec(m, coeffs)
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus;
        Self::from_vec(m, self.coeffs.iter().map(|&c| m.neg(c)).collect())
    }

    pub fn scale(&self, k: u64) -> Self {
        let m = self.modulus;
        let km = m.to_mont(k % m.p());
        Self::from_vec(m, self.coeffs.iter().map(|&c| m.mont_mul(c, km)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.modulus);
        }
        Self::from_vec(
            self.modulus,
            mul::mul_slices(&self.modulus, &self.coeffs, &other.coeffs),
        )
    }

    /// Scale to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        if lc == 1 {
            return self.clone();
        }
        self.scale(self.modulus.inv(lc))
    }

    pub fn derivative(&self) -> Self {
        let m = self.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| m.mul(c, m.reduce(i as u64)))
            .collect();
        Self::from_vec(m, coeffs)
    }

    /// Drop the `k` lowest coefficients (division by `x^k`, discarding the remainder).
    pub fn shift_right(&self, k: usize) -> Self {
        if k >= self.coeffs.len() {
            return Self::zero(self.modulus);
        }
        Self {
            modulus: self.modulus,
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        euclid::divrem(self, divisor)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        euclid::divrem(self, divisor).1
    }

    /// Exact quotient; panics in debug builds when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = euclid::divrem(self, divisor);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        let r = reduce(&"x^2 + 1".parse().unwrap(), 5);
        assert_eq!(r.poly, ModPoly::from_i64(5, &[1, 0, 1]));
        assert!(!r.degree_dropped);

        let r = reduce(&"5*x^3 + x".parse().unwrap(), 5);
        assert_eq!(r.poly, ModPoly::from_i64(5, &[0, 1]));
        assert!(r.degree_dropped);

        let r = reduce(&"-x + 7".parse().unwrap(), 5);
        assert_eq!(r.poly.coeffs(), &[2, 4]);
    }

    #[test]
    fn reduce_big_coefficients() {
        let f: IntPoly = "-123456789012345678901234567890*x + 1".parse().unwrap();
        let r = reduce(&f, 1_000_003);
        let big: BigInt = "-123456789012345678901234567890".parse().unwrap();
        let expect = ((big % 1_000_003i64) + 1_000_003i64) % 1_000_003i64;
        assert_eq!(BigInt::from(r.poly.coeffs()[1]), expect);
    }

    #[test]
    fn eval_and_derivative() {
        let f = ModPoly::from_i64(7, &[1, 0, 3, 1]);
        assert_eq!(f.eval(2), (1 + 12 + 8) % 7);
        assert_eq!(f.derivative(), ModPoly::from_i64(7, &[0, 6, 3]));
        assert_eq!(ModPoly::from_i64(3, &[0, 0, 0, 1]).derivative(), ModPoly::zero(Modulus::new(3)));
    }
}
