//! Word-size modular arithmetic.
//!
//! Residues are kept in `[0, p)` for `p < 2^62`. Multiplication goes through
//! Montgomery reduction with `R = 2^64`; hot loops can work directly in the
//! Montgomery domain via [`Modulus::to_mont`] / [`Modulus::mont_mul`].

/// Largest modulus accepted by [`Modulus::new`].
pub const MAX_MODULUS: u64 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Modulus {
    p: u64,
    /// `-p^{-1} mod 2^64` (odd moduli only).
    neg_inv: u64,
    /// `2^128 mod p`.
    r2: u64,
}

impl Modulus {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < MAX_MODULUS, "modulus {p} out of range");
        if p % 2 == 0 {
            return Self { p, neg_inv: 0, r2: 0 };
        }
        let mut inv = p;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Self {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    fn is_odd(&self) -> bool {
        self.p & 1 == 1
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    /// Reduce an arbitrary `u64`.
    #[inline]
    pub fn reduce(&self, a: u64) -> u64 {
        a % self.p
    }

    /// Reduce a signed value into `[0, p)`.
    #[inline]
    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn reduce_i128(&self, a: i128) -> u64 {
        a.rem_euclid(self.p as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if !self.is_odd() {
            return ((a as u128 * b as u128) % self.p as u128) as u64;
        }
        self.redc(self.redc(a as u128 * b as u128) as u128 * self.r2 as u128)
    }

    /// Montgomery form `a·R mod p`. Identity for even moduli.
    #[inline]
    pub fn to_mont(&self, a: u64) -> u64 {
        if !self.is_odd() {
            return a;
        }
        self.redc(a as u128 * self.r2 as u128)
    }

    #[inline]
    pub fn from_mont(&self, a: u64) -> u64 {
        if !self.is_odd() {
            return a;
        }
        self.redc(a as u128)
    }

    /// `a·b·R^{-1}`; with one operand in Montgomery form this is the plain product.
    #[inline]
    pub fn mont_mul(&self, a: u64, b: u64) -> u64 {
        if !self.is_odd() {
            return ((a as u128 * b as u128) % self.p as u128) as u64;
        }
        self.redc(a as u128 * b as u128)
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut result = self.to_mont(1 % self.p);
        let mut b = self.to_mont(base % self.p);
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mont_mul(result, b);
            }
            b = self.mont_mul(b, b);
            exp >>= 1;
        }
        self.from_mont(result)
    }

    /// Inverse of a nonzero residue; `p` must be prime.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }
}

/// `a·b mod m` for any `m < 2^64`.
#[inline]
pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut result = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod_u64(result, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    result
}

/// Distinct prime factors of `n` by trial division.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = distinct_prime_factors(p - 1);
    let m = Modulus::new(p);
    (2..p)
        .find(|&g| factors.iter().all(|&q| m.pow(g, (p - 1) / q) != 1))
        .expect("prime modulus has a primitive root")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn montgomery_matches_u128() {
        for &p in &[2u64, 3, 5, 97, 1_000_003, (1 << 61) - 1, 4611685318347718657] {
            let m = Modulus::new(p);
            let samples = [0u64, 1, 2, p - 1, p / 2, p / 3 + 7];
            for &a in &samples {
                for &b in &samples {
                    let (a, b) = (a % p, b % p);
                    assert_eq!(m.mul(a, b), mul_mod_u64(a, b, p), "p={p} a={a} b={b}");
                    assert_eq!(m.from_mont(m.mont_mul(m.to_mont(a), m.to_mont(b))), m.mul(a, b));
                }
            }
        }
    }

    #[test]
    fn inverse_and_pow() {
        let m = Modulus::new(1_000_000_007);
        for a in 1..200u64 {
            assert_eq!(m.mul(a, m.inv(a)), 1);
        }
        assert_eq!(m.pow(3, 0), 1);
        assert_eq!(Modulus::new(2).pow(1, 5), 1);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(23), 5);
        assert_eq!(primitive_root(2), 1);
        assert_eq!(distinct_prime_factors(360), vec![2, 3, 5]);
    }
}
