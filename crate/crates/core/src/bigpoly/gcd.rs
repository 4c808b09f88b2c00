//! Modular gcd over Z.
//!
//! Images `γ·gcd(a mod p, b mod p)` with `γ = gcd(lc a, lc b)` are collected
//! over a fixed descending sequence of word primes. The smallest degree seen
//! wins (larger ones come from unlucky primes); once two primes agree, the
//! images are combined by CRT, lifted symmetrically, and the primitive
//! candidate is accepted only after it divides both inputs exactly.

use num_bigint::BigInt;
use num_integer::Integer;

use super::IntPoly;
use crate::arith::Modulus;
use crate::error::{Error, Result};
use crate::modp::{self, reduce, reduce_bigint, ModPoly};

const MAX_GCD_PRIMES: usize = 400;

/// Word primes `c·2^24 + 1` in `(2^61, 2^62)`, descending; deterministic.
pub(crate) fn word_primes() -> impl Iterator<Item = u64> {
    let top = ((1u64 << 62) >> 24) - 1;
    let bottom = (1u64 << 61) >> 24;
    (bottom..=top)
        .rev()
        .filter(|c| c % 2 == 1)
        .map(|c| (c << 24) + 1)
        .filter(|&p| crate::primes::is_prime(p))
}

/// Running CRT state for a dense coefficient vector.
pub(crate) struct Crt {
    pub modulus: BigInt,
    pub residues: Vec<BigInt>,
}

impl Crt {
    pub fn new(p: u64, image: &[u64]) -> Self {
        Self {
            modulus: BigInt::from(p),
            residues: image.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn absorb(&mut self, p: u64, image: &[u64]) {
        let m = Modulus::new(p);
        let m_inv = m.inv(reduce_bigint(&self.modulus, &m));
        for (x, &r) in self.residues.iter_mut().zip(image) {
            let delta = m.mul(m.sub(r, reduce_bigint(x, &m)), m_inv);
            if delta != 0 {
                *x += &self.modulus * BigInt::from(delta);
            }
        }
        self.modulus *= BigInt::from(p);
    }

    /// Representatives in `(-M/2, M/2]`.
    pub fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1u32;
        self.residues
            .iter()
            .map(|x| if x > &half { x - &self.modulus } else { x.clone() })
            .collect()
    }
}

fn divides_mod(candidate: &IntPoly, f: &IntPoly, p: u64) -> bool {
    let c = reduce(candidate, p).poly;
    let fp = reduce(f, p).poly;
    !c.is_zero() && fp.rem(&c).is_zero()
}

/// Primitive gcd over Z with positive leading coefficient.
pub fn gcd_z(a: &IntPoly, b: &IntPoly) -> Result<IntPoly> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Err(Error::GcdOfZero),
        (true, false) => return Ok(b.primitive_part()),
        (false, true) => return Ok(a.primitive_part()),
        _ => {}
    }
    let a = a.primitive_part();
    let b = b.primitive_part();
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return Ok(IntPoly::one());
    }
    let lc_a = a.leading_coeff().unwrap().clone();
    let lc_b = b.leading_coeff().unwrap().clone();
    let gamma = lc_a.gcd(&lc_b);

    let mut best_degree: Option<usize> = None;
    let mut crt: Option<Crt> = None;
    let mut agreeing = 0usize;
    let mut primes = word_primes();
    let mut spare = word_primes().skip(MAX_GCD_PRIMES);
    for _ in 0..MAX_GCD_PRIMES {
        let p = primes.next().expect("prime sequence is long");
        let m = Modulus::new(p);
        if reduce_bigint(&lc_a, &m) == 0 || reduce_bigint(&lc_b, &m) == 0 {
            continue;
        }
        let g = modp::gcd(&reduce(&a, p).poly, &reduce(&b, p).poly);
        let d = g.degree().expect("inputs nonzero mod p");
        if d == 0 {
            return Ok(IntPoly::one());
        }
        let image: ModPoly = g.scale(reduce_bigint(&gamma, &m));
        match best_degree {
            Some(bd) if d > bd => continue,
            Some(bd) if d == bd => {
                crt.as_mut().unwrap().absorb(p, image.coeffs());
                agreeing += 1;
            }
            _ => {
                best_degree = Some(d);
                crt = Some(Crt::new(p, image.coeffs()));
                agreeing = 1;
            }
        }
        if agreeing < 2 {
            continue;
        }
        let candidate = IntPoly::from_coeffs(crt.as_ref().unwrap().symmetric()).primitive_part();
        // Cheap modular screen before the exact sparse divisions.
        let q = spare.next().expect("prime sequence is long");
        if !divides_mod(&candidate, &a, q) || !divides_mod(&candidate, &b, q) {
            continue;
        }
        if a.div_exact(&candidate).is_some() && b.div_exact(&candidate).is_some() {
            return Ok(candidate);
        }
    }
    Err(Error::GcdNotConverged(MAX_GCD_PRIMES))
}

/// gcd of several polynomials; zero entries are ignored.
pub fn gcd_z_many(fs: &[IntPoly]) -> Result<IntPoly> {
    let mut acc = IntPoly::zero();
    for f in fs {
        if f.is_zero() {
            continue;
        }
        acc = if acc.is_zero() {
            f.primitive_part()
        } else {
            gcd_z(&acc, f)?
        };
        if acc.degree() == Some(0) {
            return Ok(IntPoly::one());
        }
    }
    if acc.is_zero() {
        return Err(Error::GcdOfZero);
    }
    Ok(acc)
}

/// `f / gcd(f, f')`, primitive with positive leading coefficient.
pub fn squarefree_part(f: &IntPoly) -> Result<IntPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree_part"));
    }
    let g = gcd_z(f, &f.derivative())?;
    let q = f
        .div_exact(&g)
        .expect("gcd divides its argument exactly");
    Ok(q.primitive_part())
}
