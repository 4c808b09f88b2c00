//! Division, gcd (classical and half-gcd), and resultants over `F_p`.

use super::mul::mul_slices;
use super::ModPoly;
use crate::arith::Modulus;

const NEWTON_DIVISION_CROSSOVER: usize = 64;
const HGCD_CROSSOVER: usize = 96;

/// Classical long division on raw slices; `b` must be nonzero and trimmed.
fn divrem_classical(m: &Modulus, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let lc_inv = m.inv(b[db]);
    let qlen = a.len() - db;
    let mut q = vec![0u64; qlen];
    for i in (0..qlen).rev() {
        let c = r[i + db];
        if c == 0 {
            continue;
        }
        let qi = m.mul(c, lc_inv);
        q[i] = qi;
        let neg_qm = m.to_mont(m.neg(qi));
        for (rj, &bj) in r[i..i + db].iter_mut().zip(&b[..db]) {
            *rj = m.add(*rj, m.mont_mul(neg_qm, bj));
        }
        r[i + db] = 0;
    }
    r.truncate(db);
    (q, r)
}

/// Power-series inverse of `h` modulo `x^n`; `h[0]` must be nonzero.
pub(crate) fn series_inverse(m: &Modulus, h: &[u64], n: usize) -> Vec<u64> {
    let mut g = vec![m.inv(h[0])];
    let mut len = 1;
    while len < n {
        len = (2 * len).min(n);
        let hg = mul_slices(m, &h[..h.len().min(len)], &g);
        // g <- g·(2 - h·g) mod x^len
        let mut two_minus: Vec<u64> = hg.iter().take(len).map(|&v| m.neg(v)).collect();
        two_minus.resize(len, 0);
        two_minus[0] = m.add(two_minus[0], 2 % m.p());
        let mut next = mul_slices(m, &g, &two_minus);
        next.truncate(len);
        next.resize(len, 0);
        g = next;
    }
    g.truncate(n);
    g
}

fn divrem_newton(m: &Modulus, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let qlen = a.len() - b.len() + 1;
    let rev_b: Vec<u64> = b.iter().rev().copied().collect();
    let rev_a: Vec<u64> = a.iter().rev().take(qlen).copied().collect();
    let inv = series_inverse(m, &rev_b, qlen);
    let mut q_rev = mul_slices(m, &rev_a, &inv);
    q_rev.resize(qlen, 0);
    q_rev.truncate(qlen);
    q_rev.reverse();
    let q = q_rev;
    let bq = mul_slices(m, b, &q);
    let rlen = b.len() - 1;
    let r = (0..rlen).map(|i| m.sub(a[i], bq[i])).collect();
    (q, r)
}

pub(crate) fn divrem(a: &ModPoly, b: &ModPoly) -> (ModPoly, ModPoly) {
    assert!(!b.is_zero(), "division by zero polynomial");
    let m = a.modulus;
    let (q, r) = if a.coeffs.len() < b.coeffs.len() {
        (Vec::new(), a.coeffs.clone())
    } else {
        let qlen = a.coeffs.len() - b.coeffs.len() + 1;
        if qlen <= NEWTON_DIVISION_CROSSOVER || b.coeffs.len() <= NEWTON_DIVISION_CROSSOVER {
            divrem_classical(&m, &a.coeffs, &b.coeffs)
        } else {
            divrem_newton(&m, &a.coeffs, &b.coeffs)
        }
    };
    (ModPoly::from_vec(m, q), ModPoly::from_vec(m, r))
}

/// 2x2 polynomial matrix acting on remainder pairs.
#[derive(Clone, Debug)]
struct Mat {
    a: [ModPoly; 4],
}

impl Mat {
    fn identity(m: Modulus) -> Self {
        Self {
            a: [
                ModPoly::one(m),
                ModPoly::zero(m),
                ModPoly::zero(m),
                ModPoly::one(m),
            ],
        }
    }

    /// `[[0, 1], [1, -q]]`.
    fn step(q: &ModPoly) -> Self {
        let m = q.modulus;
        Self {
            a: [ModPoly::zero(m), ModPoly::one(m), ModPoly::one(m), q.neg()],
        }
    }

    fn apply(&self, u: &ModPoly, v: &ModPoly) -> (ModPoly, ModPoly) {
        let [a00, a01, a10, a11] = &self.a;
        (a00.mul(u).add(&a01.mul(v)), a10.mul(u).add(&a11.mul(v)))
    }

    /// `self · rhs`.
    fn compose(&self, rhs: &Self) -> Self {
        let [a, b, c, d] = &self.a;
        let [e, f, g, h] = &rhs.a;
        Self {
            a: [
                a.mul(e).add(&b.mul(g)),
                a.mul(f).add(&b.mul(h)),
                c.mul(e).add(&d.mul(g)),
                c.mul(f).add(&d.mul(h)),
            ],
        }
    }
}

fn deg(f: &ModPoly) -> isize {
    f.coeffs.len() as isize - 1
}

/// Euclid steps until the second remainder drops below degree `m`.
fn hgcd_classical(a: &ModPoly, b: &ModPoly, m: isize) -> Mat {
    let mut mat = Mat::identity(a.modulus);
    let (mut u, mut v) = (a.clone(), b.clone());
    while !v.is_zero() && deg(&v) >= m {
        let (q, r) = divrem(&u, &v);
        mat = Mat::step(&q).compose(&mat);
        u = v;
        v = r;
    }
    mat
}

/// Half-gcd: for `deg a > deg b`, returns `M` with `M·(a, b) = (c, d)`
/// consecutive remainders satisfying `deg c >= ceil(deg a / 2) > deg d`.
fn hgcd(a: &ModPoly, b: &ModPoly) -> Mat {
    let n = deg(a);
    let m = (n + 1) / 2;
    if b.is_zero() || deg(b) < m {
        return Mat::identity(a.modulus);
    }
    if (n as usize) < HGCD_CROSSOVER {
        return hgcd_classical(a, b, m);
    }
    let mu = m as usize;
    let r = hgcd(&a.shift_right(mu), &b.shift_right(mu));
    let (c, d) = r.apply(a, b);
    if d.is_zero() || deg(&d) < m {
        return r;
    }
    let (q, e) = divrem(&c, &d);
    let r = Mat::step(&q).compose(&r);
    if e.is_zero() || deg(&e) < m {
        return r;
    }
    let k = (2 * m - deg(&d)) as usize;
    let s = hgcd(&d.shift_right(k), &e.shift_right(k));
    s.compose(&r)
}

fn gcd_classical(mut a: ModPoly, mut b: ModPoly) -> ModPoly {
    while !b.is_zero() {
        let r = divrem(&a, &b).1;
        a = b;
        b = r;
    }
    a.monic()
}

/// Monic gcd over `F_p` (zero when both inputs are zero).
pub fn gcd(a: &ModPoly, b: &ModPoly) -> ModPoly {
    let (mut a, mut b) = if deg(a) >= deg(b) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    loop {
        if b.is_zero() {
            return a.monic();
        }
        if (deg(&a) as usize) < HGCD_CROSSOVER {
            return gcd_classical(a, b);
        }
        if deg(&a) == deg(&b) {
            let r = divrem(&a, &b).1;
            a = b;
            b = r;
            continue;
        }
        let mat = hgcd(&a, &b);
        let (c, d) = mat.apply(&a, &b);
        if d.is_zero() {
            return c.monic();
        }
        let r = divrem(&c, &d).1;
        a = d;
        b = r;
    }
}

/// Resultant over `F_p` by the Euclidean recurrence
/// `Res(a, b) = (-1)^{deg a·deg b} lc(b)^{deg a - deg r} Res(b, r)`.
/// Inputs are taken at their actual (trimmed) degrees; either being zero gives 0.
pub fn resultant_mod(a: &ModPoly, b: &ModPoly) -> u64 {
    let m = a.modulus;
    if a.is_zero() || b.is_zero() {
        return 0;
    }
    let mut acc = 1u64;
    let (mut u, mut v) = (a.clone(), b.clone());
    loop {
        let du = deg(&u) as u64;
        let dv = deg(&v) as u64;
        if dv == 0 {
            return m.mul(acc, m.pow(v.leading_coeff(), du));
        }
        let r = divrem(&u, &v).1;
        if r.is_zero() {
            return 0;
        }
        let dr = deg(&r) as u64;
        if (du * dv) % 2 == 1 {
            acc = m.neg(acc);
        }
        acc = m.mul(acc, m.pow(v.leading_coeff(), du - dr));
        u = v;
        v = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly(rng: &mut ChaCha8Rng, m: Modulus, deg: usize) -> ModPoly {
        let mut c: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..m.p())).collect();
        c[deg] = rng.gen_range(1..m.p());
        ModPoly::from_vec(m, c)
    }

    #[test]
    fn newton_division_matches_classical() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &p in &[1_000_003u64, super::super::mul::NTT_PRIMES[2], 7] {
            let m = Modulus::new(p);
            for &(da, db) in &[(500, 100), (1000, 900), (3000, 70), (200, 199)] {
                let a = random_poly(&mut rng, m, da);
                let b = random_poly(&mut rng, m, db);
                let (q1, r1) = divrem_newton(&m, &a.coeffs, &b.coeffs);
                let (q2, r2) = divrem_classical(&m, &a.coeffs, &b.coeffs);
                assert_eq!(ModPoly::from_vec(m, q1), ModPoly::from_vec(m, q2));
                assert_eq!(ModPoly::from_vec(m, r1), ModPoly::from_vec(m, r2));
            }
        }
    }

    #[test]
    fn half_gcd_matches_classical_gcd() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &p in &[101u64, 1_000_003, super::super::mul::NTT_PRIMES[0]] {
            let m = Modulus::new(p);
            for &(dg, du, dv) in &[(0, 300, 250), (5, 400, 401), (37, 250, 600), (120, 180, 90)] {
                let g = random_poly(&mut rng, m, dg);
                let a = g.mul(&random_poly(&mut rng, m, du));
                let b = g.mul(&random_poly(&mut rng, m, dv));
                let fast = gcd(&a, &b);
                let slow = gcd_classical(a.clone(), b.clone());
                assert_eq!(fast, slow, "p={p} dg={dg}");
                assert!(a.rem(&fast).is_zero() && b.rem(&fast).is_zero());
            }
        }
    }

    #[test]
    fn hgcd_output_straddles_half_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = Modulus::new(1_000_003);
        for _ in 0..5 {
            let a = random_poly(&mut rng, m, 513);
            let b = random_poly(&mut rng, m, 400);
            let mat = hgcd(&a, &b);
            let (c, d) = mat.apply(&a, &b);
            let half = (deg(&a) + 1) / 2;
            assert!(deg(&c) >= half && deg(&d) < half);
        }
    }

    #[test]
    fn resultant_small_cases() {
        // Res(x^2 + 1, x + 1) = 2
        let p = 1_000_003;
        let a = ModPoly::from_i64(p, &[1, 0, 1]);
        let b = ModPoly::from_i64(p, &[1, 1]);
        assert_eq!(resultant_mod(&a, &b), 2);
        assert_eq!(resultant_mod(&b, &a), 2);
        // Res(x - 3, x - 3) = 0
        let c = ModPoly::from_i64(p, &[-3, 1]);
        assert_eq!(resultant_mod(&c, &c), 0);
        // Res(x^2 - 2, x^2 - 3) = 1
        let d = ModPoly::from_i64(p, &[-2, 0, 1]);
        let e = ModPoly::from_i64(p, &[-3, 0, 1]);
        assert_eq!(resultant_mod(&d, &e), 1);
    }
}
