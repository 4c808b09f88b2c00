//! Multiplication kernels: schoolbook, Karatsuba, and NTT.
//!
//! NTT is used directly when `p` itself has enough 2-adicity, otherwise over
//! three fixed NTT primes recombined by Garner's CRT.

use crate::arith::Modulus;

const KARATSUBA_CROSSOVER: usize = 64;
const NTT_CROSSOVER: usize = 512;

/// Primes `c·2^32 + 1` just below `2^62`.
pub(crate) const NTT_PRIMES: [u64; 3] = [
    4611685318347718657,
    4611685232448372737,
    4611684691282493441,
];

pub(crate) fn mul_slices(m: &Modulus, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let small = a.len().min(b.len());
    if small <= KARATSUBA_CROSSOVER {
        return schoolbook(m, a, b);
    }
    if small >= NTT_CROSSOVER || a.len() + b.len() > 4 * NTT_CROSSOVER {
        return ntt_mul(m, a, b);
    }
    karatsuba(m, a, b)
}

pub(crate) fn schoolbook(m: &Modulus, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len() + b.len() - 1;
    let p = m.p();
    let pm1 = (p - 1) as u128;
    let terms = a.len().min(b.len()) as u128;
    if (pm1 * pm1).checked_mul(terms).is_some_and(|t| t < u64::MAX as u128) {
        // Exact u64 accumulation, one reduction per output.
        let mut out = vec![0u64; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (o, &y) in out[i..].iter_mut().zip(b) {
                *o += x * y;
            }
        }
        for o in &mut out {
            *o %= p;
        }
        return out;
    }
    let mut out = vec![0u64; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let xm = m.to_mont(x);
        for (o, &y) in out[i..].iter_mut().zip(b) {
            *o = m.add(*o, m.mont_mul(xm, y));
        }
    }
    out
}

fn karatsuba(m: &Modulus, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    if a.len().min(b.len()) <= KARATSUBA_CROSSOVER {
        return schoolbook(m, a, b);
    }
    let half = n / 2;
    let (a0, a1) = a.split_at(half.min(a.len()));
    let (b0, b1) = b.split_at(half.min(b.len()));
    let mut out = vec![0u64; a.len() + b.len() - 1];
    let z0 = if a0.is_empty() || b0.is_empty() {
        Vec::new()
    } else {
        karatsuba(m, a0, b0)
    };
    let z2 = if a1.is_empty() || b1.is_empty() {
        Vec::new()
    } else {
        karatsuba(m, a1, b1)
    };
    let sa = add_slices(m, a0, a1);
    let sb = add_slices(m, b0, b1);
    let mut z1 = karatsuba(m, &sa, &sb);
    for (i, &v) in z0.iter().enumerate() {
        z1[i] = m.sub(z1[i], v);
        out[i] = m.add(out[i], v);
    }
    for (i, &v) in z2.iter().enumerate() {
        z1[i] = m.sub(z1[i], v);
        out[i + 2 * half] = m.add(out[i + 2 * half], v);
    }
    for (i, &v) in z1.iter().enumerate() {
        if i + half < out.len() {
            out[i + half] = m.add(out[i + half], v);
        } else {
            debug_assert_eq!(v, 0);
        }
    }
    out
}

fn add_slices(m: &Modulus, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| m.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect()
}

fn two_adicity(p: u64) -> u32 {
    (p - 1).trailing_zeros()
}

/// A primitive `2^k`-th root of unity mod `p`, where `2^k` exactly divides `p - 1`.
fn root_of_unity(m: &Modulus) -> u64 {
    let p = m.p();
    let k = two_adicity(p);
    let odd = (p - 1) >> k;
    (2..)
        .map(|a| m.pow(a, odd))
        .find(|&w| m.pow(w, 1 << (k - 1)) != 1)
        .expect("non-residue exists")
}

struct NttPlan {
    m: Modulus,
    n: usize,
    /// Montgomery-form powers `w^j`, `j < n/2`, of a primitive n-th root.
    fwd: Vec<u64>,
    inv: Vec<u64>,
    n_inv: u64,
}

impl NttPlan {
    fn new(m: Modulus, n: usize) -> Self {
        let k = two_adicity(m.p());
        assert!(n.is_power_of_two() && (n.trailing_zeros()) <= k);
        let w = m.pow(root_of_unity(&m), 1u64 << (k - n.trailing_zeros()));
        let w_inv = m.inv(w);
        let table = |base: u64| {
            let bm = m.to_mont(base);
            let mut t = Vec::with_capacity(n / 2);
            let mut cur = m.to_mont(1);
            for _ in 0..n / 2 {
                t.push(cur);
                cur = m.mont_mul(cur, bm);
            }
            t
        };
        Self {
            m,
            n,
            fwd: table(w),
            inv: table(w_inv),
            n_inv: m.to_mont(m.inv(n as u64 % m.p())),
        }
    }

    /// Decimation in frequency; output in bit-reversed order.
    fn forward(&self, a: &mut [u64]) {
        let m = &self.m;
        let mut len = self.n / 2;
        while len >= 1 {
            let stride = self.n / (2 * len);
            for start in (0..self.n).step_by(2 * len) {
                for j in 0..len {
                    let u = a[start + j];
                    let v = a[start + j + len];
                    a[start + j] = m.add(u, v);
                    a[start + j + len] = m.mont_mul(m.sub(u, v), self.fwd[j * stride]);
                }
            }
            len /= 2;
        }
    }

    /// Decimation in time from bit-reversed order, including the `1/n` scale.
    fn inverse(&self, a: &mut [u64]) {
        let m = &self.m;
        let mut len = 1;
        while len < self.n {
            let stride = self.n / (2 * len);
            for start in (0..self.n).step_by(2 * len) {
                for j in 0..len {
                    let u = a[start + j];
                    let v = m.mont_mul(a[start + j + len], self.inv[j * stride]);
                    a[start + j] = m.add(u, v);
                    a[start + j + len] = m.sub(u, v);
                }
            }
            len *= 2;
        }
        for x in a.iter_mut() {
            *x = m.mont_mul(*x, self.n_inv);
        }
    }
}

/// Convolution mod an NTT-friendly prime; inputs are plain residues.
fn ntt_direct(m: &Modulus, a: &[u64], b: &[u64]) -> Vec<u64> {
    let out_len = a.len() + b.len() - 1;
    let n = out_len.next_power_of_two();
    let plan = NttPlan::new(*m, n);
    let mut fa = vec![0u64; n];
    for (d, &s) in fa.iter_mut().zip(a) {
        *d = m.to_mont(s % m.p());
    }
    plan.forward(&mut fa);
    if std::ptr::eq(a, b) {
        for x in fa.iter_mut() {
            *x = m.mont_mul(*x, *x);
        }
    } else {
        let mut fb = vec![0u64; n];
        for (d, &s) in fb.iter_mut().zip(b) {
            *d = m.to_mont(s % m.p());
        }
        plan.forward(&mut fb);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x = m.mont_mul(*x, *y);
        }
    }
    plan.inverse(&mut fa);
    fa.truncate(out_len);
    for x in fa.iter_mut() {
        *x = m.from_mont(*x);
    }
    fa
}

pub(crate) fn supports_direct_ntt(p: u64, len: usize) -> bool {
    p & 1 == 1 && len.next_power_of_two().trailing_zeros() <= two_adicity(p)
}

pub(crate) fn ntt_mul(m: &Modulus, a: &[u64], b: &[u64]) -> Vec<u64> {
    let out_len = a.len() + b.len() - 1;
    if supports_direct_ntt(m.p(), out_len) {
        return ntt_direct(m, a, b);
    }
    let [q1, q2, q3] = NTT_PRIMES.map(Modulus::new);
    let r1 = ntt_direct(&q1, a, b);
    let r2 = ntt_direct(&q2, a, b);
    let r3 = ntt_direct(&q3, a, b);
    // Garner: x = t1 + q1·t2 + q1·q2·t3.
    let q1_inv_q2 = q2.inv(q1.p() % q2.p());
    let q12_inv_q3 = q3.inv(q3.mul(q1.p() % q3.p(), q2.p() % q3.p()));
    let q1_mod_p = m.reduce(q1.p());
    let q12_mod_p = m.mul(q1_mod_p, m.reduce(q2.p()));
    (0..out_len)
        .map(|i| {
            let t1 = r1[i];
            let t2 = q2.mul(q2.sub(r2[i], t1 % q2.p()), q1_inv_q2);
            let partial = q3.add(t1 % q3.p(), q3.mul(q1.p() % q3.p(), t2 % q3.p()));
            let t3 = q3.mul(q3.sub(r3[i], partial), q12_inv_q3);
            m.add(
                m.add(m.reduce(t1), m.mul(q1_mod_p, m.reduce(t2))),
                m.mul(q12_mod_p, m.reduce(t3)),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_vec(rng: &mut ChaCha8Rng, n: usize, p: u64) -> Vec<u64> {
        (0..n).map(|_| rng.gen_range(0..p)).collect()
    }

    #[test]
    fn kernels_agree_with_schoolbook() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &p in &[2u64, 3, 65537, 1_000_003, (1 << 61) - 1, NTT_PRIMES[0]] {
            let m = Modulus::new(p);
            for &(la, lb) in &[(1, 1), (70, 65), (200, 130), (600, 700), (1500, 3)] {
                let a = random_vec(&mut rng, la, p);
                let b = random_vec(&mut rng, lb, p);
                let expect = schoolbook(&m, &a, &b);
                assert_eq!(karatsuba(&m, &a, &b), expect, "karatsuba p={p} {la}x{lb}");
                assert_eq!(ntt_mul(&m, &a, &b), expect, "ntt p={p} {la}x{lb}");
                assert_eq!(mul_slices(&m, &a, &b), expect);
            }
        }
    }

    #[test]
    fn ntt_squaring_path() {
        let m = Modulus::new(NTT_PRIMES[1]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_vec(&mut rng, 900, m.p());
        assert_eq!(ntt_direct(&m, &a, &a), schoolbook(&m, &a, &a));
    }
}
