//! Prime generation: segmented sieve over odd numbers, deterministic 64-bit
//! Miller–Rabin, nth prime, and an optional on-disk segment cache.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::arith::{mul_mod_u64, pow_mod_u64};
use crate::error::{Error, Result};

/// Default number of odd entries per sieve segment.
pub const DEFAULT_SEGMENT_ODDS: u64 = 1 << 20;

/// Environment variable naming the sieve cache directory.
pub const CACHE_DIR_ENV: &str = "PRIMEFEAS_CACHE_DIR";

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
/// Witness set proven sufficient for all `n < 2^64` (Jim Sinclair).
const MR_BASES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

/// Deterministic primality for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality bitmap over the odd integers of `[lo, hi)`; 2 is tracked apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeRange {
    lo: u64,
    hi: u64,
    /// Bit `i` is set iff `first_odd + 2i` is prime.
    bits: Vec<u64>,
}

fn first_odd_at_least(n: u64) -> u64 {
    n | 1
}

fn odd_count(lo: u64, hi: u64) -> u64 {
    let f = first_odd_at_least(lo);
    if f >= hi {
        0
    } else {
        (hi - f + 1) / 2
    }
}

/// Odd primes up to `limit` by a plain sieve.
fn base_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    let mut i = 3;
    while i <= limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += 2 * i;
            }
        }
        i += 2;
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}

impl PrimeRange {
    /// Sieve `[lo, hi)` with the odd primes up to `sqrt(hi)`.
    pub fn sieve(lo: u64, hi: u64) -> Self {
        let base = base_primes(isqrt(hi.saturating_sub(1)).max(2));
        Self::sieve_with(lo, hi, &base)
    }

    fn sieve_with(lo: u64, hi: u64, base: &[u64]) -> Self {
        let n = odd_count(lo, hi);
        let words = n.div_ceil(64) as usize;
        let mut bits = vec![u64::MAX; words];
        if n % 64 != 0 {
            bits[words - 1] = (1u64 << (n % 64)) - 1;
        }
        let first = first_odd_at_least(lo);
        if first == 1 && n > 0 {
            bits[0] &= !1;
        }
        for &q in base {
            if q * q >= hi {
                break;
            }
            let mut start = (q * q).max(lo.div_ceil(q) * q);
            if start % 2 == 0 {
                start += q;
            }
            let mut idx = (start - first) / 2;
            while idx < n {
                bits[(idx / 64) as usize] &= !(1u64 << (idx % 64));
                idx += q;
            }
        }
        Self { lo, hi, bits }
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    fn includes_two(&self) -> bool {
        self.lo <= 2 && 2 < self.hi
    }

    pub fn contains_prime(&self, n: u64) -> bool {
        assert!(n >= self.lo && n < self.hi, "{n} outside [{}, {})", self.lo, self.hi);
        if n == 2 {
            return true;
        }
        if n % 2 == 0 {
            return false;
        }
        let idx = (n - first_odd_at_least(self.lo)) / 2;
        self.bits[(idx / 64) as usize] >> (idx % 64) & 1 == 1
    }

    pub fn count(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum::<u64>() + u64::from(self.includes_two())
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        let first = first_odd_at_least(self.lo);
        let two = self.includes_two().then_some(2);
        two.into_iter().chain(self.bits.iter().enumerate().flat_map(move |(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as u64;
                word &= word - 1;
                Some(first + 2 * (w as u64 * 64 + b))
            })
        }))
    }

    const MAGIC: [u8; 8] = *b"PFSIEVE\0";
    const VERSION: u32 = 1;
    const HEADER_LEN: usize = 8 + 4 + 8 + 8;

    /// Little-endian header `(magic, version, lo, hi)` followed by the raw bitmap words.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(Self::HEADER_LEN + self.bits.len() * 8);
        out.extend_from_slice(&Self::MAGIC);
        out.extend_from_slice(&Self::VERSION.to_le_bytes());
        out.extend_from_slice(&self.lo.to_le_bytes());
        out.extend_from_slice(&self.hi.to_le_bytes());
        for w in &self.bits {
            out.extend_from_slice(&w.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let err = |m: &str| Error::Cache(m.to_string());
        if bytes.len() < Self::HEADER_LEN {
            return Err(err("truncated header"));
        }
        if bytes[..8] != Self::MAGIC {
            return Err(err("bad magic"));
        }
        let word = |i: usize| u64::from_le_bytes(bytes[i..i + 8].try_into().unwrap());
        let version = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
        if version != Self::VERSION {
            return Err(err("unsupported version"));
        }
        let (lo, hi) = (word(12), word(20));
        if hi < lo {
            return Err(err("inverted range"));
        }
        let words = odd_count(lo, hi).div_ceil(64) as usize;
        if bytes.len() != Self::HEADER_LEN + 8 * words {
            return Err(err("bitmap length does not match range"));
        }
        let bits = (0..words).map(|i| word(Self::HEADER_LEN + 8 * i)).collect();
        Ok(Self { lo, hi, bits })
    }
}

/// On-disk cache of sieve segments keyed by `(lo, hi)`.
#[derive(Clone, Debug)]
pub struct SieveCache {
    dir: PathBuf,
}

impl SieveCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// Directory from the environment, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, lo: u64, hi: u64) -> PathBuf {
        self.dir.join(format!("sieve_{lo}_{hi}.bin"))
    }

    pub fn load(&self, lo: u64, hi: u64) -> Result<Option<PrimeRange>> {
        let path = self.path(lo, hi);
        match fs::read(&path) {
            Ok(bytes) => {
                let r = PrimeRange::from_bytes(&bytes)?;
                if (r.lo, r.hi) != (lo, hi) {
                    return Err(Error::Cache(format!("{} holds another range", path.display())));
                }
                Ok(Some(r))
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(Error::Cache(e.to_string())),
        }
    }

    pub fn store(&self, range: &PrimeRange) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::Cache(e.to_string()))?;
        let path = self.path(range.lo, range.hi);
        let tmp = path.with_extension("tmp");
        let mut f = fs::File::create(&tmp).map_err(|e| Error::Cache(e.to_string()))?;
        f.write_all(&range.to_bytes())
            .map_err(|e| Error::Cache(e.to_string()))?;
        fs::rename(&tmp, &path).map_err(|e| Error::Cache(e.to_string()))
    }

    /// Load a segment, sieving and storing it on a miss. Corrupt files are
    /// replaced.
    pub fn get_or_sieve(&self, lo: u64, hi: u64) -> Result<PrimeRange> {
        if let Ok(Some(r)) = self.load(lo, hi) {
            return Ok(r);
        }
        let r = PrimeRange::sieve(lo, hi);
        self.store(&r)?;
        Ok(r)
    }
}

/// Sieve configuration for bulk prime listing.
#[derive(Clone, Debug, Default)]
pub struct SieveOptions {
    /// Odd entries per segment (0 = default).
    pub segment_odds: u64,
    pub cache: Option<SieveCache>,
}

/// All primes `<= x`, with segments sieved in parallel and merged in order.
pub fn primes_up_to_vec(x: u64, opts: &SieveOptions) -> Result<Vec<u64>> {
    if x < 2 {
        return Ok(Vec::new());
    }
    let seg_len = 2 * if opts.segment_odds == 0 {
        DEFAULT_SEGMENT_ODDS
    } else {
        opts.segment_odds
    };
    let hi = x + 1;
    let base = base_primes(isqrt(x).max(2));
    let bounds: Vec<(u64, u64)> = (0..)
        .map(|i| i * seg_len)
        .take_while(|&lo| lo < hi)
        .map(|lo| (lo, (lo + seg_len).min(hi)))
        .collect();
    let segments: Vec<PrimeRange> = bounds
        .par_iter()
        .map(|&(lo, h)| match &opts.cache {
            Some(c) => c.get_or_sieve(lo, h),
            None => Ok(PrimeRange::sieve_with(lo, h, &base)),
        })
        .collect::<Result<_>>()?;
    Ok(segments.iter().flat_map(|s| s.primes().collect::<Vec<_>>()).collect())
}

/// Streaming primes `<= x` in increasing order; memory is `O(sqrt x + segment)`.
pub fn primes_up_to(x: u64) -> impl Iterator<Item = u64> {
    let seg_len = 2 * DEFAULT_SEGMENT_ODDS;
    let base = base_primes(isqrt(x).max(2));
    let hi = x.saturating_add(1);
    (0..)
        .map(move |i: u64| i * seg_len)
        .take_while(move |&lo| lo < hi)
        .flat_map(move |lo| {
            let seg = PrimeRange::sieve_with(lo, (lo + seg_len).min(hi), &base);
            seg.primes().collect::<Vec<_>>()
        })
}

/// `π(x)`.
pub fn prime_pi(x: u64) -> u64 {
    if x < 2 {
        return 0;
    }
    let seg_len = 2 * DEFAULT_SEGMENT_ODDS;
    let base = base_primes(isqrt(x).max(2));
    let hi = x + 1;
    (0..)
        .map(|i: u64| i * seg_len)
        .take_while(|&lo| lo < hi)
        .map(|lo| PrimeRange::sieve_with(lo, (lo + seg_len).min(hi), &base).count())
        .sum()
}

/// Upper bound on the k-th prime (Rosser; valid for k >= 6).
fn nth_prime_upper_bound(k: u64) -> u64 {
    if k < 6 {
        return 15;
    }
    let kf = k as f64;
    (kf * (kf.ln() + kf.ln().ln())).ceil() as u64 + 3
}

/// The first `k` primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    if k == 0 {
        return Vec::new();
    }
    let bound = nth_prime_upper_bound(k as u64);
    primes_up_to(bound).take(k).collect()
}

/// The k-th prime, 1-indexed.
pub fn nth_prime(k: u64) -> u64 {
    assert!(k >= 1, "nth_prime is 1-indexed");
    let bound = nth_prime_upper_bound(k);
    primes_up_to(bound)
        .nth(k as usize - 1)
        .expect("Rosser bound covers the k-th prime")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn small_examples() {
        assert_eq!(primes_up_to(10).collect::<Vec<_>>(), vec![2, 3, 5, 7]);
        assert!(is_prime(2));
        assert!(!is_prime(341));
        assert!(!trial_division(341));
        assert!(!is_prime(0) && !is_prime(1));
    }

    #[test]
    fn mersenne_61_cross_checked() {
        let m61 = (1u64 << 61) - 1;
        assert!(is_prime(m61));
        // Independent big-integer Fermat test to several bases.
        let n = BigUint::from(m61);
        for a in [2u32, 3, 5, 7, 11] {
            assert_eq!(BigUint::from(a).modpow(&(&n - 1u32), &n), BigUint::from(1u32));
        }
        assert!(!is_prime(m61 + 2));
        // Strong pseudoprime to many bases; composite.
        assert!(!is_prime(3_825_123_056_546_413_051));
        assert!(is_prime(18446744073709551557)); // largest 64-bit prime
        assert!(!is_prime(u64::MAX));
    }

    #[test]
    fn is_prime_matches_trial_division_to_a_million() {
        let sieve = PrimeRange::sieve(0, 1_000_001);
        for n in 0..=1_000_000u64 {
            let expect = sieve.contains_prime(n);
            assert_eq!(is_prime(n), expect, "n={n}");
        }
        for n in (0..1_000_000u64).step_by(997) {
            assert_eq!(is_prime(n), trial_division(n));
        }
    }

    #[test]
    fn counts_match_trial_division_oracle() {
        let by_trial = (2..=100u64).filter(|&n| trial_division(n)).count();
        assert_eq!(by_trial, 25);
        assert_eq!(primes_up_to(100).count(), 25);
        for (x, expect) in [(1_000u64, 168u64), (10_000, 1229), (100_000, 9592), (1_000_000, 78498)] {
            let stream: Vec<u64> = primes_up_to(x).collect();
            assert!(stream.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(stream.len() as u64, expect);
            assert_eq!(prime_pi(x), expect);
            // Second route: deterministic Miller–Rabin over every odd number.
            let mr = 1 + (3..=x).step_by(2).filter(|&n| is_prime(n)).count() as u64;
            assert_eq!(mr, expect);
        }
    }

    #[test]
    fn nth_prime_values() {
        assert_eq!(nth_prime(1), 2);
        assert_eq!(nth_prime(25), 97);
        let first = first_primes(163_317);
        assert_eq!(*first.last().unwrap(), nth_prime(163_317));
        // Cross-checked by a second implementation (sympy.prime).
        assert_eq!(nth_prime(163_317), 2_209_457);
    }

    #[test]
    fn segments_cover_in_any_order() {
        let whole = PrimeRange::sieve(1000, 5000);
        let mut parts: Vec<u64> = [(3000u64, 5000u64), (1000, 1999), (1999, 3000)]
            .iter()
            .flat_map(|&(a, b)| PrimeRange::sieve(a, b).primes().collect::<Vec<_>>())
            .collect();
        parts.sort();
        assert_eq!(parts, whole.primes().collect::<Vec<_>>());
        for n in (1000..5000).step_by(7) {
            assert_eq!(whole.contains_prime(n), trial_division(n));
        }
    }

    #[test]
    fn parallel_listing_matches_stream() {
        let opts = SieveOptions {
            segment_odds: 4096,
            cache: None,
        };
        let v = primes_up_to_vec(200_000, &opts).unwrap();
        assert_eq!(v, primes_up_to(200_000).collect::<Vec<_>>());
    }

    #[test]
    fn cache_round_trip_and_integrity() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SieveCache::new(dir.path());
        assert!(cache.load(0, 10_000).unwrap().is_none());
        let fresh = cache.get_or_sieve(0, 10_000).unwrap();
        assert_eq!(cache.load(0, 10_000).unwrap().unwrap(), fresh);
        let bytes = fresh.to_bytes();
        assert_eq!(&bytes[..8], b"PFSIEVE\0");
        assert!(PrimeRange::from_bytes(&bytes[..bytes.len() - 1]).is_err());
        let path = dir.path().join("sieve_0_10000.bin");
        std::fs::write(&path, &bytes[..20]).unwrap();
        assert!(cache.load(0, 10_000).is_err());
        // Corrupt entries are rebuilt.
        assert_eq!(cache.get_or_sieve(0, 10_000).unwrap(), fresh);
        let opts = SieveOptions {
            segment_odds: 1000,
            cache: Some(cache),
        };
        assert_eq!(primes_up_to_vec(9_000, &opts).unwrap().len(), 1117);
    }
}
