//! Root counting, root existence and distinct-degree patterns over `F_p`.

use serde::{Deserialize, Serialize};

use super::euclid::{gcd, series_inverse};
use super::mul::mul_slices;
use super::{reduce, reduce_bigint, ModPoly};
use crate::arith::{primitive_root, Modulus};
use crate::bigpoly::IntPoly;
use crate::error::{Error, Result};

/// Reduction modulo a fixed polynomial, with a precomputed reversed inverse
/// once the modulus is large enough for Newton division to pay off.
struct Reducer {
    f: ModPoly,
    inv: Option<Vec<u64>>,
}

impl Reducer {
    fn new(f: &ModPoly) -> Self {
        let d = f.coeffs.len() - 1;
        let inv = (d >= 64).then(|| {
            let rev: Vec<u64> = f.coeffs.iter().rev().copied().collect();
            series_inverse(&f.modulus, &rev, d)
        });
        Self { f: f.clone(), inv }
    }

    fn degree(&self) -> usize {
        self.f.coeffs.len() - 1
    }

    /// `a mod f` for `deg a < 2·deg f`.
    fn reduce(&self, a: Vec<u64>) -> ModPoly {
        let m = self.f.modulus;
        let d = self.degree();
        let a = ModPoly::from_vec(m, a);
        if a.coeffs.len() <= d {
            return a;
        }
        let Some(inv) = &self.inv else {
            return a.rem(&self.f);
        };
        let qlen = a.coeffs.len() - d;
        debug_assert!(qlen <= d);
        let rev_a: Vec<u64> = a.coeffs.iter().rev().take(qlen).copied().collect();
        let mut q = mul_slices(&m, &rev_a, &inv[..qlen]);
        q.resize(qlen, 0);
        q.truncate(qlen);
        q.reverse();
        let fq = mul_slices(&m, &self.f.coeffs, &q);
        let r = (0..d).map(|i| m.sub(a.coeffs[i], fq[i])).collect();
        ModPoly::from_vec(m, r)
    }

    fn mul(&self, a: &ModPoly, b: &ModPoly) -> ModPoly {
        if a.is_zero() || b.is_zero() {
            return ModPoly::zero(a.modulus);
        }
        self.reduce(mul_slices(&a.modulus, &a.coeffs, &b.coeffs))
    }

    /// `base^exp mod f`.
    fn pow(&self, base: &ModPoly, exp: u64) -> ModPoly {
        let base = if base.coeffs.len() > self.degree() {
            base.rem(&self.f)
        } else {
            base.clone()
        };
        let mut result = self.reduce(vec![1]);
        if exp == 0 {
            return result;
        }
        let bits = 64 - exp.leading_zeros();
        result = base.clone();
        for i in (0..bits - 1).rev() {
            result = self.mul(&result, &result);
            if (exp >> i) & 1 == 1 {
                result = self.mul(&result, &base);
            }
        }
        result
    }
}

/// `x^p mod f` with `f` of degree at least 1.
fn frobenius_x(f: &ModPoly) -> ModPoly {
    let reducer = Reducer::new(f);
    reducer.pow(&ModPoly::x(f.modulus), f.p())
}

fn scan_is_cheaper(p: u64, dense_degree: usize, scan_terms: usize) -> bool {
    if (p as u128) <= 2 * dense_degree as u128 + 2 {
        return true;
    }
    let d = dense_degree as f64 + 1.0;
    let log_p = 64.0 - p.leading_zeros() as f64;
    let dense_cost = 8.0 * log_p * d.powf(1.6) + d * d.log2().max(1.0) * 50.0;
    (scan_terms as f64) * (p as f64) < dense_cost
}

/// Number of distinct roots in `F_p`, as `deg gcd(x^p - x, f)`.
pub fn root_count(f: &ModPoly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("root_count"));
    }
    let d = f.coeffs.len() - 1;
    if d == 0 {
        return Ok(0);
    }
    if scan_is_cheaper(f.p(), d, d + 1) {
        return Ok(scan_dense(f, false));
    }
    Ok(distinct_roots_part(f).degree().unwrap_or(0))
}

/// `gcd(x^p - x, f)`: the product of the distinct linear factors of `f`.
fn distinct_roots_part(f: &ModPoly) -> ModPoly {
    let f = f.monic();
    let h = frobenius_x(&f).sub(&ModPoly::x(f.modulus));
    gcd(&h, &f)
}

/// Exhaustive count of roots by evaluation at every residue.
pub fn root_count_scan(f: &ModPoly) -> usize {
    scan_dense(f, false)
}

fn scan_dense(f: &ModPoly, stop_at_first: bool) -> usize {
    let mut count = 0;
    for a in 0..f.p() {
        if f.eval(a) == 0 {
            count += 1;
            if stop_at_first {
                break;
            }
        }
    }
    count
}

/// Whether `f` has a root in `F_p`.
pub fn has_root(f: &ModPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("has_root"));
    }
    let d = f.coeffs.len() - 1;
    if d == 0 {
        return Ok(false);
    }
    if f.coeffs[0] == 0 || d == 1 {
        return Ok(true);
    }
    if scan_is_cheaper(f.p(), d, d + 1) {
        return Ok(scan_dense(f, true) > 0);
    }
    Ok(distinct_roots_part(f).degree().unwrap_or(0) > 0)
}

/// An integer polynomial reduced mod `p` and kept sparse, with nonconstant
/// exponents folded modulo `p - 1` for evaluation on `F_p^*`.
#[derive(Clone, Debug)]
pub struct SparseModPoly {
    modulus: Modulus,
    constant: u64,
    /// `(exponent mod (p - 1), coefficient)` for exponents >= 1, merged.
    classes: Vec<(u64, u64)>,
    /// Degree of the reduction mod `p` (`None` if it vanishes).
    degree: Option<u64>,
}

impl SparseModPoly {
    pub fn new(f: &IntPoly, p: u64) -> Self {
        let m = Modulus::new(p);
        let mut constant = 0;
        let mut classes: Vec<(u64, u64)> = Vec::new();
        let mut degree = None;
        for (e, c) in f.terms() {
            let r = reduce_bigint(c, &m);
            if r == 0 {
                continue;
            }
            degree = degree.max(Some(*e));
            if *e == 0 {
                constant = r;
                continue;
            }
            let class = if p == 2 { 1 } else { ((e - 1) % (p - 1)) + 1 };
            match classes.iter_mut().find(|(k, _)| *k == class) {
                Some(slot) => slot.1 = m.add(slot.1, r),
                None => classes.push((class, r)),
            }
        }
        classes.retain(|(_, c)| *c != 0);
        Self {
            modulus: m,
            constant,
            classes,
            degree,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.degree.is_none()
    }

    pub fn degree(&self) -> Option<u64> {
        self.degree
    }

    /// Walk `F_p^*` along powers of a primitive root, keeping every monomial
    /// value updated by one multiplication per step.
    fn scan(&self, stop_at_first: bool) -> usize {
        let m = &self.modulus;
        let p = m.p();
        let mut count = usize::from(self.constant == 0);
        if count > 0 && stop_at_first {
            return count;
        }
        if self.classes.is_empty() {
            // Constant on F_p^*.
            return if self.constant == 0 { p as usize } else { count };
        }
        let g = primitive_root(p);
        let steps: Vec<u64> = self
            .classes
            .iter()
            .map(|(e, _)| m.to_mont(m.pow(g, *e)))
            .collect();
        // Values c_j·g^{i·e_j}; each mont_mul by a Montgomery-form step keeps plain form.
        let mut vals: Vec<u64> = self.classes.iter().map(|(_, c)| *c).collect();
        let target = m.neg(self.constant);
        for _ in 0..p - 1 {
            let mut s = 0u64;
            for v in &vals {
                s = m.add(s, *v);
            }
            if s == target {
                count += 1;
                if stop_at_first {
                    return count;
                }
            }
            for (v, st) in vals.iter_mut().zip(&steps) {
                *v = m.mont_mul(*v, *st);
            }
        }
        count
    }
}

fn dense_or_sparse(f: &IntPoly, p: u64) -> Result<std::result::Result<ModPoly, SparseModPoly>> {
    let sparse = SparseModPoly::new(f, p);
    let Some(d) = sparse.degree else {
        return Err(Error::ZeroPolynomial("root search mod p"));
    };
    if scan_is_cheaper(p, d as usize, sparse.classes.len() + 1) {
        Ok(Err(sparse))
    } else {
        Ok(Ok(reduce(f, p).poly))
    }
}

/// Root existence for an integer polynomial mod `p`, choosing between the
/// sparse scan over `F_p` and the dense `gcd(x^p - x, f)` route by cost.
pub fn has_root_sparse(f: &IntPoly, p: u64) -> Result<bool> {
    match dense_or_sparse(f, p)? {
        Ok(dense) => has_root(&dense),
        Err(sparse) => Ok(sparse.degree != Some(0) && sparse.scan(true) > 0),
    }
}

/// Distinct root count for an integer polynomial mod `p` (see [`has_root_sparse`]).
pub fn root_count_sparse(f: &IntPoly, p: u64) -> Result<usize> {
    match dense_or_sparse(f, p)? {
        Ok(dense) => root_count(&dense),
        Err(sparse) => Ok(if sparse.degree == Some(0) {
            0
        } else {
            sparse.scan(false)
        }),
    }
}

/// Irreducible-factor degree counts: `(degree, count)` sorted by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreePattern(pub Vec<(usize, usize)>);

impl DegreePattern {
    pub fn count(&self, degree: usize) -> usize {
        self.0
            .iter()
            .find(|(e, _)| *e == degree)
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }

    /// `Σ e·count_e`.
    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|(e, c)| e * c).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.0.iter()
    }
}

/// Distinct-degree factorization of a squarefree polynomial over `F_p`.
pub fn degree_pattern(f: &ModPoly) -> Result<DegreePattern> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("degree_pattern"));
    }
    let m = f.modulus;
    let mut rest = f.monic();
    if rest.degree() == Some(0) {
        return Ok(DegreePattern::default());
    }
    if gcd(&rest, &rest.derivative()).degree() != Some(0) {
        return Err(Error::NotSquarefree);
    }
    let x = ModPoly::x(m);
    let mut pattern = Vec::new();
    let mut h = x.clone();
    let mut e = 1usize;
    while rest.coeffs.len() - 1 >= 2 * e {
        let reducer = Reducer::new(&rest);
        h = reducer.pow(&h, m.p());
        let g = gcd(&h.sub(&x), &rest);
        let gd = g.coeffs.len() - 1;
        if gd > 0 {
            pattern.push((e, gd / e));
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
        }
        e += 1;
    }
    let rd = rest.coeffs.len() - 1;
    if rd > 0 {
        pattern.push((rd, 1));
    }
    Ok(DegreePattern(pattern))
}

/// Whether all polynomials share a root in `F_p`.
pub fn common_root_exists(fs: &[ModPoly]) -> Result<bool> {
    let Some(first) = fs.first() else {
        return Err(Error::EmptySystem);
    };
    let p = first.p();
    if fs.iter().any(|f| f.p() != p) {
        return Err(Error::InvalidArgument("mixed moduli".into()));
    }
    let mut g = ModPoly::zero(first.modulus);
    for f in fs {
        g = gcd(&g, f);
        if g.degree() == Some(0) {
            return Ok(false);
        }
    }
    if g.is_zero() {
        return Err(Error::SystemVanishes(p));
    }
    has_root(&g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::primes_up_to;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mp(p: u64, c: &[i64]) -> ModPoly {
        ModPoly::from_i64(p, c)
    }

    #[test]
    fn root_count_examples() {
        assert_eq!(root_count(&mp(5, &[1, 0, 1])).unwrap(), 2);
        assert_eq!(root_count(&mp(7, &[1, 0, 1])).unwrap(), 0);
        assert_eq!(root_count(&mp(5, &[-2, 0, 0, 1])).unwrap(), 1);
        assert!(root_count(&mp(5, &[5])).is_err());
        assert_eq!(root_count(&mp(5, &[3])).unwrap(), 0);
    }

    #[test]
    fn x_cubed_minus_two_mod_five_by_scan() {
        let roots: Vec<u64> = (0..5).filter(|a| (a * a * a + 5 - 2) % 5 == 0).collect();
        assert_eq!(roots, vec![3]);
    }

    #[test]
    fn has_root_examples() {
        assert!(has_root(&mp(5, &[1, 0, 1])).unwrap());
        assert!(!has_root(&mp(7, &[1, 0, 1])).unwrap());
        // 17 ≡ 1 mod 8: x^4 + 1 splits.
        let scan = (0..17u64).any(|a| (a.pow(4) + 1) % 17 == 0);
        assert!(scan);
        assert!(has_root(&mp(17, &[1, 0, 0, 0, 1])).unwrap());
    }

    #[test]
    fn degree_pattern_examples() {
        assert_eq!(degree_pattern(&mp(13, &[1, 0, 1])).unwrap().0, vec![(1, 2)]);
        assert_eq!(degree_pattern(&mp(7, &[1, 0, 1])).unwrap().0, vec![(2, 1)]);
        assert_eq!(
            degree_pattern(&mp(5, &[-2, 0, 0, 1])).unwrap().0,
            vec![(1, 1), (2, 1)]
        );
        assert_eq!(
            degree_pattern(&mp(7, &[1, 2, 1])).unwrap_err(),
            Error::NotSquarefree
        );
    }

    #[test]
    fn common_root_examples() {
        assert!(common_root_exists(&[mp(7, &[-1, 0, 1]), mp(7, &[2, -3, 1])]).unwrap());
        assert!(!common_root_exists(&[mp(5, &[1, 0, 1]), mp(5, &[1, 1])]).unwrap());
        let f = mp(11, &[3, 0, 1]);
        assert_eq!(
            common_root_exists(&[f.clone(), f.clone()]).unwrap(),
            has_root(&f).unwrap()
        );
        assert_eq!(
            common_root_exists(&[ModPoly::zero(Modulus::new(3))]).unwrap_err(),
            Error::SystemVanishes(3)
        );
    }

    fn random_int_poly(rng: &mut ChaCha8Rng, deg: usize) -> Vec<i64> {
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-50..50)).collect();
        c[deg] = rng.gen_range(1..50);
        c
    }

    #[test]
    fn root_count_agrees_with_exhaustive_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let primes: Vec<u64> = primes_up_to(1000).collect();
        for _ in 0..300 {
            let p = primes[rng.gen_range(0..primes.len())];
            let deg = rng.gen_range(1..=12);
            let f = mp(p, &random_int_poly(&mut rng, deg));
            if f.is_zero() {
                continue;
            }
            let brute = (0..p).filter(|&a| f.eval(a) == 0).count();
            let via_gcd = if f.degree() == Some(0) {
                0
            } else {
                distinct_roots_part(&f).degree().unwrap()
            };
            assert_eq!(via_gcd, brute, "p={p} f={f:?}");
            assert_eq!(root_count(&f).unwrap(), brute);
            assert_eq!(has_root(&f).unwrap(), brute > 0);
        }
    }

    #[test]
    fn degree_pattern_sums_to_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let primes: Vec<u64> = primes_up_to(400).collect();
        let mut checked = 0;
        while checked < 150 {
            let p = primes[rng.gen_range(0..primes.len())];
            let d = rng.gen_range(1..=10);
            let f = mp(p, &random_int_poly(&mut rng, d));
            let Ok(pattern) = degree_pattern(&f) else {
                continue;
            };
            assert_eq!(pattern.total_degree(), f.degree().unwrap());
            assert_eq!(pattern.count(1), root_count(&f).unwrap());
            checked += 1;
        }
    }

    #[test]
    fn sparse_paths_match_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in primes_up_to(300) {
            let terms: Vec<(u64, i64)> = (0..4)
                .map(|_| (rng.gen_range(0..2000), rng.gen_range(-9..10)))
                .collect();
            let f = IntPoly::from_terms(terms);
            let dense = reduce(&f, p).poly;
            if dense.is_zero() {
                assert!(has_root_sparse(&f, p).is_err());
                continue;
            }
            let brute = root_count_scan(&dense);
            assert_eq!(SparseModPoly::new(&f, p).scan(false), brute, "p={p} f={f}");
            assert_eq!(root_count_sparse(&f, p).unwrap(), brute);
            assert_eq!(has_root_sparse(&f, p).unwrap(), brute > 0);
        }
    }

    #[test]
    fn root_existence_is_scale_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for p in [101u64, 997, 7919] {
            for _ in 0..20 {
                let f = mp(p, &random_int_poly(&mut rng, 6));
                let k = rng.gen_range(1..p);
                assert_eq!(has_root(&f).unwrap(), has_root(&f.scale(k)).unwrap());
            }
        }
    }
}
