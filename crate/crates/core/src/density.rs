//! Prime sweeps: `π_f(x)`, `π_F(x)`, `Σ W(p)` at checkpoints, exhaustive or
//! sampled, with exceptional primes tallied separately.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::Modulus;
use crate::bigpoly::{
    discriminant_with_limit, divides, gcd_z_many, resultant_with_limit, squarefree_part, IntPoly,
    DEFAULT_RESULTANT_LIMIT,
};
use crate::error::{Error, Result};
use crate::modp::{self, gcd, reduce, reduce_bigint, root_count_sparse, ModPoly};
use crate::primes::{first_primes, primes_up_to_vec, SieveOptions};

/// Label attached when exceptional primes of a system could not be bounded.
pub const LOWER_BOUND_LABEL: &str = "lower bound — exceptional primes uncounted";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// `p` divides a leading coefficient.
    LeadingCoeff,
    /// `p` divides the discriminant of the squarefree part.
    Discriminant,
    /// `p` divides the content of the input.
    Content,
    /// `p` divides the cofactor resultant of a system.
    CofactorResultant,
}

impl Reason {
    fn as_str(self) -> &'static str {
        match self {
            Reason::LeadingCoeff => "lc",
            Reason::Discriminant => "disc",
            Reason::Content => "content",
            Reason::CofactorResultant => "cofactor_resultant",
        }
    }
}

/// What a sweep learns at one prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeOutcome {
    pub p: u64,
    pub has_root: bool,
    /// Distinct (common) roots in `F_p`.
    pub w: u64,
    pub exceptional: Option<Reason>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityRow {
    pub x: u64,
    pub pi: u64,
    pub pi_f: u64,
    #[serde(rename = "sum_W")]
    pub sum_w: u64,
    pub exceptional: u64,
    /// Share of `pi_f` contributed by exceptional primes.
    pub exceptional_pi_f: u64,
    /// Share of `sum_W` contributed by exceptional primes.
    #[serde(rename = "exceptional_sum_W")]
    pub exceptional_sum_w: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleInfo {
    /// Primes drawn from the first `population` primes.
    pub population: usize,
    pub size: usize,
    pub seed: u64,
    pub fraction: f64,
    pub std_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    /// Degree of the polynomial actually swept (squarefree part, or the
    /// squarefree gcd of a system).
    pub degree: u64,
    pub rows: Vec<DensityRow>,
    /// Exceptional primes by reason over the whole sweep.
    pub reasons: BTreeMap<String, u64>,
    pub label: Option<String>,
    pub sample: Option<SampleInfo>,
    pub notes: Vec<String>,
}

pub const CSV_HEADER: &str = "x,pi,pi_f,sum_W,exceptional";

impl DensityReport {
    pub fn final_row(&self) -> Option<&DensityRow> {
        self.rows.last()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{}\n", r.x, r.pi, r.pi_f, r.sum_w, r.exceptional));
        }
        out
    }

    /// Every violated row invariant, as a message. Empty when the report is
    /// consistent.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let d = self.degree;
        let mut prev: Option<&DensityRow> = None;
        for r in &self.rows {
            let pi = r.pi - r.exceptional;
            let pi_f = r.pi_f - r.exceptional_pi_f;
            let sum_w = r.sum_w - r.exceptional_sum_w;
            if r.pi_f > r.pi {
                bad.push(format!("x={}: pi_f {} > pi {}", r.x, r.pi_f, r.pi));
            }
            if sum_w > d * pi {
                bad.push(format!("x={}: sum_W {sum_w} > d*pi {}", r.x, d * pi));
            }
            if pi_f * d < sum_w {
                bad.push(format!("x={}: pi_f*d {} < sum_W {sum_w}", r.x, pi_f * d));
            }
            if let Some(q) = prev {
                let monotone = r.x > q.x
                    && r.pi >= q.pi
                    && r.pi_f >= q.pi_f
                    && r.sum_w >= q.sum_w
                    && r.exceptional >= q.exceptional;
                if !monotone {
                    bad.push(format!("rows at x={} and x={} not monotone", q.x, r.x));
                }
            }
            prev = Some(r);
        }
        bad
    }
}

/// Density estimate from the final row.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrobeniusEstimate {
    pub density: f64,
    /// `pi / pi_f`; not necessarily an integer.
    pub implied_s_f: f64,
}

pub fn frobenius_density(report: &DensityReport) -> Result<FrobeniusEstimate> {
    let row = report
        .final_row()
        .filter(|r| r.pi > 0)
        .ok_or_else(|| Error::InvalidArgument("density of a report with no primes".into()))?;
    let density = row.pi_f as f64 / row.pi as f64;
    Ok(FrobeniusEstimate {
        density,
        implied_s_f: if row.pi_f == 0 {
            f64::INFINITY
        } else {
            row.pi as f64 / row.pi_f as f64
        },
    })
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Report checkpoints; empty means powers of ten up to `x_max`. `x_max`
    /// itself is always included.
    pub checkpoints: Vec<u64>,
    /// Largest `deg a + deg b` for which resultants are computed exactly.
    pub resultant_limit: usize,
    pub sieve: SieveOptions,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            checkpoints: Vec::new(),
            resultant_limit: DEFAULT_RESULTANT_LIMIT,
            sieve: SieveOptions::default(),
        }
    }
}

pub fn checkpoints_for(x_max: u64, requested: &[u64]) -> Vec<u64> {
    let mut cps: Vec<u64> = if requested.is_empty() {
        std::iter::successors(Some(10u64), |c| c.checked_mul(10))
            .take_while(|&c| c < x_max)
            .collect()
    } else {
        requested.iter().copied().filter(|&c| c >= 2 && c < x_max).collect()
    };
    cps.push(x_max);
    cps.sort_unstable();
    cps.dedup();
    cps
}

/// Per-prime decision for one input, prepared once.
#[derive(Clone, Debug)]
pub struct Sweeper {
    /// Polynomial whose roots mod `p` are counted on the fast path.
    target: IntPoly,
    /// Inputs for the exact per-prime check at exceptional primes (a system),
    /// or empty for a single polynomial.
    system: Vec<IntPoly>,
    lcs: Vec<BigInt>,
    content: BigInt,
    /// Known multiple of every exceptional prime (besides lc primes).
    certificate: Option<(BigInt, Reason)>,
    /// For a single polynomial without a computable discriminant, test
    /// squarefreeness mod `p` at every prime.
    per_prime_disc: bool,
    label: Option<String>,
    notes: Vec<String>,
}

impl Sweeper {
    /// Prepare a sweep of `π_f` for a single nonzero polynomial.
    pub fn single(f: &IntPoly, resultant_limit: usize) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial("density sweep"));
        }
        let sf = squarefree_part(f)?;
        let mut notes = Vec::new();
        if sf.degree() != f.degree() {
            notes.push(format!(
                "squarefree part taken: degree {} -> {}",
                f.degree().unwrap_or(0),
                sf.degree().unwrap_or(0)
            ));
        }
        let (certificate, per_prime_disc) = if sf.degree() == Some(0) {
            (None, false)
        } else {
            match discriminant_with_limit(&sf, resultant_limit) {
                Ok(disc) => (Some((disc, Reason::Discriminant)), false),
                Err(Error::ResultantTooLarge { .. }) => {
                    notes.push("discriminant too large; squarefreeness tested mod each prime".into());
                    (None, true)
                }
                Err(e) => return Err(e),
            }
        };
        Ok(Self {
            lcs: vec![sf.leading_coeff().expect("nonzero").clone()],
            content: f.content(),
            target: sf,
            system: Vec::new(),
            certificate,
            per_prime_disc,
            label: None,
            notes,
        })
    }

    /// Prepare a sweep of `π_F` for univariate polynomials in one variable.
    pub fn system(fs: &[IntPoly], resultant_limit: usize) -> Result<Self> {
        if fs.is_empty() {
            return Err(Error::EmptySystem);
        }
        let nonzero: Vec<IntPoly> = fs.iter().filter(|f| !f.is_zero()).cloned().collect();
        if nonzero.is_empty() {
            return Err(Error::ZeroPolynomial("every polynomial of the system"));
        }
        if nonzero.len() == 1 {
            return Self::single(&nonzero[0], resultant_limit);
        }
        let g = gcd_z_many(&nonzero)?;
        let target = squarefree_part(&g)?;
        let mut notes = vec![format!(
            "gcd over Z has degree {}; squarefree part degree {}",
            g.degree().unwrap_or(0),
            target.degree().unwrap_or(0)
        )];
        let cofactors: Vec<IntPoly> = nonzero
            .iter()
            .map(|f| {
                f.primitive_part()
                    .div_exact(&g)
                    .expect("gcd divides every input")
            })
            .collect();
        // A common root mod p off the roots of g is a common root of the
        // cofactors, so p divides any nonzero resultant of two of them (or a
        // constant cofactor).
        let mut certificate = None;
        'search: for (i, a) in cofactors.iter().enumerate() {
            if a.degree() == Some(0) {
                certificate = a.leading_coeff().map(|c| c.abs());
                break;
            }
            for b in &cofactors[i + 1..] {
                if b.degree() == Some(0) {
                    continue;
                }
                match resultant_with_limit(a, b, resultant_limit) {
                    Ok(r) if !r.is_zero() => {
                        certificate = Some(r.abs());
                        break 'search;
                    }
                    Ok(_) | Err(Error::ResultantTooLarge { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        let label = if certificate.is_none() {
            notes.push("no computable cofactor resultant; only lc primes checked exactly".into());
            Some(LOWER_BOUND_LABEL.to_string())
        } else {
            None
        };
        let content = nonzero
            .iter()
            .fold(BigInt::zero(), |acc, f| num_integer::Integer::gcd(&acc, &f.content()));
        Ok(Self {
            lcs: nonzero.iter().filter_map(|f| f.leading_coeff().cloned()).collect(),
            content,
            target,
            system: nonzero,
            certificate: certificate.map(|c| (c, Reason::CofactorResultant)),
            per_prime_disc: false,
            label,
            notes,
        })
    }

    pub fn degree(&self) -> u64 {
        self.target.degree().unwrap_or(0)
    }

    /// Set when counts are only lower bounds.
    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    fn exceptional_reason(&self, p: u64) -> Option<Reason> {
        if divides(p, &self.content) {
            return Some(Reason::Content);
        }
        if self.lcs.iter().any(|c| divides(p, c)) {
            return Some(Reason::LeadingCoeff);
        }
        if let Some((c, reason)) = &self.certificate {
            if divides(p, c) {
                return Some(*reason);
            }
        }
        None
    }

    pub fn outcome(&self, p: u64) -> Result<PrimeOutcome> {
        let mut exceptional = self.exceptional_reason(p);
        if self.system.is_empty() {
            let w = root_count_sparse(&self.target, p)? as u64;
            if exceptional.is_none() && self.per_prime_disc && w > 0 {
                // Only the root count matters below; repeated roots without
                // any root in F_p cannot change it.
                let r = reduce(&self.target, p).poly;
                if gcd(&r, &r.derivative()).degree() != Some(0) {
                    exceptional = Some(Reason::Discriminant);
                }
            }
            return Ok(PrimeOutcome {
                p,
                has_root: w > 0,
                w,
                exceptional,
            });
        }
        if exceptional.is_some() {
            let w = common_root_count(&self.system, p)?;
            return Ok(PrimeOutcome {
                p,
                has_root: w > 0,
                w,
                exceptional,
            });
        }
        let w = root_count_sparse(&self.target, p)? as u64;
        Ok(PrimeOutcome {
            p,
            has_root: w > 0,
            w,
            exceptional: None,
        })
    }

    fn report(&self, rows: Vec<DensityRow>, reasons: BTreeMap<String, u64>) -> DensityReport {
        DensityReport {
            degree: self.degree(),
            rows,
            reasons,
            label: self.label.clone(),
            sample: None,
            notes: self.notes.clone(),
        }
    }

    /// Evaluate every prime `<= x_max` and tally at the checkpoints.
    pub fn sweep(&self, x_max: u64, cfg: &SweepConfig) -> Result<DensityReport> {
        if x_max < 2 {
            return Err(Error::InvalidArgument(format!("x_max must be >= 2, got {x_max}")));
        }
        let primes = primes_up_to_vec(x_max, &cfg.sieve)?;
        let outcomes = self.evaluate(&primes)?;
        let cps = checkpoints_for(x_max, &cfg.checkpoints);
        let (rows, reasons) = tally(&outcomes, &cps);
        Ok(self.report(rows, reasons))
    }

    /// Evaluate `size` primes drawn uniformly (seeded) from the first
    /// `population` primes; one row at the largest sampled prime.
    pub fn sample(&self, population: usize, size: usize, seed: u64) -> Result<DensityReport> {
        if size == 0 || size > population {
            return Err(Error::InvalidArgument(format!(
                "sample size {size} must be in 1..={population}"
            )));
        }
        let all = first_primes(population);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut idx = sample(&mut rng, population, size).into_vec();
        idx.sort_unstable();
        let chosen: Vec<u64> = idx.iter().map(|&i| all[i]).collect();
        let outcomes = self.evaluate(&chosen)?;
        let x = *chosen.last().unwrap();
        let (rows, reasons) = tally(&outcomes, &[x]);
        let mut report = self.report(rows, reasons);
        let hits = report.rows[0].pi_f as f64;
        let fraction = hits / size as f64;
        report.sample = Some(SampleInfo {
            population,
            size,
            seed,
            fraction,
            std_error: (fraction * (1.0 - fraction) / size as f64).sqrt(),
        });
        Ok(report)
    }

    fn evaluate(&self, primes: &[u64]) -> Result<Vec<PrimeOutcome>> {
        primes.par_iter().map(|&p| self.outcome(p)).collect()
    }
}

/// Ordered reduction of per-prime outcomes into checkpoint rows.
fn tally(outcomes: &[PrimeOutcome], checkpoints: &[u64]) -> (Vec<DensityRow>, BTreeMap<String, u64>) {
    let mut rows = Vec::with_capacity(checkpoints.len());
    let mut reasons = BTreeMap::new();
    let mut acc = DensityRow {
        x: 0,
        pi: 0,
        pi_f: 0,
        sum_w: 0,
        exceptional: 0,
        exceptional_pi_f: 0,
        exceptional_sum_w: 0,
    };
    let mut it = outcomes.iter().peekable();
    for &x in checkpoints {
        while let Some(o) = it.next_if(|o| o.p <= x) {
            acc.pi += 1;
            acc.pi_f += u64::from(o.has_root);
            acc.sum_w += o.w;
            if let Some(r) = o.exceptional {
                acc.exceptional += 1;
                acc.exceptional_pi_f += u64::from(o.has_root);
                acc.exceptional_sum_w += o.w;
                *reasons.entry(r.as_str().to_string()).or_insert(0) += 1;
            }
        }
        acc.x = x;
        rows.push(acc.clone());
    }
    (rows, reasons)
}

/// Number of common roots in `F_p` of integer polynomials, exactly.
/// Polynomials vanishing mod `p` impose no condition.
pub fn common_root_count(fs: &[IntPoly], p: u64) -> Result<u64> {
    let terms: usize = fs.iter().map(IntPoly::num_terms).sum();
    let max_deg = fs.iter().filter_map(IntPoly::degree).max().unwrap_or(0);
    if (p as u128) * (terms as u128) < 64 * (max_deg as u128 + 1) || p < 1 << 12 {
        return Ok(common_root_scan(fs, p));
    }
    let mut g: Option<ModPoly> = None;
    for f in fs {
        let r = reduce(f, p).poly;
        if r.is_zero() {
            continue;
        }
        let next = match &g {
            None => r,
            Some(g) => gcd(g, &r),
        };
        if next.degree() == Some(0) {
            return Ok(0);
        }
        g = Some(next);
    }
    match g {
        None => Ok(p),
        Some(g) => Ok(modp::root_count(&g)? as u64),
    }
}

fn common_root_scan(fs: &[IntPoly], p: u64) -> u64 {
    let m = Modulus::new(p);
    let reduced: Vec<Vec<(u64, u64)>> = fs
        .iter()
        .map(|f| {
            f.terms()
                .iter()
                .map(|(e, c)| (*e, reduce_bigint(c, &m)))
                .filter(|(_, c)| *c != 0)
                .collect()
        })
        .collect();
    (0..p)
        .filter(|&a| {
            reduced.iter().all(|f| {
                f.iter()
                    .fold(0, |s, &(e, c)| m.add(s, m.mul(c, m.pow(a, e)))) == 0
            })
        })
        .count() as u64
}

/// Exhaustive `π_f` sweep to `x_max`; `f` is replaced by its squarefree part.
pub fn sweep_pi_f(f: &IntPoly, x_max: u64, cfg: &SweepConfig) -> Result<DensityReport> {
    Sweeper::single(f, cfg.resultant_limit)?.sweep(x_max, cfg)
}

/// Exhaustive `π_F` sweep to `x_max` for a univariate system.
#[allow(non_snake_case)]
pub fn sweep_pi_F(fs: &[IntPoly], x_max: u64, cfg: &SweepConfig) -> Result<DensityReport> {
    Sweeper::system(fs, cfg.resultant_limit)?.sweep(x_max, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigpoly::resultant;
    use crate::primes::primes_up_to;
    use rand::Rng;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn cfg() -> SweepConfig {
        SweepConfig::default()
    }

    fn brute_pi_f(f: &IntPoly, x: u64) -> (u64, u64) {
        let mut pi_f = 0;
        let mut sum_w = 0;
        for q in primes_up_to(x) {
            let w = common_root_scan(std::slice::from_ref(f), q);
            pi_f += u64::from(w > 0);
            sum_w += w;
        }
        (pi_f, sum_w)
    }

    #[test]
    fn f_equals_x_hits_every_prime() {
        let r = sweep_pi_f(&p("x"), 1000, &cfg()).unwrap();
        let last = r.final_row().unwrap();
        assert_eq!((last.x, last.pi, last.pi_f, last.sum_w), (1000, 168, 168, 168));
        assert_eq!(r.rows.iter().map(|r| r.x).collect::<Vec<_>>(), vec![10, 100, 1000]);
        assert!(r.invariant_violations().is_empty());
        assert_eq!(frobenius_density(&r).unwrap().density, 1.0);
    }

    #[test]
    fn x_squared_plus_one() {
        let r = sweep_pi_f(&p("x^2 + 1"), 100_000, &cfg()).unwrap();
        let d = frobenius_density(&r).unwrap().density;
        assert!((d - 0.5).abs() < 0.02, "{d}");
        assert_eq!(r.reasons.get("disc"), Some(&1));
        assert!(r.invariant_violations().is_empty());
    }

    #[test]
    fn cube_root_of_two() {
        let r = sweep_pi_f(&p("x^3 - 2"), 100_000, &cfg()).unwrap();
        let est = frobenius_density(&r).unwrap();
        assert!((est.density - 2.0 / 3.0).abs() < 0.03, "{}", est.density);
        assert!((est.implied_s_f - 1.5).abs() < 0.1);
        assert!(r.invariant_violations().is_empty());
    }

    #[test]
    fn matches_brute_force_on_random_polys() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let deg = rng.gen_range(1..=8);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-20..=20)).collect();
            let mut f = IntPoly::from_coeffs(coeffs.iter().copied());
            if f.degree().unwrap_or(0) == 0 {
                f = f.add(&p("x"));
            }
            let r = sweep_pi_f(&f, 1000, &cfg()).unwrap();
            assert!(r.invariant_violations().is_empty(), "{f}");
            let last = r.final_row().unwrap();
            let sf = squarefree_part(&f).unwrap();
            assert_eq!((last.pi_f, last.sum_w), brute_pi_f(&sf, 1000), "{f}");
        }
    }

    #[test]
    fn squarefree_reduction_is_noted() {
        let r = sweep_pi_f(&p("x^4 + 2*x^2 + 1"), 100, &cfg()).unwrap();
        assert_eq!(r.degree, 2);
        assert!(r.notes.iter().any(|n| n.contains("squarefree")));
    }

    #[test]
    fn systems() {
        let r = sweep_pi_F(&[p("x^2 - 1"), p("x - 1")], 100, &cfg()).unwrap();
        let last = r.final_row().unwrap();
        assert_eq!(last.pi_f, 25);
        let r = sweep_pi_F(&[p("x^2 + 1"), p("x + 1")], 1000, &cfg()).unwrap();
        assert_eq!(r.final_row().unwrap().pi_f, 1);
        assert_eq!(r.reasons.get("cofactor_resultant"), Some(&1));
        assert!(r.label.is_none());
        let single = sweep_pi_f(&p("x^3 - 2"), 1000, &cfg()).unwrap();
        assert_eq!(sweep_pi_F(&[p("x^3 - 2")], 1000, &cfg()).unwrap(), single);
        assert!(matches!(sweep_pi_F(&[], 10, &cfg()), Err(Error::EmptySystem)));
        assert!(sweep_pi_f(&p("x"), 1, &cfg()).is_err());
    }

    #[test]
    fn counted_primes_divide_resultant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 20 {
            let rand_poly = |rng: &mut ChaCha8Rng| {
                let deg = rng.gen_range(1..=30);
                let c: Vec<BigInt> = (0..=deg).map(|_| BigInt::from(rng.gen_range(-50..=50))).collect();
                IntPoly::from_coeffs(c)
            };
            let (a, b) = (rand_poly(&mut rng), rand_poly(&mut rng));
            if a.degree().unwrap_or(0) == 0 || b.degree().unwrap_or(0) == 0 {
                continue;
            }
            let res = resultant(&a, &b).unwrap();
            if res.is_zero() {
                continue;
            }
            let lcs = a.leading_coeff().unwrap() * b.leading_coeff().unwrap();
            let s = Sweeper::system(&[a.clone(), b.clone()], DEFAULT_RESULTANT_LIMIT).unwrap();
            for q in primes_up_to(2000) {
                let o = s.outcome(q).unwrap();
                if o.has_root && !divides(q, &lcs) {
                    assert!(divides(q, &res), "p={q} a={a} b={b}");
                }
            }
            checked += 1;
        }
    }

    #[test]
    fn reports_identical_across_thread_counts() {
        let f = p("x^4 + 1");
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| sweep_pi_f(&f, 50_000, &cfg()).unwrap())
        };
        assert_eq!(run(1), run(4));
        let s = Sweeper::single(&f, 2000).unwrap();
        assert_eq!(s.sample(5000, 300, 9).unwrap(), s.sample(5000, 300, 9).unwrap());
        assert_ne!(s.sample(5000, 300, 9).unwrap(), s.sample(5000, 300, 10).unwrap());
    }

    #[test]
    fn csv_shape() {
        let r = sweep_pi_f(&p("x^2 + 1"), 20, &cfg()).unwrap();
        // p=2 gives one root, p=5,13,17 two each.
        assert_eq!(r.to_csv(), "x,pi,pi_f,sum_W,exceptional\n10,4,2,3,1\n20,8,4,7,1\n");
    }

    #[test]
    fn checkpoint_defaults() {
        assert_eq!(checkpoints_for(1000, &[]), vec![10, 100, 1000]);
        assert_eq!(checkpoints_for(1500, &[]), vec![10, 100, 1000, 1500]);
        assert_eq!(checkpoints_for(50, &[70, 20, 20]), vec![20, 50]);
    }
}
