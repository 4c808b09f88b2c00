//! Prime-ideal counts for `K = Q[x]/(f)` read off the factorization pattern
//! of `f mod p`, skipping primes that divide `disc(f)·lc(f)`.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bigpoly::{discriminant_with_limit, divides, gcd_z, IntPoly, DEFAULT_RESULTANT_LIMIT};
use crate::density::checkpoints_for;
use crate::error::{Error, Result};
use crate::modp::{degree_pattern, gcd, reduce, root_count, DegreePattern};
use crate::primes::{prime_pi, primes_up_to_vec, SieveOptions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberFieldCtx {
    f: IntPoly,
    d: u64,
    /// `None` when the discriminant exceeds the resultant budget; ramification
    /// is then tested mod each prime.
    disc_f: Option<BigInt>,
}

impl NumberFieldCtx {
    pub fn new(f: &IntPoly) -> Result<Self> {
        Self::with_limit(f, DEFAULT_RESULTANT_LIMIT)
    }

    pub fn with_limit(f: &IntPoly, resultant_limit: usize) -> Result<Self> {
        let Some(d) = f.degree() else {
            return Err(Error::ZeroPolynomial("number field"));
        };
        if d == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if gcd_z(f, &f.derivative())?.degree() != Some(0) {
            return Err(Error::NotSquarefree);
        }
        let f = f.primitive_part();
        let disc_f = match discriminant_with_limit(&f, resultant_limit) {
            Ok(v) => Some(v),
            Err(Error::ResultantTooLarge { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(Self { f, d, disc_f })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.f
    }

    pub fn degree(&self) -> u64 {
        self.d
    }

    pub fn disc_f(&self) -> Option<&BigInt> {
        self.disc_f.as_ref()
    }

    /// `p | disc(f)·lc(f)`.
    pub fn is_ramified(&self, p: u64) -> bool {
        if divides(p, self.f.leading_coeff().expect("nonzero")) {
            return true;
        }
        match &self.disc_f {
            Some(disc) => divides(p, disc),
            None => {
                let r = reduce(&self.f, p).poly;
                gcd(&r, &r.derivative()).degree() != Some(0)
            }
        }
    }

    /// Factor-degree pattern of `f mod p` for an unramified prime. Only
    /// degree-one factors are resolved when `full` is false.
    fn pattern(&self, p: u64, full: bool) -> Result<DegreePattern> {
        let r = reduce(&self.f, p).poly;
        if full {
            degree_pattern(&r)
        } else {
            let w = root_count(&r)?;
            Ok(DegreePattern(if w > 0 { vec![(1, w)] } else { Vec::new() }))
        }
    }
}

#[derive(Clone, Debug)]
struct PrimeData {
    p: u64,
    /// `None` for a skipped (ramified) prime.
    pattern: Option<DegreePattern>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdealRow {
    pub x: u64,
    #[serde(rename = "pi_K")]
    pub pi_k: u64,
    #[serde(rename = "psi_K")]
    pub psi_k: f64,
    #[serde(rename = "theta_K")]
    pub theta_k: f64,
    #[serde(rename = "sum_W")]
    pub sum_w: u64,
    pub ramified_skipped: u64,
    /// Degree-one ideals of norm `<= x`; equals `sum_W` by construction.
    #[serde(rename = "pi_K_deg1")]
    pub pi_k_deg1: u64,
    /// `π(√x)`, for the higher-degree gap bound.
    pub pi_sqrt_x: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdealReport {
    pub degree: u64,
    pub disc_f: Option<String>,
    pub rows: Vec<IdealRow>,
}

pub const CSV_HEADER: &str = "x,pi_K,psi_K,theta_K,sum_W,ramified_skipped";

impl IdealReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.x, r.pi_k, r.psi_k, r.theta_k, r.sum_w, r.ramified_skipped
            ));
        }
        out
    }

    /// Violated row invariants, as messages.
    pub fn invariant_violations(&self) -> Vec<String> {
        let d = self.degree;
        let mut bad = Vec::new();
        for r in &self.rows {
            let x = r.x as f64;
            let gap = r.psi_k - r.theta_k;
            if gap < 0.0 || gap > 3.0 * d as f64 * x.sqrt() * x.ln() {
                bad.push(format!("x={}: psi_K - theta_K = {gap} outside [0, 3d√x ln x]", r.x));
            }
            if r.pi_k < r.sum_w || r.pi_k - r.sum_w > d * r.pi_sqrt_x {
                bad.push(format!(
                    "x={}: pi_K - sum_W = {} outside [0, d·π(√x)]",
                    r.x,
                    r.pi_k as i128 - r.sum_w as i128
                ));
            }
            if r.sum_w != r.pi_k_deg1 {
                bad.push(format!("x={}: sum_W {} != degree-one ideals {}", r.x, r.sum_w, r.pi_k_deg1));
            }
        }
        bad
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Largest `m` with `q^m <= x` (0 if `q > x`).
fn max_power(q: u64, x: u64) -> u32 {
    let mut m = 0;
    let mut acc = 1u64;
    while let Some(next) = acc.checked_mul(q).filter(|&v| v <= x) {
        acc = next;
        m += 1;
    }
    m
}

/// Sweep all primes `<= x_max`, reporting at the checkpoints.
pub fn ideal_sweep(
    ctx: &NumberFieldCtx,
    x_max: u64,
    checkpoints: &[u64],
    sieve: &SieveOptions,
) -> Result<IdealReport> {
    if x_max < 2 {
        return Err(Error::InvalidArgument(format!("x must be >= 2, got {x_max}")));
    }
    let primes = primes_up_to_vec(x_max, sieve)?;
    let data: Vec<PrimeData> = primes
        .par_iter()
        .map(|&p| {
            let pattern = if ctx.is_ramified(p) {
                None
            } else {
                // Ideals of degree >= 2 have norm p^2 or more.
                let full = p.checked_mul(p).is_some_and(|pp| pp <= x_max);
                Some(ctx.pattern(p, full)?)
            };
            Ok(PrimeData { p, pattern })
        })
        .collect::<Result<_>>()?;
    let rows = checkpoints_for(x_max, checkpoints)
        .into_iter()
        .map(|x| row_at(&data, x))
        .collect();
    Ok(IdealReport {
        degree: ctx.d,
        disc_f: ctx.disc_f.as_ref().map(|v| v.to_string()),
        rows,
    })
}

fn row_at(data: &[PrimeData], x: u64) -> IdealRow {
    let mut row = IdealRow {
        x,
        pi_k: 0,
        psi_k: 0.0,
        theta_k: 0.0,
        sum_w: 0,
        ramified_skipped: 0,
        pi_k_deg1: 0,
        pi_sqrt_x: prime_pi(isqrt(x)),
    };
    for d in data.iter().take_while(|d| d.p <= x) {
        let Some(pattern) = &d.pattern else {
            row.ramified_skipped += 1;
            continue;
        };
        let ln_p = (d.p as f64).ln();
        for &(e, count) in pattern.iter() {
            let (e, count) = (e as u64, count as u64);
            if e == 1 {
                row.sum_w += count;
                row.pi_k_deg1 += count;
            }
            let Some(norm) = d.p.checked_pow(e as u32).filter(|&n| n <= x) else {
                continue;
            };
            row.pi_k += count;
            let weight = count as f64 * e as f64 * ln_p;
            row.theta_k += weight;
            row.psi_k += weight * max_power(norm, x) as f64;
        }
    }
    row
}

fn single(ctx: &NumberFieldCtx, x: u64) -> Result<IdealRow> {
    let mut r = ideal_sweep(ctx, x, &[x], &SieveOptions::default())?;
    Ok(r.rows.pop().expect("one checkpoint"))
}

/// Number of unramified prime ideals of norm `<= x`.
#[allow(non_snake_case)]
pub fn pi_K(ctx: &NumberFieldCtx, x: u64) -> Result<u64> {
    Ok(single(ctx, x)?.pi_k)
}

/// `Σ log N𝔭` over unramified prime-ideal powers of norm `<= x`.
#[allow(non_snake_case)]
pub fn psi_K(ctx: &NumberFieldCtx, x: u64) -> Result<f64> {
    Ok(single(ctx, x)?.psi_k)
}

/// `Σ log N𝔭` over unramified prime ideals of norm `<= x`.
#[allow(non_snake_case)]
pub fn theta_K(ctx: &NumberFieldCtx, x: u64) -> Result<f64> {
    Ok(single(ctx, x)?.theta_k)
}

/// `(Σ W(p), #degree-one ideals)` over unramified `p <= x`, after checking
/// `0 <= π_K(x) - Σ W(p) <= d·π(√x)`.
pub fn degree_one_vs_w(ctx: &NumberFieldCtx, x: u64) -> Result<(u64, u64)> {
    let r = single(ctx, x)?;
    if r.pi_k < r.sum_w || r.pi_k - r.sum_w > ctx.d * r.pi_sqrt_x {
        return Err(Error::InvalidArgument(format!(
            "pi_K - sum_W = {} outside [0, {}]",
            r.pi_k as i128 - r.sum_w as i128,
            ctx.d * r.pi_sqrt_x
        )));
    }
    Ok((r.sum_w, r.pi_k_deg1))
}
