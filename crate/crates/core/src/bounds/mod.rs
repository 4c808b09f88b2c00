//! Closed-form bounds: effective Nullstellensatz prime count, resultant
//! magnitude, prime-factor counts, the density lower bound, the parametric
//! `t(F)` estimate and zero-free-region membership.
//!
//! Everything is evaluated in `f64` on log-scale inputs. Constants that are
//! only known up to `O(·)` are explicit parameters (see [`BoundConstants`]).

mod system;

pub use system::{MultiPoly, PolySystem};

use serde::{Deserialize, Serialize};

use crate::bigpoly::IntPoly;
use crate::error::{Error, Result};

/// Which reading of the last factor of `A_F` to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AfParse {
    /// `(n+7)·ln(n+1)·D`
    #[default]
    Literal,
    /// `(n+7)·ln((n+1)·D)`
    Grouped,
}

impl std::str::FromStr for AfParse {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(Self::Literal),
            "grouped" => Ok(Self::Grouped),
            other => Err(Error::InvalidArgument(format!(
                "af.parse must be literal or grouped, got {other}"
            ))),
        }
    }
}

/// Tunable constants. The defaults of 1 for the `O(·)` constants are
/// placeholders; any value depending on them is parametric.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundConstants {
    /// Exponent constant `C` of the density hypothesis (`mrh.C`).
    pub mrh_c: f64,
    /// Multiplier on `log t(F)` (`tf.c_scale`).
    pub tf_c_scale: f64,
    /// Multiplier on the discriminant log bound (`disc.c_disc`).
    pub disc_c: f64,
    pub af_parse: AfParse,
}

impl Default for BoundConstants {
    fn default() -> Self {
        Self {
            mrh_c: 2.0,
            tf_c_scale: 1.0,
            disc_c: 1.0,
            af_parse: AfParse::Literal,
        }
    }
}

impl BoundConstants {
    /// Set a constant by its config key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let num = || {
            value
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("{key}: not a number: {value}")))
        };
        match key {
            "mrh.C" => self.mrh_c = num()?,
            "tf.c_scale" => self.tf_c_scale = num()?,
            "disc.c_disc" => self.disc_c = num()?,
            "af.parse" => self.af_parse = value.parse()?,
            other => return Err(Error::InvalidArgument(format!("unknown constant {other}"))),
        }
        Ok(())
    }
}

/// Bound on the number of primes `p` for which an infeasible system still has
/// a root mod `p`:
/// `A_F = 4n(n+1)·D^n·(h + ln k + (n+7)·ln(n+1)·D)`.
pub fn nullstellensatz_bound(s: &PolySystem, parse: AfParse) -> Result<f64> {
    if s.k() == 0 {
        return Err(Error::EmptySystem);
    }
    if s.max_degree == 0 {
        return Err(Error::InvalidArgument("A_F needs total degree >= 1".into()));
    }
    Ok(nullstellensatz_bound_raw(
        s.n,
        s.k(),
        s.max_degree,
        s.max_height,
        parse,
    ))
}

pub fn nullstellensatz_bound_raw(n: usize, k: usize, d: u64, h: f64, parse: AfParse) -> f64 {
    let nf = n as f64;
    let df = d as f64;
    let tail = match parse {
        AfParse::Literal => (nf + 7.0) * (nf + 1.0).ln() * df,
        AfParse::Grouped => (nf + 7.0) * ((nf + 1.0) * df).ln(),
    };
    4.0 * nf * (nf + 1.0) * df.powf(nf) * (h + (k as f64).ln() + tail)
}

/// Hadamard bound on `ln |Res(a, b)|` from the Sylvester matrix rows:
/// `deg(b)·ln‖a‖₂ + deg(a)·ln‖b‖₂`.
pub fn hadamard_log_resultant(a: &IntPoly, b: &IntPoly) -> Result<f64> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Err(Error::ZeroPolynomial("hadamard_log_resultant"));
    };
    Ok(db as f64 * a.log_norm2()? + da as f64 * b.log_norm2()?)
}

/// Robin's explicit bound on the number of distinct prime factors of an
/// integer `α >= 3` given `L = ln α`:
/// `ω(α) < L/ln L + L/(ln L)² + 2.89726·L/(ln L)³`, rounded up.
pub fn robin_omega_bound(log_alpha: f64) -> Result<u64> {
    if !(log_alpha >= 3f64.ln() - 1e-12) {
        return Err(Error::InvalidArgument(format!(
            "Robin's bound needs ln(alpha) >= ln 3, got {log_alpha}"
        )));
    }
    let l = log_alpha;
    let ll = l.ln();
    Ok((l / ll + l / (ll * ll) + 2.89726 * l / (ll * ll * ll)).ceil() as u64)
}

/// `floor(1 + log₂ α)`, valid since `α >= 2^{ω(α)}`.
pub fn naive_prime_factor_bound(log_alpha: f64) -> u64 {
    // The epsilon keeps exact powers of two from rounding down.
    (1.0 + log_alpha.max(0.0) / std::f64::consts::LN_2 + 1e-9).floor() as u64
}

/// The bracket `1/(d ln x) - exp(-(ln x)^{1/C} / ln(d²σ + d³)^C)` of the
/// density lower bound, taking `ln x` so huge `x` stay representable.
pub fn mrh_lower_bound_factor(ln_x: f64, d: u64, sigma: f64, c: f64) -> f64 {
    let df = d as f64;
    let size = (df * df * sigma + df * df * df).ln();
    let decay = ln_x.powf(1.0 / c) / size.powf(c);
    1.0 / (df * ln_x) - (-decay).exp()
}

/// `x·(1/(d ln x) - 1/exp((ln x)^{1/C} / (ln(d²σ+d³))^C))`; may be negative
/// for small `x`.
pub fn mrh_lower_bound(x: f64, d: u64, sigma: f64, c: f64) -> Result<f64> {
    if x < 3.0 || d == 0 || c <= 1.0 {
        return Err(Error::InvalidArgument(
            "mrh_lower_bound needs x >= 3, d >= 1, C > 1".into(),
        ));
    }
    Ok(x * mrh_lower_bound_factor(x.ln(), d, sigma, c))
}

/// Parametric bound `c_disc·(d²σ + d³)` on `ln Δ`.
pub fn discriminant_log_bound(d: u64, sigma: f64, c_disc: f64) -> f64 {
    let df = d as f64;
    c_disc * (df * df * sigma + df * df * df)
}

/// Parametric `ln t(F)`:
/// `c_scale·max(4·(ln ln 3Δ̂)²·(ln(d·ln 3Δ̂))^{C²}, σ^{4C²})`, with
/// `ln Δ̂ = discriminant_log_bound(d, σ, c_disc)` and `d = D^n`.
pub fn t_estimate(s: &PolySystem, c: f64, c_scale: f64, c_disc: f64) -> Result<f64> {
    if c < 2.0 || c_scale <= 0.0 {
        return Err(Error::InvalidArgument(
            "t_estimate needs C >= 2 and c_scale > 0".into(),
        ));
    }
    let d = (s.max_degree.max(1) as f64).powi(s.n as i32);
    let sigma = s.bit_size as f64;
    let log_delta = discriminant_log_bound(d as u64, sigma, c_disc);
    let ln_3delta = 3f64.ln() + log_delta;
    let first = 4.0 * ln_3delta.ln().powi(2) * (d * ln_3delta).ln().powf(c * c);
    let second = sigma.powf(4.0 * c * c);
    Ok(c_scale * first.max(second))
}

/// Membership in the zero-free region posited for `ζ_K`:
/// `|γ| >= 1/(1 + 4 ln Δ)` and `β >= 1 - 1/(ln(d·ln 3Δ)^C · ln(|γ|+2))`,
/// or `γ = 0` and `1 - ln(d·ln 3Δ)^{-C} < β < 1`.
pub fn mdzh_region_contains(beta: f64, gamma: f64, d: u64, log_delta: f64, c: f64) -> bool {
    let scale = (d as f64 * (3f64.ln() + log_delta)).ln().powf(c);
    let off_axis = gamma.abs() >= 1.0 / (1.0 + 4.0 * log_delta)
        && beta >= 1.0 - 1.0 / (scale * (gamma.abs() + 2.0).ln());
    let real_gap = gamma == 0.0 && beta > 1.0 - 1.0 / scale && beta < 1.0;
    off_axis || real_gap
}

/// Classical unconditional zero-free region
/// `β >= 1 - ε/(ln Δ + ln(|γ|+2))`.
pub fn unconditional_region_contains(beta: f64, gamma: f64, log_delta: f64, eps: f64) -> bool {
    beta >= 1.0 - eps / (log_delta + (gamma.abs() + 2.0).ln())
}

/// Every bound for a system, with the constants that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundSet {
    pub n: usize,
    pub k: usize,
    pub max_degree: u64,
    pub max_height: f64,
    pub bit_size: u64,
    /// `A_F` under the configured parse.
    pub a_f: f64,
    pub a_f_literal: f64,
    pub a_f_grouped: f64,
    /// Hadamard bound on `ln|Res(f1, f2)|` (univariate pairs only).
    pub log_alpha_bound: Option<f64>,
    pub robin_omega: Option<u64>,
    pub naive_omega: Option<u64>,
    /// Parametric `ln t(F)`.
    pub t_f_log: f64,
    /// Parametric `ln Δ` bound used by `t(F)`.
    pub log_delta_bound: f64,
    pub constants: BoundConstants,
    pub parametric_note: String,
}

pub const PARAMETRIC_NOTE: &str =
    "parametric: t_f_log and log_delta_bound depend on unspecified O-constants (tf.c_scale, disc.c_disc, mrh.C)";

impl BoundSet {
    pub fn compute(s: &PolySystem, constants: BoundConstants) -> Result<Self> {
        let a_f_literal = nullstellensatz_bound(s, AfParse::Literal)?;
        let a_f_grouped = nullstellensatz_bound(s, AfParse::Grouped)?;
        let a_f = match constants.af_parse {
            AfParse::Literal => a_f_literal,
            AfParse::Grouped => a_f_grouped,
        };
        let (mut log_alpha_bound, mut robin_omega, mut naive_omega) = (None, None, None);
        if let Some(fs) = s.as_univariate() {
            if fs.len() == 2 && !fs[0].is_zero() && !fs[1].is_zero() {
                let l = hadamard_log_resultant(&fs[0], &fs[1])?;
                log_alpha_bound = Some(l);
                robin_omega = robin_omega_bound(l).ok();
                naive_omega = Some(naive_prime_factor_bound(l));
            }
        }
        let d = (s.max_degree.max(1) as f64).powi(s.n as i32) as u64;
        let log_delta_bound = discriminant_log_bound(d, s.bit_size as f64, constants.disc_c);
        let c = constants.mrh_c.max(2.0);
        let t_f_log = t_estimate(s, c, constants.tf_c_scale, constants.disc_c)?;
        Ok(Self {
            n: s.n,
            k: s.k(),
            max_degree: s.max_degree,
            max_height: s.max_height,
            bit_size: s.bit_size,
            a_f,
            a_f_literal,
            a_f_grouped,
            log_alpha_bound,
            robin_omega,
            naive_omega,
            t_f_log,
            log_delta_bound,
            constants,
            parametric_note: PARAMETRIC_NOTE.to_string(),
        })
    }

    /// Smallest valid bound on the number of root-bearing primes of an
    /// infeasible system: `A_F`, refined by the Robin and naive `ω` bounds
    /// when a resultant bound is available.
    pub fn best_prime_bound(&self) -> f64 {
        let mut best = self.a_f;
        if let Some(r) = self.robin_omega {
            best = best.min(r as f64);
        }
        if let Some(n) = self.naive_omega {
            best = best.min(n as f64);
        }
        best
    }
}
