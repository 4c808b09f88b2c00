//! Feasibility by counting primes with a common root mod `p` and comparing
//! against three times the bound on such primes for infeasible systems.

use serde::{Deserialize, Serialize};

use crate::bigpoly::{gcd_z_many, IntPoly};
use crate::bounds::{BoundConstants, BoundSet, PolySystem};
use crate::density::{SweepConfig, Sweeper};
use crate::error::{Error, Result};
use crate::modp::{brute_force_system_root, DEFAULT_BRUTE_FORCE_BUDGET};
use crate::primes::{prime_pi, primes_up_to};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    /// Every prime `<= x_cap`.
    Exhaustive,
    /// `size` seeded primes `<= x_cap`, scaled up to `π(x_cap)`.
    Sampled { size: usize, seed: u64 },
    /// Multivariate input searched exhaustively over `F_p^n` within a budget.
    BruteForce,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub feasible: bool,
    /// Primes `<= x_used` at which the system has a common root (an estimate
    /// in sampled mode).
    #[serde(rename = "M")]
    pub m: u64,
    /// `3·bound`; `feasible == (M > threshold)`.
    pub threshold: f64,
    /// Bound on root-bearing primes of an infeasible system: `A_F`, or the
    /// resultant-based refinement when smaller.
    pub bound: f64,
    pub x_used: u64,
    pub mode: CountMode,
    /// `x_used` is below the parametric `t(F)`, so the conditional guarantee
    /// does not apply.
    pub heuristic_flag: bool,
    pub oracle_agrees: Option<bool>,
    /// `M` may miss exceptional primes.
    pub m_is_lower_bound: bool,
    pub experimental: bool,
    pub bounds: BoundSet,
}

#[derive(Clone, Debug)]
pub struct DecideConfig {
    pub x_cap: u64,
    pub mode: CountMode,
    pub constants: BoundConstants,
    pub sweep: SweepConfig,
    pub brute_force_budget: u128,
}

impl DecideConfig {
    pub fn new(x_cap: u64) -> Self {
        Self {
            x_cap,
            mode: CountMode::Exhaustive,
            constants: BoundConstants::default(),
            sweep: SweepConfig::default(),
            brute_force_budget: DEFAULT_BRUTE_FORCE_BUDGET,
        }
    }
}

/// Ground truth for univariate systems: a nonconstant common divisor over Z.
pub fn exact_feasibility_oracle(fs: &[IntPoly]) -> Result<bool> {
    if fs.is_empty() {
        return Err(Error::EmptySystem);
    }
    if fs.iter().all(IntPoly::is_zero) {
        return Ok(true);
    }
    Ok(gcd_z_many(fs)?.degree().is_some_and(|d| d >= 1))
}

/// Decide a univariate system.
pub fn phfeas(fs: &[IntPoly], cfg: &DecideConfig) -> Result<Verdict> {
    if fs.is_empty() {
        return Err(Error::EmptySystem);
    }
    phfeas_system(&PolySystem::from_univariate(fs)?, cfg)
}

/// Decide a system; multivariate input is handled by brute force over
/// small primes and marked experimental.
pub fn phfeas_system(s: &PolySystem, cfg: &DecideConfig) -> Result<Verdict> {
    if s.k() == 0 {
        return Err(Error::EmptySystem);
    }
    if cfg.x_cap < 2 {
        return Err(Error::InvalidArgument(format!("x_cap must be >= 2, got {}", cfg.x_cap)));
    }
    let bounds = BoundSet::compute(s, cfg.constants)?;
    let bound = bounds.best_prime_bound();
    let threshold = 3.0 * bound;
    let (m, x_used, mode, m_is_lower_bound, oracle) = match s.as_univariate() {
        Some(fs) => {
            let sweeper = Sweeper::system(&fs, cfg.sweep.resultant_limit)?;
            let lower = sweeper.label().is_some();
            let (m, mode) = match cfg.mode {
                CountMode::Sampled { size, seed } => {
                    let population = prime_pi(cfg.x_cap) as usize;
                    let r = sweeper.sample(population, size.min(population), seed)?;
                    let frac = r.sample.as_ref().expect("sampled report").fraction;
                    ((frac * population as f64).round() as u64, cfg.mode)
                }
                _ => {
                    let r = sweeper.sweep(cfg.x_cap, &cfg.sweep)?;
                    (r.final_row().expect("x_cap row").pi_f, CountMode::Exhaustive)
                }
            };
            (m, cfg.x_cap, mode, lower, Some(exact_feasibility_oracle(&fs)?))
        }
        None => {
            let (m, x_used) = brute_force_count(s, cfg.x_cap, cfg.brute_force_budget)?;
            (m, x_used, CountMode::BruteForce, false, None)
        }
    };
    let feasible = (m as f64) > threshold;
    Ok(Verdict {
        feasible,
        m,
        threshold,
        bound,
        x_used,
        mode,
        heuristic_flag: (x_used as f64).ln() < bounds.t_f_log,
        oracle_agrees: oracle.map(|o| o == feasible),
        m_is_lower_bound,
        experimental: oracle.is_none(),
        bounds,
    })
}

/// Count primes `<= x_cap` with a common root in `F_p^n`, stopping at the
/// first prime whose search space exceeds the budget.
fn brute_force_count(s: &PolySystem, x_cap: u64, budget: u128) -> Result<(u64, u64)> {
    let mut m = 0;
    let mut x_used = 1;
    for p in primes_up_to(x_cap) {
        match brute_force_system_root(s, p, budget) {
            Ok(hit) => {
                m += u64::from(hit);
                x_used = p;
            }
            Err(Error::BudgetExceeded { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    if x_used < 2 {
        return Err(Error::BudgetExceeded {
            size: 2u128.saturating_pow(s.n as u32),
            budget,
        });
    }
    Ok((m, x_used))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert!(exact_feasibility_oracle(&[p("x^2 - 1"), p("x - 1")]).unwrap());
        assert!(!exact_feasibility_oracle(&[p("x"), p("x + 1")]).unwrap());
        assert!(exact_feasibility_oracle(&[]).is_err());
    }

    #[test]
    fn feasible_pair() {
        let v = phfeas(&[p("x - 1"), p("x^2 - 1")], &DecideConfig::new(10_000)).unwrap();
        assert!(v.feasible, "{v:?}");
        assert_eq!(v.m, 1229);
        assert_eq!(v.oracle_agrees, Some(true));
        assert!(v.heuristic_flag);
        assert!(!v.experimental);
    }

    #[test]
    fn infeasible_pairs() {
        let v = phfeas(&[p("x"), p("x - 1")], &DecideConfig::new(1000)).unwrap();
        assert_eq!((v.m, v.feasible), (0, false));
        let v = phfeas(&[p("x^2 + 1"), p("x + 1")], &DecideConfig::new(1000)).unwrap();
        assert_eq!((v.m, v.feasible), (1, false));
        assert_eq!(v.oracle_agrees, Some(true));
        assert!((v.threshold - 3.0 * v.bound).abs() < 1e-9);
    }

    #[test]
    fn errors() {
        assert!(matches!(phfeas(&[], &DecideConfig::new(10)), Err(Error::EmptySystem)));
        assert!(phfeas(&[p("x")], &DecideConfig::new(1)).is_err());
    }

    #[test]
    fn multivariate_is_experimental() {
        let s = PolySystem::parse_text("x1*x2 - 1\nx1 - x2").unwrap();
        let mut cfg = DecideConfig::new(200);
        cfg.brute_force_budget = 10_000;
        let v = phfeas_system(&s, &cfg).unwrap();
        assert!(v.experimental);
        assert_eq!(v.mode, CountMode::BruteForce);
        assert_eq!(v.x_used, 97);
        // Common root (1, 1) at every prime.
        assert_eq!(v.m, 25);
    }

    #[test]
    fn sampled_mode_estimates() {
        let mut cfg = DecideConfig::new(100_000);
        cfg.mode = CountMode::Sampled { size: 500, seed: 1 };
        let v = phfeas(&[p("x^2 + 1"), p("x^3 + x^2 + x + 1")], &cfg).unwrap();
        let expect = 9592.0 / 2.0;
        assert!((v.m as f64 - expect).abs() < 0.1 * expect, "{}", v.m);
        assert!(v.feasible);
    }
}
