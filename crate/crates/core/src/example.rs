//! The two-polynomial reference system, embedded with a checksum.
//!
//! Both polynomials share the factor `x^20017 + 4x^10001 + 19x^10000 - 3x^1208 + 1`.
//! The printed source has `-133x^1000` in `f2`, which breaks that common
//! factor; [`F2_TEXT`] uses `-133x^10000` and [`F2_PRINTED_TEXT`] keeps the
//! printed term.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bigpoly::IntPoly;
use crate::bounds::{BoundConstants, BoundSet, PolySystem};
use crate::density::{DensityReport, SweepConfig, Sweeper};
use crate::error::Result;

pub const F1_TEXT: &str = "x^120017 + 4*x^110001 + 19*x^110000 - 3*x^101208 + x^100000 - 47*x^25018 + 37*x^20017 - 188*x^15002 - 893*x^15001 + 148*x^10001 + 703*x^10000 + 141*x^6209 - 47*x^5001 - 111*x^1208 + 37";
pub const F2_TEXT: &str = "19*x^210017 + 76*x^200001 + 361*x^200000 - 57*x^191208 + 19*x^190000 + 2*x^30016 - 7*x^20017 + 8*x^20000 + 38*x^19999 - 6*x^11207 - 28*x^10001 - 133*x^10000 + 2*x^9999 + 21*x^1208 - 7";
pub const F2_PRINTED_TEXT: &str = "19*x^210017 + 76*x^200001 + 361*x^200000 - 57*x^191208 + 19*x^190000 + 2*x^30016 - 7*x^20017 + 8*x^20000 + 38*x^19999 - 6*x^11207 - 28*x^10001 - 133*x^1000 + 2*x^9999 + 21*x^1208 - 7";

/// SHA-256 of `F1_TEXT\nF2_TEXT\n`.
pub const SHA256: &str = "5841876891f6c36f315fa3d61b497681e027665420d98d025e3ad4f87985da65";
/// SHA-256 of `F1_TEXT\nF2_PRINTED_TEXT\n`.
pub const PRINTED_SHA256: &str = "43e9a439ed890fb6cc6942be51d830e69131456534c4477856de3d451746042f";

/// Number of leading primes the density claim refers to.
pub const POPULATION: usize = 163_317;
pub const DEFAULT_SAMPLE: usize = 2000;

fn digest(f2: &str) -> String {
    let mut h = Sha256::new();
    h.update(F1_TEXT.as_bytes());
    h.update(b"\n");
    h.update(f2.as_bytes());
    h.update(b"\n");
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Whether the embedded texts still hash to the recorded checksums.
pub fn checksum_ok() -> bool {
    digest(F2_TEXT) == SHA256 && digest(F2_PRINTED_TEXT) == PRINTED_SHA256
}

pub fn system() -> Vec<IntPoly> {
    vec![
        F1_TEXT.parse().expect("embedded f1 parses"),
        F2_TEXT.parse().expect("embedded f2 parses"),
    ]
}

pub fn printed_system() -> Vec<IntPoly> {
    vec![
        F1_TEXT.parse().expect("embedded f1 parses"),
        F2_PRINTED_TEXT.parse().expect("embedded f2 parses"),
    ]
}

pub fn bounds(constants: BoundConstants) -> Result<BoundSet> {
    BoundSet::compute(&PolySystem::from_univariate(&system())?, constants)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityMode {
    /// `size` seeded primes among the first [`POPULATION`].
    Sampled { size: usize, seed: u64 },
    /// Every one of the first [`POPULATION`] primes.
    Full,
}

/// Common-root statistics over the first [`POPULATION`] primes.
pub fn density(mode: DensityMode, cfg: &SweepConfig) -> Result<DensityReport> {
    let sweeper = Sweeper::system(&system(), cfg.resultant_limit)?;
    match mode {
        DensityMode::Sampled { size, seed } => sweeper.sample(POPULATION, size, seed),
        DensityMode::Full => {
            let x_max = crate::primes::nth_prime(POPULATION as u64);
            sweeper.sweep(x_max, cfg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigpoly::gcd_z;

    #[test]
    fn checksums_hold() {
        assert!(checksum_ok());
    }

    #[test]
    fn shared_factor() {
        let [f1, f2] = <[IntPoly; 2]>::try_from(system()).unwrap();
        let g: IntPoly = "x^20017 + 4*x^10001 + 19*x^10000 - 3*x^1208 + 1".parse().unwrap();
        assert_eq!(f1.div_exact(&g).unwrap().to_string(), "x^100000 - 47*x^5001 + 37");
        assert_eq!(f2.div_exact(&g).unwrap().to_string(), "19*x^190000 + 2*x^9999 - 7");
        assert_eq!(gcd_z(&f1, &f2).unwrap(), g);
        let printed = printed_system();
        assert!(printed[1].div_exact(&g).is_none());
    }

    #[test]
    fn printed_variant_has_same_bounds() {
        let a = bounds(BoundConstants::default()).unwrap();
        let b = BoundSet::compute(
            &PolySystem::from_univariate(&printed_system()).unwrap(),
            BoundConstants::default(),
        )
        .unwrap();
        assert_eq!(a.a_f, b.a_f);
        assert_eq!(a.robin_omega, b.robin_omega);
    }

    #[test]
    fn published_bounds() {
        let b = bounds(BoundConstants::default()).unwrap();
        assert!((b.a_f / 1.9567e12 - 1.0).abs() < 0.005, "{}", b.a_f);
        let r = b.robin_omega.unwrap();
        assert!(r.abs_diff(163_317) <= 5, "{r}");
    }
}
