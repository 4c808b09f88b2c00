//! Feasibility of integer polynomial systems through the primes at which they
//! acquire roots mod `p`.
//!
//! Layers, bottom up: [`arith`] word-size modular arithmetic; [`bigpoly`]
//! exact polynomials over Z; [`modp`] dense polynomials over `F_p`;
//! [`primes`] sieving and primality; [`bounds`] the closed-form bounds;
//! [`density`] and [`ideals`] prime sweeps; [`decide`] the counting decision
//! procedure; [`example`] the embedded two-polynomial reference system.

pub mod arith;
pub mod bigpoly;
pub mod bounds;
pub mod decide;
pub mod density;
pub mod error;
pub mod example;
pub mod ideals;
pub mod modp;
pub mod primes;

pub use bigpoly::IntPoly;
pub use bounds::{BoundConstants, BoundSet, PolySystem};
pub use error::{Error, Result};
pub use modp::ModPoly;
pub use decide::{exact_feasibility_oracle, phfeas, Verdict};
pub use density::{frobenius_density, sweep_pi_F, sweep_pi_f, DensityReport};
pub use ideals::NumberFieldCtx;
