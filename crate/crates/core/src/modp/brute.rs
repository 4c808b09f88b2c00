use std::collections::HashMap;

use crate::arith::Modulus;
use crate::bounds::PolySystem;
use crate::error::{Error, Result};

use super::reduce_bigint;

/// Default cap on `p^n` for exhaustive search.
pub const DEFAULT_BRUTE_FORCE_BUDGET: u128 = 100_000_000;

/// Whether some point of `F_p^n` zeroes every polynomial of the system,
/// by exhaustive search.
pub fn brute_force_system_root(s: &PolySystem, p: u64, budget: u128) -> Result<bool> {
    let size = (p as u128)
        .checked_pow(s.n as u32)
        .unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let m = Modulus::new(p);
    // Reduced coefficients, and a power table per (variable, exponent).
    let polys: Vec<Vec<(Vec<u64>, u64)>> = s
        .polys
        .iter()
        .map(|f| {
            f.terms
                .iter()
                .map(|(e, c)| (e.clone(), reduce_bigint(c, &m)))
                .filter(|(_, c)| *c != 0)
                .collect()
        })
        .collect();
    let mut tables: HashMap<u64, Vec<u64>> = HashMap::new();
    for f in &polys {
        for (e, _) in f {
            for &k in e {
                tables
                    .entry(k)
                    .or_insert_with(|| (0..p).map(|a| m.pow(a, k)).collect());
            }
        }
    }
    let n = s.n;
    let mut point = vec![0u64; n];
    loop {
        let zero_everywhere = polys.iter().all(|f| {
            let mut acc = 0u64;
            for (e, c) in f {
                let mut t = *c;
                for (v, &k) in e.iter().enumerate() {
                    t = m.mul(t, tables[&k][point[v] as usize]);
                }
                acc = m.add(acc, t);
            }
            acc == 0
        });
        if zero_everywhere {
            return Ok(true);
        }
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == n {
                return Ok(false);
            }
            point[i] += 1;
            if point[i] < p {
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> PolySystem {
        PolySystem::parse_text(s).unwrap()
    }

    #[test]
    fn examples() {
        let b = DEFAULT_BRUTE_FORCE_BUDGET;
        assert!(brute_force_system_root(&sys("x1 + x2\nx1 - x2"), 5, b).unwrap());
        assert!(!brute_force_system_root(&sys("x1^2 + 1\nx2"), 7, b).unwrap());
        assert!(brute_force_system_root(&sys("x1*x2 - 1"), 3, b).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let s = sys("x1*x2*x3 - 1");
        assert!(matches!(
            brute_force_system_root(&s, 1009, 1_000_000),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
