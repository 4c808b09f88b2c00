use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bigpoly::{ln_bigint, IntPoly};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial: `(exponent vector, coefficient)` terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiPoly {
    pub terms: Vec<(Vec<u64>, BigInt)>,
}

impl MultiPoly {
    pub fn total_degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u64>())
            .max()
            .unwrap_or(0)
    }

    pub fn height(&self) -> Option<f64> {
        self.terms
            .iter()
            .map(|(_, c)| c.abs())
            .max()
            .map(|m| ln_bigint(&m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn bit_size(&self) -> u64 {
        fn bits(e: u64) -> u64 {
            (64 - e.leading_zeros() as u64).max(1)
        }
        self.terms
            .iter()
            .map(|(e, c)| c.bits().max(1) + e.iter().map(|&x| bits(x)).sum::<u64>())
            .sum()
    }

    fn from_univariate(f: &IntPoly) -> Self {
        Self {
            terms: f
                .terms()
                .iter()
                .map(|(e, c)| (vec![*e], c.clone()))
                .collect(),
        }
    }
}

/// A system of `k` polynomials in `n` variables with its size statistics.
///
/// `max_degree`, `max_height` and `bit_size` are always recomputed from the
/// polynomials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolySystem {
    pub polys: Vec<MultiPoly>,
    /// Number of variables, `n`.
    pub n: usize,
    /// Largest total degree, `D`.
    pub max_degree: u64,
    /// Largest height (natural log), `h`.
    pub max_height: f64,
    /// Total bits of all coefficients and exponents, `σ(F)`.
    pub bit_size: u64,
}

impl PolySystem {
    pub fn new(n: usize, polys: Vec<MultiPoly>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::EmptySystem);
        }
        if n == 0 {
            return Err(Error::InvalidArgument("system needs at least one variable".into()));
        }
        let mut polys = polys;
        for f in &mut polys {
            for (e, _) in &mut f.terms {
                if e.len() > n {
                    return Err(Error::InvalidArgument(format!(
                        "monomial with {} exponents in a {n}-variable system",
                        e.len()
                    )));
                }
                e.resize(n, 0);
            }
            f.terms.retain(|(_, c)| !c.is_zero());
        }
        let max_degree = polys.iter().map(MultiPoly::total_degree).max().unwrap_or(0);
        let max_height = polys
            .iter()
            .filter_map(MultiPoly::height)
            .fold(0.0f64, f64::max);
        let bit_size = polys.iter().map(MultiPoly::bit_size).sum::<u64>().max(1);
        Ok(Self {
            polys,
            n,
            max_degree,
            max_height,
            bit_size,
        })
    }

    pub fn from_univariate(fs: &[IntPoly]) -> Result<Self> {
        Self::new(1, fs.iter().map(MultiPoly::from_univariate).collect())
    }

    /// Number of polynomials, `k`.
    pub fn k(&self) -> usize {
        self.polys.len()
    }

    pub fn is_univariate(&self) -> bool {
        self.n == 1
    }

    /// The polynomials as [`IntPoly`] when `n = 1`.
    pub fn as_univariate(&self) -> Option<Vec<IntPoly>> {
        self.is_univariate().then(|| {
            self.polys
                .iter()
                .map(|f| IntPoly::from_terms(f.terms.iter().map(|(e, c)| (e[0], c.clone()))))
                .collect()
        })
    }

    /// One polynomial per non-empty line; `#` starts a comment. Bare `x`
    /// is `x1` when indexed variables appear elsewhere.
    pub fn parse_text(src: &str) -> Result<Self> {
        let mut raw = Vec::new();
        let mut n = 1usize;
        for (lineno, line) in src.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let monomials = crate::bigpoly::parse::parse_monomials(body).map_err(|e| match e {
                Error::Parse {
                    column, message, ..
                } => Error::Parse {
                    line: lineno + 1,
                    column,
                    message,
                },
                other => other,
            })?;
            for (_, vars) in &monomials {
                for (v, _) in vars {
                    n = n.max(*v);
                }
            }
            raw.push(monomials);
        }
        let polys = raw
            .into_iter()
            .map(|monomials| {
                let mut terms: Vec<(Vec<u64>, BigInt)> = Vec::new();
                for (c, vars) in monomials {
                    let mut e = vec![0u64; n];
                    for (v, k) in vars {
                        e[v.max(1) - 1] += k;
                    }
                    match terms.iter_mut().find(|(te, _)| *te == e) {
                        Some(slot) => slot.1 += c,
                        None => terms.push((e, c)),
                    }
                }
                MultiPoly { terms }
            })
            .collect();
        Self::new(n, polys)
    }

    /// JSON: either one univariate polynomial `[[e, "c"], ...]` or an array
    /// of polynomials, each with integer exponents (univariate) or exponent
    /// vectors (multivariate).
    pub fn parse_json(src: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(src).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if let Ok(f) = crate::bigpoly::parse::poly_from_json_value(&v) {
            return Self::from_univariate(&[f]);
        }
        let arr = v.as_array().ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "expected a polynomial or an array of polynomials".into(),
        })?;
        let mut polys = Vec::with_capacity(arr.len());
        let mut n = 1;
        for (i, pv) in arr.iter().enumerate() {
            let bad = |msg: &str| Error::Parse {
                line: 1,
                column: 1,
                message: format!("polynomial {i}: {msg}"),
            };
            let terms = pv.as_array().ok_or_else(|| bad("expected an array of terms"))?;
            let mut out = Vec::with_capacity(terms.len());
            for t in terms {
                let pair = t
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| bad("expected [exponent, coefficient]"))?;
                let exps: Vec<u64> = match &pair[0] {
                    Value::Array(es) => es
                        .iter()
                        .map(|e| e.as_u64())
                        .collect::<Option<_>>()
                        .ok_or_else(|| bad("bad exponent vector"))?,
                    other => vec![other.as_u64().ok_or_else(|| bad("bad exponent"))?],
                };
                let c: BigInt = match &pair[1] {
                    Value::String(s) => s.trim().parse().ok(),
                    Value::Number(num) => num.to_string().parse().ok(),
                    _ => None,
                }
                .ok_or_else(|| bad("bad coefficient"))?;
                n = n.max(exps.len());
                out.push((exps, c));
            }
            polys.push(MultiPoly { terms: out });
        }
        Self::new(n, polys)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats_are_recomputed() {
        let s = PolySystem::parse_text("x1^2*x2 - 3\n# comment\n\nx2^5 + 100*x1").unwrap();
        assert_eq!(s.n, 2);
        assert_eq!(s.k(), 2);
        assert_eq!(s.max_degree, 5);
        assert!((s.max_height - 100f64.ln()).abs() < 1e-12);
        assert!(s.bit_size >= 1);
        assert!(s.as_univariate().is_none());
    }

    #[test]
    fn univariate_text_and_json() {
        let s = PolySystem::parse_text("x^2 - 1\nx - 1").unwrap();
        assert!(s.is_univariate());
        assert_eq!(s.as_univariate().unwrap()[1], "x - 1".parse().unwrap());
        let j = PolySystem::parse_json(r#"[[[2, "1"], [0, "-1"]], [[1, 1], [0, -1]]]"#).unwrap();
        assert_eq!(j.as_univariate(), s.as_univariate());
        let single = PolySystem::parse_json(r#"[[1, "1"]]"#).unwrap();
        assert_eq!(single.k(), 1);
        let multi = PolySystem::parse_json(r#"[[[[1, 1], "1"], [[0, 0], "-1"]]]"#).unwrap();
        assert_eq!((multi.n, multi.max_degree), (2, 2));
    }

    #[test]
    fn parse_errors_have_line_numbers() {
        match PolySystem::parse_text("x + 1\n\nx^2 + * 3") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert_eq!(PolySystem::parse_text("# nothing\n").unwrap_err(), Error::EmptySystem);
    }
}
