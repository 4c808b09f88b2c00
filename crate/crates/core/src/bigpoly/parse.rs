//! Text and JSON forms of polynomials.
//!
//! Text: signed monomials `c*x^e`, `x^e`, `c*x`, `x`, `c` joined by `+`/`-`
//! (ASCII or U+2212), whitespace anywhere between tokens. Indexed variables
//! `x1, x2, ...` are accepted by [`parse_monomials`] for multivariate input.
//!
//! JSON: `[[exponent, "coefficient"], ...]`; coefficients may also be plain
//! JSON integers on input.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::Value;

use super::IntPoly;
use crate::error::{Error, Result};

/// One parsed monomial: coefficient and `(variable, exponent)` factors.
/// Variable `0` is the bare `x`; `xi` is variable `i`.
pub(crate) type RawMonomial = (BigInt, Vec<(usize, u64)>);

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            chars: src.char_indices().collect(),
            pos: 0,
            src,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn column(&self) -> usize {
        // 1-based, counted in chars.
        self.pos.min(self.chars.len()) + 1
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: 1,
            column: self.column(),
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        let lo = self.chars[start].0;
        let hi = self
            .chars
            .get(self.pos)
            .map(|c| c.0)
            .unwrap_or(self.src.len());
        Some(&self.src[lo..hi])
    }
}

fn is_minus(c: char) -> bool {
    c == '-' || c == '\u{2212}'
}

/// Parse a signed sum of monomials.
pub(crate) fn parse_monomials(src: &str) -> Result<Vec<RawMonomial>> {
    let mut lx = Lexer::new(src);
    let mut out = Vec::new();
    if lx.peek().is_none() {
        return Err(lx.error("empty polynomial"));
    }
    let mut first = true;
    while let Some(c) = lx.peek() {
        let mut negative = false;
        if c == '+' || is_minus(c) {
            negative = is_minus(c);
            lx.pos += 1;
        } else if !first {
            return Err(lx.error(format!("expected '+' or '-', found '{c}'")));
        }
        first = false;
        let mut coeff = BigInt::one();
        let mut vars = Vec::new();
        let mut saw_coeff = false;
        if let Some(d) = lx.digits() {
            coeff = d.parse().expect("digits parse as integer");
            saw_coeff = true;
            if lx.peek() == Some('*') {
                lx.pos += 1;
                if lx.peek() != Some('x') {
                    return Err(lx.error("expected variable after '*'"));
                }
            }
        }
        loop {
            match lx.peek() {
                Some('x') => {
                    lx.pos += 1;
                    // Index digits must follow `x` directly.
                    let start = lx.pos;
                    while lx.pos < lx.chars.len() && lx.chars[lx.pos].1.is_ascii_digit() {
                        lx.pos += 1;
                    }
                    let var = if lx.pos > start {
                        let s: String = lx.chars[start..lx.pos].iter().map(|c| c.1).collect();
                        let idx: usize = s.parse().map_err(|_| lx.error("bad variable index"))?;
                        if idx == 0 {
                            return Err(lx.error("variable indices start at 1"));
                        }
                        idx
                    } else {
                        0
                    };
                    let mut exp = 1u64;
                    if lx.peek() == Some('^') {
                        lx.pos += 1;
                        let d = lx.digits().ok_or_else(|| lx.error("expected exponent"))?;
                        exp = d.parse().map_err(|_| lx.error("exponent out of range"))?;
                    }
                    vars.push((var, exp));
                    if lx.peek() == Some('*') {
                        lx.pos += 1;
                        if lx.peek() != Some('x') {
                            return Err(lx.error("expected variable after '*'"));
                        }
                    } else {
                        break;
                    }
                }
                _ => break,
            }
        }
        if !saw_coeff && vars.is_empty() {
            return Err(match lx.peek() {
                Some(c) => lx.error(format!("unexpected character '{c}'")),
                None => lx.error("dangling sign"),
            });
        }
        if negative {
            coeff = -coeff;
        }
        out.push((coeff, vars));
    }
    Ok(out)
}

/// Parse the univariate text form.
pub fn parse_text(src: &str) -> Result<IntPoly> {
    let monomials = parse_monomials(src)?;
    let mut terms = Vec::with_capacity(monomials.len());
    for (c, vars) in monomials {
        let mut e = 0u64;
        for (v, k) in vars {
            if v != 0 {
                return Err(Error::Parse {
                    line: 1,
                    column: 1,
                    message: format!("univariate input uses only `x`, found `x{v}`"),
                });
            }
            e += k;
        }
        terms.push((e, c));
    }
    Ok(IntPoly::from_terms(terms))
}

fn json_coeff(v: &Value) -> Option<BigInt> {
    match v {
        Value::String(s) => s.trim().parse().ok(),
        Value::Number(n) => n.as_i64().map(BigInt::from).or_else(|| n.to_string().parse().ok()),
        _ => None,
    }
}

fn json_err(message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column: 1,
        message: message.into(),
    }
}

/// Parse a JSON value `[[exponent, coefficient], ...]`.
pub fn poly_from_json_value(v: &Value) -> Result<IntPoly> {
    let arr = v
        .as_array()
        .ok_or_else(|| json_err("expected an array of [exponent, coefficient] pairs"))?;
    let mut terms = Vec::with_capacity(arr.len());
    for (i, pair) in arr.iter().enumerate() {
        let pair = pair
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| json_err(format!("term {i}: expected [exponent, coefficient]")))?;
        let e = pair[0]
            .as_u64()
            .ok_or_else(|| json_err(format!("term {i}: exponent must be a non-negative integer")))?;
        let c = json_coeff(&pair[1])
            .ok_or_else(|| json_err(format!("term {i}: bad coefficient")))?;
        terms.push((e, c));
    }
    Ok(IntPoly::from_terms(terms))
}

pub fn parse_json(src: &str) -> Result<IntPoly> {
    let v: Value = serde_json::from_str(src).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    poly_from_json_value(&v)
}

pub fn to_json_value(f: &IntPoly) -> Value {
    Value::Array(
        f.terms()
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| Value::Array(vec![Value::from(*e), Value::String(c.to_string())]))
            .collect(),
    )
}

pub fn to_json(f: &IntPoly) -> String {
    to_json_value(f).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn grammar_forms() {
        let f = parse_text("3*x^2 - x^ 1 + 7").unwrap();
        assert_eq!(f, IntPoly::from_coeffs([7, -1, 3]));
        assert_eq!(parse_text("  -x ").unwrap(), IntPoly::from_coeffs([0, -1]));
        assert_eq!(parse_text("x^4 \u{2212} 2").unwrap(), IntPoly::from_terms([(4, 1), (0, -2)]));
        assert_eq!(parse_text("2 x").unwrap(), IntPoly::from_coeffs([0, 2]));
        assert_eq!(parse_text("x^2 + x^2").unwrap(), IntPoly::from_terms([(2, 2)]));
    }

    #[test]
    fn errors_carry_column() {
        match parse_text("x^2 + + 1") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 7),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_text("").is_err());
        assert!(parse_text("x^").is_err());
        assert!(parse_text("3*").is_err());
        assert!(parse_text("x1 + 1").is_err());
        assert!(parse_text("x y").is_err());
    }

    #[test]
    fn json_forms() {
        let f = parse_json(r#"[[2, "3"], [0, -5]]"#).unwrap();
        assert_eq!(f, IntPoly::from_terms([(2, 3), (0, -5)]));
        assert_eq!(to_json(&f), r#"[[2,"3"],[0,"-5"]]"#);
        assert!(parse_json(r#"[[2]]"#).is_err());
        assert!(parse_json(r#"{"a": 1}"#).is_err());
    }

    #[test]
    fn multivariate_monomials() {
        let m = parse_monomials("x1*x2 - 3*x1^2").unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[1].1, vec![(1, 2)]);
    }

    fn arb_poly() -> impl Strategy<Value = IntPoly> {
        proptest::collection::vec((0u64..40, -1_000_000i64..1_000_000), 0..10)
            .prop_map(IntPoly::from_terms)
    }

    proptest! {
        #[test]
        fn text_and_json_round_trip(f in arb_poly()) {
            if !f.is_zero() {
                prop_assert_eq!(parse_text(&f.to_string()).unwrap(), f.clone());
            }
            prop_assert_eq!(parse_json(&to_json(&f)).unwrap(), f);
        }
    }
}
