//! The polynomial text format: `p: a0 + a1*x^n1 + ...`, for example
//! `7: x + 3*x^5` or `13: 2 + x - 5*x^-3`. Whitespace-insensitive;
//! coefficients may be any integers (reduced mod p), exponents may be
//! negative only in the Laurent reading.

use sparseval_core::field::{FieldError, Prime};
use sparseval_core::poly::{LaurentPoly, PolyError, SparsePoly};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    MissingColon,
    BadModulus(String),
    Field(FieldError),
    BadNumber(String),
    UnexpectedChar(char),
    TrailingInput(String),
    EmptyTerm,
    NegativeExponent(i64),
    Poly(PolyError),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::MissingColon => write!(f, "expected `p: terms`, no `:` found"),
            ParseError::BadModulus(s) => write!(f, "cannot read field size from {s:?}"),
            ParseError::Field(e) => write!(f, "bad field size: {e}"),
            ParseError::BadNumber(s) => write!(f, "cannot read integer {s:?}"),
            ParseError::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseError::TrailingInput(s) => write!(f, "trailing input {s:?}"),
            ParseError::EmptyTerm => write!(f, "empty term"),
            ParseError::NegativeExponent(e) =>

                write!(f, "exponent {e} is negative; only Laurent inputs allow that"),
            ParseError::Poly(e) => write!(f, "invalid polynomial: {e}"),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<FieldError> for ParseError {
    fn from(e: FieldError) -> Self {
        ParseError::Field(e)
    }
}

impl From<PolyError> for ParseError {
    fn from(e: PolyError) -> Self {
        ParseError::Poly(e)
    }
}

/// A parsed spec before the sparse/Laurent decision: signed coefficients
/// with signed exponents.
struct RawPoly {
    p: Prime,
    terms: Vec<(i64, i64)>, // (signed coefficient, exponent)
}

fn parse_raw(spec: &str) -> Result<RawPoly, ParseError> {
    let cleaned: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let (head, body) = cleaned.split_once(':').ok_or(ParseError::MissingColon)?;
    let p_value: u64 = head
        .parse()
        .map_err(|_| ParseError::BadModulus(head.to_string()))?;
    let p = Prime::new(p_value)?;

    let chars: Vec<char> = body.chars().collect();
    let mut pos = 0usize;
    let mut terms: Vec<(i64, i64)> = Vec::new();

    let read_uint = |chars: &[char], pos: &mut usize| -> Result<i64, ParseError> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if start == *pos {
            return Err(ParseError::BadNumber(
                chars[start..(*pos + 1).min(chars.len())].iter().collect(),
            ));
        }
        let text: String = chars[start..*pos].iter().collect();
        text.parse().map_err(|_| ParseError::BadNumber(text))
    };

    loop {
        // sign
        let mut sign = 1i64;
        if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
            if chars[pos] == '-' {
                sign = -1;
            }
            pos += 1;
        } else if !terms.is_empty() {
            return Err(ParseError::UnexpectedChar(
                *chars.get(pos).ok_or(ParseError::EmptyTerm)?,
            ));
        }
        if pos >= chars.len() {
            return Err(ParseError::EmptyTerm);
        }
        if !chars[pos].is_ascii_digit() && chars[pos] != 'x' {
            return Err(ParseError::UnexpectedChar(chars[pos]));
        }

        // coefficient (optional when the term starts with x)
        let coeff = if chars[pos].is_ascii_digit() {
            read_uint(&chars, &mut pos)?
        } else {
            1
        };
        // optional '*' then variable
        let mut exp = 0i64;
        if pos < chars.len() && chars[pos] == '*' {
            pos += 1;
            if pos >= chars.len() || chars[pos] != 'x' {
                return Err(ParseError::UnexpectedChar(*chars.get(pos).unwrap_or(&'*')));
            }
        }
        if pos < chars.len() && chars[pos] == 'x' {
            pos += 1;
            exp = 1;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                let mut exp_sign = 1i64;
                if pos < chars.len() && chars[pos] == '-' {
                    exp_sign = -1;
                    pos += 1;
                }
                exp = exp_sign * read_uint(&chars, &mut pos)?;
            }
        }
        terms.push((sign * coeff, exp));

        if pos >= chars.len() {
            break;
        }
        if chars[pos] != '+' && chars[pos] != '-' {
            return Err(ParseError::TrailingInput(chars[pos..].iter().collect()));
        }
    }
    Ok(RawPoly { p, terms })
}

fn reduce_coeff(c: i64, p: Prime) -> u64 {
    (c as i128).rem_euclid(p.get() as i128) as u64
}

/// Parses the spec as an ordinary sparse polynomial (exponents >= 0).
/// Exponents beyond `p - 2` are accepted and flagged raw.
pub fn parse_sparse(spec: &str) -> Result<SparsePoly, ParseError> {
    let raw = parse_raw(spec)?;
    let p = raw.p;
    let mut a0 = 0i128;
    let mut terms: Vec<(u64, u64)> = Vec::new();
    let mut needs_raw = false;
    for (coeff, exp) in raw.terms {
        if exp < 0 {
            return Err(ParseError::NegativeExponent(exp));
        }
        if exp == 0 {
            a0 += coeff as i128;
        } else {
            if exp as u64 > p.get() - 2 {
                needs_raw = true;
            }
            terms.push((reduce_coeff(coeff, p), exp as u64));
        }
    }
    let a0 = a0.rem_euclid(p.get() as i128) as u64;
    let built = if needs_raw {
        SparsePoly::new_raw(p, a0, &terms)
    } else {
        SparsePoly::new(p, a0, &terms)
    };
    Ok(built?)
}

/// Parses the spec as a Laurent polynomial (any exponents; constant terms
/// fold into `a0`).
pub fn parse_laurent(spec: &str) -> Result<LaurentPoly, ParseError> {
    let raw = parse_raw(spec)?;
    let p = raw.p;
    let terms: Vec<(u64, i64)> = raw
        .terms
        .iter()
        .map(|&(coeff, exp)| (reduce_coeff(coeff, p), exp))
        .collect();
    Ok(LaurentPoly::new(p, 0, &terms)?)
}

/// Canonical text form, which parses back to the same polynomial.
pub fn format_sparse(f: &SparsePoly) -> String {
    let mut parts: Vec<String> = Vec::new();
    if f.a0() != 0 {
        parts.push(f.a0().to_string());
    }
    for t in f.terms() {
        parts.push(monomial(t.coeff, t.exp as i64));
    }
    format!("{}: {}", f.p(), parts.join(" + "))
}

pub fn format_laurent(g: &LaurentPoly) -> String {
    let mut parts: Vec<String> = Vec::new();
    if g.a0() != 0 {
        parts.push(g.a0().to_string());
    }
    for t in g.terms() {
        parts.push(monomial(t.coeff, t.exp));
    }
    format!("{}: {}", g.p(), parts.join(" + "))
}

fn monomial(coeff: u64, exp: i64) -> String {
    match (coeff, exp) {
        (1, 1) => "x".to_string(),
        (1, e) => format!("x^{e}"),
        (c, 1) => format!("{c}*x"),
        (c, e) => format!("{c}*x^{e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let f = parse_sparse("7: x + 3*x^5").unwrap();
        assert_eq!(f.a0(), 0);
        assert_eq!(
            f.terms().iter().map(|t| (t.coeff, t.exp)).collect::<Vec<_>>(),
            [(1, 1), (3, 5)]
        );

        let f = parse_sparse(" 7 :  x - x^4 ").unwrap();
        assert_eq!(
            f.terms().iter().map(|t| (t.coeff, t.exp)).collect::<Vec<_>>(),
            [(1, 1), (6, 4)]
        );

        let f = parse_sparse("13: 5 + 2x^3 - 1").unwrap();
        assert_eq!(f.a0(), 4);

        let g = parse_laurent("7: x + x^-1").unwrap();
        assert_eq!(g.exponents(), [-1, 1]);

        let g = parse_laurent("7: 2 + 3*x^-2 + x^2").unwrap();
        assert_eq!(g.a0(), 2);
    }

    #[test]
    fn parse_reduces_and_normalizes() {
        // negative coefficients wrap mod p
        let f = parse_sparse("11: -3*x^2").unwrap();
        assert_eq!(f.terms()[0].coeff, 8);
        // big literal exponent flips to raw
        let f = parse_sparse("7: x + x^9").unwrap();
        assert!(f.is_raw());
        // like terms collect
        let f = parse_sparse("7: x + x + x^2").unwrap();
        assert_eq!(
            f.terms().iter().map(|t| (t.coeff, t.exp)).collect::<Vec<_>>(),
            [(2, 1), (1, 2)]
        );
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert_eq!(parse_sparse("7 x + 1"), Err(ParseError::MissingColon));
        assert!(matches!(parse_sparse("8: x"), Err(ParseError::Field(_))));
        assert!(matches!(parse_sparse("q: x"), Err(ParseError::BadModulus(_))));
        assert_eq!(parse_sparse("7: x + x^-1"), Err(ParseError::NegativeExponent(-1)));
        assert!(matches!(parse_sparse("7: x +"), Err(ParseError::EmptyTerm)));
        assert!(matches!(parse_sparse("7: 3y"), Err(ParseError::TrailingInput(_))));
        assert!(matches!(parse_sparse("7: 7*x"), Err(ParseError::Poly(_)))); // coefficient vanishes
        assert!(matches!(parse_laurent("7: 3"), Err(ParseError::Poly(_)))); // constant only
    }

    #[test]
    fn format_round_trips() {
        for spec in ["7: x + 3*x^5", "13: 4 + 2*x + x^11", "7: x"] {
            let f = parse_sparse(spec).unwrap();
            assert_eq!(parse_sparse(&format_sparse(&f)).unwrap(), f);
        }
        for spec in ["7: x + x^-1", "13: 2 + 5*x^-3 + 2*x^4"] {
            let g = parse_laurent(spec).unwrap();
            assert_eq!(parse_laurent(&format_laurent(&g)).unwrap(), g);
        }
    }
}
