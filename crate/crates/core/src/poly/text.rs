//! Text form of polynomials: parsing and display.
//!
//! Two input forms are accepted:
//!
//! * a sum of terms — `x^8+4x^3+1`, `3*x^2 - 1`, `-x + 2` — where a
//!   coefficient may be glued to `x`, joined with `*`, or separated by
//!   spaces, and repeated powers accumulate;
//! * an explicit ascending coefficient list — `coeffs:1,0,0,1` is
//!   `x^3 + 1`.
//!
//! Coefficients of any length are accepted: digits are folded modulo p
//! as they are read, so `18446744073709551629` parses fine over any
//! field. Exponents are structural integers and are capped at 10^6 to
//! keep a typo from allocating gigabytes; the much smaller degree caps
//! are enforced by the callers that care.
//!
//! Display writes descending powers with coefficients reduced to
//! `[0, p)` and no spaces: `x^2+4x+1`. Parsing accepts everything
//! display produces.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

use super::Polynomial;

/// Largest exponent the parser accepts (degree caps are far smaller).
const MAX_PARSE_EXPONENT: u64 = 1_000_000;

impl fmt::Display for Polynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.degree() else {
            return write!(out, "0");
        };
        let mut first = true;
        for k in (0..=deg).rev() {
            let c = self.coeff(k);
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, "+")?;
            }
            first = false;
            match k {
                0 => write!(out, "{}", c.value())?,
                _ => {
                    if c.value() != 1 {
                        write!(out, "{}", c.value())?;
                    }
                    write!(out, "x")?;
                    if k > 1 {
                        write!(out, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Polynomial {
    /// Parses the text form described in the module docs.
    pub fn parse(field: FieldSpec, input: &str) -> Result<Polynomial> {
        let mut sc = Scanner {
            bytes: input.as_bytes(),
            pos: 0,
        };
        sc.skip_ws();
        if sc.rest().starts_with(b"coeffs:") {
            sc.pos += "coeffs:".len();
            return parse_coeff_list(field, &mut sc);
        }
        parse_term_sum(field, &mut sc)
    }
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Scanner<'_> {
    fn rest(&self) -> &[u8] {
        &self.bytes[self.pos..]
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.bump();
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    /// Reads one or more decimal digits, folding them modulo p.
    fn fold_digits(&mut self, field: FieldSpec) -> Result<FieldElement> {
        if !self.peek().is_some_and(|b| b.is_ascii_digit()) {
            return Err(self.err("expected digits"));
        }
        let p = field.p() as u128;
        let mut acc: u128 = 0;
        while let Some(b) = self.peek() {
            if !b.is_ascii_digit() {
                break;
            }
            acc = (acc * 10 + (b - b'0') as u128) % p;
            self.bump();
        }
        Ok(field.element(acc as u64))
    }

    /// Reads a plain decimal exponent.
    fn exponent(&mut self) -> Result<usize> {
        if !self.peek().is_some_and(|b| b.is_ascii_digit()) {
            return Err(self.err("expected exponent digits after '^'"));
        }
        let mut acc: u64 = 0;
        while let Some(b) = self.peek() {
            if !b.is_ascii_digit() {
                break;
            }
            acc = acc * 10 + (b - b'0') as u64;
            if acc > MAX_PARSE_EXPONENT {
                return Err(self.err(format!(
                    "exponent exceeds the parser limit of {MAX_PARSE_EXPONENT}"
                )));
            }
            self.bump();
        }
        Ok(acc as usize)
    }
}

fn parse_coeff_list(field: FieldSpec, sc: &mut Scanner) -> Result<Polynomial> {
    let mut coeffs = Vec::new();
    loop {
        sc.skip_ws();
        let negative = match sc.peek() {
            Some(b'-') => {
                sc.bump();
                sc.skip_ws();
                true
            }
            Some(b'+') => {
                sc.bump();
                sc.skip_ws();
                false
            }
            _ => false,
        };
        let c = sc.fold_digits(field)?;
        coeffs.push(if negative { field.neg(c) } else { c });
        sc.skip_ws();
        match sc.peek() {
            None => break,
            Some(b',') => sc.bump(),
            Some(b) => return Err(sc.err(format!("expected ',' , found '{}'", b as char))),
        }
    }
    let mut p = Polynomial {
        field,
        coeffs,
    };
    p.trim();
    Ok(p)
}

fn parse_term_sum(field: FieldSpec, sc: &mut Scanner) -> Result<Polynomial> {
    sc.skip_ws();
    if sc.peek().is_none() {
        return Err(sc.err("empty input"));
    }
    let mut terms: Vec<(usize, FieldElement)> = Vec::new();
    let mut negative = false;
    if let Some(b) = sc.peek() {
        if b == b'+' || b == b'-' {
            negative = b == b'-';
            sc.bump();
        }
    }
    loop {
        let (exp, coeff) = parse_term(field, sc)?;
        terms.push((exp, if negative { field.neg(coeff) } else { coeff }));
        sc.skip_ws();
        match sc.peek() {
            None => break,
            Some(b'+') => {
                negative = false;
                sc.bump();
            }
            Some(b'-') => {
                negative = true;
                sc.bump();
            }
            Some(b) => {
                return Err(sc.err(format!("expected '+' or '-', found '{}'", b as char)))
            }
        }
    }
    let max_exp = terms.iter().map(|&(e, _)| e).max().unwrap_or(0);
    let mut coeffs = vec![FieldElement::ZERO; max_exp + 1];
    for (e, c) in terms {
        coeffs[e] = field.add(coeffs[e], c);
    }
    let mut p = Polynomial {
        field,
        coeffs,
    };
    p.trim();
    Ok(p)
}

/// One term: `c`, `x`, `x^k`, `cx^k`, `c*x^k`, or `c x^k`.
fn parse_term(field: FieldSpec, sc: &mut Scanner) -> Result<(usize, FieldElement)> {
    sc.skip_ws();
    let mut coeff: Option<FieldElement> = None;
    match sc.peek() {
        Some(b) if b.is_ascii_digit() => {
            coeff = Some(sc.fold_digits(field)?);
            sc.skip_ws();
            if sc.peek() == Some(b'*') {
                sc.bump();
                sc.skip_ws();
                if sc.peek() != Some(b'x') {
                    return Err(sc.err("expected 'x' after '*'"));
                }
            }
        }
        Some(b'x') => {}
        Some(b) => return Err(sc.err(format!("expected a term, found '{}'", b as char))),
        None => return Err(sc.err("expected a term, found end of input")),
    }
    if sc.peek() == Some(b'x') {
        sc.bump();
        let exp = if sc.peek() == Some(b'^') {
            sc.bump();
            sc.exponent()?
        } else {
            1
        };
        Ok((exp, coeff.unwrap_or(FieldElement::ONE)))
    } else {
        // No variable: the digits were a constant term.
        Ok((0, coeff.expect("peeked a digit or 'x' above")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    fn parse(p: u64, s: &str) -> Polynomial {
        Polynomial::parse(gf(p), s).unwrap()
    }

    fn parse_err(p: u64, s: &str) -> (usize, String) {
        match Polynomial::parse(gf(p), s) {
            Err(Error::ParseError { position, message }) => (position, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn display_golden() {
        let cases: &[(u64, &[i64], &str)] = &[
            (5, &[], "0"),
            (5, &[3], "3"),
            (5, &[0, 1], "x"),
            (5, &[0, 2], "2x"),
            (5, &[0, 0, 1], "x^2"),
            (5, &[1, -1, 1], "x^2+4x+1"),
            (2, &[1, 1, 1], "x^2+x+1"),
            (2, &[1, 0, 0, 1, 0, 0, 1], "x^6+x^3+1"),
            (17, &[1, 10, 1], "x^2+10x+1"),
            (5, &[10, 3], "3x"),
        ];
        for &(p, coeffs, want) in cases {
            assert_eq!(
                Polynomial::from_signed_coeffs(gf(p), coeffs).to_string(),
                want
            );
        }
    }

    #[test]
    fn parse_term_sums() {
        assert_eq!(parse(2, "x^2+x+1"), parse(2, "coeffs:1,1,1"));
        assert_eq!(parse(5, "x^2 - x + 1"), parse(5, "coeffs:1,4,1"));
        assert_eq!(parse(5, "3*x^2-1"), parse(5, "coeffs:4,0,3"));
        assert_eq!(parse(5, "3 x^2"), parse(5, "coeffs:0,0,3"));
        assert_eq!(parse(5, "-x"), parse(5, "coeffs:0,4"));
        assert_eq!(parse(5, "+x"), parse(5, "coeffs:0,1"));
        assert_eq!(parse(5, "7"), parse(5, "coeffs:2"));
        assert_eq!(parse(5, "0"), Polynomial::zero(gf(5)));
        // Repeated powers accumulate; x + x vanishes over F_2.
        assert_eq!(parse(2, "x+x"), Polynomial::zero(gf(2)));
        assert_eq!(parse(5, "x+x+x^2"), parse(5, "coeffs:0,2,1"));
    }

    #[test]
    fn parse_folds_huge_coefficients() {
        // 18446744073709551629 = 13 mod 2^64, and mod 5 it is 4.
        assert_eq!(parse(5, "18446744073709551629"), parse(5, "4"));
        assert_eq!(
            parse(5, "18446744073709551629x^3+5x"),
            parse(5, "coeffs:0,0,0,4")
        );
    }

    #[test]
    fn parse_coeff_list_forms() {
        assert_eq!(parse(2, "coeffs:1,0,0,1"), parse(2, "x^3+1"));
        assert_eq!(parse(5, "coeffs: 1, -1, 1"), parse(5, "x^2+4x+1"));
        assert_eq!(parse(5, "coeffs:0"), Polynomial::zero(gf(5)));
        // Trailing zeros trim away.
        assert_eq!(parse(5, "coeffs:2,1,0,0"), parse(5, "x+2"));
    }

    #[test]
    fn roundtrip_display_parse() {
        for coeffs in [
            vec![1i64, 1, 1],
            vec![4, 0, 0, 2, 1],
            vec![],
            vec![3],
            vec![0, 1],
        ] {
            let f = Polynomial::from_signed_coeffs(gf(5), &coeffs);
            assert_eq!(parse(5, &f.to_string()), f);
        }
    }

    #[test]
    fn parse_error_positions() {
        assert_eq!(parse_err(5, ""), (0, "empty input".into()));
        assert_eq!(parse_err(5, "   "), (3, "empty input".into()));
        let (pos, msg) = parse_err(5, "y+1");
        assert_eq!(pos, 0);
        assert!(msg.contains("'y'"), "{msg}");
        let (pos, msg) = parse_err(5, "x^");
        assert_eq!(pos, 2);
        assert!(msg.contains("exponent"), "{msg}");
        let (pos, _) = parse_err(5, "x^3+");
        assert_eq!(pos, 4);
        let (pos, msg) = parse_err(5, "2*y");
        assert_eq!(pos, 2);
        assert!(msg.contains("'x'"), "{msg}");
        let (pos, msg) = parse_err(5, "x 2");
        assert_eq!(pos, 2);
        assert!(msg.contains("'+' or '-'"), "{msg}");
        let (pos, msg) = parse_err(5, "coeffs:1,,2");
        assert_eq!(pos, 9);
        assert!(msg.contains("digits"), "{msg}");
        let (_, msg) = parse_err(5, "x^99999999");
        assert!(msg.contains("limit"), "{msg}");
    }

    #[test]
    fn parse_rejects_adjacent_constants() {
        // "2 3" is two constants with no operator.
        let (pos, _) = parse_err(5, "2 3");
        assert_eq!(pos, 2);
    }
}
