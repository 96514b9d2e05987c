//! Parser for relation expressions.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr    := [ '+' | '-' ] product { ('+' | '-') product }
//! product := power { ('*' | '/') power }
//! power   := atom [ '^' NAT ]
//! atom    := NAT | IDENT | '(' expr ')'
//! ```
//!
//! An identifier is a generator name (yielding a degree-1 monomial) or a
//! bound parameter name (yielding a scalar). Division requires a nonzero
//! scalar divisor; `a/b` is resolved through the field inverse.

use std::collections::HashMap;

use thiserror::Error;

use crate::freealg::poly::NcPoly;
use crate::freealg::word::{Alphabet, Word};
use crate::gfp::Fp;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u128),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let lit = &text[start..i];
                let val: u128 = lit
                    .parse()
                    .map_err(|_| ParseError {
                        position: start,
                        message: format!("integer literal `{}` too large", lit),
                    })?;
                toks.push((start, Tok::Int(val)));
            }
            b'_' | b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => return err(i, format!("unexpected character `{}`", b as char)),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    alphabet: &'a Alphabet,
    field: Fp,
    params: &'a HashMap<String, u64>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<NcPoly, ParseError> {
        let mut negate = false;
        if let Some((_, tok)) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.bump();
                }
                Tok::Minus => {
                    self.bump();
                    negate = true;
                }
                _ => {}
            }
        }
        let mut acc = self.product()?;
        if negate {
            acc = acc.neg();
        }
        while let Some((_, tok)) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.product()?;
                    acc = acc.add(&rhs);
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.product()?;
                    acc = acc.sub(&rhs);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<NcPoly, ParseError> {
        let mut acc = self.power()?;
        while let Some((_, tok)) = self.peek() {
            match tok {
                Tok::Star => {
                    self.bump();
                    let rhs = self.power()?;
                    acc = acc.mul(&rhs);
                }
                Tok::Slash => {
                    let at = self.here();
                    self.bump();
                    let rhs = self.power()?;
                    let c = scalar_of(&rhs).ok_or_else(|| ParseError {
                        position: at,
                        message: "divisor must be a scalar".to_string(),
                    })?;
                    let inv = self.field.inv(c).map_err(|_| ParseError {
                        position: at,
                        message: format!("divisor is 0 in GF({})", self.field.modulus()),
                    })?;
                    acc = acc.scale(inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<NcPoly, ParseError> {
        let base = self.atom()?;
        if let Some((_, Tok::Caret)) = self.peek() {
            self.bump();
            let at = self.here();
            match self.bump() {
                Some((_, Tok::Int(k))) => {
                    if k > 64 {
                        return err(at, "exponent too large");
                    }
                    Ok(base.pow(k as usize))
                }
                _ => err(at, "expected integer exponent after `^`"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<NcPoly, ParseError> {
        let at = self.here();
        match self.bump() {
            Some((_, Tok::Int(v))) => Ok(NcPoly::constant(
                self.field,
                (v % self.field.modulus() as u128) as u64,
            )),
            Some((_, Tok::Ident(name))) => {
                if let Some(idx) = self.alphabet.index_of(&name) {
                    Ok(NcPoly::monomial(self.field, Word::gen(idx), 1))
                } else if let Some(&v) = self.params.get(&name) {
                    Ok(NcPoly::constant(self.field, v))
                } else {
                    err(at, format!("unknown identifier `{}`", name))
                }
            }
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    other => err(
                        other.map(|(p, _)| p).unwrap_or(self.end),
                        "expected `)`",
                    ),
                }
            }
            Some((p, tok)) => err(p, format!("unexpected token {:?}", tok)),
            None => err(self.end, "unexpected end of input"),
        }
    }
}

fn scalar_of(p: &NcPoly) -> Option<u64> {
    if p.is_zero() {
        return Some(0);
    }
    if p.num_terms() == 1 {
        if let Some((w, c)) = p.leading() {
            if w.is_empty() {
                return Some(c);
            }
        }
    }
    None
}

/// Parses an expression into a free-algebra element, substituting bound
/// parameter values.
pub fn parse_poly(
    text: &str,
    alphabet: &Alphabet,
    field: Fp,
    params: &HashMap<String, u64>,
) -> Result<NcPoly, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        alphabet,
        field,
        params,
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return err(p.here(), "trailing input after expression");
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Alphabet {
        Alphabet::new(vec!["x", "y"]).unwrap()
    }

    fn wxy() -> Alphabet {
        Alphabet::new(vec!["w", "x", "y"]).unwrap()
    }

    fn no_params() -> HashMap<String, u64> {
        HashMap::new()
    }

    #[test]
    fn jordan_relation_over_gf3() {
        let a = xy();
        let f = Fp::new(3).unwrap();
        let p = parse_poly("y*x - x*y - (1/2)*x^2", &a, f, &no_params()).unwrap();
        // 1/2 = 2 mod 3, so -(1/2) = 1... -2 = 1 mod 3
        let yx = Word::from_letters(&[1, 0]);
        let xy_ = Word::from_letters(&[0, 1]);
        let xx = Word::from_letters(&[0, 0]);
        assert_eq!(p.coeff(&yx), 1);
        assert_eq!(p.coeff(&xy_), 2);
        assert_eq!(p.coeff(&xx), 1); // -2 = 1 mod 3
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn plain_power() {
        let a = wxy();
        let f = Fp::new(3).unwrap();
        let p = parse_poly("w^3", &a, f, &no_params()).unwrap();
        assert_eq!(p.coeff(&Word::power(0, 3)), 1);
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn parameters_and_parenthesized_sums() {
        let a = wxy();
        let f = Fp::new(3).unwrap();
        let mut params = HashMap::new();
        params.insert("e".to_string(), 1);
        let p = parse_poly("x*w - w*x - e*(w^2+w)", &a, f, &params).unwrap();
        assert_eq!(p.coeff(&Word::from_letters(&[1, 0])), 1); // xw
        assert_eq!(p.coeff(&Word::from_letters(&[0, 1])), 2); // -wx
        assert_eq!(p.coeff(&Word::power(0, 2)), 2); // -w^2
        assert_eq!(p.coeff(&Word::gen(0)), 2); // -w
    }

    #[test]
    fn syntax_error_carries_position() {
        let a = xy();
        let f = Fp::new(3).unwrap();
        let e = parse_poly("x*+y", &a, f, &no_params()).unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_poly("x*z", &a, f, &no_params()).unwrap_err();
        assert_eq!(e.position, 2);
        assert!(e.message.contains("unknown identifier"));
    }

    #[test]
    fn zero_divisor_rejected() {
        let a = xy();
        let f = Fp::new(3).unwrap();
        let e = parse_poly("x/3", &a, f, &no_params()).unwrap_err();
        assert!(e.message.contains("divisor is 0"));
        let e = parse_poly("1/y", &a, f, &no_params()).unwrap_err();
        assert!(e.message.contains("scalar"));
    }

    #[test]
    fn leading_sign_and_exponent_zero() {
        let a = xy();
        let f = Fp::new(5).unwrap();
        let p = parse_poly("-x + x", &a, f, &no_params()).unwrap();
        assert!(p.is_zero());
        let p = parse_poly("y^0", &a, f, &no_params()).unwrap();
        assert_eq!(p.augmentation(), 1);
    }
}
