//! Polynomial text grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | variable | '(' expr ')'
//! ```
//!
//! Variables are `z0 z1 z2` on the primal side and `a0 a1 a2` on the dual side.
//! The input is expanded and must be homogeneous.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::form::{Monomial, Space, TernaryForm};
use crate::rational::Rational;

/// Inhomogeneous intermediate polynomial.
#[derive(Clone, Debug, Default)]
struct Poly(BTreeMap<Monomial, Rational>);

impl Poly {
    fn constant(c: Rational) -> Self {
        let mut p = Poly::default();
        if !c.is_zero() {
            p.0.insert(Monomial::ONE, c);
        }
        p
    }

    fn var(i: usize) -> Self {
        let mut p = Poly::default();
        p.0.insert(Monomial::var(i), Rational::one());
        p
    }

    fn add(mut self, other: &Poly, sign: i32) -> Self {
        for (m, c) in &other.0 {
            let e = self.0.entry(*m).or_insert_with(Rational::zero);
            if sign < 0 {
                *e -= c;
            } else {
                *e += c;
            }
        }
        self.0.retain(|_, c| !c.is_zero());
        self
    }

    fn mul(&self, other: &Poly) -> Self {
        let mut out = Poly::default();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &other.0 {
                *out.0.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        out.0.retain(|_, c| !c.is_zero());
        out
    }

    fn neg(mut self) -> Self {
        for c in self.0.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str, space: Space) -> Result<Vec<(usize, Tok)>> {
    let prefix = space.var_prefix();
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c == prefix => {
                match bytes.get(i + 1) {
                    Some(b @ b'0'..=b'2') => {
                        out.push((i, Tok::Var((b - b'0') as usize)));
                        i += 2;
                        continue;
                    }
                    _ => {
                        return Err(Error::Parse {
                            pos: i,
                            msg: format!("expected {prefix}0, {prefix}1 or {prefix}2"),
                        })
                    }
                }
            }
            other => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => return Ok(acc),
            };
            self.bump();
            let rhs = self.term()?;
            acc = acc.add(&rhs, sign);
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            let rhs = self.unary()?;
            acc = acc.mul(&rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let exp = match self.bump() {
                Some(Tok::Int(n)) => u32::try_from(n).or_else(|_| self.err("exponent too large"))?,
                _ => {
                    self.pos -= 1;
                    return self.err("expected a non-negative integer exponent");
                }
            };
            let mut acc = Poly::constant(Rational::one());
            for _ in 0..exp {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.bump() {
            Some(Tok::Int(n)) => {
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Int(d)) if !d.is_zero() => Ok(Poly::constant(Rational::new(n, d))),
                        Some(Tok::Int(_)) => {
                            self.pos -= 1;
                            self.err("zero denominator")
                        }
                        _ => {
                            self.pos -= 1;
                            self.err("'/' is only allowed between integer literals")
                        }
                    }
                } else {
                    Ok(Poly::constant(Rational::from_integer(n)))
                }
            }
            Some(Tok::Var(i)) => Ok(Poly::var(i)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        self.err("expected ')'")
                    }
                }
            }
            Some(_) => {
                self.pos -= 1;
                self.err("expected a number, variable or '('")
            }
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses and expands a homogeneous polynomial.
pub fn parse_form(text: &str, space: Space) -> Result<TernaryForm> {
    let toks = tokenize(text, space)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let poly = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("trailing input");
    }
    let degrees: BTreeSet<u32> = poly.0.keys().map(Monomial::degree).collect();
    match degrees.len() {
        0 => Ok(TernaryForm::zero(0, space)),
        1 => {
            let d = *degrees.iter().next().expect("one degree");
            TernaryForm::from_terms(d, space, poly.0)
        }
        _ => Err(Error::Inhomogeneous {
            found: degrees.into_iter().collect(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn hesse_cubic_text() {
        let f = parse_form("z0^3 + z1^3 + z2^3 - 3*2*z0*z1*z2", Space::Primal).unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.num_terms(), 4);
        assert_eq!(f.coeff(&Monomial([1, 1, 1])), int(-6));
    }

    #[test]
    fn zero_and_binomial() {
        let zero = parse_form("0", Space::Primal).unwrap();
        assert!(zero.is_zero());
        let sq = parse_form("(z0+z1)^2", Space::Primal).unwrap();
        assert_eq!(sq.to_string(), "z0^2 + 2*z0*z1 + z1^2");
        let cancel = parse_form("z0*z1 - z1*z0", Space::Primal).unwrap();
        assert!(cancel.is_zero());
    }

    #[test]
    fn rationals_and_dual() {
        let f = parse_form("-1/2*a0^2 + (3/4)*a1*a2", Space::Dual).unwrap();
        assert_eq!(f.space(), Space::Dual);
        assert_eq!(f.coeff(&Monomial([2, 0, 0])), rat(-1, 2));
        assert_eq!(f.coeff(&Monomial([0, 1, 1])), rat(3, 4));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_form("z0^2 + z1", Space::Primal),
            Err(Error::Inhomogeneous { .. })
        ));
        for bad in ["z0 +", "z3", "(z0", "z0 z1", "z0/2", "1/0", "a0", "z0^-1", ""] {
            assert!(
                matches!(parse_form(bad, Space::Primal), Err(Error::Parse { .. })),
                "{bad:?} should fail to parse"
            );
        }
    }

    #[test]
    fn display_round_trip() {
        let f = parse_form("7/3*z0^2*z1 - z1^3 + 12*z0*z1*z2 - 1/5*z2^3", Space::Primal).unwrap();
        assert_eq!(parse_form(&f.to_string(), Space::Primal).unwrap(), f);
    }
}
