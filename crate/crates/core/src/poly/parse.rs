//! Text format for polynomials: a signed sum of terms like
//! `2*x1*y2^3 - 1/2*xp1`. Whitespace-insensitive; `*` between factors is
//! optional when unambiguous (a variable follows a coefficient or `^k`).

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Exps, Poly, VarTable};
use crate::error::Error;
use crate::field::{Field, Rat};

pub fn parse_poly<F: Field + From<Rat>>(
    table: &Arc<VarTable>,
    src: &str,
) -> Result<Poly<F>, Error> {
    let toks = tokenize(src)?;
    let mut terms: Vec<(Exps, F)> = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < toks.len() {
        let mut sign = 1i64;
        // leading sign(s)
        loop {
            match toks.get(i) {
                Some(Tok::Plus) => {
                    i += 1;
                }
                Some(Tok::Minus) => {
                    sign = -sign;
                    i += 1;
                }
                _ => break,
            }
        }
        if i >= toks.len() {
            if first && terms.is_empty() {
                break;
            }
            return Err(Error::Parse("dangling sign".into()));
        }
        first = false;
        let mut coeff = BigRational::from_integer(BigInt::from(sign));
        let mut exps = vec![0u32; table.len()];
        let mut saw_factor = false;
        loop {
            match toks.get(i) {
                Some(Tok::Number(n)) => {
                    let mut val = BigRational::from_integer(n.clone());
                    i += 1;
                    if let Some(Tok::Slash) = toks.get(i) {
                        i += 1;
                        match toks.get(i) {
                            Some(Tok::Number(d)) => {
                                val /= BigRational::from_integer(d.clone());
                                i += 1;
                            }
                            _ => return Err(Error::Parse("expected denominator".into())),
                        }
                    }
                    coeff *= val;
                    saw_factor = true;
                }
                Some(Tok::Ident(name)) => {
                    let pos = table.position(name).ok_or_else(|| {
                        Error::Parse(format!("unknown variable `{name}`"))
                    })?;
                    i += 1;
                    let mut k = 1u32;
                    if let Some(Tok::Caret) = toks.get(i) {
                        i += 1;
                        match toks.get(i) {
                            Some(Tok::Number(n)) => {
                                k = u32::try_from(n.clone())
                                    .map_err(|_| Error::Parse("exponent too large".into()))?;
                                i += 1;
                            }
                            _ => return Err(Error::Parse("expected exponent".into())),
                        }
                    }
                    exps[pos] += k;
                    saw_factor = true;
                }
                Some(Tok::Star) => {
                    i += 1;
                }
                _ => break,
            }
        }
        if !saw_factor {
            return Err(Error::Parse("empty term".into()));
        }
        terms.push((Exps::new(exps), F::from(Rat(coeff))));
    }
    Ok(Poly::from_terms(table.clone(), terms))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(src: &str) -> Result<Vec<Tok>, Error> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                out.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                out.push(Tok::Star);
            }
            '/' => {
                chars.next();
                out.push(Tok::Slash);
            }
            '^' => {
                chars.next();
                out.push(Tok::Caret);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Number(s.parse().unwrap()));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(s));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}
