//! Parser for polynomial expressions such as `(x1^2+x2^2)*x3 - 1/2 x4 x5^2`.
//!
//! Grammar: sums of products of powers; juxtaposition multiplies; `/` is only
//! allowed with a nonzero constant divisor; `i` is the imaginary unit.

use num_traits::Zero;
use thiserror::Error;

use super::field::{Field, Rat};
use super::gauss::GaussRat;
use super::multipoly::{GaussPoly, MultiPoly, Vars};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let cs: Vec<(usize, char)> = s.char_indices().collect();
    let mut k = 0;
    while k < cs.len() {
        let (off, c) = cs[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < cs.len() && cs[k].1.is_ascii_digit() {
                k += 1;
            }
            let digits: String = cs[start..k].iter().map(|x| x.1).collect();
            let n: num_bigint::BigInt = digits.parse().map_err(|_| ParseError { offset: off, message: "bad number".into() })?;
            out.push((off, Tok::Num(Rat::from_integer(n))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            // letters then digits, so that `x2x3` reads as two variables
            while k < cs.len() && (cs[k].1.is_ascii_alphabetic() || cs[k].1 == '_') {
                k += 1;
            }
            while k < cs.len() && cs[k].1.is_ascii_digit() {
                k += 1;
            }
            out.push((off, Tok::Ident(cs[start..k].iter().map(|x| x.1).collect())));
        } else if "+-*/^()".contains(c) {
            out.push((off, Tok::Sym(c)));
            k += 1;
        } else {
            return Err(ParseError { offset: off, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    vars: &'a Vars,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.offset(), message: msg.into() })
    }

    fn expr(&mut self) -> Result<GaussPoly, ParseError> {
        let mut acc = MultiPoly::zero(self.vars.clone());
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(Tok::Sym('+')) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Sym('-')) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Ok(acc),
            };
            first = false;
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
        }
    }

    fn term(&mut self) -> Result<GaussPoly, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Sym('*')) => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                Some(Tok::Sym('/')) => {
                    self.pos += 1;
                    let f = self.power()?;
                    let c = match f.total_degree() {
                        Some(0) => f.coeff(&vec![0; f.nvars()]),
                        None => return self.err("division by zero"),
                        _ => return self.err("division by a non-constant"),
                    };
                    acc = acc.scale(&c.inverse().expect("nonzero"));
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')) => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<GaussPoly, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) if n.is_integer() && n <= Rat::from_integer(64.into()) => {
                    self.pos += 1;
                    let k: u32 = n.to_integer().try_into().expect("small exponent");
                    return Ok(base.pow(k));
                }
                _ => return self.err("expected a small nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<GaussPoly, ParseError> {
        let v = self.vars.clone();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(v, GaussRat::real(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(k) = v.iter().position(|x| x == &name) {
                    Ok(MultiPoly::var(v, k))
                } else if name == "i" {
                    Ok(MultiPoly::constant(v, GaussRat::i()))
                } else {
                    self.pos -= 1;
                    self.err(format!("unknown variable '{name}'"))
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Sym(')')) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }
}

/// Parses `s` as a polynomial in `vars` with Gaussian rational coefficients.
pub fn parse_poly(s: &str, vars: &Vars) -> Result<GaussPoly, ParseError> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, vars, end: s.len() };
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Parses a Gaussian rational constant such as `1/2`, `-i` or `3+2/5*i`.
pub fn parse_gauss(s: &str) -> Result<GaussRat, ParseError> {
    let vars: Vars = Vec::<String>::new().into();
    let p = parse_poly(s, &vars)?;
    Ok(if p.is_zero() { GaussRat::zero() } else { p.coeff(&[]) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::{rat, ratio};
    use crate::exact::multipoly::p4_vars;

    #[test]
    fn parses_a_cubic() {
        let v = p4_vars();
        let f = parse_poly("(x1^2+x2^2)x3 + x3^3 + 1/2 x2 (x4^2 - x5^2) + x1 x4 x5", &v).unwrap();
        assert!(f.is_homogeneous(3));
        assert_eq!(f.coeff(&[0, 1, 0, 2, 0]), GaussRat::real(ratio(1, 2)));
        assert_eq!(f.coeff(&[0, 1, 0, 0, 2]), GaussRat::real(ratio(-1, 2)));
        assert_eq!(f.num_terms(), 6);
    }

    #[test]
    fn imaginary_unit_and_errors() {
        assert_eq!(parse_gauss("3 - 2i").unwrap(), GaussRat::new(rat(3), rat(-2)));
        assert_eq!(parse_gauss("-i").unwrap(), -GaussRat::i());
        assert!(parse_poly("x1 / x2", &p4_vars()).is_err());
        assert!(parse_poly("y + 1", &p4_vars()).is_err());
        assert!(parse_poly("1/0", &p4_vars()).is_err());
        assert!(parse_poly("(x1", &p4_vars()).is_err());
    }
}
