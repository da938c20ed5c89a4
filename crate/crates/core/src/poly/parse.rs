//! Text grammar for forms:
//!
//! ```text
//! poly   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := INT ['/' INT] | 'x' INT ['^' INT]
//! ```
//!
//! Whitespace is ignored and multiplication must be explicit.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{HomogPoly, MAX_DEGREE, MAX_VARS};
use crate::error::{Error, Result};
use crate::scalar::Rational;

struct RawTerm {
    coeff: Rational,
    /// (variable index, exponent)
    powers: Vec<(usize, u32)>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn small_int(&mut self, what: &str) -> Result<u32> {
        let d = self.digits()?;
        match d.parse::<u32>() {
            Ok(v) => Ok(v),
            Err(_) => self.err(format!("{what} {d} is too large")),
        }
    }

    fn factor(&mut self, term: &mut RawTerm) -> Result<()> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let idx = self.small_int("variable index")? as usize;
                let exp = if self.eat(b'^') {
                    self.small_int("exponent")?
                } else {
                    1
                };
                term.powers.push((idx, exp));
                Ok(())
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits()?.parse().expect("digits");
                let den: BigInt = if self.eat(b'/') {
                    self.digits()?.parse().expect("digits")
                } else {
                    BigInt::one()
                };
                if den.is_zero() {
                    return self.err("zero denominator");
                }
                term.coeff *= Rational::new(num, den);
                Ok(())
            }
            Some(c) => self.err(format!("unexpected character {:?}", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self, negative: bool) -> Result<RawTerm> {
        let sign = if negative {
            -Rational::one()
        } else {
            Rational::one()
        };
        let mut t = RawTerm {
            coeff: sign,
            powers: Vec::new(),
        };
        self.factor(&mut t)?;
        while self.eat(b'*') {
            self.factor(&mut t)?;
        }
        Ok(t)
    }

    fn poly(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            terms.push(self.term(negative)?);
            if self.eat(b'+') {
                negative = false;
            } else if self.eat(b'-') {
                negative = true;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(terms)
    }
}

fn parse_raw(text: &str) -> Result<Vec<RawTerm>> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
    }
    .poly()
}

fn assemble(terms: Vec<RawTerm>, num_vars: usize) -> Result<HomogPoly> {
    if num_vars > MAX_VARS {
        return Err(Error::TooManyVariables(num_vars));
    }
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let mut exps = vec![0u32; num_vars];
        for (idx, e) in t.powers {
            if idx >= num_vars {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!(
                        "variable x{idx} outside x0..x{}",
                        num_vars.saturating_sub(1)
                    ),
                });
            }
            exps[idx] = exps[idx].saturating_add(e);
        }
        let d: u64 = exps.iter().map(|&e| e as u64).sum();
        if d > MAX_DEGREE as u64 {
            return Err(Error::DegreeTooLarge(d.min(u32::MAX as u64) as u32));
        }
        out.push((exps, t.coeff));
    }
    HomogPoly::from_terms(num_vars, out)
}

/// Parses a form in `num_vars` variables `x0 .. x{num_vars-1}`.
pub fn parse_poly(text: &str, num_vars: usize) -> Result<HomogPoly> {
    assemble(parse_raw(text)?, num_vars)
}

/// Parses a form, taking the number of variables from the largest index
/// that occurs (at least one variable).
pub fn parse_poly_infer(text: &str) -> Result<HomogPoly> {
    let terms = parse_raw(text)?;
    let n = terms
        .iter()
        .flat_map(|t| t.powers.iter().map(|(i, _)| i + 1))
        .max()
        .unwrap_or(1);
    assemble(terms, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::scalar::{frac, int};

    #[test]
    fn binary_cubic() {
        let p = parse_poly("x0^2*x1 + 3*x1^3", 2).unwrap();
        assert_eq!(p.degree(), 3);
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&Monomial::new(vec![2, 1])), int(1));
        assert_eq!(p.coeff(&Monomial::new(vec![0, 3])), int(3));
    }

    #[test]
    fn rejects_mixed_degrees() {
        assert_eq!(parse_poly("x0 + x1^2", 2), Err(Error::NotHomogeneous(1, 2)));
    }

    #[test]
    fn leading_negative_fraction() {
        let p = parse_poly("-1/6*x0^3", 2).unwrap();
        assert_eq!(p.coeff(&Monomial::new(vec![3, 0])), frac(-1, 6));
        assert_eq!(p.to_string(), "-1/6*x0^3");
    }

    #[test]
    fn whitespace_and_repeats() {
        let p = parse_poly(" x0 * x0 -  2 * x1*x0 + x0*x1 ", 2).unwrap();
        assert_eq!(p.to_string(), "x0^2 - x0*x1");
    }

    #[test]
    fn syntax_errors() {
        for bad in [
            "", "x0 +", "2x0", "x0^", "x0 ** 2", "(x0)", "x0 x1", "1/0*x0", "y0",
        ] {
            assert!(
                matches!(parse_poly(bad, 2), Err(Error::Parse { .. })),
                "{bad}"
            );
        }
        assert!(matches!(parse_poly("x2", 2), Err(Error::Parse { .. })));
    }

    #[test]
    fn limits() {
        assert_eq!(parse_poly_infer("x16"), Err(Error::TooManyVariables(17)));
        assert_eq!(parse_poly("x0^65", 1), Err(Error::DegreeTooLarge(65)));
        assert!(parse_poly("x0^64", 1).is_ok());
    }

    #[test]
    fn inference() {
        assert_eq!(parse_poly_infer("x0*x3").unwrap().num_vars(), 4);
        assert_eq!(parse_poly_infer("5").unwrap().num_vars(), 1);
    }
}
