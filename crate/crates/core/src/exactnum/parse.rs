//! Parser for univariate polynomial expressions such as `13*f^2 - f - 5`.
//!
//! Grammar: sums of products of powers, with parentheses, integer and
//! rational literals (`3/2`), and a single named variable.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::upoly::QPoly;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: &'a str,
}

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

impl<'a> Parser<'a> {
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

    fn sum(&mut self) -> Result<QPoly> {
        let mut acc = if self.eat(b'-') {
            self.product()?.neg()
        } else {
            self.eat(b'+');
            self.product()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.product()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<QPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat(b'/') {
                let d = self.power()?;
                if d.deg() != 0 || d.is_zero() {
                    return err("division only by nonzero constants");
                }
                acc = acc.scale(&d.coeffs()[0].recip());
            } else if matches!(self.peek(), Some(c) if c == b'(' || c.is_ascii_alphanumeric()) {
                // Implicit multiplication, as in `2f` or `3(f+1)`.
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<QPoly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(format!("expected a number at offset {start}"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<QPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(b')') {
                    return err("unbalanced parenthesis");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(QPoly::constant(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if name != self.var {
                    return err(format!("unknown symbol {name}, expected {}", self.var));
                }
                Ok(QPoly::from_coeffs(vec![BigRational::zero(), BigRational::one()]))
            }
            Some(c) => err(format!("unexpected character {:?}", c as char)),
            None => err("unexpected end of input"),
        }
    }
}

pub fn parse_upoly(src: &str, var: &str) -> Result<QPoly> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        var,
    };
    let out = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return err(format!("trailing input at offset {}", p.pos));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let f = parse_upoly("13*f^2 - f - 5", "f").unwrap();
        assert_eq!(f, QPoly::from_ratios(&[(-5, 1), (-1, 1), (13, 1)]));
        let g = parse_upoly("d^3-15d^2+12*d+1", "d").unwrap();
        assert_eq!(g.display_in("d"), "d^3 - 15*d^2 + 12*d + 1");
        let h = parse_upoly("-(t+1)^2/2", "t").unwrap();
        assert_eq!(h, QPoly::from_ratios(&[(-1, 2), (-1, 1), (-1, 2)]));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_upoly("x + y", "x").is_err());
        assert!(parse_upoly("(x", "x").is_err());
        assert!(parse_upoly("x / x", "x").is_err());
        assert!(parse_upoly("", "x").is_err());
    }
}
