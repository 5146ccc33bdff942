//! Parser for rational-function strings such as `(1 - q*t^-1)/(1 - u^-1)`.
//!
//! Accepts integers, registry variable names, `q` and `t` (meaning `qh^2`
//! and `th^2`), `+ - * /`, parentheses and `^` with an integer exponent.
//! `q` and `t` also accept half-integer exponents written `q^(3/2)`.

use num_bigint::BigInt;

use crate::error::ExactError;
use crate::ratfun::RatFun;
use crate::var::{Mon, Var};

pub fn parse(s: &str) -> Result<RatFun, ExactError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let r = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(r)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ExactError {
        ExactError::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<RatFun, ExactError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFun, ExactError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFun, ExactError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFun, ExactError> {
        self.skip_ws();
        let start = self.pos;
        let (base, half_var) = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let (n, d) = self.exponent()?;
        match (d, half_var) {
            (1, _) => base.pow(n),
            (2, Some(v)) => Ok(RatFun::monomial(Mon::var_pow(v, n))),
            _ => Err(ExactError::Parse {
                pos: start,
                msg: "fractional exponent only allowed on q or t".into(),
            }),
        }
    }

    /// Returns the value and, for bare `q`/`t`, the underlying square-root variable.
    fn atom(&mut self) -> Result<(RatFun, Option<Var>), ExactError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok((e, None))
            }
            Some(c) if c.is_ascii_digit() => Ok((RatFun::int(self.integer()?), None)),
            Some(c) if c.is_ascii_alphabetic() => {
                let s = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[s..self.pos]).unwrap();
                match name {
                    "q" => Ok((RatFun::q(), Some(Var::QH))),
                    "t" => Ok((RatFun::t(), Some(Var::TH))),
                    _ => Var::from_name(name)
                        .map(|v| (RatFun::var(v), None))
                        .ok_or_else(|| ExactError::Parse { pos: s, msg: format!("unknown variable '{name}'") }),
                }
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ExactError> {
        self.skip_ws();
        let s = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if s == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[s..self.pos]).unwrap().parse().unwrap())
    }

    fn small_int(&mut self) -> Result<i32, ExactError> {
        let neg = self.eat(b'-');
        let v = self.integer()?;
        let v: i32 = i32::try_from(v).map_err(|_| self.err("exponent too large"))?;
        Ok(if neg { -v } else { v })
    }

    /// `k`, `-k` or `(a/b)` with `b` in {1, 2}; returns the doubled numerator for halves.
    fn exponent(&mut self) -> Result<(i32, i32), ExactError> {
        if self.eat(b'(') {
            let n = self.small_int()?;
            let d = if self.eat(b'/') { self.small_int()? } else { 1 };
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            return match d {
                1 => Ok((n, 1)),
                2 if n % 2 == 0 => Ok((n / 2, 1)),
                2 => Ok((n, 2)),
                _ => Err(self.err("exponent denominator must be 1 or 2")),
            };
        }
        Ok((self.small_int()?, 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_expressions() {
        let a = parse("(1 - q*t^-1)/(1 - u^-1)").unwrap();
        let b = &(&RatFun::one() - &RatFun::qt(1, -1)) / &(&RatFun::one() - &RatFun::u().pow(-1).unwrap());
        assert_eq!(a, b);
        assert_eq!(parse("q^(1/2)").unwrap(), RatFun::var(Var::QH));
        assert_eq!(parse("q^(2/2)").unwrap(), RatFun::q());
        assert_eq!(parse("-2*x + 3*x").unwrap(), RatFun::var(Var::X));
        assert!(parse("1/0").is_err());
        assert!(parse("u^(1/2)").is_err());
        assert!(parse("w").is_err());
    }
}
