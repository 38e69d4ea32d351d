//! Recursive-descent reader for rational-function literals over `x`.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr    := term { ("+" | "-") term }
//! term    := unary { ("*" | "/") unary }
//! unary   := "-" unary | "+" unary | power
//! power   := primary [ "^" nat ]
//! primary := nat | "x" | "(" expr ")"
//! ```

use num_bigint::BigInt;

use super::poly::{Poly, Rational};
use super::ratfunc::RatFunc;
use super::FieldError;

struct Reader<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, message: impl Into<String>) -> FieldError {
        FieldError::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<RatFunc, FieldError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, FieldError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d).map_err(|_| FieldError::Parse {
                        offset: at,
                        message: "division by zero".into(),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, FieldError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, FieldError> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.nat()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            let mut acc = RatFunc::one();
            for _ in 0..e {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn nat(&mut self) -> Result<BigInt, FieldError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string"))
    }

    fn primary(&mut self) -> Result<RatFunc, FieldError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(RatFunc::x())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                Ok(RatFunc::constant(Rational::from_integer(n)))
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a whole string as an element of Q(x).
pub fn parse_ratfunc(s: &str) -> Result<RatFunc, FieldError> {
    let mut r = Reader {
        src: s.as_bytes(),
        pos: 0,
    };
    let v = r.expr()?;
    if r.peek().is_some() {
        return Err(r.err("trailing input"));
    }
    Ok(v)
}

/// Parses a rational constant such as `5` or `-3/2`.
pub fn parse_rational(s: &str) -> Result<Rational, FieldError> {
    let v = parse_ratfunc(s)?;
    v.as_constant().ok_or(FieldError::Parse {
        offset: 0,
        message: format!("expected a rational constant, found '{v}'"),
    })
}

/// Parses a polynomial; rejects proper fractions.
pub fn parse_poly(s: &str) -> Result<Poly, FieldError> {
    let v = parse_ratfunc(s)?;
    if v.den().is_one() {
        Ok(v.num().clone())
    } else {
        Err(FieldError::Parse {
            offset: 0,
            message: "expected a polynomial".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let v = parse_ratfunc("1/2*x").unwrap();
        assert_eq!(v.to_string(), "1/2*x");
        let v = parse_ratfunc("-3*x^2 + x - 1/2").unwrap();
        assert_eq!(v.to_string(), "-3*x^2 + x - 1/2");
    }

    #[test]
    fn rationals() {
        assert_eq!(
            parse_rational("-3/2").unwrap(),
            Rational::new((-3).into(), 2.into())
        );
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_ratfunc("1 + ?") {
            Err(FieldError::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_ratfunc("1/0").is_err());
        assert!(parse_ratfunc("(x").is_err());
        assert!(parse_ratfunc("x x").is_err());
    }

    #[test]
    fn polynomials() {
        assert_eq!(parse_poly("x^2 - 1").unwrap(), Poly::from_ints(&[-1, 0, 1]));
        assert!(parse_poly("1/x").is_err());
    }
}
