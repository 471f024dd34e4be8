use num::{BigInt, BigRational};

use super::monomial::{Label, Monomial};
use super::rational::RationalFunction;
use crate::error::{Error, Result};

/// Parse the canonical text rendering (and ordinary arithmetic around it).
///
/// Grammar: sums and differences of products and quotients of factors; a
/// factor is an integer, a variable (`t`, `t3`, `t_a`), or a parenthesized
/// expression, optionally raised to `^k`, `^(k)` or `^(k/2)`.
pub fn parse_rational(text: &str) -> Result<RationalFunction> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::parse(1, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d).map_err(|_| Error::parse(1, at + 1, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let (num, den) = self.exponent()?;
                    if den != 1 {
                        return Err(self.err("fractional power of a compound expression"));
                    }
                    let p = v.pow(num.unsigned_abs());
                    if num < 0 {
                        return p.inv().map_err(|_| self.err("negative power of zero"));
                    }
                    return Ok(p);
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RationalFunction::constant(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let label = Label::from_variable(name).ok_or_else(|| Error::parse(1, start + 1, format!("unknown variable `{name}`")))?;
                let mut e = 2;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let (num, den) = self.exponent()?;
                    e = if den == 2 { num } else { 2 * num };
                }
                Ok(RationalFunction::monomial(Monomial::s(&label, e)))
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }

    /// Returns `(numerator, denominator)` with denominator 1 or 2.
    fn exponent(&mut self) -> Result<(i32, i32)> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let n = self.small_int()?;
            let mut den = 1;
            if self.peek() == Some(b'/') {
                self.pos += 1;
                den = self.small_int()?;
                if den != 1 && den != 2 {
                    return Err(self.err("only half-integer exponents are supported"));
                }
            }
            self.expect(b')')?;
            Ok((if neg { -n } else { n }, den))
        } else {
            Ok((self.small_int()?, 1))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        digits.parse::<BigInt>().map_err(|_| self.err("bad integer"))
    }

    fn small_int(&mut self) -> Result<i32> {
        let n = self.integer()?;
        i32::try_from(n).map_err(|_| self.err("exponent out of range"))
    }
}
