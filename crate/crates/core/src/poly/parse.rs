//! Polynomial text format.
//!
//! Accepts sums of terms `c * x1^e1 * ... * xn^en` with rational (`p/q`) or
//! decimal coefficients, plus parentheses so that shifted data such as
//! `(x - 1)^2 + (y - 1)^4 - 2` can be written unexpanded. Variables are
//! `x1..xn`; `x`, `y`, `z` alias `x1`, `x2`, `x3`. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::One;
#[cfg(test)]
use num_traits::Zero;

use super::{MultiPoly, Rational};
use crate::error::{Error, Result};

pub fn parse_poly(text: &str, nvars: usize) -> Result<MultiPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if d.degree() > 0 || d.is_zero() {
                        self.pos = at;
                        return Err(self.err("division only by nonzero constants"));
                    }
                    let inv = Rational::one() / d.constant_term();
                    acc = acc.scale(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
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

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.uint()?;
            let n = u32::try_from(n).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected nonnegative integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let r = self.number()?;
                Ok(MultiPoly::constant(self.nvars, r))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let i = self.variable()?;
                Ok(MultiPoly::var(self.nvars, i))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Rational> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let int_part = &self.src[start..self.pos];
        let mut frac_part: &[u8] = &[];
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            let fs = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            frac_part = &self.src[fs..self.pos];
        }
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(self.err("malformed number"));
        }
        let digits: String = int_part
            .iter()
            .chain(frac_part)
            .map(|&b| b as char)
            .collect();
        let num: BigInt = digits.parse().map_err(|_| self.err("malformed number"))?;
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        Ok(Rational::new(num, den))
    }

    fn variable(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let idx = match name {
            "x" => 0,
            "y" => 1,
            "z" => 2,
            _ => {
                let rest = name
                    .strip_prefix('x')
                    .map(|r| r.trim_start_matches('_'))
                    .filter(|r| !r.is_empty());
                match rest.and_then(|r| r.parse::<usize>().ok()) {
                    Some(k) if k >= 1 => k - 1,
                    _ => {
                        self.pos = start;
                        return Err(self.err(&format!("unknown variable '{name}'")));
                    }
                }
            }
        };
        if idx >= self.nvars {
            self.pos = start;
            return Err(self.err(&format!(
                "variable '{name}' exceeds the declared {} variables",
                self.nvars
            )));
        }
        Ok(idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    #[test]
    fn parses_spec_format() {
        let p = parse_poly("3/4 * x1^2 * x2 + 2 * x2^3", 2).unwrap();
        assert_eq!(p.coeff(&[2, 1]), rat(3, 4));
        assert_eq!(p.coeff(&[0, 3]), rat_int(2));
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn expands_shifted_data() {
        let p = parse_poly("(x + 1/2)^2 + (y + 1/2)^4 - 5/16", 2).unwrap();
        let q = parse_poly(
            "x^2 + x + y^4 + 2*y^3 + 3/2*y^2 + 1/2*y",
            2,
        )
        .unwrap();
        assert_eq!(p, q);
        assert!(p.constant_term().is_zero());
    }

    #[test]
    fn decimals_are_exact() {
        let p = parse_poly("0.25*x", 1).unwrap();
        assert_eq!(p.coeff(&[1]), rat(1, 4));
    }

    #[test]
    fn diagnostics() {
        for bad in ["x^", "x + * y", "x1^2 +", "w^2", "x3", "(x + y", "x / y", "x @ 2"] {
            match parse_poly(bad, 2) {
                Err(Error::Parse { .. }) => {}
                other => panic!("{bad:?} parsed to {other:?}"),
            }
        }
    }
}
