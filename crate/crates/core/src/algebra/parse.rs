//! Parser for rational expressions in `q`, e.g. `"q^2 - 3/2*q + (q+1)/(q-1)"`.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/')? factor)*      juxtaposition multiplies
//! factor := ('-' | '+') factor | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'q' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

pub fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    let mut p = Parser { chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
    if p.chars.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let v = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!("unexpected '{}' at {}", p.chars[p.pos], p.pos)));
    }
    Ok(v)
}

/// Parse an exact rational written as `a` or `a/b`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
    let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
    if d == BigInt::from(0) {
        return Err(Error::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(BigRational::new(n, d))
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add_ref(&t) } else { acc.sub_ref(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul_ref(&self.factor()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = acc.div_ref(&d)?;
                }
                Some(c) if c == 'q' || c == '(' || c.is_ascii_digit() => {
                    acc = acc.mul_ref(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.factor()?.neg_ref())
            }
            Some('+') => {
                self.pos += 1;
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| Error::Parse("exponent out of range".into()))?;
            let mut out = RatFunc::one();
            for _ in 0..e {
                out = out.mul_ref(&base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some('q') => {
                self.pos += 1;
                Ok(RatFunc::q())
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse(format!("expected ')' at {}", self.pos)));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                Ok(RatFunc::from_rational(BigRational::from_integer(self.integer()?)))
            }
            Some(c) => Err(Error::Parse(format!("unexpected '{c}' at {}", self.pos))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected integer at {start}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qpoly::QPoly;

    #[test]
    fn parses_display_output() {
        let p = RatFunc::from_poly(QPoly::from_int_coeffs(&[1, 5, 1]));
        assert_eq!(parse_ratfunc(&p.to_string()).unwrap(), p);
        let r = parse_ratfunc("(q + 1)/(q^2 - 1)").unwrap();
        assert_eq!(r.to_string(), "(1)/(q - 1)");
        assert_eq!(parse_ratfunc(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn precedence_and_juxtaposition() {
        assert_eq!(parse_ratfunc("-q^2").unwrap(), RatFunc::from_poly(QPoly::from_int_coeffs(&[0, 0, -1])));
        assert_eq!(parse_ratfunc("2q").unwrap(), parse_ratfunc("2*q").unwrap());
        assert_eq!(parse_ratfunc("3/2*q").unwrap().to_string(), "3/2*q");
        assert!(parse_ratfunc("q+").is_err());
        assert!(parse_ratfunc("1/(q-q)").is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
    }
}
