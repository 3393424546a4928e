//! Text syntax for polynomial elements: `z1..zn`, `q1`, `q2`, `D`, `K`,
//! integers, `+ - * / ^` and parentheses, with an optional `[n]` degree
//! prefix. Division is only by nonzero constants.

use num_traits::Zero;

use super::poly::{self, Poly};
use super::ShuffleElement;
use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Var(usize),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse().map_err(|_| Error::Parse(format!("integer {text} too large")))?;
            out.push(Tok::Int(n));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            out.push(Tok::Var(variable(&name)?));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

fn variable(name: &str) -> Result<usize> {
    match name {
        "q1" => Ok(poly::Q1),
        "q2" => Ok(poly::Q2),
        "D" => Ok(poly::D),
        "K" => Ok(poly::K),
        _ => name
            .strip_prefix('z')
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|&k| k >= 1)
            .map(|k| poly::z(k - 1))
            .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}"))),
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = d
                    .as_constant()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| Error::Parse("division by a non-constant or zero".into()))?;
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(k)) if k <= 64 => {
                    self.pos += 1;
                    Ok(base.pow(k as u32))
                }
                other => Err(Error::Parse(format!("expected a small exponent, got {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Poly::constant(Q::from_integer(n.into())))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(Poly::var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a polynomial expression.
pub fn parse_poly(s: &str) -> Result<Poly> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

/// Parses `[n] expr` or `expr`; without a prefix the degree is the largest
/// `z` index used.
pub fn parse_element(s: &str) -> Result<ShuffleElement> {
    let s = s.trim();
    let (degree, body) = match s.strip_prefix('[') {
        Some(rest) => {
            let (n, body) = rest
                .split_once(']')
                .ok_or_else(|| Error::Parse("unterminated degree prefix".into()))?;
            let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad degree {n:?}")))?;
            (Some(n), body)
        }
        None => (None, s),
    };
    let poly = parse_poly(body)?;
    let used = poly.max_var().filter(|&v| v >= poly::PARAMS).map_or(0, |v| v - poly::PARAMS + 1);
    ShuffleElement::from_poly(degree.unwrap_or(used), poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn parses_and_prints() {
        let p = parse_poly("(z1 + z2)^2 - 2*z1*z2").unwrap();
        assert_eq!(p.to_string(), "z1^2 + z2^2");
        let p = parse_poly("3/2*q1*z1 - -z1").unwrap();
        assert_eq!(p.to_string(), "3/2*q1*z1 + z1");
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        assert_eq!(parse_poly("7").unwrap(), Poly::constant(q(7)));
        assert_eq!(parse_poly("1/3").unwrap().as_constant(), Some(frac(1, 3)));
        assert_eq!(parse_poly("D*K").unwrap().to_string(), "D*K");
    }

    #[test]
    fn elements() {
        let e = parse_element("z1*z2 + z1 + z2").unwrap();
        assert_eq!(e.degree(), 2);
        assert_eq!(e.to_string(), "[2] z1*z2 + z1 + z2");
        assert_eq!(parse_element(&e.to_string()).unwrap(), e);
        assert_eq!(parse_element("[1] 1").unwrap(), ShuffleElement::one_in(1));
        assert_eq!(parse_element("1").unwrap(), ShuffleElement::unit());
        assert!(matches!(parse_element("z1^2*z2"), Err(Error::NotSymmetricElement(0))));
        assert!(parse_element("[1] z2").is_err());
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "z0", "x1", "(z1", "z1 +", "z1 / z2", "z1 / 0", "z1 ^ z2", "[x] 1", "[2 1", "z1 $"] {
            assert!(parse_poly(bad).is_err() || parse_element(bad).is_err(), "{bad}");
        }
        assert_eq!(parse_element("1").unwrap().eval(&crate::shuffle::Point::a2(q(2), q(3), vec![])).unwrap(), q(1));
    }
}
