//! Text input for polynomials and rational functions.
//!
//! Accepts the canonical output format (`1*h1^2 + -3*h2`, `num / den`) as well as
//! ordinary expressions with `+ - * / ^` and parentheses. `h3` is read as `-h1 - h2`.

use num_bigint::BigInt;

use super::{Polynomial, RationalFunction, SymbolicError, Var, Q};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn err(msg: impl Into<String>) -> SymbolicError {
    SymbolicError::Parse(msg.into())
}

fn tokenize(s: &str) -> Result<Vec<Tok>, SymbolicError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
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
            out.push(Tok::Num(text.parse().map_err(|_| err(format!("bad number `{text}`")))?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(err(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, SymbolicError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, SymbolicError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                acc = acc.div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, SymbolicError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction, SymbolicError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let e: i32 = n.try_into().map_err(|_| err("exponent too large"))?;
                base.pow(if neg { -e } else { e })
            }
            _ => Err(err("expected integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<RationalFunction, SymbolicError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RationalFunction::constant(Q::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "h3" {
                    return Ok(RationalFunction::from_poly(-(Polynomial::var(Var::H1) + Polynomial::var(Var::H2))));
                }
                Ok(RationalFunction::var(name.parse()?))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(err("missing `)`"));
                }
                Ok(inner)
            }
            Some(t) => Err(err(format!("unexpected token {t:?}"))),
            None => Err(err("unexpected end of input")),
        }
    }
}

fn parse_expr(s: &str) -> Result<RationalFunction, SymbolicError> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(format!("trailing input in `{s}`")));
    }
    Ok(v)
}

/// Position of the top-level ` / ` separator of the canonical `num / den` form.
fn split_fraction(s: &str) -> Option<(&str, &str)> {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'/' if depth == 0 && i > 0 && bytes[i - 1] == b' ' && bytes.get(i + 1) == Some(&b' ') => {
                return Some((&s[..i], &s[i + 1..]));
            }
            _ => {}
        }
    }
    None
}

pub fn parse_ratfun(s: &str) -> Result<RationalFunction, SymbolicError> {
    match split_fraction(s) {
        Some((n, d)) => parse_expr(n)?.div(&parse_expr(d)?),
        None => parse_expr(s),
    }
}

pub fn parse_polynomial(s: &str) -> Result<Polynomial, SymbolicError> {
    let r = parse_expr(s)?;
    r.as_polynomial().cloned().ok_or_else(|| err(format!("`{s}` is not a polynomial")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_canonical_text() {
        for s in ["1*h1^2 + -3*h2", "0", "-1/2*hbar*s1 + 7", "1*s0_1*s1_2 + 1*a3"] {
            let p = parse_polynomial(s).unwrap();
            assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
        }
        let r = parse_ratfun("1*h1 + 1*h2 / 2*hbar + 4").unwrap();
        assert_eq!(parse_ratfun(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn h3_is_eliminated() {
        assert_eq!(parse_polynomial("h1 + h2 + h3").unwrap(), Polynomial::zero());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_polynomial("h1 +").is_err());
        assert!(parse_polynomial("x7").is_err());
        assert!(parse_polynomial("1/h1").is_err());
    }
}
