//! Scalar and polynomial grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' digits)?
//! atom   := number | name | '(' expr ')'
//! number := digits ('/' digits)? 'i'?  |  'i'
//! ```
//!
//! Names are resolved by the caller; `i` is the imaginary unit unless it
//! names a coordinate.

use gcgeom::{Coeff, Poly, Qi, Q};
use num_bigint::BigInt;

/// Parse failure with a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at offset {offset} in {input:?}")]
pub struct GrammarError {
    pub input: String,
    pub offset: usize,
    pub message: String,
}

struct Parser<'a, F> {
    src: &'a str,
    pos: usize,
    resolve: F,
}

impl<'a, F: Fn(&str) -> Option<Poly>> Parser<'a, F> {
    fn err(&self, message: impl Into<String>) -> GrammarError {
        GrammarError {
            input: self.src.to_string(),
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn expr(&mut self) -> Result<Poly, GrammarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.plus(&self.term()?);
            } else if self.eat('-') {
                acc = acc.minus(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, GrammarError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = acc.times(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, GrammarError> {
        if self.eat('-') {
            return Ok(self.unary()?.negate());
        }
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let e = self
                .digits()
                .ok_or_else(|| self.err("expected an exponent"))?;
            let e: u32 = e.parse().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, GrammarError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.number().map(Poly::constant),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.src[self.pos..]
                    .starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                if let Some(p) = (self.resolve)(name) {
                    Ok(p)
                } else if name == "i" {
                    Ok(Poly::constant(Qi::i()))
                } else {
                    self.pos = start;
                    Err(self.err(format!("unknown name {name:?}")))
                }
            }
            Some(c) => Err(self.err(format!("unexpected character {c:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Qi, GrammarError> {
        let num: BigInt = self.digits().expect("digit").parse().expect("digits");
        let mut value = Q::from_integer(num);
        if self.src[self.pos..].starts_with('/') {
            self.pos += 1;
            let den: BigInt = self
                .digits()
                .ok_or_else(|| self.err("expected a denominator"))?
                .parse()
                .expect("digits");
            if den == BigInt::from(0) {
                return Err(self.err("zero denominator"));
            }
            value /= Q::from_integer(den);
        }
        let rest = &self.src[self.pos..];
        if rest.starts_with('i')
            && !rest[1..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
            return Ok(Qi::new(Q::from_integer(0.into()), value));
        }
        Ok(Qi::real(value))
    }
}

/// Parses a polynomial, resolving names with `resolve`.
pub fn parse_poly(src: &str, resolve: impl Fn(&str) -> Option<Poly>) -> Result<Poly, GrammarError> {
    let mut p = Parser {
        src,
        pos: 0,
        resolve,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parses a constant such as `3/2`, `-1/2+1/3i` or `(1-i)*2`.
pub fn parse_scalar(src: &str) -> Result<Qi, GrammarError> {
    let p = parse_poly(src, |_| None)?;
    Ok(p.as_constant().expect("no names resolve"))
}
