//! Recursive-descent parser for the textual polynomial syntax.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor (('*'|'/') factor)*
//! factor  := '-' factor | primary ['^' integer]
//! primary := integer | identifier | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. Division is only allowed by nonzero constants,
//! which is how rational coefficients such as `3/2*z` are written.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{Monomial, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at position {position}")]
    UnexpectedChar { found: char, position: usize },
    #[error("unexpected end of input at position {position}")]
    UnexpectedEnd { position: usize },
    #[error("unknown variable {name:?} at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("division by a non-constant polynomial at position {position}")]
    NonConstantDivisor { position: usize },
    #[error("division by zero at position {position}")]
    DivisionByZero { position: usize },
    #[error("exponent out of range at position {position}")]
    BadExponent { position: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::UnexpectedChar { position, .. }
            | ParseError::UnexpectedEnd { position }
            | ParseError::UnknownVariable { position, .. }
            | ParseError::NonConstantDivisor { position }
            | ParseError::DivisionByZero { position }
            | ParseError::BadExponent { position } => *position,
        }
    }
}

struct Parser<'a, N: AsRef<str>> {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
    names: &'a [N],
}

pub(super) fn parse_poly<N: AsRef<str>>(text: &str, names: &[N]) -> Result<Poly, ParseError> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut p = Parser {
        chars,
        pos: 0,
        len: text.len(),
        names,
    };
    let out = p.expr()?;
    match p.peek() {
        None => Ok(out),
        Some((position, found)) => Err(ParseError::UnexpectedChar { found, position }),
    }
}

impl<N: AsRef<str>> Parser<'_, N> {
    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.pos).copied()
    }

    fn here(&self) -> usize {
        self.peek().map(|(i, _)| i).unwrap_or(self.len)
    }

    fn eat(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some((_, d)) if d == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc += &self.term()?;
            } else if self.eat('-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if matches!(self.peek(), Some((_, '/'))) {
                let position = self.here();
                self.pos += 1;
                let divisor = self.factor()?;
                let c = divisor
                    .constant_value()
                    .ok_or(ParseError::NonConstantDivisor { position })?;
                if c.is_zero() {
                    return Err(ParseError::DivisionByZero { position });
                }
                acc = acc.scale(&(Rational::one() / c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        let base = self.primary()?;
        if self.eat('^') {
            let position = self.here();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.unexpected());
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| ParseError::BadExponent { position })?;
            let mut out = Poly::one(self.nvars());
            for _ in 0..e {
                out = &out * &base;
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            None => Err(ParseError::UnexpectedEnd { position: self.len }),
            Some((_, '(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.unexpected());
                }
                Ok(inner)
            }
            Some((_, c)) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(Poly::constant(self.nvars(), Rational::from_integer(n)))
            }
            Some((position, c)) if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some((_, c)) = self.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        name.push(c);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                match self.names.iter().position(|n| n.as_ref() == name) {
                    Some(j) => Ok(Poly::term(
                        Monomial::var(self.nvars(), j),
                        Rational::one(),
                    )),
                    None => Err(ParseError::UnknownVariable { name, position }),
                }
            }
            Some(_) => Err(self.unexpected()),
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some((_, c)) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some((position, found)) => ParseError::UnexpectedChar { found, position },
            None => ParseError::UnexpectedEnd { position: self.len },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{integer, rational};

    const XYZ: [&str; 3] = ["x", "y", "z"];

    #[test]
    fn parses_rational_coefficients() {
        let f = Poly::parse("x^2*y - 3/2*z", &XYZ).unwrap();
        assert_eq!(f.coeff(&Monomial::new(vec![2, 1, 0])), integer(1));
        assert_eq!(f.coeff(&Monomial::new(vec![0, 0, 1])), rational(-3, 2));
        assert_eq!(f.num_terms(), 2);
    }

    #[test]
    fn whitespace_insensitive() {
        let a = Poly::parse(" x ^ 2 *y-3 / 2 * z ", &XYZ).unwrap();
        let b = Poly::parse("x^2*y-3/2*z", &XYZ).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parentheses_and_powers() {
        let a = Poly::parse("(x+y)^2", &XYZ).unwrap();
        let b = Poly::parse("x^2 + 2*x*y + y^2", &XYZ).unwrap();
        assert_eq!(a, b);
        assert_eq!(Poly::parse("-x^2", &XYZ).unwrap(), -Poly::parse("x^2", &XYZ).unwrap());
        assert!(Poly::parse("x^0", &XYZ).unwrap().is_constant());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            Poly::parse("x + w", &XYZ),
            Err(ParseError::UnknownVariable {
                name: "w".into(),
                position: 4
            })
        );
        assert_eq!(
            Poly::parse("x +", &XYZ),
            Err(ParseError::UnexpectedEnd { position: 3 })
        );
        assert_eq!(Poly::parse("x / y", &XYZ).unwrap_err().position(), 2);
        assert!(matches!(
            Poly::parse("x/0", &XYZ),
            Err(ParseError::DivisionByZero { .. })
        ));
        assert!(matches!(
            Poly::parse("x $ y", &XYZ),
            Err(ParseError::UnexpectedChar { found: '$', .. })
        ));
        assert!(Poly::parse("(x + y", &XYZ).is_err());
        assert!(Poly::parse("x^", &XYZ).is_err());
    }
}
