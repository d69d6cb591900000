//! Text grammar for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants (elements of the coefficient
//! field), so `3/4*x` and `(t + 1)/(t - 1)*x` parse but `x/y` does not.

use thiserror::Error;

use super::field::Field;
use super::polynomial::{Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("division by a non-constant expression at position {pos}")]
    NonConstantDivisor { pos: usize },
    #[error("division by zero at position {pos}")]
    DivisionByZero { pos: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(num_bigint::BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = bytes[start..i].iter().collect();
            out.push((Tok::Int(s.parse().unwrap()), start));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(bytes[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else if c == '\u{2212}' {
            // unicode minus sign
            out.push((Tok::Op('-'), i));
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a, F> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    ring: &'a Ring,
    _f: std::marker::PhantomData<F>,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial<F>, ParseError> {
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

    fn term(&mut self) -> Result<Polynomial<F>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let pos = self.here();
                self.pos += 1;
                let d = self.unary()?;
                if !d.is_constant() {
                    return Err(ParseError::NonConstantDivisor { pos });
                }
                let c = d.constant_term();
                if c.is_zero() {
                    return Err(ParseError::DivisionByZero { pos });
                }
                acc = acc.scale(&c.inverse());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial<F>, ParseError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial<F>, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let pos = self.here();
            match self.toks.get(self.pos).cloned() {
                Some((Tok::Int(n), _)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| ParseError::Syntax {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    Ok(base.pow(e))
                }
                _ => Err(ParseError::Syntax {
                    pos,
                    msg: "expected a non-negative integer exponent".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial<F>, ParseError> {
        let pos = self.here();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Int(n), _)) => {
                self.pos += 1;
                Ok(Polynomial::constant(F::from_rational(
                    &super::field::Rational::from_integer(n),
                )))
            }
            Some((Tok::Ident(name), _)) => {
                self.pos += 1;
                if let Some(i) = self.ring.index_of(&name) {
                    return Ok(Polynomial::var(i));
                }
                if self.ring.param() == Some(name.as_str()) {
                    if let Some(t) = F::parameter() {
                        return Ok(Polynomial::constant(t));
                    }
                }
                Err(ParseError::UnknownVariable { name, pos })
            }
            Some((Tok::Op('('), _)) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(ParseError::Syntax {
                        pos: self.here(),
                        msg: "expected `)`".into(),
                    });
                }
                Ok(inner)
            }
            Some((Tok::Op(c), _)) => Err(ParseError::Syntax {
                pos,
                msg: format!("unexpected `{c}`"),
            }),
            None => Err(ParseError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parse `text` as a polynomial in the variables of `ring`.
pub fn parse_polynomial<F: Field>(text: &str, ring: &Ring) -> Result<Polynomial<F>, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser::<F> {
        toks,
        pos: 0,
        end: text.chars().count(),
        ring,
        _f: std::marker::PhantomData,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::Syntax {
            pos: p.here(),
            msg: "unexpected trailing input".into(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Rational, RationalFunction};

    fn ring() -> std::sync::Arc<Ring> {
        Ring::new(&["x", "y", "z", "w"])
    }

    fn p(s: &str) -> Polynomial<Rational> {
        parse_polynomial(s, &ring()).unwrap()
    }

    #[test]
    fn reads_binomial() {
        let f = p("x*z - y^2");
        assert_eq!(f.len(), 2);
        assert_eq!(f.display(&ring()).to_string(), "-y^2 + x*z");
    }

    #[test]
    fn zero_is_empty() {
        assert!(p("0").is_zero());
        assert!(p("x - x").is_zero());
    }

    #[test]
    fn square_identity() {
        assert_eq!(p("(x+y)^2 - x^2 - 2*x*y"), p("y^2"));
    }

    #[test]
    fn rational_literals_and_unary_minus() {
        assert_eq!(p("3/4*x"), p("x*3/4"));
        assert_eq!(p("-x^2"), -&p("x^2"));
        assert_eq!(p("-(x)"), -&p("x"));
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        assert_eq!(
            parse_polynomial::<Rational>("x + q", &r),
            Err(ParseError::UnknownVariable {
                name: "q".into(),
                pos: 4
            })
        );
        assert!(matches!(
            parse_polynomial::<Rational>("x +* y", &r),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_polynomial::<Rational>("(x + y", &r),
            Err(ParseError::Syntax { .. })
        ));
        assert_eq!(
            parse_polynomial::<Rational>("x/y", &r),
            Err(ParseError::NonConstantDivisor { pos: 1 })
        );
        assert_eq!(
            parse_polynomial::<Rational>("x/0", &r),
            Err(ParseError::DivisionByZero { pos: 1 })
        );
    }

    #[test]
    fn parameter_is_a_coefficient() {
        let r = Ring::with_param(&["x", "y"], "t");
        let f: Polynomial<RationalFunction> = parse_polynomial("t*x + y/(t+1)", &r).unwrap();
        assert_eq!(f.len(), 2);
        let back: Polynomial<RationalFunction> = parse_polynomial(&f.display(&r).to_string(), &r).unwrap();
        assert_eq!(back, f);
        // over the rationals the parameter is unknown
        assert!(matches!(
            parse_polynomial::<Rational>("t*x", &r),
            Err(ParseError::UnknownVariable { .. })
        ));
    }
}
