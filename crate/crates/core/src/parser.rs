//! Parser for curve polynomials in the two variables `x` and `y`.
//!
//! Grammar, with `*` required between adjacent factors and `/` allowed
//! only inside numeric literals:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Error positions are byte offsets into the source string.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::poly::BivariatePoly;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::X => "'x'".into(),
            Tok::Y => "'y'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

struct Lexed {
    tok: Tok,
    pos: usize,
}

fn tokenize(src: &str) -> Result<Vec<Lexed>> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut idx = 0;
    while idx < bytes.len() {
        let rest = &src[idx..];
        let c = rest.chars().next().expect("index is on a char boundary");
        if c.is_whitespace() {
            idx += c.len_utf8();
            continue;
        }
        if c.is_ascii_digit() {
            let end = rest
                .find(|ch: char| !ch.is_ascii_digit())
                .unwrap_or(rest.len());
            let value: BigInt = rest[..end].parse().expect("digits parse as an integer");
            out.push(Lexed {
                tok: Tok::Int(value),
                pos: idx,
            });
            idx += end;
            continue;
        }
        let tok = match c {
            'x' => Tok::X,
            'y' => Tok::Y,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ if c.is_alphabetic() => {
                return Err(Error::UnsupportedVariable { pos: idx, name: c })
            }
            _ => {
                return Err(Error::Syntax {
                    pos: idx,
                    msg: format!("unexpected character '{c}'"),
                })
            }
        };
        out.push(Lexed { tok, pos: idx });
        idx += c.len_utf8();
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|t| t.tok.clone());
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<BivariatePoly> {
        let mut acc = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivariatePoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.try_mul(&self.factor()?)?;
                }
                Some(Tok::Slash) => {
                    return Err(self.err("'/' is only allowed inside numeric literals like 3/4"))
                }
                Some(Tok::Int(_)) | Some(Tok::X) | Some(Tok::Y) | Some(Tok::LParen) => {
                    return Err(self.err("missing '*' between factors"))
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<BivariatePoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let exp = self.exponent()?;
            return base.try_pow(exp);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let Some(Tok::Int(n)) = self.bump() else {
                    unreachable!("peeked an integer");
                };
                n.to_u32()
                    .ok_or_else(|| self.err("exponent too large"))
            }
            Some(other) => {
                let msg = format!(
                    "expected a nonnegative integer exponent, found {}",
                    other.describe()
                );
                Err(self.err(msg))
            }
            None => Err(self.err("expected an exponent after '^'")),
        }
    }

    fn atom(&mut self) -> Result<BivariatePoly> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(num)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let den_pos = self.pos();
                    match self.bump() {
                        Some(Tok::Int(den)) => {
                            if den.is_zero() {
                                return Err(Error::Syntax {
                                    pos: den_pos,
                                    msg: "zero denominator in literal".into(),
                                });
                            }
                            Ok(BivariatePoly::constant(Rational::from_big(num, den)?))
                        }
                        _ => Err(Error::Syntax {
                            pos: den_pos,
                            msg: "expected an integer denominator after '/'".into(),
                        }),
                    }
                } else {
                    Ok(BivariatePoly::constant(Rational::from_big(
                        num,
                        BigInt::from(1),
                    )?))
                }
            }
            Some(Tok::X) => Ok(BivariatePoly::from_terms([((1, 0), Rational::one())])),
            Some(Tok::Y) => Ok(BivariatePoly::from_terms([((0, 1), Rational::one())])),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    Some(other) => Err(Error::Syntax {
                        pos,
                        msg: format!("expected ')', found {}", other.describe()),
                    }),
                    None => Err(Error::Syntax {
                        pos,
                        msg: "unclosed parenthesis".into(),
                    }),
                }
            }
            Some(other) => Err(Error::Syntax {
                pos,
                msg: format!("expected a number, variable, or '(', found {}", other.describe()),
            }),
            None => Err(Error::Syntax {
                pos,
                msg: "expected a number, variable, or '(' at end of input".into(),
            }),
        }
    }
}

/// Parses a polynomial in `x` and `y` with integer or rational coefficients.
pub fn parse_polynomial(src: &str) -> Result<BivariatePoly> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut parser = Parser {
        toks,
        i: 0,
        end: src.len(),
    };
    let poly = parser.expr()?;
    match parser.peek() {
        None => Ok(poly),
        Some(tok) => {
            let msg = format!("expected '+' or '-', found {}", tok.describe());
            Err(parser.err(msg))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn parses_a_cusp() {
        let p = parse_polynomial("y^2 - x^3").unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(0, 2), r(1));
        assert_eq!(p.coeff(3, 0), r(-1));
    }

    #[test]
    fn parses_products_parens_and_rationals() {
        let p = parse_polynomial("(y - x^2) * (y + x^2) + 1/2 * x").unwrap();
        assert_eq!(p.coeff(0, 2), r(1));
        assert_eq!(p.coeff(4, 0), r(-1));
        assert_eq!(p.coeff(1, 0), Rational::new(1, 2).unwrap());
        assert_eq!(p.coeff(2, 1), r(0));

        let q = parse_polynomial("2/4*x").unwrap();
        assert_eq!(q.coeff(1, 0), Rational::new(1, 2).unwrap());
    }

    #[test]
    fn leading_minus_and_cancellation() {
        let p = parse_polynomial("-x + x").unwrap();
        assert!(p.is_zero());
        let q = parse_polynomial("-(x - y)").unwrap();
        assert_eq!(q.coeff(1, 0), r(-1));
        assert_eq!(q.coeff(0, 1), r(1));
    }

    #[test]
    fn unsupported_variable_reports_position() {
        let err = parse_polynomial("x + z^2").unwrap_err();
        assert_eq!(err, Error::UnsupportedVariable { pos: 4, name: 'z' });
    }

    #[test]
    fn adjacent_factors_need_a_star() {
        let err = parse_polynomial("21x").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                pos: 2,
                msg: "missing '*' between factors".into()
            }
        );
    }

    #[test]
    fn slash_outside_literals_is_rejected() {
        let err = parse_polynomial("x/2").unwrap_err();
        assert!(matches!(err, Error::Syntax { pos: 1, .. }));
    }

    #[test]
    fn exponent_must_be_a_plain_integer() {
        assert!(matches!(
            parse_polynomial("x^(2)").unwrap_err(),
            Error::Syntax { pos: 2, .. }
        ));
        assert!(matches!(
            parse_polynomial("x^-2").unwrap_err(),
            Error::Syntax { pos: 2, .. }
        ));
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(matches!(
            parse_polynomial("").unwrap_err(),
            Error::Syntax { pos: 0, .. }
        ));
        assert!(matches!(
            parse_polynomial("x +").unwrap_err(),
            Error::Syntax { .. }
        ));
        assert!(matches!(
            parse_polynomial("(x").unwrap_err(),
            Error::Syntax { .. }
        ));
        assert!(matches!(
            parse_polynomial("1/0").unwrap_err(),
            Error::Syntax { pos: 2, .. }
        ));
        assert!(matches!(
            parse_polynomial("x ? y").unwrap_err(),
            Error::Syntax { pos: 2, .. }
        ));
    }

    #[test]
    fn parses_the_guiding_example() {
        let src = "x^15 - 21*x^14 + 8*x^13*y - 6*x^13 - 16*x^12*y + 20*x^11*y^2 - x^12 \
                   + 8*x^11*y - 36*x^10*y^2 + 24*x^9*y^3 + 4*x^9*y^2 - 16*x^8*y^3 \
                   + 26*x^7*y^4 - 6*x^6*y^4 + 8*x^5*y^5 + 4*x^3*y^6 - y^8";
        let p = parse_polynomial(src).unwrap();
        assert_eq!(p.num_terms(), 17);
        assert_eq!(p.coeff(15, 0), r(1));
        assert_eq!(p.coeff(14, 0), r(-21));
        assert_eq!(p.coeff(13, 1), r(8));
        assert_eq!(p.coeff(11, 1), r(8));
        assert_eq!(p.coeff(12, 1), r(-16));
        assert_eq!(p.coeff(0, 8), r(-1));
        assert_eq!(p.coeff(3, 6), r(4));
        assert_eq!(p.multiplicity(), Some(8));
    }
}
