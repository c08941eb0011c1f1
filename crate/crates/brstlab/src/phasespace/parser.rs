//! Recursive-descent parser for the expression grammar accepted by the CLI:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' signed-int)?
//! atom   := 'z' | 'w' | 'p' | 'J' | 'x' int | 'p' int | rational | 'i' | '(' expr ')'
//! ```
//!
//! Which atoms are admissible depends on the phase space: `z w p J` on the
//! torus, `x<j>`/`p<j>` on the flat spaces, only constants on the point.

use crate::error::{Error, Result};
use crate::phasespace::{PhaseFunction, Space};
use crate::scalars::{Payload, Rat, Scalar};

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    space: Space,
}

/// Parse an expression into a function on the given space.
pub fn parse_expr(input: &str, space: Space) -> Result<PhaseFunction> {
    let mut p = Parser {
        input: input.as_bytes(),
        pos: 0,
        space,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(Error::Parse(format!(
            "unexpected trailing input at byte {}: `{}`",
            p.pos,
            &input[p.pos..]
        )));
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expr(&mut self) -> Result<PhaseFunction> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<PhaseFunction> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PhaseFunction> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.signed_int()?;
            return pow(&base, exp);
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let digits = self.digits()?;
        let v: i64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent `{digits}`")))?;
        Ok(if neg { -v } else { v })
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse(format!("expected digits at byte {start}")));
        }
        Ok(std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn atom(&mut self) -> Result<PhaseFunction> {
        let c = self
            .peek()
            .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        match c {
            b'(' => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.bump() != Some(b')') {
                    return Err(Error::Parse("expected `)`".into()));
                }
                Ok(inner)
            }
            b'i' => {
                self.pos += 1;
                Ok(PhaseFunction::constant(self.space, Scalar::i()))
            }
            b'0'..=b'9' => {
                let num = self.digits()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.digits()?;
                    let d: i64 = den
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad denominator `{den}`")))?;
                    if d == 0 {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    let n: i64 = num
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad numerator `{num}`")))?;
                    Ok(PhaseFunction::constant(
                        self.space,
                        Scalar::from_rat(Rat::new(n.into(), d.into())),
                    ))
                } else {
                    let n: i64 = num
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad integer `{num}`")))?;
                    Ok(PhaseFunction::constant(self.space, Scalar::from_int(n)))
                }
            }
            b'z' | b'w' | b'J' => {
                self.pos += 1;
                if self.space != Space::Torus {
                    return Err(Error::Parse(format!(
                        "variable `{}` only exists on the torus",
                        c as char
                    )));
                }
                let pos = match c {
                    b'z' => 0,
                    b'w' => 1,
                    _ => 3,
                };
                Ok(PhaseFunction::coordinate(Space::Torus, pos))
            }
            b'x' | b'p' => {
                self.pos += 1;
                let has_index = self
                    .input
                    .get(self.pos)
                    .is_some_and(|d| d.is_ascii_digit());
                match (self.space, c, has_index) {
                    (Space::Torus, b'p', false) => {
                        Ok(PhaseFunction::coordinate(Space::Torus, 2))
                    }
                    (Space::Flat { d }, _, true) => {
                        let idx: usize = self
                            .digits()?
                            .parse()
                            .map_err(|_| Error::Parse("bad variable index".into()))?;
                        if idx == 0 || idx > d {
                            return Err(Error::Parse(format!(
                                "variable index {idx} out of range 1..={d}"
                            )));
                        }
                        let pos = if c == b'x' { idx - 1 } else { d + idx - 1 };
                        Ok(PhaseFunction::coordinate(self.space, pos))
                    }
                    _ => Err(Error::Parse(format!(
                        "variable `{}` not admissible on {:?}",
                        c as char, self.space
                    ))),
                }
            }
            other => Err(Error::Parse(format!(
                "unexpected character `{}` at byte {}",
                other as char, self.pos
            ))),
        }
    }
}

fn pow(base: &PhaseFunction, exp: i64) -> Result<PhaseFunction> {
    if exp == 0 {
        return Ok(PhaseFunction::one(base.space()));
    }
    let factor = if exp < 0 { base.try_inv()? } else { base.clone() };
    let mut acc = factor.clone();
    for _ in 1..exp.unsigned_abs() {
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_expressions() {
        let f = parse_expr("z^2*w^-1*p + 3/2*J - i", Space::Torus).unwrap();
        assert_eq!(f.coeff(&vec![2, -1, 1, 0]), Scalar::one());
        assert_eq!(f.coeff(&vec![0, 0, 0, 1]), Scalar::from_ratio(3, 2));
        assert_eq!(f.coeff(&vec![0, 0, 0, 0]), -Scalar::i());
    }

    #[test]
    fn flat_expressions() {
        let space = Space::Flat { d: 2 };
        let f = parse_expr("x1*p2^2 - 4", space).unwrap();
        assert_eq!(f.coeff(&vec![1, 0, 0, 2]), Scalar::one());
        assert_eq!(f.coeff(&vec![0, 0, 0, 0]), Scalar::from_int(-4));
        assert!(parse_expr("z", space).is_err());
        assert!(parse_expr("x3", space).is_err());
    }

    #[test]
    fn parenthesized_and_negative_powers() {
        let f = parse_expr("(z + z^-1)^2", Space::Torus).unwrap();
        assert_eq!(f.coeff(&vec![2, 0, 0, 0]), Scalar::one());
        assert_eq!(f.coeff(&vec![0, 0, 0, 0]), Scalar::from_int(2));
        assert_eq!(f.coeff(&vec![-2, 0, 0, 0]), Scalar::one());
        // negative power of a non-monomial is rejected
        assert!(parse_expr("(1 + z)^-1", Space::Torus).is_err());
        // p is not invertible in the polynomial class
        assert!(parse_expr("p^-1", Space::Torus).is_err());
    }

    #[test]
    fn trailing_garbage_rejected() {
        assert!(parse_expr("z )", Space::Torus).is_err());
    }
}
