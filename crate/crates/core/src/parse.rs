//! Text grammar for polynomials, field generators, lines and syzygies.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' unary) | ('/' INT))*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | 'x' | 'y' | 'z' | 't' | '(' expr ')'
//! ```
//!
//! Juxtaposition is rejected, so `2x` is an error and must be written `2*x`.
//! The generator `t` is only accepted when a number field is active.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::poly::{Monomial, Poly};

pub const MAX_INPUT_LEN: usize = 1 << 16;
pub const MAX_EXPONENT: u32 = 255;
pub const MAX_DEGREE: u32 = 64;
pub const MAX_DEPTH: usize = 256;
pub const MAX_DIGITS: usize = 400;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Variables x, y, z; `t` denotes the field generator.
    Curve,
    /// The single variable `t`, stored in the x slot.
    MinPoly,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
    mode: Mode,
    field: &'a FieldSpec,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, mode: Mode, field: &'a FieldSpec) -> Result<Self> {
        if src.len() > MAX_INPUT_LEN {
            return Err(Error::Parse {
                pos: MAX_INPUT_LEN,
                msg: "input too long".into(),
            });
        }
        Ok(Parser {
            src: src.as_bytes(),
            pos: 0,
            depth: 0,
            mode,
            field,
        })
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {
                self.err("implicit multiplication is not allowed; use '*'")
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
        }
    }

    fn check_degree(&self, p: &Poly) -> Result<()> {
        match p.degree() {
            Some(d) if d > MAX_DEGREE => self.err(format!("degree {d} exceeds the limit {MAX_DEGREE}")),
            _ => Ok(()),
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.err("expression nested too deeply");
        }
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = &acc + &t;
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc = &acc - &t;
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                let u = self.unary()?;
                acc = &acc * &u;
                self.check_degree(&acc)?;
            } else if self.eat(b'/') {
                self.skip_ws();
                let start = self.pos;
                let n = self.integer()?;
                if n.is_zero() {
                    self.pos = start;
                    return self.err("division by zero");
                }
                acc = acc.scale(&Scalar::Rat(BigRational::new(1.into(), n)));
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.err("expression nested too deeply");
        }
        let out = if self.eat(b'-') {
            -&self.unary()?
        } else if self.eat(b'+') {
            self.unary()?
        } else {
            self.power()?
        };
        self.depth -= 1;
        Ok(out)
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let e = self.integer()?;
            let e = match e.to_u32() {
                Some(e) if e <= MAX_EXPONENT => e,
                _ => {
                    self.pos = start;
                    return self.err(format!("exponent must be an integer in 0..={MAX_EXPONENT}"));
                }
            };
            if let Some(d) = base.degree() {
                if d as u64 * e as u64 > MAX_DEGREE as u64 {
                    self.pos = start;
                    return self.err(format!("degree exceeds the limit {MAX_DEGREE}"));
                }
            }
            if base.num_terms() > 1 && e > 1 {
                // bound the size of constant powers such as (10^100)^255
                let bits = base.max_bit_height() * e as u64;
                if bits > 1 << 16 {
                    return self.err("coefficient too large");
                }
            }
            if base.degree() == Some(0) && base.max_bit_height() * e as u64 > 1 << 16 {
                return self.err("coefficient too large");
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        if self.pos - start > MAX_DIGITS {
            self.pos = start;
            return self.err("integer literal too long");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Poly::constant(Scalar::from_bigint(n)))
            }
            Some(c) => {
                let var = match (self.mode, c) {
                    (Mode::Curve, b'x') => Some(Poly::x()),
                    (Mode::Curve, b'y') => Some(Poly::y()),
                    (Mode::Curve, b'z') => Some(Poly::z()),
                    (Mode::Curve, b't') => match self.field.generator() {
                        Some(g) => Some(Poly::constant(g)),
                        None => return self.err("'t' requires a number field"),
                    },
                    (Mode::MinPoly, b't') => Some(Poly::x()),
                    _ => None,
                };
                match var {
                    Some(v) => {
                        self.pos += 1;
                        if self.src.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') {
                            return self.err("unknown identifier");
                        }
                        Ok(v)
                    }
                    None => self.err(format!("unexpected character '{}'", c as char)),
                }
            }
        }
    }
}

/// Parses a polynomial in `x, y, z` over `field`.
pub fn parse_poly(src: &str, field: &FieldSpec) -> Result<Poly> {
    let mut p = Parser::new(src, Mode::Curve, field)?;
    let out = p.expr()?;
    p.finish()?;
    Ok(out)
}

/// Parses a constant expression, possibly involving `t`.
pub fn parse_scalar(src: &str, field: &FieldSpec) -> Result<Scalar> {
    let p = parse_poly(src, field)?;
    match p.degree() {
        None => Ok(Scalar::zero()),
        Some(0) => Ok(p.coeff(&Monomial::ONE)),
        Some(_) => Err(Error::Parse {
            pos: 0,
            msg: "expected a constant".into(),
        }),
    }
}

/// Parses a defining polynomial in `t`, e.g. `t^2+t+1`, into a field.
pub fn parse_field(src: &str) -> Result<FieldSpec> {
    let q = FieldSpec::Rationals;
    let mut p = Parser::new(src, Mode::MinPoly, &q)?;
    let poly = p.expr()?;
    p.finish()?;
    let deg = poly.degree().unwrap_or(0) as usize;
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    for (m, c) in poly.terms() {
        coeffs[m.0[0] as usize] = c.as_rational().cloned().unwrap();
    }
    FieldSpec::number_field(coeffs)
}

fn split_top_level(src: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in src.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&src[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&src[start..]);
    parts
}

fn shift_err(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + offset,
            msg,
        },
        other => other,
    }
}

/// Parses `a,b,c` into three scalars (not all zero).
pub fn parse_line(src: &str, field: &FieldSpec) -> Result<[Scalar; 3]> {
    let parts = split_top_level(src, ',');
    if parts.len() != 3 {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("expected three comma-separated coordinates, got {}", parts.len()),
        });
    }
    let mut out: [Scalar; 3] = Default::default();
    let mut offset = 0;
    for (i, part) in parts.iter().enumerate() {
        out[i] = parse_scalar(part, field).map_err(|e| shift_err(e, offset))?;
        offset += part.len() + 1;
    }
    if out.iter().all(|c| c.is_zero()) {
        return Err(Error::Parse {
            pos: 0,
            msg: "line coordinates are all zero".into(),
        });
    }
    Ok(out)
}

/// Parses `a;b;c` into three polynomials.
pub fn parse_syzygy(src: &str, field: &FieldSpec) -> Result<[Poly; 3]> {
    let parts = split_top_level(src, ';');
    if parts.len() != 3 {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("expected three semicolon-separated components, got {}", parts.len()),
        });
    }
    let mut out: [Poly; 3] = Default::default();
    let mut offset = 0;
    for (i, part) in parts.iter().enumerate() {
        out[i] = parse_poly(part, field).map_err(|e| shift_err(e, offset))?;
        offset += part.len() + 1;
    }
    Ok(out)
}
