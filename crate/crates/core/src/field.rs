//! The base field: the rationals or a simple extension `Q[t]/(p(t))`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qpoly::{self, QPoly};

/// `Q[t]/(p(t))` with `p` monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    modulus: QPoly,
    irreducibility_verified: bool,
}

impl NumberField {
    /// Validates a defining polynomial given constant term first.
    pub fn new(modulus: QPoly) -> Result<Self> {
        let mut m = modulus;
        qpoly::trim(&mut m);
        let deg = qpoly::degree(&m).unwrap_or(0);
        if deg < 2 {
            return Err(Error::InvalidField(format!(
                "defining polynomial must have degree at least 2, got {deg}"
            )));
        }
        if !m[deg].is_one() {
            return Err(Error::InvalidField("defining polynomial must be monic".into()));
        }
        if let Some(root) = qpoly::rational_roots(&m).first() {
            return Err(Error::InvalidField(format!(
                "defining polynomial has the rational root {root}"
            )));
        }
        // A quartic or higher may still factor into pieces without rational roots.
        Ok(NumberField {
            modulus: m,
            irreducibility_verified: deg <= 3,
        })
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    pub fn irreducibility_verified(&self) -> bool {
        self.irreducibility_verified
    }

    fn reduce(&self, mut a: QPoly) -> QPoly {
        qpoly::trim(&mut a);
        if a.len() > self.degree() {
            a = qpoly::divrem(&a, &self.modulus).1;
        }
        a
    }
}

/// Which field the computation runs over.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum FieldSpec {
    #[default]
    Rationals,
    NumberField(Arc<NumberField>),
}

impl FieldSpec {
    pub fn number_field(modulus: QPoly) -> Result<Self> {
        Ok(FieldSpec::NumberField(Arc::new(NumberField::new(modulus)?)))
    }

    /// The class of `t`, or `None` over the rationals.
    pub fn generator(&self) -> Option<Scalar> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::NumberField(nf) => Some(Scalar::from_residue(
                vec![BigRational::zero(), BigRational::one()],
                nf,
            )),
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, FieldSpec::Rationals)
    }

    pub fn as_number_field(&self) -> Option<&Arc<NumberField>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::NumberField(nf) => Some(nf),
        }
    }

    /// The defining polynomial in text form, `None` over the rationals.
    pub fn minpoly_text(&self) -> Option<String> {
        self.as_number_field().map(|nf| format_qpoly(nf.modulus(), "t"))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::NumberField(nf) => write!(f, "QQ[t]/({})", format_qpoly(nf.modulus(), "t")),
        }
    }
}

/// An element of a number field of degree at least two that is not rational.
#[derive(Debug, Clone)]
pub struct AlgElem {
    coeffs: QPoly,
    field: Arc<NumberField>,
}

impl AlgElem {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }
}

impl PartialEq for AlgElem {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_field(&self.field, &other.field)
    }
}

impl Eq for AlgElem {}

impl Hash for AlgElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || a.modulus == b.modulus
}

/// An exact element of the base field.
///
/// Elements of a number field that happen to be rational are always stored
/// as `Rat`, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Alg(AlgElem),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::Rat(BigRational::from_integer(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_residue(coeffs: QPoly, field: &Arc<NumberField>) -> Self {
        let c = field.reduce(coeffs);
        Self::canonical(c, field)
    }

    fn canonical(c: QPoly, field: &Arc<NumberField>) -> Self {
        match c.len() {
            0 => Scalar::zero(),
            1 => Scalar::Rat(c.into_iter().next().unwrap()),
            _ => Scalar::Alg(AlgElem {
                coeffs: c,
                field: field.clone(),
            }),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Alg(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Alg(_) => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Alg(_) => None,
        }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Alg(a) => Some(&a.field),
        }
    }

    /// Residue coefficients, constant term first (length 0 for zero).
    pub fn residue(&self) -> QPoly {
        match self {
            Scalar::Rat(r) if r.is_zero() => Vec::new(),
            Scalar::Rat(r) => vec![r.clone()],
            Scalar::Alg(a) => a.coeffs.clone(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) if r.is_zero() => None,
            Scalar::Rat(r) => Some(Scalar::Rat(r.recip())),
            Scalar::Alg(a) => {
                let (g, s, _) = qpoly::ext_gcd(&a.coeffs, &a.field.modulus);
                if g.len() != 1 {
                    return None;
                }
                Some(Scalar::from_residue(s, &a.field))
            }
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Largest bit length among numerators and denominators.
    pub fn bit_height(&self) -> u64 {
        let h = |r: &BigRational| r.numer().bits().max(r.denom().bits());
        match self {
            Scalar::Rat(r) => h(r),
            Scalar::Alg(a) => a.coeffs.iter().map(h).max().unwrap_or(0),
        }
    }

    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }

    /// Sign used to print `a - b` instead of `a + -b`.
    fn is_negative_display(&self) -> bool {
        self.is_negative_rational()
    }

    /// Whether printing needs parentheses when used as a coefficient.
    pub fn is_compound(&self) -> bool {
        matches!(self, Scalar::Alg(_))
    }
}

fn binary_op(a: &Scalar, b: &Scalar, op: fn(&QPoly, &QPoly) -> QPoly) -> (QPoly, Arc<NumberField>) {
    let field = match (a, b) {
        (Scalar::Alg(x), Scalar::Alg(y)) => {
            assert!(
                same_field(&x.field, &y.field),
                "scalars from different number fields were combined"
            );
            x.field.clone()
        }
        (Scalar::Alg(x), _) => x.field.clone(),
        (_, Scalar::Alg(y)) => y.field.clone(),
        _ => unreachable!(),
    };
    (op(&a.residue(), &b.residue()), field)
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => {
                let (c, field) = binary_op(self, rhs, |x, y| qpoly::add(x, y));
                Scalar::canonical(c, &field)
            }
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            _ => {
                let (c, field) = binary_op(self, rhs, |x, y| qpoly::sub(x, y));
                Scalar::canonical(c, &field)
            }
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Scalar::Rat(x), Scalar::Alg(a)) | (Scalar::Alg(a), Scalar::Rat(x)) => {
                if x.is_zero() {
                    Scalar::zero()
                } else {
                    Scalar::Alg(AlgElem {
                        coeffs: qpoly::scale(&a.coeffs, x),
                        field: a.field.clone(),
                    })
                }
            }
            _ => {
                let (c, field) = binary_op(self, rhs, |x, y| qpoly::mul(x, y));
                Scalar::from_residue(c, &field)
            }
        }
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(x) => Scalar::Rat(-x),
            Scalar::Alg(a) => Scalar::Alg(AlgElem {
                coeffs: qpoly::neg(&a.coeffs),
                field: a.field.clone(),
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rat(r)
    }
}

/// A total order used only to make outputs deterministic.
impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Rat(_), Scalar::Alg(_)) => Ordering::Less,
            (Scalar::Alg(_), Scalar::Rat(_)) => Ordering::Greater,
            (Scalar::Alg(a), Scalar::Alg(b)) => {
                a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| {
                    a.coeffs.iter().rev().cmp(b.coeffs.iter().rev())
                })
            }
        }
    }
}

pub(crate) fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Formats a univariate rational polynomial, highest degree first.
pub fn format_qpoly(p: &[BigRational], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coef = format_rational(&a);
        match i {
            0 => out.push_str(&coef),
            _ => {
                if !a.is_one() {
                    out.push_str(&coef);
                    out.push('*');
                }
                out.push_str(var);
                if i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", format_rational(r)),
            Scalar::Alg(a) => write!(f, "({})", format_qpoly(&a.coeffs, "t")),
        }
    }
}

impl Scalar {
    /// Display helper that reports whether a leading minus was emitted.
    pub(crate) fn split_sign(&self) -> (bool, Scalar) {
        if self.is_negative_display() {
            (true, -self)
        } else {
            (false, self.clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(coeffs: &[i64]) -> Arc<NumberField> {
        let m = coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        Arc::new(NumberField::new(m).unwrap())
    }

    #[test]
    fn cyclotomic_generator_cubes_to_one() {
        let k = field(&[1, 1, 1]);
        let t = FieldSpec::NumberField(k).generator().unwrap();
        assert_eq!(t.pow(3), Scalar::one());
        let tt = &t * &t;
        assert_eq!(&(&tt + &t) + &Scalar::one(), Scalar::zero());
    }

    #[test]
    fn inverse_in_quadratic_field() {
        let k = field(&[-2, 0, 1]);
        let t = FieldSpec::NumberField(k).generator().unwrap();
        let x = &t + &Scalar::one();
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, Scalar::one());
        assert_eq!(y.to_string(), "(t - 1)");
    }

    #[test]
    fn rejects_reducible_quadratic() {
        let m = [-1i64, 0, 1].iter().map(|&c| BigRational::from_integer(c.into())).collect();
        assert!(matches!(NumberField::new(m), Err(Error::InvalidField(_))));
    }

    #[test]
    fn rational_display() {
        assert_eq!(Scalar::from_frac(-6, 8).to_string(), "-3/4");
        assert_eq!(Scalar::from_int(5).to_string(), "5");
    }
}
