//! Univariate polynomials and binary forms over the base field, with root
//! finding in the base field.

use num_rational::BigRational;
use num_traits::One;

use crate::field::{FieldSpec, NumberField, Scalar};
use crate::qpoly::{self, QPoly};

/// Dense univariate polynomial, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn monic(&self) -> UniPoly {
        match self.coeffs.last() {
            None => UniPoly::default(),
            Some(lc) => {
                let inv = lc.inv().unwrap();
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn divrem(&self, b: &UniPoly) -> (UniPoly, UniPoly) {
        let db = b.degree().expect("division by zero polynomial");
        let inv = b.coeffs[db].inv().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![Scalar::zero(); r.len().saturating_sub(db)];
        while r.len() > db {
            let dr = r.len() - 1;
            let c = &r[dr] * &inv;
            if !c.is_zero() {
                for j in 0..=db {
                    let t = &c * &b.coeffs[j];
                    r[dr - db + j] = &r[dr - db + j] - &t;
                }
                q[dr - db] = c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    fn rational_model(&self) -> Option<QPoly> {
        self.coeffs
            .iter()
            .map(|c| c.as_rational().cloned())
            .collect()
    }

    /// Distinct roots lying in the base field.
    ///
    /// Rational roots are always found. Over a quadratic field, roots in the
    /// field are also found: for rational input by matching irreducible
    /// quadratic factors against the field discriminant, otherwise through
    /// the norm polynomial.
    pub fn roots(&self, field: &FieldSpec) -> Vec<Scalar> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        if let Some(q) = self.rational_model() {
            let mut out: Vec<Scalar> = qpoly::rational_roots(&q).into_iter().map(Scalar::Rat).collect();
            if let Some(nf) = field.as_number_field() {
                if nf.degree() == 2 {
                    for (b, c) in qpoly::quadratic_factors(&q, &[nf.modulus().to_vec()]) {
                        out.extend(quadratic_roots_in_field(&b, &c, nf));
                    }
                }
            }
            out.sort();
            out.dedup();
            return out;
        }
        let nf = self.coeffs.iter().find_map(|c| c.field()).unwrap().clone();
        if nf.degree() != 2 {
            return Vec::new();
        }
        // p * conj(p) has rational coefficients and contains every root of p.
        let conj = UniPoly::new(self.coeffs.iter().map(|c| conjugate(c, &nf)).collect());
        let norm = self.mul(&conj);
        let mut out: Vec<Scalar> = norm
            .roots(field)
            .into_iter()
            .filter(|r| self.eval(r).is_zero())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::default();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

/// Galois conjugate in a quadratic field `t^2 + p t + q`: `t -> -p - t`.
fn conjugate(c: &Scalar, nf: &std::sync::Arc<NumberField>) -> Scalar {
    match c {
        Scalar::Rat(_) => c.clone(),
        Scalar::Alg(a) => {
            let m = nf.modulus();
            let u = &a.coeffs()[0];
            let v = &a.coeffs()[1];
            // u + v t -> u + v(-p - t) = (u - v p) - v t
            Scalar::from_residue(vec![u - v * &m[1], -v.clone()], nf)
        }
    }
}

/// Roots of `x^2 + b x + c` inside a quadratic field, if they lie there.
fn quadratic_roots_in_field(b: &BigRational, c: &BigRational, nf: &std::sync::Arc<NumberField>) -> Vec<Scalar> {
    let m = nf.modulus();
    let four = BigRational::from_integer(4.into());
    let disc = b * b - &four * c;
    let disc_k = &m[1] * &m[1] - &four * &m[0];
    let ratio = &disc / &disc_k;
    let Some(w) = qpoly::rational_sqrt(&ratio) else {
        return Vec::new();
    };
    // sqrt(disc_k) = 2t + p
    let two = BigRational::from_integer(2.into());
    let sqrt_k = Scalar::from_residue(vec![m[1].clone(), two.clone()], nf);
    let half = BigRational::one() / &two;
    let base = Scalar::Rat(-b * &half);
    let off = &sqrt_k * &Scalar::Rat(&w * &half);
    vec![&base + &off, &base - &off]
}

/// Binary form `sum coeffs[i] s^(n-i) t^i` of degree `n = coeffs.len() - 1`.
///
/// Trailing zero coefficients are kept: the degree is part of the data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<Scalar>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        BinaryForm { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BinaryForm::new(out)
    }

    /// Sum of two forms of the same degree.
    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "binary forms of different degrees");
        BinaryForm::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Multiplicity of the root `(1:0)`, i.e. the power of `t` dividing the form.
    fn t_order(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len())
    }

    /// Dehomogenization at `s = 1` as a polynomial in `t`, after removing
    /// the factor `t^ord`.
    fn affine_part(&self) -> UniPoly {
        UniPoly::new(self.coeffs[self.t_order()..].to_vec())
    }
}

impl UniPoly {
    /// Multiplicity of `r` as a root (0 if it is not a root).
    pub fn root_multiplicity(&self, r: &Scalar) -> usize {
        let lin = UniPoly::new(vec![-r, Scalar::one()]);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, rem) = p.divrem(&lin);
            if !rem.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }
}

impl UniPoly {
    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from_int(i as i64))
                .collect(),
        )
    }
}

impl BinaryForm {
    /// Number of distinct roots over the algebraic closure.
    pub fn distinct_roots(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        let aff = UniPoly::new(self.coeffs.clone());
        let n = aff.degree().unwrap_or(0);
        let sf = n - aff.gcd(&aff.derivative()).degree().unwrap_or(0);
        sf + usize::from(self.degree() > n)
    }
}

impl BinaryForm {
    /// Roots `(s:t)` in the base field with multiplicities; `(1:t0)` for the
    /// roots of the dehomogenization at `s = 1`, then `(0:1)`.
    pub fn roots(&self, field: &FieldSpec) -> Vec<([Scalar; 2], usize)> {
        let aff = UniPoly::new(self.coeffs.clone());
        let mut out: Vec<([Scalar; 2], usize)> = aff
            .roots(field)
            .into_iter()
            .map(|t0| {
                let m = aff.root_multiplicity(&t0);
                ([Scalar::one(), t0], m)
            })
            .collect();
        let at_infinity = self.degree() - aff.degree().unwrap_or(0);
        if !self.is_zero() && at_infinity > 0 {
            out.push(([Scalar::zero(), Scalar::one()], at_infinity));
        }
        out
    }
}

/// Greatest common divisor of binary forms, with monic dehomogenization;
/// `None` if all forms vanish.
pub fn binary_gcd(forms: &[BinaryForm]) -> Option<BinaryForm> {
    let mut g: Option<UniPoly> = None;
    let mut s_mult = usize::MAX;
    for f in forms.iter().filter(|f| !f.is_zero()) {
        let h = UniPoly::new(f.coeffs.clone());
        s_mult = s_mult.min(f.degree() - h.degree().unwrap());
        g = Some(match g {
            None => h.monic(),
            Some(prev) => prev.gcd(&h),
        });
    }
    let g = g?;
    let mut coeffs = g.coeffs().to_vec();
    coeffs.extend(std::iter::repeat_n(Scalar::zero(), s_mult));
    Some(BinaryForm::new(coeffs))
}

/// Degree of the gcd of a family of binary forms; `None` if all are zero.
pub fn gcd_degree(forms: &[BinaryForm]) -> Option<usize> {
    gcd_forms(forms).map(|(ord_t, g)| ord_t + g.degree().unwrap_or(0))
}

/// Greatest common divisor as `t^k * g(t)` at `s = 1`, together with the
/// multiplicity of `s` (the point `(0:1)`) folded in: forms are considered
/// projectively, so the returned polynomial is in `u = t/s` and the number
/// of extra factors `s` is accounted for separately.
pub fn gcd_forms(forms: &[BinaryForm]) -> Option<(usize, UniPoly)> {
    let nonzero: Vec<&BinaryForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return None;
    }
    // Write each form as s^{a} t^{b} h(s,t) with h(1,0), h(0,1) nonzero.
    let mut min_t = usize::MAX;
    let mut min_s = usize::MAX;
    let mut g: Option<UniPoly> = None;
    for f in nonzero {
        let b = f.t_order();
        let a = f.coeffs.iter().rev().position(|c| !c.is_zero()).unwrap();
        min_t = min_t.min(b);
        min_s = min_s.min(a);
        let h = f.affine_part();
        g = Some(match g {
            None => h.monic(),
            Some(prev) => prev.gcd(&h),
        });
    }
    let g = g.unwrap();
    // The affine part in t already drops factors of t; the s-power shows up
    // as a drop in degree, which we add back through `min_s`.
    Some((min_t + min_s, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn u(v: &[i64]) -> UniPoly {
        UniPoly::new(v.iter().map(|&c| s(c)).collect())
    }

    #[test]
    fn gcd_over_rationals() {
        let a = u(&[-1, 0, 1]);
        let b = u(&[1, 1]);
        assert_eq!(a.gcd(&b), u(&[1, 1]));
    }

    #[test]
    fn quadratic_field_roots_of_cyclotomic() {
        let nf = Arc::new(NumberField::new(vec![
            BigRational::one(),
            BigRational::one(),
            BigRational::one(),
        ]).unwrap());
        let k = FieldSpec::NumberField(nf);
        let p = u(&[1, 1, 1]).mul(&u(&[-3, 1]));
        let roots = p.roots(&k);
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert!(p.eval(r).is_zero());
        }
        // x^2 - x + 1 also splits over Q(sqrt(-3)).
        assert_eq!(u(&[1, -1, 1]).roots(&k).len(), 2);
        // x^2 + 1 does not.
        assert!(u(&[1, 0, 1]).roots(&k).is_empty());
        // A polynomial with coefficients in the field.
        let t = k.generator().unwrap();
        let lin = UniPoly::new(vec![-&t, s(1)]);
        assert_eq!(lin.roots(&k), vec![t]);
    }

    #[test]
    fn binary_gcd_degree_counts_points_at_both_ends() {
        // s^2 t (s - t) and s t^2 (s - t) share s t (s - t).
        let f = BinaryForm::new(vec![s(0), s(1), s(-1), s(0)]);
        let g = BinaryForm::new(vec![s(0), s(0), s(1), s(-1)]);
        let f = f.mul(&BinaryForm::new(vec![s(1), s(0)]));
        let g = g.mul(&BinaryForm::new(vec![s(1), s(0)]));
        assert_eq!(gcd_degree(&[f, g]), Some(3));
    }
}
