//! Sparse polynomials in three variables over the base field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::univariate::BinaryForm;

/// Exponent vector `(e_x, e_y, e_z)`.
///
/// The `Ord` impl is graded-lexicographic with `x > y > z`: higher total
/// degree first, then the larger power of `x`, then of `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Monomial([a, b, c])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0[0] + self.0[1] + self.0[2]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial([
            other.0[0] - self.0[0],
            other.0[1] - self.0[1],
            other.0[2] - self.0[2],
        ])
    }

    /// Position inside `monomial_basis(self.degree())`.
    pub fn index(&self) -> usize {
        let k = self.degree() as usize;
        let a = self.0[0] as usize;
        let b = self.0[1] as usize;
        (k - a) * (k - a + 1) / 2 + (k - a - b)
    }

    /// Inverse of [`Monomial::index`].
    pub fn from_index(k: u32, idx: usize) -> Monomial {
        let k = k as usize;
        // idx = m(m+1)/2 + j with m = k - a and 0 <= j <= m
        let mut m = 0usize;
        while (m + 1) * (m + 2) / 2 <= idx {
            m += 1;
        }
        let j = idx - m * (m + 1) / 2;
        let a = k - m;
        let b = m - j;
        Monomial([a as u32, b as u32, (k - a - b) as u32])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.0[0].cmp(&other.0[0]))
            .then(self.0[1].cmp(&other.0[1]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Number of monomials of degree `k` in three variables.
pub fn dim_s(k: i64) -> usize {
    if k < 0 {
        0
    } else {
        let k = k as usize;
        (k + 1) * (k + 2) / 2
    }
}

/// All monomials of degree `k`, largest first in graded-lex order.
pub fn monomial_basis(k: i64) -> Vec<Monomial> {
    if k < 0 {
        return Vec::new();
    }
    let k = k as u32;
    let mut out = Vec::with_capacity(dim_s(k as i64));
    for a in (0..=k).rev() {
        for b in (0..=k - a).rev() {
            out.push(Monomial([a, b, k - a - b]));
        }
    }
    out
}

pub const XYZ: [&str; 3] = ["x", "y", "z"];
pub const ABC: [&str; 3] = ["a", "b", "c"];

/// A polynomial in three variables; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(i: usize) -> Self {
        Poly::term(Monomial::var(i), Scalar::one())
    }

    pub fn x() -> Self {
        Poly::var(0)
    }

    pub fn y() -> Self {
        Poly::var(1)
    }

    pub fn z() -> Self {
        Poly::var(2)
    }

    /// Linear form `a x + b y + c z`.
    pub fn linear(coords: &[Scalar; 3]) -> Self {
        let mut p = Poly::zero();
        for (i, c) in coords.iter().enumerate() {
            p.add_term(Monomial::var(i), c.clone());
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                let s = &*e + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Degree of a homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        Ok(self.degree())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(n, v)| (n.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(Scalar::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = *m;
            n.0[i] -= 1;
            out.add_term(n, c * &Scalar::from_int(e as i64));
        }
        out
    }

    /// `(f_x, f_y, f_z)` of a homogeneous polynomial of degree at least 3.
    pub fn partials(&self) -> Result<(Poly, Poly, Poly)> {
        match self.homogeneous_degree()? {
            Some(d) if d >= 3 => Ok((self.partial(0), self.partial(1), self.partial(2))),
            Some(d) => Err(Error::DegreeTooSmall(d)),
            None => Err(Error::DegreeTooSmall(0)),
        }
    }

    pub fn eval(&self, pt: &[Scalar; 3]) -> Scalar {
        let mut powers: [Vec<Scalar>; 3] = Default::default();
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                let e = m.0[i] as usize;
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                if pw.is_empty() {
                    pw.push(Scalar::one());
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap() * &pt[i];
                    pw.push(next);
                }
                t = &t * &pw[e];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Exact quotient `self / f`.
    pub fn exact_divide(&self, f: &Poly) -> Result<Poly> {
        let (lm, lc) = match f.leading() {
            Some((m, c)) => (*m, c.clone()),
            None => return Err(Error::Precondition("division by the zero polynomial".into())),
        };
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            if !lm.divides(&m) {
                return Err(Error::NotDivisible);
            }
            let qm = lm.quotient_of(&m);
            let qc = &c * &lc_inv;
            rem = &rem - &f.mul_monomial(&qm).scale(&qc);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Substitutes `x_i -> subs[i]`.
    pub fn compose(&self, subs: &[Poly; 3]) -> Poly {
        let mut cache: [Vec<Poly>; 3] = Default::default();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for i in 0..3 {
                let e = m.0[i] as usize;
                if e == 0 {
                    continue;
                }
                let pw = &mut cache[i];
                if pw.is_empty() {
                    pw.push(Poly::constant(Scalar::one()));
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap() * &subs[i];
                    pw.push(next);
                }
                t = &t * &pw[e];
            }
            out = &out + &t;
        }
        out
    }

    /// `p(sP + tQ)` as a binary form in `(s, t)`.
    pub fn substitute_line(&self, p: &[Scalar; 3], q: &[Scalar; 3]) -> Result<BinaryForm> {
        if proportional(p, q) {
            return Err(Error::DegenerateLine);
        }
        let deg = self.homogeneous_degree()?.unwrap_or(0) as usize;
        let lin: Vec<BinaryForm> = (0..3)
            .map(|i| BinaryForm::new(vec![p[i].clone(), q[i].clone()]))
            .collect();
        let mut cache: [Vec<BinaryForm>; 3] = Default::default();
        let mut out = BinaryForm::new(vec![Scalar::zero(); deg + 1]);
        for (m, c) in &self.terms {
            let mut t = BinaryForm::new(vec![c.clone()]);
            for i in 0..3 {
                let e = m.0[i] as usize;
                let pw = &mut cache[i];
                if pw.is_empty() {
                    pw.push(BinaryForm::new(vec![Scalar::one()]));
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&lin[i]);
                    pw.push(next);
                }
                t = t.mul(&pw[e]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Coefficients of a homogeneous polynomial of degree `k` as a sparse
    /// vector over `monomial_basis(k)`, sorted by index.
    pub fn to_sparse(&self, k: u32) -> Vec<(usize, Scalar)> {
        let mut v: Vec<(usize, Scalar)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == k)
            .map(|(m, c)| (m.index(), c.clone()))
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }

    pub fn from_sparse(k: u32, v: &[(usize, Scalar)]) -> Poly {
        Poly::from_terms(v.iter().map(|(i, c)| (Monomial::from_index(k, *i), c.clone())))
    }

    pub fn from_dense(k: u32, v: &[Scalar]) -> Poly {
        Poly::from_terms(
            v.iter()
                .enumerate()
                .map(|(i, c)| (Monomial::from_index(k, i), c.clone())),
        )
    }

    /// Multiplies by the unique scalar that makes the leading coefficient 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Canonical representative of the curve: over QQ the primitive integer
    /// multiple with positive leading coefficient, otherwise the monic one.
    pub fn primitive(&self) -> Poly {
        let coeffs: Vec<Scalar> = self.terms().map(|(_, c)| c.clone()).collect();
        match crate::linalg::matrix::primitive_integer_vector(&coeffs) {
            Some(ints) => Poly::from_terms(
                self.terms()
                    .map(|(m, _)| *m)
                    .zip(ints)
                    .map(|(m, c)| (m, Scalar::from_bigint(c))),
            ),
            None => self.monic(),
        }
    }

    /// Whether every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }

    pub fn max_bit_height(&self) -> u64 {
        self.terms.values().map(|c| c.bit_height()).max().unwrap_or(0)
    }

    pub fn display_with(&self, vars: &[&str; 3]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms() {
            let (neg, a) = c.split_sign();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = format_monomial(m, vars);
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&a.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

fn format_monomial(m: &Monomial, vars: &[&str; 3]) -> String {
    let mut parts = Vec::new();
    for i in 0..3 {
        match m.0[i] {
            0 => {}
            1 => parts.push(vars[i].to_string()),
            e => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&XYZ))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, e) in &rhs.terms {
                out.add_term(m.mul(n), c * e);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);

/// Whether two coordinate triples define the same projective point (or one is zero).
pub fn proportional(p: &[Scalar; 3], q: &[Scalar; 3]) -> bool {
    (0..3).all(|i| (0..3).all(|j| (&p[i] * &q[j]) == (&p[j] * &q[i])))
}

/// Scales a nonzero triple so that its first nonzero coordinate is 1.
pub fn normalize_point(p: &[Scalar; 3]) -> [Scalar; 3] {
    match p.iter().find(|c| !c.is_zero()) {
        None => p.clone(),
        Some(c) => {
            let inv = c.inv().unwrap();
            [&p[0] * &inv, &p[1] * &inv, &p[2] * &inv]
        }
    }
}

/// Cofactor expansion of a 3x3 determinant whose rows are each homogeneous.
pub fn det3(rows: &[[Poly; 3]; 3]) -> Result<Poly> {
    for (i, row) in rows.iter().enumerate() {
        let mut deg = None;
        for e in row {
            match (e.homogeneous_degree()?, deg) {
                (None, _) => {}
                (Some(k), None) => deg = Some(k),
                (Some(k), Some(d)) if k != d => {
                    return Err(Error::IncompatibleDegrees(format!(
                        "row {i} mixes degrees {d} and {k}"
                    )))
                }
                _ => {}
            }
        }
    }
    let m = rows;
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| -> Poly {
        &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
    };
    let t0 = &m[0][0] * &minor(1, 2, 1, 2);
    let t1 = &m[0][1] * &minor(1, 2, 0, 2);
    let t2 = &m[0][2] * &minor(1, 2, 0, 1);
    Ok(&(&t0 - &t1) + &t2)
}
