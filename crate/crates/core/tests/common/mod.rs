//! Brute-force reference computations for the Jacobian data of a plane curve.
//!
//! Everything here is deliberately naive: dense rational matrices, plain
//! Gaussian elimination, monomials in a `HashMap`. It shares nothing with the
//! library except the polynomial parser used to read the input.

#![allow(dead_code)]

use std::collections::HashMap;

use logbundle::parse::parse_poly;
use logbundle::FieldSpec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;
type Mono = [u32; 3];
type DensePoly = HashMap<Mono, Q>;

pub fn monomials(k: i64) -> Vec<Mono> {
    let mut out = Vec::new();
    if k < 0 {
        return out;
    }
    let k = k as u32;
    for a in (0..=k).rev() {
        for b in (0..=k - a).rev() {
            out.push([a, b, k - a - b]);
        }
    }
    out
}

fn index_of(k: i64) -> HashMap<Mono, usize> {
    monomials(k).into_iter().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Row-reduced basis of a span, kept as `(pivot, row)` with unit pivots.
#[derive(Clone, Default)]
pub struct Span {
    rows: Vec<(usize, Vec<Q>)>,
}

impl Span {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &mut [Q]) {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &c * r;
                    }
                }
            }
        }
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Q>) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !r.is_zero() {
                        *x -= &c * r;
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

pub fn rank_of(rows: impl IntoIterator<Item = Vec<Q>>) -> usize {
    let mut s = Span::default();
    for r in rows {
        s.insert(r);
    }
    s.rank()
}

/// Kernel of the map sending the `i`-th basis vector to `images[i]`.
pub fn kernel(images: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = images.len();
    let width = images.first().map_or(0, |v| v.len());
    // augment with the identity and reduce
    let mut s = Span::default();
    let mut out = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let mut v = img.clone();
        v.extend((0..n).map(|j| if j == i { Q::one() } else { Q::zero() }));
        s.reduce(&mut v);
        if v[..width].iter().all(|x| x.is_zero()) {
            out.push(v[width..].to_vec());
        } else {
            s.insert(v);
        }
    }
    out
}

pub struct Brute {
    pub d: u32,
    pub partials: [DensePoly; 3],
}

fn mul_mono(p: &DensePoly, m: &Mono) -> DensePoly {
    p.iter()
        .map(|(e, c)| ([e[0] + m[0], e[1] + m[1], e[2] + m[2]], c.clone()))
        .collect()
}

fn to_dense(p: &DensePoly, k: i64) -> Vec<Q> {
    let idx = index_of(k);
    let mut v = vec![Q::zero(); idx.len()];
    for (m, c) in p {
        v[idx[m]] += c;
    }
    v
}

impl Brute {
    pub fn new(src: &str) -> Brute {
        let f = parse_poly(src, &FieldSpec::Rationals).unwrap();
        let mut terms: DensePoly = HashMap::new();
        for (m, c) in f.terms() {
            terms.insert(m.0, c.as_rational().unwrap().clone());
        }
        let d = terms.keys().next().map(|m| m[0] + m[1] + m[2]).unwrap();
        let partials = [0, 1, 2].map(|i| {
            let mut out = HashMap::new();
            for (m, c) in &terms {
                if m[i] > 0 {
                    let mut e = *m;
                    e[i] -= 1;
                    out.insert(e, c * Q::from_integer(BigInt::from(m[i])));
                }
            }
            out
        });
        Brute { d, partials }
    }

    fn j_span(&self, k: i64) -> Span {
        let mut s = Span::default();
        for p in &self.partials {
            for m in monomials(k - self.d as i64 + 1) {
                s.insert(to_dense(&mul_mono(p, &m), k));
            }
        }
        s
    }

    pub fn j_dim(&self, k: i64) -> usize {
        if k < 0 {
            return 0;
        }
        self.j_span(k).rank()
    }

    pub fn t(&self) -> i64 {
        3 * (self.d as i64 - 2)
    }

    /// `dim S_k / J_k` at a degree well beyond the point where it is constant.
    pub fn tau(&self) -> usize {
        let k = 3 * self.d as i64;
        monomials(k).len() - self.j_dim(k)
    }

    /// `dim (Ĵ_f)_k`: forms `g` with `x^m g, y^m g, z^m g` in `J` in a
    /// degree above `T`, where `J` is already saturated.
    pub fn sat_dim(&self, k: i64) -> usize {
        let top = self.t() + 2;
        if k >= top {
            return self.j_dim(k);
        }
        let m = (top - k) as u32;
        let span = self.j_span(top);
        let rows = monomials(k).into_iter().map(|u| {
            let mut row = Vec::new();
            for w in 0..3 {
                let mut e = u;
                e[w] += m;
                let mut v = to_dense(&HashMap::from([(e, Q::one())]), top);
                span.reduce(&mut v);
                row.extend(v);
            }
            row
        });
        monomials(k).len() - rank_of(rows)
    }

    pub fn n_dim(&self, k: i64) -> usize {
        if k < 0 {
            return 0;
        }
        self.sat_dim(k) - self.j_dim(k)
    }

    pub fn ar_dim(&self, k: i64) -> usize {
        if k < 0 {
            return 0;
        }
        3 * monomials(k).len() - self.j_dim(k + self.d as i64 - 1)
    }

    pub fn mdr(&self) -> u32 {
        (0..).find(|&k| self.ar_dim(k) > 0).unwrap() as u32
    }

    /// Syzygies of degree `k` as vectors of `S_k^3` (component-major).
    pub fn syzygies(&self, k: i64) -> Vec<Vec<Q>> {
        let target = k + self.d as i64 - 1;
        let mut images = Vec::new();
        for p in &self.partials {
            for m in monomials(k) {
                images.push(to_dense(&mul_mono(p, &m), target));
            }
        }
        kernel(&images)
    }

    /// Number of minimal generators of `AR(f)` in degree `k`.
    pub fn generators_in_degree(&self, k: i64) -> usize {
        let lower = self.syzygies(k - 1);
        let n_lo = monomials(k - 1);
        let idx = index_of(k);
        let n_k = idx.len();
        let mut span = Span::default();
        for v in &lower {
            for w in 0..3 {
                let mut e = [0u32; 3];
                e[w] = 1;
                let mut out = vec![Q::zero(); 3 * n_k];
                for (j, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let comp = j / n_lo.len();
                    let m = n_lo[j % n_lo.len()];
                    let shifted = [m[0] + e[0], m[1] + e[1], m[2] + e[2]];
                    out[comp * n_k + idx[&shifted]] += c;
                }
                span.insert(out);
            }
        }
        self.ar_dim(k) - span.rank()
    }

    /// Degrees of the minimal generators up to `max_k`.
    pub fn generator_degrees(&self, max_k: i64) -> Vec<u32> {
        let mut out = Vec::new();
        for k in 0..=max_k {
            out.extend(std::iter::repeat_n(k as u32, self.generators_in_degree(k)));
        }
        out
    }

    /// Multiplication by a linear form `N_s -> N_{s+1}` has full column rank.
    /// Computed as `dim (l Ĵ_s + J_{s+1}) - dim J_{s+1}` against `n_s`.
    pub fn linear_form_injective(&self, s: i64, l: [i64; 3]) -> bool {
        let n_s = self.n_dim(s);
        if n_s == 0 {
            return true;
        }
        // a basis of Ĵ_s: kernel of the saturation test map
        let top = self.t() + 2;
        let m = (top - s) as u32;
        let span_top = self.j_span(top);
        let rows: Vec<Vec<Q>> = monomials(s)
            .into_iter()
            .map(|u| {
                let mut row = Vec::new();
                for w in 0..3 {
                    let mut e = u;
                    e[w] += m;
                    let mut v = to_dense(&HashMap::from([(e, Q::one())]), top);
                    span_top.reduce(&mut v);
                    row.extend(v);
                }
                row
            })
            .collect();
        let sat_basis = kernel(&rows);
        let mons = monomials(s);
        let mut j_next = self.j_span(s + 1);
        let base = j_next.rank();
        for g in sat_basis {
            let mut p: DensePoly = HashMap::new();
            for (i, c) in g.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for w in 0..3 {
                    if l[w] == 0 {
                        continue;
                    }
                    let mut e = mons[i];
                    e[w] += 1;
                    *p.entry(e).or_insert_with(Q::zero) += c * Q::from_integer(BigInt::from(l[w]));
                }
            }
            j_next.insert(to_dense(&p, s + 1));
        }
        j_next.rank() - base == n_s
    }
}

/// A sparse random curve of degree `d`: a few monomials with small nonzero
/// integer coefficients, returned as polynomial text.
pub fn random_curve_text(rng: &mut impl rand::Rng, d: u32) -> String {
    let mons = monomials(d as i64);
    let terms = rng.gen_range(3..=7);
    let mut out = Vec::new();
    for _ in 0..terms {
        let m = mons[rng.gen_range(0..mons.len())];
        let mut c: i64 = rng.gen_range(1..=3);
        if rng.gen_bool(0.5) {
            c = -c;
        }
        out.push(format!("({c})*x^{}*y^{}*z^{}", m[0], m[1], m[2]));
    }
    out.join("+")
}
