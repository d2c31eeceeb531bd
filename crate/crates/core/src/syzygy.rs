//! Jacobian syzygies: the graded module `AR(f)`, its minimal generators, the
//! Koszul submodule and the free / nearly free classification.
//!
//! A vector of `S_k^3` is indexed as `w * dim S_k + i`, where `w` is the
//! component and `i` the monomial index in degree `k`.

use std::fmt;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::graded::shift_vector;
use crate::jacobian::JacobianData;
use crate::linalg::echelon::{sparse_from_dense, Echelon, SparseVec};
use crate::linalg::modular::modular_rank_rows;
use crate::linalg::ExactMatrix;
use crate::poly::{dim_s, monomial_basis, Monomial, Poly};

/// `(a, b, c)` with `a f_x + b f_y + c f_z = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syzygy {
    degree: u32,
    comps: [Poly; 3],
}

impl Syzygy {
    /// Checks homogeneity and the relation before accepting the triple.
    pub fn new(partials: &[Poly; 3], comps: [Poly; 3]) -> Result<Self> {
        let mut degree = None;
        for c in &comps {
            if let Some(k) = c.homogeneous_degree()? {
                if degree.is_some_and(|d| d != k) {
                    return Err(Error::IncompatibleDegrees("syzygy components".into()));
                }
                degree = Some(k);
            }
        }
        let degree = degree.ok_or_else(|| Error::Precondition("zero syzygy".into()))?;
        let rel = &(&(&comps[0] * &partials[0]) + &(&comps[1] * &partials[1])) + &(&comps[2] * &partials[2]);
        if !rel.is_zero() {
            return Err(Error::Precondition("triple is not a Jacobian syzygy".into()));
        }
        Ok(Syzygy { degree, comps })
    }

    pub fn from_vector(partials: &[Poly; 3], k: u32, v: &[(usize, crate::field::Scalar)]) -> Result<Self> {
        let n = dim_s(k as i64);
        let mut parts: [SparseVec; 3] = Default::default();
        for (i, c) in v {
            parts[i / n].push((i % n, c.clone()));
        }
        let comps = parts.map(|p| Poly::from_sparse(k, &p));
        Syzygy::new(partials, comps)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[Poly; 3] {
        &self.comps
    }

    pub fn to_vector(&self) -> SparseVec {
        let n = dim_s(self.degree as i64);
        let mut out = SparseVec::new();
        for (w, c) in self.comps.iter().enumerate() {
            for (i, s) in c.to_sparse(self.degree) {
                out.push((w * n + i, s));
            }
        }
        out
    }

    pub fn scale(&self, c: &crate::field::Scalar) -> Syzygy {
        Syzygy {
            degree: self.degree,
            comps: self.comps.clone().map(|p| p.scale(c)),
        }
    }

    /// Sum of two syzygies of the same degree; `None` if it vanishes.
    pub fn add(&self, other: &Syzygy) -> Option<Syzygy> {
        assert_eq!(self.degree, other.degree);
        let comps = [0, 1, 2].map(|w| &self.comps[w] + &other.comps[w]);
        if comps.iter().all(|p| p.is_zero()) {
            return None;
        }
        Some(Syzygy {
            degree: self.degree,
            comps,
        })
    }
}

impl fmt::Display for Syzygy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {}; {}", self.comps[0], self.comps[1], self.comps[2])
    }
}

/// Multiplies a vector of `S_k^3` by a monomial.
pub fn shift_triple(v: &[(usize, crate::field::Scalar)], k: u32, m: &Monomial) -> SparseVec {
    let n = dim_s(k as i64);
    let n2 = dim_s((k + m.degree()) as i64);
    let mut parts: [SparseVec; 3] = Default::default();
    for (i, c) in v {
        parts[i / n].push((i % n, c.clone()));
    }
    let mut out = SparseVec::new();
    for (w, p) in parts.iter().enumerate() {
        for (i, c) in shift_vector(p, k, m) {
            out.push((w * n2 + i, c));
        }
    }
    out
}

/// `ar(f)_k = 3 dim S_k - dim (J_f)_{k+d-1}`.
pub fn ar_dim(jd: &JacobianData, k: i64) -> usize {
    if k < 0 {
        return 0;
    }
    3 * dim_s(k) - jd.j_dim(k + jd.d as i64 - 1)
}

/// Matrix of `(a,b,c) -> a f_x + b f_y + c f_z` from `S_k^3` to `S_{k+d-1}`.
pub fn jacobian_map_matrix(jd: &JacobianData, k: u32) -> ExactMatrix {
    let n = dim_s(k as i64);
    let target = k + jd.d - 1;
    let cols: Vec<SparseVec> = (0..3 * n)
        .map(|col| {
            let m = Monomial::from_index(k, col % n);
            let mut v = jd.partials()[col / n].mul_monomial(&m).to_sparse(target);
            v.sort_by_key(|e| e.0);
            v
        })
        .collect();
    ExactMatrix::from_sparse_cols(dim_s(target as i64), &cols)
}

/// Echelon basis of `AR(f)_k` inside `S_k^3`.
pub fn ar_piece(jd: &JacobianData, k: u32) -> Echelon {
    let m = jacobian_map_matrix(jd, k);
    Echelon::from_vectors(m.cols(), m.kernel_basis().iter().map(|v| sparse_from_dense(v)))
}

/// `mdr(f)`, the least degree of a nonzero syzygy.
pub fn mdr(jd: &JacobianData) -> Result<u32> {
    if ar_dim(jd, 0) > 0 {
        return Err(Error::MdrZero);
    }
    // the Koszul relations live in degree d-1
    (1..jd.d)
        .find(|&k| ar_dim(jd, k as i64) > 0)
        .ok_or_else(|| Error::InternalInconsistency("no syzygy up to degree d-1".into()))
}

/// `tau_max(d, r) = (d-1)^2 - r(d-1-r)`.
pub fn tau_max(d: u32, r: u32) -> i64 {
    let (d, r) = (d as i64, r as i64);
    (d - 1) * (d - 1) - r * (d - 1 - r)
}

/// The values of `ν` predicted from `(d, r, τ)`; one entry per applicable formula.
pub fn predicted_nu(d: u32, r: u32, tau: usize) -> Vec<i64> {
    let mut out = Vec::new();
    let (di, ri, t) = (d as i64, r as i64, tau as i64);
    if 2 * ri < di {
        out.push(tau_max(d, r) - t);
    }
    if 2 * ri >= di - 2 {
        let q = 3 * (di - 1) * (di - 1);
        out.push((q + 3) / 4 - t);
    }
    out
}

fn binom2(m: i64) -> i64 {
    if m >= 0 {
        m * (m - 1) / 2
    } else {
        0
    }
}

/// `ar_{k+1} + ar_{d-5-k} + C(d+k+2, 2) - 3 C(k+3, 2) = n_{d+k} + τ`.
pub fn dimension_identity(jd: &JacobianData, k: i64) -> Check {
    let d = jd.d as i64;
    let lhs = ar_dim(jd, k + 1) as i64 + ar_dim(jd, d - 5 - k) as i64 + binom2(d + k + 2) - 3 * binom2(k + 3);
    let rhs = jd.n_dim(d + k) as i64 + jd.tau as i64;
    Check::eq(format!("dimension identity at k = {k}"), lhs, rhs)
}

/// `ν` against each closed formula that applies to `(d, r)`.
pub fn nu_formula_checks(jd: &JacobianData, r: u32) -> Vec<Check> {
    predicted_nu(jd.d, r, jd.tau)
        .into_iter()
        .map(|p| Check::eq("nu from (d, r, tau)", jd.nu() as i64, p))
        .collect()
}

/// Free, nearly free, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Free(u32, u32),
    NearlyFree(u32, u32),
    Neither(usize),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Free(a, b) => write!(f, "free with exponents ({a},{b})"),
            Classification::NearlyFree(a, b) => write!(f, "nearly free with exponents ({a},{b})"),
            Classification::Neither(nu) => write!(f, "neither free nor nearly free (nu = {nu})"),
        }
    }
}

/// The syzygy module up to the generator bound.
#[derive(Clone, Debug)]
pub struct SyzygyModule {
    pub d: u32,
    pub r: u32,
    /// `ar(f)_k` for `0 <= k <= bound + 2`.
    pub ar_dims: Vec<usize>,
    /// Minimal generators, non-decreasing in degree.
    pub generators: Vec<Syzygy>,
    /// The bound actually used (after a possible automatic raise).
    pub bound: u32,
    /// `dim AR(f)_k / KR(f)_k` for `0 <= k <= 2d`.
    pub koszul_quotient_dims: Vec<usize>,
    /// `None` when `AR = KR` in every degree up to `2d` (smooth curves).
    pub mdr_prime: Option<u32>,
}

impl SyzygyModule {
    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    /// `ct(f) = d - 2 + mdr'(f)`.
    pub fn ct(&self) -> Option<u32> {
        self.mdr_prime.map(|m| self.d - 2 + m)
    }
}

fn multiples(gens: &[Syzygy], k: u32) -> Vec<SparseVec> {
    let mut rows = Vec::new();
    for g in gens.iter().filter(|g| g.degree < k) {
        let v = g.to_vector();
        for m in monomial_basis((k - g.degree) as i64) {
            rows.push(shift_triple(&v, g.degree, &m));
        }
    }
    rows.extend(gens.iter().filter(|g| g.degree == k).map(|g| g.to_vector()));
    rows
}

/// Dimension of the span of `rows`, given that it cannot exceed `upper`.
/// A modular rank reaching `upper` is exact; otherwise the exact rank is computed.
fn span_dim_bounded(rows: &[SparseVec], ncols: usize, upper: usize) -> usize {
    if let Some(e) = modular_rank_rows(rows, ncols, 2) {
        if e.rank == upper {
            return upper;
        }
    }
    Echelon::from_vectors(ncols, rows.iter().cloned()).rank()
}

/// Syzygies of degree `k` completing `span(rows)` to `AR(f)_k`.
fn new_generators(jd: &JacobianData, k: u32, rows: &[SparseVec]) -> Result<Vec<Syzygy>> {
    let n3 = 3 * dim_s(k as i64);
    let span = Echelon::from_vectors(n3, rows.iter().cloned());
    let free = span.standard_indices();
    // syzygies vanishing on the pivots of `span` complement it inside AR(f)_k
    let full = jacobian_map_matrix(jd, k);
    let all: Vec<usize> = (0..full.rows()).collect();
    let restricted = full.submatrix(&all, &free);
    let mut out = Vec::new();
    for v in restricted.kernel_basis() {
        let mut sv: SparseVec = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| (free[t], c.clone()))
            .collect();
        sv.sort_by_key(|e| e.0);
        out.push(Syzygy::from_vector(jd.partials(), k, &sv)?);
    }
    let expected = ar_dim(jd, k as i64) - span.rank();
    if out.len() != expected {
        return Err(Error::InternalInconsistency(format!(
            "found {} new generators in degree {k}, expected {expected}",
            out.len()
        )));
    }
    // echelonize for deterministic representatives
    let e = Echelon::from_vectors(n3, out.iter().map(|g| g.to_vector()));
    e.rows_by_pivot()
        .into_iter()
        .map(|r| Syzygy::from_vector(jd.partials(), k, r))
        .collect()
}

fn extend_generators(jd: &JacobianData, gens: &mut Vec<Syzygy>, from: u32, to: u32) -> Result<()> {
    for k in from..=to {
        let ar = ar_dim(jd, k as i64);
        if ar == 0 {
            continue;
        }
        let rows = multiples(gens, k);
        if span_dim_bounded(&rows, 3 * dim_s(k as i64), ar) == ar {
            continue;
        }
        gens.extend(new_generators(jd, k, &rows)?);
    }
    Ok(())
}

fn window_spanned(jd: &JacobianData, gens: &[Syzygy], bound: u32) -> bool {
    (bound + 1..=bound + 2).all(|k| {
        let ar = ar_dim(jd, k as i64);
        span_dim_bounded(&multiples(gens, k), 3 * dim_s(k as i64), ar) == ar
    })
}

/// Minimal generators of `AR(f)` up to `bound` (default `2d - 2`), verified
/// on the two degrees above the bound; the bound is doubled once if needed.
pub fn minimal_generators(jd: &JacobianData, bound: Option<u32>) -> Result<(Vec<Syzygy>, u32)> {
    let mut bound = bound.unwrap_or(2 * jd.d - 2);
    let mut gens = Vec::new();
    extend_generators(jd, &mut gens, 0, bound)?;
    if !window_spanned(jd, &gens, bound) {
        let raised = 2 * bound.max(1);
        extend_generators(jd, &mut gens, bound + 1, raised)?;
        if !window_spanned(jd, &gens, raised) {
            return Err(Error::GeneratorBoundExceeded(raised));
        }
        bound = raised;
    }
    Ok((gens, bound))
}

/// `dim KR(f)_k`, the span of the monomial multiples of the Koszul relations.
pub fn koszul_dim(jd: &JacobianData, k: u32) -> usize {
    let d = jd.d;
    if k + 1 < d {
        return 0;
    }
    let [fx, fy, fz] = jd.partials().clone();
    let z = Poly::zero();
    let rels = [
        [fy.clone(), -&fx, z.clone()],
        [fz.clone(), z.clone(), -&fx],
        [z, fz, -&fy],
    ];
    let e = k + 1 - d;
    let n = dim_s(k as i64);
    let mut rows = Vec::new();
    for m in monomial_basis(e as i64) {
        for rel in &rels {
            let mut v = SparseVec::new();
            for (w, c) in rel.iter().enumerate() {
                for (i, s) in c.mul_monomial(&m).to_sparse(k) {
                    v.push((w * n + i, s));
                }
            }
            rows.push(v);
        }
    }
    // the second Koszul syzygy bounds the rank from above
    let upper = 3 * dim_s(e as i64) - dim_s(e as i64 - d as i64 + 1);
    span_dim_bounded(&rows, 3 * n, upper)
}

/// `(dim AR_k / KR_k for 0 <= k <= 2d, mdr')`.
pub fn koszul_data(jd: &JacobianData, r: u32) -> (Vec<usize>, Option<u32>) {
    let quot: Vec<usize> = (0..=2 * jd.d)
        .map(|k| ar_dim(jd, k as i64) - koszul_dim(jd, k))
        .collect();
    let mdr_prime = if r + 1 < jd.d {
        Some(r)
    } else {
        quot.iter().position(|&q| q > 0).map(|k| k as u32)
    };
    (quot, mdr_prime)
}

impl SyzygyModule {
    pub fn new(jd: &JacobianData, bound: Option<u32>) -> Result<Self> {
        let r = mdr(jd)?;
        let (generators, bound) = minimal_generators(jd, bound)?;
        let ar_dims = (0..=bound + 2).map(|k| ar_dim(jd, k as i64)).collect();
        let (koszul_quotient_dims, mdr_prime) = koszul_data(jd, r);
        Ok(SyzygyModule {
            d: jd.d,
            r,
            ar_dims,
            generators,
            bound,
            koszul_quotient_dims,
            mdr_prime,
        })
    }

    /// The echelon basis vector of `AR(f)_r` with the smallest pivot.
    pub fn default_rho1(&self, jd: &JacobianData) -> Result<Syzygy> {
        let e = ar_piece(jd, self.r);
        let row = e.rows_by_pivot().into_iter().next().ok_or(Error::MdrZero)?;
        Syzygy::from_vector(jd.partials(), self.r, row)
    }

    /// Classification by `ν`, cross-checked against the generator count.
    pub fn classify(&self, nu: usize) -> Result<Classification> {
        let degs = self.generator_degrees();
        let d = self.d;
        match nu {
            0 => {
                if degs.len() != 2 || degs[0] + degs[1] + 1 != d {
                    return Err(Error::InternalInconsistency(format!(
                        "nu = 0 but generator degrees are {degs:?}"
                    )));
                }
                Ok(Classification::Free(degs[0], degs[1]))
            }
            1 => {
                if degs.len() != 3 || degs[1] != degs[2] || degs[0] + degs[1] != d {
                    return Err(Error::InternalInconsistency(format!(
                        "nu = 1 but generator degrees are {degs:?}"
                    )));
                }
                Ok(Classification::NearlyFree(degs[0], degs[1]))
            }
            _ => {
                if degs.len() == 2 {
                    return Err(Error::InternalInconsistency(format!(
                        "two generators but nu = {nu}"
                    )));
                }
                Ok(Classification::Neither(nu))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_poly;

    fn jd(s: &str) -> JacobianData {
        let f = parse_poly(s, &FieldSpec::Rationals).unwrap();
        JacobianData::new(&f, &FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn triangle_is_free() {
        let j = jd("x*y*z");
        let m = SyzygyModule::new(&j, None).unwrap();
        assert_eq!(m.r, 1);
        assert_eq!(m.generator_degrees(), vec![1, 1]);
        assert_eq!(m.classify(j.nu()).unwrap(), Classification::Free(1, 1));
        assert_eq!(m.mdr_prime, Some(1));
    }

    #[test]
    fn smooth_quartic_has_only_koszul_syzygies() {
        let j = jd("x^4 + y^4 + z^4");
        let m = SyzygyModule::new(&j, None).unwrap();
        assert_eq!(m.r, 3);
        assert_eq!(m.generator_degrees(), vec![3, 3, 3]);
        assert_eq!(m.mdr_prime, None);
        assert_eq!(predicted_nu(4, 3, 0), vec![7]);
    }

    #[test]
    fn rejects_bad_triples() {
        let j = jd("x*y*z");
        let bad = [Poly::x(), Poly::y(), Poly::zero()];
        assert!(Syzygy::new(j.partials(), bad).is_err());
        let good = [Poly::x(), -&Poly::y(), Poly::zero()];
        assert!(Syzygy::new(j.partials(), good).is_ok());
    }
}
