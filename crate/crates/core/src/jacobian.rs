//! The Jacobian ideal, its saturation and the Jacobian module `N(f)`.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::graded::{colon_by_variables, shift_vector, GradedIdeal, GradedSubspace};
use crate::linalg::echelon::{Echelon, SparseVec};
use crate::linalg::ExactMatrix;
use crate::poly::{dim_s, Monomial, Poly};

/// Everything about `S/J_f` and `N(f)` that later stages need.
#[derive(Clone, Debug)]
pub struct JacobianData {
    pub f: Poly,
    pub field: FieldSpec,
    pub d: u32,
    /// `T = 3(d-2)`.
    pub t: u32,
    pub tau: usize,
    partials: [Poly; 3],
    /// `(J_f)_k` for `0 <= k <= 3d-4`.
    j_pieces: Vec<GradedSubspace>,
    /// `(Ĵ_f)_k` for `0 <= k <= 3d-5`.
    sat_pieces: Vec<GradedSubspace>,
    /// Coset representatives of `N(f)_k` reduced modulo `J_k`, for `0 <= k <= T`.
    n_quot: Vec<Echelon>,
}

impl JacobianData {
    pub fn new(f: &Poly, field: &FieldSpec) -> Result<Self> {
        let (fx, fy, fz) = f.partials()?;
        let d = f.degree().unwrap();
        let top = 3 * d - 4;
        let mut ideal = GradedIdeal::new(&[fx.clone(), fy.clone(), fz.clone()])?;
        let j_pieces: Vec<GradedSubspace> = (0..=top).map(|k| ideal.piece(k).clone()).collect();
        let m5 = j_pieces[(3 * d - 5) as usize].codim();
        let m4 = j_pieces[top as usize].codim();
        if m5 != m4 {
            return Err(Error::NonReducedSuspected(format!(
                "dim M(f) is {m5} in degree {} but {m4} in degree {top}",
                3 * d - 5
            )));
        }
        let seed = 3 * d - 5;
        let mut sat_pieces = vec![j_pieces[seed as usize].clone()];
        for k in (0..seed).rev() {
            let next = sat_pieces.last().unwrap();
            sat_pieces.push(colon_by_variables(&j_pieces[k as usize], next));
        }
        sat_pieces.reverse();
        let t = 3 * (d - 2);
        let n_quot = (0..=t)
            .map(|k| {
                let j = &j_pieces[k as usize].basis;
                let s = &sat_pieces[k as usize].basis;
                let reps = s
                    .rows_by_pivot()
                    .into_iter()
                    .filter(|row| !j.is_pivot(row.last().unwrap().0))
                    .map(|row| j.reduce(row));
                Echelon::from_vectors(dim_s(k as i64), reps)
            })
            .collect();
        Ok(JacobianData {
            f: f.clone(),
            field: field.clone(),
            d,
            t,
            tau: m4,
            partials: [fx, fy, fz],
            j_pieces,
            sat_pieces,
            n_quot,
        })
    }

    pub fn partials(&self) -> &[Poly; 3] {
        &self.partials
    }

    /// `(J_f)_k`; pieces above `3d-4` are computed on demand.
    pub fn jacobian_piece(&self, k: u32) -> GradedSubspace {
        if let Some(p) = self.j_pieces.get(k as usize) {
            return p.clone();
        }
        let mut ideal = GradedIdeal::new(&self.partials).unwrap();
        ideal.piece(k).clone()
    }

    /// `dim (J_f)_k`.
    pub fn j_dim(&self, k: i64) -> usize {
        if k < 0 {
            return 0;
        }
        match self.j_pieces.get(k as usize) {
            Some(p) => p.dim(),
            // S/J has constant Hilbert function tau from degree 3d-5 on
            None => dim_s(k) - self.tau,
        }
    }

    /// `m(f)_k = dim M(f)_k`.
    pub fn m_dim(&self, k: i64) -> usize {
        dim_s(k) - self.j_dim(k)
    }

    /// `(Ĵ_f)_k`.
    pub fn saturation(&self, k: u32) -> GradedSubspace {
        match self.sat_pieces.get(k as usize) {
            Some(p) => p.clone(),
            None => self.jacobian_piece(k),
        }
    }

    pub fn n_dim(&self, k: i64) -> usize {
        if k < 0 || k > self.t as i64 {
            return 0;
        }
        self.n_quot[k as usize].rank()
    }

    /// `n(f)_k` for `0 <= k <= T`.
    pub fn n_dims(&self) -> Vec<usize> {
        (0..=self.t as i64).map(|k| self.n_dim(k)).collect()
    }

    pub fn nu(&self) -> usize {
        self.n_dim((self.t / 2) as i64)
    }

    /// Coset representatives of a basis of `N(f)_k`.
    pub fn n_basis(&self, k: i64) -> Vec<Poly> {
        if k < 0 || k > self.t as i64 {
            return Vec::new();
        }
        self.n_quot[k as usize]
            .rows_by_pivot()
            .into_iter()
            .map(|r| Poly::from_sparse(k as u32, r))
            .collect()
    }

    fn n_basis_vectors(&self, k: i64) -> Vec<SparseVec> {
        if k < 0 || k > self.t as i64 {
            return Vec::new();
        }
        self.n_quot[k as usize].rows_by_pivot().into_iter().cloned().collect()
    }

    /// Coordinates of the class of `v` (a vector of `(Ĵ_f)_k`) on the basis of `N(f)_k`.
    pub fn n_coordinates_vec(&self, k: i64, v: &[(usize, Scalar)]) -> Result<Vec<Scalar>> {
        if k < 0 {
            return Ok(Vec::new());
        }
        let red = self.j_pieces[k as usize].basis.reduce(v);
        if k > self.t as i64 {
            return if red.is_empty() { Ok(Vec::new()) } else { Err(Error::NotInSpan) };
        }
        self.n_quot[k as usize].coordinates(&red).ok_or(Error::NotInSpan)
    }

    pub fn n_coordinates(&self, k: i64, p: &Poly) -> Result<Vec<Scalar>> {
        if p.is_zero() {
            return Ok(vec![Scalar::zero(); self.n_dim(k)]);
        }
        if p.homogeneous_degree()? != Some(k as u32) {
            return Err(Error::IncompatibleDegrees(format!("expected degree {k}")));
        }
        self.n_coordinates_vec(k, &p.to_sparse(k as u32))
    }

    /// Matrix of multiplication by the monomial `m` from `N(f)_s` to
    /// `N(f)_{s + deg m}`; columns follow `n_basis(s)`, rows `n_basis(s + deg m)`.
    pub fn multiplication_matrix(&self, s: i64, m: &Monomial) -> ExactMatrix {
        let target = s + m.degree() as i64;
        let src = self.n_basis_vectors(s);
        let rows = self.n_dim(target);
        let mut out = ExactMatrix::zeros(rows, src.len());
        for (j, u) in src.iter().enumerate() {
            let w = shift_vector(u, s as u32, m);
            let c = self
                .n_coordinates_vec(target, &w)
                .expect("the saturation is an ideal");
            for (i, v) in c.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        out
    }

    /// Matrix of multiplication by a linear form.
    pub fn linear_form_matrix(&self, s: i64, l: &[Scalar; 3]) -> ExactMatrix {
        let mut acc = ExactMatrix::zeros(self.n_dim(s + 1), self.n_dim(s));
        for (w, c) in l.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&self.multiplication_matrix(s, &Monomial::var(w)).scale(c));
        }
        acc
    }

    /// Matrix of multiplication by a form `g` of any degree.
    pub fn form_matrix(&self, s: i64, g: &Poly) -> ExactMatrix {
        let e = g.degree().unwrap_or(0) as i64;
        let mut acc = ExactMatrix::zeros(self.n_dim(s + e), self.n_dim(s));
        for (m, c) in g.terms() {
            acc = acc.add(&self.multiplication_matrix(s, m).scale(c));
        }
        acc
    }
}

pub fn jacobian_piece(f: &Poly, k: u32) -> Result<GradedSubspace> {
    let (fx, fy, fz) = f.partials()?;
    let mut ideal = GradedIdeal::new(&[fx, fy, fz])?;
    Ok(ideal.piece(k).clone())
}

/// Squarefree test: `gcd(f, D_v f)` is constant for a directional
/// derivative in some direction `v`. Repeated factors divide every one.
pub fn is_reduced(f: &Poly) -> Result<bool> {
    let (fx, fy, fz) = f.partials()?;
    if f.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    for v in [[1, 2, 3], [3, -1, 2], [1, 0, 0], [0, 1, 0], [0, 0, 1]] {
        let [a, b, c] = v.map(Scalar::from_int);
        let dv = &(&fx.scale(&a) + &fy.scale(&b)) + &fz.scale(&c);
        if dv.is_zero() {
            continue;
        }
        if crate::loci::poly_gcd(f, &dv)?.degree() == Some(0) {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn tjurina(f: &Poly, field: &FieldSpec) -> Result<usize> {
    Ok(JacobianData::new(f, field)?.tau)
}

pub fn saturate(f: &Poly, field: &FieldSpec, k: u32) -> Result<GradedSubspace> {
    Ok(JacobianData::new(f, field)?.saturation(k))
}

pub fn n_basis(f: &Poly, field: &FieldSpec, k: i64) -> Result<Vec<Poly>> {
    Ok(JacobianData::new(f, field)?.n_basis(k))
}

/// `n(f)_k` for `0 <= k <= T`, and `ν(C)`.
pub fn n_dims(f: &Poly, field: &FieldSpec) -> Result<(Vec<usize>, usize)> {
    let jd = JacobianData::new(f, field)?;
    Ok((jd.n_dims(), jd.nu()))
}

/// One degree of a Hilbert-function shape check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeCheck {
    pub degree: i64,
    pub expected: i64,
    pub actual: i64,
}

impl ShapeCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    /// `true` for the parabola regime `2r >= d`, `false` for the plateau regime.
    pub parabola: bool,
    pub checks: Vec<ShapeCheck>,
}

impl ShapeReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }
}

/// Compares `n(f)` with the closed forms that hold in the middle range.
pub fn verify_hilbert_shape(jd: &JacobianData, r: u32) -> ShapeReport {
    let d = jd.d as i64;
    let r = r as i64;
    let t = jd.t as i64;
    let nu = jd.nu() as i64;
    let mut checks = Vec::new();
    if 2 * r >= d {
        for j in (2 * d - 4 - r)..=(d - 2 + r) {
            let expected = if d % 2 == 1 {
                nu - (j - t / 2) * (j - (t + 1) / 2)
            } else {
                nu - (j - t / 2) * (j - t / 2)
            };
            checks.push(ShapeCheck {
                degree: j,
                expected,
                actual: jd.n_dim(j) as i64,
            });
        }
        ShapeReport {
            parabola: true,
            checks,
        }
    } else {
        for j in (d + r - 3)..=(2 * d - r - 3) {
            checks.push(ShapeCheck {
                degree: j,
                expected: nu,
                actual: jd.n_dim(j) as i64,
            });
        }
        let edge = if nu == 0 { 0 } else { nu - 1 };
        for j in [d + r - 4, 2 * d - r - 2] {
            checks.push(ShapeCheck {
                degree: j,
                expected: edge,
                actual: jd.n_dim(j) as i64,
            });
        }
        ShapeReport {
            parabola: false,
            checks,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn jd(s: &str) -> JacobianData {
        let f = parse_poly(s, &FieldSpec::Rationals).unwrap();
        JacobianData::new(&f, &FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn squarefree_guard() {
        let q = FieldSpec::Rationals;
        let p = |s: &str| crate::parse::parse_poly(s, &q).unwrap();
        assert!(is_reduced(&p("x*y*z")).unwrap());
        assert!(is_reduced(&p("x^5+y^5+(x^4+y^4)*z")).unwrap());
        assert!(!is_reduced(&p("x^2*y")).unwrap());
        assert!(!is_reduced(&p("(x^2+y*z)^2*x")).unwrap());
    }

    #[test]
    fn smooth_curve_has_zero_tjurina_number() {
        let j = jd("x^4 + y^4 + z^4");
        assert_eq!(j.tau, 0);
        // N(f) = M(f) for a smooth curve
        for k in 0..=j.t as i64 {
            assert_eq!(j.n_dim(k), j.m_dim(k));
        }
    }

    #[test]
    fn quintic_with_two_singular_points() {
        let j = jd("x^5 + y^5 + (x^4 + y^4)*z");
        assert_eq!(j.tau, 9);
        assert_eq!(&j.n_dims()[3..7], &[2, 3, 3, 2]);
        assert_eq!(j.nu(), 3);
        let n3: Vec<String> = j.n_basis(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(n3.len(), 2);
    }
}
