//! Jumping loci `V_k = {L : d1(L) <= k}` in the dual plane.
//!
//! A point `(a:b:c)` stands for the line `a x + b y + c z = 0`. For `k < r`
//! the line lies in `V_k` exactly when multiplication by `a x + b y + c z`,
//! `N(f)_{d-2+k} -> N(f)_{d-1+k}`, is not injective, so `V_k` is cut out by
//! the maximal minors of a matrix whose entries are linear in `(a, b, c)`.

pub mod det;
pub mod gcd;
pub mod ideal;
pub mod points;

use std::fmt;

use crate::bundle::{generic_splitting, Line};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::jacobian::JacobianData;
use crate::linalg::ExactMatrix;
use crate::poly::{Monomial, Poly};

pub use det::{maximal_minors, poly_det, verified_det, PolyMatrix};
pub use gcd::{poly_gcd, poly_gcd_all};
pub use ideal::{ideal_dim_degree, stable_ideal, IdealSummary, StableIdeal};
pub use points::{height_search, rational_points, PointMass, PointReport};

/// Default height for the exhaustive point search.
pub const DEFAULT_HEIGHT: u32 = 40;

/// Largest square matrix whose determinant is expanded symbolically.
pub const MAX_SQUARE: usize = 16;
/// Largest maximal minor expanded symbolically.
pub const MAX_MINOR: usize = 12;
/// Largest number of maximal minors expanded symbolically.
pub const MAX_MINOR_COUNT: usize = 200;

fn binomial(n: usize, k: usize) -> usize {
    (0..k.min(n - k)).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `M(L) = a M_x + b M_y + c M_z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMatrix {
    pub mx: ExactMatrix,
    pub my: ExactMatrix,
    pub mz: ExactMatrix,
}

impl LinearMatrix {
    pub fn new(mx: ExactMatrix, my: ExactMatrix, mz: ExactMatrix) -> Result<Self> {
        let shape = (mx.rows(), mx.cols());
        if (my.rows(), my.cols()) != shape || (mz.rows(), mz.cols()) != shape {
            return Err(Error::IncompatibleDegrees("matrices of different shapes".into()));
        }
        Ok(LinearMatrix { mx, my, mz })
    }

    pub fn rows(&self) -> usize {
        self.mx.rows()
    }

    pub fn cols(&self) -> usize {
        self.mx.cols()
    }

    pub fn eval(&self, l: &[Scalar; 3]) -> ExactMatrix {
        self.mx.scale(&l[0]).add(&self.my.scale(&l[1])).add(&self.mz.scale(&l[2]))
    }

    pub fn to_poly_matrix(&self) -> PolyMatrix {
        (0..self.rows())
            .map(|i| {
                (0..self.cols())
                    .map(|j| {
                        Poly::from_terms([
                            (Monomial::var(0), self.mx.get(i, j).clone()),
                            (Monomial::var(1), self.my.get(i, j).clone()),
                            (Monomial::var(2), self.mz.get(i, j).clone()),
                        ])
                    })
                    .collect()
            })
            .collect()
    }

    /// `M(L)` does not have maximal rank.
    pub fn drops_rank(&self, l: &[Scalar; 3]) -> bool {
        self.eval(l).rank() < self.rows().min(self.cols())
    }
}

/// Multiplication by `a x + b y + c z` from `N(f)_{d-2+k}` to `N(f)_{d-1+k}`.
pub fn multiplication_matrices(jd: &JacobianData, k: u32) -> LinearMatrix {
    let s = (jd.d + k) as i64 - 2;
    let [mx, my, mz] = [0, 1, 2].map(|w| jd.multiplication_matrix(s, &Monomial::var(w)));
    LinearMatrix { mx, my, mz }
}

/// `det M(L)` for a square matrix, checked by evaluation.
pub fn square_determinant(lm: &LinearMatrix) -> Result<Poly> {
    if lm.rows() != lm.cols() || lm.rows() == 0 {
        return Err(Error::Precondition(format!(
            "expected a nonempty square matrix, got {}x{}",
            lm.rows(),
            lm.cols()
        )));
    }
    verified_det(&lm.to_poly_matrix(), |pt| lm.eval(pt))
}

/// All maximal minors of a non-square matrix.
pub fn minor_ideal(lm: &LinearMatrix) -> Result<Vec<Poly>> {
    if lm.rows() == lm.cols() {
        return Err(Error::Precondition("minor_ideal needs a non-square matrix".into()));
    }
    Ok(maximal_minors(&lm.to_poly_matrix()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocusKind {
    Empty,
    /// Finitely many points.
    Points,
    /// A curve, possibly with isolated points off it.
    Curve,
    Plane,
    /// Equations not expanded: the matrix is beyond the size limits.
    Skipped,
}

impl fmt::Display for LocusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LocusKind::Empty => "empty",
            LocusKind::Points => "points",
            LocusKind::Curve => "curve",
            LocusKind::Plane => "plane",
            LocusKind::Skipped => "not computed",
        })
    }
}

/// Description of `V_k` in dual coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusReport {
    pub k: u32,
    /// `(n(f)_{d-1+k}, n(f)_{d-2+k})`.
    pub shape: (usize, usize),
    /// `δ_k = n(f)_{d-1+k}`.
    pub delta: usize,
    pub kind: LocusKind,
    /// `-1`, `0`, `1` or `2`; `None` when skipped.
    pub dimension: Option<i32>,
    /// Degree of the curve for `dimension = 1`, length of the scheme cut
    /// out by the minors for `dimension = 0`, `1` for the plane.
    pub degree: usize,
    /// Determinant in the square case.
    pub defining_polynomial: Option<Poly>,
    /// Maximal minors in the non-square case.
    pub minor_generators: Vec<Poly>,
    /// Curve part: the gcd of the minors, or the determinant.
    pub curve: Option<Poly>,
    /// Rational points of the zero-dimensional part. When there is also a
    /// curve, only the isolated points off it, and the counts refer to them.
    pub points: Option<PointReport>,
}

impl LocusReport {
    fn trivial(k: u32, shape: (usize, usize), kind: LocusKind) -> Self {
        let (dimension, degree) = match kind {
            LocusKind::Empty => (Some(-1), 0),
            LocusKind::Skipped => (None, 0),
            _ => (Some(2), 1),
        };
        LocusReport {
            k,
            shape,
            delta: shape.0,
            kind,
            dimension,
            degree,
            defining_polynomial: None,
            minor_generators: Vec::new(),
            curve: None,
            points: None,
        }
    }

    pub fn rational_points(&self) -> Vec<[Scalar; 3]> {
        self.points.as_ref().map(|p| p.coordinates()).unwrap_or_default()
    }

    /// Whether the line lies in `V_k`, read from the equations.
    pub fn contains(&self, l: &[Scalar; 3]) -> bool {
        match self.kind {
            LocusKind::Empty => false,
            LocusKind::Plane => true,
            LocusKind::Skipped => false,
            _ => {
                self.curve.as_ref().is_some_and(|c| c.eval(l).is_zero())
                    || (!self.minor_generators.is_empty()
                        && self.minor_generators.iter().all(|g| g.eval(l).is_zero()))
            }
        }
    }
}

/// `V_k` for one `k`; `r = mdr(f)`.
pub fn locus(jd: &JacobianData, r: u32, k: u32, height_bound: u32) -> Result<LocusReport> {
    let lm = multiplication_matrices(jd, k);
    let shape = (lm.rows(), lm.cols());
    if shape.1 == 0 {
        return Ok(LocusReport::trivial(k, shape, LocusKind::Empty));
    }
    if k >= r || shape.0 < shape.1 {
        return Ok(LocusReport::trivial(k, shape, LocusKind::Plane));
    }
    let generic = generic_splitting(jd.d, r).d1;
    let too_large = if shape.0 == shape.1 {
        shape.0 > MAX_SQUARE
    } else {
        shape.1 > MAX_MINOR || binomial(shape.0, shape.1) > MAX_MINOR_COUNT
    };
    if too_large {
        return Ok(LocusReport::trivial(k, shape, LocusKind::Skipped));
    }
    if shape.0 == shape.1 {
        let det = square_determinant(&lm)?;
        if det.is_zero() {
            if k >= generic {
                return Ok(LocusReport::trivial(k, shape, LocusKind::Plane));
            }
            return Err(Error::UnexpectedZeroDeterminant);
        }
        let degree = det.degree().unwrap_or(0) as usize;
        let mut rep = LocusReport::trivial(k, shape, LocusKind::Curve);
        rep.dimension = Some(if degree == 0 { -1 } else { 1 });
        if degree == 0 {
            rep.kind = LocusKind::Empty;
        }
        rep.degree = degree;
        rep.curve = (degree > 0).then(|| det.monic());
        rep.defining_polynomial = Some(det);
        return Ok(rep);
    }
    let minors = minor_ideal(&lm)?;
    let nonzero: Vec<Poly> = minors.iter().filter(|m| !m.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        if k >= generic {
            return Ok(LocusReport::trivial(k, shape, LocusKind::Plane));
        }
        return Err(Error::UnexpectedZeroDeterminant);
    }
    let g = poly_gcd_all(&nonzero)?;
    let gdeg = g.degree().unwrap_or(0);
    let mut rep = LocusReport::trivial(k, shape, LocusKind::Empty);
    rep.minor_generators = minors;
    let residual: Vec<Poly> = if gdeg > 0 {
        nonzero.iter().map(|m| m.exact_divide(&g)).collect::<Result<_>>()?
    } else {
        nonzero
    };
    let mut st = stable_ideal(&residual, None)?;
    let zero_dim = match st.summary.dimension {
        -1 => None,
        0 => Some(points::rational_points_of(&mut st, &residual, &jd.field, height_bound)?),
        d => {
            return Err(Error::InternalInconsistency(format!(
                "residual of the minor ideal has dimension {d}"
            )))
        }
    };
    if gdeg > 0 {
        rep.kind = LocusKind::Curve;
        rep.dimension = Some(1);
        rep.degree = gdeg as usize;
        rep.points = match zero_dim {
            Some(p) => Some(off_curve(p, &residual, &g, &jd.field, height_bound)?),
            None => None,
        };
        rep.curve = Some(g);
    } else if let Some(p) = zero_dim {
        rep.kind = LocusKind::Points;
        rep.dimension = Some(0);
        rep.degree = p.degree;
        rep.points = Some(p);
    }
    Ok(rep)
}

/// Restricts the residual points to those off the curve `g = 0`. Residual
/// points on the curve are counted through the ideal `residual + (g)`; their
/// lengths are only known for rational points, so when some are irrational
/// the reported length is an upper bound.
fn off_curve(
    mut p: PointReport,
    residual: &[Poly],
    g: &Poly,
    field: &crate::field::FieldSpec,
    height_bound: u32,
) -> Result<PointReport> {
    let mut on_gens = residual.to_vec();
    on_gens.push(g.clone());
    let mut st = stable_ideal(&on_gens, None)?;
    let (on_distinct, on_deficit) = match st.summary.dimension {
        -1 => (0, 0),
        _ => {
            let on = points::rational_points_of(&mut st, &on_gens, field, height_bound)?;
            (on.distinct, on.deficit)
        }
    };
    let on_length: usize = p
        .points
        .iter()
        .filter(|q| g.eval(&q.point).is_zero())
        .map(|q| q.multiplicity)
        .sum();
    let sub = |a: usize, b: usize| {
        a.checked_sub(b)
            .ok_or_else(|| Error::InternalInconsistency("more residual points on the curve than in total".into()))
    };
    p.points.retain(|q| !g.eval(&q.point).is_zero());
    p.distinct = sub(p.distinct, on_distinct)?;
    p.deficit = sub(p.deficit, on_deficit)?;
    p.degree = sub(p.degree, on_length)?;
    p.length_deficit = p.degree - p.points.iter().map(|q| q.multiplicity).sum::<usize>();
    p.search_only.retain(|q| !g.eval(q).is_zero());
    Ok(p)
}

/// `V_0, V_1, ...` up to the `d1` of a generic line, where `V_k` is the plane.
pub fn locus_chain(jd: &JacobianData, r: u32, height_bound: u32) -> Result<Vec<LocusReport>> {
    let top = generic_splitting(jd.d, r).d1;
    (0..=top).map(|k| locus(jd, r, k, height_bound)).collect()
}

/// Checks the equations of `V_k` against the rank of `M(L)` on a line.
pub fn membership_agrees(jd: &JacobianData, rep: &LocusReport, line: &Line) -> bool {
    let lm = multiplication_matrices(jd, rep.k);
    let by_rank = match rep.kind {
        LocusKind::Plane => true,
        LocusKind::Skipped => return true,
        LocusKind::Empty => lm.cols() > 0 && lm.drops_rank(line.coords()),
        _ => lm.drops_rank(line.coords()),
    };
    by_rank == rep.contains(line.coords())
}

fn multinomial2(m: &Monomial) -> i64 {
    if m.0.contains(&2) {
        1
    } else {
        2
    }
}

/// Determinant of multiplication by `(a x + b y + c z)^2` from
/// `N(f)_{3d'-4}` to `N(f)_{3d'-2}` for `d = 2d'`; its zeros are the
/// jumping lines of the second kind.
pub fn hulek_second_kind(jd: &JacobianData) -> Result<Poly> {
    if jd.d % 2 != 0 || jd.d < 4 {
        return Err(Error::Precondition("needs even degree at least 4".into()));
    }
    let s = (3 * (jd.d / 2)) as i64 - 4;
    let quads: Vec<(Monomial, ExactMatrix)> = crate::poly::monomial_basis(2)
        .into_iter()
        .map(|m| {
            let mat = jd.multiplication_matrix(s, &m).scale(&Scalar::from_int(multinomial2(&m)));
            (m, mat)
        })
        .collect();
    let n = jd.n_dim(s);
    if jd.n_dim(s + 2) != n {
        return Err(Error::Precondition(format!(
            "n({}) = {} differs from n({}) = {}",
            s,
            n,
            s + 2,
            jd.n_dim(s + 2)
        )));
    }
    let pm: PolyMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Poly::from_terms(quads.iter().map(|(m, mat)| (m.clone(), mat.get(i, j).clone()))))
                .collect()
        })
        .collect();
    let det = verified_det(&pm, |pt| {
        let alpha = Poly::linear(pt);
        jd.form_matrix(s, &alpha.pow(2))
    })?;
    if det.is_zero() {
        return Err(Error::UnexpectedZeroDeterminant);
    }
    Ok(det)
}
