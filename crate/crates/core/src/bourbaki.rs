//! The Bourbaki ideal attached to a syzygy `ρ1` of minimal degree, the
//! zero-dimensional scheme `Z` it defines, intersection lengths of lines with
//! `Z` and the splitting types they predict.
//!
//! For a syzygy `ρ`, the determinant with rows `(x, y, z)`, `ρ1`, `ρ` is
//! divisible by `f`; the quotients over a generating set of `AR(f)` generate
//! the ideal.

use std::fmt;

use crate::bundle::{splitting_along_line, Line, SplittingType};
use crate::check::Check;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::graded::GradedIdeal;
use crate::jacobian::JacobianData;
use crate::loci::{self, poly_gcd_all, stable_ideal, PointReport};
use crate::poly::{det3, Poly};
use crate::syzygy::{tau_max, Syzygy, SyzygyModule};
use crate::univariate::gcd_degree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BourbakiData {
    pub rho1: Syzygy,
    /// Nonzero quotients, in the order of the minimal generators.
    pub generators: Vec<Poly>,
    /// Index of the minimal generator each quotient comes from.
    pub sources: Vec<usize>,
    /// Degree of `Z`.
    pub degree: usize,
    /// `B = S`, which happens exactly for free curves.
    pub is_unit: bool,
}

fn xyz() -> [Poly; 3] {
    [Poly::x(), Poly::y(), Poly::z()]
}

/// `det(x,y,z; rho1; rho) / f`.
pub fn v_map(jd: &JacobianData, rho1: &Syzygy, rho: &Syzygy) -> Result<Poly> {
    let delta = det3(&[xyz(), rho1.components().clone(), rho.components().clone()])?;
    if delta.is_zero() {
        return Ok(delta);
    }
    delta.exact_divide(&jd.f)
}

/// Generators and degree of the Bourbaki ideal for `rho1`, checked against
/// `deg Z = (d-1)^2 - r(d-r-1) - τ`.
pub fn bourbaki_ideal(jd: &JacobianData, module: &SyzygyModule, rho1: &Syzygy) -> Result<BourbakiData> {
    if rho1.degree() != module.r {
        return Err(Error::Precondition(format!(
            "rho1 has degree {}, expected mdr(f) = {}",
            rho1.degree(),
            module.r
        )));
    }
    let mut generators = Vec::new();
    let mut sources = Vec::new();
    for (i, rho) in module.generators.iter().enumerate() {
        let g = v_map(jd, rho1, rho).map_err(|_| Error::DivisibilityFailure(i + 1))?;
        if !g.is_zero() {
            generators.push(g);
            sources.push(i);
        }
    }
    let expected = tau_max(jd.d, module.r) - jd.tau as i64;
    let summary = loci::ideal_dim_degree(&generators, None)?;
    let (degree, is_unit) = match summary.dimension {
        -1 => (0, true),
        0 => (summary.degree, false),
        d => {
            return Err(Error::InternalInconsistency(format!(
                "Bourbaki ideal has dimension {d}"
            )))
        }
    };
    if degree as i64 != expected {
        return Err(Error::DegreeFormulaMismatch {
            computed: degree as i64,
            expected,
        });
    }
    Ok(BourbakiData {
        rho1: rho1.clone(),
        generators,
        sources,
        degree,
        is_unit,
    })
}

/// Rational points of `Z`, in the plane of the curve.
pub fn z_support(bd: &BourbakiData, field: &FieldSpec, height_bound: u32) -> Result<PointReport> {
    let mut st = stable_ideal(&bd.generators, None)?;
    loci::points::rational_points_of(&mut st, &bd.generators, field, height_bound)
}

/// Length of `Z ∩ L`: the degree of the gcd of the generators restricted to `L`.
pub fn intersection_multiplicity(bd: &BourbakiData, line: &Line) -> Result<usize> {
    let (p, q) = line.two_points();
    let forms = bd
        .generators
        .iter()
        .map(|g| g.substitute_line(&p, &q))
        .collect::<Result<Vec<_>>>()?;
    gcd_degree(&forms).ok_or(Error::AllRestrictionsZero)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prediction {
    Exact(SplittingType),
    /// `d1 >= bound`.
    LowerBound(u32),
    None,
}

impl Prediction {
    pub fn agrees_with(&self, st: &SplittingType) -> bool {
        match self {
            Prediction::Exact(p) => p == st,
            Prediction::LowerBound(b) => st.d1 >= *b,
            Prediction::None => true,
        }
    }
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prediction::Exact(st) => write!(f, "{st}"),
            Prediction::LowerBound(b) => write!(f, "d1 >= {b}"),
            Prediction::None => f.write_str("no prediction"),
        }
    }
}

/// Splitting type predicted from `d`, `r` and `m_L`.
pub fn predicted_splitting(d: u32, r: u32, m_l: usize) -> Prediction {
    let m = m_l as u32;
    if 2 * r <= d && m == 0 {
        Prediction::Exact(SplittingType::new(r, d - 1 - r))
    } else if 2 * r < d && m > 0 {
        if m > r {
            return Prediction::None;
        }
        Prediction::Exact(SplittingType::new(r - m, d - 1 - r + m))
    } else if 2 * r > d && m == 0 {
        Prediction::LowerBound(d - 1 - r)
    } else {
        Prediction::None
    }
}

/// Prediction against the splitting type read from `N(f)`.
pub fn prediction_check(jd: &JacobianData, bd: &BourbakiData, r: u32, line: &Line) -> Result<Check> {
    let m_l = intersection_multiplicity(bd, line)?;
    let pred = predicted_splitting(jd.d, r, m_l);
    let direct = splitting_along_line(jd, r, line);
    Ok(Check::new(
        format!("splitting prediction along {line}"),
        pred.agrees_with(&direct),
        format!("m_L = {m_l}, predicted {pred}, direct {direct}"),
    ))
}

/// For `2r <= d-1` the rational points of `V_{r-1}` lie on the dual lines
/// of the support points of `Z`, and each such dual line is a component.
/// Free curves have empty `Z` and no jumping lines, so nothing is checked.
pub fn arrangement_check(jd: &JacobianData, bd: &BourbakiData, r: u32, height_bound: u32) -> Result<Vec<Check>> {
    if 2 * r + 1 > jd.d || r == 0 || bd.is_unit {
        return Ok(Vec::new());
    }
    let locus = loci::locus(jd, r, r - 1, height_bound)?;
    if locus.kind == loci::LocusKind::Skipped {
        return Ok(Vec::new());
    }
    let support = z_support(bd, &jd.field, height_bound)?;
    let curve = locus.curve.clone().unwrap_or_else(Poly::zero);
    let dual = |p: &[Scalar; 3]| Poly::linear(p);
    let mut checks = vec![Check::eq(
        "V_{r-1} is a curve",
        locus.dimension,
        Some(1),
    )];
    for pm in &support.points {
        let l = dual(&pm.point);
        checks.push(Check::new(
            format!("lines through ({}:{}:{}) form a component of V_{{r-1}}", pm.point[0], pm.point[1], pm.point[2]),
            !curve.is_zero() && curve.exact_divide(&l).is_ok(),
            curve.to_string(),
        ));
    }
    if support.deficit == 0 && !curve.is_zero() {
        let mut rest = curve.clone();
        for pm in &support.points {
            let l = dual(&pm.point);
            while let Ok(q) = rest.exact_divide(&l) {
                rest = q;
            }
        }
        checks.push(Check::new(
            "V_{r-1} has no other components",
            rest.degree() == Some(0),
            format!("leftover factor {rest}"),
        ));
    }
    checks.push(Check::new(
        "V_{r-1} has degree at most nu",
        locus.degree <= jd.nu(),
        format!("degree {}, nu = {}", locus.degree, jd.nu()),
    ));
    Ok(checks)
}

/// Whether two lists of homogeneous polynomials generate the same ideal.
pub fn same_ideal(a: &[Poly], b: &[Poly]) -> Result<bool> {
    let mut ia = GradedIdeal::new(a)?;
    let mut ib = GradedIdeal::new(b)?;
    let within = |gens: &[Poly], ideal: &mut GradedIdeal| -> Result<bool> {
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let k = g.homogeneous_degree()?.unwrap();
            if !ideal.piece(k).contains(g) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(within(a, &mut ib)? && within(b, &mut ia)?)
}

/// Monic gcd of the generators: `1` whenever `Z` is zero-dimensional.
pub fn common_factor(bd: &BourbakiData) -> Result<Poly> {
    poly_gcd_all(&bd.generators)
}
