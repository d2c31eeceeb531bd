//! Greatest common divisors of homogeneous polynomials in three variables,
//! by linear algebra: `gcd(p, q) = q / u` for the least-degree `(u, v)` with
//! `u p = v q`.

use crate::error::Result;
use crate::field::Scalar;
use crate::linalg::echelon::SparseVec;
use crate::linalg::ExactMatrix;
use crate::poly::{dim_s, Monomial, Poly};
use crate::univariate::gcd_degree;

use super::det::sample_points;

/// Upper bound for `deg gcd(p, q)` from restrictions to a few lines.
fn gcd_degree_bound(p: &Poly, q: &Poly) -> usize {
    let pts = sample_points(6, 0x9cd);
    let mut best = usize::MAX;
    for pair in pts.chunks(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let (Ok(fp), Ok(fq)) = (p.substitute_line(a, b), q.substitute_line(a, b)) else {
            continue;
        };
        if fp.is_zero() || fq.is_zero() {
            continue;
        }
        if let Some(g) = gcd_degree(&[fp, fq]) {
            best = best.min(g);
        }
    }
    best
}

fn multiply_columns(p: &Poly, j: u32, target: u32) -> Vec<SparseVec> {
    (0..dim_s(j as i64))
        .map(|i| p.mul_monomial(&Monomial::from_index(j, i)).to_sparse(target))
        .collect()
}

/// Monic gcd of two homogeneous polynomials (zero only if both are zero).
pub fn poly_gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    if p.is_zero() {
        return Ok(q.monic());
    }
    if q.is_zero() {
        return Ok(p.monic());
    }
    let dp = p.homogeneous_degree()?.unwrap();
    let dq = q.homogeneous_degree()?.unwrap();
    if dp == 0 || dq == 0 {
        return Ok(Poly::constant(Scalar::one()));
    }
    let bound = gcd_degree_bound(p, q).min(dp.min(dq) as usize) as u32;
    if bound == 0 {
        return Ok(Poly::constant(Scalar::one()));
    }
    // u has degree dq - e, v has degree dp - e, for e = deg gcd
    for e in (0..=bound).rev() {
        let (ju, jv) = (dq - e, dp - e);
        let target = ju + dp;
        let mut cols = multiply_columns(p, ju, target);
        cols.extend(
            multiply_columns(q, jv, target)
                .into_iter()
                .map(|c| c.into_iter().map(|(i, s)| (i, -s)).collect()),
        );
        let m = ExactMatrix::from_sparse_cols(dim_s(target as i64), &cols);
        if let Some(v) = m.kernel_basis().into_iter().next() {
            let u = Poly::from_dense(ju, &v[..dim_s(ju as i64)]);
            return Ok(q.exact_divide(&u)?.monic());
        }
    }
    Ok(Poly::constant(Scalar::one()))
}

/// Monic gcd of a family.
pub fn poly_gcd_all(ps: &[Poly]) -> Result<Poly> {
    let mut g = Poly::zero();
    for p in ps {
        g = poly_gcd(&g, p)?;
        if g.degree() == Some(0) {
            break;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, &FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn gcds() {
        let g = p("x + 2*y - z");
        let a = &g * &p("x^2 + y*z");
        let b = &g * &p("y^2 - 3*x*z");
        assert_eq!(poly_gcd(&a, &b).unwrap(), g.monic());
        assert_eq!(poly_gcd(&p("x^2"), &p("y^3")).unwrap(), p("1"));
        assert_eq!(poly_gcd_all(&[p("x*y*z"), p("x*y*(x+z)"), p("x^2*y")]).unwrap(), p("x*y"));
    }
}
