//! Determinants and maximal minors of matrices with polynomial entries.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::ExactMatrix;
use crate::poly::Poly;

/// Square or rectangular matrix of homogeneous polynomials in `(a, b, c)`.
pub type PolyMatrix = Vec<Vec<Poly>>;

/// Fraction-free (Bareiss) determinant over `K[a,b,c]`.
pub fn poly_det(m: &PolyMatrix) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::constant(Scalar::one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = Poly::constant(Scalar::one());
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Poly::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = if num.is_zero() {
                    num
                } else {
                    num.exact_divide(&prev).expect("Bareiss division is exact")
                };
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Sample points in `[-20, 20]^3` for verifying symbolic determinants.
pub(crate) fn sample_points(count: usize, seed: u64) -> Vec<[Scalar; 3]> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| [0; 3].map(|_: i32| Scalar::from_int(rng.gen_range(-20..=20))))
        .collect()
}

/// Determinant of `m`, checked against `eval(pt)` at five random points,
/// where `eval` builds the numeric matrix directly.
pub fn verified_det<F: Fn(&[Scalar; 3]) -> ExactMatrix>(m: &PolyMatrix, eval: F) -> Result<Poly> {
    let det = poly_det(m);
    for pt in sample_points(5, 0x5eed) {
        let direct = eval(&pt).determinant();
        if det.eval(&pt) != direct {
            return Err(Error::VerificationMismatch(format!("({}, {}, {})", pt[0], pt[1], pt[2])));
        }
    }
    Ok(det)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Maximal minors of a matrix with more rows than columns (or the
/// transpose case), in lexicographic order of the chosen rows or columns.
pub fn maximal_minors(m: &PolyMatrix) -> Vec<Poly> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if rows >= cols {
        subsets(rows, cols)
            .into_iter()
            .map(|sel| poly_det(&sel.iter().map(|&i| m[i].clone()).collect()))
            .collect()
    } else {
        subsets(cols, rows)
            .into_iter()
            .map(|sel| {
                poly_det(
                    &m.iter()
                        .map(|r| sel.iter().map(|&j| r[j].clone()).collect())
                        .collect(),
                )
            })
            .collect()
    }
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
    fn symbolic_determinants() {
        let m = vec![vec![p("x"), p("y")], vec![p("z"), p("x")]];
        assert_eq!(poly_det(&m), p("x^2 - y*z"));
        // needs a row swap
        let m = vec![
            vec![Poly::zero(), p("x"), Poly::zero()],
            vec![p("y"), Poly::zero(), Poly::zero()],
            vec![Poly::zero(), Poly::zero(), p("z")],
        ];
        assert_eq!(poly_det(&m), p("-x*y*z"));
    }

    #[test]
    fn minors_of_column() {
        let m = vec![vec![p("x")], vec![p("y")]];
        assert_eq!(maximal_minors(&m), vec![p("x"), p("y")]);
        assert_eq!(subsets(4, 2).len(), 6);
    }
}
