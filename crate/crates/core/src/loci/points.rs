//! Points of zero-dimensional schemes in the plane that are rational over
//! the base field.
//!
//! In a degree `k` where the Hilbert function of `S/I` has stabilized at the
//! degree `D`, multiplication by a linear form `l` maps `(S/I)_k` onto
//! `(S/I)_{k+1}`, and `det(u M_l1 - v M_l2)` for two forms vanishing at a
//! center `O` is, up to a constant, the product of `(u l1(P) - v l2(P))^len(P)`
//! over the support. Its roots are the lines through `O` meeting the scheme;
//! restricting the generators to each such line and taking the gcd of the
//! binary forms gives the points on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::bundle::Line;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::graded::shift_vector;
use crate::linalg::ExactMatrix;
use crate::poly::{normalize_point, proportional, Monomial, Poly};
use crate::univariate::{binary_gcd, BinaryForm};

use super::det::{poly_det, sample_points};
use super::ideal::{stable_ideal, StableIdeal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMass {
    pub point: [Scalar; 3],
    /// Length of the scheme at the point.
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointReport {
    /// Points found, first nonzero coordinate 1, sorted.
    pub points: Vec<PointMass>,
    /// Length of the scheme.
    pub degree: usize,
    /// Number of distinct points over the algebraic closure.
    pub distinct: usize,
    /// Points outside the base field: `distinct` minus the number found.
    pub deficit: usize,
    /// `degree` minus the total multiplicity of `points`.
    pub length_deficit: usize,
    /// Points seen by the height search but missed by elimination; always
    /// empty unless something is wrong.
    pub search_only: Vec<[Scalar; 3]>,
    /// Whether the height search ran (rational generators only).
    pub searched: bool,
}

impl PointReport {
    pub fn coordinates(&self) -> Vec<[Scalar; 3]> {
        self.points.iter().map(|p| p.point.clone()).collect()
    }
}

fn vanishes(gens: &[Poly], pt: &[Scalar; 3]) -> bool {
    gens.iter().all(|g| g.eval(pt).is_zero())
}

/// Multiplication by `x`, `y`, `z` from `(S/I)_k` to `(S/I)_{k+1}` on standard monomials.
fn variable_matrices(st: &mut StableIdeal, k: u32) -> [ExactMatrix; 3] {
    let src = st.ideal.piece(k).basis.standard_indices();
    let tgt_piece = st.ideal.piece(k + 1).clone();
    let tgt = tgt_piece.basis.standard_indices();
    let mut pos = vec![usize::MAX; tgt_piece.basis.ambient_dim()];
    for (t, &i) in tgt.iter().enumerate() {
        pos[i] = t;
    }
    [0, 1, 2].map(|w| {
        let mut m = ExactMatrix::zeros(tgt.len(), src.len());
        for (j, &i) in src.iter().enumerate() {
            let v = shift_vector(&[(i, Scalar::one())], k, &Monomial::var(w));
            for (idx, c) in tgt_piece.basis.reduce(&v) {
                m.set(pos[idx], j, c);
            }
        }
        m
    })
}

fn combine(ms: &[ExactMatrix; 3], l: &[Scalar; 3]) -> ExactMatrix {
    let mut acc = ExactMatrix::zeros(ms[0].rows(), ms[0].cols());
    for w in 0..3 {
        if !l[w].is_zero() {
            acc = acc.add(&ms[w].scale(&l[w]));
        }
    }
    acc
}

/// `det(u A - v B)` as a binary form in `(u, v)`.
fn pencil_det(a: &ExactMatrix, b: &ExactMatrix) -> BinaryForm {
    let n = a.rows();
    let m: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut p = Poly::zero();
                    p.add_term(Monomial::new(1, 0, 0), a.get(i, j).clone());
                    p.add_term(Monomial::new(0, 1, 0), -b.get(i, j));
                    p
                })
                .collect()
        })
        .collect();
    let det = poly_det(&m);
    BinaryForm::new(
        (0..=n as u32)
            .map(|i| det.coeff(&Monomial::new(n as u32 - i, i, 0)))
            .collect(),
    )
}

fn center_candidates() -> Vec<[Scalar; 3]> {
    let mut out: Vec<[Scalar; 3]> = [[0, 1, 0], [1, 0, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [3, -1, 2]]
        .iter()
        .map(|v| v.map(Scalar::from_int))
        .collect();
    out.extend(sample_points(12, 0xce47));
    out.retain(|p| p.iter().any(|c| !c.is_zero()));
    out
}

/// One projection: the characteristic form and the two forms through the center.
struct Projection {
    l1: [Scalar; 3],
    l2: [Scalar; 3],
    chi: BinaryForm,
    roots: Vec<([Scalar; 2], usize)>,
}

impl Projection {
    fn multiplicity_of(&self, p: &[Scalar; 3]) -> usize {
        let dot = |l: &[Scalar; 3]| &(&(&l[0] * &p[0]) + &(&l[1] * &p[1])) + &(&l[2] * &p[2]);
        let target = [dot(&self.l2), dot(&self.l1)];
        self.roots
            .iter()
            .find(|(r, _)| (&r[0] * &target[1]) == (&r[1] * &target[0]))
            .map_or(0, |(_, m)| *m)
    }
}

fn collinear(a: &[Scalar; 3], b: &[Scalar; 3], c: &[Scalar; 3]) -> bool {
    let minor = |i: usize, j: usize| &(&b[i] * &c[j]) - &(&b[j] * &c[i]);
    let det = &(&(&a[0] * &minor(1, 2)) - &(&a[1] * &minor(0, 2))) + &(&a[2] * &minor(0, 1));
    det.is_zero()
}

/// Up to `want` projections from centers off `V(I)`; a center is skipped
/// when it lies on a line through two of the `separate` points.
fn projections(
    gens: &[Poly],
    ms: &[ExactMatrix; 3],
    field: &FieldSpec,
    want: usize,
    separate: &[[Scalar; 3]],
) -> Result<Vec<Projection>> {
    let mut out = Vec::new();
    let mut attempts = 0;
    for o in center_candidates() {
        if out.len() == want {
            break;
        }
        if vanishes(gens, &o) {
            continue;
        }
        let merges = separate
            .iter()
            .enumerate()
            .any(|(i, p)| separate[i + 1..].iter().any(|q| collinear(&o, p, q)));
        if merges {
            continue;
        }
        attempts += 1;
        let (l1, l2) = Line::new(o.clone())?.two_points();
        let chi = pencil_det(&combine(ms, &l1), &combine(ms, &l2));
        if chi.is_zero() {
            continue;
        }
        let roots = chi.roots(field);
        out.push(Projection { l1, l2, chi, roots });
    }
    if out.is_empty() {
        return Err(Error::ResultantDegenerate(attempts));
    }
    Ok(out)
}

/// Common zeros of `gens` on the line with coordinates `l`.
fn points_on_line(gens: &[Poly], l: &[Scalar; 3], field: &FieldSpec) -> Result<Vec<[Scalar; 3]>> {
    let (p, q) = Line::new(l.clone())?.two_points();
    let forms = gens
        .iter()
        .map(|g| g.substitute_line(&p, &q))
        .collect::<Result<Vec<_>>>()?;
    let Some(g) = binary_gcd(&forms) else {
        return Err(Error::AllRestrictionsZero);
    };
    Ok(g.roots(field)
        .into_iter()
        .map(|([s, t], _)| normalize_point(&[0, 1, 2].map(|i| &(&s * &p[i]) + &(&t * &q[i]))))
        .filter(|pt| vanishes(gens, pt))
        .collect())
}

/// Rational points of a zero-dimensional ideal, with multiplicities and a
/// height-bounded search over integer points as a cross-check.
pub fn rational_points(gens: &[Poly], field: &FieldSpec, height_bound: u32) -> Result<PointReport> {
    let mut st = stable_ideal(gens, None)?;
    rational_points_of(&mut st, gens, field, height_bound)
}

pub fn rational_points_of(
    st: &mut StableIdeal,
    gens: &[Poly],
    field: &FieldSpec,
    height_bound: u32,
) -> Result<PointReport> {
    let summary = st.summary.clone();
    match summary.dimension {
        -1 => {
            return Ok(PointReport {
                points: Vec::new(),
                degree: 0,
                distinct: 0,
                deficit: 0,
                length_deficit: 0,
                search_only: Vec::new(),
                searched: false,
            })
        }
        0 => {}
        d => return Err(Error::Precondition(format!("ideal has dimension {d}, expected 0"))),
    }
    let k = summary.bound - 1;
    let ms = variable_matrices(st, k);
    let first = projections(gens, &ms, field, 1, &[])?.remove(0);
    let mut found: Vec<[Scalar; 3]> = Vec::new();
    for ([u0, v0], _) in &first.roots {
        let l: [Scalar; 3] = [0, 1, 2].map(|i| &(u0 * &first.l1[i]) - &(v0 * &first.l2[i]));
        for pt in points_on_line(gens, &l, field)? {
            if !found.iter().any(|f| proportional(f, &pt)) {
                found.push(pt);
            }
        }
    }
    found.sort();
    // multiplicities and the distinct count need centers that keep the
    // found points apart
    let projs = projections(gens, &ms, field, 3, &found)?;
    let points: Vec<PointMass> = found
        .into_iter()
        .map(|p| {
            let multiplicity = projs.iter().map(|pr| pr.multiplicity_of(&p)).min().unwrap_or(0);
            PointMass { point: p, multiplicity }
        })
        .collect();
    let mass: usize = points.iter().map(|p| p.multiplicity).sum();
    debug_assert!(projs.iter().all(|p| p.chi.degree() == summary.degree));
    let searched = height_bound > 0 && gens.iter().all(|g| g.is_rational());
    let search_only = if searched {
        height_search(gens, height_bound as i64)
            .into_iter()
            .filter(|p| !points.iter().any(|q| proportional(&q.point, p)))
            .collect()
    } else {
        Vec::new()
    };
    // a projection can only merge points, never split them
    let distinct = projs.iter().map(|p| p.chi.distinct_roots()).max().unwrap_or(0);
    if distinct < points.len() {
        return Err(Error::InternalInconsistency(format!(
            "{} points found but only {distinct} distinct projections",
            points.len()
        )));
    }
    Ok(PointReport {
        degree: summary.degree,
        distinct,
        deficit: distinct - points.len(),
        length_deficit: summary.degree.saturating_sub(mass),
        points,
        search_only,
        searched,
    })
}

const SEARCH_PRIME: u64 = 2_147_483_647;

fn to_mod(c: &Scalar) -> Option<u64> {
    let r = c.as_rational()?;
    let p = BigInt::from(SEARCH_PRIME);
    let n = r.numer().mod_floor(&p).to_u64()?;
    let d = r.denom().mod_floor(&p).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(n * powmod(d, SEARCH_PRIME - 2) % SEARCH_PRIME)
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % SEARCH_PRIME;
        }
        a = a * a % SEARCH_PRIME;
        e >>= 1;
    }
    r
}

/// Projective integer points of height at most `h` on which every generator
/// vanishes: filtered modulo a prime, then confirmed exactly.
pub fn height_search(gens: &[Poly], h: i64) -> Vec<[Scalar; 3]> {
    let mut reduced: Vec<Vec<([u32; 3], u64)>> = Vec::new();
    for g in gens {
        let mut terms = Vec::new();
        for (m, c) in g.terms() {
            match to_mod(c) {
                Some(v) => terms.push((m.0, v)),
                None => return Vec::new(),
            }
        }
        reduced.push(terms);
    }
    let maxdeg = gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0) as usize;
    let p = SEARCH_PRIME as i64;
    let mut out = Vec::new();
    let mut pw = [vec![0u64; maxdeg + 1], vec![0u64; maxdeg + 1], vec![0u64; maxdeg + 1]];
    let mut visit = |v: [i64; 3]| {
        if v.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
            return;
        }
        for (i, &x) in v.iter().enumerate() {
            let xm = x.rem_euclid(p) as u64;
            pw[i][0] = 1;
            for e in 1..=maxdeg {
                pw[i][e] = pw[i][e - 1] * xm % SEARCH_PRIME;
            }
        }
        let zero_mod_p = reduced.iter().all(|terms| {
            terms.iter().fold(0u64, |acc, (e, c)| {
                let t = c * pw[0][e[0] as usize] % SEARCH_PRIME * pw[1][e[1] as usize] % SEARCH_PRIME
                    * pw[2][e[2] as usize]
                    % SEARCH_PRIME;
                (acc + t) % SEARCH_PRIME
            }) == 0
        });
        if zero_mod_p {
            let pt = v.map(Scalar::from_int);
            if vanishes(gens, &pt) {
                out.push(normalize_point(&pt));
            }
        }
    };
    visit([0, 0, 1]);
    for b in 1..=h {
        for c in -h..=h {
            visit([0, b, c]);
        }
    }
    for a in 1..=h {
        for b in -h..=h {
            for c in -h..=h {
                visit([a, b, c]);
            }
        }
    }
    out.sort();
    out
}

/// Whether `v` has a coordinate of absolute value above `h` after clearing
/// denominators (such points are out of reach of the height search).
pub fn exceeds_height(v: &[Scalar; 3], h: i64) -> bool {
    match crate::linalg::matrix::primitive_integer_vector(v) {
        Some(ints) => ints.iter().any(|x| x.abs() > BigInt::from(h)),
        None => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, &FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn fat_point_and_simple_points() {
        // (xz, y^2, xy): a double point at (0:0:1) and a simple one at (1:0:0)
        let r = rational_points(&[p("x*z"), p("y^2"), p("x*y")], &FieldSpec::Rationals, 10).unwrap();
        assert_eq!(r.degree, 3);
        assert_eq!(r.points.len(), 2);
        assert_eq!((r.deficit, r.length_deficit, r.distinct), (0, 0, 2));
        let mults: Vec<usize> = r.points.iter().map(|p| p.multiplicity).collect();
        assert_eq!(mults.iter().sum::<usize>(), 3);
        assert!(r.search_only.is_empty());
    }

    #[test]
    fn irrational_points_are_a_deficit() {
        // x^2 + y^2 = 0 = z: two conjugate points
        let r = rational_points(&[p("x^2 + y^2"), p("z")], &FieldSpec::Rationals, 5).unwrap();
        assert_eq!((r.points.len(), r.degree, r.deficit), (0, 2, 2));
        let k = FieldSpec::number_field(vec![1.into(), 0.into(), 1.into()].into_iter().map(num_rational::BigRational::from_integer).collect()).unwrap();
        let gens: Vec<Poly> = ["x^2 + y^2", "z"].iter().map(|s| parse_poly(s, &k).unwrap()).collect();
        let r = rational_points(&gens, &k, 0).unwrap();
        assert_eq!((r.points.len(), r.deficit), (2, 0));
    }
}
