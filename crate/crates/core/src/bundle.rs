//! Numerical invariants of the bundle: Chern classes, stability, splitting
//! types along lines and jumping orders, plus the Lefschetz-type checks on
//! multiplication by a linear form on `N(f)`.

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::jacobian::JacobianData;
use crate::linalg::ExactMatrix;
use crate::poly::normalize_point;

/// Ordered splitting type `(d1, d2)` with `d1 <= d2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingType {
    pub d1: u32,
    pub d2: u32,
}

impl SplittingType {
    /// Sorts the pair.
    pub fn new(a: u32, b: u32) -> Self {
        SplittingType {
            d1: a.min(b),
            d2: a.max(b),
        }
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d1, self.d2)
    }
}

/// A line `a x + b y + c z = 0`, stored with first nonzero coordinate 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line(pub [Scalar; 3]);

impl Line {
    pub fn new(coords: [Scalar; 3]) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Precondition("line coordinates are all zero".into()));
        }
        Ok(Line(normalize_point(&coords)))
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Line::new([Scalar::from_int(a), Scalar::from_int(b), Scalar::from_int(c)])
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.0
    }

    /// Two distinct points spanning the line.
    pub fn two_points(&self) -> ([Scalar; 3], [Scalar; 3]) {
        let [a, b, c] = &self.0;
        let z = Scalar::zero;
        if !c.is_zero() {
            ([c.clone(), z(), -a], [z(), c.clone(), -b])
        } else if !b.is_zero() {
            ([b.clone(), -a, z()], [z(), z(), Scalar::one()])
        } else {
            ([z(), Scalar::one(), z()], [z(), z(), Scalar::one()])
        }
    }
}

/// Rational lines print as primitive integer vectors.
impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match crate::linalg::matrix::primitive_integer_vector(&self.0) {
            Some(v) => write!(f, "({}:{}:{})", v[0], v[1], v[2]),
            None => write!(f, "({}:{}:{})", self.0[0], self.0[1], self.0[2]),
        }
    }
}

/// `c1` and `c2` of `T<C>(k)`.
pub fn chern(d: u32, tau: usize, k: i64) -> (i64, i64) {
    let (d, t) = (d as i64, tau as i64);
    (3 - d + 2 * k, d * d - (k + 3) * d + k * k + 3 * k + 3 - t)
}

/// Chern classes of the normalized twist: `c1` is `0` for odd `d` and `-1` for even `d`.
pub fn normalized_chern(d: u32, tau: usize) -> (i64, i64) {
    chern(d, tau, ((d - 3) / 2) as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stability {
    Unstable,
    StrictlySemistable,
    Stable,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Unstable => "unstable",
            Stability::StrictlySemistable => "strictly semistable",
            Stability::Stable => "stable",
        })
    }
}

pub fn stability_class(d: u32, r: u32) -> Stability {
    let h = d / 2;
    if d % 2 == 1 {
        match r.cmp(&h) {
            std::cmp::Ordering::Less => Stability::Unstable,
            std::cmp::Ordering::Equal => Stability::StrictlySemistable,
            std::cmp::Ordering::Greater => Stability::Stable,
        }
    } else if r >= h {
        Stability::Stable
    } else {
        Stability::Unstable
    }
}

/// `(min(r, floor((d-1)/2)), d - 1 - min(r, floor((d-1)/2)))`.
pub fn generic_splitting(d: u32, r: u32) -> SplittingType {
    let d1 = r.min((d - 1) / 2);
    SplittingType::new(d1, d - 1 - d1)
}

fn injective(m: &ExactMatrix) -> bool {
    m.cols() == 0 || m.rank() == m.cols()
}

fn surjective(m: &ExactMatrix) -> bool {
    m.rows() == 0 || m.rank() == m.rows()
}

/// Splitting type along `line`: `d1` is the first `k < r` at which
/// multiplication by the linear form `N(f)_{k+d-2} -> N(f)_{k+d-1}` fails to
/// be injective, or `r` if there is none.
pub fn splitting_along_line(jd: &JacobianData, r: u32, line: &Line) -> SplittingType {
    let d = jd.d;
    let d1 = (0..r)
        .find(|&k| {
            let s = (k + d) as i64 - 2;
            !injective(&jd.linear_form_matrix(s, line.coords()))
        })
        .unwrap_or(r);
    SplittingType::new(d1, d - 1 - d1)
}

/// `o(L) = d1 of the generic line minus d1 along L`.
pub fn jumping_order(jd: &JacobianData, r: u32, line: &Line) -> u32 {
    generic_splitting(jd.d, r).d1 - splitting_along_line(jd, r, line).d1
}

/// Integer lines with coordinates in `[-20, 20]`.
pub fn random_line(rng: &mut ChaCha8Rng) -> Line {
    loop {
        let v: [i64; 3] = [rng.gen_range(-20..=20), rng.gen_range(-20..=20), rng.gen_range(-20..=20)];
        if v != [0, 0, 0] {
            return Line::from_ints(v[0], v[1], v[2]).unwrap();
        }
    }
}

/// Samples up to four lines (one draw plus three resamples) until `accept` holds.
pub fn sample_line_with<F: FnMut(&Line) -> bool>(rng: &mut ChaCha8Rng, mut accept: F) -> Option<Line> {
    (0..4).map(|_| random_line(rng)).find(|l| accept(l))
}

/// A line whose splitting type is the generic one.
pub fn generic_line(jd: &JacobianData, r: u32, rng: &mut ChaCha8Rng) -> Option<Line> {
    let g = generic_splitting(jd.d, r);
    sample_line_with(rng, |l| splitting_along_line(jd, r, l) == g)
}

/// Multiplication by the linear form on `N(f)_k -> N(f)_{k+1}` for
/// `0 <= k < T`: injective for `k < T/2`, surjective for `k >= T/2`.
/// For odd `T` this is the same as splitting at `s = ceil(T/2)` with
/// `s = k + 1`; for even `T` the map into the middle degree must be
/// injective, since `n(f)` can still grow there.
pub fn weak_lefschetz_holds(jd: &JacobianData, line: &Line) -> bool {
    let t = jd.t as i64;
    (0..t).all(|k| {
        let m = jd.linear_form_matrix(k, line.coords());
        if 2 * k < t {
            injective(&m)
        } else {
            surjective(&m)
        }
    })
}

/// Multiplication by the `(q-p)`-th power of the linear form, `N(f)_p -> N(f)_q`.
pub fn power_matrix(jd: &JacobianData, line: &Line, p: i64, q: i64) -> ExactMatrix {
    let mut acc = ExactMatrix::identity(jd.n_dim(p));
    for s in p..q {
        acc = jd.linear_form_matrix(s, line.coords()).mul(&acc);
    }
    acc
}

/// For `r < d/2`: the powers `N(f)_p -> N(f)_q` are isomorphisms for
/// `d+r-3 <= p < q <= 2d-r-3`. Vacuously true otherwise.
pub fn strong_lefschetz_holds(jd: &JacobianData, r: u32, line: &Line) -> bool {
    let (d, r) = (jd.d as i64, r as i64);
    if 2 * r >= d {
        return true;
    }
    let (lo, hi) = (d + r - 3, 2 * d - r - 3);
    (lo..hi).all(|p| {
        (p + 1..=hi).all(|q| {
            let m = power_matrix(jd, line, p, q);
            m.rows() == m.cols() && injective(&m)
        })
    })
}

/// Checks on one line: the sum of the splitting degrees, non-negativity,
/// the generic bound and the bounds in terms of `r` and `ν`.
pub fn line_checks(jd: &JacobianData, r: u32, line: &Line) -> Vec<Check> {
    let d = jd.d;
    let nu = jd.nu() as i64;
    let st = splitting_along_line(jd, r, line);
    let g = generic_splitting(d, r);
    let o = g.d1 as i64 - st.d1 as i64;
    vec![
        Check::eq(format!("d1+d2 = d-1 along {line}"), st.d1 + st.d2, d - 1),
        Check::new(
            format!("d1 <= generic d1 along {line}"),
            st.d1 <= g.d1,
            format!("d1 = {}, generic {}", st.d1, g.d1),
        ),
        Check::new(
            format!("max(r-nu,0) <= d1 along {line}"),
            (r as i64 - nu).max(0) <= st.d1 as i64,
            format!("r = {r}, nu = {nu}, d1 = {}", st.d1),
        ),
        Check::new(
            format!("o(L) <= min(r,nu) along {line}"),
            o >= 0 && o <= (r as i64).min(nu),
            format!("o(L) = {o}"),
        ),
    ]
}

/// `(d-1)^2 - d1 d2 = τ + ν` for the generic splitting type.
pub fn generic_type_identity(jd: &JacobianData, r: u32) -> Check {
    let d = jd.d as i64;
    let g = generic_splitting(jd.d, r);
    Check::eq(
        "(d-1)^2 - d1*d2 = tau + nu (generic line)",
        (d - 1) * (d - 1) - (g.d1 * g.d2) as i64,
        (jd.tau + jd.nu()) as i64,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_poly;
    use crate::syzygy::mdr;
    use rand::SeedableRng;

    fn jd(s: &str) -> JacobianData {
        let f = parse_poly(s, &FieldSpec::Rationals).unwrap();
        JacobianData::new(&f, &FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn chern_classes_of_quintic() {
        assert_eq!(chern(5, 9, 0), (-2, 4));
        assert_eq!(normalized_chern(5, 9).0, 0);
        assert_eq!(normalized_chern(6, 12), (-1, 7));
    }

    #[test]
    fn stability_rules() {
        assert_eq!(stability_class(5, 2), Stability::StrictlySemistable);
        assert_eq!(stability_class(5, 3), Stability::Stable);
        assert_eq!(stability_class(5, 1), Stability::Unstable);
        assert_eq!(stability_class(3, 1), Stability::StrictlySemistable);
        assert_eq!(stability_class(6, 3), Stability::Stable);
        assert_eq!(stability_class(6, 2), Stability::Unstable);
    }

    #[test]
    fn jumping_line_of_quintic() {
        let j = jd("x^5 + y^5 + (x^4 + y^4)*z");
        let r = mdr(&j).unwrap();
        let l = Line::from_ints(0, 0, 1).unwrap();
        assert_eq!(splitting_along_line(&j, r, &l), SplittingType::new(0, 4));
        assert_eq!(jumping_order(&j, r, &Line::from_ints(0, 5, 4).unwrap()), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = generic_line(&j, r, &mut rng).unwrap();
        assert!(weak_lefschetz_holds(&j, &g));
        assert!(strong_lefschetz_holds(&j, r, &g));
        assert!(generic_type_identity(&j, r).passed);
    }
}
