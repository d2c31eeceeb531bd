//! Helpers shared by the golden, property and acceptance tests.

#![allow(dead_code)]

use logbundle::bourbaki::{arrangement_check, bourbaki_ideal, prediction_check};
use logbundle::bundle::{generic_line, line_checks, random_line, Line, strong_lefschetz_holds, weak_lefschetz_holds};
use logbundle::check::Check;
use logbundle::jacobian::{is_reduced, verify_hilbert_shape, JacobianData};
use logbundle::parse::{parse_poly, parse_syzygy};
use logbundle::poly::normalize_point;
use logbundle::syzygy::{dimension_identity, nu_formula_checks, Syzygy, SyzygyModule};
use logbundle::{FieldSpec, Poly, Scalar};
use rand_chacha::ChaCha8Rng;

pub fn q() -> FieldSpec {
    FieldSpec::Rationals
}

pub fn p(s: &str) -> Poly {
    parse_poly(s, &q()).unwrap()
}

pub fn setup_over(s: &str, field: &FieldSpec) -> (JacobianData, SyzygyModule) {
    let f = parse_poly(s, field).unwrap();
    let jd = JacobianData::new(&f, field).unwrap();
    let m = SyzygyModule::new(&jd, None).unwrap();
    (jd, m)
}

pub fn setup(s: &str) -> (JacobianData, SyzygyModule) {
    setup_over(s, &q())
}

pub fn line(a: i64, b: i64, c: i64) -> Line {
    Line::from_ints(a, b, c).unwrap()
}

pub fn point(c: [Scalar; 3]) -> [Scalar; 3] {
    normalize_point(&c)
}

pub fn ipoint(a: i64, b: i64, c: i64) -> [Scalar; 3] {
    point([a, b, c].map(Scalar::from_int))
}

pub fn sorted(mut v: Vec<[Scalar; 3]>) -> Vec<[Scalar; 3]> {
    v.sort();
    v
}

pub fn same_up_to_scalar(a: &Poly, b: &Poly) -> bool {
    a.monic() == b.monic()
}

pub fn syzygy(jd: &JacobianData, s: &str) -> Syzygy {
    Syzygy::new(jd.partials(), parse_syzygy(s, &jd.field).unwrap()).unwrap()
}

/// Parses and keeps only reduced curves of degree at least 3.
pub fn admissible(src: &str) -> Option<(Poly, JacobianData)> {
    let f = parse_poly(src, &FieldSpec::Rationals).ok()?;
    if f.is_zero() || f.degree()? < 3 || !is_reduced(&f).ok()? {
        return None;
    }
    let jd = JacobianData::new(&f, &FieldSpec::Rationals).ok()?;
    Some((f, jd))
}

pub struct Counts {
    pub split_lines: usize,
    pub prediction_lines: usize,
}

/// Every invariant the theory guarantees for one reduced curve.
pub fn curve_checks(jd: &JacobianData, rng: &mut ChaCha8Rng, counts: &Counts) -> Vec<Check> {
    let mut out = Vec::new();
    let m = match SyzygyModule::new(jd, None) {
        Ok(m) => m,
        Err(e) => return vec![Check::new("syzygy module", false, e.to_string())],
    };
    let r = m.r;
    let t = jd.t as i64;
    let dual = (0..=t).all(|k| jd.n_dim(k) == jd.n_dim(t - k));
    out.push(Check::new("N(f) duality", dual, format!("{:?}", jd.n_dims())));
    for k in 0..=2 * jd.d as i64 {
        out.push(dimension_identity(jd, k));
    }
    out.extend(nu_formula_checks(jd, r));
    for _ in 0..counts.split_lines {
        out.extend(line_checks(jd, r, &random_line(rng)));
    }
    let generic = generic_line(jd, r, rng);
    out.push(Check::new(
        "generic line found within the resample budget",
        generic.is_some(),
        String::new(),
    ));
    if let Some(l) = generic {
        out.push(Check::new(format!("weak Lefschetz along {l}"), weak_lefschetz_holds(jd, &l), String::new()));
        out.push(Check::new(
            format!("strong Lefschetz range along {l}"),
            strong_lefschetz_holds(jd, r, &l),
            String::new(),
        ));
    }
    let shape = verify_hilbert_shape(jd, r);
    out.push(Check::new(
        "Hilbert function shape",
        shape.passed(),
        format!("{:?}", shape.checks.iter().filter(|c| !c.passed()).collect::<Vec<_>>()),
    ));
    let bd = m
        .default_rho1(jd)
        .and_then(|rho1| bourbaki_ideal(jd, &m, &rho1));
    match bd {
        Ok(bd) => {
            out.push(Check::new("Bourbaki degree formula", true, format!("deg Z = {}", bd.degree)));
            out.push(Check::new(
                "B(C, rho1) = S exactly for free curves",
                bd.is_unit == (jd.nu() == 0),
                format!("unit {}, nu {}", bd.is_unit, jd.nu()),
            ));
            let coordinate = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|[a, b, c]| Line::from_ints(a, b, c).unwrap());
            let random = (0..counts.prediction_lines.saturating_sub(3)).map(|_| random_line(rng));
            for l in coordinate.into_iter().chain(random).collect::<Vec<_>>() {
                match prediction_check(jd, &bd, r, &l) {
                    Ok(c) => out.push(c),
                    Err(e) => out.push(Check::new(format!("prediction along {l}"), false, e.to_string())),
                }
            }
            match arrangement_check(jd, &bd, r, 10) {
                Ok(cs) => out.extend(cs),
                Err(e) => out.push(Check::new("jumping lines through the support of Z", false, e.to_string())),
            }
        }
        Err(e) => out.push(Check::new("Bourbaki degree formula", false, e.to_string())),
    }
    out
}
