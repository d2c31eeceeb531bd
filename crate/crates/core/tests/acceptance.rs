//! Acceptance suite: one line per criterion, every comparison exact.
//!
//! Run with `cargo test -p logbundle --test acceptance -- --nocapture` to see
//! the report. The test passes when every sub-check passes except the ones
//! listed in `KNOWN_RED`, and those must still fail.

mod common;
mod support;

use std::time::{Duration, Instant};

use logbundle::bourbaki::{
    bourbaki_ideal, intersection_multiplicity, predicted_splitting, prediction_check, same_ideal, v_map, z_support,
    Prediction,
};
use logbundle::bundle::{generic_splitting, splitting_along_line, stability_class, Line, SplittingType, Stability};
use logbundle::check::Check;
use logbundle::jacobian::JacobianData;
use logbundle::linalg::modular::{rank_audit, set_cross_check};
use logbundle::loci::{self, hulek_second_kind, LocusKind, DEFAULT_HEIGHT};
use logbundle::parse::parse_field;
use logbundle::syzygy::{ar_dim, Classification, Syzygy};
use logbundle::{Poly, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{
    admissible, curve_checks, ipoint, line, p, point, q, same_up_to_scalar, setup, setup_over, sorted, syzygy, Counts,
};

/// Sub-checks that conflict with the source and are expected to fail.
const KNOWN_RED: &[&str] = &["V1 ideal has degree 11"];

struct Outcome {
    checks: Vec<Check>,
    elapsed: Duration,
    limit: Duration,
}

fn timed(limit_secs: u64, body: impl FnOnce() -> Vec<Check>) -> Outcome {
    let start = Instant::now();
    let checks = body();
    Outcome {
        checks,
        elapsed: start.elapsed(),
        limit: Duration::from_secs(limit_secs),
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(name: &str, actual: T, expected: T) -> Check {
    Check::eq(name, actual, expected)
}

fn holds(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check::new(name, passed, detail)
}

fn fmt_points(v: &[[Scalar; 3]]) -> String {
    v.iter()
        .map(|p| format!("({}:{}:{})", p[0], p[1], p[2]))
        .collect::<Vec<_>>()
        .join(" ")
}

fn points_eq(name: &str, actual: Vec<[Scalar; 3]>, expected: Vec<[Scalar; 3]>) -> Check {
    let (a, e) = (sorted(actual), sorted(expected));
    holds(name, a == e, format!("actual {}, expected {}", fmt_points(&a), fmt_points(&e)))
}

fn poly_up_to_scalar(name: &str, actual: Option<&Poly>, expected: &str) -> Check {
    let e = p(expected);
    let passed = actual.is_some_and(|a| same_up_to_scalar(a, &e));
    let shown = actual.map_or("none".to_string(), |a| a.to_string());
    holds(name, passed, format!("actual {shown}, expected {e} up to scalar"))
}

fn n_range(jd: &JacobianData, lo: i64, hi: i64) -> Vec<usize> {
    (lo..=hi).map(|k| jd.n_dim(k)).collect()
}

fn criterion_1() -> Vec<Check> {
    let (jd, m) = setup("x^5+y^5+(x^4+y^4)*z");
    let mut c = vec![
        eq("tau", jd.tau, 9),
        eq("r", m.r, 2),
        eq("generator degrees", m.generator_degrees(), vec![2, 4, 4, 4]),
        eq("n3, n4, n5, n6", n_range(&jd, 3, 6), vec![2, 3, 3, 2]),
        eq("nu", jd.nu(), 3),
        eq("stability", stability_class(jd.d, m.r), Stability::StrictlySemistable),
        eq("generic splitting", generic_splitting(jd.d, m.r), SplittingType::new(2, 2)),
    ];
    let v0 = loci::locus(&jd, m.r, 0, DEFAULT_HEIGHT).unwrap();
    c.push(eq("V0 is finite", v0.kind.clone(), LocusKind::Points));
    c.push(points_eq(
        "V0 points",
        v0.rational_points(),
        vec![ipoint(0, 0, 1), ipoint(0, 5, 4), ipoint(5, 0, 4)],
    ));
    c.push(eq("V0 has no other points", v0.points.as_ref().map(|p| p.distinct), Some(3)));
    let v1 = loci::locus(&jd, m.r, 1, DEFAULT_HEIGHT).unwrap();
    c.push(poly_up_to_scalar("V1 determinant", v1.defining_polynomial.as_ref(), "x*y*(4*(x+y)-5*z)"));
    let bd = bourbaki_ideal(&jd, &m, &m.default_rho1(&jd).unwrap()).unwrap();
    let sup = z_support(&bd, &q(), DEFAULT_HEIGHT).unwrap();
    c.push(points_eq(
        "Z support",
        sup.coordinates(),
        vec![ipoint(1, 0, 0), ipoint(0, 1, 0), ipoint(4, 4, -5)],
    ));
    for l in [line(0, 0, 1), line(0, 5, 4), line(5, 0, 4)] {
        c.push(eq(&format!("m_L along {l}"), intersection_multiplicity(&bd, &l).unwrap(), 2));
        c.push(prediction_check(&jd, &bd, m.r, &l).unwrap());
    }
    c
}

fn criterion_2() -> Vec<Check> {
    let (jd, m) = setup("2*x^5+2*y^5+5*x^2*y^2*z");
    let mut c = vec![
        eq("tau", jd.tau, 10),
        eq("r", m.r, 3),
        eq("generator degrees", m.generator_degrees(), vec![3, 3, 3, 3]),
        eq("n4, n5", n_range(&jd, 4, 5), vec![2, 2]),
        eq("stability", stability_class(jd.d, m.r), Stability::Stable),
    ];
    let v0 = loci::locus(&jd, m.r, 0, DEFAULT_HEIGHT).unwrap();
    c.push(eq("V0 empty", v0.kind, LocusKind::Empty));
    let v1 = loci::locus(&jd, m.r, 1, DEFAULT_HEIGHT).unwrap();
    c.push(poly_up_to_scalar("V1 determinant", v1.defining_polynomial.as_ref(), "x*y-z^2"));
    let rho1 = syzygy(&jd, "0; x^2*y; -2*(y^3+x^2*z)");
    let bd = bourbaki_ideal(&jd, &m, &rho1).unwrap();
    c.push(holds(
        "B(C, rho1) = (xz, y^2, xy)",
        same_ideal(&bd.generators, &[p("x*z"), p("y^2"), p("x*y")]).unwrap(),
        bd.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "),
    ));
    c.push(eq("deg Z", bd.degree, 3));
    // (1 : u^2 : u) lies on ab = c^2 and misses the support for u != 0
    for u in [1, -1, 2, -2, 3, -3] {
        let l = line(1, u * u, u);
        let ml = intersection_multiplicity(&bd, &l).unwrap();
        let st = splitting_along_line(&jd, m.r, &l);
        c.push(holds(
            &format!("conic line {l} avoids Z and has d1 = d-r-1"),
            ml == 0 && st.d1 == 1 && predicted_splitting(5, 3, ml) == Prediction::LowerBound(1),
            format!("m_L = {ml}, splitting {st}"),
        ));
    }
    c
}

fn criterion_3() -> Vec<Check> {
    let (jd, m) = setup("(x^2+y^2)^3+(y^3+z^3)^2");
    let mut c = vec![
        eq("tau", jd.tau, 12),
        eq("r", m.r, 3),
        eq("generator degrees", m.generator_degrees(), vec![3, 5, 5, 5]),
        eq("n3..n9", n_range(&jd, 3, 9), vec![1, 4, 6, 7, 6, 4, 1]),
        eq("generic splitting", generic_splitting(jd.d, m.r), SplittingType::new(2, 3)),
    ];
    let v0 = loci::locus(&jd, m.r, 0, DEFAULT_HEIGHT).unwrap();
    c.push(points_eq(
        "V0 points",
        v0.rational_points(),
        vec![ipoint(1, 0, 0), ipoint(0, 1, 0), ipoint(0, 0, 1)],
    ));
    let v1 = loci::locus(&jd, m.r, 1, DEFAULT_HEIGHT).unwrap();
    c.push(eq("V1 dimension", v1.dimension, Some(1)));
    c.push(poly_up_to_scalar("V1 curve part", v1.curve.as_ref(), "x"));
    c.push(points_eq("V1 isolated points", v1.rational_points(), vec![ipoint(1, 0, 0)]));
    let rho1 = syzygy(&jd, "y*z^2; -x*z^2; x*y^2");
    let bd = bourbaki_ideal(&jd, &m, &rho1).unwrap();
    c.push(holds(
        "B(C, rho1) = (xy^2, xz^2, yz^2)",
        same_ideal(&bd.generators, &[p("x*y^2"), p("x*z^2"), p("y*z^2")]).unwrap(),
        bd.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "),
    ));
    c.push(eq("deg Z", bd.degree, 7));
    c
}

const SEXTIC: &str = "x^6+y^6+3*x^2*y^2*z^2";
const SEXTIC_SYZYGIES: [&str; 5] = [
    "0; -x^2*y*z; y^4+x^2*z^2",
    "-x*y^2*z; 0; x^4+y^2*z^2",
    "x*y*z^3; -x^4*z; x^2*y^3-y*z^4",
    "-y^4*z; x*y*z^3; x^3*y^2-x*z^4",
    "-y^5-x^2*y*z^2; x^5+x*y^2*z^2; 0",
];

fn printed_generators(name: &str, jd: &JacobianData, rho1: &Syzygy, others: &[usize], expected: &[String]) -> Check {
    let rho: Vec<Syzygy> = SEXTIC_SYZYGIES.iter().map(|s| syzygy(jd, s)).collect();
    let got: Vec<Poly> = others.iter().map(|&i| v_map(jd, rho1, &rho[i]).unwrap()).collect();
    let want: Vec<Poly> = expected.iter().map(|s| p(s)).collect();
    holds(
        name,
        got == want,
        got.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "),
    )
}

fn criterion_4() -> Vec<Check> {
    let (jd, m) = setup(SEXTIC);
    let mut c = vec![
        eq("tau", jd.tau, 12),
        eq("r", m.r, 4),
        eq("generator degrees", m.generator_degrees(), vec![4, 4, 5, 5, 5]),
        eq("n4..n8", n_range(&jd, 4, 8), vec![3, 6, 7, 6, 3]),
        eq("nu", jd.nu(), 7),
    ];
    let v0 = loci::locus(&jd, m.r, 0, DEFAULT_HEIGHT).unwrap();
    c.push(points_eq("V0 points", v0.rational_points(), vec![ipoint(0, 0, 1)]));
    let v1 = loci::locus(&jd, m.r, 1, DEFAULT_HEIGHT).unwrap();
    c.push(eq("V1 ideal has dimension 0", v1.dimension, Some(0)));
    let pts = v1.points.clone().unwrap();
    c.push(holds(
        "V1 ideal has degree 11",
        v1.degree == 11,
        format!("length {}, {} distinct points over the algebraic closure", v1.degree, pts.distinct),
    ));
    c.push(points_eq(
        "V1 rational points",
        v1.rational_points(),
        vec![
            ipoint(1, 1, 1),
            ipoint(1, 1, -1),
            ipoint(1, -1, 1),
            ipoint(-1, 1, 1),
            ipoint(1, 0, 0),
            ipoint(0, 1, 0),
            ipoint(0, 0, 1),
        ],
    ));

    let omega = parse_field("t^2+t+1").unwrap();
    let (jdw, mw) = setup_over(SEXTIC, &omega);
    let a = omega.generator().unwrap();
    let a2 = &a * &a;
    let v1w = loci::locus(&jdw, mw.r, 1, DEFAULT_HEIGHT).unwrap();
    let one = Scalar::one();
    for (name, pt) in [
        ("P8", [a2.clone(), a.clone(), one.clone()]),
        ("P9", [a.clone(), a2.clone(), one.clone()]),
        ("P10", [a2.clone(), -&a, one.clone()]),
        ("P11", [-&a, a2.clone(), one.clone()]),
    ] {
        let l = Line::new(pt.clone()).unwrap();
        let d1 = splitting_along_line(&jdw, mw.r, &l).d1;
        c.push(holds(
            &format!("{name} lies in V1 over Q(t), t^2+t+1 = 0"),
            v1w.contains(&point(pt)) && d1 == 1,
            format!("d1 = {d1}"),
        ));
    }

    let rho: Vec<Syzygy> = SEXTIC_SYZYGIES.iter().map(|s| syzygy(&jd, s)).collect();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    c.push(printed_generators(
        "choice 1 generators",
        &jd,
        &rho[0],
        &[1, 2, 3, 4],
        &s(&["-x*y*z", "x*z^3", "-y^3*z", "-y^4-x^2*z^2"]),
    ));
    c.push(printed_generators(
        "choice 2 generators",
        &jd,
        &rho[1],
        &[0, 2, 3, 4],
        &s(&["x*y*z", "x^3*z", "-y*z^3", "-x^4-y^2*z^2"]),
    ));
    let t = -1;
    let rho1 = rho[0].add(&rho[1].scale(&Scalar::from_int(t))).unwrap();
    c.push(printed_generators(
        "choice 3 generators, t = -1",
        &jd,
        &rho1,
        &[0, 1, 2, 3, 4],
        &[
            format!("{t}*x*y*z"),
            "-x*y*z".into(),
            format!("x*z*(z^2+{t}*x^2)"),
            format!("-y*z*(y^2+{t}*z^2)"),
            format!("-y^4-x^2*z^2-{t}*(x^4+y^2*z^2)"),
        ],
    ));
    let bd = bourbaki_ideal(&jd, &m, &rho1).unwrap();
    c.push(eq("choice 3 degree formula", bd.degree, 9));
    // the nine points need i = sqrt(-1)
    let gauss = parse_field("t^2+1").unwrap();
    let (jdi, mi) = setup_over(SEXTIC, &gauss);
    let rho_i: Vec<Syzygy> = SEXTIC_SYZYGIES.iter().map(|s| syzygy(&jdi, s)).collect();
    let rho1_i = rho_i[0].add(&rho_i[1].scale(&Scalar::from_int(t))).unwrap();
    let bdi = bourbaki_ideal(&jdi, &mi, &rho1_i).unwrap();
    let i = gauss.generator().unwrap();
    let (zero, minus) = (Scalar::zero(), Scalar::from_int(-1));
    let mut expected: Vec<[Scalar; 3]> = [one.clone(), minus, i.clone(), -&i]
        .into_iter()
        .map(|e| point([e, one.clone(), zero.clone()]))
        .collect();
    expected.extend([ipoint(0, 1, -1), ipoint(0, 1, 1), ipoint(-1, 0, 1), ipoint(1, 0, 1), ipoint(0, 0, 1)]);
    let sup = z_support(&bdi, &gauss, DEFAULT_HEIGHT).unwrap();
    c.push(points_eq("choice 3 support, t = -1", sup.coordinates(), expected));
    c.push(eq("choice 3 support is reduced", sup.points.iter().all(|p| p.multiplicity == 1), true));
    c
}

fn criterion_5_quartic() -> Vec<Check> {
    let (jd, m) = setup("x^4+y^4+z^4");
    let v0 = loci::locus(&jd, m.r, 0, DEFAULT_HEIGHT).unwrap();
    let h = hulek_second_kind(&jd).unwrap();
    vec![
        eq("V0 dimension", v0.dimension, Some(1)),
        poly_up_to_scalar("V0 curve", v0.curve.as_ref(), "x*y*z"),
        eq("V0 degree", v0.degree, 3),
        poly_up_to_scalar("second-kind determinant", Some(&h), "x^4*y^4*z^4"),
        eq("second-kind degree = 2(nu-1)", h.degree(), Some(2 * (jd.nu() as u32 - 1))),
        eq("second-kind degree", h.degree(), Some(12)),
    ]
}

fn criterion_5_cubic(t: i64) -> Vec<Check> {
    let (jd, m) = setup(&format!("x^3+y^3+z^3+3*{t}*x*y*z"));
    let v0 = loci::locus(&jd, m.r, 0, DEFAULT_HEIGHT).unwrap();
    vec![poly_up_to_scalar(
        &format!("cubic t = {t} jumping determinant"),
        v0.defining_polynomial.as_ref(),
        &format!("{t}*(x^3+y^3+z^3)+(2-{t}^3)*x*y*z"),
    )]
}

fn criterion_6() -> Vec<Check> {
    let (jd, m) = setup("x^5*y^2*z^2+x^9+y^9");
    let mut c = vec![eq("r", m.r, 4), eq("ar_4", ar_dim(&jd, 4), 1)];
    let bd = bourbaki_ideal(&jd, &m, &m.default_rho1(&jd).unwrap()).unwrap();
    let sup = z_support(&bd, &q(), DEFAULT_HEIGHT).unwrap();
    c.push(points_eq("Z support", sup.coordinates(), vec![ipoint(0, 1, 0)]));
    c.push(eq("Z has one point over the algebraic closure", sup.distinct, 1));
    c
}

fn criterion_7() -> (Vec<Check>, String) {
    let before = rank_audit();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let mut curves: Vec<(String, JacobianData)> = Vec::new();
    let mut rejected = 0;
    for d in [4, 5, 6, 7].into_iter().cycle() {
        if curves.len() == 24 {
            break;
        }
        let src = common::random_curve_text(&mut rng, d);
        match admissible(&src) {
            Some((_, jd)) => curves.push((src, jd)),
            None => rejected += 1,
        }
    }
    let counts = Counts {
        split_lines: 30,
        prediction_lines: 10,
    };
    let mut out = Vec::new();
    for (src, jd) in &curves {
        for mut c in curve_checks(jd, &mut rng, &counts) {
            c.name = format!("{src}: {}", c.name);
            out.push(c);
        }
    }
    let after = rank_audit();
    let calls = after.calls - before.calls;
    let checked = after.checked - before.checked;
    out.push(holds(
        "every rank call cross-checked",
        calls == checked && calls > 0,
        format!("{checked} of {calls}"),
    ));
    out.push(eq("rank route disagreements", after.disagreements - before.disagreements, 0));
    out.push(eq("uncertified modular ranks", after.uncertified - before.uncertified, 0));
    let degrees: Vec<u32> = curves.iter().map(|(_, jd)| jd.d).collect();
    let note = format!(
        "{} curves (degrees {:?}), {rejected} non-reduced or degenerate draws discarded, {calls} rank calls",
        curves.len(),
        degrees
    );
    (out, note)
}

fn criterion_8() -> Vec<Check> {
    let (jd, m) = setup("x*y*z");
    let mut c = vec![eq("xyz classification", m.classify(jd.nu()).unwrap(), Classification::Free(1, 1))];
    let chain = loci::locus_chain(&jd, m.r, DEFAULT_HEIGHT).unwrap();
    let generic = generic_splitting(jd.d, m.r).d1;
    let jumping: Vec<LocusKind> = chain.iter().filter(|r| r.k < generic).map(|r| r.kind.clone()).collect();
    c.push(holds(
        "xyz has no jumping lines",
        jumping.iter().all(|k| *k == LocusKind::Empty),
        format!("{jumping:?}"),
    ));
    let corpus = [
        "x*y*z",
        "x*y*z*(x+y)",
        "x*y*(x+y)*(x+2*y)*z",
        "x*y*z*(x-y)*(x-z)*(y-z)",
        "x^5+y^5+(x^4+y^4)*z",
        "2*x^5+2*y^5+5*x^2*y^2*z",
        "x^4+y^4+z^4",
        "x*y*z*(x+y+z)",
    ];
    for s in corpus {
        let (jd, m) = setup(s);
        let free = jd.nu() == 0;
        let bd = bourbaki_ideal(&jd, &m, &m.default_rho1(&jd).unwrap()).unwrap();
        let is_free = matches!(m.classify(jd.nu()).unwrap(), Classification::Free(..));
        c.push(holds(
            &format!("{s}: B(C, rho1) = S iff free"),
            bd.is_unit == free && free == is_free,
            format!("unit ideal {}, free {free}", bd.is_unit),
        ));
    }
    c
}

#[derive(Default)]
struct Tally {
    /// Failures that are not in `KNOWN_RED`, and time-limit overruns.
    problems: Vec<String>,
    red_seen: Vec<String>,
}

impl Tally {
    fn report(&mut self, n: &str, title: &str, o: Outcome, note: &str) {
        let within = o.elapsed <= o.limit;
        let failed: Vec<&Check> = o.checks.iter().filter(|c| !c.passed).collect();
        let pass = failed.is_empty() && within;
        let mut line = format!(
            "criterion {n} [{}] {title}: {}/{} checks exact (tolerance 0), {:.2} s (limit {} s)",
            if pass { "PASS" } else { "FAIL" },
            o.checks.len() - failed.len(),
            o.checks.len(),
            o.elapsed.as_secs_f64(),
            o.limit.as_secs()
        );
        if !note.is_empty() {
            line.push_str(&format!("; {note}"));
        }
        for f in &failed {
            line.push_str(&format!("; {f}"));
            if KNOWN_RED.contains(&f.name.as_str()) {
                self.red_seen.push(f.name.clone());
            } else {
                self.problems.push(format!("criterion {n}: {f}"));
            }
        }
        if !within {
            self.problems.push(format!("criterion {n} over its time limit"));
        }
        println!("{line}");
    }
}

#[test]
fn acceptance() {
    set_cross_check(true);
    let mut t = Tally::default();
    t.report("1", "quintic x^5+y^5+(x^4+y^4)z", timed(5, criterion_1), "");
    t.report("2", "quintic 2x^5+2y^5+5x^2y^2z", timed(5, criterion_2), "");
    t.report("3", "Zariski sextic (x^2+y^2)^3+(y^3+z^3)^2", timed(20, criterion_3), "");
    t.report("4", "sextic x^6+y^6+3x^2y^2z^2", timed(60, criterion_4), "");
    t.report("5a", "Fermat quartic", timed(5, criterion_5_quartic), "");
    t.report("5b", "Fermat cubic family, t = 1", timed(5, || criterion_5_cubic(1)), "");
    t.report("5c", "Fermat cubic family, t = 2", timed(5, || criterion_5_cubic(2)), "");
    t.report("6", "nonic x^5y^2z^2+x^9+y^9", timed(60, criterion_6), "");
    let mut note = String::new();
    let o7 = timed(600, || {
        let (c, n) = criterion_7();
        note = n;
        c
    });
    t.report("7", "random reduced curves, d in 4..7", o7, &note);
    t.report("8", "free curves", timed(5, criterion_8), "");
    let audit = rank_audit();
    println!(
        "rank audit: {} calls, {} cross-checked, {} disagreements, {} uncertified",
        audit.calls, audit.checked, audit.disagreements, audit.uncertified
    );
    assert_eq!(audit.disagreements, 0);
    assert!(t.problems.is_empty(), "unexpected failures:\n{}", t.problems.join("\n"));
    for k in KNOWN_RED {
        assert!(
            t.red_seen.iter().any(|r| r == k),
            "known-red check {k:?} no longer fails; revisit the ledger"
        );
    }
}
