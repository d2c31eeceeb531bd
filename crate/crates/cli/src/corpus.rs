//! Built-in example curves with stored expectations.

use std::fmt::Write;

use logbundle::bourbaki::{bourbaki_ideal, intersection_multiplicity, predicted_splitting, same_ideal, z_support, Prediction};
use logbundle::bundle::{jumping_order, splitting_along_line, Line, SplittingType};
use logbundle::check::Check;
use logbundle::jacobian::JacobianData;
use logbundle::loci::{hulek_second_kind, locus, locus_chain, LocusKind};
use logbundle::parse::{parse_poly, parse_scalar, parse_syzygy};
use logbundle::poly::normalize_point;
use logbundle::syzygy::{ar_dim, Classification, Syzygy, SyzygyModule};
use logbundle::{FieldSpec, Poly, Scalar};

use crate::commands::Outcome;
use crate::error::{CliError, CliResult};
use crate::report::{analyze, AnalyzeOptions};

pub const NAMES: [&str; 7] = [
    "fermat_d",
    "cubic_t",
    "exS1_quintic",
    "ex1_quintic",
    "zariski_sextic",
    "ex2_sextic",
    "rkC_nonic",
];

const HEIGHT: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    /// Name with the parameter filled in, e.g. `fermat_4`.
    pub name: String,
    pub poly: String,
    pub field: FieldSpec,
    kind: Kind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Fermat(u32),
    Cubic(Scalar),
    Quintic,
    ConicQuintic,
    Zariski,
    Sextic,
    Nonic,
}

/// Looks up a name; `fermat` and `cubic` are accepted for the parametric
/// families, with the parameter either separate or after an underscore.
pub fn resolve(name: &str, param: Option<&str>) -> CliResult<CorpusEntry> {
    let (base, inline) = match name.split_once('_') {
        Some((b, p)) if (b == "fermat" || b == "cubic") && p != "d" && p != "t" => (b, Some(p)),
        _ => (name, None),
    };
    let param = param.or(inline);
    let entry = |poly: &str, kind: Kind| CorpusEntry {
        name: name.to_string(),
        poly: poly.to_string(),
        field: FieldSpec::Rationals,
        kind,
    };
    let fixed = |e: CorpusEntry| match param {
        Some(p) => Err(CliError::Usage(format!("corpus entry {name} takes no parameter, got {p}"))),
        None => Ok(e),
    };
    match base {
        "fermat_d" | "fermat" => {
            let d: u32 = match param {
                None => 4,
                Some(p) => p
                    .parse()
                    .map_err(|_| CliError::Usage(format!("fermat degree must be an integer, got {p}")))?,
            };
            if d < 3 {
                return Err(CliError::Usage(format!("fermat degree must be at least 3, got {d}")));
            }
            Ok(CorpusEntry {
                name: format!("fermat_{d}"),
                poly: format!("x^{d}+y^{d}+z^{d}"),
                field: FieldSpec::Rationals,
                kind: Kind::Fermat(d),
            })
        }
        "cubic_t" | "cubic" => {
            let text = param.unwrap_or("1");
            let t = parse_scalar(text, &FieldSpec::Rationals)?;
            if (&(&t * &t) * &t) == Scalar::from_int(-1) {
                return Err(CliError::Usage("cubic parameter must satisfy t^3 != -1".into()));
            }
            Ok(CorpusEntry {
                name: format!("cubic_{t}"),
                poly: format!("x^3+y^3+z^3+3*({t})*x*y*z"),
                field: FieldSpec::Rationals,
                kind: Kind::Cubic(t),
            })
        }
        "exS1_quintic" => fixed(entry("x^5+y^5+(x^4+y^4)*z", Kind::Quintic)),
        "ex1_quintic" => fixed(entry("2*x^5+2*y^5+5*x^2*y^2*z", Kind::ConicQuintic)),
        "zariski_sextic" => fixed(entry("(x^2+y^2)^3+(y^3+z^3)^2", Kind::Zariski)),
        "ex2_sextic" => fixed(entry("x^6+y^6+3*x^2*y^2*z^2", Kind::Sextic)),
        "rkC_nonic" => fixed(entry("x^5*y^2*z^2+x^9+y^9", Kind::Nonic)),
        _ => Err(CliError::Usage(format!(
            "unknown corpus entry {name}; known: {}",
            NAMES.join(", ")
        ))),
    }
}

/// Everything `--all` runs: the fixed curves plus one member of each family.
pub fn all_entries() -> Vec<CorpusEntry> {
    let mut out = vec![resolve("fermat_d", Some("4")).unwrap(), resolve("cubic_t", Some("2")).unwrap()];
    out.extend(NAMES[2..].iter().map(|n| resolve(n, None).unwrap()));
    out
}

fn p(s: &str) -> Poly {
    parse_poly(s, &FieldSpec::Rationals).expect("corpus polynomial text")
}

fn same(a: Option<&Poly>, b: &str) -> bool {
    a.is_some_and(|a| a.monic() == p(b).monic())
}

fn pt(a: i64, b: i64, c: i64) -> [Scalar; 3] {
    normalize_point(&[a, b, c].map(Scalar::from_int))
}

fn sorted(mut v: Vec<[Scalar; 3]>) -> Vec<[Scalar; 3]> {
    v.sort();
    v
}

fn line(a: i64, b: i64, c: i64) -> Line {
    Line::from_ints(a, b, c).unwrap()
}

fn syz(jd: &JacobianData, s: &str) -> logbundle::Result<Syzygy> {
    Syzygy::new(jd.partials(), parse_syzygy(s, &jd.field)?)
}

fn support_check(name: &str, jd: &JacobianData, m: &SyzygyModule, rho1: &Syzygy, expected: Vec<[Scalar; 3]>) -> logbundle::Result<Check> {
    let bd = bourbaki_ideal(jd, m, rho1)?;
    let sup = z_support(&bd, &jd.field, HEIGHT)?;
    Ok(Check::eq(name, sorted(sup.coordinates()), sorted(expected)))
}

fn splitting_check(jd: &JacobianData, r: u32, l: &Line, st: SplittingType, order: u32) -> Check {
    Check::eq(
        format!("splitting type and jumping order along {l}"),
        (splitting_along_line(jd, r, l), jumping_order(jd, r, l)),
        (st, order),
    )
}

/// The expectations for one entry. Errors inside a check count as failures.
pub fn expectations(e: &CorpusEntry) -> CliResult<Vec<Check>> {
    let f = parse_poly(&e.poly, &e.field)?;
    let jd = JacobianData::new(&f, &e.field)?;
    let m = SyzygyModule::new(&jd, None)?;
    let r = m.r;
    let mut out = Vec::new();
    let mut push = |name: &str, c: logbundle::Result<Check>| {
        out.push(c.unwrap_or_else(|err| Check::new(name, false, err.to_string())));
    };
    match &e.kind {
        Kind::Fermat(d) => {
            let d = *d;
            push("tau", Ok(Check::eq("tau", jd.tau, 0)));
            push("mdr", Ok(Check::eq("mdr", r, d - 1)));
            push("generator degrees", Ok(Check::eq("generator degrees", m.generator_degrees(), vec![d - 1; 3])));
            push("mdr'", Ok(Check::eq("AR = KR (no mdr')", m.mdr_prime, None)));
            let koszul = format!("{d}*y^{}; -{d}*x^{}; 0", d - 1, d - 1);
            push(
                "Koszul Bourbaki ideal is (f_x, f_y)",
                syz(&jd, &koszul).and_then(|rho1| bourbaki_ideal(&jd, &m, &rho1)).and_then(|bd| {
                    let [fx, fy, _] = jd.partials().clone();
                    Ok(Check::new("Koszul Bourbaki ideal is (f_x, f_y)", same_ideal(&bd.generators, &[fx, fy])?, ""))
                }),
            );
            push(
                "support of Z",
                syz(&jd, &koszul).and_then(|rho1| support_check("support of Z is (0:0:1)", &jd, &m, &rho1, vec![pt(0, 0, 1)])),
            );
            push("z = 0", Ok(Check::eq("d1 along z = 0", splitting_along_line(&jd, r, &line(0, 0, 1)).d1, 0)));
            if d == 4 {
                push(
                    "V_0",
                    locus(&jd, r, 0, HEIGHT).map(|v| {
                        let isolated = v.points.as_ref().map_or(0, |q| q.distinct);
                        Check::new("V_0 is abc = 0", same(v.curve.as_ref(), "x*y*z") && isolated == 0, "")
                    }),
                );
                push(
                    "Hulek",
                    hulek_second_kind(&jd).map(|h| Check::new("second-kind determinant is a^4 b^4 c^4", same(Some(&h), "x^4*y^4*z^4"), "")),
                );
            }
        }
        Kind::Cubic(t) => {
            push("tau", Ok(Check::eq("tau", jd.tau, 0)));
            push("mdr", Ok(Check::eq("mdr", r, 2)));
            let expected = format!("({t})*(x^3+y^3+z^3)+(2-({t})^3)*x*y*z");
            push(
                "V_0",
                locus(&jd, r, 0, HEIGHT).map(|v| {
                    Check::new(
                        "V_0 is t(a^3+b^3+c^3) + (2-t^3)abc = 0",
                        same(v.defining_polynomial.as_ref(), &expected),
                        v.defining_polynomial.map(|q| q.to_string()).unwrap_or_default(),
                    )
                }),
            );
        }
        Kind::Quintic => {
            push("tau", Ok(Check::eq("tau", jd.tau, 9)));
            push("mdr", Ok(Check::eq("mdr", r, 2)));
            push("nu", Ok(Check::eq("nu", jd.nu(), 3)));
            push("n", Ok(Check::eq("n(f)_3..6", jd.n_dims()[3..=6].to_vec(), vec![2, 3, 3, 2])));
            push("generator degrees", Ok(Check::eq("generator degrees", m.generator_degrees(), vec![2, 4, 4, 4])));
            push(
                "V_0",
                locus(&jd, r, 0, HEIGHT).map(|v| {
                    Check::eq(
                        "V_0 points",
                        sorted(v.rational_points()),
                        sorted(vec![pt(0, 0, 1), pt(0, 5, 4), pt(5, 0, 4)]),
                    )
                }),
            );
            push("z", Ok(splitting_check(&jd, r, &line(0, 0, 1), SplittingType::new(0, 4), 2)));
            push("generic", Ok(splitting_check(&jd, r, &line(1, 2, 3), SplittingType::new(2, 2), 0)));
            push(
                "support",
                m.default_rho1(&jd)
                    .and_then(|rho1| support_check("support of Z", &jd, &m, &rho1, vec![pt(1, 0, 0), pt(0, 1, 0), pt(4, 4, -5)])),
            );
            let bd = m.default_rho1(&jd).and_then(|rho1| bourbaki_ideal(&jd, &m, &rho1));
            for l in [line(0, 0, 1), line(0, 5, 4), line(5, 0, 4)] {
                let name = format!("m_L = 2 predicts (0,4) along {l}");
                let c = bd.clone().and_then(|bd| {
                    let ml = intersection_multiplicity(&bd, &l)?;
                    let pred = predicted_splitting(jd.d, r, ml);
                    Ok(Check::eq(&name, (ml, pred), (2, Prediction::Exact(SplittingType::new(0, 4)))))
                });
                push(&name, c);
            }
        }
        Kind::ConicQuintic => {
            push("tau", Ok(Check::eq("tau", jd.tau, 10)));
            push("mdr", Ok(Check::eq("mdr", r, 3)));
            push("nu", Ok(Check::eq("nu", jd.nu(), 2)));
            push(
                "chain",
                locus_chain(&jd, r, HEIGHT).map(|c| {
                    let kinds: Vec<LocusKind> = c.iter().map(|v| v.kind.clone()).collect();
                    Check::eq("V_0, V_1, V_2 kinds", kinds, vec![LocusKind::Empty, LocusKind::Curve, LocusKind::Plane])
                }),
            );
            push(
                "V_1",
                locus(&jd, r, 1, HEIGHT).map(|v| Check::new("V_1 is the conic ab = c^2", same(v.defining_polynomial.as_ref(), "x*y-z^2"), "")),
            );
            push(
                "Bourbaki",
                syz(&jd, "0; x^2*y; -2*(y^3+x^2*z)").and_then(|rho1| bourbaki_ideal(&jd, &m, &rho1)).and_then(|bd| {
                    let ok = same_ideal(&bd.generators, &[p("x*z"), p("y^2"), p("x*y")])?;
                    Ok(Check::new("B(C, rho1) = (xz, y^2, xy) of degree 3", ok && bd.degree == 3, format!("degree {}", bd.degree)))
                }),
            );
            for u in [1, -1, 2] {
                let l = line(1, u * u, u);
                push("conic", Ok(Check::eq(format!("d1 = 1 along the conic line {l}"), splitting_along_line(&jd, r, &l).d1, 1)));
            }
        }
        Kind::Zariski => {
            push("tau", Ok(Check::eq("tau", jd.tau, 12)));
            push("mdr", Ok(Check::eq("mdr", r, 3)));
            push("n", Ok(Check::eq("n(f)_3..9", jd.n_dims()[3..=9].to_vec(), vec![1, 4, 6, 7, 6, 4, 1])));
            push("generator degrees", Ok(Check::eq("generator degrees", m.generator_degrees(), vec![3, 5, 5, 5])));
            push("class", m.classify(jd.nu()).map(|c| Check::eq("classification", c, Classification::Neither(7))));
            push(
                "chain",
                locus_chain(&jd, r, HEIGHT).map(|c| {
                    let v0 = Check::eq("V_0 points", sorted(c[0].rational_points()), sorted(vec![pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)]));
                    let v1 = same(c[1].curve.as_ref(), "x") && c[1].rational_points() == vec![pt(1, 0, 0)];
                    Check::new(
                        "V_0 three points, V_1 the line a = 0 plus (1:0:0), V_2 the plane",
                        v0.passed && v1 && c[2].kind == LocusKind::Plane,
                        v0.detail,
                    )
                }),
            );
            push(
                "Bourbaki",
                syz(&jd, "y*z^2; -x*z^2; x*y^2").and_then(|rho1| bourbaki_ideal(&jd, &m, &rho1)).and_then(|bd| {
                    let ok = same_ideal(&bd.generators, &[p("x*y^2"), p("x*z^2"), p("y*z^2")])?;
                    Ok(Check::new("B(C, rho1) = (xy^2, xz^2, yz^2) of degree 7", ok && bd.degree == 7, format!("degree {}", bd.degree)))
                }),
            );
        }
        Kind::Sextic => {
            push("tau", Ok(Check::eq("tau", jd.tau, 12)));
            push("mdr", Ok(Check::eq("mdr", r, 4)));
            push("ar_4", Ok(Check::eq("ar(f)_4", ar_dim(&jd, 4), 2)));
            push("n", Ok(Check::eq("n(f)_4..8", jd.n_dims()[4..=8].to_vec(), vec![3, 6, 7, 6, 3])));
            push("generator degrees", Ok(Check::eq("generator degrees", m.generator_degrees(), vec![4, 4, 5, 5, 5])));
            push(
                "V_0",
                locus(&jd, r, 0, HEIGHT).map(|v| {
                    Check::eq("V_0: 20 minors, rational point (0:0:1)", (v.minor_generators.len(), v.rational_points()), (20, vec![pt(0, 0, 1)]))
                }),
            );
            push(
                "V_1",
                locus(&jd, r, 1, HEIGHT).map(|v| {
                    let expected = sorted(vec![pt(1, 1, 1), pt(1, 1, -1), pt(1, -1, 1), pt(-1, 1, 1), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)]);
                    let (distinct, length) = v.points.as_ref().map_or((0, 0), |q| (q.distinct, q.degree));
                    Check::eq(
                        "V_1: 7 rational points, 15 distinct, length 21",
                        (sorted(v.rational_points()), distinct, length),
                        (expected, 15, 21),
                    )
                }),
            );
            push("z", Ok(splitting_check(&jd, r, &line(0, 0, 1), SplittingType::new(0, 5), 2)));
            push("111", Ok(Check::eq("d1 along x + y + z = 0", splitting_along_line(&jd, r, &line(1, 1, 1)).d1, 1)));
            push(
                "choice 1",
                syz(&jd, "0; -x^2*y*z; y^4+x^2*z^2")
                    .and_then(|rho1| support_check("support of Z for rho1 = (0, -x^2yz, y^4+x^2z^2)", &jd, &m, &rho1, vec![pt(1, 0, 0), pt(0, 0, 1)])),
            );
        }
        Kind::Nonic => {
            push("tau", Ok(Check::eq("tau", jd.tau, 42)));
            push("mdr", Ok(Check::eq("mdr", r, 4)));
            push("ar_4", Ok(Check::eq("ar(f)_4", ar_dim(&jd, 4), 1)));
            push("generator degrees", Ok(Check::eq("generator degrees", m.generator_degrees(), vec![4, 6, 7, 8])));
            push(
                "support",
                m.default_rho1(&jd).and_then(|rho1| support_check("support of Z is (0:1:0)", &jd, &m, &rho1, vec![pt(0, 1, 0)])),
            );
        }
    }
    Ok(out)
}

/// Runs the full analysis (its embedded checks must pass) and the stored
/// expectations.
pub fn run_entry(e: &CorpusEntry) -> CliResult<Vec<Check>> {
    let report = analyze(&e.poly, &e.field, &AnalyzeOptions::default())?;
    let failed: Vec<String> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
    let mut out = vec![Check::new(
        format!("{} embedded theory checks", report.checks.len()),
        failed.is_empty(),
        failed.join("; "),
    )];
    out.extend(expectations(e)?);
    Ok(out)
}

pub fn cmd_corpus(entries: &[CorpusEntry]) -> CliResult<Outcome> {
    let mut stdout = String::new();
    let mut failures = 0;
    for e in entries {
        let _ = writeln!(stdout, "{}  {}", e.name, e.poly);
        let checks = match run_entry(e) {
            Ok(c) => c,
            Err(err) => vec![Check::new("analysis", false, err.to_string())],
        };
        for c in &checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if c.passed || c.detail.is_empty() {
                let _ = writeln!(stdout, "  [{status}] {}", c.name);
            } else {
                let _ = writeln!(stdout, "  [{status}] {}: {}", c.name, c.detail);
            }
        }
        failures += checks.iter().filter(|c| !c.passed).count();
    }
    let _ = writeln!(stdout, "{failures} mismatches");
    Ok(Outcome {
        stdout,
        code: if failures == 0 { 0 } else { 1 },
    })
}
