//! The analysis report: the full pipeline for one curve and its JSON schema.

use std::time::Instant;

use logbundle::bourbaki::{arrangement_check, bourbaki_ideal, prediction_check, z_support, BourbakiData};
use logbundle::bundle::{
    chern, generic_line, generic_splitting, line_checks, normalized_chern, random_line, stability_class,
    strong_lefschetz_holds, weak_lefschetz_holds, Line,
};
use logbundle::check::Check;
use logbundle::jacobian::{is_reduced, verify_hilbert_shape, JacobianData};
use logbundle::linalg::matrix::primitive_integer_vector;
use logbundle::loci::points::PointReport;
use logbundle::loci::{locus_chain, membership_agrees, LocusReport, DEFAULT_HEIGHT};
use logbundle::parse::{parse_field, parse_poly};
use logbundle::syzygy::{dimension_identity, nu_formula_checks, tau_max, Classification, Syzygy, SyzygyModule};
use logbundle::{FieldSpec, Poly, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

const DUAL: &str = "dual: (a:b:c) is the line a*x + b*y + c*z = 0";
const PRIMAL: &str = "primal: (x:y:z) is a point of the plane";

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool_version: String,
    /// The polynomial text exactly as given.
    pub input: String,
    /// Expanded, graded-lex sorted, content-normalized.
    pub canonical: String,
    pub field: String,
    pub degree: u32,
    /// `T = 3(d-2)`, the top degree of `N(f)`.
    pub top_degree: u32,
    pub tau: usize,
    pub mdr: u32,
    pub mdr_prime: Option<u32>,
    pub generator_degrees: Vec<u32>,
    /// `n(f)_k` for `0 <= k <= T`.
    pub n_table: Vec<usize>,
    pub nu: usize,
    pub classification: ClassificationEntry,
    pub stability: String,
    pub chern: ChernEntry,
    pub generic_splitting: [u32; 2],
    /// Absent for free curves, which have no jumping lines.
    pub jumping_lines: Option<LociSection>,
    pub bourbaki: BourbakiSection,
    pub checks: Vec<CheckEntry>,
    pub timing: Timing,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "camelCase", deny_unknown_fields)]
pub enum ClassificationEntry {
    Free { exponents: [u32; 2] },
    NearlyFree { exponents: [u32; 2] },
    Neither { nu: usize },
}

impl From<Classification> for ClassificationEntry {
    fn from(c: Classification) -> Self {
        match c {
            Classification::Free(a, b) => ClassificationEntry::Free { exponents: [a, b] },
            Classification::NearlyFree(a, b) => ClassificationEntry::NearlyFree { exponents: [a, b] },
            Classification::Neither(nu) => ClassificationEntry::Neither { nu },
        }
    }
}

impl std::fmt::Display for ClassificationEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassificationEntry::Free { exponents: [a, b] } => write!(f, "Free({a},{b})"),
            ClassificationEntry::NearlyFree { exponents: [a, b] } => write!(f, "NearlyFree({a},{b})"),
            ClassificationEntry::Neither { nu } => write!(f, "Neither(nu = {nu})"),
        }
    }
}

/// Chern classes of the bundle and of its normalized twist.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ChernEntry {
    pub c1: i64,
    pub c2: i64,
    pub normalized_c1: i64,
    pub normalized_c2: i64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct LociSection {
    pub coordinates: String,
    pub loci: Vec<LocusEntry>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct LocusEntry {
    pub k: u32,
    pub rows: usize,
    pub cols: usize,
    pub kind: String,
    pub dimension: Option<i32>,
    pub degree: usize,
    pub defining_polynomial: Option<String>,
    pub curve: Option<String>,
    pub minor_count: usize,
    pub points: Option<PointsEntry>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PointsEntry {
    pub points: Vec<PointEntry>,
    /// Length of the scheme.
    pub length: usize,
    /// Distinct points over the algebraic closure.
    pub distinct: usize,
    /// Distinct points not defined over the base field.
    pub deficit: usize,
    pub length_deficit: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PointEntry {
    pub coordinates: [String; 3],
    pub multiplicity: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BourbakiSection {
    pub coordinates: String,
    pub rho1: [String; 3],
    pub generators: Vec<String>,
    pub degree: usize,
    pub expected_degree: i64,
    pub is_unit: bool,
    pub support: Option<PointsEntry>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl From<Check> for CheckEntry {
    fn from(c: Check) -> Self {
        CheckEntry {
            name: c.name,
            passed: c.passed,
            detail: c.detail,
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Timing {
    pub stages: Vec<StageTiming>,
    pub total_millis: u64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct StageTiming {
    pub stage: String,
    pub millis: u64,
}

impl AnalysisReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(s: &str) -> Result<AnalysisReport, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Knobs that change the report; all of them enter the cache key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub degree_bound: Option<u32>,
    pub height: u32,
    /// Random lines used by the embedded checks, besides the coordinate lines.
    pub random_lines: usize,
    pub seed: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            degree_bound: None,
            height: DEFAULT_HEIGHT,
            random_lines: 4,
            seed: 0x10b0,
        }
    }
}

impl AnalyzeOptions {
    pub fn fingerprint(&self) -> String {
        format!(
            "bound={:?};height={};lines={};seed={}",
            self.degree_bound, self.height, self.random_lines, self.seed
        )
    }
}

/// A parsed, validated curve.
pub struct Curve {
    pub field: FieldSpec,
    pub f: Poly,
    pub jd: JacobianData,
}

pub fn parse_field_flag(minpoly: Option<&str>) -> CliResult<FieldSpec> {
    match minpoly {
        None => Ok(FieldSpec::Rationals),
        Some(s) => Ok(parse_field(s)?),
    }
}

/// Parses and validates: homogeneous, degree at least 3, reduced.
pub fn validate(poly: &str, field: &FieldSpec) -> CliResult<Poly> {
    let f = parse_poly(poly, field)?;
    if f.is_zero() {
        return Err(CliError::Rejected("the zero polynomial is not a curve".into()));
    }
    if !f.is_homogeneous() {
        return Err(CliError::Rejected("polynomial is not homogeneous".into()));
    }
    let d = f.degree().unwrap_or(0);
    if d < 3 {
        return Err(CliError::Rejected(format!("curve degree {d} is below 3")));
    }
    if !is_reduced(&f)? {
        return Err(CliError::Rejected("curve is not reduced (f has a repeated factor)".into()));
    }
    Ok(f)
}

pub fn prepare(poly: &str, field: &FieldSpec) -> CliResult<Curve> {
    let f = validate(poly, field)?;
    let jd = JacobianData::new(&f, field)?;
    Ok(Curve {
        field: field.clone(),
        f,
        jd,
    })
}

/// Canonical text of a curve equation.
pub fn canonical_form(f: &Poly) -> String {
    f.primitive().to_string()
}

/// Rational points as primitive integer vectors, others as stored.
pub fn point_text(p: &[Scalar; 3]) -> [String; 3] {
    match primitive_integer_vector(p) {
        Some(v) => [v[0].to_string(), v[1].to_string(), v[2].to_string()],
        None => [p[0].to_string(), p[1].to_string(), p[2].to_string()],
    }
}

pub fn points_entry(p: &PointReport) -> PointsEntry {
    PointsEntry {
        points: p
            .points
            .iter()
            .map(|m| PointEntry {
                coordinates: point_text(&m.point),
                multiplicity: m.multiplicity,
            })
            .collect(),
        length: p.degree,
        distinct: p.distinct,
        deficit: p.deficit,
        length_deficit: p.length_deficit,
    }
}

pub fn dual_text(p: &Poly) -> String {
    p.display_with(&["a", "b", "c"])
}

pub fn locus_entry(rep: &LocusReport) -> LocusEntry {
    LocusEntry {
        k: rep.k,
        rows: rep.shape.0,
        cols: rep.shape.1,
        kind: rep.kind.to_string(),
        dimension: rep.dimension,
        degree: rep.degree,
        defining_polynomial: rep.defining_polynomial.as_ref().map(dual_text),
        curve: rep.curve.as_ref().map(dual_text),
        minor_count: rep.minor_generators.len(),
        points: rep.points.as_ref().map(points_entry),
    }
}

pub fn bourbaki_section(jd: &JacobianData, r: u32, bd: &BourbakiData, height: u32) -> CliResult<BourbakiSection> {
    let support = if bd.is_unit {
        None
    } else {
        Some(points_entry(&z_support(bd, &jd.field, height)?))
    };
    let c = bd.rho1.components();
    Ok(BourbakiSection {
        coordinates: PRIMAL.into(),
        rho1: [c[0].to_string(), c[1].to_string(), c[2].to_string()],
        generators: bd.generators.iter().map(|g| g.to_string()).collect(),
        degree: bd.degree,
        expected_degree: tau_max(jd.d, r) - jd.tau as i64,
        is_unit: bd.is_unit,
        support,
    })
}

struct Clock {
    start: Instant,
    last: Instant,
    stages: Vec<StageTiming>,
}

impl Clock {
    fn new() -> Self {
        let now = Instant::now();
        Clock {
            start: now,
            last: now,
            stages: Vec::new(),
        }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.stages.push(StageTiming {
            stage: stage.into(),
            millis: (now - self.last).as_millis() as u64,
        });
        self.last = now;
    }

    fn finish(self) -> Timing {
        Timing {
            total_millis: self.start.elapsed().as_millis() as u64,
            stages: self.stages,
        }
    }
}

fn coordinate_lines() -> [Line; 3] {
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|[a, b, c]| Line::from_ints(a, b, c).unwrap())
}

fn or_failed(name: &str, r: logbundle::Result<Check>) -> Check {
    r.unwrap_or_else(|e| Check::new(name, false, e.to_string()))
}

/// Theory checks for one curve, on the coordinate lines and a few seeded
/// random lines.
fn theory_checks(
    jd: &JacobianData,
    m: &SyzygyModule,
    loci: &[LocusReport],
    bd: &BourbakiData,
    opts: &AnalyzeOptions,
) -> Vec<Check> {
    let r = m.r;
    let t = jd.t as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut lines: Vec<Line> = coordinate_lines().into();
    lines.extend((0..opts.random_lines).map(|_| random_line(&mut rng)));

    let mut out = Vec::new();
    let dual = (0..=t).all(|k| jd.n_dim(k) == jd.n_dim(t - k));
    out.push(Check::new("N(f) duality", dual, format!("{:?}", jd.n_dims())));
    for k in 0..=2 * jd.d as i64 {
        out.push(dimension_identity(jd, k));
    }
    out.extend(nu_formula_checks(jd, r));
    for l in &lines {
        out.extend(line_checks(jd, r, l));
    }
    match generic_line(jd, r, &mut rng) {
        Some(l) => {
            out.push(Check::new(format!("weak Lefschetz along {l}"), weak_lefschetz_holds(jd, &l), ""));
            out.push(Check::new(
                format!("strong Lefschetz range along {l}"),
                strong_lefschetz_holds(jd, r, &l),
                "",
            ));
        }
        None => out.push(Check::new("generic line found within the resample budget", false, "")),
    }
    let shape = verify_hilbert_shape(jd, r);
    let bad: Vec<String> = shape
        .checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("k = {}: {} vs {}", c.degree, c.actual, c.expected))
        .collect();
    out.push(Check::new("Hilbert function shape", shape.passed(), bad.join(", ")));
    for rep in loci {
        let agree = lines.iter().all(|l| membership_agrees(jd, rep, l));
        out.push(Check::new(format!("V_{} equations agree with ranks on the test lines", rep.k), agree, ""));
    }
    out.push(Check::eq(
        "Bourbaki degree formula",
        bd.degree as i64,
        tau_max(jd.d, r) - jd.tau as i64,
    ));
    out.push(Check::new(
        "B(C, rho1) = S exactly for free curves",
        bd.is_unit == (jd.nu() == 0),
        format!("unit {}, nu {}", bd.is_unit, jd.nu()),
    ));
    for l in &lines {
        out.push(or_failed(&format!("splitting prediction along {l}"), prediction_check(jd, bd, r, l)));
    }
    match arrangement_check(jd, bd, r, opts.height) {
        Ok(cs) => out.extend(cs),
        Err(e) => out.push(Check::new("jumping lines through the support of Z", false, e.to_string())),
    }
    out
}

/// The whole pipeline. Theory-check failures are recorded in the report,
/// not raised.
pub fn analyze(input: &str, field: &FieldSpec, opts: &AnalyzeOptions) -> CliResult<AnalysisReport> {
    let mut clock = Clock::new();
    let curve = prepare(input, field)?;
    let jd = &curve.jd;
    clock.lap("jacobian");
    let m = SyzygyModule::new(jd, opts.degree_bound)?;
    let classification = m.classify(jd.nu())?;
    clock.lap("syzygies");
    let free = matches!(classification, Classification::Free(..));
    let loci = if free {
        Vec::new()
    } else {
        locus_chain(jd, m.r, opts.height)?
    };
    clock.lap("loci");
    let rho1 = m.default_rho1(jd)?;
    let bd = bourbaki_ideal(jd, &m, &rho1)?;
    let bourbaki = bourbaki_section(jd, m.r, &bd, opts.height)?;
    clock.lap("bourbaki");
    let checks = theory_checks(jd, &m, &loci, &bd, opts);
    clock.lap("checks");

    let (c1, c2) = chern(jd.d, jd.tau, -1);
    let (n1, n2) = normalized_chern(jd.d, jd.tau);
    let g = generic_splitting(jd.d, m.r);
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.into(),
        input: input.into(),
        canonical: canonical_form(&curve.f),
        field: field.to_string(),
        degree: jd.d,
        top_degree: jd.t,
        tau: jd.tau,
        mdr: m.r,
        mdr_prime: m.mdr_prime,
        generator_degrees: m.generator_degrees(),
        n_table: jd.n_dims(),
        nu: jd.nu(),
        classification: classification.into(),
        stability: stability_class(jd.d, m.r).to_string(),
        chern: ChernEntry {
            c1,
            c2,
            normalized_c1: n1,
            normalized_c2: n2,
        },
        generic_splitting: [g.d1, g.d2],
        jumping_lines: (!free).then(|| LociSection {
            coordinates: DUAL.into(),
            loci: loci.iter().map(locus_entry).collect(),
        }),
        bourbaki,
        checks: checks.into_iter().map(CheckEntry::from).collect(),
        timing: clock.finish(),
    })
}

/// The syzygy used for the Bourbaki ideal: explicit components, or
/// `e1 + t e2` for the first two echelon basis vectors of `AR(f)_r`.
pub fn choose_rho1(jd: &JacobianData, m: &SyzygyModule, explicit: Option<&str>, combo: Option<&str>) -> CliResult<Syzygy> {
    use logbundle::parse::{parse_scalar, parse_syzygy};
    use logbundle::syzygy::ar_piece;
    match (explicit, combo) {
        (Some(_), Some(_)) => Err(CliError::Usage("--syzygy and --syzygy-combo are exclusive".into())),
        (Some(s), None) => {
            let comps = parse_syzygy(s, &jd.field)?;
            Ok(Syzygy::new(jd.partials(), comps)?)
        }
        (None, Some(t)) => {
            let t = parse_scalar(t, &jd.field)?;
            let e = ar_piece(jd, m.r);
            let rows = e.rows_by_pivot();
            if rows.len() < 2 {
                return Err(CliError::Usage(format!(
                    "--syzygy-combo needs dim AR(f)_r >= 2, found {}",
                    rows.len()
                )));
            }
            let e1 = Syzygy::from_vector(jd.partials(), m.r, rows[0])?;
            let e2 = Syzygy::from_vector(jd.partials(), m.r, rows[1])?;
            e1.add(&e2.scale(&t))
                .ok_or_else(|| CliError::Library(logbundle::Error::InternalInconsistency("combination vanished".into())))
        }
        (None, None) => Ok(m.default_rho1(jd)?),
    }
}
