//! The subcommands, returning their stdout and exit code.

use std::fmt::Write;
use std::path::Path;

use logbundle::bourbaki::{bourbaki_ideal, intersection_multiplicity, predicted_splitting};
use logbundle::bundle::{jumping_order, splitting_along_line, Line};
use logbundle::loci::{locus, locus_chain, DEFAULT_HEIGHT};
use logbundle::parse::parse_line;
use logbundle::syzygy::SyzygyModule;

use crate::cache::{cache_key, Cache};
use crate::error::CliResult;
use crate::report::{
    analyze, bourbaki_section, canonical_form, choose_rho1, locus_entry, parse_field_flag, point_text, prepare, validate,
    AnalysisReport, AnalyzeOptions, BourbakiSection, LocusEntry, PointsEntry,
};

/// Exit code when a theory check embedded in the report fails.
pub const CHECK_FAILED: i32 = 4;

#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

pub struct AnalyzeArgs<'a> {
    pub poly: &'a str,
    pub field: Option<&'a str>,
    pub json: bool,
    pub degree_bound: Option<u32>,
    pub cache_dir: Option<&'a Path>,
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> CliResult<Outcome> {
    let field = parse_field_flag(args.field)?;
    let opts = AnalyzeOptions {
        degree_bound: args.degree_bound,
        ..AnalyzeOptions::default()
    };
    let report = match args.cache_dir {
        None => analyze(args.poly, &field, &opts)?,
        Some(dir) => {
            let f = validate(args.poly, &field)?;
            let key = cache_key(&canonical_form(&f), &field.to_string(), &opts.fingerprint());
            let cache = Cache::new(dir)?;
            match cache.load(&key) {
                Some(mut r) => {
                    log::info!("cache hit {key}");
                    r.input = args.poly.to_string();
                    r
                }
                None => {
                    let r = analyze(args.poly, &field, &opts)?;
                    if let Err(e) = cache.store(&key, &r) {
                        log::warn!("could not write cache entry {key}: {e}");
                    }
                    r
                }
            }
        }
    };
    let stdout = if args.json { report.to_json() } else { render_report(&report) };
    let code = if report.all_passed() { 0 } else { CHECK_FAILED };
    Ok(Outcome { stdout, code })
}

fn points_text(p: &PointsEntry, out: &mut String, indent: &str) {
    for pt in &p.points {
        let [a, b, c] = &pt.coordinates;
        let _ = writeln!(out, "{indent}({a} : {b} : {c})  multiplicity {}", pt.multiplicity);
    }
    let _ = writeln!(
        out,
        "{indent}length {}, {} distinct, {} not over the base field",
        p.length, p.distinct, p.deficit
    );
}

pub fn render_locus(l: &LocusEntry, out: &mut String) {
    let dim = l.dimension.map_or("?".to_string(), |d| d.to_string());
    let _ = writeln!(
        out,
        "  V_{}: {} ({}x{} matrix, dimension {dim}, degree {})",
        l.k, l.kind, l.rows, l.cols, l.degree
    );
    if let Some(p) = &l.defining_polynomial {
        let _ = writeln!(out, "    equation {p} = 0");
    } else if let Some(c) = &l.curve {
        let _ = writeln!(out, "    curve part {c} = 0");
    }
    if l.minor_count > 0 {
        let _ = writeln!(out, "    {} maximal minors", l.minor_count);
    }
    if let Some(p) = l.points.as_ref().filter(|p| p.distinct > 0) {
        points_text(p, out, "    ");
    }
}

pub fn render_bourbaki(b: &BourbakiSection, out: &mut String) {
    let _ = writeln!(out, "Bourbaki ideal ({})", b.coordinates);
    let _ = writeln!(out, "  rho1 = ({}; {}; {})", b.rho1[0], b.rho1[1], b.rho1[2]);
    if b.is_unit {
        let _ = writeln!(out, "  B(C, rho1) = S, the curve is free");
    } else {
        let _ = writeln!(out, "  generators {}", b.generators.join(", "));
    }
    let _ = writeln!(out, "  deg Z = {} (formula {})", b.degree, b.expected_degree);
    if let Some(s) = &b.support {
        let _ = writeln!(out, "  support of Z:");
        points_text(s, out, "    ");
    }
}

pub fn render_report(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "curve          {}", r.canonical);
    let _ = writeln!(w, "field          {}", r.field);
    let _ = writeln!(w, "degree         {} (T = {})", r.degree, r.top_degree);
    let _ = writeln!(w, "tau            {}", r.tau);
    let mdr_prime = r.mdr_prime.map_or("none below 2d".to_string(), |m| m.to_string());
    let _ = writeln!(w, "mdr            {} (mdr' {mdr_prime})", r.mdr);
    let degs: Vec<String> = r.generator_degrees.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(w, "generators     degrees {}", degs.join(", "));
    let n: Vec<String> = r.n_table.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(w, "n(f)_0..T      {}", n.join(" "));
    let _ = writeln!(w, "nu             {}", r.nu);
    let _ = writeln!(w, "class          {}", r.classification);
    let _ = writeln!(w, "stability      {}", r.stability);
    let _ = writeln!(
        w,
        "chern          c1 = {}, c2 = {}; normalized c1 = {}, c2 = {}",
        r.chern.c1, r.chern.c2, r.chern.normalized_c1, r.chern.normalized_c2
    );
    let [g1, g2] = r.generic_splitting;
    let _ = writeln!(w, "generic split  ({g1},{g2})");
    match &r.jumping_lines {
        Some(s) => {
            let _ = writeln!(w, "Jumping loci ({})", s.coordinates);
            for l in &s.loci {
                render_locus(l, w);
            }
        }
        None => {
            let _ = writeln!(w, "no jumping lines (free curve)");
        }
    }
    render_bourbaki(&r.bourbaki, w);
    let passed = r.checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(w, "checks         {passed}/{} passed", r.checks.len());
    for c in r.checks.iter().filter(|c| !c.passed) {
        let _ = writeln!(w, "  FAILED {}: {}", c.name, c.detail);
    }
    let _ = writeln!(w, "time           {} ms", r.timing.total_millis);
    out
}

pub fn cmd_splitting(poly: &str, field: Option<&str>, line: &str) -> CliResult<Outcome> {
    let field = parse_field_flag(field)?;
    let c = prepare(poly, &field)?;
    let l = Line::new(parse_line(line, &field)?)?;
    let r = logbundle::syzygy::mdr(&c.jd)?;
    let st = splitting_along_line(&c.jd, r, &l);
    let order = jumping_order(&c.jd, r, &l);
    let [a, b, cc] = point_text(l.coords());
    Ok(Outcome::ok(format!(
        "line ({a}:{b}:{cc}): splitting type {st}, jumping order {order}\n"
    )))
}

pub fn cmd_loci(poly: &str, field: Option<&str>, k: Option<u32>) -> CliResult<Outcome> {
    let field = parse_field_flag(field)?;
    let c = prepare(poly, &field)?;
    let r = logbundle::syzygy::mdr(&c.jd)?;
    let reps = match k {
        Some(k) => vec![locus(&c.jd, r, k, DEFAULT_HEIGHT)?],
        None => locus_chain(&c.jd, r, DEFAULT_HEIGHT)?,
    };
    let mut out = format!("Jumping loci (dual: (a:b:c) is the line a*x + b*y + c*z = 0), mdr {r}\n");
    for rep in &reps {
        render_locus(&locus_entry(rep), &mut out);
    }
    Ok(Outcome::ok(out))
}

pub fn cmd_bourbaki(poly: &str, field: Option<&str>, syzygy: Option<&str>, combo: Option<&str>) -> CliResult<Outcome> {
    let field = parse_field_flag(field)?;
    let c = prepare(poly, &field)?;
    let m = SyzygyModule::new(&c.jd, None)?;
    let rho1 = choose_rho1(&c.jd, &m, syzygy, combo)?;
    let bd = bourbaki_ideal(&c.jd, &m, &rho1)?;
    let sec = bourbaki_section(&c.jd, m.r, &bd, DEFAULT_HEIGHT)?;
    let mut out = String::new();
    render_bourbaki(&sec, &mut out);
    if !bd.is_unit {
        let _ = writeln!(out, "Predictions along the coordinate lines");
        for [a, b, cc] in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
            let l = Line::from_ints(a, b, cc)?;
            let ml = intersection_multiplicity(&bd, &l)?;
            let pred = predicted_splitting(c.jd.d, m.r, ml);
            let direct = splitting_along_line(&c.jd, m.r, &l);
            let _ = writeln!(out, "  line {l}: m_L = {ml}, predicted {pred}, direct {direct}");
        }
    }
    Ok(Outcome::ok(out))
}
