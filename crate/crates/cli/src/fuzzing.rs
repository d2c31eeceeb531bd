//! Entry points shared by the fuzz targets and the seed replay test. Each
//! takes arbitrary bytes and panics only when an invariant breaks.

use logbundle::parse::{parse_field, parse_line, parse_poly, parse_syzygy};
use logbundle::FieldSpec;

use crate::cache::decode_entry;
use crate::report::AnalysisReport;

fn text(data: &[u8]) -> Option<&str> {
    std::str::from_utf8(data).ok()
}

/// Printed polynomials parse back to themselves.
pub fn poly_text(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let field = FieldSpec::Rationals;
    if let Ok(p) = parse_poly(s, &field) {
        let back = parse_poly(&p.to_string(), &field).expect("printed polynomial parses");
        assert_eq!(back, p);
        let prim = p.primitive();
        assert_eq!(prim.primitive(), prim);
    }
}

/// Accepted minimal polynomials print to a text that gives the same field.
pub fn field_minpoly(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(f) = parse_field(s) {
        if let Some(m) = f.minpoly_text() {
            let again = parse_field(&m).expect("printed minimal polynomial parses");
            assert_eq!(again.to_string(), f.to_string());
        }
    }
}

/// Line coordinates, over QQ and over QQ(i).
pub fn line_coords(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let gauss = parse_field("t^2+1").expect("field");
    for field in [FieldSpec::Rationals, gauss] {
        if let Ok(c) = parse_line(s, &field) {
            assert!(c.iter().any(|x| !x.is_zero()));
        }
    }
}

/// Syzygy text `a;b;c`.
pub fn syzygy_text(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(comps) = parse_syzygy(s, &FieldSpec::Rationals) {
        for p in comps {
            let back = parse_poly(&p.to_string(), &FieldSpec::Rationals).expect("printed component parses");
            assert_eq!(back, p);
        }
    }
}

/// Accepted reports round-trip through their JSON form.
pub fn report_json(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(r) = AnalysisReport::from_json(s) {
        let json = r.to_json();
        assert_eq!(AnalysisReport::from_json(&json).expect("emitted report parses"), r);
    }
}

/// Cache entries decode or are rejected, never panic; accepted ones carry
/// the requested key.
pub fn cache_entry(data: &[u8]) {
    let key = "0".repeat(64);
    let _ = decode_entry(data, &key);
    if let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) {
        if let Some(k) = v.get("key").and_then(|k| k.as_str()) {
            let _ = decode_entry(data, k);
        }
    }
}

/// All targets by name, as laid out under `fuzz/corpus/`.
pub const TARGETS: [(&str, fn(&[u8])); 6] = [
    ("poly_text", poly_text),
    ("field_minpoly", field_minpoly),
    ("line_coords", line_coords),
    ("syzygy_text", syzygy_text),
    ("report_json", report_json),
    ("cache_entry", cache_entry),
];
