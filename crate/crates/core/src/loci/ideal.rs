//! Dimension and degree of homogeneous ideals in three variables, read from
//! the Hilbert function in a stable window.

use crate::error::{Error, Result};
use crate::graded::{saturate_down, GradedIdeal};
use crate::poly::Poly;

/// Summary of `V(I)` for a homogeneous ideal `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSummary {
    /// `-1` (empty), `0`, `1` or `2` (zero ideal).
    pub dimension: i32,
    pub degree: usize,
    /// Hilbert function of `S/I` in degrees `0..=bound`.
    pub hilbert: Vec<usize>,
    /// Hilbert function of `S/I^sat` in degrees `0..=bound`.
    pub saturated_hilbert: Vec<usize>,
    pub bound: u32,
}

impl IdealSummary {
    /// The saturation is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.saturated_hilbert.first() == Some(&0)
    }
}

const WINDOW: usize = 4;

fn read_window(hf: &[usize]) -> Option<(i32, usize)> {
    let w = &hf[hf.len() - WINDOW..];
    if w.iter().all(|&v| v == w[0]) {
        return Some(if w[0] == 0 { (-1, 0) } else { (0, w[0]) });
    }
    let diffs: Vec<i64> = w.windows(2).map(|p| p[1] as i64 - p[0] as i64).collect();
    if diffs[0] > 0 && diffs.iter().all(|&e| e == diffs[0]) {
        return Some((1, diffs[0] as usize));
    }
    None
}

/// The ideal together with the degree where its Hilbert function is stable.
pub struct StableIdeal {
    pub ideal: GradedIdeal,
    pub summary: IdealSummary,
}

/// Reads dimension and degree on the top window of `0..=bound` (default
/// `4 * max generator degree + 8`); raises the bound once if no stable
/// pattern shows up.
pub fn stable_ideal(gens: &[Poly], bound: Option<u32>) -> Result<StableIdeal> {
    let mut ideal = GradedIdeal::new(gens)?;
    let Some(maxdeg) = ideal.max_generator_degree() else {
        let summary = IdealSummary {
            dimension: 2,
            degree: 1,
            hilbert: Vec::new(),
            saturated_hilbert: Vec::new(),
            bound: 0,
        };
        return Ok(StableIdeal { ideal, summary });
    };
    let first = bound.unwrap_or(4 * maxdeg + 8).max(WINDOW as u32);
    for b in [first, 2 * first] {
        let hf: Vec<usize> = (0..=b).map(|k| ideal.hilbert(k)).collect();
        if let Some((dimension, degree)) = read_window(&hf) {
            let sat = saturate_down(&mut ideal, b);
            let summary = IdealSummary {
                dimension,
                degree,
                hilbert: hf,
                saturated_hilbert: sat.iter().map(|p| p.codim()).collect(),
                bound: b,
            };
            return Ok(StableIdeal { ideal, summary });
        }
    }
    Err(Error::BoundTooSmall(2 * first))
}

pub fn ideal_dim_degree(gens: &[Poly], bound: Option<u32>) -> Result<IdealSummary> {
    Ok(stable_ideal(gens, bound)?.summary)
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
    fn conic_points_and_unit() {
        let s = ideal_dim_degree(&[p("x*y - z^2")], None).unwrap();
        assert_eq!((s.dimension, s.degree), (1, 2));
        let s = ideal_dim_degree(&[p("x*z"), p("y^2"), p("x*y")], None).unwrap();
        assert_eq!((s.dimension, s.degree), (0, 3));
        let s = ideal_dim_degree(&[p("x"), p("y"), p("z")], None).unwrap();
        assert_eq!(s.dimension, -1);
        assert!(s.is_unit());
        let s = ideal_dim_degree(&[p("x^2"), p("y^2"), p("z^2")], None).unwrap();
        assert_eq!(s.dimension, -1);
        assert!(s.is_unit());
    }
}
