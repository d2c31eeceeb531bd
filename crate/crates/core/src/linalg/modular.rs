//! Ranks modulo word-size primes and their exact certification.
//!
//! A rank computed modulo `p` never exceeds the rank over the rationals. It is
//! promoted to the true rank only after an exact nonsingular minor of that
//! size is exhibited and a kernel of complementary dimension is verified.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::field::Scalar;
use crate::linalg::echelon::SparseVec;
use crate::linalg::matrix::ExactMatrix;

/// Primes just below 2^31, so products fit in a `u64`.
pub const PRIMES: [u64; 4] = [2_147_483_647, 2_147_483_629, 2_147_483_587, 2_147_483_579];

static CROSS_CHECK: AtomicBool = AtomicBool::new(false);
static RANK_CALLS: AtomicUsize = AtomicUsize::new(0);
static CHECKED_CALLS: AtomicUsize = AtomicUsize::new(0);
static DISAGREEMENTS: AtomicUsize = AtomicUsize::new(0);
static UNCERTIFIED: AtomicUsize = AtomicUsize::new(0);

/// Counters for the rank cross-check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RankAudit {
    pub calls: usize,
    /// Calls where the modular route ran (rational matrices only).
    pub checked: usize,
    /// Certified modular rank differed from the fraction-free rank.
    pub disagreements: usize,
    /// The modular rank could not be certified.
    pub uncertified: usize,
}

/// Turns the per-call comparison of the two rank routes on or off.
pub fn set_cross_check(on: bool) {
    CROSS_CHECK.store(on, Ordering::SeqCst);
}

pub fn rank_audit() -> RankAudit {
    RankAudit {
        calls: RANK_CALLS.load(Ordering::SeqCst),
        checked: CHECKED_CALLS.load(Ordering::SeqCst),
        disagreements: DISAGREEMENTS.load(Ordering::SeqCst),
        uncertified: UNCERTIFIED.load(Ordering::SeqCst),
    }
}

pub(crate) fn record_rank_call(m: &ExactMatrix, exact: usize) {
    RANK_CALLS.fetch_add(1, Ordering::Relaxed);
    if !CROSS_CHECK.load(Ordering::Relaxed) || !m.is_rational() {
        return;
    }
    CHECKED_CALLS.fetch_add(1, Ordering::Relaxed);
    match certified_rank(m) {
        Some(r) if r == exact => {}
        Some(_) => {
            DISAGREEMENTS.fetch_add(1, Ordering::Relaxed);
        }
        None => {
            UNCERTIFIED.fetch_add(1, Ordering::Relaxed);
        }
    }
}

fn reduce_scalar(c: &Scalar, p: u64) -> Option<u64> {
    let r = c.as_rational()?;
    let pb = BigInt::from(p);
    let n = r.numer().mod_floor(&pb).to_u64().unwrap();
    let d = r.denom().mod_floor(&pb).to_u64().unwrap();
    if d == 0 {
        return None;
    }
    Some(mulmod(n, powmod(d, p - 2, p), p))
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Result of elimination modulo a prime.
#[derive(Clone, Debug)]
pub struct ModularEchelon {
    pub prime: u64,
    pub rank: usize,
    /// Original row index of each pivot, in elimination order.
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

/// Gaussian elimination of sparse rational rows modulo `p`; `None` when a
/// denominator vanishes modulo `p` or an entry is not rational.
pub fn echelon_mod_p(rows: &[SparseVec], ncols: usize, p: u64) -> Option<ModularEchelon> {
    let mut reduced: Vec<Vec<u64>> = Vec::new();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut pivot_rows = Vec::new();
    let mut pivot_cols = Vec::new();
    for (ri, row) in rows.iter().enumerate() {
        let mut v = vec![0u64; ncols];
        for (j, c) in row {
            v[*j] = reduce_scalar(c, p)?;
        }
        // eliminate against existing pivots, left to right
        for j in 0..ncols {
            if v[j] == 0 {
                continue;
            }
            if let Some(k) = pivot_of_col[j] {
                let f = v[j];
                let prow = &reduced[k];
                for t in j..ncols {
                    if prow[t] != 0 {
                        v[t] = (v[t] + p - mulmod(f, prow[t], p)) % p;
                    }
                }
            }
        }
        if let Some(j) = v.iter().position(|&c| c != 0) {
            let inv = powmod(v[j], p - 2, p);
            for c in v.iter_mut().skip(j) {
                *c = mulmod(*c, inv, p);
            }
            pivot_of_col[j] = Some(reduced.len());
            reduced.push(v);
            pivot_rows.push(ri);
            pivot_cols.push(j);
            if reduced.len() == ncols {
                break;
            }
        }
    }
    Some(ModularEchelon {
        prime: p,
        rank: reduced.len(),
        pivot_rows,
        pivot_cols,
    })
}

/// Largest rank seen over the first `primes` primes; a lower bound for the
/// true rank.
pub fn modular_rank_rows(rows: &[SparseVec], ncols: usize, primes: usize) -> Option<ModularEchelon> {
    PRIMES
        .iter()
        .take(primes.max(1))
        .filter_map(|&p| echelon_mod_p(rows, ncols, p))
        .max_by_key(|e| e.rank)
}

pub fn modular_rank(m: &ExactMatrix, primes: usize) -> Option<usize> {
    modular_rank_rows(&m.sparse_rows(), m.cols(), primes).map(|e| e.rank)
}

/// Certified rank of a rational matrix, or `None` when the modular rank
/// cannot be certified (or the matrix is not rational).
pub fn certified_rank(m: &ExactMatrix) -> Option<usize> {
    if !m.is_rational() {
        return None;
    }
    let e = modular_rank_rows(&m.sparse_rows(), m.cols(), 2)?;
    let r = e.rank;
    if r == 0 {
        return m.is_zero().then_some(0);
    }
    let mut cols = e.pivot_cols.clone();
    let mut rows = e.pivot_rows.clone();
    // keep columns sorted for a stable minor; rows follow their pivot order
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by_key(|&i| cols[i]);
    cols = order.iter().map(|&i| e.pivot_cols[i]).collect();
    rows = order.iter().map(|&i| rows[i]).collect();
    let minor = m.submatrix(&rows, &cols);
    if minor.determinant().is_zero() {
        return None;
    }
    // kernel: for every non-pivot column j solve minor * x = -m[rows, j]
    let inv_cols: Vec<usize> = (0..m.cols()).filter(|j| !cols.contains(j)).collect();
    if inv_cols.is_empty() {
        return Some(r);
    }
    let mut aug = ExactMatrix::zeros(r, r + inv_cols.len());
    for a in 0..r {
        for b in 0..r {
            aug.set(a, b, minor.get(a, b).clone());
        }
        for (t, &j) in inv_cols.iter().enumerate() {
            aug.set(a, r + t, -m.get(rows[a], j));
        }
    }
    let (red, piv) = aug.rref();
    if piv.len() != r || piv.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    for (t, &j) in inv_cols.iter().enumerate() {
        let mut v = vec![Scalar::zero(); m.cols()];
        v[j] = Scalar::one();
        for a in 0..r {
            v[cols[a]] = red.get(a, r + t).clone();
        }
        if m.mul_vec(&v).iter().any(|c| !c.is_zero()) {
            return None;
        }
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_rank_matches_exact_on_small_matrix() {
        let m = ExactMatrix::from_int_rows(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 0, 1], &[1, 3, 3, 5]]);
        assert_eq!(m.rank_fraction_free(), 2);
        assert_eq!(modular_rank(&m, 2), Some(2));
        assert_eq!(certified_rank(&m), Some(2));
    }

    #[test]
    fn modular_rank_can_undershoot_but_certification_catches_it() {
        let p = PRIMES[0] as i64;
        let m = ExactMatrix::from_int_rows(&[&[p, 0], &[0, 1]]);
        let e = echelon_mod_p(&m.sparse_rows(), 2, PRIMES[0]).unwrap();
        assert_eq!(e.rank, 1);
        // the second prime sees the full rank
        assert_eq!(certified_rank(&m), Some(2));
    }
}
