//! Subspaces of `K^n` kept in sparse reduced row echelon form.
//!
//! The pivot of a row is its largest index. With coordinates ordered by
//! [`crate::poly::monomial_basis`] this is the graded-lex least monomial, so
//! standard (non-pivot) coordinates are the largest monomials not forced by
//! the subspace.

use crate::field::Scalar;

/// Sparse vector, entries sorted by index, no zero entries.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &[(usize, Scalar)], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// `a + s*b`.
pub fn axpy(a: &[(usize, Scalar)], s: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = s * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(s * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_sparse(v: &[(usize, Scalar)], s: &Scalar) -> SparseVec {
    if s.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, c)| (*i, c * s)).collect()
}

fn entry<'a>(v: &'a [(usize, Scalar)], idx: usize) -> Option<&'a Scalar> {
    v.binary_search_by_key(&idx, |e| e.0).ok().map(|p| &v[p].1)
}

/// A subspace of `K^dim` in reduced row echelon form with right-most pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    dim: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivot_row: vec![None; dim],
        }
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec>>(dim: usize, vs: I) -> Self {
        let mut e = Echelon::new(dim);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Rows sorted by pivot, ascending.
    pub fn rows_by_pivot(&self) -> Vec<&SparseVec> {
        self.pivot_row
            .iter()
            .filter_map(|r| r.map(|r| &self.rows[r]))
            .collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.pivot_row[i].is_some()).collect()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivot_row[i].is_some()
    }

    /// The row with pivot `i`.
    pub fn row_with_pivot(&self, i: usize) -> Option<&SparseVec> {
        self.pivot_row[i].map(|r| &self.rows[r])
    }

    /// Non-pivot coordinates, ascending.
    pub fn standard_indices(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.pivot_row[i].is_none()).collect()
    }

    /// Normal form of `v` modulo the subspace; supported on standard indices.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut out: SparseVec = v.to_vec();
        for (i, c) in v {
            if let Some(r) = self.pivot_row[*i] {
                out = axpy(&out, &-c, &self.rows[r]);
            }
        }
        out
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let w = self.reduce(&v);
        let Some((p, lead)) = w.last().cloned() else {
            return false;
        };
        let w = scale_sparse(&w, &lead.inv().unwrap());
        for row in self.rows.iter_mut() {
            if let Some(c) = entry(row, p).cloned() {
                *row = axpy(row, &-c, &w);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(w);
        true
    }

    /// Coefficients of `v` on the rows (listed in ascending pivot order), or
    /// `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[(usize, Scalar)]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            (0..self.dim)
                .filter(|&i| self.pivot_row[i].is_some())
                .map(|i| entry(v, i).cloned().unwrap_or_else(Scalar::zero))
                .collect(),
        )
    }

    pub fn is_subspace_of(&self, other: &Echelon) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}
