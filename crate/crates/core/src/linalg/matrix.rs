use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::echelon::{sparse_from_dense, Echelon, SparseVec};
use crate::linalg::modular;

/// Dense matrix over the base field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect(),
        )
    }

    /// Builds a matrix from sparse columns.
    pub fn from_sparse_cols(rows: usize, cols: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.data.iter().all(|c| c.as_rational().is_some())
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows).map(|i| sparse_from_dense(self.row(i))).collect()
    }

    /// Rows scaled to primitive integer vectors (rational matrices only).
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row.iter().fold(BigInt::one(), |acc, c| {
                    acc.lcm(c.as_rational().unwrap().denom())
                });
                row.iter()
                    .map(|c| {
                        let r = c.as_rational().unwrap();
                        r.numer() * (&lcm / r.denom())
                    })
                    .collect()
            })
            .collect()
    }

    /// Exact rank. When the modular cross-check is switched on, the
    /// certified modular rank is computed too and any disagreement counted.
    pub fn rank(&self) -> usize {
        let r = self.rank_fraction_free();
        modular::record_rank_call(self, r);
        r
    }

    /// Rank by fraction-free elimination only.
    pub fn rank_fraction_free(&self) -> usize {
        if self.is_rational() {
            bareiss_int(self.integer_rows(), self.cols).0
        } else {
            gauss_scalar(self).rank
        }
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return Scalar::one();
        }
        if self.is_rational() {
            // det(M) = det(D M) / prod(row scales)
            let mut scale = num_rational::BigRational::one();
            let ints: Vec<Vec<BigInt>> = (0..self.rows)
                .map(|i| {
                    let row = self.row(i);
                    let lcm = row.iter().fold(BigInt::one(), |acc, c| {
                        acc.lcm(c.as_rational().unwrap().denom())
                    });
                    scale *= num_rational::BigRational::from_integer(lcm.clone());
                    row.iter()
                        .map(|c| {
                            let r = c.as_rational().unwrap();
                            r.numer() * (&lcm / r.denom())
                        })
                        .collect()
                })
                .collect();
            let (rank, det) = bareiss_int(ints, self.cols);
            if rank < self.rows {
                return Scalar::zero();
            }
            Scalar::Rat(num_rational::BigRational::from_integer(det) / scale)
        } else {
            gauss_scalar(self).det.unwrap()
        }
    }

    /// Reduced row echelon form (left-most pivots) and the pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let g = gauss_scalar(self);
        (g.reduced, g.pivots)
    }

    /// Basis of the right kernel: one vector per free column `j`, equal to
    /// `e_j` minus the pivot-column combination read from the reduced form.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        let mut out = Vec::new();
        for j in 0..self.cols {
            if is_pivot[j].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[j] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                let c = r.get(i, j);
                if !c.is_zero() {
                    v[p] = -c;
                }
            }
            out.push(v);
        }
        out
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Fraction-free elimination on integer rows. Returns the rank and, for a
/// square input of full rank, the determinant.
///
/// The pivot column is the first column with a nonzero entry among the
/// remaining rows; among candidate rows the one with the smallest maximal
/// bit length wins.
fn bareiss_int(mut a: Vec<Vec<BigInt>>, cols: usize) -> (usize, BigInt) {
    let n = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut sign_flips = 0usize;
    let mut col = 0;
    while rank < n && col < cols {
        let mut best: Option<(usize, u64)> = None;
        for (i, row) in a.iter().enumerate().skip(rank) {
            if !row[col].is_zero() {
                let h = row[col..].iter().map(|v| v.bits()).max().unwrap_or(0);
                if best.is_none_or(|(_, bh)| h < bh) {
                    best = Some((i, h));
                }
            }
        }
        let Some((p, _)) = best else {
            col += 1;
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            sign_flips += 1;
        }
        let (top, bottom) = a.split_at_mut(rank + 1);
        let piv_row = &top[rank];
        let piv = piv_row[col].clone();
        for row in bottom.iter_mut() {
            let factor = row[col].clone();
            for j in (col + 1)..cols {
                let v = &piv * &row[j] - &factor * &piv_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[col] = BigInt::zero();
        }
        prev = piv;
        rank += 1;
        col += 1;
    }
    let det = if rank == n && n == cols {
        if sign_flips % 2 == 1 {
            -prev
        } else {
            prev
        }
    } else {
        BigInt::zero()
    };
    (rank, det)
}

struct Gauss {
    rank: usize,
    pivots: Vec<usize>,
    reduced: ExactMatrix,
    det: Option<Scalar>,
}

/// Gauss-Jordan over the base field.
fn gauss_scalar(m: &ExactMatrix) -> Gauss {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut det = Scalar::one();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let mut best: Option<(usize, u64)> = None;
        for i in row..a.rows {
            let v = a.get(i, col);
            if !v.is_zero() {
                let h = v.bit_height();
                if best.is_none_or(|(_, bh)| h < bh) {
                    best = Some((i, h));
                }
            }
        }
        let Some((p, _)) = best else { continue };
        if p != row {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, row * a.cols + j);
            }
            det = -det;
        }
        let piv = a.get(row, col).clone();
        det = &det * &piv;
        let inv = piv.inv().unwrap();
        for j in col..a.cols {
            let v = a.get(row, j) * &inv;
            a.set(row, j, v);
        }
        for i in 0..a.rows {
            if i == row {
                continue;
            }
            let factor = a.get(i, col).clone();
            if factor.is_zero() {
                continue;
            }
            for j in col..a.cols {
                let rv = a.get(row, j);
                if rv.is_zero() {
                    continue;
                }
                let v = a.get(i, j) - &(&factor * rv);
                a.set(i, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    let rank = pivots.len();
    let det = (m.rows == m.cols).then(|| if rank == m.rows { det } else { Scalar::zero() });
    Gauss {
        rank,
        pivots,
        reduced: a,
        det,
    }
}

pub fn rank(m: &ExactMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    m.kernel_basis()
}

/// Coefficients expressing `v` in the basis `basis` (given as rows).
pub fn coordinates_in_span(v: &[Scalar], basis: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
    let n = v.len();
    if basis.is_empty() {
        return if v.iter().all(|c| c.is_zero()) {
            Ok(Vec::new())
        } else {
            Err(Error::NotInSpan)
        };
    }
    // Solve B^T c = v via the augmented system.
    let k = basis.len();
    let mut aug = ExactMatrix::zeros(n, k + 1);
    for (j, b) in basis.iter().enumerate() {
        assert_eq!(b.len(), n, "basis vector of the wrong length");
        for i in 0..n {
            aug.set(i, j, b[i].clone());
        }
    }
    for i in 0..n {
        aug.set(i, k, v[i].clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.contains(&k) {
        return Err(Error::NotInSpan);
    }
    if pivots.len() < k {
        return Err(Error::Precondition("basis vectors are linearly dependent".into()));
    }
    Ok((0..k).map(|i| r.get(i, k).clone()).collect())
}

/// Vectors completing a basis of `span(u)` to one of `span(w)`.
///
/// Standard unit vectors lying in `span(w)` are preferred, in index order;
/// the rows of `w` are used for whatever remains.
pub fn complement_basis(u: &[Vec<Scalar>], w: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = u.first().or(w.first()).map_or(0, |v| v.len());
    let ew = Echelon::from_vectors(n, w.iter().map(|v| sparse_from_dense(v)));
    let mut acc = Echelon::from_vectors(n, u.iter().map(|v| sparse_from_dense(v)));
    if !acc.is_subspace_of(&ew) {
        return Err(Error::NotSubspace);
    }
    let mut out = Vec::new();
    for i in 0..n {
        if acc.rank() == ew.rank() {
            break;
        }
        let e = vec![(i, Scalar::one())];
        if ew.contains(&e) && acc.insert(e) {
            let mut v = vec![Scalar::zero(); n];
            v[i] = Scalar::one();
            out.push(v);
        }
    }
    for v in w {
        if acc.rank() == ew.rank() {
            break;
        }
        if acc.insert(sparse_from_dense(v)) {
            out.push(v.clone());
        }
    }
    Ok(out)
}

/// Helper used by tests and the modular path: sign-normalized primitive
/// integer vector of a rational vector.
pub fn primitive_integer_vector(v: &[Scalar]) -> Option<Vec<BigInt>> {
    let lcm = v.iter().try_fold(BigInt::one(), |acc, c| {
        c.as_rational().map(|r| acc.lcm(r.denom()))
    })?;
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|c| {
            let r = c.as_rational().unwrap();
            r.numer() * (&lcm / r.denom())
        })
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() {
        for c in ints.iter_mut() {
            *c /= &g;
        }
    }
    if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    Some(ints)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_basics() {
        assert_eq!(ExactMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(ExactMatrix::identity(4).rank(), 4);
        let m = ExactMatrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_fraction_free(), m.rref().1.len());
    }

    #[test]
    fn determinant_matches_gauss() {
        let m = ExactMatrix::from_int_rows(&[&[0, 2, 1], &[3, -1, 4], &[5, 9, 2]]);
        assert_eq!(m.determinant(), Scalar::from_int(60));
        let mut half = m.clone();
        half.set(0, 1, Scalar::from_frac(1, 2));
        let g = gauss_scalar(&half).det.unwrap();
        assert_eq!(half.determinant(), g);
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert!(ExactMatrix::identity(3).kernel_basis().is_empty());
        let k = ExactMatrix::zeros(2, 2).kernel_basis();
        assert_eq!(k, vec![
            vec![Scalar::one(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::one()],
        ]);
    }

    #[test]
    fn coordinates_and_complement() {
        let b = vec![
            vec![Scalar::from_int(1), Scalar::from_int(1), Scalar::zero()],
            vec![Scalar::zero(), Scalar::from_int(1), Scalar::from_int(1)],
        ];
        assert_eq!(
            coordinates_in_span(&b[0], &b).unwrap(),
            vec![Scalar::one(), Scalar::zero()]
        );
        assert_eq!(
            coordinates_in_span(&[Scalar::zero(), Scalar::zero(), Scalar::zero()], &b).unwrap(),
            vec![Scalar::zero(), Scalar::zero()]
        );
        assert_eq!(
            coordinates_in_span(&[Scalar::one(), Scalar::zero(), Scalar::zero()], &b),
            Err(Error::NotInSpan)
        );
        assert!(complement_basis(&b, &b).unwrap().is_empty());
        assert_eq!(complement_basis(&[], &b).unwrap().len(), 2);
        assert_eq!(
            complement_basis(&[vec![Scalar::one(), Scalar::zero(), Scalar::zero()]], &b),
            Err(Error::NotSubspace)
        );
    }
}
