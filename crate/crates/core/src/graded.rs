//! Graded pieces of homogeneous ideals and their saturations, computed by
//! plain linear algebra in each degree.

use crate::error::Result;
use crate::field::Scalar;
use crate::linalg::echelon::{Echelon, SparseVec};
use crate::linalg::ExactMatrix;
use crate::poly::{dim_s, Monomial, Poly};

/// A subspace of `S_k` together with its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    pub degree: u32,
    pub basis: Echelon,
}

impl GradedSubspace {
    pub fn zero(degree: u32) -> Self {
        GradedSubspace {
            degree,
            basis: Echelon::new(dim_s(degree as i64)),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn codim(&self) -> usize {
        self.basis.ambient_dim() - self.basis.rank()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        p.is_zero() || (p.is_homogeneous() && p.degree() == Some(self.degree) && self.basis.contains(&p.to_sparse(self.degree)))
    }

    /// Basis elements as polynomials, ascending pivot order.
    pub fn polys(&self) -> Vec<Poly> {
        self.basis
            .rows_by_pivot()
            .into_iter()
            .map(|r| Poly::from_sparse(self.degree, r))
            .collect()
    }

    /// Normal form modulo this subspace.
    pub fn reduce(&self, p: &Poly) -> Poly {
        Poly::from_sparse(self.degree, &self.basis.reduce(&p.to_sparse(self.degree)))
    }
}

/// Multiplies a vector of `S_k` by a monomial of degree `e`.
pub fn shift_vector(v: &[(usize, Scalar)], k: u32, m: &Monomial) -> SparseVec {
    let mut out: SparseVec = v
        .iter()
        .map(|(i, c)| (Monomial::from_index(k, *i).mul(m).index(), c.clone()))
        .collect();
    out.sort_by_key(|e| e.0);
    out
}

/// Degree pieces `I_0, I_1, ...` of the ideal generated by `gens`, grown on
/// demand via `I_k = x I_{k-1} + y I_{k-1} + z I_{k-1} + (generators of degree k)`.
#[derive(Clone, Debug)]
pub struct GradedIdeal {
    gens: Vec<(u32, Poly)>,
    pieces: Vec<GradedSubspace>,
}

impl GradedIdeal {
    pub fn new(gens: &[Poly]) -> Result<Self> {
        let mut g = Vec::new();
        for p in gens {
            if p.is_zero() {
                continue;
            }
            let d = p.homogeneous_degree()?.unwrap();
            g.push((d, p.clone()));
        }
        Ok(GradedIdeal {
            gens: g,
            pieces: Vec::new(),
        })
    }

    pub fn generators(&self) -> impl Iterator<Item = &Poly> {
        self.gens.iter().map(|(_, p)| p)
    }

    pub fn max_generator_degree(&self) -> Option<u32> {
        self.gens.iter().map(|(d, _)| *d).max()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn piece(&mut self, k: u32) -> &GradedSubspace {
        while self.pieces.len() <= k as usize {
            let next = self.pieces.len() as u32;
            let piece = self.build(next);
            self.pieces.push(piece);
        }
        &self.pieces[k as usize]
    }

    fn build(&self, k: u32) -> GradedSubspace {
        let n = dim_s(k as i64);
        let mut e = Echelon::new(n);
        if k > 0 {
            let prev = &self.pieces[k as usize - 1];
            'outer: for w in 0..3 {
                let m = Monomial::var(w);
                for row in prev.basis.rows_by_pivot() {
                    if e.is_full() {
                        break 'outer;
                    }
                    e.insert(shift_vector(row, k - 1, &m));
                }
            }
        }
        for (d, g) in &self.gens {
            if *d == k && !e.is_full() {
                e.insert(g.to_sparse(k));
            }
        }
        GradedSubspace { degree: k, basis: e }
    }

    /// `dim (S/I)_k`.
    pub fn hilbert(&mut self, k: u32) -> usize {
        self.piece(k).codim()
    }
}

/// `{ g in S_k : x g, y g, z g in next }` where `next` is a subspace of
/// `S_{k+1}`, computed as `base` plus the kernel of the multiplication map on
/// the standard monomials of `base`. `base` must already lie in the colon.
pub fn colon_by_variables(base: &GradedSubspace, next: &GradedSubspace) -> GradedSubspace {
    let k = base.degree;
    assert_eq!(next.degree, k + 1);
    let std_k = base.basis.standard_indices();
    if std_k.is_empty() {
        return base.clone();
    }
    let std_next = next.basis.standard_indices();
    if std_next.is_empty() {
        // everything maps into the full space
        let mut e = base.basis.clone();
        for i in std_k {
            e.insert(vec![(i, Scalar::one())]);
        }
        return GradedSubspace { degree: k, basis: e };
    }
    let mut pos = vec![usize::MAX; next.basis.ambient_dim()];
    for (t, &i) in std_next.iter().enumerate() {
        pos[i] = t;
    }
    let rows = 3 * std_next.len();
    let mut m = ExactMatrix::zeros(rows, std_k.len());
    for (col, &i) in std_k.iter().enumerate() {
        let mono = Monomial::from_index(k, i);
        for w in 0..3 {
            let idx = mono.mul(&Monomial::var(w)).index();
            let nf: SparseVec = match next.basis.row_with_pivot(idx) {
                None => vec![(idx, Scalar::one())],
                Some(row) => row
                    .iter()
                    .filter(|(j, _)| *j != idx)
                    .map(|(j, c)| (*j, -c))
                    .collect(),
            };
            for (j, c) in nf {
                m.set(w * std_next.len() + pos[j], col, c);
            }
        }
    }
    let mut e = base.basis.clone();
    for v in m.kernel_basis() {
        let sv: SparseVec = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| (std_k[t], c.clone()))
            .collect();
        let mut sv = sv;
        sv.sort_by_key(|e| e.0);
        e.insert(sv);
    }
    GradedSubspace { degree: k, basis: e }
}

/// Saturation pieces `sat_0 ..= sat_top`, seeded with `sat_top = I_top` and
/// filled in by the downward colon recursion.
pub fn saturate_down(ideal: &mut GradedIdeal, top: u32) -> Vec<GradedSubspace> {
    let mut out: Vec<GradedSubspace> = Vec::with_capacity(top as usize + 1);
    let seed = ideal.piece(top).clone();
    out.push(seed);
    for k in (0..top).rev() {
        let base = ideal.piece(k).clone();
        let next = out.last().unwrap();
        let sat = colon_by_variables(&base, next);
        out.push(sat);
    }
    out.reverse();
    out
}

/// Checks that `x S_k`, `y S_k`, `z S_k` of each piece land in the next.
pub fn is_ideal_chain(pieces: &[GradedSubspace]) -> bool {
    pieces.windows(2).all(|w| {
        let k = w[0].degree;
        w[0].basis.rows_by_pivot().iter().all(|row| {
            (0..3).all(|v| w[1].basis.contains(&shift_vector(row, k, &Monomial::var(v))))
        })
    })
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
    fn hilbert_function_of_points() {
        // three coordinate points: ideal (xy, xz, yz)
        let mut i = GradedIdeal::new(&[p("x*y"), p("x*z"), p("y*z")]).unwrap();
        let hf: Vec<usize> = (0..6).map(|k| i.hilbert(k)).collect();
        assert_eq!(hf, vec![1, 3, 3, 3, 3, 3]);
    }

    #[test]
    fn saturation_removes_embedded_component() {
        // (x^2, xy) = (x) ∩ (x^2, y); saturating (x^2, xy, xz) gives (x)
        let mut i = GradedIdeal::new(&[p("x^2"), p("x*y"), p("x*z")]).unwrap();
        let sat = saturate_down(&mut i, 4);
        assert!(sat[1].contains(&p("x")));
        assert_eq!(sat[1].dim(), 1);
        assert!(is_ideal_chain(&sat));
    }
}
