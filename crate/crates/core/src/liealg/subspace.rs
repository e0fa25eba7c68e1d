use serde::Serialize;

use super::algebra::{is_zero_vec, LieAlgebra};
use crate::exactla::{Matrix, Scalar, Vector};

/// A linear subspace of `k^n`, stored by its reduced row echelon basis so
/// that equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Self {
        let rows: Vec<Vector> = vectors.iter().filter(|v| !is_zero_vec(v)).cloned().collect();
        if rows.is_empty() {
            return Self::zero(ambient_dim);
        }
        let (r, pivots) = Matrix::from_rows(rows).expect("one field").rref();
        Subspace {
            ambient_dim,
            basis: (0..pivots.len()).map(|i| r.row(i)).collect(),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::span(ambient_dim, &(0..ambient_dim).map(|i| super::unit(ambient_dim, i)).collect::<Vec<_>>())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if is_zero_vec(v) {
            return true;
        }
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        Subspace::span(self.ambient_dim, &vs).dim() == self.dim()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` with respect to the stored basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if self.basis.is_empty() {
            return is_zero_vec(v).then(Vec::new);
        }
        let a = Matrix::from_columns(&self.basis, self.ambient_dim);
        a.solve(v).ok().flatten().map(|s| s.x)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // solve Σ a_i u_i − Σ b_j w_j = 0
        let (p, q) = (self.dim(), other.dim());
        if p == 0 || q == 0 {
            return Subspace::zero(self.ambient_dim);
        }
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|x| -x).collect()));
        let k = Matrix::from_columns(&cols, self.ambient_dim).kernel();
        let vs: Vec<Vector> = k
            .iter()
            .map(|coef| super::algebra::combine(&coef[..p], &self.basis, self.ambient_dim))
            .collect();
        Subspace::span(self.ambient_dim, &vs)
    }

    /// Standard basis vectors completing `self` to the whole space.
    pub fn standard_complement(&self) -> Vec<Vector> {
        let n = self.ambient_dim;
        let mut acc = self.clone();
        let mut out = Vec::new();
        for i in 0..n {
            let e = super::unit(n, i);
            if !acc.contains(&e) {
                acc = acc.sum(&Subspace::span(n, &[e.clone()]));
                out.push(e);
            }
        }
        out
    }

    pub fn is_subalgebra(&self, g: &LieAlgebra) -> bool {
        self.basis.iter().enumerate().all(|(i, x)| {
            self.basis[i + 1..]
                .iter()
                .all(|y| self.contains(&g.bracket_unchecked(x, y)))
        })
    }

    pub fn is_ideal(&self, g: &LieAlgebra) -> bool {
        let n = g.dim();
        self.basis
            .iter()
            .all(|x| (0..n).all(|i| self.contains(&g.bracket_unchecked(&super::unit(n, i), x))))
    }
}
