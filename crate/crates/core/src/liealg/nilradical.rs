use super::algebra::{combine, LieAlgebra};
use super::series::{acts_nilpotently, commutator_subalgebra, is_solvable};
use super::Subspace;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Vector};

/// Basis (as flattened matrices) of the associative algebra generated by `gens`.
fn associative_hull(gens: &[Matrix]) -> Vec<Matrix> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let n = first.rows();
    let mut span = Subspace::span(n * n, &gens.iter().map(Matrix::to_vector).collect::<Vec<_>>());
    loop {
        let current: Vec<Matrix> = span
            .basis()
            .iter()
            .map(|v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
            .collect();
        let mut vs: Vec<Vector> = span.basis().to_vec();
        for a in &current {
            for g in gens {
                vs.push((a * g).to_vector());
            }
        }
        let next = Subspace::span(n * n, &vs);
        if next.dim() == span.dim() {
            return current;
        }
        span = next;
    }
}

/// Nilradical of a solvable algebra: `{x : ad_x ∈ Rad A}` where `A` is the
/// associative hull of `ad g` and `Rad A` its trace-form radical.
pub fn nilradical(g: &LieAlgebra) -> Result<Subspace> {
    if !is_solvable(g) {
        return Err(Error::NotSolvable);
    }
    let n = g.dim();
    if g.is_abelian() {
        return Ok(Subspace::full(n));
    }
    let ads: Vec<Matrix> = (0..n).map(|i| g.adjoint_basis(i)).collect();
    let hull = associative_hull(&ads);
    let m = hull.len();
    // radical: coefficients r with tr((Σ r_i a_i) a_j) = 0 for all j
    let gram = Matrix::from_fn(m, m, |j, i| (&hull[i] * &hull[j]).trace());
    let radical: Vec<Matrix> = gram
        .kernel()
        .iter()
        .map(|r| {
            let flat = combine(r, &hull.iter().map(Matrix::to_vector).collect::<Vec<_>>(), n * n);
            Matrix::from_fn(n, n, |i, j| flat[i * n + j].clone())
        })
        .collect();
    // x with Σ x_i ad_i − Σ y_j R_j = 0
    let mut cols: Vec<Vector> = ads.iter().map(Matrix::to_vector).collect();
    cols.extend(radical.iter().map(|r| r.to_vector().iter().map(|x| -x).collect::<Vector>()));
    let k = Matrix::from_columns(&cols, n * n).kernel();
    let xs: Vec<Vector> = k.iter().map(|v| v[..n].to_vec()).collect();
    let nil = Subspace::span(n, &xs);

    if !nil.is_ideal(g) {
        return Err(Error::Verification("nilradical is not an ideal".into()));
    }
    if !acts_nilpotently(g, &nil) {
        return Err(Error::Verification("nilradical has a non-nilpotent adjoint".into()));
    }
    if !nil.contains_space(&commutator_subalgebra(g)) {
        return Err(Error::Verification("nilradical misses [g, g]".into()));
    }
    Ok(nil)
}
