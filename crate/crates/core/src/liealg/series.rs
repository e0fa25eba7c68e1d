use super::algebra::{unit, LieAlgebra};
use super::Subspace;
use crate::exactla::{Matrix, Vector};

/// `[A, B]` for subspaces `A`, `B` of `g`.
pub fn bracket_spaces(g: &LieAlgebra, a: &Subspace, b: &Subspace) -> Subspace {
    let mut vs = Vec::new();
    for x in a.basis() {
        for y in b.basis() {
            vs.push(g.bracket_unchecked(x, y));
        }
    }
    Subspace::span(g.dim(), &vs)
}

pub fn commutator_subalgebra(g: &LieAlgebra) -> Subspace {
    let full = Subspace::full(g.dim());
    bracket_spaces(g, &full, &full)
}

/// `g = g¹ ⊇ [g, g¹] ⊇ …` until it stabilizes; the last entry repeats nothing.
pub fn lower_central_series(g: &LieAlgebra) -> Vec<Subspace> {
    let full = Subspace::full(g.dim());
    let mut out = vec![full.clone()];
    loop {
        let next = bracket_spaces(g, &full, out.last().unwrap());
        if next.dim() == out.last().unwrap().dim() {
            return out;
        }
        let done = next.is_zero();
        out.push(next);
        if done {
            return out;
        }
    }
}

/// `g ⊇ [g, g] ⊇ [[g, g], [g, g]] ⊇ …` until it stabilizes.
pub fn derived_series(g: &LieAlgebra) -> Vec<Subspace> {
    let mut out = vec![Subspace::full(g.dim())];
    loop {
        let last = out.last().unwrap();
        let next = bracket_spaces(g, last, last);
        if next.dim() == last.dim() {
            return out;
        }
        let done = next.is_zero();
        out.push(next);
        if done {
            return out;
        }
    }
}

pub fn is_nilpotent(g: &LieAlgebra) -> bool {
    lower_central_series(g).last().unwrap().is_zero()
}

pub fn is_solvable(g: &LieAlgebra) -> bool {
    derived_series(g).last().unwrap().is_zero()
}

/// `{x ∈ within : [x, s] = 0 for all s ∈ S}`.
pub fn centralizer(g: &LieAlgebra, s: &Subspace, within: &Subspace) -> Subspace {
    let n = g.dim();
    if within.is_zero() {
        return Subspace::zero(n);
    }
    // x = Σ a_i w_i; stack the linear conditions [w_i, s_j] coefficients
    let mut blocks = Vec::new();
    for y in s.basis() {
        let cols: Vec<Vector> = within.basis().iter().map(|w| g.bracket_unchecked(w, y)).collect();
        blocks.push(Matrix::from_columns(&cols, n));
    }
    if blocks.is_empty() {
        return within.clone();
    }
    let m = Matrix::vstack(&blocks).expect("equal widths");
    let vs: Vec<Vector> = m
        .kernel()
        .iter()
        .map(|a| super::algebra::combine(a, within.basis(), n))
        .collect();
    Subspace::span(n, &vs)
}

pub fn center(g: &LieAlgebra) -> Subspace {
    let full = Subspace::full(g.dim());
    centralizer(g, &full, &full)
}

/// Does `ad_x` act nilpotently for every `x` in the basis of `s`? Uses `ad_x^n = 0`.
pub fn acts_nilpotently(g: &LieAlgebra, s: &Subspace) -> bool {
    let n = g.dim() as u32;
    s.basis()
        .iter()
        .all(|x| g.adjoint_matrix(x).expect("same dimension").pow(n).is_zero())
}

pub fn unit_span(n: usize, idx: &[usize]) -> Subspace {
    Subspace::span(n, &idx.iter().map(|&i| unit(n, i)).collect::<Vec<_>>())
}
