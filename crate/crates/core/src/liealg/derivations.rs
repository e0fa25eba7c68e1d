use super::algebra::{unit, LieAlgebra};
use crate::exactla::{Matrix, Scalar};

/// Basis of `Der(h)`, from a single kernel computation over all basis pairs.
pub fn derivation_space(h: &LieAlgebra) -> Vec<Matrix> {
    let n = h.dim();
    let var = |a: usize, b: usize| a * n + b;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let cij = h.structure(i, j);
            for k in 0..n {
                let mut row = vec![Scalar::zero(); n * n];
                // (D [e_i, e_j])_k
                for (l, c) in cij.iter().enumerate() {
                    if !c.is_zero() {
                        row[var(k, l)] += c;
                    }
                }
                // − [D e_i, e_j]_k − [e_i, D e_j]_k
                for l in 0..n {
                    let a = &h.structure(l, j)[k];
                    if !a.is_zero() {
                        row[var(l, i)] -= a;
                    }
                    let b = &h.structure(i, l)[k];
                    if !b.is_zero() {
                        row[var(l, j)] -= b;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..n * n).map(|i| unit(n * n, i)).collect()
    } else {
        Matrix::from_rows(rows).expect("one field").kernel()
    };
    kernel
        .into_iter()
        .map(|v| Matrix::from_fn(n, n, |a, b| v[var(a, b)].clone()))
        .collect()
}

/// First basis pair `(i, j)` on which the Leibniz rule fails, if any.
pub fn leibniz_violation(h: &LieAlgebra, d: &Matrix) -> Option<(usize, usize)> {
    let n = h.dim();
    if d.rows() != n || d.cols() != n {
        return Some((0, 0));
    }
    let cols: Vec<_> = (0..n).map(|j| d.column(j)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.mul_vec(h.structure(i, j));
            let a = h.bracket_unchecked(&cols[i], &unit(n, j));
            let b = h.bracket_unchecked(&unit(n, i), &cols[j]);
            let rhs: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_derivation(h: &LieAlgebra, d: &Matrix) -> bool {
    leibniz_violation(h, d).is_none()
}
