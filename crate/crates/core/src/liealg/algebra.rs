use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactla::{common_discriminant, Matrix, Scalar, Vector};

/// A Lie algebra given by structure constants `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    /// `c[i][j]` is the coordinate vector of `[e_i, e_j]`
    c: Vec<Vec<Vector>>,
    params: BTreeMap<String, Scalar>,
}

/// One nonzero bracket `[e_i, e_j] = Σ coeff·e_k`.
pub type BracketTerm = (usize, usize, Vec<(usize, Scalar)>);

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// `Σ coeffs[i]·vecs[i]`
pub fn combine(coeffs: &[Scalar], vecs: &[Vector], dim: usize) -> Vector {
    let mut out = vec![Scalar::zero(); dim];
    for (c, v) in coeffs.iter().zip(vecs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += &(c * x);
            }
        }
    }
    out
}

impl LieAlgebra {
    /// Builds the algebra from the listed brackets, completing antisymmetrically.
    /// Fails if a pair is listed twice inconsistently or the Jacobi identity fails.
    pub fn new(names: Vec<String>, brackets: &[BracketTerm]) -> Result<Self> {
        let n = names.len();
        let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
        let mut seen = vec![vec![false; n]; n];
        for (i, j, terms) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n || terms.iter().any(|(k, _)| *k >= n) {
                return Err(Error::Dimension(format!("bracket index out of range for dimension {n}")));
            }
            if i == j {
                if terms.iter().any(|(_, x)| !x.is_zero()) {
                    return Err(Error::Antisymmetry(i, j));
                }
                continue;
            }
            if seen[i][j] {
                return Err(Error::Dimension(format!("bracket ({i}, {j}) given twice")));
            }
            seen[i][j] = true;
            seen[j][i] = true;
            for (k, x) in terms {
                c[i][j][*k] += x;
                c[j][i][*k] -= x;
            }
        }
        Self::from_tensor(names, c)
    }

    pub fn from_tensor(names: Vec<String>, c: Vec<Vec<Vector>>) -> Result<Self> {
        let n = names.len();
        if c.len() != n || c.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::Dimension("structure tensor shape".into()));
        }
        common_discriminant(c.iter().flatten().flatten())?;
        let g = LieAlgebra {
            names,
            c,
            params: BTreeMap::new(),
        };
        g.check_antisymmetry()?;
        g.check_jacobi()?;
        Ok(g)
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra {
            names: default_names(n),
            c: vec![vec![vec![Scalar::zero(); n]; n]; n],
            params: BTreeMap::new(),
        }
    }

    pub fn with_params(mut self, params: BTreeMap<String, Scalar>) -> Self {
        self.params = params;
        self
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim());
        self.names = names;
        self
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn params(&self) -> &BTreeMap<String, Scalar> {
        &self.params
    }

    pub fn structure(&self, i: usize, j: usize) -> &Vector {
        &self.c[i][j]
    }

    pub fn discriminant(&self) -> u64 {
        common_discriminant(self.c.iter().flatten().flatten()).expect("checked at construction")
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`.
    pub fn nonzero_brackets(&self) -> Vec<BracketTerm> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let terms: Vec<(usize, Scalar)> = self.c[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (k, x.clone()))
                    .collect();
                if !terms.is_empty() {
                    out.push((i, j, terms));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().all(|v| is_zero_vec(v))
    }

    fn check_dim(&self, v: &[Scalar]) -> Result<()> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "vector of length {} in an algebra of dimension {}",
                v.len(),
                self.dim()
            )))
        }
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let cij = &self.c[i][j];
                if is_zero_vec(cij) {
                    continue;
                }
                let f = xi * yj;
                for (o, c) in out.iter_mut().zip(cij) {
                    if !c.is_zero() {
                        *o += &(&f * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_x` in the standard basis (columns are images of basis vectors).
    pub fn adjoint_matrix(&self, x: &[Scalar]) -> Result<Matrix> {
        self.check_dim(x)?;
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket_unchecked(x, &unit(n, j))).collect();
        Ok(Matrix::from_columns(&cols, n))
    }

    pub fn adjoint_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |k, j| self.c[i][j][k].clone())
    }

    fn check_antisymmetry(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            if !is_zero_vec(&self.c[i][i]) {
                return Err(Error::Antisymmetry(i, i));
            }
            for j in i + 1..n {
                if add_vec(&self.c[i][j], &self.c[j][i]).iter().any(|x| !x.is_zero()) {
                    return Err(Error::Antisymmetry(i, j));
                }
            }
        }
        Ok(())
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0` for all `i < j < k`.
    pub fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let ek = unit(n, k);
                    let ei = unit(n, i);
                    let ej = unit(n, j);
                    let a = self.bracket_unchecked(&self.c[i][j], &ek);
                    let b = self.bracket_unchecked(&self.c[j][k], &ei);
                    let c = self.bracket_unchecked(&self.c[k][i], &ej);
                    if !is_zero_vec(&add_vec(&add_vec(&a, &b), &c)) {
                        return Err(Error::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// The algebra structure on a bracket-closed subspace, in the given basis.
    pub fn restrict(&self, basis: &[Vector], names: Vec<String>) -> Result<LieAlgebra> {
        let m = basis.len();
        if names.len() != m {
            return Err(Error::Dimension("one name per basis vector".into()));
        }
        let n = self.dim();
        let a = Matrix::from_columns(basis, n);
        if a.rank() != m {
            return Err(Error::Dimension("restriction basis is dependent".into()));
        }
        let mut c = vec![vec![vec![Scalar::zero(); m]; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let b = self.bracket_unchecked(&basis[i], &basis[j]);
                let sol = a
                    .solve(&b)?
                    .ok_or_else(|| Error::Verification("subspace is not closed under the bracket".into()))?;
                c[j][i] = sol.x.iter().map(|x| -x).collect();
                c[i][j] = sol.x;
            }
        }
        LieAlgebra::from_tensor(names, c)
    }

    /// Checks that `q` (columns are images of `self`'s basis in `target`) is a homomorphism.
    /// Returns the first failing pair.
    pub fn first_non_homomorphic_pair(&self, target: &LieAlgebra, q: &Matrix) -> Option<(usize, usize)> {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| q.column(j)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = q.mul_vec(&self.c[i][j]);
                let rhs = target.bracket_unchecked(&cols[i], &cols[j]);
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    pub(crate) fn r3() -> LieAlgebra {
        LieAlgebra::new(
            default_names(3),
            &[(0, 1, vec![(1, s(1))]), (0, 2, vec![(1, s(1)), (2, s(1))])],
        )
        .unwrap()
    }

    #[test]
    fn heisenberg_bracket() {
        let h3 = LieAlgebra::new(default_names(3), &[(0, 1, vec![(2, s(1))])]).unwrap();
        assert_eq!(h3.bracket(&unit(3, 0), &unit(3, 1)).unwrap(), unit(3, 2));
        assert_eq!(h3.bracket(&unit(3, 1), &unit(3, 0)).unwrap(), vec![s(0), s(0), s(-1)]);
        let ad = h3.adjoint_matrix(&unit(3, 0)).unwrap();
        assert_eq!(ad, Matrix::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]));
    }

    #[test]
    fn r3_brackets() {
        let g = r3();
        assert_eq!(g.bracket(&unit(3, 0), &unit(3, 2)).unwrap(), vec![s(0), s(1), s(1)]);
        let x = vec![s(2), s(-1), s(3)];
        assert!(is_zero_vec(&g.bracket(&x, &x).unwrap()));
        assert!(g.bracket(&x, &[s(1)]).is_err());
    }

    #[test]
    fn jacobi_violation_detected() {
        // [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e3 is not a Lie algebra
        let bad = LieAlgebra::new(
            default_names(3),
            &[(0, 1, vec![(2, s(1))]), (1, 2, vec![(0, s(1))]), (2, 0, vec![(2, s(1))])],
        );
        assert!(matches!(bad, Err(Error::Jacobi(..))));
    }

    #[test]
    fn so3_passes_jacobi() {
        let so3 = LieAlgebra::new(
            default_names(3),
            &[(0, 1, vec![(2, s(1))]), (1, 2, vec![(0, s(1))]), (2, 0, vec![(1, s(1))])],
        );
        assert!(so3.is_ok());
    }

    #[test]
    fn restriction_to_ideal() {
        let g = r3();
        let sub = g
            .restrict(&[unit(3, 1), unit(3, 2)], vec!["a".into(), "b".into()])
            .unwrap();
        assert!(sub.is_abelian());
        assert!(g.restrict(&[unit(3, 0), unit(3, 2)], vec!["a".into(), "b".into()]).is_err());
    }
}
