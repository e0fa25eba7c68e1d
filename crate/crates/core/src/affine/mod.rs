//! The affine algebra `aff(h) = h ⋊ Der(h)` of a nilpotent Lie algebra.

mod morphism;

pub use morphism::{
    combine_elements, image_algebra, verify_morphism, AlgebraRef, ImageJson, LieMorphism, MorphismJson, MorphismReport,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar, Vector};
use crate::jordan::{is_nilpotent, jordan_chevalley};
use crate::liealg::{center, derivation_space, is_derivation, is_nilpotent as lie_nilpotent, LieAlgebra, Subspace};

/// An element `(t, D)` of `aff(h)`: translation part `v ∈ h`, derivation part `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineElement {
    pub v: Vector,
    #[serde(rename = "D")]
    pub d: Matrix,
}

impl AffineElement {
    pub fn new(v: Vector, d: Matrix) -> Self {
        AffineElement { v, d }
    }

    pub fn zero(n: usize) -> Self {
        AffineElement::new(vec![Scalar::zero(); n], Matrix::zeros(n, n))
    }

    pub fn translation(v: Vector) -> Self {
        let n = v.len();
        AffineElement::new(v, Matrix::zeros(n, n))
    }

    pub fn derivation(d: Matrix) -> Self {
        AffineElement::new(vec![Scalar::zero(); d.rows()], d)
    }

    pub fn is_zero(&self) -> bool {
        self.v.iter().all(Scalar::is_zero) && self.d.is_zero()
    }

    pub fn add(&self, other: &AffineElement) -> AffineElement {
        AffineElement::new(
            self.v.iter().zip(&other.v).map(|(a, b)| a + b).collect(),
            &self.d + &other.d,
        )
    }

    pub fn sub(&self, other: &AffineElement) -> AffineElement {
        AffineElement::new(
            self.v.iter().zip(&other.v).map(|(a, b)| a - b).collect(),
            &self.d - &other.d,
        )
    }

    pub fn scale(&self, c: &Scalar) -> AffineElement {
        AffineElement::new(self.v.iter().map(|x| c * x).collect(), self.d.scale(c))
    }
}

/// `aff(h)` together with its realisation as an abstract Lie algebra on
/// coordinates `[v (n entries); coordinates of D in der_basis (m entries)]`.
#[derive(Clone, Debug)]
pub struct AffineAlgebra {
    h: LieAlgebra,
    der_basis: Vec<Matrix>,
    /// columns are the flattened derivation basis matrices
    der_columns: Matrix,
    as_lie: LieAlgebra,
    center: Subspace,
}

impl AffineAlgebra {
    pub fn new(h: LieAlgebra) -> Result<Self> {
        if !lie_nilpotent(&h) {
            return Err(Error::NotNilpotent);
        }
        let n = h.dim();
        let der_basis = derivation_space(&h);
        let m = der_basis.len();
        let der_columns = Matrix::from_columns(&der_basis.iter().map(Matrix::to_vector).collect::<Vec<_>>(), n * n);
        let der_coords = |d: &Matrix| -> Vector {
            der_columns
                .solve(&d.to_vector())
                .expect("one field")
                .expect("commutator of derivations is a derivation")
                .x
        };
        let dim = n + m;
        let mut c = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for i in 0..n {
            for j in 0..n {
                c[i][j][..n].clone_from_slice(h.structure(i, j));
            }
        }
        for (a, da) in der_basis.iter().enumerate() {
            for j in 0..n {
                let col = da.column(j);
                c[n + a][j][..n].clone_from_slice(&col);
                c[j][n + a][..n].clone_from_slice(&col.iter().map(|x| -x).collect::<Vec<_>>());
            }
            for (b, db) in der_basis.iter().enumerate().skip(a + 1) {
                let k = der_coords(&da.commutator(db));
                c[n + a][n + b][n..].clone_from_slice(&k);
                c[n + b][n + a][n..].clone_from_slice(&k.iter().map(|x| -x).collect::<Vec<_>>());
            }
        }
        let mut names: Vec<String> = h.names().to_vec();
        names.extend((1..=m).map(|i| format!("D{i}")));
        let as_lie = LieAlgebra::from_tensor(names, c)?;
        let center = center(&as_lie);
        Ok(AffineAlgebra {
            h,
            der_basis,
            der_columns,
            as_lie,
            center,
        })
    }

    pub fn h(&self) -> &LieAlgebra {
        &self.h
    }

    pub fn der_basis(&self) -> &[Matrix] {
        &self.der_basis
    }

    pub fn as_lie(&self) -> &LieAlgebra {
        &self.as_lie
    }

    pub fn h_dim(&self) -> usize {
        self.h.dim()
    }

    pub fn dim(&self) -> usize {
        self.as_lie.dim()
    }

    /// Center of `as_lie`.
    pub fn center(&self) -> &Subspace {
        &self.center
    }

    fn check_shape(&self, x: &AffineElement) -> Result<()> {
        let n = self.h_dim();
        if x.v.len() != n || x.d.rows() != n || x.d.cols() != n {
            return Err(Error::Dimension(format!("affine element is not in aff of a {n}-dimensional algebra")));
        }
        Ok(())
    }

    /// Coordinates of `x` in `as_lie`; fails if `x.d` is not a derivation.
    pub fn coordinates(&self, x: &AffineElement) -> Result<Vector> {
        self.check_shape(x)?;
        let sol = self
            .der_columns
            .solve(&x.d.to_vector())?
            .ok_or_else(|| Error::NotADerivation(x.d.to_string()))?;
        let mut out = x.v.clone();
        out.extend(sol.x);
        Ok(out)
    }

    pub fn element(&self, coords: &[Scalar]) -> AffineElement {
        let n = self.h_dim();
        let mut d = Matrix::zeros(n, n);
        for (c, b) in coords[n..].iter().zip(&self.der_basis) {
            if !c.is_zero() {
                d = &d + &b.scale(c);
            }
        }
        AffineElement::new(coords[..n].to_vec(), d)
    }
}

/// `([v_a, v_b] + D_a v_b − D_b v_a, [D_a, D_b])`.
pub fn aff_bracket(a_alg: &AffineAlgebra, a: &AffineElement, b: &AffineElement) -> Result<AffineElement> {
    a_alg.check_shape(a)?;
    a_alg.check_shape(b)?;
    let h = a_alg.h();
    let mut v = h.bracket(&a.v, &b.v)?;
    let da = a.d.mul_vec(&b.v);
    let db = b.d.mul_vec(&a.v);
    for ((x, p), q) in v.iter_mut().zip(&da).zip(&db) {
        *x = &(&*x + p) - q;
    }
    Ok(AffineElement::new(v, a.d.commutator(&b.d)))
}

pub fn aff_center(a: &AffineAlgebra) -> Subspace {
    a.center().clone()
}

/// Jordan decomposition `x = x_s + x_n` inside `aff(h)`, through the adjoint
/// representation of `as_lie`. Returns `(x_s, x_n)`.
pub fn aff_jordan(a: &AffineAlgebra, x: &AffineElement) -> Result<(AffineElement, AffineElement)> {
    if !a.center().is_zero() {
        return Err(Error::CenterNotTrivial);
    }
    let g = a.as_lie();
    let coords = a.coordinates(x)?;
    let m = g.adjoint_matrix(&coords)?;
    let jp = jordan_chevalley(&m)?;
    let n = g.dim();
    let ads: Vec<Vector> = (0..n).map(|i| g.adjoint_basis(i).to_vector()).collect();
    let y = Matrix::from_columns(&ads, n * n)
        .solve(&jp.n.to_vector())?
        .ok_or(Error::AdjointSolveFailed)?
        .x;
    let xn = a.element(&y);
    let xs = x.sub(&xn);
    if !is_nilpotent(&xn.d)? || !aff_bracket(a, &xs, &xn)?.is_zero() {
        return Err(Error::Verification("affine Jordan parts".into()));
    }
    Ok((xs, xn))
}

/// Decided by the derivation part alone.
pub fn is_nilpotent_element(x: &AffineElement) -> bool {
    is_nilpotent(&x.d).unwrap_or(false)
}

pub fn is_derivation_of(a: &AffineAlgebra, d: &Matrix) -> bool {
    is_derivation(a.h(), d)
}
