use serde::Serialize;

use crate::affine::{aff_jordan, is_nilpotent_element, verify_morphism, AffineElement, LieMorphism, MorphismJson};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Vector};
use crate::jordan::is_nilpotent;
use crate::liealg::{bracket_spaces, is_nilpotent as lie_nilpotent, is_solvable, LieAlgebra, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    SimplyTransitive,
    NotSimplyTransitive,
    Exists,
    Obstructed,
    Unknown,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::SimplyTransitive => "SIMPLY_TRANSITIVE",
            Verdict::NotSimplyTransitive => "NOT_SIMPLY_TRANSITIVE",
            Verdict::Exists => "EXISTS",
            Verdict::Obstructed => "OBSTRUCTED",
            Verdict::Unknown => "UNKNOWN",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Characteristic polynomials that no (pair of commuting) derivation(s) of the target can have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    /// torus generators involved
    pub generators: Vec<usize>,
    pub polynomials: Vec<String>,
    pub target: String,
    pub commuting_pair: bool,
}

/// `charpoly(D(T)) = charpoly(ad_T on the nilradical)` for a torus generator `T` of a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumCheck {
    pub derivation_charpoly: String,
    pub adjoint_charpoly: String,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessSummary {
    /// "catalog" or "canonical"
    pub source: String,
    pub morphism: MorphismJson,
    pub check: Box<TransitivityReport>,
    pub spectrum_checks: Vec<SpectrumCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransitivityReport {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// basis of `u` as affine elements
    pub u_basis: Vec<AffineElement>,
    pub image_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection_rank: Option<usize>,
    /// result of the nilpotent criterion when it applies
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nilpotent_criterion: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nilshadow_class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Obstruction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessSummary>,
}

impl TransitivityReport {
    pub fn new(verdict: Verdict) -> Self {
        TransitivityReport {
            verdict,
            reason: None,
            u_basis: Vec::new(),
            image_dim: 0,
            projection_rank: None,
            nilpotent_criterion: None,
            nilshadow_class: None,
            obstruction: None,
            witness: None,
        }
    }

    pub fn with_reason(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }
}

/// `u` for the image of `φ` and the image coordinates, as a subspace of `as_lie`.
pub struct NilpotentHull {
    pub u: Subspace,
    pub image: Subspace,
    /// `(X_i)_n` for the adapted basis `X_i`
    pub nilpotent_parts: Vec<Vector>,
}

fn require_verified(phi: &LieMorphism) -> Result<()> {
    let r = verify_morphism(phi);
    if let Some(i) = r.non_derivation {
        return Err(Error::NotADerivation(format!("image of basis vector {}", i + 1)));
    }
    if let Some((i, j)) = r.first_violation {
        return Err(Error::Verification(format!(
            "not a homomorphism on the pair ({}, {})",
            i + 1,
            j + 1
        )));
    }
    if !r.injective {
        return Err(Error::Verification(format!("morphism has a {}-dimensional kernel", r.kernel_dim)));
    }
    Ok(())
}

/// Span of the nilpotent Jordan parts of a basis of `φ(g)` whose first vectors
/// span `[φ(g), φ(g)]`.
pub fn compute_u(phi: &LieMorphism) -> Result<NilpotentHull> {
    require_verified(phi)?;
    let a = &phi.target;
    let big = a.as_lie();
    let k = big.dim();
    let coords = phi.coordinate_matrix()?;
    let cols: Vec<Vector> = (0..coords.cols()).map(|j| coords.column(j)).collect();
    let image = Subspace::span(k, &cols);
    let image_alg = big.restrict(image.basis(), crate::liealg::default_names(image.dim()))?;
    if !is_solvable(&image_alg) {
        return Err(Error::NotSolvable);
    }
    let derived = bracket_spaces(big, &image, &image);
    let mut basis: Vec<Vector> = derived.basis().to_vec();
    let mut acc = derived.clone();
    for v in &cols {
        if !acc.contains(v) {
            acc = acc.sum(&Subspace::span(k, &[v.clone()]));
            basis.push(v.clone());
        }
    }
    let mut parts = Vec::new();
    for b in &basis {
        let (_, xn) = aff_jordan(a, &a.element(b))?;
        parts.push(a.coordinates(&xn)?);
    }
    let u = Subspace::span(k, &parts);
    if !u.is_subalgebra(big) {
        return Err(Error::ClosureFailed);
    }
    for v in u.basis() {
        if !is_nilpotent_element(&a.element(v)) {
            return Err(Error::Verification("u contains a non-nilpotent element".into()));
        }
    }
    if u.dim() > image.dim() {
        return Err(Error::Verification(format!("dim u = {} exceeds dim φ(g) = {}", u.dim(), image.dim())));
    }
    Ok(NilpotentHull {
        u,
        image,
        nilpotent_parts: parts,
    })
}

fn translation_rank(n: usize, vs: &[Vector]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    Matrix::from_columns(&vs.iter().map(|v| v[..n].to_vec()).collect::<Vec<_>>(), n).rank()
}

/// Simply transitive iff `dim g = dim h` and translation projection of `u` is onto `h`.
pub fn check_simply_transitive(phi: &LieMorphism) -> Result<TransitivityReport> {
    let hull = compute_u(phi)?;
    let a = &phi.target;
    let n = a.h_dim();
    let rank = translation_rank(n, hull.u.basis());
    let same_dim = phi.source.dim() == n;
    let st = same_dim && rank == n;

    let nilpotent_criterion = nilpotent_criterion(&phi.source, phi)?;
    if let Some(fast) = nilpotent_criterion {
        if fast != st {
            return Err(Error::Verification("nilpotent criterion disagrees with the general check".into()));
        }
    }
    let mut r = TransitivityReport::new(if st {
        Verdict::SimplyTransitive
    } else {
        Verdict::NotSimplyTransitive
    });
    if !same_dim {
        r.reason = Some(format!("dim g = {} but dim h = {n}", phi.source.dim()));
    } else if !st {
        r.reason = Some(format!("translation part of u has rank {rank} < {n}"));
    }
    r.u_basis = hull.u.basis().iter().map(|v| a.element(v)).collect();
    r.image_dim = hull.image.dim();
    r.projection_rank = Some(rank);
    r.nilpotent_criterion = nilpotent_criterion;
    Ok(r)
}

/// For nilpotent `g` with every `D(X)` nilpotent: simply transitive iff `t` is bijective.
fn nilpotent_criterion(g: &LieAlgebra, phi: &LieMorphism) -> Result<Option<bool>> {
    if !lie_nilpotent(g) {
        return Ok(None);
    }
    for x in &phi.images {
        if !is_nilpotent(&x.d)? {
            return Ok(None);
        }
    }
    let n = phi.target.h_dim();
    Ok(Some(g.dim() == n && phi.translation_matrix().rank() == n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::AffineAlgebra;
    use crate::exactla::Scalar;
    use crate::liealg::{default_names, unit};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn e(i: usize, j: usize) -> Matrix {
        Matrix::from_fn(3, 3, |a, b| if (a, b) == (i, j) { s(1) } else { s(0) })
    }

    #[test]
    fn semisimple_line_is_not_simply_transitive() {
        let target = AffineAlgebra::new(LieAlgebra::abelian(1)).unwrap();
        let x = AffineElement::new(vec![s(1)], Matrix::from_ints(&[&[1]]));
        let phi = LieMorphism::new(LieAlgebra::abelian(1), target, vec![x]).unwrap();
        let r = check_simply_transitive(&phi).unwrap();
        assert_eq!(r.verdict, Verdict::NotSimplyTransitive);
        assert!(r.u_basis.is_empty());
        assert_eq!(r.projection_rank, Some(0));
        // t is nevertheless bijective
        assert_eq!(phi.translation_matrix().rank(), 1);
    }

    #[test]
    fn two_dimensional_linear_example() {
        // X(x, y) = x (E13 + E22) + y E23 as pure derivations of R^3
        let target = AffineAlgebra::new(LieAlgebra::abelian(3)).unwrap();
        let a = &e(0, 2) + &e(1, 1);
        let b = e(1, 2);
        let g = LieAlgebra::new(default_names(2), &[(0, 1, vec![(1, s(1))])]).unwrap();
        let phi = LieMorphism::new(
            g,
            target.clone(),
            vec![AffineElement::derivation(a.clone()), AffineElement::derivation(b.clone())],
        )
        .unwrap();
        let hull = compute_u(&phi).unwrap();
        assert_eq!(hull.u.dim(), 2);
        let expected = Subspace::span(
            target.dim(),
            &[e(1, 2), e(0, 2)].map(|m| target.coordinates(&AffineElement::derivation(m)).unwrap()),
        );
        assert_eq!(hull.u, expected);
        // X ↦ X_n is neither injective nor surjective onto u
        let n_of = |m: &Matrix| crate::jordan::jordan_chevalley(m).unwrap().n;
        assert_eq!(n_of(&a), e(0, 2));
        assert_eq!(n_of(&(&a + &b)), e(0, 2));
        let r = check_simply_transitive(&phi).unwrap();
        assert_eq!(r.verdict, Verdict::NotSimplyTransitive);
    }

    #[test]
    fn translations_are_simply_transitive() {
        let h3 = LieAlgebra::new(default_names(3), &[(0, 1, vec![(2, s(1))])]).unwrap();
        let target = AffineAlgebra::new(h3.clone()).unwrap();
        let images = (0..3).map(|i| AffineElement::translation(unit(3, i))).collect();
        let phi = LieMorphism::new(h3, target, images).unwrap();
        let r = check_simply_transitive(&phi).unwrap();
        assert_eq!(r.verdict, Verdict::SimplyTransitive);
        assert_eq!(r.nilpotent_criterion, Some(true));
        assert_eq!(r.u_basis.len(), 3);
    }

    #[test]
    fn dimension_mismatch() {
        let target = AffineAlgebra::new(LieAlgebra::abelian(2)).unwrap();
        let phi = LieMorphism::new(LieAlgebra::abelian(1), target, vec![AffineElement::translation(unit(2, 0))]).unwrap();
        let r = check_simply_transitive(&phi).unwrap();
        assert_eq!(r.verdict, Verdict::NotSimplyTransitive);
        assert!(r.reason.unwrap().contains("dim g"));
    }

    #[test]
    fn non_homomorphism_rejected() {
        let target = AffineAlgebra::new(LieAlgebra::abelian(2)).unwrap();
        let g = LieAlgebra::new(default_names(2), &[(0, 1, vec![(1, s(1))])]).unwrap();
        let images = (0..2).map(|i| AffineElement::translation(unit(2, i))).collect();
        let phi = LieMorphism::new(g, target, images).unwrap();
        assert!(matches!(compute_u(&phi), Err(Error::Verification(_))));
    }
}
