use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{aff_bracket, AffineAlgebra, AffineElement};
use crate::error::{Error, Result};
use crate::exactla::expr::Bindings;
use crate::exactla::{Matrix, Scalar, Vector};
use crate::liealg::{combine, is_derivation, AlgebraJson, LieAlgebra, ScalarText};

/// A linear map `g → aff(h)` given on the basis of `g`.
#[derive(Clone, Debug)]
pub struct LieMorphism {
    pub source: LieAlgebra,
    pub target: AffineAlgebra,
    pub images: Vec<AffineElement>,
}

impl LieMorphism {
    pub fn new(source: LieAlgebra, target: AffineAlgebra, images: Vec<AffineElement>) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::Dimension(format!(
                "{} images for a {}-dimensional source",
                images.len(),
                source.dim()
            )));
        }
        for x in &images {
            target.check_shape(x)?;
        }
        Ok(LieMorphism { source, target, images })
    }

    /// `φ(x)` for a coordinate vector `x` of the source.
    pub fn apply(&self, x: &[Scalar]) -> AffineElement {
        let n = self.target.h_dim();
        let mut out = AffineElement::zero(n);
        for (c, im) in x.iter().zip(&self.images) {
            if !c.is_zero() {
                out = out.add(&im.scale(c));
            }
        }
        out
    }

    /// The translation part `t` as an `n × dim g` matrix.
    pub fn translation_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.images.iter().map(|x| x.v.clone()).collect::<Vec<_>>(), self.target.h_dim())
    }

    /// Images as columns of `as_lie` coordinates. Requires every `D` to be a derivation.
    pub fn coordinate_matrix(&self) -> Result<Matrix> {
        let cols: Vec<Vector> = self
            .images
            .iter()
            .map(|x| self.target.coordinates(x))
            .collect::<Result<_>>()?;
        Ok(Matrix::from_columns(&cols, self.target.dim()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub passed: bool,
    /// first source basis index whose `D` part is not a derivation
    pub non_derivation: Option<usize>,
    /// first basis pair `(i, j)` with `φ[e_i, e_j] ≠ [φ e_i, φ e_j]`
    pub first_violation: Option<(usize, usize)>,
    pub injective: bool,
    pub kernel_dim: usize,
}

pub fn verify_morphism(phi: &LieMorphism) -> MorphismReport {
    let non_derivation = phi.images.iter().position(|x| !is_derivation(phi.target.h(), &x.d));
    let g = &phi.source;
    let n = g.dim();
    let mut first_violation = None;
    'outer: for i in 0..n {
        for j in i + 1..n {
            let lhs = phi.apply(g.structure(i, j));
            let rhs = aff_bracket(&phi.target, &phi.images[i], &phi.images[j]).expect("shapes checked");
            if lhs != rhs {
                first_violation = Some((i, j));
                break 'outer;
            }
        }
    }
    // rank of the stacked (v; vec D) columns
    let m = phi.target.h_dim();
    let cols: Vec<Vector> = phi
        .images
        .iter()
        .map(|x| {
            let mut c = x.v.clone();
            c.extend(x.d.to_vector());
            c
        })
        .collect();
    let rank = if n == 0 { 0 } else { Matrix::from_columns(&cols, m + m * m).rank() };
    MorphismReport {
        passed: non_derivation.is_none() && first_violation.is_none(),
        non_derivation,
        first_violation,
        injective: rank == n,
        kernel_dim: n - rank,
    }
}

/// How a JSON document names an algebra: a catalog name, a name with
/// parameters, or an inline structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Name(String),
    Named {
        name: String,
        #[serde(default)]
        params: BTreeMap<String, ScalarText>,
    },
    Inline(AlgebraJson),
}

impl AlgebraRef {
    /// `lookup` resolves catalog names.
    pub fn resolve(&self, lookup: &dyn Fn(&str, &Bindings) -> Result<LieAlgebra>) -> Result<LieAlgebra> {
        match self {
            AlgebraRef::Name(name) => lookup(name, &Bindings::new()),
            AlgebraRef::Named { name, params } => {
                let mut env = Bindings::new();
                for (k, v) in params {
                    env.insert(k.clone(), v.eval(&Bindings::new())?);
                }
                lookup(name, &env)
            }
            AlgebraRef::Inline(a) => a.build(&Bindings::new()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageJson {
    pub v: Vec<ScalarText>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<ScalarText>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source: AlgebraRef,
    pub target_h: AlgebraRef,
    pub images: Vec<ImageJson>,
}

impl MorphismJson {
    /// Image entries may use the source algebra's parameters.
    pub fn resolve(&self, lookup: &dyn Fn(&str, &Bindings) -> Result<LieAlgebra>) -> Result<LieMorphism> {
        let source = self.source.resolve(lookup)?;
        let h = self.target_h.resolve(lookup)?;
        let env = source.params().clone();
        let n = h.dim();
        let mut images = Vec::new();
        for im in &self.images {
            let v = im.v.iter().map(|x| x.eval(&env)).collect::<Result<Vector>>()?;
            let rows = im
                .d
                .iter()
                .map(|r| r.iter().map(|x| x.eval(&env)).collect::<Result<Vector>>())
                .collect::<Result<Vec<_>>>()?;
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Dimension(format!("derivation part must be {n}x{n}")));
            }
            images.push(AffineElement::new(v, Matrix::from_rows(rows)?));
        }
        LieMorphism::new(source, AffineAlgebra::new(h)?, images)
    }

    pub fn from_morphism(phi: &LieMorphism) -> Self {
        let text = |xs: &[Scalar]| xs.iter().map(ScalarText::from).collect::<Vec<_>>();
        MorphismJson {
            source: AlgebraRef::Inline(AlgebraJson::from_algebra(&phi.source)),
            target_h: AlgebraRef::Inline(AlgebraJson::from_algebra(phi.target.h())),
            images: phi
                .images
                .iter()
                .map(|x| ImageJson {
                    v: text(&x.v),
                    d: x.d.to_rows().iter().map(|r| text(r)).collect(),
                })
                .collect(),
        }
    }

    pub fn parse(src: &str, lookup: &dyn Fn(&str, &Bindings) -> Result<LieAlgebra>) -> Result<LieMorphism> {
        serde_json::from_str::<MorphismJson>(src)?.resolve(lookup)
    }
}

/// The algebra structure on the image of `images` in `aff(h)`, pulled back to
/// the basis of the image span. Returns the algebra and the images used as basis.
pub fn image_algebra(target: &AffineAlgebra, images: &[AffineElement]) -> Result<(LieAlgebra, Vec<Vector>)> {
    let coords: Vec<Vector> = images.iter().map(|x| target.coordinates(x)).collect::<Result<_>>()?;
    let k = target.dim();
    let m = Matrix::from_columns(&coords, k);
    let (_, pivots) = m.rref();
    let basis: Vec<Vector> = pivots.iter().map(|&p| coords[p].clone()).collect();
    let names = crate::liealg::default_names(basis.len());
    let alg = target.as_lie().restrict(&basis, names).map_err(|_| Error::ClosureFailed)?;
    Ok((alg, basis))
}

/// Linear combination of affine elements.
pub fn combine_elements(n: usize, coeffs: &[Scalar], xs: &[AffineElement]) -> AffineElement {
    let v = combine(coeffs, &xs.iter().map(|x| x.v.clone()).collect::<Vec<_>>(), n);
    let d = combine(coeffs, &xs.iter().map(|x| x.d.to_vector()).collect::<Vec<_>>(), n * n);
    AffineElement::new(v, Matrix::from_fn(n, n, |i, j| d[i * n + j].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{default_names, nilradical, unit, unit_span};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn h3() -> LieAlgebra {
        LieAlgebra::new(default_names(3), &[(0, 1, vec![(2, s(1))])]).unwrap()
    }

    fn half(n: i64) -> Scalar {
        Scalar::from_frac(n, 2)
    }

    /// `x ↦ ((x2, x3, x4), D(x))` with `D = x1·R + x2·P + x3·Q` on `h3`
    fn four_dim_images(r: Matrix) -> Vec<AffineElement> {
        let z = s(0);
        let p = Matrix::from_rows(vec![
            vec![z.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone()],
            vec![z.clone(), half(-1), z.clone()],
        ])
        .unwrap();
        let q = Matrix::from_rows(vec![
            vec![z.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone()],
            vec![half(1), z.clone(), z.clone()],
        ])
        .unwrap();
        vec![
            AffineElement::derivation(r),
            AffineElement::new(unit(3, 0), p),
            AffineElement::new(unit(3, 1), q),
            AffineElement::translation(unit(3, 2)),
        ]
    }

    fn check_example(r: Matrix, expected: &[(usize, usize, Vec<(usize, Scalar)>)]) {
        let target = AffineAlgebra::new(h3()).unwrap();
        let images = four_dim_images(r);
        let (g, _) = image_algebra(&target, &images).unwrap();
        assert_eq!(g.dim(), 4);
        // structure in the basis of the images themselves
        let q = Matrix::from_columns(&images.iter().map(|x| target.coordinates(x).unwrap()).collect::<Vec<_>>(), target.dim());
        let mut c = vec![vec![vec![s(0); 4]; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let b = aff_bracket(&target, &images[i], &images[j]).unwrap();
                c[i][j] = q.solve(&target.coordinates(&b).unwrap()).unwrap().unwrap().x;
            }
        }
        let gp = LieAlgebra::from_tensor(default_names(4), c).unwrap();
        assert_eq!(gp, LieAlgebra::new(default_names(4), expected).unwrap());
        let phi = LieMorphism::new(gp.clone(), target, images).unwrap();
        let report = verify_morphism(&phi);
        assert!(report.passed && report.injective, "{report:?}");
        // nilradical span{e2, e3, e4} maps to elements with nilpotent D
        assert_eq!(nilradical(&gp).unwrap(), unit_span(4, &[1, 2, 3]));
        for x in &phi.images[1..] {
            assert!(super::super::is_nilpotent_element(x));
        }
    }

    #[test]
    fn rotation_example() {
        // column convention: [φe1, φe2] = φe3
        check_example(
            Matrix::from_ints(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]),
            &[(0, 1, vec![(2, s(1))]), (0, 2, vec![(1, s(-1))])],
        );
    }

    #[test]
    fn hyperbolic_example() {
        check_example(
            Matrix::from_ints(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]),
            &[(0, 1, vec![(1, s(1))]), (0, 2, vec![(2, s(-1))])],
        );
    }

    #[test]
    fn unipotent_block_example() {
        check_example(
            Matrix::from_ints(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
            &[(0, 2, vec![(2, s(1))]), (0, 3, vec![(3, s(1))])],
        );
    }

    #[test]
    fn diagonal_on_heisenberg() {
        let target = AffineAlgebra::new(h3()).unwrap();
        let images = vec![
            AffineElement::derivation(Matrix::from_ints(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]])),
            AffineElement::translation(unit(3, 0)),
            AffineElement::translation(unit(3, 1)),
            AffineElement::translation(unit(3, 2)),
        ];
        let gp = LieAlgebra::new(
            default_names(4),
            &[(0, 2, vec![(2, s(1))]), (0, 3, vec![(3, s(1))]), (1, 2, vec![(3, s(1))])],
        )
        .unwrap();
        let report = verify_morphism(&LieMorphism::new(gp, target, images).unwrap());
        assert!(report.passed && report.injective);
    }

    #[test]
    fn zero_map_is_homomorphism_but_not_injective() {
        let target = AffineAlgebra::new(h3()).unwrap();
        let phi = LieMorphism::new(h3(), target, vec![AffineElement::zero(3); 3]).unwrap();
        let r = verify_morphism(&phi);
        assert!(r.passed);
        assert!(!r.injective);
        assert_eq!(r.kernel_dim, 3);
    }

    #[test]
    fn violation_reported() {
        let target = AffineAlgebra::new(h3()).unwrap();
        let images = (0..3).map(|i| AffineElement::translation(unit(3, i))).collect();
        let r3 = LieAlgebra::new(
            default_names(3),
            &[(0, 1, vec![(1, s(1))]), (0, 2, vec![(1, s(1)), (2, s(1))])],
        )
        .unwrap();
        let r = verify_morphism(&LieMorphism::new(r3, target, images).unwrap());
        assert!(!r.passed);
        assert_eq!(r.first_violation, Some((0, 1)));
    }

    #[test]
    fn json_round_trip() {
        let target = AffineAlgebra::new(h3()).unwrap();
        let images: Vec<_> = (0..3).map(|i| AffineElement::translation(unit(3, i))).collect();
        let phi = LieMorphism::new(h3(), target, images).unwrap();
        let text = serde_json::to_string(&MorphismJson::from_morphism(&phi)).unwrap();
        let no_catalog = |name: &str, _: &Bindings| -> Result<LieAlgebra> { Err(Error::UnknownAlgebra(name.into())) };
        let back = MorphismJson::parse(&text, &no_catalog).unwrap();
        assert_eq!(back.images, phi.images);
        assert_eq!(back.source, phi.source);
        assert!(verify_morphism(&back).passed);
    }

    #[test]
    fn parametric_images() {
        let src = r#"{
            "source": {"dim": 2, "brackets": [[1, 2, [[2, "lambda"]]]], "params": {"lambda": "2"}},
            "target_h": {"dim": 1},
            "images": [{"v": [0], "D": [["lambda"]]}, {"v": [1], "D": [[0]]}]
        }"#;
        let no_catalog = |name: &str, _: &Bindings| -> Result<LieAlgebra> { Err(Error::UnknownAlgebra(name.into())) };
        let phi = MorphismJson::parse(src, &no_catalog).unwrap();
        assert_eq!(phi.images[0].d[(0, 0)], s(2));
        assert!(verify_morphism(&phi).passed);
    }
}
