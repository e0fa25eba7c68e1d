use super::WitnessEntry;
use crate::affine::{AffineAlgebra, AffineElement, LieMorphism};
use crate::error::{Error, Result};
use crate::exactla::expr::{self, Bindings};
use crate::exactla::{Matrix, Scalar, Vector};
use crate::liealg::{LieAlgebra, ScalarText};

/// A stored witness built at concrete parameters.
#[derive(Clone, Debug)]
pub struct CatalogWitness {
    pub morphism: LieMorphism,
    /// `ψ(x_0) … ψ(x_n)` for coordinate witnesses, otherwise the images
    pub generators: Vec<AffineElement>,
    /// indices into `generators` of the torus directions
    pub torus: Vec<usize>,
}

pub(super) fn constants(w: &WitnessEntry) -> Result<Bindings> {
    let mut env = Bindings::new();
    for (k, v) in &w.constants {
        let x = expr::eval_scalar(v, &env)?;
        env.insert(k.clone(), x);
    }
    Ok(env)
}

fn eval_matrix(rows: &[Vec<ScalarText>], env: &Bindings, n: usize) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("derivation part must be {n}x{n}")));
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|x| x.eval(env)).collect::<Result<Vector>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows)?)
}

pub(super) fn build(w: &WitnessEntry, g: LieAlgebra, h: LieAlgebra) -> Result<CatalogWitness> {
    let n = h.dim();
    let mut env = g.params().clone();
    env.extend(constants(w)?);
    let target = AffineAlgebra::new(h)?;

    if let Some(images) = &w.images {
        let mut out = Vec::new();
        for im in images {
            let v = im.v.iter().map(|x| x.eval(&env)).collect::<Result<Vector>>()?;
            if v.len() != n {
                return Err(Error::Dimension(format!("translation part must have length {n}")));
            }
            out.push(AffineElement::new(v, eval_matrix(&im.d, &env, n)?));
        }
        let morphism = LieMorphism::new(g, target, out.clone())?;
        return Ok(CatalogWitness {
            morphism,
            generators: out,
            torus: Vec::new(),
        });
    }

    let (Some(t), Some(d), Some(q)) = (&w.translation, &w.d, &w.source_map) else {
        return Err(Error::Catalog(format!("witness {} → {} is incomplete", w.g, w.h)));
    };
    if t.len() != n || t.iter().any(|&k| k == 0 || k > n) {
        return Err(Error::Catalog(format!("translation {t:?} must permute 1..={n}")));
    }
    // ψ(x_k): D with x_k = 1 and the other coordinates 0
    let mut psi = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut e = env.clone();
        for j in 0..=n {
            e.insert(format!("x{j}"), if j == k { Scalar::one() } else { Scalar::zero() });
        }
        let v: Vector = t.iter().map(|&p| if p == k { Scalar::one() } else { Scalar::zero() }).collect();
        psi.push(AffineElement::new(v, eval_matrix(d, &e, n)?));
    }
    if q.len() != n + 1 || q.iter().any(|r| r.len() != g.dim()) {
        return Err(Error::Dimension(format!("source map must be {} x {}", n + 1, g.dim())));
    }
    let mut images = Vec::with_capacity(g.dim());
    for j in 0..g.dim() {
        let mut x = AffineElement::zero(n);
        for (k, row) in q.iter().enumerate() {
            let c = row[j].eval(&env)?;
            if !c.is_zero() {
                x = x.add(&psi[k].scale(&c));
            }
        }
        images.push(x);
    }
    let morphism = LieMorphism::new(g, target, images)?;
    Ok(CatalogWitness {
        morphism,
        generators: psi,
        torus: vec![0],
    })
}
