use super::check::{check_simply_transitive, Obstruction, SpectrumCheck, TransitivityReport, Verdict, WitnessSummary};
use super::feasibility::{commuting_pair_feasible, derivation_spectrum_feasible};
use crate::affine::{AffineAlgebra, AffineElement, LieMorphism, MorphismJson};
use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::exactla::expr::Bindings;
use crate::exactla::{Matrix, Vector};
use crate::liealg::{default_names, identify_nilpotent_dim_le4, nilradical, unit, LieAlgebra};
use crate::splitting::{build_splitting, SemisimpleSplitting};

/// `ad_{T_i}` restricted to the nilshadow, in the basis `nilshadow_basis`.
pub fn torus_action(sp: &SemisimpleSplitting) -> Result<Vec<Matrix>> {
    let adapted = sp.adapted_splitting()?;
    let m = sp.torus_dim();
    let n = sp.nilshadow_basis.len();
    Ok((0..m)
        .map(|i| Matrix::from_fn(n, n, |r, k| adapted.structure(i, m + k)[m + r].clone()))
        .collect())
}

/// The action of `g` on its nilshadow `u`: `T ↦ (0, ad_T|u)` and `X ↦ (X, 0)`
/// on `g′ = t ⋉ u`, restricted to `g ⊂ g′`. Also returns the images of the
/// full adapted basis of `g′` (torus first).
pub fn canonical_witness(sp: &SemisimpleSplitting) -> Result<(LieMorphism, Vec<AffineElement>)> {
    let u = sp.nilshadow_algebra()?;
    let n = u.dim();
    let m = sp.torus_dim();
    let target = AffineAlgebra::new(u)?;
    let acts = torus_action(sp)?;
    let mut gens: Vec<AffineElement> = acts.iter().map(|a| AffineElement::derivation(a.clone())).collect();
    gens.extend((0..n).map(|k| AffineElement::translation(unit(n, k))));

    let mut basis = sp.torus_basis.clone();
    basis.extend(sp.nilshadow_basis.iter().cloned());
    let change = Matrix::from_columns(&basis, n + m);
    let mut images = Vec::with_capacity(sp.original.dim());
    for j in 0..sp.original.dim() {
        let x = change
            .solve(&sp.embedding.column(j))?
            .ok_or_else(|| Error::Verification("g is not inside the adapted span".into()))?
            .x;
        let mut im = AffineElement::zero(n);
        for (c, gen) in x.iter().zip(&gens) {
            if !c.is_zero() {
                im = im.add(&gen.scale(c));
            }
        }
        images.push(im);
    }
    Ok((LieMorphism::new(sp.original.clone(), target, images)?, gens))
}

/// For each torus generator `x` among `generators`:
/// `charpoly D(x)` against `charpoly ad_x` on the nilradical of the algebra the generators span.
pub fn witness_spectrum_checks(
    target: &AffineAlgebra,
    generators: &[AffineElement],
    torus: &[usize],
) -> Result<Vec<SpectrumCheck>> {
    if torus.is_empty() {
        return Ok(Vec::new());
    }
    let coords: Vec<Vector> = generators.iter().map(|x| target.coordinates(x)).collect::<Result<_>>()?;
    let alg = target
        .as_lie()
        .restrict(&coords, default_names(coords.len()))
        .map_err(|_| Error::ClosureFailed)?;
    let nil = nilradical(&alg)?;
    if nil.dim() != target.h_dim() {
        return Err(Error::Verification(format!(
            "nilradical of the witness algebra has dimension {} ≠ {}",
            nil.dim(),
            target.h_dim()
        )));
    }
    let mut out = Vec::new();
    for &t in torus {
        let ad = alg.adjoint_basis(t);
        let cols: Vec<Vector> = nil
            .basis()
            .iter()
            .map(|b| {
                nil.coordinates(&ad.mul_vec(b))
                    .ok_or_else(|| Error::Verification("nilradical is not ad-invariant".into()))
            })
            .collect::<Result<_>>()?;
        let restricted = Matrix::from_columns(&cols, nil.dim());
        let dp = generators[t].d.charpoly()?;
        let ap = restricted.charpoly()?;
        out.push(SpectrumCheck {
            matches: dp == ap,
            derivation_charpoly: dp.to_string(),
            adjoint_charpoly: ap.to_string(),
        });
    }
    Ok(out)
}

fn exists_report(source: &str, phi: &LieMorphism, checks: Vec<SpectrumCheck>) -> Result<TransitivityReport> {
    let check = check_simply_transitive(phi)?;
    if check.verdict != Verdict::SimplyTransitive {
        return Err(Error::Verification(format!(
            "{source} witness is not simply transitive: {}",
            check.reason.clone().unwrap_or_default()
        )));
    }
    if let Some(c) = checks.iter().find(|c| !c.matches) {
        return Err(Error::Verification(format!(
            "{source} witness: charpoly {} of D differs from {} on the nilradical",
            c.derivation_charpoly, c.adjoint_charpoly
        )));
    }
    let mut r = TransitivityReport::new(Verdict::Exists);
    r.u_basis = check.u_basis.clone();
    r.image_dim = check.image_dim;
    r.projection_rank = check.projection_rank;
    r.nilpotent_criterion = check.nilpotent_criterion;
    r.witness = Some(WitnessSummary {
        source: source.to_string(),
        morphism: MorphismJson::from_morphism(phi),
        check: Box::new(check),
        spectrum_checks: checks,
    });
    Ok(r)
}

/// Decides whether `g` (a catalog algebra at `params`) admits a simply
/// transitive action on the group of `h`: a stored witness, else the
/// canonical action when `h` is the nilshadow, else a spectrum obstruction.
pub fn check_pair(catalog: &Catalog, g_name: &str, params: &Bindings, h_name: &str) -> Result<TransitivityReport> {
    let g = catalog.get_algebra(g_name, params)?;
    let (h, _) = catalog.target_algebra(h_name)?;
    check_algebras(catalog, g_name, params, &g, &h, h_name)
}

fn check_algebras(
    catalog: &Catalog,
    g_name: &str,
    params: &Bindings,
    g: &LieAlgebra,
    h: &LieAlgebra,
    h_name: &str,
) -> Result<TransitivityReport> {
    if g.dim() != h.dim() {
        return Err(Error::Dimension(format!("dim g = {} but dim h = {}", g.dim(), h.dim())));
    }
    let h_class = identify_nilpotent_dim_le4(h)?;
    let sp = build_splitting(g)?;
    let class = sp.nilshadow_class;
    let class_name = class.map(|c| c.name());

    if let Some(w) = catalog.get_witness(g_name, params, h_name)? {
        let checks = witness_spectrum_checks(&w.morphism.target, &w.generators, &w.torus)?;
        let mut r = exists_report("catalog", &w.morphism, checks)?;
        r.nilshadow_class = class_name;
        return Ok(r);
    }
    if class == Some(h_class) {
        let (phi, gens) = canonical_witness(&sp)?;
        let torus: Vec<usize> = (0..sp.torus_dim()).collect();
        let checks = witness_spectrum_checks(&phi.target, &gens, &torus)?;
        let mut r = exists_report("canonical", &phi, checks)?;
        r.nilshadow_class = class_name;
        r.reason = Some(format!("h is isomorphic to the nilshadow {h_class}"));
        return Ok(r);
    }

    let acts = torus_action(&sp)?;
    let polys: Vec<_> = acts.iter().map(Matrix::charpoly).collect::<std::result::Result<_, _>>()?;
    let mut failing = Vec::new();
    for (i, p) in polys.iter().enumerate() {
        match derivation_spectrum_feasible(h_class, p) {
            Ok(true) => {}
            Ok(false) => failing.push(i),
            Err(Error::UnfactorablePolynomial(q)) => {
                let mut r = TransitivityReport::new(Verdict::Unknown)
                    .with_reason(format!("cannot factor {q}"));
                r.nilshadow_class = class_name;
                return Ok(r);
            }
            Err(e) => return Err(e),
        }
    }
    let mut obstruction = None;
    if !failing.is_empty() {
        obstruction = Some(Obstruction {
            generators: failing.clone(),
            polynomials: failing.iter().map(|&i| polys[i].to_string()).collect(),
            target: h_class.name(),
            commuting_pair: false,
        });
    } else if acts.len() == 2 {
        match commuting_pair_feasible(h_class, &acts[0], &acts[1]) {
            Ok(true) => {}
            Ok(false) => {
                obstruction = Some(Obstruction {
                    generators: vec![0, 1],
                    polynomials: polys.iter().map(|p| p.to_string()).collect(),
                    target: h_class.name(),
                    commuting_pair: true,
                })
            }
            Err(Error::UnfactorablePolynomial(q)) => {
                let mut r = TransitivityReport::new(Verdict::Unknown)
                    .with_reason(format!("cannot factor {q}"));
                r.nilshadow_class = class_name;
                return Ok(r);
            }
            Err(e) => return Err(e),
        }
    }
    let mut r = match obstruction {
        Some(o) => {
            let what = if o.commuting_pair { "the commuting torus pair" } else { "a torus generator" };
            let mut r = TransitivityReport::new(Verdict::Obstructed).with_reason(format!(
                "no derivation of {h_class} matches the spectrum of {what} ({})",
                o.polynomials.join("; ")
            ));
            r.obstruction = Some(o);
            r
        }
        None => TransitivityReport::new(Verdict::Unknown).with_reason("no witness and no spectrum obstruction"),
    };
    r.nilshadow_class = class_name;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Scalar;

    fn none() -> Bindings {
        Bindings::new()
    }

    fn lam(x: Scalar) -> Bindings {
        Bindings::from([("lambda".to_string(), x)])
    }

    #[test]
    fn stored_witness() {
        let c = Catalog::builtin().unwrap();
        let r = check_pair(&c, "rr3", &none(), "rh3").unwrap();
        assert_eq!(r.verdict, Verdict::Exists);
        let w = r.witness.unwrap();
        assert_eq!(w.source, "catalog");
        assert_eq!(w.spectrum_checks.len(), 1);
        assert!(w.spectrum_checks[0].matches);
        assert_eq!(w.check.verdict, Verdict::SimplyTransitive);
    }

    #[test]
    fn canonical_for_own_nilshadow() {
        let c = Catalog::builtin().unwrap();
        let r = check_pair(&c, "h3", &none(), "h3").unwrap();
        assert_eq!(r.verdict, Verdict::Exists);
        assert_eq!(r.witness.unwrap().source, "canonical");
        let r = check_pair(&c, "rr3,lambda", &lam(Scalar::from_frac(1, 2)), "R4").unwrap();
        assert_eq!(r.verdict, Verdict::Exists);
        assert_eq!(r.nilshadow_class.as_deref(), Some("R4"));
    }

    #[test]
    fn single_generator_obstruction() {
        // torus eigenvalues 0, 0, 1, 1 on the nilshadow never fit (a, e, a+e, 2a+e)
        let c = Catalog::builtin().unwrap();
        let r = check_pair(&c, "rr3", &none(), "n4").unwrap();
        assert_eq!(r.verdict, Verdict::Obstructed);
        let o = r.obstruction.unwrap();
        assert!(!o.commuting_pair);
        assert_eq!(o.polynomials, vec!["t^4 - 2*t^3 + t^2".to_string()]);
    }

    #[test]
    fn two_torus_obstruction() {
        let c = Catalog::builtin().unwrap();
        for h in ["rh3", "n4"] {
            let r = check_pair(&c, "r2r2", &none(), h).unwrap();
            assert_eq!(r.verdict, Verdict::Obstructed, "{h}");
        }
        let r = check_pair(&c, "r'2", &none(), "rh3").unwrap();
        assert_eq!(r.verdict, Verdict::Obstructed);
    }

    #[test]
    fn rotation_family_only_at_zero() {
        let c = Catalog::builtin().unwrap();
        assert_eq!(check_pair(&c, "rr3prime,lambda", &lam(Scalar::zero()), "rh3").unwrap().verdict, Verdict::Exists);
        let r = check_pair(&c, "rr3prime,lambda", &lam(Scalar::one()), "rh3").unwrap();
        assert_eq!(r.verdict, Verdict::Obstructed);
    }

    #[test]
    fn abelian_target_without_witness_is_unknown() {
        // every characteristic polynomial is realised by a derivation of R4
        let c = Catalog::builtin().unwrap();
        let r = check_pair(&c, "r4", &none(), "R4").unwrap();
        assert_eq!(r.verdict, Verdict::Unknown);
    }

    #[test]
    fn dimension_mismatch() {
        let c = Catalog::builtin().unwrap();
        assert!(matches!(check_pair(&c, "h3", &none(), "rh3"), Err(Error::Dimension(_))));
    }

    #[test]
    fn canonical_witness_of_rr3() {
        let c = Catalog::builtin().unwrap();
        let sp = build_splitting(&c.get_algebra("rr3", &none()).unwrap()).unwrap();
        let acts = torus_action(&sp).unwrap();
        assert_eq!(acts.len(), 1);
        assert_eq!(acts[0].charpoly().unwrap().to_string(), "t^4 - 2*t^3 + t^2");
        let (phi, gens) = canonical_witness(&sp).unwrap();
        assert_eq!(gens.len(), 5);
        assert_eq!(check_simply_transitive(&phi).unwrap().verdict, Verdict::SimplyTransitive);
    }
}
