//! Semisimple splitting `g′ = b ⋉ g` of a solvable Lie algebra and its nilshadow.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar, Vector};
use crate::jordan::{is_semisimple, jordan_chevalley};
use crate::liealg::{
    centralizer, identify_nilpotent_dim_le4, is_solvable, nilradical, unit, AlgebraJson, LieAlgebra, NilpotentClass,
    Subspace,
};

/// `(ad_y)_s` for `y ∈ g`.
fn ad_s(g: &LieAlgebra, y: &[Scalar]) -> Result<Matrix> {
    Ok(jordan_chevalley(&g.adjoint_matrix(y)?)?.s)
}

/// Checks `(ad_{Y_i})_s Y_j = 0` and `[(ad_{Y_i})_s, (ad_{Y_j})_s] = 0`.
fn complement_conditions(g: &LieAlgebra, ys: &[Vector]) -> Result<Option<String>> {
    let ss: Vec<Matrix> = ys.iter().map(|y| ad_s(g, y)).collect::<Result<_>>()?;
    for (i, s) in ss.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            if s.mul_vec(y).iter().any(|x| !x.is_zero()) {
                return Ok(Some(format!("semisimple part of generator {i} moves generator {j}")));
            }
        }
        for (j, t) in ss.iter().enumerate().skip(i + 1) {
            if !s.commutator(t).is_zero() {
                return Ok(Some(format!("semisimple parts of generators {i} and {j} do not commute")));
            }
        }
    }
    Ok(None)
}

/// Generalized zero eigenspace of `ad_x`.
fn fitting_null(g: &LieAlgebra, x: &[Scalar]) -> Subspace {
    let n = g.dim();
    let m = g.adjoint_matrix(x).expect("same dimension").pow(n as u32);
    Subspace::span(n, &m.kernel())
}

/// A Cartan subalgebra, as the Fitting null component of the first of a
/// fixed list of candidate elements that attains the minimal dimension.
fn cartan_subalgebra(g: &LieAlgebra) -> Subspace {
    let n = g.dim();
    let mut candidates: Vec<Vector> = (0..n).map(|i| unit(n, i)).collect();
    for k in 1..=3i64 {
        candidates.push((0..n).map(|i| Scalar::from_int(1 + (i as i64) * k + (i as i64 * i as i64))).collect());
    }
    candidates
        .iter()
        .map(|x| fitting_null(g, x))
        .min_by_key(Subspace::dim)
        .expect("nonempty")
}

/// Basis `Y_1 … Y_m` of a complement `b` of the nilradical with
/// `(ad_{Y_i})_s Y_j = 0` and commuting semisimple parts.
pub fn splitting_complement(g: &LieAlgebra) -> Result<Vec<Vector>> {
    if !is_solvable(g) {
        return Err(Error::NotSolvable);
    }
    let nil = nilradical(g)?;
    let naive = nil.standard_complement();
    let first = match complement_conditions(g, &naive)? {
        None => return Ok(naive),
        Some(why) => why,
    };
    let ys = cartan_complement(g, &nil)
        .ok_or_else(|| Error::ComplementSearchFailed(format!("{first}; Cartan subalgebra does not span g/n")))?;
    match complement_conditions(g, &ys)? {
        None => Ok(ys),
        Some(why) => Err(Error::ComplementSearchFailed(format!("{first}; {why}"))),
    }
}

/// Complement of `nil` chosen inside a Cartan subalgebra.
fn cartan_complement(g: &LieAlgebra, nil: &Subspace) -> Option<Vec<Vector>> {
    let n = g.dim();
    let mut acc = nil.clone();
    let mut ys = Vec::new();
    for v in cartan_subalgebra(g).basis() {
        if !acc.contains(v) {
            acc = acc.sum(&Subspace::span(n, &[v.clone()]));
            ys.push(v.clone());
        }
    }
    (acc.dim() == n).then_some(ys)
}

#[derive(Clone, Debug, Serialize)]
pub struct SemisimpleSplitting {
    pub original: LieAlgebra,
    /// `g′` in the basis `(T_1 … T_m, e_1 … e_n)`
    pub splitting: LieAlgebra,
    /// complement `Y_1 … Y_m` of the nilradical in `g`
    pub complement: Vec<Vector>,
    /// `T_i` as vectors of `g′`
    pub torus_basis: Vec<Vector>,
    /// `(ad_{Y_i})_s` on `g`
    pub ad_s_matrices: Vec<Matrix>,
    /// columns are the images of the basis of `g` in `g′`
    pub embedding: Matrix,
    pub nilshadow: Subspace,
    /// `(Y_i − T_i, basis of the nilradical of g)`
    pub nilshadow_basis: Vec<Vector>,
    pub nilshadow_class: Option<NilpotentClass>,
}

impl SemisimpleSplitting {
    pub fn torus_dim(&self) -> usize {
        self.torus_basis.len()
    }

    /// The nilshadow as an algebra in the basis `nilshadow_basis`.
    pub fn nilshadow_algebra(&self) -> Result<LieAlgebra> {
        let names = crate::liealg::default_names(self.nilshadow_basis.len());
        self.splitting.restrict(&self.nilshadow_basis, names)
    }

    /// `g′` in the basis `(T_1 … T_m, nilshadow_basis)`.
    pub fn adapted_splitting(&self) -> Result<LieAlgebra> {
        let mut basis = self.torus_basis.clone();
        basis.extend(self.nilshadow_basis.iter().cloned());
        let names = crate::liealg::default_names(basis.len());
        self.splitting.restrict(&basis, names)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let adapted = self.adapted_splitting().ok().map(|a| AlgebraJson::from_algebra(&a));
        serde_json::json!({
            "original": AlgebraJson::from_algebra(&self.original),
            "splitting": AlgebraJson::from_algebra(&self.splitting),
            "adapted_splitting": adapted,
            "complement": self.complement,
            "torus_basis": self.torus_basis,
            "ad_s_matrices": self.ad_s_matrices,
            "nilshadow_basis": self.nilshadow_basis,
            "nilshadow_class": self.nilshadow_class.map(|c| c.name()),
        })
    }
}

fn fail(what: &str) -> Error {
    Error::Verification(format!("splitting: {what}"))
}

pub fn build_splitting(g: &LieAlgebra) -> Result<SemisimpleSplitting> {
    let ys = splitting_complement(g)?;
    let n = g.dim();
    let m = ys.len();
    let big = n + m;
    let ss: Vec<Matrix> = ys.iter().map(|y| ad_s(g, y)).collect::<Result<_>>()?;

    let mut c = vec![vec![vec![Scalar::zero(); big]; big]; big];
    for (i, s) in ss.iter().enumerate() {
        for k in 0..n {
            let col = s.column(k);
            for (r, x) in col.iter().enumerate() {
                c[i][m + k][m + r] = x.clone();
                c[m + k][i][m + r] = -x;
            }
        }
    }
    for j in 0..n {
        for k in 0..n {
            c[m + j][m + k][m..].clone_from_slice(g.structure(j, k));
        }
    }
    let mut names: Vec<String> = (1..=m).map(|i| format!("T{i}")).collect();
    names.extend(g.names().iter().cloned());
    let gp = LieAlgebra::from_tensor(names, c)?.with_params(g.params().clone());

    let lift = |v: &[Scalar]| -> Vector {
        let mut out = vec![Scalar::zero(); m];
        out.extend(v.iter().cloned());
        out
    };
    let embedding = Matrix::from_columns(&(0..n).map(|k| lift(&unit(n, k))).collect::<Vec<_>>(), big);
    let torus_basis: Vec<Vector> = (0..m).map(|i| unit(big, i)).collect();
    let torus = Subspace::span(big, &torus_basis);
    let g_img = Subspace::span(big, &(0..n).map(|k| lift(&unit(n, k))).collect::<Vec<_>>());

    let nil_g = nilradical(g)?;
    let mut nilshadow_basis: Vec<Vector> = ys
        .iter()
        .enumerate()
        .map(|(i, y)| {
            let mut v = lift(y);
            v[i] = Scalar::from_int(-1);
            v
        })
        .collect();
    nilshadow_basis.extend(nil_g.basis().iter().map(|v| lift(v)));
    let closed_form = Subspace::span(big, &nilshadow_basis);
    let nilshadow = nilradical(&gp)?;

    // (1) g′ = n ⋊ t
    if !torus.is_subalgebra(&gp) || !torus.intersection(&nilshadow).is_zero() || nilshadow.dim() + m != big {
        return Err(fail("g′ is not n ⋊ t"));
    }
    // (2) t acts on n by semisimple derivations
    for t in &torus_basis {
        if !is_semisimple(&gp.adjoint_matrix(t)?)? {
            return Err(fail("torus generator does not act semisimply"));
        }
    }
    // (3) g is an ideal, g ∩ t = 0, g′ = g + t = g + n
    if !g_img.is_ideal(&gp)
        || !g_img.intersection(&torus).is_zero()
        || g_img.sum(&torus).dim() != big
        || g_img.sum(&nilshadow).dim() != big
    {
        return Err(fail("g is not a complemented ideal"));
    }
    // (4) n = (n ∩ g) + c with c the centralizer of t in n
    let cen = centralizer(&gp, &torus, &nilshadow);
    if nilshadow.intersection(&g_img).sum(&cen) != nilshadow {
        return Err(fail("nilshadow is not (n ∩ g) + c"));
    }
    if closed_form != nilshadow {
        return Err(fail("nilradical of g′ differs from {X − (ad_X)_s}"));
    }
    if nilshadow.dim() != n {
        return Err(fail("dim nilshadow ≠ dim g"));
    }

    let mut out = SemisimpleSplitting {
        original: g.clone(),
        splitting: gp,
        complement: ys,
        torus_basis,
        ad_s_matrices: ss,
        embedding,
        nilshadow,
        nilshadow_basis,
        nilshadow_class: None,
    };
    if n <= 4 {
        out.nilshadow_class = Some(identify_nilpotent_dim_le4(&out.nilshadow_algebra()?)?);
    }
    Ok(out)
}

pub fn nilshadow_class(g: &LieAlgebra) -> Result<NilpotentClass> {
    let sp = build_splitting(g)?;
    match sp.nilshadow_class {
        Some(c) => Ok(c),
        None => Err(Error::UnknownAtThisDimension(sp.nilshadow.dim())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::default_names;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn alg(n: usize, br: &[(usize, usize, Vec<(usize, Scalar)>)]) -> LieAlgebra {
        LieAlgebra::new(default_names(n), br).unwrap()
    }

    fn rr3() -> LieAlgebra {
        alg(4, &[(0, 1, vec![(1, s(1))]), (0, 2, vec![(1, s(1)), (2, s(1))])])
    }

    #[test]
    fn rr3_splitting() {
        let g = rr3();
        assert_eq!(splitting_complement(&g).unwrap(), vec![unit(4, 0)]);
        let sp = build_splitting(&g).unwrap();
        assert_eq!(sp.splitting.dim(), 5);
        assert_eq!(sp.nilshadow_class, Some(NilpotentClass::Rh3));
        // basis (T, e1 − T, e2, e3, e4): [T,e2]=e2, [T,e3]=e3, [e1−T, e3]=e2
        let expected = alg(
            5,
            &[(0, 2, vec![(2, s(1))]), (0, 3, vec![(3, s(1))]), (1, 3, vec![(2, s(1))])],
        );
        assert_eq!(sp.adapted_splitting().unwrap(), expected);
    }

    #[test]
    fn nilpotent_is_its_own_splitting() {
        let h3 = alg(3, &[(0, 1, vec![(2, s(1))])]);
        let sp = build_splitting(&h3).unwrap();
        assert!(sp.complement.is_empty());
        assert_eq!(sp.splitting, h3);
        assert_eq!(sp.nilshadow, Subspace::full(3));
        assert_eq!(sp.nilshadow_class, Some(NilpotentClass::H3));
    }

    #[test]
    fn r2r2_complement() {
        let g = alg(4, &[(0, 1, vec![(1, s(1))]), (2, 3, vec![(3, s(1))])]);
        assert_eq!(splitting_complement(&g).unwrap(), vec![unit(4, 0), unit(4, 2)]);
        let sp = build_splitting(&g).unwrap();
        assert_eq!(sp.splitting.dim(), 6);
        assert_eq!(sp.nilshadow_class, Some(NilpotentClass::Abelian(4)));
    }

    #[test]
    fn diagonal_family_has_abelian_nilshadow() {
        let (mu, lam) = (Scalar::from_frac(-1, 2), Scalar::from_frac(1, 3));
        let g = alg(4, &[(0, 1, vec![(1, s(1))]), (0, 2, vec![(2, mu.clone())]), (0, 3, vec![(3, lam.clone())])]);
        let sp = build_splitting(&g).unwrap();
        assert_eq!(sp.ad_s_matrices[0], Matrix::diagonal(&[s(0), s(1), mu, lam]));
        assert_eq!(nilshadow_class(&g).unwrap(), NilpotentClass::Abelian(4));
    }

    #[test]
    fn cartan_fallback() {
        // r2r2 with complement {e1 + e4, e3}: (ad_{e3})_s moves e1 + e4
        let g = alg(4, &[(0, 1, vec![(1, s(1))]), (2, 3, vec![(3, s(1))])]);
        let bad = vec![vec![s(1), s(0), s(0), s(1)], unit(4, 2)];
        assert!(complement_conditions(&g, &bad).unwrap().is_some());
        let cartan = cartan_subalgebra(&g);
        assert_eq!(cartan.dim(), 2);
        assert!(cartan.is_subalgebra(&g));
        let ys = cartan_complement(&g, &nilradical(&g).unwrap()).unwrap();
        assert_eq!(complement_conditions(&g, &ys).unwrap(), None);
    }

    #[test]
    fn non_solvable_rejected() {
        let sl2 = alg(3, &[(0, 1, vec![(1, s(2))]), (0, 2, vec![(2, s(-2))]), (1, 2, vec![(0, s(1))])]);
        assert_eq!(splitting_complement(&sl2), Err(Error::NotSolvable));
    }
}
