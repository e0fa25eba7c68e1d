//! Spectrum obstructions: which characteristic polynomials (and commuting
//! pairs) can occur for derivations of the small nilpotent targets.

use itertools::Itertools;
use num_rational::BigRational;

use super::roots::{rational_roots_and_quadratics, Root};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Polynomial, Scalar};
use crate::liealg::NilpotentClass;

/// Eigenvalue data of a tuple of commuting derivations: one entry per joint
/// eigenvalue, each holding one root per derivation.
type Joint = Vec<Vec<Root>>;

fn sum(a: &[Root], b: &[Root]) -> Vec<Root> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn real(a: &[Root]) -> bool {
    a.iter().all(Root::is_real)
}

/// Is there an ordering of the joint eigenvalues fitting the slot pattern of
/// `Der(h)`? Relations must hold in every coordinate.
///
/// - `h3`: `(α, β, α+β)`
/// - `h3 ⊕ R`: `(α, β, α+β, v)` with `v` real
/// - `n4`: `(a, e, a+e, 2a+e)`, all real
fn pattern_fits(class: NilpotentClass, joint: &Joint) -> bool {
    match class {
        NilpotentClass::Abelian(_) => true,
        NilpotentClass::H3 => joint
            .iter()
            .permutations(3)
            .any(|s| real(s[2]) && sum(s[0], s[1]) == *s[2]),
        NilpotentClass::Rh3 => joint
            .iter()
            .permutations(4)
            .any(|s| real(s[2]) && real(s[3]) && sum(s[0], s[1]) == *s[2]),
        NilpotentClass::N4 => {
            joint.iter().all(|x| real(x))
                && joint.iter().permutations(4).any(|s| {
                    let ae = sum(s[0], s[1]);
                    ae == *s[2] && sum(s[0], &ae) == *s[3]
                })
        }
    }
}

fn check_degree(class: NilpotentClass, p: &Polynomial) -> Result<()> {
    if p.degree() != Some(class.dim()) {
        return Err(Error::Dimension(format!("{p} has the wrong degree for {class}")));
    }
    if !p.leading().is_some_and(Scalar::is_one) {
        return Err(Error::Dimension(format!("{p} is not monic")));
    }
    Ok(())
}

/// Does some derivation of `h` have characteristic polynomial `p`?
pub fn derivation_spectrum_feasible(class: NilpotentClass, p: &Polynomial) -> Result<bool> {
    check_degree(class, p)?;
    if let NilpotentClass::Abelian(_) = class {
        return Ok(true);
    }
    let roots = rational_roots_and_quadratics(p)?;
    Ok(pattern_fits(class, &roots.into_iter().map(|r| vec![r]).collect()))
}

fn sorted(mut v: Vec<Root>) -> Vec<Root> {
    v.sort();
    v
}

/// Joint spectra of two commuting semisimple matrices consistent with the
/// spectra of `a1 + k a2` for `k = 2, 3`. More than one pairing may survive.
pub fn joint_spectra(a1: &Matrix, a2: &Matrix) -> Result<Vec<Joint>> {
    if !a1.commutator(a2).is_zero() {
        return Err(Error::Verification("torus matrices do not commute".into()));
    }
    let r1 = rational_roots_and_quadratics(&a1.charpoly()?)?;
    let r2 = rational_roots_and_quadratics(&a2.charpoly()?)?;
    let mut checks = Vec::new();
    for k in [2i64, 3] {
        let m = a1 + &a2.scale(&Scalar::from_int(k));
        checks.push((BigRational::from_integer(k.into()), rational_roots_and_quadratics(&m.charpoly()?)?));
    }
    let mut out: Vec<Joint> = Vec::new();
    for perm in (0..r2.len()).permutations(r2.len()) {
        let mut joint: Joint = r1.iter().zip(&perm).map(|(x, &j)| vec![x.clone(), r2[j].clone()]).collect();
        joint.sort();
        if out.contains(&joint) {
            continue;
        }
        let consistent = checks.iter().all(|(k, expect)| {
            sorted(joint.iter().map(|p| p[0].add(&p[1].scale(k))).collect()) == *expect
        });
        if consistent {
            out.push(joint);
        }
    }
    if out.is_empty() {
        return Err(Error::Verification("no consistent joint spectrum".into()));
    }
    Ok(out)
}

/// Can two commuting derivations of `h` have the joint spectrum of the
/// commuting semisimple pair `(a1, a2)`? Pairings that cannot be told apart
/// are all tried, so a `false` answer is safe.
pub fn commuting_pair_feasible(class: NilpotentClass, a1: &Matrix, a2: &Matrix) -> Result<bool> {
    check_degree(class, &a1.charpoly()?)?;
    check_degree(class, &a2.charpoly()?)?;
    if let NilpotentClass::Abelian(_) = class {
        return Ok(true);
    }
    Ok(joint_spectra(a1, a2)?.iter().any(|j| pattern_fits(class, j)))
}

/// Spectrum equality: same characteristic polynomial.
pub fn spectrum_match(s: &Matrix, ad_s_on_n: &Matrix) -> Result<bool> {
    if s.rows() != ad_s_on_n.rows() || !s.is_square() || !ad_s_on_n.is_square() {
        return Err(Error::Dimension("spectrum comparison needs square matrices of equal size".into()));
    }
    Ok(s.charpoly()? == ad_s_on_n.charpoly()?)
}
