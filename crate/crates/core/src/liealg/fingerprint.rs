use std::fmt;

use serde::Serialize;

use super::algebra::LieAlgebra;
use super::series::{center, commutator_subalgebra, lower_central_series};
use super::Subspace;
use crate::error::{Error, Result};

/// `(dim, lower central series dimensions, dim center, dim [h, h])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub lower_central: Vec<usize>,
    pub center: usize,
    pub derived: usize,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?}, {}, {})", self.dim, self.lower_central, self.center, self.derived)
    }
}

/// Nilpotent Lie algebras of dimension at most four, up to isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NilpotentClass {
    Abelian(usize),
    /// Heisenberg algebra `[e1, e2] = e3`
    H3,
    /// `h3 ⊕ R`
    Rh3,
    /// filiform `[e1, e2] = e3, [e1, e3] = e4`
    N4,
}

impl NilpotentClass {
    pub fn name(&self) -> String {
        match self {
            NilpotentClass::Abelian(n) => format!("R{n}"),
            NilpotentClass::H3 => "h3".into(),
            NilpotentClass::Rh3 => "rh3".into(),
            NilpotentClass::N4 => "n4".into(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            NilpotentClass::Abelian(n) => *n,
            NilpotentClass::H3 => 3,
            NilpotentClass::Rh3 | NilpotentClass::N4 => 4,
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h3" => Some(NilpotentClass::H3),
            "rh3" => Some(NilpotentClass::Rh3),
            "n4" => Some(NilpotentClass::N4),
            other => other
                .strip_prefix('r')
                .and_then(|d| d.parse().ok())
                .map(NilpotentClass::Abelian),
        }
    }
}

impl fmt::Display for NilpotentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub fn nilpotent_fingerprint(h: &LieAlgebra) -> Result<Fingerprint> {
    let lcs = lower_central_series(h);
    if !lcs.last().unwrap().is_zero() {
        return Err(Error::NotNilpotent);
    }
    Ok(Fingerprint {
        dim: h.dim(),
        lower_central: lcs.iter().map(Subspace::dim).collect(),
        center: center(h).dim(),
        derived: commutator_subalgebra(h).dim(),
    })
}

pub fn identify_nilpotent_dim_le4(h: &LieAlgebra) -> Result<NilpotentClass> {
    let fp = nilpotent_fingerprint(h)?;
    if fp.dim > 4 {
        return Err(Error::UnknownAtThisDimension(fp.dim));
    }
    if fp.derived == 0 {
        return Ok(NilpotentClass::Abelian(fp.dim));
    }
    match (fp.dim, fp.lower_central.as_slice(), fp.center, fp.derived) {
        (3, [3, 1, 0], 1, 1) => Ok(NilpotentClass::H3),
        (4, [4, 1, 0], 2, 1) => Ok(NilpotentClass::Rh3),
        (4, [4, 2, 1, 0], 1, 2) => Ok(NilpotentClass::N4),
        _ => Err(Error::Verification(format!("unexpected nilpotent fingerprint {fp}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Scalar;
    use crate::liealg::algebra::default_names;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn four_dimensional_classes() {
        let rh3 = LieAlgebra::new(default_names(4), &[(0, 1, vec![(2, s(1))])]).unwrap();
        let fp = nilpotent_fingerprint(&rh3).unwrap();
        assert_eq!(fp.to_string(), "(4, [4, 1, 0], 2, 1)");
        assert_eq!(identify_nilpotent_dim_le4(&rh3).unwrap().name(), "rh3");

        let r4 = LieAlgebra::abelian(4);
        assert_eq!(nilpotent_fingerprint(&r4).unwrap().to_string(), "(4, [4, 0], 4, 0)");
        assert_eq!(identify_nilpotent_dim_le4(&r4).unwrap().name(), "R4");

        let n4 = LieAlgebra::new(default_names(4), &[(0, 1, vec![(2, s(1))]), (0, 2, vec![(3, s(1))])]).unwrap();
        assert_eq!(nilpotent_fingerprint(&n4).unwrap().to_string(), "(4, [4, 2, 1, 0], 1, 2)");
        assert_eq!(identify_nilpotent_dim_le4(&n4).unwrap().name(), "n4");
    }

    #[test]
    fn rejects_non_nilpotent_and_large() {
        let r2 = LieAlgebra::new(default_names(2), &[(0, 1, vec![(1, s(1))])]).unwrap();
        assert_eq!(nilpotent_fingerprint(&r2), Err(Error::NotNilpotent));
        let h5 = LieAlgebra::new(
            default_names(5),
            &[(0, 1, vec![(4, s(1))]), (2, 3, vec![(4, s(1))])],
        )
        .unwrap();
        assert_eq!(identify_nilpotent_dim_le4(&h5), Err(Error::UnknownAtThisDimension(5)));
    }

    #[test]
    fn names_round_trip() {
        for c in [NilpotentClass::Abelian(4), NilpotentClass::H3, NilpotentClass::Rh3, NilpotentClass::N4] {
            assert_eq!(NilpotentClass::from_name(&c.name()), Some(c));
        }
    }
}
