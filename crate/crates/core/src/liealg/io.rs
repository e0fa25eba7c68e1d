use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::algebra::{default_names, BracketTerm, LieAlgebra};
use crate::error::{Error, Result};
use crate::exactla::expr::{self, Bindings};
use crate::exactla::Scalar;

/// A scalar as written in JSON: an integer or an expression string that may
/// mention the algebra's parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    pub fn eval(&self, env: &Bindings) -> Result<Scalar> {
        match self {
            ScalarText::Int(n) => Ok(Scalar::from_int(*n)),
            ScalarText::Text(s) => Ok(expr::eval_scalar(s, env)?),
        }
    }
}

impl From<&Scalar> for ScalarText {
    fn from(x: &Scalar) -> Self {
        ScalarText::Text(x.to_string())
    }
}

/// On-disk form of an algebra. Bracket indices are 1-based, matching the
/// default basis names `e1, …, en`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<(usize, usize, Vec<(usize, ScalarText)>)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, ScalarText>,
}

impl AlgebraJson {
    /// Binds the stored parameters, overridden by `extra`, and builds the algebra.
    pub fn build(&self, extra: &Bindings) -> Result<LieAlgebra> {
        let mut env = Bindings::new();
        for (k, v) in &self.params {
            env.insert(k.clone(), v.eval(&Bindings::new())?);
        }
        for (k, v) in extra {
            env.insert(k.clone(), v.clone());
        }
        let names = match &self.basis {
            Some(b) if b.len() != self.dim => {
                return Err(Error::Dimension(format!("{} basis names for dimension {}", b.len(), self.dim)))
            }
            Some(b) => b.clone(),
            None => default_names(self.dim),
        };
        let index = |i: usize| -> Result<usize> {
            if i == 0 || i > self.dim {
                Err(Error::Dimension(format!("bracket index {i} outside 1..={}", self.dim)))
            } else {
                Ok(i - 1)
            }
        };
        let mut terms: Vec<BracketTerm> = Vec::new();
        for (i, j, rhs) in &self.brackets {
            let mut out = Vec::new();
            for (k, x) in rhs {
                out.push((index(*k)?, x.eval(&env)?));
            }
            terms.push((index(*i)?, index(*j)?, out));
        }
        Ok(LieAlgebra::new(names, &terms)?.with_params(env))
    }

    pub fn from_algebra(g: &LieAlgebra) -> Self {
        AlgebraJson {
            dim: g.dim(),
            basis: Some(g.names().to_vec()),
            brackets: g
                .nonzero_brackets()
                .into_iter()
                .map(|(i, j, rhs)| (i + 1, j + 1, rhs.iter().map(|(k, x)| (k + 1, x.into())).collect()))
                .collect(),
            params: g.params().iter().map(|(k, v)| (k.clone(), v.into())).collect(),
        }
    }
}

impl LieAlgebra {
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str::<AlgebraJson>(src)?.build(&Bindings::new())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(AlgebraJson::from_algebra(self)).expect("serializable")
    }
}

impl Serialize for LieAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraJson::from_algebra(self).serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_with_params() {
        let src = r#"{"dim": 4, "brackets": [[1, 2, [[2, 1]]], [1, 3, [[3, "lambda"]]]],
                      "params": {"lambda": "1/2"}}"#;
        let g = LieAlgebra::from_json(src).unwrap();
        assert_eq!(g.structure(0, 2)[2], Scalar::from_frac(1, 2));
        assert_eq!(g.structure(2, 0)[2], Scalar::from_frac(-1, 2));
        assert_eq!(g.names()[3], "e4");
        let back = LieAlgebra::from_json(&g.to_json().to_string()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn jacobi_failure_rejected() {
        let src = r#"{"dim": 3, "brackets": [[1, 2, [[3, 1]]], [2, 3, [[1, 1]]], [1, 3, [[1, 1]]]]}"#;
        assert!(matches!(LieAlgebra::from_json(src), Err(Error::Jacobi(..))));
    }

    #[test]
    fn bad_index_rejected() {
        let src = r#"{"dim": 2, "brackets": [[0, 1, [[2, 1]]]]}"#;
        assert!(matches!(LieAlgebra::from_json(src), Err(Error::Dimension(_))));
    }

    #[test]
    fn irrational_entries() {
        let src = r#"{"dim": 2, "brackets": [[1, 2, [[2, "(1+sqrt(5))/2"]]]]}"#;
        let g = LieAlgebra::from_json(src).unwrap();
        assert_eq!(g.discriminant(), 5);
    }
}
