//! Additive Jordan–Chevalley decomposition of square matrices.

use serde::Serialize;
use thiserror::Error;

use crate::exactla::{LinAlgError, Matrix, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JordanError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("Jordan decomposition failed verification: {0}")]
    Verification(&'static str),
}

/// `A = s + n` with `s` semisimple, `n` nilpotent and `[s, n] = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JordanPair {
    pub s: Matrix,
    pub n: Matrix,
}

fn require_square(a: &Matrix) -> Result<(), LinAlgError> {
    if a.is_square() {
        Ok(())
    } else {
        Err(LinAlgError::Shape(format!("{}x{} matrix is not square", a.rows(), a.cols())))
    }
}

pub fn is_nilpotent(a: &Matrix) -> Result<bool, LinAlgError> {
    require_square(a)?;
    let p = a.charpoly()?;
    Ok(p == Polynomial::monomial(crate::exactla::Scalar::one(), a.rows()))
}

pub fn is_semisimple(a: &Matrix) -> Result<bool, LinAlgError> {
    require_square(a)?;
    let f = a.charpoly()?.squarefree_part()?;
    Ok(f.eval_matrix(a).is_zero())
}

/// Computes the decomposition by Newton iteration on the square-free part
/// of the characteristic polynomial and verifies every defining property.
pub fn jordan_chevalley(a: &Matrix) -> Result<JordanPair, JordanError> {
    require_square(a)?;
    a.discriminant()?;
    let n = a.rows();
    let f = a.charpoly()?.squarefree_part()?;
    let df = f.derivative();
    let mut s = a.clone();
    // quadratic convergence: ceil(log2 n) steps suffice, allow a little slack
    let mut converged = false;
    for _ in 0..=usize::BITS - n.leading_zeros() + 1 {
        let fs = f.eval_matrix(&s);
        if fs.is_zero() {
            converged = true;
            break;
        }
        let inv = df.eval_matrix(&s).inverse()?;
        s = &s - &(&fs * &inv);
    }
    if !converged {
        return Err(JordanError::Verification("Newton iteration did not converge"));
    }
    let nil = a - &s;
    let pair = JordanPair { s, n: nil };
    verify(a, &pair, &f)?;
    Ok(pair)
}

fn verify(a: &Matrix, p: &JordanPair, f: &Polynomial) -> Result<(), JordanError> {
    if &(&p.s + &p.n) != a {
        return Err(JordanError::Verification("s + n differs from the input"));
    }
    if !p.s.commutator(&p.n).is_zero() {
        return Err(JordanError::Verification("s and n do not commute"));
    }
    if !p.n.pow(a.rows() as u32).is_zero() {
        return Err(JordanError::Verification("n is not nilpotent"));
    }
    if !f.eval_matrix(&p.s).is_zero() {
        return Err(JordanError::Verification("s is not annihilated by a square-free polynomial"));
    }
    Ok(())
}
