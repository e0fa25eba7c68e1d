use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{LinAlgError, Matrix, Scalar};

/// Univariate polynomial, coefficients stored low to high degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// `c·t^k`
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `t − r`
    pub fn linear(r: Scalar) -> Self {
        Self::new(vec![-r, Scalar::one()])
    }

    pub fn from_ints(low_to_high: &[i64]) -> Self {
        Self::new(low_to_high.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_rational)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.inverse().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from_int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        assert!(a.is_square(), "polynomial evaluated at a non-square matrix");
        let n = a.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * a;
            if !c.is_zero() {
                for i in 0..n {
                    acc[(i, i)] += c;
                }
            }
        }
        acc
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial), LinAlgError> {
        let dd = d.degree().ok_or(LinAlgError::ZeroPolynomial)?;
        let lead_inv = d.leading().unwrap().inverse().unwrap();
        let mut r = self.coeffs.clone();
        let Some(n) = self.degree().filter(|&n| n >= dd) else {
            return Ok((Polynomial::zero(), self.clone()));
        };
        let mut q = vec![Scalar::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = &r[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] -= &(&c * dj);
            }
            q[k] = c;
        }
        Ok((Polynomial::new(q), Polynomial::new(r)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p′)`, monic: the product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Result<Polynomial, LinAlgError> {
        if self.is_zero() {
            return Err(LinAlgError::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g)?;
        debug_assert!(r.is_zero());
        Ok(q.monic())
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        match other.div_rem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => other.is_zero(),
        }
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let mag = if neg { -c } else { c.clone() };
            let body = if !mag.is_rational() && k > 0 {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            let mono = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            let term = match (k, mag.is_one()) {
                (0, _) => body,
                (_, true) => mono,
                _ => format!("{body}*{mono}"),
            };
            if first {
                write!(f, "{}{term}", if neg { "-" } else { "" })?;
            } else {
                write!(f, " {} {term}", if neg { '-' } else { '+' })?;
            }
            first = false;
        }
        Ok(())
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_examples() {
        let t3 = Polynomial::from_ints(&[0, 0, 0, 1]);
        assert_eq!(t3.squarefree_part().unwrap(), Polynomial::from_ints(&[0, 1]));
        // (t−1)²(t+1) = t³ − t² − t + 1
        let p = Polynomial::from_ints(&[1, -1, -1, 1]);
        assert_eq!(p.squarefree_part().unwrap(), Polynomial::from_ints(&[-1, 0, 1]));
        let q = Polynomial::from_ints(&[1, 0, 1]);
        assert_eq!(q.squarefree_part().unwrap(), q);
        assert_eq!(Polynomial::zero().squarefree_part(), Err(LinAlgError::ZeroPolynomial));
    }

    #[test]
    fn division() {
        let p = Polynomial::from_ints(&[-1, 0, 0, 1]);
        let d = Polynomial::from_ints(&[-1, 1]);
        let (q, r) = p.div_rem(&d).unwrap();
        assert_eq!(q, Polynomial::from_ints(&[1, 1, 1]));
        assert!(r.is_zero());
        assert!(d.divides(&p));
    }

    #[test]
    fn display() {
        assert_eq!(Polynomial::from_ints(&[0, -1, 0, 1]).to_string(), "t^3 - t");
        assert_eq!(Polynomial::from_ints(&[3, 0, -2]).to_string(), "-2*t^2 + 3");
        let half = Polynomial::new(vec![Scalar::from_frac(1, 2), Scalar::one()]);
        assert_eq!(half.to_string(), "t + 1/2");
    }

    #[test]
    fn cayley_hamilton_small() {
        let a = Matrix::from_ints(&[&[1, 2, 0], &[3, -1, 4], &[0, 5, 2]]);
        assert!(a.charpoly().unwrap().eval_matrix(&a).is_zero());
    }
}
