//! Exact scalars `a + b·√d` with rational `a`, `b` and a square-free `d ≥ 1`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::expr;
use super::LinAlgError;

/// An element of ℚ or of a real quadratic field ℚ(√d).
///
/// Rationals are stored with `d = 1` and `b = 0`. Two scalars whose
/// irrational parts live in different fields cannot be combined; the
/// arithmetic operators panic in that case, while matrix-level entry
/// points report [`LinAlgError::MixedDiscriminant`] up front.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        self.d.hash(state);
    }
}

pub(crate) fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Merge two field discriminants; `1` is compatible with everything.
pub fn join_discriminant(d1: u64, d2: u64) -> Result<u64, LinAlgError> {
    match (d1, d2) {
        (1, d) | (d, 1) => Ok(d),
        (x, y) if x == y => Ok(x),
        (x, y) => Err(LinAlgError::MixedDiscriminant(x, y)),
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            a: BigRational::zero(),
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    /// `a + b·√d`. `d` must be square-free; `d = 1` folds `b` into `a`.
    pub fn quadratic(a: BigRational, b: BigRational, d: u64) -> Result<Self, LinAlgError> {
        if !is_square_free(d) {
            return Err(LinAlgError::NotSquareFree(d));
        }
        if d == 1 {
            return Ok(Self::from_rational(a + b));
        }
        Ok(Self::normalized(a, b, d))
    }

    /// `√d` for square-free `d`.
    pub fn sqrt_of(d: u64) -> Result<Self, LinAlgError> {
        Self::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    fn normalized(a: BigRational, b: BigRational, d: u64) -> Self {
        if b.is_zero() {
            Scalar { a, b, d: 1 }
        } else {
            Scalar { a, b, d }
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// Discriminant of the field this value lives in (1 for rationals).
    pub fn discriminant(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.a.clone())
    }

    /// Galois conjugate `a − b·√d`.
    pub fn conjugate(&self) -> Self {
        Self::normalized(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(BigInt::from(self.d));
        &self.a * &self.a - d * &self.b * &self.b
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Self::normalized(&self.a / &n, -(&self.b / &n), self.d))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn signum(&self) -> i8 {
        match self.cmp_zero() {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    fn cmp_zero(&self) -> Ordering {
        // sign of a + b√d without floating point
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return ord(sa);
        }
        if sa == 0 || sa == sb {
            return ord(if sa == 0 { sb } else { sa });
        }
        // opposite signs: compare a² with d·b²
        let d = BigRational::from_integer(BigInt::from(self.d));
        let lhs = &self.a * &self.a;
        let rhs = d * &self.b * &self.b;
        match lhs.cmp(&rhs) {
            Ordering::Greater => ord(sa),
            Ordering::Less => ord(sb),
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Approximate value, for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    fn check_field(&self, other: &Self) -> u64 {
        match join_discriminant(self.d, other.d) {
            Ok(d) => d,
            Err(e) => panic!("{e}"),
        }
    }
}

fn sign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn ord(s: i8) -> Ordering {
    s.cmp(&0)
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order of the real numbers represented. Panics on mixed fields.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).cmp_zero()
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let d = self.check_field(rhs);
        Scalar::normalized(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let d = self.check_field(rhs);
        Scalar::normalized(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.b.is_zero() && rhs.b.is_zero() {
            return Scalar::from_rational(&self.a * &rhs.a);
        }
        let d = self.check_field(rhs);
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + dd * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Scalar::normalized(a, b, d)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inverse().expect("division by zero scalar");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::normalized(-self.a, -self.b, self.d)
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serializes as `p/q` or `p/q+r/s*sqrt(d)` (integers drop the `/1`).
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let b = fmt_rational(&self.b.abs());
        if self.a.is_zero() {
            let sgn = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{sgn}{b}*sqrt({})", self.d)
        } else {
            let sgn = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{}{sgn}{b}*sqrt({})", fmt_rational(&self.a), self.d)
        }
    }
}

impl FromStr for Scalar {
    type Err = LinAlgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        expr::eval_scalar(s, &expr::Bindings::new())
            .map_err(|e| LinAlgError::Parse(format!("{s:?}: {e}")))
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Int(n) => Ok(Scalar::from_int(n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_frac(n, d)
    }

    #[test]
    fn golden_ratio_relation() {
        let c: Scalar = "1/2+1/2*sqrt(5)".parse().unwrap();
        let rel = &(&c * &c) - &c - Scalar::one();
        assert!(rel.is_zero());
        assert_eq!(c.discriminant(), 5);
    }

    #[test]
    fn inverse_in_extension() {
        let x: Scalar = "3-2*sqrt(2)".parse().unwrap();
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, Scalar::one());
        assert_eq!(y.to_string(), "3+2*sqrt(2)");
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "-7", "3/4", "-1/2+3/5*sqrt(7)", "2/3-1*sqrt(5)", "-1/3*sqrt(3)"] {
            let x: Scalar = s.parse().unwrap();
            let back: Scalar = x.to_string().parse().unwrap();
            assert_eq!(x, back, "{s}");
        }
        assert_eq!(q(6, -4).to_string(), "-3/2");
    }

    #[test]
    fn sqrt_collapses_to_rational() {
        let x = Scalar::quadratic(q(1, 2).a, q(3, 1).a, 1).unwrap();
        assert_eq!(x, q(7, 2));
        assert!(Scalar::sqrt_of(12).is_err());
    }

    #[test]
    fn ordering_is_exact() {
        let s5 = Scalar::sqrt_of(5).unwrap();
        assert!(s5 > q(2236, 1000));
        assert!(s5 < q(2237, 1000));
        let x = &s5 - &q(9, 4); // √5 − 9/4 < 0
        assert_eq!(x.signum(), -1);
        let y = &(&s5 * &q(-1, 1)) + &q(9, 4);
        assert_eq!(y.signum(), 1);
    }

    #[test]
    #[should_panic(expected = "mixed")]
    fn mixing_fields_panics() {
        let _ = Scalar::sqrt_of(2).unwrap() + Scalar::sqrt_of(3).unwrap();
    }

    #[test]
    fn rational_mixes_with_any_field() {
        let x = Scalar::sqrt_of(2).unwrap() + q(1, 3);
        assert_eq!(x.discriminant(), 2);
        let y = &x - &Scalar::sqrt_of(2).unwrap();
        assert!(y.is_rational());
        assert_eq!(y.discriminant(), 1);
    }
}
