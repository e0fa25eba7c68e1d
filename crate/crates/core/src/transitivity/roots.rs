//! Exact roots of rational polynomials that split into linear and quadratic
//! factors over `Q`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactla::expr::split_square;
use crate::exactla::Polynomial;

/// `Σ c_s·√s` over square-free `s` (negative `s` allowed, `s = 1` is the
/// rational part). The `√s` are linearly independent over `Q`, so equality
/// is equality of coefficient maps.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root(BTreeMap<i64, BigRational>);

impl Root {
    pub fn rational(r: BigRational) -> Self {
        Root::from_terms([(1, r)])
    }

    fn from_terms(terms: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut m = BTreeMap::new();
        for (s, c) in terms {
            if !c.is_zero() {
                let e: &mut BigRational = m.entry(s).or_insert_with(BigRational::zero);
                *e += c;
            }
        }
        m.retain(|_, c| !c.is_zero());
        Root(m)
    }

    pub fn zero() -> Self {
        Root(BTreeMap::new())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root::from_terms(self.0.iter().chain(&other.0).map(|(s, c)| (*s, c.clone())))
    }

    pub fn sub(&self, other: &Root) -> Root {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> Root {
        Root::from_terms(self.0.iter().map(|(s, c)| (*s, c * k)))
    }

    pub fn is_real(&self) -> bool {
        self.0.keys().all(|s| *s > 0)
    }

    pub fn conjugate(&self) -> Root {
        Root::from_terms(self.0.iter().map(|(s, c)| (*s, if *s < 0 { -c } else { c.clone() })))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (s, c)) in self.0.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            match *s {
                1 => write!(f, "{a}")?,
                -1 if a.is_one() => f.write_str("i")?,
                -1 => write!(f, "{a}*i")?,
                s if a.is_one() => write!(f, "sqrt({s})")?,
                s => write!(f, "{a}*sqrt({s})")?,
            }
        }
        Ok(())
    }
}

/// Integer polynomial, low to high.
type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn eval_int(p: &IntPoly, x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Exact division by a polynomial with leading coefficient `±1` or dividing all
/// intermediate values; `None` if not exact.
fn div_exact(p: &IntPoly, d: &IntPoly) -> Option<IntPoly> {
    let (n, m) = (p.len() - 1, d.len() - 1);
    if n < m {
        return None;
    }
    let lead = d.last().unwrap();
    let mut r = p.clone();
    let mut q = vec![BigInt::zero(); n - m + 1];
    for k in (0..=n - m).rev() {
        let top = &r[k + m];
        if !top.is_multiple_of(lead) {
            return None;
        }
        let c = top / lead;
        for (j, dj) in d.iter().enumerate() {
            r[k + j] -= &c * dj;
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

/// Positive divisors of `n ≠ 0`; `None` when `|n|` is too large for trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

fn with_signs(ds: &[BigInt]) -> impl Iterator<Item = BigInt> + '_ {
    ds.iter().flat_map(|d| [d.clone(), -d])
}

/// Roots of the monic quadratic `t² + b t + c`.
fn quadratic_roots(b: &BigRational, c: &BigRational) -> Option<[Root; 2]> {
    let disc = b * b - BigRational::from_integer(4.into()) * c;
    let half = BigRational::new(1.into(), 2.into());
    let center = -b * &half;
    if disc.is_zero() {
        return Some([Root::rational(center.clone()), Root::rational(center)]);
    }
    // √(p/q) = √(p q)/q
    let pq = disc.numer() * disc.denom();
    let (k, s) = split_square(&pq)?;
    let s = i64::try_from(s).ok()? * if disc.is_negative() { -1 } else { 1 };
    let coeff = BigRational::new(k, disc.denom().clone()) * &half;
    let mk = |sign: i64| Root::from_terms([(1, center.clone()), (s, &coeff * BigRational::from_integer(sign.into()))]);
    Some([mk(1), mk(-1)])
}

fn unfactorable(p: &Polynomial) -> Error {
    Error::UnfactorablePolynomial(p.to_string())
}

/// Roots with multiplicity of a rational polynomial, provided it splits into
/// linear and quadratic factors over `Q`. Sorted.
pub fn rational_roots_and_quadratics(p: &Polynomial) -> Result<Vec<Root>> {
    let Some(deg) = p.degree() else {
        return Err(unfactorable(p));
    };
    let mut rat = Vec::with_capacity(deg + 1);
    for c in p.coeffs() {
        rat.push(c.to_rational().ok_or_else(|| unfactorable(p))?);
    }
    // primitive integer polynomial
    let lcm = rat.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut f: IntPoly = rat.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let content = f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in f.iter_mut() {
        *c /= &content;
    }
    trim(&mut f);

    let mut roots = Vec::new();
    // rational roots p/q: p | a0, q | an
    loop {
        if f.len() <= 1 {
            break;
        }
        if f[0].is_zero() {
            roots.push(Root::zero());
            f.remove(0);
            continue;
        }
        let ps = divisors(&f[0]).ok_or_else(|| unfactorable(p))?;
        let qs = divisors(f.last().unwrap()).ok_or_else(|| unfactorable(p))?;
        let mut found = None;
        'search: for q in &qs {
            for num in with_signs(&ps) {
                if !num.gcd(q).is_one() {
                    continue;
                }
                // q t − num divides f
                if let Some(rest) = div_exact(&f, &vec![-num.clone(), q.clone()]) {
                    found = Some((BigRational::new(num, q.clone()), rest));
                    break 'search;
                }
            }
        }
        match found {
            Some((r, rest)) => {
                roots.push(Root::rational(r));
                f = rest;
            }
            None => break,
        }
    }
    // no rational roots left: split off monic quadratic factors
    let d = f.len() - 1;
    if d > 0 {
        // h(t) = a^(d−1) f(t/a) is monic integer; roots of f are roots of h over a
        let a = f.last().unwrap().clone();
        let h: IntPoly = (0..=d).map(|i| &f[i] * num_traits::pow(a.clone(), d - i) / &a).collect();
        let scale = BigRational::new(BigInt::one(), a.clone());
        for r in monic_quadratic_roots(h).ok_or_else(|| unfactorable(p))? {
            roots.push(r.scale(&scale));
        }
    }
    roots.sort();
    Ok(roots)
}

/// Splits a monic integer polynomial without rational roots into quadratics.
fn monic_quadratic_roots(mut h: IntPoly) -> Option<Vec<Root>> {
    let mut out = Vec::new();
    while h.len() > 1 {
        let d = h.len() - 1;
        if d % 2 == 1 {
            return None;
        }
        if d == 2 {
            let [r1, r2] = quadratic_roots(&BigRational::from_integer(h[1].clone()), &BigRational::from_integer(h[0].clone()))?;
            out.extend([r1, r2]);
            break;
        }
        // t² + b t + c with c | h(0) and (1 + b + c) | h(1)
        let h1 = eval_int(&h, &BigInt::one());
        let hm1 = eval_int(&h, &-BigInt::one());
        let cs = divisors(&h[0])?;
        let ds = divisors(&h1)?;
        let mut found = None;
        'search: for c in with_signs(&cs) {
            for delta in with_signs(&ds) {
                let b = &delta - BigInt::one() - &c;
                let m1 = BigInt::one() - &b + &c;
                if m1.is_zero() || !hm1.is_multiple_of(&m1) {
                    continue;
                }
                if let Some(q) = div_exact(&h, &vec![c.clone(), b.clone(), BigInt::one()]) {
                    found = Some((b, c, q));
                    break 'search;
                }
            }
        }
        let (b, c, q) = found?;
        let [r1, r2] = quadratic_roots(&BigRational::from_integer(b), &BigRational::from_integer(c))?;
        out.extend([r1, r2]);
        h = q;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{Matrix, Scalar};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn strs(rs: &[Root]) -> Vec<String> {
        rs.iter().map(Root::to_string).collect()
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (t − 1/2)² t (t + 1)
        let half = Polynomial::linear(Scalar::from_frac(1, 2));
        let p = &(&(&half * &half) * &Polynomial::linear(Scalar::zero())) * &Polynomial::linear(Scalar::from_int(-1));
        let mut shown = strs(&rational_roots_and_quadratics(&p).unwrap());
        shown.sort();
        assert_eq!(shown, vec!["-1", "0", "1/2", "1/2"]);
    }

    #[test]
    fn complex_pair() {
        // t ((t − 1)² + 1) = t³ − 2t² + 2t
        let p = Polynomial::from_ints(&[0, 2, -2, 1]);
        let r = rational_roots_and_quadratics(&p).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.contains(&Root::zero()));
        let z = Root::from_terms([(1, q(1, 1)), (-1, q(1, 1))]);
        assert!(r.contains(&z) && r.contains(&z.conjugate()));
        assert!(!z.is_real());
    }

    #[test]
    fn golden_ratio_pair() {
        // (t² − t − 1)(t² + 1)
        let p = Polynomial::from_ints(&[-1, -1, 0, -1, 1]);
        let r = rational_roots_and_quadratics(&p).unwrap();
        let phi = Root::from_terms([(1, q(1, 2)), (5, q(1, 2))]);
        assert!(r.contains(&phi));
        assert!(r.contains(&Root::from_terms([(-1, q(1, 1))])));
        assert_eq!(r.iter().filter(|x| x.is_real()).count(), 2);
    }

    #[test]
    fn non_monic_denominators() {
        // charpoly of diag(1/3, 1/3) plus rotation block [[2/3, -1/5], [1/5, 2/3]]
        let m = Matrix::from_rows(vec![
            vec![Scalar::from_frac(1, 3), Scalar::zero(), Scalar::zero(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::from_frac(1, 3), Scalar::zero(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::zero(), Scalar::from_frac(2, 3), Scalar::from_frac(-1, 5)],
            vec![Scalar::zero(), Scalar::zero(), Scalar::from_frac(1, 5), Scalar::from_frac(2, 3)],
        ])
        .unwrap();
        let r = rational_roots_and_quadratics(&m.charpoly().unwrap()).unwrap();
        let z = Root::from_terms([(1, q(2, 3)), (-1, q(1, 5))]);
        assert!(r.contains(&z) && r.contains(&z.conjugate()));
        assert_eq!(r.iter().filter(|x| **x == Root::rational(q(1, 3))).count(), 2);
    }

    #[test]
    fn two_quadratics_without_rational_roots() {
        // (t² − 2)(t² + 3)
        let p = Polynomial::from_ints(&[-6, 0, 1, 0, 1]);
        let r = rational_roots_and_quadratics(&p).unwrap();
        let mut shown = strs(&r);
        shown.sort();
        assert_eq!(shown, vec!["-sqrt(-3)", "-sqrt(2)", "sqrt(-3)", "sqrt(2)"]);
        assert_eq!(r.iter().filter(|x| x.is_real()).count(), 2);
    }

    #[test]
    fn irreducible_cubic_rejected() {
        let p = Polynomial::from_ints(&[-2, 0, 0, 1]);
        assert!(matches!(rational_roots_and_quadratics(&p), Err(Error::UnfactorablePolynomial(_))));
        let quartic = Polynomial::from_ints(&[-2, 0, 0, 0, 1]);
        assert!(matches!(rational_roots_and_quadratics(&quartic), Err(Error::UnfactorablePolynomial(_))));
    }

    #[test]
    fn irrational_coefficients_rejected() {
        let p = Polynomial::new(vec![Scalar::sqrt_of(2).unwrap(), Scalar::one()]);
        assert!(matches!(rational_roots_and_quadratics(&p), Err(Error::UnfactorablePolynomial(_))));
    }
}
