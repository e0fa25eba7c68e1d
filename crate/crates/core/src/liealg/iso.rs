use super::algebra::LieAlgebra;
use crate::exactla::Scalar;

/// A basis map `e_i ↦ ±f_{π(i)}` that is an isomorphism `a → b`, if one exists.
/// Entry `i` of the result is `(π(i), sign)`.
pub fn signed_permutation_isomorphism(a: &LieAlgebra, b: &LieAlgebra) -> Option<Vec<(usize, i8)>> {
    if a.dim() != b.dim() {
        return None;
    }
    let mut map = Vec::with_capacity(a.dim());
    let mut used = vec![false; a.dim()];
    search(a, b, &mut map, &mut used).then_some(map)
}

fn search(a: &LieAlgebra, b: &LieAlgebra, map: &mut Vec<(usize, i8)>, used: &mut [bool]) -> bool {
    let i = map.len();
    if i == a.dim() {
        return true;
    }
    for j in 0..a.dim() {
        if used[j] {
            continue;
        }
        for s in [1i8, -1] {
            map.push((j, s));
            used[j] = true;
            if consistent(a, b, map) && search(a, b, map, used) {
                return true;
            }
            used[j] = false;
            map.pop();
        }
    }
    false
}

/// Checks the pairs involving the newest assignment whose bracket in `a` only
/// involves assigned basis vectors; the rest once the map is complete.
fn consistent(a: &LieAlgebra, b: &LieAlgebra, map: &[(usize, i8)]) -> bool {
    let k = map.len();
    if k == a.dim() {
        return (0..k).all(|p| (p + 1..k).all(|q| pair_ok(a, b, map, p, q)));
    }
    (0..k - 1).all(|p| a.structure(p, k - 1)[k..].iter().any(|x| !x.is_zero()) || pair_ok(a, b, map, p, k - 1))
}

fn pair_ok(a: &LieAlgebra, b: &LieAlgebra, map: &[(usize, i8)], p: usize, q: usize) -> bool {
    let sign = |s: i8| Scalar::from_int(s as i64);
    let mut lhs = vec![Scalar::zero(); b.dim()];
    for (r, x) in a.structure(p, q).iter().enumerate() {
        if !x.is_zero() {
            lhs[map[r].0] = &sign(map[r].1) * x;
        }
    }
    let st = sign(map[p].1 * map[q].1);
    let rhs: Vec<Scalar> = b.structure(map[p].0, map[q].0).iter().map(|x| &st * x).collect();
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::default_names;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn heisenberg_relabelled() {
        let a = LieAlgebra::new(default_names(3), &[(0, 1, vec![(2, s(1))])]).unwrap();
        let b = LieAlgebra::new(default_names(3), &[(2, 0, vec![(1, s(1))])]).unwrap();
        let m = signed_permutation_isomorphism(&a, &b).unwrap();
        assert_eq!(m.len(), 3);
        assert!(signed_permutation_isomorphism(&a, &LieAlgebra::abelian(3)).is_none());
    }

    #[test]
    fn sign_needed() {
        // [e1, e2] = e2 against [f1, f2] = -f2 needs e1 ↦ -f1
        let a = LieAlgebra::new(default_names(2), &[(0, 1, vec![(1, s(1))])]).unwrap();
        let b = LieAlgebra::new(default_names(2), &[(0, 1, vec![(1, s(-1))])]).unwrap();
        assert_eq!(signed_permutation_isomorphism(&a, &b).unwrap()[0], (0, -1));
    }
}
