use nilaffine::exactla::{Matrix, Polynomial, Scalar};
use nilaffine::jordan::{is_nilpotent, is_semisimple, jordan_chevalley};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-10i64..=10, 1i64..=10).prop_map(|(p, q)| Scalar::from_frac(p, q))
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(rational(), n * n).prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
    })
}

/// `P J P⁻¹` with `J` a block matrix of small Jordan blocks with repeated
/// eigenvalues and `P` unipotent, so the nilpotent part is usually nonzero.
fn structured(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| {
        (
            prop::collection::vec(-2i64..=2, n),
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(-3i64..=3, n * n),
            prop::collection::vec(-3i64..=3, n * n),
        )
            .prop_map(move |(eig, chain, up, low)| {
                let mut j = Matrix::zeros(n, n);
                for i in 0..n {
                    // repeat the previous eigenvalue along a chain
                    let e = if i > 0 && chain[i] { j[(i - 1, i - 1)].clone() } else { Scalar::from_int(eig[i]) };
                    j[(i, i)] = e;
                    if i > 0 && chain[i] {
                        j[(i - 1, i)] = Scalar::one();
                    }
                }
                let u = Matrix::from_fn(n, n, |a, b| match a.cmp(&b) {
                    std::cmp::Ordering::Less => Scalar::from_int(up[a * n + b]),
                    std::cmp::Ordering::Equal => Scalar::one(),
                    _ => Scalar::zero(),
                });
                let l = Matrix::from_fn(n, n, |a, b| match a.cmp(&b) {
                    std::cmp::Ordering::Greater => Scalar::from_int(low[a * n + b]),
                    std::cmp::Ordering::Equal => Scalar::one(),
                    _ => Scalar::zero(),
                });
                let p = &u * &l;
                &(&p * &j) * &p.inverse().unwrap()
            })
    })
}

fn check(a: &Matrix) {
    let n = a.rows();
    let jc = jordan_chevalley(a).unwrap();
    assert_eq!(&jc.s + &jc.n, *a);
    assert!(jc.s.commutator(&jc.n).is_zero());
    assert!(jc.n.pow(n as u32).is_zero());
    // the minimal polynomial of s divides a square-free polynomial
    let sf = jc.s.charpoly().unwrap().squarefree_part().unwrap();
    assert!(sf.eval_matrix(&jc.s).is_zero());
    assert_eq!(sf.gcd(&sf.derivative()), Polynomial::one());
    assert!(is_semisimple(&jc.s).unwrap());
    assert!(is_nilpotent(&jc.n).unwrap());
    // s is a polynomial in a: it commutes with a and has the same spectrum
    assert!(jc.s.commutator(a).is_zero());
    assert_eq!(jc.s.charpoly().unwrap(), a.charpoly().unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn random_rational_matrices(a in matrix(6)) {
        check(&a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn matrices_with_repeated_eigenvalues(a in structured(6)) {
        check(&a);
    }

    #[test]
    fn idempotent_on_parts(a in structured(5)) {
        let jc = jordan_chevalley(&a).unwrap();
        let js = jordan_chevalley(&jc.s).unwrap();
        prop_assert_eq!(js.s, jc.s.clone());
        prop_assert!(js.n.is_zero());
        let jn = jordan_chevalley(&jc.n).unwrap();
        prop_assert!(jn.s.is_zero());
    }
}

#[test]
fn single_jordan_block_plus_rotation() {
    // rotation block is semisimple over Q though not diagonalisable
    let a = Matrix::from_ints(&[&[0, -1, 1, 0], &[1, 0, 0, 1], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
    let jc = jordan_chevalley(&a).unwrap();
    assert_eq!(jc.s, Matrix::from_ints(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]));
    assert_eq!(jc.n, Matrix::from_ints(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, 0, 0], &[0, 0, 0, 0]]));
}
