use nilaffine::affine::{aff_jordan, AffineAlgebra, AffineElement, LieMorphism};
use nilaffine::catalog::Catalog;
use nilaffine::exactla::expr::Bindings;
use nilaffine::exactla::{Matrix, Scalar};
use nilaffine::liealg::{derivation_space, is_derivation, nilradical, LieAlgebra};
use nilaffine::splitting::build_splitting;
use nilaffine::transitivity::{
    canonical_witness, check_simply_transitive, compute_u, witness_spectrum_checks, Verdict,
};
use proptest::prelude::*;

fn rational(lo: i64, hi: i64) -> impl Strategy<Value = Scalar> {
    (lo * 12..=hi * 12, prop::sample::select(vec![1i64, 2, 3, 4, 6, 12])).prop_map(|(p, q)| Scalar::from_frac(p, 12 * q))
}

fn bind(pairs: &[(&str, Scalar)]) -> Bindings {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn catalog() -> Catalog {
    Catalog::builtin().unwrap()
}

/// A parameterized family and a random binding, possibly out of its domain.
fn family_sample() -> impl Strategy<Value = (String, Bindings)> {
    let one = |name: &'static str| rational(-2, 3).prop_map(move |l| (name.to_string(), bind(&[("lambda", l)])));
    prop_oneof![
        one("r3,lambda"),
        one("r'3,lambda"),
        one("rr3,lambda"),
        one("rr'3,lambda"),
        one("r4,lambda"),
        one("d4,lambda"),
        one("d'4,lambda"),
        (rational(-1, 1), rational(-1, 1))
            .prop_map(|(m, l)| ("r4,mu,lambda".to_string(), bind(&[("mu", m), ("lambda", l)]))),
        (rational(0, 3), rational(-2, 2))
            .prop_map(|(g, d)| ("r'4,gamma,delta".to_string(), bind(&[("gamma", g), ("delta", d)]))),
    ]
}

fn in_domain(c: &Catalog, name: &str, p: &Bindings) -> Option<LieAlgebra> {
    c.get_algebra(name, p).ok()
}

/// Points on the conditional regions of stored witnesses.
fn witness_point() -> impl Strategy<Value = (&'static str, Bindings, &'static str)> {
    let mu = || rational(-1, 1);
    prop_oneof![
        mu().prop_map(|m| ("r4,mu,lambda", bind(&[("mu", m.clone()), ("lambda", m)]), "rh3")),
        mu().prop_map(|m| ("r4,mu,lambda", bind(&[("mu", m.clone()), ("lambda", -m)]), "rh3")),
        mu().prop_map(|m| ("r4,mu,lambda", bind(&[("mu", m), ("lambda", Scalar::one())]), "rh3")),
        mu().prop_map(|m| ("r4,mu,lambda", bind(&[("lambda", &Scalar::one() - &m), ("mu", m)]), "rh3")),
        mu().prop_map(|m| ("r4,mu,lambda", bind(&[("lambda", &Scalar::one() + &m), ("mu", m)]), "rh3")),
        mu().prop_map(|l| ("r4,mu,lambda", bind(&[("mu", Scalar::from_int(-1)), ("lambda", l)]), "rh3")),
        rational(0, 3).prop_map(|g| ("r'4,gamma,delta", bind(&[("gamma", g), ("delta", Scalar::zero())]), "rh3")),
        rational(0, 2).prop_map(|d| ("r'4,gamma,delta", bind(&[("gamma", &d + &d), ("delta", d)]), "rh3")),
        rational(-3, 3).prop_map(|l| ("r4,lambda", bind(&[("lambda", l)]), "rh3")),
        rational(0, 3).prop_map(|l| ("d4,lambda", bind(&[("lambda", l)]), "rh3")),
        rational(0, 3).prop_map(|l| ("d'4,lambda", bind(&[("lambda", l)]), "rh3")),
    ]
}

fn nilpotent_target() -> impl Strategy<Value = LieAlgebra> {
    let c = catalog();
    prop::sample::select(vec!["h3", "rh3", "n4"]).prop_map(move |h| c.target_algebra(h).unwrap().0)
}

fn affine_element(n: usize, ders: usize) -> impl Strategy<Value = (Vec<Scalar>, Vec<Scalar>)> {
    (prop::collection::vec(rational(-2, 2), n), prop::collection::vec(rational(-2, 2), ders))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivations_form_a_lie_algebra(h in nilpotent_target(), a in prop::collection::vec(-3i64..=3, 7), b in prop::collection::vec(-3i64..=3, 7)) {
        let basis = derivation_space(&h);
        let n = h.dim();
        let comb = |cs: &[i64]| basis.iter().zip(cs).fold(Matrix::zeros(n, n), |acc, (d, &c)| &acc + &d.scale(&Scalar::from_int(c)));
        let (x, y) = (comb(&a), comb(&b));
        prop_assert!(is_derivation(&h, &x));
        prop_assert!(is_derivation(&h, &x.commutator(&y)));
    }

    #[test]
    fn family_invariants((name, p) in family_sample()) {
        let c = catalog();
        let Some(g) = in_domain(&c, &name, &p) else { return Ok(()) };
        g.check_jacobi().unwrap();
        let nil = nilradical(&g).unwrap();
        prop_assert!(nil.is_ideal(&g));
        let sp = build_splitting(&g).unwrap();
        prop_assert_eq!(sp.nilshadow.dim(), g.dim());
        prop_assert_eq!(sp.torus_dim() + nil.dim(), g.dim());
        prop_assert_eq!(sp.nilshadow_class, Some(c.nilshadow_of(&name).unwrap()));
    }

    #[test]
    fn canonical_witness_is_simply_transitive((name, p) in family_sample()) {
        let c = catalog();
        let Some(g) = in_domain(&c, &name, &p) else { return Ok(()) };
        let sp = build_splitting(&g).unwrap();
        let (phi, gens) = canonical_witness(&sp).unwrap();
        prop_assert_eq!(check_simply_transitive(&phi).unwrap().verdict, Verdict::SimplyTransitive);
        let torus: Vec<usize> = (0..sp.torus_dim()).collect();
        for s in witness_spectrum_checks(&phi.target, &gens, &torus).unwrap() {
            prop_assert!(s.matches);
        }
    }

    #[test]
    fn stored_witnesses_on_their_regions((name, p, h) in witness_point()) {
        let c = catalog();
        if in_domain(&c, name, &p).is_none() {
            return Ok(());
        }
        let ws = c.matching_witnesses(name, &p, h).unwrap();
        prop_assert!(!ws.is_empty());
        for w in ws {
            let cw = c.build_witness(w, &p).unwrap();
            let r = check_simply_transitive(&cw.morphism).unwrap();
            prop_assert_eq!(r.verdict, Verdict::SimplyTransitive);
            for s in witness_spectrum_checks(&cw.morphism.target, &cw.generators, &cw.torus).unwrap() {
                prop_assert!(s.matches, "{} vs {}", s.derivation_charpoly, s.adjoint_charpoly);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dim_u_is_bounded_by_dim_g(h in nilpotent_target(), seed in affine_element(4, 7)) {
        let a = AffineAlgebra::new(h).unwrap();
        let n = a.h_dim();
        let ders = a.der_basis().len();
        let v: Vec<Scalar> = seed.0.into_iter().take(n).collect();
        let d = a.der_basis().iter().zip(seed.1.iter().cycle()).take(ders)
            .fold(Matrix::zeros(n, n), |acc, (m, c)| &acc + &m.scale(c));
        let x = AffineElement::new(v, d);
        prop_assume!(!x.is_zero());

        // a line
        let line = LieMorphism::new(LieAlgebra::abelian(1), a.clone(), vec![x.clone()]).unwrap();
        let hull = compute_u(&line).unwrap();
        prop_assert!(hull.u.dim() <= 1);

        // x together with its nilpotent part commutes
        let (_, xn) = aff_jordan(&a, &x).unwrap();
        let cx = a.coordinates(&x).unwrap();
        let cn = a.coordinates(&xn).unwrap();
        let independent = Matrix::from_columns(&[cx, cn], a.dim()).rank() == 2;
        prop_assume!(independent);
        let plane = LieMorphism::new(LieAlgebra::abelian(2), a, vec![x, xn]).unwrap();
        let hull = compute_u(&plane).unwrap();
        prop_assert!(hull.u.dim() <= 2);
    }
}
