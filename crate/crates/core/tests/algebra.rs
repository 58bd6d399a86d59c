use confnum::lie::{lorentz_rhs, verify_lorentz, Span};
use confnum::tensors::decompose;
use confnum::{int, metric, spin_ops, AlgebraLevel, BicMatrix, Error, Paravector, Vocabulary};
use num_traits::Zero;
use proptest::prelude::*;

fn commutator(a: &BicMatrix, b: &BicMatrix) -> BicMatrix {
    a.commutator(b).unwrap()
}

#[test]
fn lorentz_level3_sweep() {
    let r = verify_lorentz(&AlgebraLevel::at(3)).unwrap();
    assert_eq!(r.checks, 4096);
    assert!(r.passed());
}

#[test]
fn rotation_bracket_sign() {
    let level = AlgebraLevel::at(1);
    let s = spin_ops(&level);
    // the spatial metric is +1, so [s_12, s_23] = g_22 s_13 = s_13
    assert_eq!(commutator(s.get(1, 2), s.get(2, 3)), s.get(1, 3).clone());
    assert_ne!(commutator(s.get(1, 2), s.get(2, 3)), -s.get(1, 3));
}

/// The form with `+g_νσ s_μρ - g_νρ s_μσ` is symmetric under μ ↔ ν while
/// the commutator is antisymmetric, so only the antisymmetrized form can
/// hold.
#[test]
fn symmetric_sign_pattern_cannot_hold() {
    let level = AlgebraLevel::at(1);
    let g = metric(&level).unwrap();
    let s = spin_ops(&level);
    let symmetric_rhs = |mu: usize, nu: usize, rho: usize, sigma: usize| {
        let t = |a: usize, b: usize, m: &BicMatrix| m.scale_rational(g.get(a, b));
        &(&(&t(mu, sigma, s.get(nu, rho)) - &t(mu, rho, s.get(nu, sigma)))
            + &t(nu, sigma, s.get(mu, rho)))
            - &t(nu, rho, s.get(mu, sigma))
    };
    let mut mismatches = 0;
    for q in 0..256 {
        let (mu, nu, rho, sigma) = (q / 64, (q / 16) % 4, (q / 4) % 4, q % 4);
        assert_eq!(
            symmetric_rhs(mu, nu, rho, sigma),
            symmetric_rhs(nu, mu, rho, sigma)
        );
        let lhs = commutator(s.get(mu, nu), s.get(rho, sigma));
        assert_eq!(lhs, lorentz_rhs(&g, &s, mu, nu, rho, sigma));
        if lhs != symmetric_rhs(mu, nu, rho, sigma) {
            mismatches += 1;
        }
    }
    assert!(mismatches > 0);
}

#[test]
fn embed_and_norm_examples() {
    let l1 = AlgebraLevel::at(1);
    assert_eq!(
        &l1.embed(&Paravector::from_ints(&[0, 0, 0, 1])).unwrap(),
        l1.generator(3)
    );
    assert!(l1.embed(&Paravector::zero(4)).unwrap().is_zero());
    assert_eq!(
        l1.pv_norm(&Paravector::from_ints(&[1, 0, 0, 0])).unwrap(),
        int(1)
    );
    assert_eq!(
        l1.pv_norm(&Paravector::from_ints(&[0, 0, 0, 1])).unwrap(),
        int(-1)
    );
    assert!(l1
        .pv_norm(&Paravector::from_ints(&[1, 0, 0, 1]))
        .unwrap()
        .is_zero());
    assert_eq!(
        l1.pv_inverse(&Paravector::from_ints(&[0, 0, 0, 1]))
            .unwrap(),
        Paravector::from_ints(&[0, 0, 0, 1])
    );
    assert!(matches!(
        l1.pv_inverse(&Paravector::from_ints(&[1, 0, 0, 1])),
        Err(Error::NullVector)
    ));
    assert!(matches!(
        l1.embed(&Paravector::from_ints(&[1, 0])),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn decompositions() {
    let l2 = AlgebraLevel::at(2);
    let sigma = confnum::spin_tensor(&l2);
    assert_eq!(
        decompose(sigma.get(0, 4), &l2, Vocabulary::Lifted, 4)
            .unwrap()
            .to_string(),
        "-iȷ"
    );
    assert_eq!(
        decompose(&BicMatrix::identity(4), &l2, Vocabulary::Lifted, 4)
            .unwrap()
            .to_string(),
        "1"
    );
    let not_monomial = &BicMatrix::identity(4) + l2.generator(1);
    assert!(matches!(
        decompose(&not_monomial, &l2, Vocabulary::Lifted, 4),
        Err(Error::NoMatch { cap: 4 })
    ));
}

#[test]
fn conformal_split_spans() {
    let (g, h) = confnum::lie::homogeneous_split(&AlgebraLevel::at(1)).unwrap();
    let mut span = Span::new();
    for op in &h {
        span.insert(&op.matrix);
    }
    let q: Vec<_> = h.iter().filter(|op| op.name.starts_with('q')).collect();
    assert!(span.contains(&commutator(&q[0].matrix, &q[1].matrix)));
    assert!(commutator(&q[0].matrix, &q[1].matrix).is_zero());
    // momenta leave h
    let p0 = g.iter().find(|op| op.name == "p_0").unwrap();
    assert!(!span.contains(&p0.matrix));
    let mut full = Span::new();
    for op in &g {
        assert!(full.insert(&op.matrix), "{} is dependent", op.name);
    }
    assert_eq!(full.rank(), 15);
}

fn small_paravector(n: usize) -> impl Strategy<Value = Paravector> {
    proptest::collection::vec(-4i64..=4, n).prop_map(|c| Paravector::from_ints(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_is_an_involution(x in small_paravector(4)) {
        let l1 = AlgebraLevel::at(1);
        match l1.pv_inverse(&x) {
            Ok(inv) => {
                prop_assert_eq!(l1.pv_inverse(&inv).unwrap(), x.clone());
                prop_assert_eq!(&l1.embed(&inv).unwrap() * &l1.embed(&x).unwrap(), BicMatrix::identity(2));
            }
            Err(e) => {
                prop_assert_eq!(e, Error::NullVector);
                prop_assert!(l1.pv_norm(&x).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn conjugation_flips_vector_part(x in small_paravector(6)) {
        let l2 = AlgebraLevel::at(2);
        let m = l2.embed(&x).unwrap();
        prop_assert_eq!(m.bar(), l2.embed(&x.conjugate()).unwrap());
        prop_assert_eq!(l2.coefficients(&m), Some(x.clone()));
    }

    #[test]
    fn norm_matches_metric(x in small_paravector(6)) {
        let l2 = AlgebraLevel::at(2);
        let g = metric(&l2).unwrap();
        let quadratic = (0..6).fold(int(0), |acc, mu| acc + g.get(mu, mu) * &x.coeffs[mu] * &x.coeffs[mu]);
        prop_assert_eq!(l2.pv_norm(&x).unwrap(), quadratic);
    }
}
