use confnum::moebius::{
    moebius_apply, pv_norm_f, reversion_defect, rotate, rotor, RotationParams, RotorBuilder,
    VahlenMatrix,
};
use confnum::{AlgebraLevel, BicMatrixF, ParavectorF};
use proptest::prelude::*;

fn point(n: usize, scale: f64) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-scale..=scale, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotors_preserve_the_norm(level in 0usize..=2, seed in any::<u64>(), x in point(6, 3.0)) {
        use rand::SeedableRng;
        let level = AlgebraLevel::at(level);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let params = RotationParams::random(&level, &mut rng, 1.0);
        let x = ParavectorF::new(x[..level.n()].to_vec());
        let r = RotorBuilder::new(&level).rotor(&params).unwrap();
        let y = rotate(&level, &r, &x, 1e-9).unwrap();
        prop_assert!((pv_norm_f(&level, &y).unwrap() - pv_norm_f(&level, &x).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn translations_add(b in point(4, 5.0), c in point(4, 5.0), x in point(4, 5.0)) {
        let level = AlgebraLevel::at(1);
        let (b, c, x) = (ParavectorF::new(b), ParavectorF::new(c), ParavectorF::new(x));
        let t = VahlenMatrix::translation(&level, &b).unwrap().compose(&VahlenMatrix::translation(&level, &c).unwrap()).unwrap();
        let y = moebius_apply(&level, &t, &x, 1e-9).unwrap();
        let want = ParavectorF::new((0..4).map(|k| x.coeffs[k] + b.coeffs[k] + c.coeffs[k]).collect());
        prop_assert!(y.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn inversion_is_an_involution(x in point(4, 2.0)) {
        let level = AlgebraLevel::at(1);
        let x = ParavectorF::new(x);
        prop_assume!(pv_norm_f(&level, &x).unwrap().abs() > 0.1);
        let inv = VahlenMatrix::inversion(&level);
        let back = moebius_apply(&level, &inv, &moebius_apply(&level, &inv, &x, 1e-9).unwrap(), 1e-9).unwrap();
        prop_assert!(back.max_abs_diff(&x) < 1e-9);
    }
}

/// Products of rotors in different planes, tested for the reversion identity
/// that single-plane rotors satisfy.
#[test]
fn composite_rotor_reversion() {
    for l in 0..=1 {
        let level = AlgebraLevel::at(l);
        let mut worst = 0.0f64;
        let n = level.n();
        for mu in 0..n {
            for nu in (mu + 1)..n {
                for rho in 0..n {
                    for sigma in (rho + 1)..n {
                        let a = rotor(&level, &RotationParams::plane(&level, mu, nu, 0.4).unwrap())
                            .unwrap();
                        let b = rotor(
                            &level,
                            &RotationParams::plane(&level, rho, sigma, -0.9).unwrap(),
                        )
                        .unwrap();
                        worst = worst.max(reversion_defect(&a.checked_mul(&b).unwrap()).unwrap());
                    }
                }
            }
        }
        assert!(worst < 1e-9, "level {l}: {worst}");
    }
}

#[test]
fn identity_rotor_fixes_points() {
    let level = AlgebraLevel::at(2);
    let r = rotor(&level, &RotationParams::zero(&level)).unwrap();
    assert_eq!(r, BicMatrixF::identity(4));
    let x = ParavectorF::new(vec![1.0, -2.0, 0.5, 3.0, 0.0, 1.5]);
    assert!(rotate(&level, &r, &x, 1e-9).unwrap().max_abs_diff(&x) < 1e-15);
}
