//! Exact structural suites used by `verify`: metric, spin tensor and
//! involutions.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bicomplex::{int, Bicomplex};
use crate::error::Result;
use crate::lie::{run_checks, Check, Describer, VerificationReport};
use crate::matrix::BicMatrix;
use crate::tensors::{metric, spin_tensor, wedge};
use crate::tower::{expected_metric_diagonal, AlgebraLevel};

/// Metric table against the diagonal `(1, 1, 1, -1, 1, -1, ...)`.
pub fn verify_metric(level: &AlgebraLevel) -> Result<VerificationReport> {
    let started = Instant::now();
    let g = metric(level)?;
    let expected = expected_metric_diagonal(level.index());
    let n = level.n();
    let scalar = |v: Bicomplex| BicMatrix::scalar(1, v);
    let mut checks = Vec::with_capacity(n * n);
    for (mu, &diag) in expected.iter().enumerate() {
        for nu in 0..n {
            let want = if mu == nu { diag } else { 0 };
            checks.push(Check {
                relation: "g_mn = diag(1, 1, 1, -1, 1, -1, ...)",
                indices: vec![mu, nu],
                lhs: scalar(Bicomplex::real(g.get(mu, nu).clone())),
                rhs: scalar(Bicomplex::real(int(want))),
            });
        }
    }
    Ok(run_checks(
        &format!("metric(level {})", level.index()),
        &Describer::new(&AlgebraLevel::base()),
        checks,
        started,
    ))
}

/// Antisymmetry of the spin tensor and the split `a b̄ = g + σ`.
pub fn verify_spin(level: &AlgebraLevel) -> Result<VerificationReport> {
    let started = Instant::now();
    let g = metric(level)?;
    let sigma = spin_tensor(level);
    let basis = level.basis();
    let dim = level.dim();
    let n = level.n();
    let mut checks = Vec::new();
    for mu in 0..n {
        for nu in 0..n {
            checks.push(Check {
                relation: "s_mn = -s_nm",
                indices: vec![mu, nu],
                lhs: sigma.get(mu, nu).clone(),
                rhs: -sigma.get(nu, mu),
            });
            let product = &basis[mu] * &basis[nu].bar();
            let split = &BicMatrix::scalar(dim, Bicomplex::real(g.get(mu, nu).clone()))
                + &wedge(&basis[mu], &basis[nu])?;
            checks.push(Check {
                relation: "e_m bar(e_n) = g_mn + s_mn",
                indices: vec![mu, nu],
                lhs: product,
                rhs: split,
            });
        }
    }
    Ok(run_checks(
        &format!("spin(level {})", level.index()),
        &Describer::new(level),
        checks,
        started,
    ))
}

fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> BicMatrix {
    let rows = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    Bicomplex::from_ints(
                        rng.random_range(-3..=3),
                        rng.random_range(-3..=3),
                        rng.random_range(-3..=3),
                        rng.random_range(-3..=3),
                    )
                })
                .collect()
        })
        .collect();
    BicMatrix::from_rows(rows).expect("square by construction")
}

/// Generator actions `bar e = -e`, `dagger e = e`, `hat e = -e` at levels
/// `0..=level`, plus the (anti-)automorphism laws on seeded random matrices.
pub fn verify_involutions(
    level: &AlgebraLevel,
    seed: u64,
    samples: usize,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut checks = Vec::new();
    let mut current = AlgebraLevel::base();
    loop {
        for (k, e) in current.generators().iter().enumerate() {
            let idx = vec![current.index(), k + 1];
            checks.push(Check {
                relation: "bar(e_k) = -e_k",
                indices: idx.clone(),
                lhs: e.bar(),
                rhs: -e,
            });
            checks.push(Check {
                relation: "dagger(e_k) = e_k",
                indices: idx.clone(),
                lhs: e.dagger(),
                rhs: e.clone(),
            });
            checks.push(Check {
                relation: "hat(e_k) = -e_k",
                indices: idx,
                lhs: e.hat(),
                rhs: -e,
            });
        }
        if current.index() >= level.index() {
            break;
        }
        current = current.compactify();
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = level.dim();
    for s in 0..samples {
        let a = random_matrix(&mut rng, dim);
        let b = random_matrix(&mut rng, dim);
        let ab = &a * &b;
        let idx = vec![s];
        checks.push(Check {
            relation: "bar(AB) = bar(B) bar(A)",
            indices: idx.clone(),
            lhs: ab.bar(),
            rhs: &b.bar() * &a.bar(),
        });
        checks.push(Check {
            relation: "dagger(AB) = dagger(B) dagger(A)",
            indices: idx.clone(),
            lhs: ab.dagger(),
            rhs: &b.dagger() * &a.dagger(),
        });
        checks.push(Check {
            relation: "hat(AB) = hat(A) hat(B)",
            indices: idx.clone(),
            lhs: ab.hat(),
            rhs: &a.hat() * &b.hat(),
        });
        checks.push(Check {
            relation: "hat(A) = bar(dagger(A))",
            indices: idx,
            lhs: a.hat(),
            rhs: a.dagger().bar(),
        });
    }
    Ok(run_checks(
        &format!("involutions(levels 0..={})", level.index()),
        &Describer::new(level),
        checks,
        started,
    ))
}
