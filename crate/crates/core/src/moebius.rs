//! Rotors and fractional-linear maps acting on paravectors.
//!
//! Everything here runs on the double-precision mirror. A rotor is
//! `r = exp(Σ_{μ<ν} ω^{μν} s_{μν})` and acts by `x ↦ r x r†`; a Vahlen matrix
//! `[[a, b], [c, d]]` acts by `x ↦ (a x + b)(c x + d)^{-1}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::BicMatrixF;
use crate::tensors::{metric, spin_ops};
use crate::tower::{AlgebraLevel, ParavectorF};

/// Relative LU pivot threshold below which a denominator counts as singular.
pub const PIVOT_TOLERANCE: f64 = 1e-12;

/// Antisymmetric table of rotation parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationParams {
    level: usize,
    omega: Vec<Vec<f64>>,
}

impl RotationParams {
    pub fn new(level: &AlgebraLevel, omega: Vec<Vec<f64>>) -> Result<Self> {
        let n = level.n();
        if omega.len() != n || omega.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument(format!("omega must be {n}x{n}")));
        }
        for (mu, row) in omega.iter().enumerate() {
            for (nu, &a) in row.iter().enumerate() {
                let b = omega[nu][mu];
                if !a.is_finite() {
                    return Err(Error::NonFinite("rotation parameter"));
                }
                if a != -b {
                    return Err(Error::InvalidArgument(format!(
                        "omega is not antisymmetric at ({mu}, {nu})"
                    )));
                }
            }
        }
        Ok(Self {
            level: level.index(),
            omega,
        })
    }

    pub fn zero(level: &AlgebraLevel) -> Self {
        let n = level.n();
        Self {
            level: level.index(),
            omega: vec![vec![0.0; n]; n],
        }
    }

    /// Single plane `(mu, nu)` with parameter `theta`.
    pub fn plane(level: &AlgebraLevel, mu: usize, nu: usize, theta: f64) -> Result<Self> {
        let n = level.n();
        if mu >= n || nu >= n || mu == nu {
            return Err(Error::InvalidArgument(format!(
                "invalid plane ({mu}, {nu})"
            )));
        }
        let mut p = Self::zero(level);
        p.omega[mu][nu] = theta;
        p.omega[nu][mu] = -theta;
        Self::new(level, p.omega)
    }

    /// Upper-triangle entries drawn uniformly from `[-scale, scale]`.
    pub fn random(level: &AlgebraLevel, rng: &mut impl Rng, scale: f64) -> Self {
        let n = level.n();
        let mut p = Self::zero(level);
        for mu in 0..n {
            for nu in (mu + 1)..n {
                let w = rng.random_range(-scale..=scale);
                p.omega[mu][nu] = w;
                p.omega[nu][mu] = -w;
            }
        }
        p
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn omega(&self) -> &[Vec<f64>] {
        &self.omega
    }

    pub fn negated(&self) -> Self {
        Self {
            level: self.level,
            omega: self
                .omega
                .iter()
                .map(|row| row.iter().map(|w| -w).collect())
                .collect(),
        }
    }
}

/// Caches the float spin operators of one level.
#[derive(Clone, Debug)]
pub struct RotorBuilder {
    level: AlgebraLevel,
    spins: Vec<Vec<BicMatrixF>>,
}

impl RotorBuilder {
    pub fn new(level: &AlgebraLevel) -> Self {
        let s = spin_ops(level);
        let spins = s
            .entries
            .iter()
            .map(|row| row.iter().map(|m| m.to_f64()).collect())
            .collect();
        Self {
            level: level.clone(),
            spins,
        }
    }

    pub fn level(&self) -> &AlgebraLevel {
        &self.level
    }

    /// `Σ_{μ<ν} ω^{μν} s_{μν}`.
    pub fn generator(&self, params: &RotationParams) -> Result<BicMatrixF> {
        if params.level != self.level.index() {
            return Err(Error::InvalidArgument(format!(
                "parameters for level {} used at level {}",
                params.level,
                self.level.index()
            )));
        }
        let n = self.level.n();
        let mut acc = BicMatrixF::zeros(self.level.dim());
        for mu in 0..n {
            for nu in (mu + 1)..n {
                let w = params.omega[mu][nu];
                if w != 0.0 {
                    acc = acc.checked_add(&self.spins[mu][nu].scale_real(w))?;
                }
            }
        }
        Ok(acc)
    }

    pub fn rotor(&self, params: &RotationParams) -> Result<BicMatrixF> {
        self.generator(params)?.exp()
    }
}

/// One-shot rotor; prefer [`RotorBuilder`] for batches.
pub fn rotor(level: &AlgebraLevel, params: &RotationParams) -> Result<BicMatrixF> {
    RotorBuilder::new(level).rotor(params)
}

fn project(level: &AlgebraLevel, m: &BicMatrixF, tol: f64) -> Result<ParavectorF> {
    let (coeffs, residual) = level.project_f(m)?;
    if !residual.is_finite() || coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite("projected paravector"));
    }
    if residual > tol {
        return Err(Error::NotParavector { residual });
    }
    Ok(ParavectorF::new(coeffs))
}

/// `r x r†`, projected back to paravector coefficients.
pub fn rotate(
    level: &AlgebraLevel,
    r: &BicMatrixF,
    x: &ParavectorF,
    tol: f64,
) -> Result<ParavectorF> {
    let m = level.embed_f(&x.coeffs)?;
    let image = r.checked_mul(&m)?.checked_mul(&r.dagger())?;
    project(level, &image, tol)
}

/// `g_{μν} x^μ x^ν` in floating point.
pub fn pv_norm_f(level: &AlgebraLevel, x: &ParavectorF) -> Result<f64> {
    if x.n() != level.n() {
        return Err(Error::DimensionMismatch {
            left: level.n(),
            right: x.n(),
        });
    }
    let g = metric(level)?.to_f64();
    Ok((0..x.n())
        .map(|mu| g[mu][mu] * x.coeffs[mu] * x.coeffs[mu])
        .sum())
}

/// `max |dagger(r) - hat(r)^{-1}|`, or `None` when `hat(r)` is singular.
pub fn reversion_defect(r: &BicMatrixF) -> Option<f64> {
    let inv = r.hat().try_inverse(PIVOT_TOLERANCE)?;
    Some(r.dagger().max_abs_diff(&inv))
}

/// `[[a, b], [c, d]]` with algebra-valued blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct VahlenMatrix {
    pub a: BicMatrixF,
    pub b: BicMatrixF,
    pub c: BicMatrixF,
    pub d: BicMatrixF,
}

impl VahlenMatrix {
    pub fn identity(level: &AlgebraLevel) -> Self {
        let (one, zero) = (
            BicMatrixF::identity(level.dim()),
            BicMatrixF::zeros(level.dim()),
        );
        Self {
            a: one.clone(),
            b: zero.clone(),
            c: zero,
            d: one,
        }
    }

    /// `x ↦ x + b`.
    pub fn translation(level: &AlgebraLevel, b: &ParavectorF) -> Result<Self> {
        Ok(Self {
            b: level.embed_f(&b.coeffs)?,
            ..Self::identity(level)
        })
    }

    /// `x ↦ λ x` for `λ > 0`.
    pub fn dilation(level: &AlgebraLevel, lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "dilation factor {lambda} must be positive"
            )));
        }
        let id = Self::identity(level);
        Ok(Self {
            a: id.a.scale_real(lambda),
            ..id
        })
    }

    /// `x ↦ x^{-1}`.
    pub fn inversion(level: &AlgebraLevel) -> Self {
        let id = Self::identity(level);
        Self {
            a: id.b.clone(),
            b: id.a.clone(),
            c: id.d.clone(),
            d: id.c,
        }
    }

    /// `x ↦ x (c x + 1)^{-1}`.
    pub fn special(level: &AlgebraLevel, c: &ParavectorF) -> Result<Self> {
        Ok(Self {
            c: level.embed_f(&c.coeffs)?,
            ..Self::identity(level)
        })
    }

    /// Block product `self · other`; applying it equals applying `other`
    /// first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let mm = |x: &BicMatrixF,
                  y: &BicMatrixF,
                  z: &BicMatrixF,
                  w: &BicMatrixF|
         -> Result<BicMatrixF> {
            x.checked_mul(y)?.checked_add(&z.checked_mul(w)?)
        };
        Ok(Self {
            a: mm(&self.a, &other.a, &self.b, &other.c)?,
            b: mm(&self.a, &other.b, &self.b, &other.d)?,
            c: mm(&self.c, &other.a, &self.d, &other.c)?,
            d: mm(&self.c, &other.b, &self.d, &other.d)?,
        })
    }
}

/// `(a x + b)(c x + d)^{-1}` projected back to paravector coefficients.
pub fn moebius_apply(
    level: &AlgebraLevel,
    v: &VahlenMatrix,
    x: &ParavectorF,
    tol: f64,
) -> Result<ParavectorF> {
    let m = level.embed_f(&x.coeffs)?;
    let num = v.a.checked_mul(&m)?.checked_add(&v.b)?;
    let den = v.c.checked_mul(&m)?.checked_add(&v.d)?;
    let inv = den
        .try_inverse(PIVOT_TOLERANCE)
        .ok_or(Error::MapsToInfinity)?;
    project(level, &num.checked_mul(&inv)?, tol)
}

/// Summary of the seeded sample checks behind `demo moebius`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransformReport {
    pub level: usize,
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub rotor_norm_error: f64,
    pub composition_error: f64,
    pub involution_error: f64,
    pub translation_error: f64,
    pub null_maps_to_infinity: bool,
    pub passed: bool,
}

fn random_point(level: &AlgebraLevel, rng: &mut impl Rng, scale: f64) -> ParavectorF {
    ParavectorF::new(
        (0..level.n())
            .map(|_| rng.random_range(-scale..=scale))
            .collect(),
    )
}

/// Draws points away from the null cone of `x` and of `x + shift`.
fn admissible_point(
    level: &AlgebraLevel,
    rng: &mut impl Rng,
    shift: &ParavectorF,
) -> Result<ParavectorF> {
    loop {
        let x = random_point(level, rng, 2.0);
        let shifted = ParavectorF::new(
            x.coeffs
                .iter()
                .zip(&shift.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        );
        if pv_norm_f(level, &x)?.abs() > 0.25 && pv_norm_f(level, &shifted)?.abs() > 0.25 {
            return Ok(x);
        }
    }
}

/// A null paravector: `1 + e_{n-1}` when the metric is indefinite, the
/// origin on the Euclidean base level.
pub fn null_sample(level: &AlgebraLevel) -> ParavectorF {
    let mut x = vec![0.0; level.n()];
    if level.index() > 0 {
        x[0] = 1.0;
        x[level.n() - 1] = 1.0;
    }
    ParavectorF::new(x)
}

/// Rotor norm preservation, Vahlen composition, inversion involution,
/// translation additivity and the null-vector failure on seeded samples.
pub fn transform_checks(
    level: &AlgebraLevel,
    seed: u64,
    samples: usize,
    tol: f64,
) -> Result<TransformReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let builder = RotorBuilder::new(level);
    let mut rotor_err = 0.0f64;
    let mut comp_err = 0.0f64;
    let mut inv_err = 0.0f64;
    let mut trans_err = 0.0f64;
    let inversion = VahlenMatrix::inversion(level);

    for _ in 0..samples {
        let params = RotationParams::random(level, &mut rng, 1.0);
        let x = random_point(level, &mut rng, 2.0);
        let r = builder.rotor(&params)?;
        let y = rotate(level, &r, &x, tol)?;
        rotor_err = rotor_err.max((pv_norm_f(level, &y)? - pv_norm_f(level, &x)?).abs());

        let b = random_point(level, &mut rng, 1.0);
        let x = admissible_point(level, &mut rng, &b)?;
        let dil = VahlenMatrix::dilation(level, rng.random_range(0.5..=2.0))?;
        let v1 = dil.compose(&VahlenMatrix::translation(level, &b)?)?;
        let v2 = VahlenMatrix::translation(level, &b)?.compose(&inversion)?;
        // v2 maps x to x^{-1} + b; v1 maps y to λ(y + b)
        let direct = moebius_apply(level, &v1, &moebius_apply(level, &v2, &x, tol)?, tol)?;
        let composed = moebius_apply(level, &v1.compose(&v2)?, &x, tol)?;
        comp_err = comp_err.max(direct.max_abs_diff(&composed));

        let back = moebius_apply(
            level,
            &inversion,
            &moebius_apply(level, &inversion, &x, tol)?,
            tol,
        )?;
        inv_err = inv_err.max(back.max_abs_diff(&x));

        let t1 = VahlenMatrix::translation(level, &b)?;
        let t2 = VahlenMatrix::translation(level, &x)?;
        let sum = ParavectorF::new(b.coeffs.iter().zip(&x.coeffs).map(|(p, q)| p + q).collect());
        let origin = ParavectorF::new(vec![0.0; level.n()]);
        let via = moebius_apply(level, &t1.compose(&t2)?, &origin, tol)?;
        trans_err = trans_err.max(via.max_abs_diff(&sum));
    }

    let null_maps_to_infinity = matches!(
        moebius_apply(level, &inversion, &null_sample(level), tol),
        Err(Error::MapsToInfinity)
    );

    let passed = rotor_err <= tol
        && comp_err <= tol
        && inv_err <= tol
        && trans_err <= 1e-12
        && null_maps_to_infinity;
    Ok(TransformReport {
        level: level.index(),
        seed,
        samples,
        tolerance: tol,
        rotor_norm_error: rotor_err,
        composition_error: comp_err,
        involution_error: inv_err,
        translation_error: trans_err,
        null_maps_to_infinity,
        passed,
    })
}
