//! Numeric demonstrations: harmonicity of planar fields under Möbius
//! pullback, and the mass-ratio identity.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;

use nalgebra::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// CODATA 2018 recommended proton-to-electron mass ratio.
pub const PROTON_ELECTRON_MASS_RATIO: f64 = 1836.15267343;

/// Uniform grid with origin `(x0, y0)` and spacing `h`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
    pub x0: f64,
    pub y0: f64,
}

impl GridSpec {
    pub fn new(nx: usize, ny: usize, h: f64, x0: f64, y0: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "grid spacing {h} must be positive"
            )));
        }
        if !(x0.is_finite() && y0.is_finite()) {
            return Err(Error::NonFinite("grid origin"));
        }
        Ok(Self { nx, ny, h, x0, y0 })
    }

    /// Square `[x0, x0 + side] × [y0, y0 + side]`.
    pub fn square(x0: f64, y0: f64, side: f64, h: f64) -> Result<Self> {
        let n = (side / h).round();
        if !(n.is_finite() && n >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "side {side} with spacing {h}"
            )));
        }
        Self::new(n as usize + 1, n as usize + 1, h, x0, y0)
    }

    pub fn point(&self, ix: usize, iy: usize) -> (f64, f64) {
        (self.x0 + ix as f64 * self.h, self.y0 + iy as f64 * self.h)
    }

    fn x_max(&self) -> f64 {
        self.x0 + (self.nx.saturating_sub(1)) as f64 * self.h
    }

    fn y_max(&self) -> f64 {
        self.y0 + (self.ny.saturating_sub(1)) as f64 * self.h
    }
}

/// Row-major samples; `None` marks an absent value.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    pub spec: GridSpec,
    pub values: Vec<Option<f64>>,
}

impl GridField {
    pub fn sample(spec: GridSpec, f: impl Fn(f64, f64) -> f64 + Sync) -> Self {
        let values = (0..spec.ny)
            .into_par_iter()
            .flat_map_iter(|iy| {
                let f = &f;
                (0..spec.nx).map(move |ix| {
                    let (x, y) = spec.point(ix, iy);
                    Some(f(x, y))
                })
            })
            .collect();
        Self { spec, values }
    }

    pub fn get(&self, ix: usize, iy: usize) -> Option<f64> {
        self.values[iy * self.spec.nx + ix]
    }

    /// Largest magnitude over present values.
    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Header `nx,ny,h`, then one line per grid row; absent values are empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let s = &self.spec;
        let _ = writeln!(out, "nx,ny,h");
        let _ = writeln!(out, "{},{},{}", s.nx, s.ny, s.h);
        for row in self.values.chunks(s.nx.max(1)) {
            let cells: Vec<String> = row
                .iter()
                .map(|v| v.map(|x| x.to_string()).unwrap_or_default())
                .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// Five-point Laplacian; the boundary ring and any stencil touching an
/// absent value come out absent.
pub fn fd_laplacian(f: &GridField) -> Result<GridField> {
    let s = f.spec;
    if s.nx < 5 || s.ny < 5 {
        return Err(Error::GridTooSmall { nx: s.nx, ny: s.ny });
    }
    let h2 = s.h * s.h;
    let values = (0..s.ny)
        .into_par_iter()
        .flat_map_iter(|iy| {
            (0..s.nx).map(move |ix| {
                if ix == 0 || iy == 0 || ix + 1 == s.nx || iy + 1 == s.ny {
                    return None;
                }
                let c = f.get(ix, iy)?;
                let sum = f.get(ix + 1, iy)?
                    + f.get(ix - 1, iy)?
                    + f.get(ix, iy + 1)?
                    + f.get(ix, iy - 1)?;
                Some((sum - 4.0 * c) / h2)
            })
        })
        .collect();
    Ok(GridField { spec: s, values })
}

/// `z ↦ (a z + b) / (c z + d)` with `ad - bc ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MoebiusMap {
    pub a: Complex<f64>,
    pub b: Complex<f64>,
    pub c: Complex<f64>,
    pub d: Complex<f64>,
}

impl MoebiusMap {
    pub fn new(a: Complex<f64>, b: Complex<f64>, c: Complex<f64>, d: Complex<f64>) -> Result<Self> {
        if [a, b, c, d]
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite("map coefficient"));
        }
        if (a * d - b * c).norm() == 0.0 {
            return Err(Error::InvalidArgument(
                "map is degenerate: ad - bc = 0".into(),
            ));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        let (one, zero) = (Complex::new(1.0, 0.0), Complex::new(0.0, 0.0));
        Self {
            a: one,
            b: zero,
            c: zero,
            d: one,
        }
    }

    /// `z ↦ 1/z`.
    pub fn inversion() -> Self {
        let (one, zero) = (Complex::new(1.0, 0.0), Complex::new(0.0, 0.0));
        Self {
            a: zero,
            b: one,
            c: one,
            d: zero,
        }
    }

    /// `z ↦ z + t`.
    pub fn translation(t: Complex<f64>) -> Self {
        Self {
            b: t,
            ..Self::identity()
        }
    }

    /// Point sent to infinity, if any.
    pub fn pole(&self) -> Option<Complex<f64>> {
        (self.c.norm() != 0.0).then(|| -self.d / self.c)
    }

    pub fn apply(&self, z: Complex<f64>) -> Complex<f64> {
        (self.a * z + self.b) / (self.c * z + self.d)
    }
}

/// Named harmonic functions of the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Harmonic {
    /// `x² - y²`
    ReZ2,
    /// `x³ - 3xy²`
    ReZ3,
    /// `x⁴ - 6x²y² + y⁴`
    ReZ4,
    /// `ln |z|`
    LogAbs,
}

impl Harmonic {
    pub fn eval(self, z: Complex<f64>) -> f64 {
        match self {
            Harmonic::ReZ2 => (z * z).re,
            Harmonic::ReZ3 => (z * z * z).re,
            Harmonic::ReZ4 => (z * z * z * z).re,
            Harmonic::LogAbs => z.norm().ln(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Harmonic::ReZ2 => "re-z2",
            Harmonic::ReZ3 => "re-z3",
            Harmonic::ReZ4 => "re-z4",
            Harmonic::LogAbs => "log-abs",
        }
    }
}

impl FromStr for Harmonic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "re-z2" => Ok(Harmonic::ReZ2),
            "re-z3" => Ok(Harmonic::ReZ3),
            "re-z4" => Ok(Harmonic::ReZ4),
            "log-abs" => Ok(Harmonic::LogAbs),
            other => Err(Error::InvalidArgument(format!(
                "unknown harmonic sample {other:?}"
            ))),
        }
    }
}

/// Samples `f(map(z))` on the grid. Fails when the pole of the map lies
/// within `margin` of the grid rectangle.
pub fn moebius_pullback(
    map: &MoebiusMap,
    f: impl Fn(Complex<f64>) -> f64 + Sync,
    spec: GridSpec,
    margin: f64,
) -> Result<GridField> {
    if let Some(p) = map.pole() {
        let dx = (spec.x0 - p.re).max(0.0).max(p.re - spec.x_max());
        let dy = (spec.y0 - p.im).max(0.0).max(p.im - spec.y_max());
        if dx.hypot(dy) < margin {
            return Err(Error::PoleOnGrid {
                x: p.re,
                y: p.im,
                margin,
            });
        }
    }
    Ok(GridField::sample(spec, |x, y| {
        f(map.apply(Complex::new(x, y)))
    }))
}

/// `max |△ f(map(z))|` over interior points.
pub fn pullback_residual(
    map: &MoebiusMap,
    sample: Harmonic,
    spec: GridSpec,
    margin: f64,
) -> Result<f64> {
    let field = moebius_pullback(map, |z| sample.eval(z), spec, margin)?;
    Ok(fd_laplacian(&field)?.max_abs())
}

/// Residual at spacing `h` divided by the residual at `h/2` on the same
/// square.
pub fn convergence_ratio(
    map: &MoebiusMap,
    sample: Harmonic,
    x0: f64,
    y0: f64,
    side: f64,
    h: f64,
    margin: f64,
) -> Result<f64> {
    let coarse = pullback_residual(map, sample, GridSpec::square(x0, y0, side, h)?, margin)?;
    let fine = pullback_residual(
        map,
        sample,
        GridSpec::square(x0, y0, side, h / 2.0)?,
        margin,
    )?;
    Ok(coarse / fine)
}

/// Pullback residual compared with the identity-map residual of the same
/// sample, together with the observed order of convergence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HarmonicReport {
    pub sample: Harmonic,
    pub map: MoebiusMap,
    pub grid: GridSpec,
    pub baseline_max: f64,
    pub pullback_max: f64,
    pub bound_factor: f64,
    pub within_bound: bool,
    pub convergence_ratio: f64,
    pub ratio_range: (f64, f64),
    pub ratio_in_range: bool,
    pub passed: bool,
}

/// Settings of [`harmonic_demo`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HarmonicSetup {
    pub sample: Harmonic,
    pub map: MoebiusMap,
    pub x0: f64,
    pub y0: f64,
    pub side: f64,
    pub h: f64,
    pub margin: f64,
    pub bound_factor: f64,
}

impl Default for HarmonicSetup {
    fn default() -> Self {
        Self {
            sample: Harmonic::ReZ2,
            map: MoebiusMap::inversion(),
            x0: 0.5,
            y0: 0.5,
            side: 1.0,
            h: 0.01,
            margin: 0.1,
            bound_factor: 4.0,
        }
    }
}

pub fn harmonic_demo(setup: &HarmonicSetup) -> Result<HarmonicReport> {
    let grid = GridSpec::square(setup.x0, setup.y0, setup.side, setup.h)?;
    let baseline_max =
        pullback_residual(&MoebiusMap::identity(), setup.sample, grid, setup.margin)?;
    let pullback_max = pullback_residual(&setup.map, setup.sample, grid, setup.margin)?;
    let ratio = convergence_ratio(
        &setup.map,
        setup.sample,
        setup.x0,
        setup.y0,
        setup.side,
        setup.h,
        setup.margin,
    )?;
    let ratio_range = (3.5, 4.5);
    let within_bound = pullback_max <= setup.bound_factor * baseline_max;
    let ratio_in_range = (ratio_range.0..=ratio_range.1).contains(&ratio);
    Ok(HarmonicReport {
        sample: setup.sample,
        map: setup.map,
        grid,
        baseline_max,
        pullback_max,
        bound_factor: setup.bound_factor,
        within_bound,
        convergence_ratio: ratio,
        ratio_range,
        ratio_in_range,
        passed: within_bound && ratio_in_range,
    })
}

/// `sqrt(4π e^{4π})` against the measured ratio.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MassRatio {
    pub predicted: f64,
    pub experimental: f64,
    pub deviation_percent: f64,
}

pub fn mass_ratio_deviation() -> MassRatio {
    let predicted = (4.0 * PI * (4.0 * PI).exp()).sqrt();
    MassRatio {
        predicted,
        experimental: PROTON_ELECTRON_MASS_RATIO,
        deviation_percent: 100.0 * (predicted - PROTON_ELECTRON_MASS_RATIO)
            / PROTON_ELECTRON_MASS_RATIO,
    }
}
