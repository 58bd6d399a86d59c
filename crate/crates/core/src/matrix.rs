//! Square matrices over the bicomplex numbers.
//!
//! [`BicMatrix`] is exact and carries every basis element of the tower.
//! [`BicMatrixF`] is its double-precision mirror, used where exponentials and
//! inverses are needed.
//!
//! Involutions at matrix level:
//! - `bar`: transpose with entrywise `bar` (anti-automorphism),
//! - `dagger`: transpose with entrywise `dagger` (anti-automorphism, reversion),
//! - `hat`: entrywise `hat`, no transpose (automorphism, main involution).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Complex, DMatrix};
use num_traits::{One, Zero};

use crate::bicomplex::{Bicomplex, BicomplexF, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BicMatrix {
    dim: usize,
    entries: Vec<Bicomplex>,
}

impl BicMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            entries: vec![Bicomplex::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Bicomplex::one())
    }

    /// `value * I`.
    pub fn scalar(dim: usize, value: Bicomplex) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.entries[k * dim + k] = value.clone();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<Bicomplex>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { dim, entries })
    }

    /// Real 2x2 matrix `[[a, b], [c, d]]`.
    pub fn real2(a: i64, b: i64, c: i64, d: i64) -> Self {
        let e = |x| Bicomplex::from_ints(x, 0, 0, 0);
        Self {
            dim: 2,
            entries: vec![e(a), e(b), e(c), e(d)],
        }
    }

    /// The block unit `ı = [[0, 1], [-1, 0]]`.
    pub fn imath() -> Self {
        Self::real2(0, 1, -1, 0)
    }

    /// The block unit `ȷ = [[0, 1], [1, 0]]`.
    pub fn jmath() -> Self {
        Self::real2(0, 1, 1, 0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Bicomplex {
        &self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Bicomplex] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = &self.entries[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &other.entries[k * n + c];
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[r * n + c] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Bicomplex, &Bicomplex) -> Bicomplex) -> Self {
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    fn map(&self, f: impl Fn(&Bicomplex) -> Bicomplex) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn transpose_map(&self, f: impl Fn(&Bicomplex) -> Bicomplex) -> Self {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(f(&self.entries[c * n + r]));
            }
        }
        Self { dim: n, entries }
    }

    /// Multiplies every entry by the bicomplex scalar `c`.
    pub fn scale(&self, c: &Bicomplex) -> Self {
        self.map(|a| a * c)
    }

    pub fn scale_rational(&self, k: &Rational) -> Self {
        self.map(|a| a.scale(k))
    }

    pub fn bar(&self) -> Self {
        self.transpose_map(Bicomplex::bar)
    }

    pub fn dagger(&self) -> Self {
        self.transpose_map(Bicomplex::dagger)
    }

    pub fn hat(&self) -> Self {
        self.map(Bicomplex::hat)
    }

    /// Kronecker product; `self` supplies the outer block index.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        let n = a * b;
        let mut out = Self::zeros(n);
        for r1 in 0..a {
            for c1 in 0..a {
                let x = self.get(r1, c1);
                if x.is_zero() {
                    continue;
                }
                for r2 in 0..b {
                    for c2 in 0..b {
                        let y = other.get(r2, c2);
                        if y.is_zero() {
                            continue;
                        }
                        out.entries[(r1 * b + r2) * n + c1 * b + c2] = x * y;
                    }
                }
            }
        }
        out
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)?
            .checked_sub(&other.checked_mul(self)?)
    }

    /// Returns `λ` when the matrix equals `λ I` exactly.
    pub fn as_scalar(&self) -> Result<Bicomplex> {
        let n = self.dim;
        let lambda = self.get(0, 0);
        for r in 0..n {
            for c in 0..n {
                let e = self.get(r, c);
                let ok = if r == c { e == lambda } else { e.is_zero() };
                if !ok {
                    return Err(Error::NotScalar { context: None });
                }
            }
        }
        Ok(lambda.clone())
    }

    pub fn to_f64(&self) -> BicMatrixF {
        BicMatrixF {
            dim: self.dim,
            entries: self.entries.iter().map(Bicomplex::to_f64).collect(),
        }
    }

    /// Real inner product of the flattened coefficient sequences.
    pub fn inner(&self, other: &Self) -> Rational {
        let mut acc = Rational::zero();
        for (a, b) in self.entries.iter().zip(&other.entries) {
            for (x, y) in a.coeffs().into_iter().zip(b.coeffs()) {
                if !x.is_zero() && !y.is_zero() {
                    acc += x * y;
                }
            }
        }
        acc
    }

    /// Flattened exact coefficient sequence (entries row-major, each entry in
    /// `(1, i, j, ij)` order).
    pub fn flatten(&self) -> Vec<Rational> {
        self.entries
            .iter()
            .flat_map(|e| e.coeffs().into_iter().cloned())
            .collect()
    }
}

impl Mul for &BicMatrix {
    type Output = BicMatrix;

    /// Panics on dimension mismatch; use [`BicMatrix::checked_mul`] otherwise.
    fn mul(self, rhs: &BicMatrix) -> BicMatrix {
        self.checked_mul(rhs)
            .expect("matrix product dimension mismatch")
    }
}

impl Add for &BicMatrix {
    type Output = BicMatrix;

    fn add(self, rhs: &BicMatrix) -> BicMatrix {
        self.checked_add(rhs)
            .expect("matrix sum dimension mismatch")
    }
}

impl Sub for &BicMatrix {
    type Output = BicMatrix;

    fn sub(self, rhs: &BicMatrix) -> BicMatrix {
        self.checked_sub(rhs)
            .expect("matrix difference dimension mismatch")
    }
}

impl Neg for &BicMatrix {
    type Output = BicMatrix;

    fn neg(self) -> BicMatrix {
        self.map(|a| -a)
    }
}

impl fmt::Display for BicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim {
            f.write_str("[")?;
            for c in 0..self.dim {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// Double-precision mirror of [`BicMatrix`].
#[derive(Clone, Debug, PartialEq)]
pub struct BicMatrixF {
    dim: usize,
    entries: Vec<BicomplexF>,
}

impl BicMatrixF {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            entries: vec![BicomplexF::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.entries[k * dim + k] = BicomplexF::ONE;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> BicomplexF {
        self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BicomplexF) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[BicomplexF] {
        &self.entries
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.entries[r * n + k];
                for c in 0..n {
                    out.entries[r * n + c] += a * other.entries[k * n + c];
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(BicomplexF, BicomplexF) -> BicomplexF) -> Self {
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn map(&self, f: impl Fn(BicomplexF) -> BicomplexF) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&a| f(a)).collect(),
        }
    }

    fn transpose_map(&self, f: impl Fn(BicomplexF) -> BicomplexF) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.entries[r * n + c] = f(self.entries[c * n + r]);
            }
        }
        out
    }

    pub fn scale(&self, c: BicomplexF) -> Self {
        self.map(|a| a * c)
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.map(|a| a.scale(k))
    }

    pub fn bar(&self) -> Self {
        self.transpose_map(BicomplexF::bar)
    }

    pub fn dagger(&self) -> Self {
        self.transpose_map(BicomplexF::dagger)
    }

    pub fn hat(&self) -> Self {
        self.map(BicomplexF::hat)
    }

    /// Largest absolute component over all entries.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| m.max(e.max_abs()))
    }

    /// Largest absolute component of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(0.0, |m, (&a, &b)| m.max((a - b).max_abs()))
    }

    /// Induced infinity norm using the component 1-norm on entries.
    pub fn norm(&self) -> f64 {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c).norm1()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|e| e.is_finite())
    }

    /// Matrix exponential by scaling and squaring around a truncated Taylor
    /// series. The entry ring is commutative, so the scalar algorithm applies
    /// unchanged.
    pub fn exp(&self) -> Result<Self> {
        if !self.is_finite() {
            return Err(Error::NonFinite("matrix exponential input"));
        }
        let norm = self.norm();
        let squarings = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as i32
        } else {
            0
        };
        if squarings > 1000 {
            return Err(Error::NonFinite("matrix exponential scaling"));
        }
        let scaled = self.scale_real(0.5f64.powi(squarings));

        let mut sum = Self::identity(self.dim);
        let mut term = Self::identity(self.dim);
        for k in 1..=30 {
            term = term.checked_mul(&scaled)?.scale_real(1.0 / k as f64);
            sum = sum.checked_add(&term)?;
            if term.max_abs() < 1e-20 {
                break;
            }
        }
        for _ in 0..squarings {
            sum = sum.checked_mul(&sum)?;
        }
        if sum.is_finite() {
            Ok(sum)
        } else {
            Err(Error::NonFinite("matrix exponential"))
        }
    }

    fn split(&self) -> (DMatrix<Complex<f64>>, DMatrix<Complex<f64>>) {
        let n = self.dim;
        let mut plus = DMatrix::zeros(n, n);
        let mut minus = DMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let (p, m) = self.get(r, c).split();
                plus[(r, c)] = p;
                minus[(r, c)] = m;
            }
        }
        (plus, minus)
    }

    /// Inverse through the idempotent splitting into two complex matrices.
    ///
    /// Returns `None` when either half has an LU pivot smaller than
    /// `rel_tol` times the largest entry magnitude.
    pub fn try_inverse(&self, rel_tol: f64) -> Option<Self> {
        let (plus, minus) = self.split();
        let inv_plus = invert_complex(plus, rel_tol)?;
        let inv_minus = invert_complex(minus, rel_tol)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, BicomplexF::join(inv_plus[(r, c)], inv_minus[(r, c)]));
            }
        }
        Some(out)
    }
}

fn invert_complex(m: DMatrix<Complex<f64>>, rel_tol: f64) -> Option<DMatrix<Complex<f64>>> {
    let scale = m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    let lu = m.lu();
    let u = lu.u();
    let min_pivot = u
        .diagonal()
        .iter()
        .fold(f64::INFINITY, |acc, z| acc.min(z.norm()));
    if min_pivot <= rel_tol * scale {
        return None;
    }
    lu.try_inverse()
}
