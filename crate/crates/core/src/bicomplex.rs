//! Exact bicomplex numbers `w + x i + y j + z ij`.
//!
//! Both imaginary units square to `-1` and commute, so `ij` is a hyperbolic
//! unit with `(ij)^2 = +1`. The algebra is commutative and associative but has
//! zero divisors, most prominently the null-plane pair `o = (i + j)/2`,
//! `ō = (j - i)/2` with `o ō = 0`.
//!
//! Three involutions act on the units:
//!
//! | map      | i  | j  | ij  |
//! |----------|----|----|-----|
//! | `bar`    | -i | j  | -ij |
//! | `dagger` | i  | -j | -ij |
//! | `hat`    | -i | -j | ij  |

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use nalgebra::Complex;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact rational coefficient, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Builds the rational `num / den`.
///
/// Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact bicomplex number with coefficients on the basis `(1, i, j, ij)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Bicomplex {
    pub re: Rational,
    pub im_i: Rational,
    pub im_j: Rational,
    pub im_ij: Rational,
}

impl Bicomplex {
    pub fn new(re: Rational, im_i: Rational, im_j: Rational, im_ij: Rational) -> Self {
        Self {
            re,
            im_i,
            im_j,
            im_ij,
        }
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(re: i64, im_i: i64, im_j: i64, im_ij: i64) -> Self {
        Self::new(int(re), int(im_i), int(im_j), int(im_ij))
    }

    pub fn real(r: Rational) -> Self {
        Self::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }

    pub fn ij() -> Self {
        Self::from_ints(0, 0, 0, 1)
    }

    /// Coefficients in canonical basis order `(1, i, j, ij)`.
    pub fn coeffs(&self) -> [&Rational; 4] {
        [&self.re, &self.im_i, &self.im_j, &self.im_ij]
    }

    pub fn is_real(&self) -> bool {
        self.im_i.is_zero() && self.im_j.is_zero() && self.im_ij.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(
            &self.re * k,
            &self.im_i * k,
            &self.im_j * k,
            &self.im_ij * k,
        )
    }

    /// Conjugation: `i -> -i`, `j -> j`.
    pub fn bar(&self) -> Self {
        Self::new(
            self.re.clone(),
            -&self.im_i,
            self.im_j.clone(),
            -&self.im_ij,
        )
    }

    /// Entrywise part of reversion: `i -> i`, `j -> -j`.
    pub fn dagger(&self) -> Self {
        Self::new(
            self.re.clone(),
            self.im_i.clone(),
            -&self.im_j,
            -&self.im_ij,
        )
    }

    /// Entrywise part of the main involution: `i -> -i`, `j -> -j`.
    pub fn hat(&self) -> Self {
        Self::new(
            self.re.clone(),
            -&self.im_i,
            -&self.im_j,
            self.im_ij.clone(),
        )
    }

    pub fn to_f64(&self) -> BicomplexF {
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        BicomplexF([f(&self.re), f(&self.im_i), f(&self.im_j), f(&self.im_ij)])
    }
}

/// The null-plane units `(o, ō) = ((i + j)/2, (j - i)/2)`.
pub fn null_units() -> (Bicomplex, Bicomplex) {
    let half = rat(1, 2);
    let o = Bicomplex::new(
        Rational::zero(),
        half.clone(),
        half.clone(),
        Rational::zero(),
    );
    let o_bar = Bicomplex::new(Rational::zero(), -half.clone(), half, Rational::zero());
    (o, o_bar)
}

impl Zero for Bicomplex {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.is_real()
    }
}

impl One for Bicomplex {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl Add for &Bicomplex {
    type Output = Bicomplex;

    fn add(self, rhs: &Bicomplex) -> Bicomplex {
        Bicomplex::new(
            &self.re + &rhs.re,
            &self.im_i + &rhs.im_i,
            &self.im_j + &rhs.im_j,
            &self.im_ij + &rhs.im_ij,
        )
    }
}

impl Add for Bicomplex {
    type Output = Bicomplex;

    fn add(self, rhs: Bicomplex) -> Bicomplex {
        &self + &rhs
    }
}

impl AddAssign<&Bicomplex> for Bicomplex {
    fn add_assign(&mut self, rhs: &Bicomplex) {
        self.re += &rhs.re;
        self.im_i += &rhs.im_i;
        self.im_j += &rhs.im_j;
        self.im_ij += &rhs.im_ij;
    }
}

impl Sub for &Bicomplex {
    type Output = Bicomplex;

    fn sub(self, rhs: &Bicomplex) -> Bicomplex {
        Bicomplex::new(
            &self.re - &rhs.re,
            &self.im_i - &rhs.im_i,
            &self.im_j - &rhs.im_j,
            &self.im_ij - &rhs.im_ij,
        )
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;

    fn sub(self, rhs: Bicomplex) -> Bicomplex {
        &self - &rhs
    }
}

impl SubAssign<&Bicomplex> for Bicomplex {
    fn sub_assign(&mut self, rhs: &Bicomplex) {
        self.re -= &rhs.re;
        self.im_i -= &rhs.im_i;
        self.im_j -= &rhs.im_j;
        self.im_ij -= &rhs.im_ij;
    }
}

impl Neg for &Bicomplex {
    type Output = Bicomplex;

    fn neg(self) -> Bicomplex {
        Bicomplex::new(-&self.re, -&self.im_i, -&self.im_j, -&self.im_ij)
    }
}

impl Neg for Bicomplex {
    type Output = Bicomplex;

    fn neg(self) -> Bicomplex {
        -&self
    }
}

impl Mul for &Bicomplex {
    type Output = Bicomplex;

    fn mul(self, rhs: &Bicomplex) -> Bicomplex {
        let (a, b) = (self, rhs);
        // Most tower entries are a single signed unit; skipping zero
        // coefficients keeps exact sweeps cheap.
        let mut out = Bicomplex::zero();
        for (p, x) in a.coeffs().into_iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (q, y) in b.coeffs().into_iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (sign, slot) = UNIT_TABLE[p][q];
                let term = x * y;
                let target = match slot {
                    0 => &mut out.re,
                    1 => &mut out.im_i,
                    2 => &mut out.im_j,
                    _ => &mut out.im_ij,
                };
                if sign > 0 {
                    *target += term;
                } else {
                    *target -= term;
                }
            }
        }
        out
    }
}

impl Mul for Bicomplex {
    type Output = Bicomplex;

    fn mul(self, rhs: Bicomplex) -> Bicomplex {
        &self * &rhs
    }
}

/// `UNIT_TABLE[p][q] = (sign, slot)` with `u_p u_q = sign * u_slot` on the
/// basis `u = (1, i, j, ij)`.
const UNIT_TABLE: [[(i8, usize); 4]; 4] = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
    [(1, 2), (1, 3), (-1, 0), (-1, 1)],
    [(1, 3), (-1, 2), (-1, 1), (1, 0)],
];

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Bicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const UNITS: [&str; 4] = ["", "i", "j", "ij"];
        let mut first = true;
        for (c, unit) in self.coeffs().into_iter().zip(UNITS) {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            if unit.is_empty() {
                write_rational(f, &magnitude)?;
            } else {
                if !magnitude.is_one() {
                    write_rational(f, &magnitude)?;
                    f.write_str(" ")?;
                }
                f.write_str(unit)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Double-precision bicomplex number, components on `(1, i, j, ij)`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct BicomplexF(pub [f64; 4]);

impl BicomplexF {
    pub const ZERO: Self = Self([0.0; 4]);
    pub const ONE: Self = Self([1.0, 0.0, 0.0, 0.0]);

    pub fn real(x: f64) -> Self {
        Self([x, 0.0, 0.0, 0.0])
    }

    pub fn scale(self, k: f64) -> Self {
        let [a, b, c, d] = self.0;
        Self([a * k, b * k, c * k, d * k])
    }

    /// Sum of absolute component values; submultiplicative on this algebra.
    pub fn norm1(self) -> f64 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    pub fn max_abs(self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn bar(self) -> Self {
        let [a, b, c, d] = self.0;
        Self([a, -b, c, -d])
    }

    pub fn dagger(self) -> Self {
        let [a, b, c, d] = self.0;
        Self([a, b, -c, -d])
    }

    pub fn hat(self) -> Self {
        let [a, b, c, d] = self.0;
        Self([a, -b, -c, d])
    }

    /// Idempotent splitting along `(1 ± ij)/2`: the ring isomorphism onto
    /// pairs of ordinary complex numbers in the unit `i`.
    pub fn split(self) -> (Complex<f64>, Complex<f64>) {
        let [w, x, y, z] = self.0;
        (Complex::new(w + z, x - y), Complex::new(w - z, x + y))
    }

    /// Inverse of [`BicomplexF::split`].
    pub fn join(plus: Complex<f64>, minus: Complex<f64>) -> Self {
        Self([
            0.5 * (plus.re + minus.re),
            0.5 * (plus.im + minus.im),
            0.5 * (minus.im - plus.im),
            0.5 * (plus.re - minus.re),
        ])
    }
}

impl Add for BicomplexF {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        Self(out)
    }
}

impl AddAssign for BicomplexF {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for BicomplexF {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for BicomplexF {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for BicomplexF {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let [w1, x1, y1, z1] = self.0;
        let [w2, x2, y2, z2] = rhs.0;
        Self([
            w1 * w2 - x1 * x2 - y1 * y2 + z1 * z2,
            w1 * x2 + x1 * w2 - y1 * z2 - z1 * y2,
            w1 * y2 + y1 * w2 - x1 * z2 - z1 * x2,
            w1 * z2 + z1 * w2 + x1 * y2 + y1 * x2,
        ])
    }
}
