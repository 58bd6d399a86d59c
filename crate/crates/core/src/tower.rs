//! The hierarchy of Möbius geometries.
//!
//! Level 0 is the complex plane with the single generator `e_1 = i` (a 1x1
//! matrix). Each compactification step maps the `n - 1` generators of level
//! `L` into level `L + 1` by
//!
//! ```text
//! e_k'     = ıȷ ⊗ e_k           k = 1..n-1
//! e_n'     = i (ȷ ⊗ I)
//! e_{n+1}' = (ı ⊗ I) j
//! ```
//!
//! so that level `L` generates the Clifford algebra `R_{L,L+1}` with `2^L`
//! dimensional matrices, and its paravector model `(1, e_k)` carries a metric
//! of signature `(L + 2, L)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bicomplex, Rational};
use crate::error::{Error, Result};
use crate::matrix::{BicMatrix, BicMatrixF};

/// One rung of the compactification tower.
#[derive(Clone, Debug)]
pub struct AlgebraLevel {
    index: usize,
    generators: Vec<BicMatrix>,
    basis_f: Vec<BicMatrixF>,
}

impl AlgebraLevel {
    /// The complex plane: one generator `[i]`.
    pub fn base() -> Self {
        Self::from_generators(0, vec![BicMatrix::scalar(1, Bicomplex::i())])
    }

    /// Builds level `index` by repeated compactification of the base level.
    pub fn at(index: usize) -> Self {
        let mut level = Self::base();
        for _ in 0..index {
            level = level.compactify();
        }
        level
    }

    fn from_generators(index: usize, generators: Vec<BicMatrix>) -> Self {
        let dim = generators[0].dim();
        let basis_f = std::iter::once(BicMatrix::identity(dim))
            .chain(generators.iter().cloned())
            .map(|m| m.to_f64())
            .collect();
        Self {
            index,
            generators,
            basis_f,
        }
    }

    /// The next level of the tower.
    pub fn compactify(&self) -> AlgebraLevel {
        let dim = self.dim();
        let inner_identity = BicMatrix::identity(dim);
        let imath = BicMatrix::imath();
        let jmath = BicMatrix::jmath();
        let ij_block = &imath * &jmath;

        let mut generators: Vec<BicMatrix> =
            self.generators.iter().map(|e| ij_block.kron(e)).collect();
        generators.push(jmath.kron(&inner_identity).scale(&Bicomplex::i()));
        generators.push(imath.kron(&inner_identity).scale(&Bicomplex::j()));
        Self::from_generators(self.index + 1, generators)
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Paravector dimension `n = 2L + 2`.
    pub fn n(&self) -> usize {
        self.generators.len() + 1
    }

    /// Matrix dimension `2^L`.
    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    /// Generators `e_1 .. e_{n-1}`.
    pub fn generators(&self) -> &[BicMatrix] {
        &self.generators
    }

    /// Generator `e_k` with the 1-based index used in formulas.
    pub fn generator(&self, k: usize) -> &BicMatrix {
        &self.generators[k - 1]
    }

    /// Paravector basis `e_μ = (1, e_1, .., e_{n-1})`.
    pub fn basis(&self) -> Vec<BicMatrix> {
        std::iter::once(BicMatrix::identity(self.dim()))
            .chain(self.generators.iter().cloned())
            .collect()
    }

    pub fn basis_element(&self, mu: usize) -> BicMatrix {
        if mu == 0 {
            BicMatrix::identity(self.dim())
        } else {
            self.generator(mu).clone()
        }
    }

    pub fn basis_f(&self) -> &[BicMatrixF] {
        &self.basis_f
    }

    /// Paravector metric signature `(plus, minus) = (L + 2, L)`.
    pub fn signature(&self) -> (usize, usize) {
        (self.index + 2, self.index)
    }

    /// Clifford algebra label `(p, q)` of `R_{p,q}`: `p` generators square to
    /// `+I`, `q` to `-I`.
    pub fn clifford_label(&self) -> (usize, usize) {
        (self.index, self.index + 1)
    }

    /// Sign of each generator square; errors if some square is not `±I`.
    pub fn generator_squares(&self) -> Result<Vec<i8>> {
        let plus = Bicomplex::one();
        let minus = -Bicomplex::one();
        self.generators
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let sq = (e * e).as_scalar().map_err(|_| Error::NotScalar {
                    context: Some(format!("square of e_{}", k + 1)),
                })?;
                if sq == plus {
                    Ok(1)
                } else if sq == minus {
                    Ok(-1)
                } else {
                    Err(Error::NotScalar {
                        context: Some(format!("square of e_{} is {sq}", k + 1)),
                    })
                }
            })
            .collect()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.n() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.n(),
                right: len,
            })
        }
    }

    /// `x^0 I + Σ x^k e_k`.
    pub fn embed(&self, x: &Paravector) -> Result<BicMatrix> {
        self.check_len(x.coeffs.len())?;
        let mut out = BicMatrix::zeros(self.dim());
        for (c, b) in x.coeffs.iter().zip(self.basis()) {
            if !c.is_zero() {
                out = &out + &b.scale_rational(c);
            }
        }
        Ok(out)
    }

    /// Float embedding of real coefficients.
    pub fn embed_f(&self, coeffs: &[f64]) -> Result<BicMatrixF> {
        self.check_len(coeffs.len())?;
        let mut out = BicMatrixF::zeros(self.dim());
        for (&c, b) in coeffs.iter().zip(&self.basis_f) {
            if c != 0.0 {
                out = out.checked_add(&b.scale_real(c))?;
            }
        }
        Ok(out)
    }

    /// Exact inverse of [`AlgebraLevel::embed`]; `None` when the matrix is not
    /// a real paravector of this level.
    pub fn coefficients(&self, m: &BicMatrix) -> Option<Paravector> {
        if m.dim() != self.dim() {
            return None;
        }
        // The basis is orthogonal under the flattened real inner product.
        let coeffs: Vec<Rational> = self
            .basis()
            .iter()
            .map(|b| m.inner(b) / b.inner(b))
            .collect();
        let x = Paravector::new(coeffs);
        match self.embed(&x) {
            Ok(back) if &back == m => Some(x),
            _ => None,
        }
    }

    /// Float projection onto the paravector span; returns the coefficients
    /// and the largest absolute off-span residual component.
    pub fn project_f(&self, m: &BicMatrixF) -> Result<(Vec<f64>, f64)> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: m.dim(),
            });
        }
        let inner = |a: &BicMatrixF, b: &BicMatrixF| -> f64 {
            a.entries()
                .iter()
                .zip(b.entries())
                .map(|(x, y)| x.0.iter().zip(y.0).map(|(p, q)| p * q).sum::<f64>())
                .sum()
        };
        let coeffs: Vec<f64> = self
            .basis_f
            .iter()
            .map(|b| inner(m, b) / inner(b, b))
            .collect();
        let rebuilt = self.embed_f(&coeffs)?;
        Ok((coeffs, m.max_abs_diff(&rebuilt)))
    }

    /// `x x̄ = g_{μν} x^μ x^ν`.
    pub fn pv_norm(&self, x: &Paravector) -> Result<Rational> {
        let m = self.embed(x)?;
        let s = (&m * &m.bar()).as_scalar()?;
        if s.is_real() {
            Ok(s.re)
        } else {
            Err(Error::NotScalar {
                context: Some(format!("paravector norm {s} is not real")),
            })
        }
    }

    /// `x̄ / (x x̄)`; null paravectors are points at infinity.
    pub fn pv_inverse(&self, x: &Paravector) -> Result<Paravector> {
        let norm = self.pv_norm(x)?;
        if norm.is_zero() {
            return Err(Error::NullVector);
        }
        let coeffs = x
            .coeffs
            .iter()
            .enumerate()
            .map(|(mu, c)| {
                let c = c / &norm;
                if mu == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        Ok(Paravector::new(coeffs))
    }
}

/// Real coefficients `x^0 .. x^{n-1}` over a level's basis `(1, e_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Paravector {
    pub coeffs: Vec<Rational>,
}

impl Paravector {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| crate::bicomplex::int(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Rational::zero(); n])
    }

    /// Clifford conjugate `(x^0, -x^k)`.
    pub fn conjugate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mu, c)| if mu == 0 { c.clone() } else { -c })
            .collect();
        Self::new(coeffs)
    }

    pub fn to_f64(&self) -> ParavectorF {
        use num_traits::ToPrimitive;
        ParavectorF::new(
            self.coeffs
                .iter()
                .map(|c| c.to_f64().unwrap_or(f64::NAN))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Double-precision paravector used by the transformation layer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParavectorF {
    pub coeffs: Vec<f64>,
}

impl ParavectorF {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Metric diagonal implied by the tower: `(1, 1)` followed by `(1, -1)` per
/// level.
pub fn expected_metric_diagonal(level: usize) -> Vec<i64> {
    let mut d = vec![1, 1];
    for _ in 0..level {
        d.extend([1, -1]);
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomplex::{int, rat};

    fn pauli() -> [BicMatrix; 3] {
        let z = Bicomplex::zero;
        let i = Bicomplex::i;
        let j = Bicomplex::j;
        [
            BicMatrix::from_rows(vec![vec![i(), z()], vec![z(), -i()]]).unwrap(),
            BicMatrix::from_rows(vec![vec![z(), i()], vec![i(), z()]]).unwrap(),
            BicMatrix::from_rows(vec![vec![z(), j()], vec![-j(), z()]]).unwrap(),
        ]
    }

    #[test]
    fn base_level_shape() {
        let base = AlgebraLevel::base();
        assert_eq!(base.n(), 2);
        assert_eq!(base.dim(), 1);
        assert_eq!(base.signature(), (2, 0));
        assert_eq!(base.generator_squares().unwrap(), vec![-1]);
    }

    #[test]
    fn first_compactification_gives_pauli_matrices() {
        let l1 = AlgebraLevel::base().compactify();
        assert_eq!(l1.generators(), &pauli());
        assert_eq!(l1.clifford_label(), (1, 2));
    }

    #[test]
    fn square_patterns() {
        assert_eq!(AlgebraLevel::at(2).signature(), (4, 2));
        assert_eq!(
            AlgebraLevel::at(3).generator_squares().unwrap(),
            vec![-1, -1, 1, -1, 1, -1, 1]
        );
    }

    #[test]
    fn generators_anticommute_and_match_signature() {
        for l in 0..=4 {
            let level = AlgebraLevel::at(l);
            let gens = level.generators();
            assert_eq!(gens.len(), 2 * l + 1);
            assert_eq!(level.dim(), 1 << l);
            for a in 0..gens.len() {
                for b in (a + 1)..gens.len() {
                    let anti = &(&gens[a] * &gens[b]) + &(&gens[b] * &gens[a]);
                    assert!(anti.is_zero(), "level {l}: e_{} e_{}", a + 1, b + 1);
                }
            }
            let squares = level.generator_squares().unwrap();
            let plus = squares.iter().filter(|&&s| s > 0).count();
            assert_eq!((plus, squares.len() - plus), level.clifford_label());
        }
    }

    #[test]
    fn embed_examples() {
        let l1 = AlgebraLevel::at(1);
        let e3 = l1.embed(&Paravector::from_ints(&[0, 0, 0, 1])).unwrap();
        assert_eq!(e3, pauli()[2]);
        assert!(l1.embed(&Paravector::zero(4)).unwrap().is_zero());
        let x = Paravector::new(vec![rat(1, 2), int(-3), rat(2, 5), int(7)]);
        assert_eq!(
            l1.embed(&x).unwrap().bar(),
            l1.embed(&x.conjugate()).unwrap()
        );
        assert!(matches!(
            l1.embed(&Paravector::zero(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn embed_is_injective_on_small_coefficients() {
        let l1 = AlgebraLevel::at(1);
        let vals = [-1i64, 0, 1];
        let mut seen = std::collections::HashSet::new();
        for a in vals {
            for b in vals {
                for c in vals {
                    for d in vals {
                        let x = Paravector::from_ints(&[a, b, c, d]);
                        let m = l1.embed(&x).unwrap();
                        assert_eq!(m.is_zero(), x.is_zero());
                        assert_eq!(l1.coefficients(&m), Some(x));
                        assert!(seen.insert(m));
                    }
                }
            }
        }
    }

    #[test]
    fn coefficient_extraction_rejects_non_paravectors() {
        let l1 = AlgebraLevel::at(1);
        let bivector = l1.generator(1) * l1.generator(2);
        assert_eq!(l1.coefficients(&bivector), None);
    }

    #[test]
    fn norms() {
        let l1 = AlgebraLevel::at(1);
        let norm = |c: &[i64]| l1.pv_norm(&Paravector::from_ints(c)).unwrap();
        assert_eq!(norm(&[1, 0, 0, 0]), int(1));
        assert_eq!(norm(&[0, 0, 0, 1]), int(-1));
        assert_eq!(norm(&[1, 0, 0, 1]), int(0));
        assert_eq!(norm(&[1, 2, 3, 4]), int(1 + 4 + 9 - 16));
    }

    #[test]
    fn inverses() {
        let l1 = AlgebraLevel::at(1);
        let inv = |c: &[i64]| l1.pv_inverse(&Paravector::from_ints(c));
        assert_eq!(
            inv(&[2, 0, 0, 0]).unwrap(),
            Paravector::new(vec![rat(1, 2), int(0), int(0), int(0)])
        );
        assert_eq!(
            inv(&[0, 0, 0, 1]).unwrap(),
            Paravector::from_ints(&[0, 0, 0, 1])
        );
        assert_eq!(inv(&[1, 0, 0, 1]), Err(Error::NullVector));

        let x = Paravector::new(vec![rat(3, 2), int(-1), rat(1, 3), int(2)]);
        let y = l1.pv_inverse(&x).unwrap();
        let prod = &l1.embed(&y).unwrap() * &l1.embed(&x).unwrap();
        assert_eq!(prod, BicMatrix::identity(2));
        assert_eq!(l1.pv_inverse(&y).unwrap(), x);
    }

    #[test]
    fn basis_is_orthogonal_for_projection() {
        for l in 0..=4 {
            let basis = AlgebraLevel::at(l).basis();
            for a in 0..basis.len() {
                for b in 0..basis.len() {
                    let ip = basis[a].inner(&basis[b]);
                    assert_eq!(ip.is_zero(), a != b, "level {l}: ({a}, {b})");
                }
            }
        }
    }

    #[test]
    fn metric_diagonal_helper() {
        assert_eq!(expected_metric_diagonal(0), vec![1, 1]);
        assert_eq!(expected_metric_diagonal(2), vec![1, 1, 1, -1, 1, -1]);
    }
}
