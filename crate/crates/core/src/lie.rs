//! Exact verification of the Lie-algebra content of the tower.
//!
//! Spin operators `s_{μν}` of every level close under the commutator with the
//! Lorentz structure constants
//!
//! ```text
//! [s_{μν}, s_{ρσ}] = g_{μσ} s_{νρ} - g_{μρ} s_{νσ} - g_{νσ} s_{μρ} + g_{νρ} s_{μσ}
//! ```
//!
//! The appended directions `n, n+1` of the ambient level combine into the
//! momentum, special-conformal and dilation generators
//! `p_μ = -s_{μn} - s_{μ,n+1}`, `q_μ = s_{μn} - s_{μ,n+1}`, `d = s_{n,n+1}`.

use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bicomplex::{int, Rational};
use crate::error::{Error, Result};
use crate::matrix::BicMatrix;
use crate::tensors::{metric, spin_ops, Dictionary, MetricTable, SpinTable, Unit, Vocabulary};
use crate::tower::AlgebraLevel;

/// One failed relation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub relation: String,
    pub indices: Vec<usize>,
    /// Expected right-hand side as a word, when it decomposes.
    pub expected: Option<String>,
    /// Computed left-hand side as a word, when it decomposes.
    pub actual: Option<String>,
    /// Nonzero entries of `actual - expected` as `"row,col: value"`.
    pub difference: Vec<String>,
}

/// Outcome of a verification sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub ms: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Zeroes the timing field for byte-stable output.
    pub fn without_timing(mut self) -> Self {
        self.ms = 0.0;
        self
    }
}

/// A single relation instance: `lhs` must equal `rhs`.
pub struct Check {
    pub relation: &'static str,
    pub indices: Vec<usize>,
    pub lhs: BicMatrix,
    pub rhs: BicMatrix,
}

/// Renders matrices as signed words with an optional `1/2` or `1/4` factor.
pub struct Describer {
    dict: Option<Dictionary>,
}

impl Describer {
    pub fn new(level: &AlgebraLevel) -> Self {
        let vocab = Vocabulary::default_for(level.index());
        Self {
            dict: Dictionary::new(level, vocab, 4).ok(),
        }
    }

    pub fn describe(&self, m: &BicMatrix) -> Option<String> {
        if m.is_zero() {
            return Some("0".into());
        }
        let dict = self.dict.as_ref()?;
        for k in [1, 2, 4] {
            if let Ok(w) = dict.decompose(&m.scale_rational(&int(k))) {
                return Some(if k == 1 {
                    w.to_string()
                } else {
                    format!("(1/{k}){w}")
                });
            }
        }
        None
    }
}

fn difference_entries(a: &BicMatrix, b: &BicMatrix) -> Vec<String> {
    let diff = a - b;
    let n = diff.dim();
    let mut out = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let e = diff.get(r, c);
            if !e.is_zero() {
                out.push(format!("{r},{c}: {e}"));
            }
        }
    }
    out
}

/// Evaluates checks in parallel and collects failures in input order.
pub fn run_checks(
    suite: &str,
    describer: &Describer,
    checks: Vec<Check>,
    started: Instant,
) -> VerificationReport {
    let total = checks.len();
    let failures: Vec<Failure> = checks
        .into_par_iter()
        .filter(|c| c.lhs != c.rhs)
        .map(|c| Failure {
            relation: c.relation.to_string(),
            expected: describer.describe(&c.rhs),
            actual: describer.describe(&c.lhs),
            difference: difference_entries(&c.lhs, &c.rhs),
            indices: c.indices,
        })
        .collect();
    VerificationReport {
        suite: suite.to_string(),
        checks: total,
        failures,
        ms: started.elapsed().as_secs_f64() * 1e3,
    }
}

fn commutator(a: &BicMatrix, b: &BicMatrix) -> BicMatrix {
    a.commutator(b).expect("operators share a dimension")
}

fn scaled(g: &Rational, m: &BicMatrix) -> Option<BicMatrix> {
    (!g.is_zero()).then(|| m.scale_rational(g))
}

fn sum_terms(dim: usize, terms: impl IntoIterator<Item = (i64, Option<BicMatrix>)>) -> BicMatrix {
    let mut acc = BicMatrix::zeros(dim);
    for (sign, term) in terms {
        if let Some(t) = term {
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
        }
    }
    acc
}

/// Right-hand side of the Lorentz relation for `[s_{μν}, s_{ρσ}]`.
pub fn lorentz_rhs(
    g: &MetricTable,
    s: &SpinTable,
    mu: usize,
    nu: usize,
    rho: usize,
    sigma: usize,
) -> BicMatrix {
    let dim = s.get(0, 0).dim();
    sum_terms(
        dim,
        [
            (1, scaled(g.get(mu, sigma), s.get(nu, rho))),
            (-1, scaled(g.get(mu, rho), s.get(nu, sigma))),
            (-1, scaled(g.get(nu, sigma), s.get(mu, rho))),
            (1, scaled(g.get(nu, rho), s.get(mu, sigma))),
        ],
    )
}

fn lorentz_checks(g: &MetricTable, s: &SpinTable, relation: &'static str) -> Vec<Check> {
    let n = s.n();
    let quads: Vec<[usize; 4]> = (0..n * n * n * n)
        .map(|k| [k / (n * n * n), (k / (n * n)) % n, (k / n) % n, k % n])
        .collect();
    quads
        .into_par_iter()
        .map(|[mu, nu, rho, sigma]| Check {
            relation,
            indices: vec![mu, nu, rho, sigma],
            lhs: commutator(s.get(mu, nu), s.get(rho, sigma)),
            rhs: lorentz_rhs(g, s, mu, nu, rho, sigma),
        })
        .collect()
}

/// Exact sweep of the Lorentz relation over all ordered index quadruples.
pub fn verify_lorentz(level: &AlgebraLevel) -> Result<VerificationReport> {
    let started = Instant::now();
    let g = metric(level)?;
    let s = spin_ops(level);
    let checks = lorentz_checks(
        &g,
        &s,
        "[s_mn, s_rs] = g_ms s_nr - g_mr s_ns - g_ns s_mr + g_nr s_ms",
    );
    Ok(run_checks(
        &format!("lorentz(level {})", level.index()),
        &Describer::new(level),
        checks,
        started,
    ))
}

/// Kastrup generators of a base level, realized in the ambient level.
#[derive(Clone, Debug)]
pub struct ConformalGenerators {
    pub base_level: usize,
    pub ambient: AlgebraLevel,
    /// Metric of the base level.
    pub metric: MetricTable,
    /// Ambient spin operators restricted to base indices.
    pub s: SpinTable,
    pub p: Vec<BicMatrix>,
    pub q: Vec<BicMatrix>,
    pub d: BicMatrix,
}

impl ConformalGenerators {
    pub fn n(&self) -> usize {
        self.p.len()
    }
}

/// `p_μ`, `q_μ`, `d` built from the ambient spin operators.
pub fn conformal_generators(base: &AlgebraLevel) -> Result<ConformalGenerators> {
    let ambient = base.compactify();
    let s_amb = spin_ops(&ambient);
    let n = base.n();
    let p = (0..n)
        .map(|mu| &(-s_amb.get(mu, n)) - s_amb.get(mu, n + 1))
        .collect();
    let q = (0..n)
        .map(|mu| s_amb.get(mu, n) - s_amb.get(mu, n + 1))
        .collect();
    let d = s_amb.get(n, n + 1).clone();
    let s = SpinTable {
        level: ambient.index(),
        entries: (0..n)
            .map(|mu| (0..n).map(|nu| s_amb.get(mu, nu).clone()).collect())
            .collect(),
    };
    Ok(ConformalGenerators {
        base_level: base.index(),
        metric: metric(base)?,
        ambient,
        s,
        p,
        q,
        d,
    })
}

/// Checks the closed forms
/// `2p_0 = ıj + iȷ`, `2q_0 = ıj - iȷ`, `2p_k = e_k(ȷj + ıi)`,
/// `2q_k = e_k(ȷj - ıi)`, `2d = ıȷij` with `e_k` the lifted base generators.
pub fn verify_closed_forms(base: &AlgebraLevel) -> Result<VerificationReport> {
    let started = Instant::now();
    let gens = conformal_generators(base)?;
    let amb = &gens.ambient;
    let unit = |u: Unit| u.matrix(amb);
    let (i, j) = (unit(Unit::I)?, unit(Unit::J)?);
    let (im, jm) = (unit(Unit::BlockI(0))?, unit(Unit::BlockJ(0))?);
    let two = int(2);

    let im_j = &im * &j;
    let i_jm = &i * &jm;
    let jm_j = &jm * &j;
    let im_i = &im * &i;

    let mut checks = vec![
        Check {
            relation: "2p_0 = ıj + iȷ",
            indices: vec![0],
            lhs: gens.p[0].scale_rational(&two),
            rhs: &im_j + &i_jm,
        },
        Check {
            relation: "2q_0 = ıj - iȷ",
            indices: vec![0],
            lhs: gens.q[0].scale_rational(&two),
            rhs: &im_j - &i_jm,
        },
        Check {
            relation: "2d = ıȷij",
            indices: vec![],
            lhs: gens.d.scale_rational(&two),
            rhs: &(&(&im * &jm) * &i) * &j,
        },
    ];
    for k in 1..gens.n() {
        let ek = unit(Unit::Lifted(k))?;
        checks.push(Check {
            relation: "2p_k = e_k(ȷj + ıi)",
            indices: vec![k],
            lhs: gens.p[k].scale_rational(&two),
            rhs: &ek * &(&jm_j + &im_i),
        });
        checks.push(Check {
            relation: "2q_k = e_k(ȷj - ıi)",
            indices: vec![k],
            lhs: gens.q[k].scale_rational(&two),
            rhs: &ek * &(&jm_j - &im_i),
        });
    }
    Ok(run_checks(
        &format!("closed-forms(base {})", base.index()),
        &Describer::new(amb),
        checks,
        started,
    ))
}

/// Exact sweep of the conformal commutation relations, including every
/// bracket that must vanish.
pub fn verify_conformal(base: &AlgebraLevel) -> Result<VerificationReport> {
    let started = Instant::now();
    let gens = conformal_generators(base)?;
    let n = gens.n();
    let dim = gens.d.dim();
    let g = &gens.metric;
    let (s, p, q, d) = (&gens.s, &gens.p, &gens.q, &gens.d);
    let zero = BicMatrix::zeros(dim);

    let mut checks = Vec::new();
    for mu in 0..n {
        for nu in 0..n {
            for sigma in 0..n {
                let linear = |v: &[BicMatrix]| {
                    sum_terms(
                        dim,
                        [
                            (1, scaled(g.get(nu, sigma), &v[mu])),
                            (-1, scaled(g.get(mu, sigma), &v[nu])),
                        ],
                    )
                };
                checks.push(Check {
                    relation: "[s_mn, p_s] = g_ns p_m - g_ms p_n",
                    indices: vec![mu, nu, sigma],
                    lhs: commutator(s.get(mu, nu), &p[sigma]),
                    rhs: linear(p),
                });
                checks.push(Check {
                    relation: "[s_mn, q_s] = g_ns q_m - g_ms q_n",
                    indices: vec![mu, nu, sigma],
                    lhs: commutator(s.get(mu, nu), &q[sigma]),
                    rhs: linear(q),
                });
            }
        }
    }
    for mu in 0..n {
        checks.push(Check {
            relation: "[d, p_m] = -p_m",
            indices: vec![mu],
            lhs: commutator(d, &p[mu]),
            rhs: -&p[mu],
        });
        checks.push(Check {
            relation: "[d, q_m] = q_m",
            indices: vec![mu],
            lhs: commutator(d, &q[mu]),
            rhs: q[mu].clone(),
        });
        for nu in 0..n {
            let d_term = scaled(g.get(mu, nu), d).unwrap_or_else(|| zero.clone());
            checks.push(Check {
                relation: "[q_m, p_n] = 2(g_mn d + s_mn)",
                indices: vec![mu, nu],
                lhs: commutator(&q[mu], &p[nu]),
                rhs: (&d_term + s.get(mu, nu)).scale_rational(&int(2)),
            });
            checks.push(Check {
                relation: "[p_m, p_n] = 0",
                indices: vec![mu, nu],
                lhs: commutator(&p[mu], &p[nu]),
                rhs: zero.clone(),
            });
            checks.push(Check {
                relation: "[q_m, q_n] = 0",
                indices: vec![mu, nu],
                lhs: commutator(&q[mu], &q[nu]),
                rhs: zero.clone(),
            });
            checks.push(Check {
                relation: "[d, s_mn] = 0",
                indices: vec![mu, nu],
                lhs: commutator(d, s.get(mu, nu)),
                rhs: zero.clone(),
            });
        }
    }
    checks.push(Check {
        relation: "[d, d] = 0",
        indices: vec![],
        lhs: commutator(d, d),
        rhs: zero,
    });
    Ok(run_checks(
        &format!("conformal(base {})", base.index()),
        &Describer::new(&gens.ambient),
        checks,
        started,
    ))
}

/// Ambient spin operators restricted to base indices satisfy the Lorentz
/// relation with the base metric.
pub fn reduced_spin(base: &AlgebraLevel) -> Result<VerificationReport> {
    let started = Instant::now();
    let gens = conformal_generators(base)?;
    let checks = lorentz_checks(
        &gens.metric,
        &gens.s,
        "restricted [s_mn, s_rs] Lorentz relation",
    );
    Ok(run_checks(
        &format!("reduced(base {})", base.index()),
        &Describer::new(&gens.ambient),
        checks,
        started,
    ))
}

/// A named Lie-algebra element.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedOperator {
    pub name: String,
    pub matrix: BicMatrix,
}

/// Exact row-reduced span of flattened matrices.
#[derive(Default)]
pub struct Span {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
        v
    }

    /// Adds `m` to the span; returns whether the rank grew.
    pub fn insert(&mut self, m: &BicMatrix) -> bool {
        let v = self.reduce(m.flatten());
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = v[pivot].clone();
        let v: Vec<Rational> = v.into_iter().map(|x| x / &lead).collect();
        // keep rows fully reduced against the new pivot
        for (_, row) in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !r.is_zero() {
                        *x -= &factor * r;
                    }
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }

    pub fn contains(&self, m: &BicMatrix) -> bool {
        self.reduce(m.flatten()).iter().all(Zero::is_zero)
    }
}

/// The conformal algebra `g = {s_{μν}, p_μ, q_μ, d}` and the isotropy
/// subalgebra `h = {s_{μν}, q_μ, d}`, after checking that `h` closes.
pub fn homogeneous_split(base: &AlgebraLevel) -> Result<(Vec<NamedOperator>, Vec<NamedOperator>)> {
    let gens = conformal_generators(base)?;
    let n = gens.n();
    let named = |name: String, m: &BicMatrix| NamedOperator {
        name,
        matrix: m.clone(),
    };
    let spins: Vec<NamedOperator> = (0..n)
        .flat_map(|mu| ((mu + 1)..n).map(move |nu| (mu, nu)))
        .map(|(mu, nu)| named(format!("s_{mu}{nu}"), gens.s.get(mu, nu)))
        .collect();
    let ps: Vec<NamedOperator> = (0..n)
        .map(|mu| named(format!("p_{mu}"), &gens.p[mu]))
        .collect();
    let qs: Vec<NamedOperator> = (0..n)
        .map(|mu| named(format!("q_{mu}"), &gens.q[mu]))
        .collect();
    let d = named("d".into(), &gens.d);

    let h: Vec<NamedOperator> = spins
        .iter()
        .chain(&qs)
        .chain(std::iter::once(&d))
        .cloned()
        .collect();
    let g: Vec<NamedOperator> = spins
        .iter()
        .chain(&ps)
        .chain(&qs)
        .chain(std::iter::once(&d))
        .cloned()
        .collect();

    let mut span = Span::new();
    for op in &h {
        span.insert(&op.matrix);
    }
    if span.rank() != h.len() {
        return Err(Error::NotClosed(format!(
            "h elements are linearly dependent (rank {} of {})",
            span.rank(),
            h.len()
        )));
    }
    let failure = h
        .par_iter()
        .enumerate()
        .flat_map_iter(|(a, x)| h[a + 1..].iter().map(move |y| (x, y)))
        .find_any(|(x, y)| !span.contains(&commutator(&x.matrix, &y.matrix)));
    if let Some((x, y)) = failure {
        return Err(Error::NotClosed(format!(
            "[{}, {}] leaves span(h)",
            x.name, y.name
        )));
    }
    Ok((g, h))
}
