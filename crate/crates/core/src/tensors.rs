//! Metric and spin tensors of a tower level, and their symbolic rendering.
//!
//! The real product `(a b̄ + b ā)/2` of two basis elements is a real multiple
//! of the identity and yields the metric `g_{μν}`; the wedge
//! `(a b̄ - b ā)/2` yields the spin tensor `σ_{μν}`, with spin operators
//! `s_{μν} = σ_{μν}/2`.
//!
//! Each σ entry is ± a product of primitive units. [`Dictionary`] enumerates
//! the signed products of up to `cap` distinct primitives from a
//! [`Vocabulary`], shortest first and lexicographic within a length, and
//! [`decompose`] returns the first match.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bicomplex::{rat, Bicomplex, Rational};
use crate::error::{Error, Result};
use crate::matrix::BicMatrix;
use crate::tower::AlgebraLevel;

/// `hm_as_scalar((a b̄ + b ā)/2)`.
pub fn real_product(a: &BicMatrix, b: &BicMatrix) -> Result<Bicomplex> {
    let sum = a
        .checked_mul(&b.bar())?
        .checked_add(&b.checked_mul(&a.bar())?)?;
    sum.scale_rational(&rat(1, 2)).as_scalar()
}

/// `(a b̄ - b ā)/2`.
pub fn wedge(a: &BicMatrix, b: &BicMatrix) -> Result<BicMatrix> {
    let diff = a
        .checked_mul(&b.bar())?
        .checked_sub(&b.checked_mul(&a.bar())?)?;
    Ok(diff.scale_rational(&rat(1, 2)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricTable {
    pub level: usize,
    pub entries: Vec<Vec<Rational>>,
}

impl MetricTable {
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, mu: usize, nu: usize) -> &Rational {
        &self.entries[mu][nu]
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.n()).map(|k| self.entries[k][k].clone()).collect()
    }

    /// `(plus, minus)` counts of the diagonal.
    pub fn signature(&self) -> (usize, usize) {
        let d = self.diagonal();
        (
            d.iter().filter(|x| x.is_positive()).count(),
            d.iter().filter(|x| x.is_negative()).count(),
        )
    }

    pub fn is_diagonal_unit(&self) -> bool {
        let n = self.n();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let g = self.get(a, b);
                if a == b {
                    g.abs().is_one()
                } else {
                    g.is_zero()
                }
            })
        })
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }
}

/// `g_{μν}` over the paravector basis `(1, e_k)`.
pub fn metric(level: &AlgebraLevel) -> Result<MetricTable> {
    let basis = level.basis();
    let n = basis.len();
    let entries = (0..n)
        .map(|mu| {
            (0..n)
                .map(|nu| {
                    let g = real_product(&basis[mu], &basis[nu]).map_err(|_| Error::NotScalar {
                        context: Some(format!("real product of e_{mu} and e_{nu}")),
                    })?;
                    if g.is_real() {
                        Ok(g.re)
                    } else {
                        Err(Error::NotScalar {
                            context: Some(format!("real product of e_{mu} and e_{nu} is {g}")),
                        })
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MetricTable {
        level: level.index(),
        entries,
    })
}

/// n×n table of matrices indexed by paravector basis pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinTable {
    pub level: usize,
    pub entries: Vec<Vec<BicMatrix>>,
}

impl SpinTable {
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, mu: usize, nu: usize) -> &BicMatrix {
        &self.entries[mu][nu]
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.n();
        (0..n)
            .all(|a| self.get(a, a).is_zero() && (0..n).all(|b| self.get(a, b) == &-self.get(b, a)))
    }

    fn map(&self, f: impl Fn(&BicMatrix) -> BicMatrix + Sync) -> Self {
        let entries = self
            .entries
            .par_iter()
            .map(|row| row.iter().map(&f).collect())
            .collect();
        Self {
            level: self.level,
            entries,
        }
    }
}

/// `σ_{μν}` for every basis pair.
pub fn spin_tensor(level: &AlgebraLevel) -> SpinTable {
    let basis = level.basis();
    let n = basis.len();
    let entries = (0..n)
        .into_par_iter()
        .map(|mu| {
            (0..n)
                .map(|nu| wedge(&basis[mu], &basis[nu]).expect("basis elements share a dimension"))
                .collect()
        })
        .collect();
    SpinTable {
        level: level.index(),
        entries,
    }
}

/// `s_{μν} = σ_{μν} / 2`.
pub fn spin_ops(level: &AlgebraLevel) -> SpinTable {
    spin_tensor(level).map(|m| m.scale_rational(&rat(1, 2)))
}

/// True when some entry has a nonzero `j` or `ij` component.
pub fn involves_j(m: &BicMatrix) -> bool {
    m.entries()
        .iter()
        .any(|e| !e.im_j.is_zero() || !e.im_ij.is_zero())
}

/// Primitive symbols a word is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unit {
    /// Scalar unit `i`.
    I,
    /// Scalar unit `j`.
    J,
    /// Block unit `ı` at tensor depth `d` (0 is the outermost 2x2 factor).
    BlockI(usize),
    /// Block unit `ȷ` at tensor depth `d`.
    BlockJ(usize),
    /// `I_2 ⊗ e_k` with `e_k` a generator of the preceding level.
    Lifted(usize),
    /// Generator `e_k` of the level itself.
    Generator(usize),
}

impl Unit {
    pub fn symbol(&self) -> String {
        match *self {
            Unit::I => "i".into(),
            Unit::J => "j".into(),
            Unit::BlockI(0) => "ı".into(),
            Unit::BlockJ(0) => "ȷ".into(),
            Unit::BlockI(d) => format!("ı{d}"),
            Unit::BlockJ(d) => format!("ȷ{d}"),
            Unit::Lifted(k) | Unit::Generator(k) => format!("e_{k}"),
        }
    }

    /// Matrix of the unit at `level`.
    pub fn matrix(&self, level: &AlgebraLevel) -> Result<BicMatrix> {
        let dim = level.dim();
        let l = level.index();
        let block = |unit: BicMatrix, depth: usize| -> Result<BicMatrix> {
            if depth >= l {
                return Err(Error::InvalidArgument(format!(
                    "block depth {depth} does not exist at level {l}"
                )));
            }
            let outer = BicMatrix::identity(1 << depth);
            let inner = BicMatrix::identity(1 << (l - 1 - depth));
            Ok(outer.kron(&unit).kron(&inner))
        };
        match *self {
            Unit::I => Ok(BicMatrix::scalar(dim, Bicomplex::i())),
            Unit::J => Ok(BicMatrix::scalar(dim, Bicomplex::j())),
            Unit::BlockI(d) => block(BicMatrix::imath(), d),
            Unit::BlockJ(d) => block(BicMatrix::jmath(), d),
            Unit::Lifted(k) => {
                if l == 0 {
                    return Err(Error::InvalidArgument(
                        "level 0 has no preceding level".into(),
                    ));
                }
                let prev = AlgebraLevel::at(l - 1);
                if k == 0 || k >= prev.n() {
                    return Err(Error::InvalidArgument(format!(
                        "no generator e_{k} at level {}",
                        l - 1
                    )));
                }
                Ok(BicMatrix::identity(2).kron(prev.generator(k)))
            }
            Unit::Generator(k) => {
                if k == 0 || k >= level.n() {
                    return Err(Error::InvalidArgument(format!(
                        "no generator e_{k} at level {l}"
                    )));
                }
                Ok(level.generator(k).clone())
            }
        }
    }
}

/// Symbol sets used for decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Vocabulary {
    /// `{j, e_1, .., e_{n-1}}` with the level's own generators.
    Generators,
    /// `{i, j, ı, ȷ, E_1, .., E_{n-3}}`: scalar units, outer block units and
    /// lifted generators of the preceding level.
    Lifted,
    /// `{i, j}` plus `ı, ȷ` at every tensor depth, down to level 0.
    Unrolled,
}

impl Vocabulary {
    /// Generators for levels 0 and 1, lifted above.
    pub fn default_for(level: usize) -> Self {
        if level <= 1 {
            Vocabulary::Generators
        } else {
            Vocabulary::Lifted
        }
    }

    /// The ordered primitive list at `level`; order defines canonical factor
    /// order.
    pub fn units(&self, level: usize) -> Vec<Unit> {
        let n = 2 * level + 2;
        match self {
            Vocabulary::Generators => std::iter::once(Unit::J)
                .chain((1..n).map(Unit::Generator))
                .collect(),
            Vocabulary::Lifted => {
                let mut units = vec![Unit::I, Unit::J];
                if level > 0 {
                    units.extend([Unit::BlockI(0), Unit::BlockJ(0)]);
                    units.extend((1..n - 2).map(Unit::Lifted));
                }
                units
            }
            Vocabulary::Unrolled => {
                let mut units = vec![Unit::I, Unit::J];
                for d in 0..level {
                    units.extend([Unit::BlockI(d), Unit::BlockJ(d)]);
                }
                units
            }
        }
    }
}

impl std::str::FromStr for Vocabulary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generators" => Ok(Vocabulary::Generators),
            "lifted" => Ok(Vocabulary::Lifted),
            "unrolled" => Ok(Vocabulary::Unrolled),
            other => Err(Error::InvalidArgument(format!(
                "unknown vocabulary '{other}'"
            ))),
        }
    }
}

/// Signed product of distinct primitives in canonical order; the empty word
/// is `±I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitWord {
    pub sign: i8,
    pub factors: Vec<Unit>,
}

impl UnitWord {
    pub fn new(sign: i8, factors: Vec<Unit>) -> Self {
        Self { sign, factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn negated(&self) -> Self {
        Self::new(-self.sign, self.factors.clone())
    }

    /// Evaluates the product left to right at `level`.
    pub fn evaluate(&self, level: &AlgebraLevel) -> Result<BicMatrix> {
        let mut m = BicMatrix::identity(level.dim());
        for u in &self.factors {
            m = m.checked_mul(&u.matrix(level)?)?;
        }
        if self.sign < 0 {
            m = -&m;
        }
        Ok(m)
    }

    pub fn symbols(&self) -> Vec<String> {
        self.factors.iter().map(Unit::symbol).collect()
    }
}

impl fmt::Display for UnitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            f.write_str("-")?;
        }
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for s in self.symbols() {
            f.write_str(&s)?;
        }
        Ok(())
    }
}

/// JSON form of a table entry; zero entries carry `sign = 0` and no factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordJson {
    pub sign: i8,
    pub factors: Vec<String>,
}

impl From<Option<&UnitWord>> for WordJson {
    fn from(w: Option<&UnitWord>) -> Self {
        match w {
            Some(w) => WordJson {
                sign: w.sign,
                factors: w.symbols(),
            },
            None => WordJson {
                sign: 0,
                factors: Vec::new(),
            },
        }
    }
}

/// Sign-normalized key: the matrix scaled so that its first nonzero
/// coefficient is positive.
fn normalize(m: &BicMatrix) -> (BicMatrix, i8) {
    let first_negative = m
        .flatten()
        .into_iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative());
    if first_negative {
        (-m, -1)
    } else {
        (m.clone(), 1)
    }
}

/// All signed unit words of a vocabulary up to a length cap, with lookup by
/// matrix.
pub struct Dictionary {
    level: usize,
    vocabulary: Vocabulary,
    cap: usize,
    words: Vec<(UnitWord, BicMatrix)>,
    index: HashMap<BicMatrix, usize>,
    collisions: Vec<Vec<UnitWord>>,
}

impl Dictionary {
    pub fn new(level: &AlgebraLevel, vocabulary: Vocabulary, cap: usize) -> Result<Self> {
        let units = vocabulary.units(level.index());
        let mats = units
            .iter()
            .map(|u| u.matrix(level))
            .collect::<Result<Vec<_>>>()?;

        // combinations in (length, lexicographic) order
        let mut combos: Vec<Vec<usize>> = vec![Vec::new()];
        let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..cap.min(units.len()) {
            let mut next = Vec::new();
            for c in &frontier {
                let start = c.last().map_or(0, |&x| x + 1);
                for k in start..units.len() {
                    let mut w = c.clone();
                    w.push(k);
                    next.push(w);
                }
            }
            combos.extend(next.iter().cloned());
            frontier = next;
        }

        let words: Vec<(UnitWord, BicMatrix)> = combos
            .par_iter()
            .map(|c| {
                let mut m = BicMatrix::identity(level.dim());
                for &k in c {
                    m = &m * &mats[k];
                }
                let word = UnitWord::new(1, c.iter().map(|&k| units[k]).collect());
                (word, m)
            })
            .collect();

        let mut index = HashMap::new();
        let mut groups: HashMap<usize, Vec<UnitWord>> = HashMap::new();
        for (pos, (word, m)) in words.iter().enumerate() {
            let (key, sign) = normalize(m);
            match index.get(&key) {
                Some(&first) => {
                    let w = if sign < 0 {
                        word.negated()
                    } else {
                        word.clone()
                    };
                    groups.entry(first).or_default().push(w);
                }
                None => {
                    index.insert(key, pos);
                }
            }
        }
        let mut collisions: Vec<(usize, Vec<UnitWord>)> = groups.into_iter().collect();
        collisions.sort_by_key(|(k, _)| *k);
        let collisions = collisions
            .into_iter()
            .map(|(first, mut rest)| {
                let head = if normalize(&words[first].1).1 < 0 {
                    words[first].0.negated()
                } else {
                    words[first].0.clone()
                };
                rest.insert(0, head);
                rest
            })
            .collect();

        Ok(Self {
            level: level.index(),
            vocabulary,
            cap,
            words,
            index,
            collisions,
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn vocabulary(&self) -> Vocabulary {
        self.vocabulary
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Every enumerated (unsigned) word with its matrix, in search order.
    pub fn words(&self) -> &[(UnitWord, BicMatrix)] {
        &self.words
    }

    /// Groups of words that evaluate to the same matrix up to sign. Within a
    /// group the first word is the one [`Dictionary::decompose`] returns;
    /// signs are relative to the sign-normalized matrix.
    pub fn collisions(&self) -> &[Vec<UnitWord>] {
        &self.collisions
    }

    /// Shortest, then lexicographically first, signed word equal to `m`.
    pub fn decompose(&self, m: &BicMatrix) -> Result<UnitWord> {
        let (key, sign) = normalize(m);
        let &pos = self
            .index
            .get(&key)
            .ok_or(Error::NoMatch { cap: self.cap })?;
        let (word, wm) = &self.words[pos];
        let word_sign = normalize(wm).1;
        Ok(UnitWord::new(sign * word_sign, word.factors.clone()))
    }
}

/// One-shot decomposition; builds a dictionary each call.
pub fn decompose(
    m: &BicMatrix,
    level: &AlgebraLevel,
    vocabulary: Vocabulary,
    cap: usize,
) -> Result<UnitWord> {
    Dictionary::new(level, vocabulary, cap)?.decompose(m)
}

/// Symbolic σ table: `None` marks zero entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicTable {
    pub level: usize,
    pub vocabulary: Vocabulary,
    pub entries: Vec<Vec<Option<UnitWord>>>,
}

pub fn symbolic_spin_table(
    level: &AlgebraLevel,
    vocabulary: Vocabulary,
    cap: usize,
) -> Result<SymbolicTable> {
    let dict = Dictionary::new(level, vocabulary, cap)?;
    let sigma = spin_tensor(level);
    let entries = sigma
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|m| {
                    if m.is_zero() {
                        Ok(None)
                    } else {
                        dict.decompose(m).map(Some)
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SymbolicTable {
        level: level.index(),
        vocabulary,
        entries,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Json,
}

/// JSON table document: `{ level, n, metric, sigma }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableDocument {
    pub level: usize,
    pub n: usize,
    pub metric: Vec<Vec<serde_json::Value>>,
    pub sigma: Vec<Vec<WordJson>>,
}

pub fn rational_json(r: &Rational) -> serde_json::Value {
    if r.is_integer() {
        if let Some(v) = r.to_integer().to_i64() {
            return serde_json::Value::from(v);
        }
    }
    serde_json::Value::from(r.to_f64().unwrap_or(f64::NAN))
}

pub fn table_document(
    level: &AlgebraLevel,
    vocabulary: Vocabulary,
    cap: usize,
) -> Result<TableDocument> {
    let g = metric(level)?;
    let table = symbolic_spin_table(level, vocabulary, cap)?;
    Ok(TableDocument {
        level: level.index(),
        n: level.n(),
        metric: g
            .entries
            .iter()
            .map(|row| row.iter().map(rational_json).collect())
            .collect(),
        sigma: table
            .entries
            .iter()
            .map(|row| row.iter().map(|w| WordJson::from(w.as_ref())).collect())
            .collect(),
    })
}

/// Renders metric and symbolic σ table as text or JSON.
pub fn render_table(
    level: &AlgebraLevel,
    format: TableFormat,
    vocabulary: Vocabulary,
    cap: usize,
) -> Result<String> {
    let doc = table_document(level, vocabulary, cap)?;
    match format {
        TableFormat::Json => Ok(serde_json::to_string_pretty(&doc).expect("table serializes")),
        TableFormat::Text => {
            let table = symbolic_spin_table(level, vocabulary, cap)?;
            let cells: Vec<Vec<String>> = table
                .entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|w| {
                            w.as_ref()
                                .map_or_else(|| "0".to_string(), |w| w.to_string())
                        })
                        .collect()
                })
                .collect();
            let width = cells
                .iter()
                .flatten()
                .map(|c| c.chars().count())
                .max()
                .unwrap_or(1);
            let diag: Vec<String> = metric(level)?
                .diagonal()
                .iter()
                .map(|g| g.to_string())
                .collect();
            let mut out = format!(
                "level {}  n = {}  vocabulary = {:?}\nmetric diag({})\nsigma:\n",
                level.index(),
                level.n(),
                vocabulary,
                diag.join(", ")
            );
            for row in cells {
                let padded: Vec<String> = row
                    .iter()
                    .map(|c| format!("{c:>width$}", width = width))
                    .collect();
                out.push_str("  ");
                out.push_str(padded.join("  ").trim_end());
                out.push('\n');
            }
            Ok(out)
        }
    }
}
