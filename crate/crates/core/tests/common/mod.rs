//! Shared fixtures for the integration tests.

#![allow(dead_code)]

use confnum::{AlgebraLevel, BicMatrix, Unit, UnitWord};

/// Published σ tables, written in their printed factor order. `e_k` means
/// the level's own generator for levels 0 and 1 and the lifted base
/// generator `I_2 ⊗ e_k` for level 2.
pub const SIGMA_LEVEL0: [[&str; 2]; 2] = [["0", "-e1"], ["e1", "0"]];

pub const SIGMA_LEVEL1: [[&str; 4]; 4] = [
    ["0", "-e1", "-e2", "-e3"],
    ["e1", "0", "-je3", "-je2"],
    ["e2", "je3", "0", "je1"],
    ["e3", "je2", "-je1", "0"],
];

/// Level 1 again, in terms of the block units and the base generator.
pub const SIGMA_LEVEL1_LIFTED: [[&str; 4]; 4] = [
    ["0", "-ıȷe1", "-iȷ", "-ıj"],
    ["ıȷe1", "0", "-ıie1", "-ȷje1"],
    ["iȷ", "ıie1", "0", "ıȷij"],
    ["ıj", "ȷje1", "-ıȷij", "0"],
];

pub const SIGMA_LEVEL2: [[&str; 6]; 6] = [
    ["0", "-ıȷe1", "-ıȷe2", "-ıȷe3", "-iȷ", "-ıj"],
    ["ıȷe1", "0", "-je3", "-je2", "-ıie1", "-ȷje1"],
    ["ıȷe2", "je3", "0", "je1", "-ıie2", "-ȷje2"],
    ["ıȷe3", "je2", "-je1", "0", "-ıie3", "-ȷje3"],
    ["iȷ", "ıie1", "ıie2", "ıie3", "0", "ıȷij"],
    ["ıj", "ȷje1", "ȷje2", "ȷje3", "-ıȷij", "0"],
];

/// Parses a printed entry; `None` for "0".
pub fn parse_word(s: &str, generator: fn(usize) -> Unit) -> Option<UnitWord> {
    if s == "0" {
        return None;
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let mut factors = Vec::new();
    let mut chars = body.chars().peekable();
    while let Some(c) = chars.next() {
        let unit = match c {
            'i' => Unit::I,
            'j' => Unit::J,
            'ı' => Unit::BlockI(0),
            'ȷ' => Unit::BlockJ(0),
            'e' => {
                let mut k = 0;
                while let Some(d) = chars.peek().and_then(|d| d.to_digit(10)) {
                    k = 10 * k + d as usize;
                    chars.next();
                }
                generator(k)
            }
            other => panic!("unexpected symbol {other:?} in {s:?}"),
        };
        factors.push(unit);
    }
    Some(UnitWord::new(sign, factors))
}

pub fn table_rows<const N: usize>(t: &[[&'static str; N]; N]) -> Vec<Vec<&'static str>> {
    t.iter().map(|r| r.to_vec()).collect()
}

/// Sorted factor list, for order-insensitive comparison.
pub fn factor_set(w: &UnitWord) -> Vec<Unit> {
    let mut f = w.factors.clone();
    f.sort();
    f
}

/// `m` as a matrix over the level, zero for `None`.
pub fn evaluate(word: &Option<UnitWord>, level: &AlgebraLevel) -> BicMatrix {
    match word {
        Some(w) => w.evaluate(level).expect("word evaluates"),
        None => BicMatrix::zeros(level.dim()),
    }
}
