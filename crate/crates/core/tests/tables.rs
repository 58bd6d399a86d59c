mod common;

use common::*;
use confnum::tensors::{render_table, symbolic_spin_table, table_document, TableFormat};
use confnum::{spin_tensor, AlgebraLevel, Unit, Vocabulary};

fn check_printed<const N: usize>(
    level: usize,
    rows: &[[&'static str; N]; N],
    vocab: Vocabulary,
    generator: fn(usize) -> Unit,
) {
    let level = AlgebraLevel::at(level);
    let sigma = spin_tensor(&level);
    let table = symbolic_spin_table(&level, vocab, 4).unwrap();
    for (mu, row) in rows.iter().enumerate() {
        for (nu, printed) in row.iter().enumerate() {
            let want = parse_word(printed, generator);
            assert_eq!(
                &evaluate(&want, &level),
                sigma.get(mu, nu),
                "value at ({mu},{nu})"
            );
            let got = &table.entries[mu][nu];
            match (&want, got) {
                (None, None) => {}
                (Some(w), Some(g)) => {
                    assert_eq!(w.sign, g.sign, "sign at ({mu},{nu})");
                    assert_eq!(factor_set(w), factor_set(g), "factors at ({mu},{nu})");
                }
                _ => panic!("zero pattern differs at ({mu},{nu})"),
            }
        }
    }
}

#[test]
fn level_tables_in_default_vocabularies() {
    check_printed(0, &SIGMA_LEVEL0, Vocabulary::Generators, Unit::Generator);
    check_printed(1, &SIGMA_LEVEL1, Vocabulary::Generators, Unit::Generator);
    check_printed(2, &SIGMA_LEVEL2, Vocabulary::Lifted, Unit::Lifted);
}

/// At level 1 the lifted base generator is the scalar `i`, so printed words
/// such as `ıie_1` shorten; only values are compared here.
#[test]
fn level1_table_over_the_base_generator() {
    let level = AlgebraLevel::at(1);
    let sigma = spin_tensor(&level);
    let table = symbolic_spin_table(&level, Vocabulary::Lifted, 4).unwrap();
    for (mu, row) in SIGMA_LEVEL1_LIFTED.iter().enumerate() {
        for (nu, printed) in row.iter().enumerate() {
            let want = evaluate(&parse_word(printed, Unit::Lifted), &level);
            assert_eq!(&want, sigma.get(mu, nu), "value at ({mu},{nu})");
            assert_eq!(evaluate(&table.entries[mu][nu], &level), want);
        }
    }
    assert_eq!(
        Unit::Lifted(1).matrix(&level).unwrap(),
        Unit::I.matrix(&level).unwrap()
    );
}

#[test]
fn unrolled_vocabulary_reaches_every_entry() {
    for l in 0..=3 {
        let level = AlgebraLevel::at(l);
        let table = symbolic_spin_table(&level, Vocabulary::Unrolled, 2 * l + 2).unwrap();
        let sigma = spin_tensor(&level);
        for mu in 0..level.n() {
            for nu in 0..level.n() {
                assert_eq!(&evaluate(&table.entries[mu][nu], &level), sigma.get(mu, nu));
            }
        }
    }
}

#[test]
fn text_rendering_level0() {
    let text = render_table(
        &AlgebraLevel::at(0),
        TableFormat::Text,
        Vocabulary::Generators,
        4,
    )
    .unwrap();
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip_while(|l| !l.starts_with("sigma"))
        .skip(1)
        .map(|l| l.split_whitespace().collect())
        .collect();
    assert_eq!(rows, vec![vec!["0", "-e_1"], vec!["e_1", "0"]]);
    assert!(text.contains("metric diag(1, 1)"));
}

#[test]
fn json_document_schema() {
    let doc = table_document(&AlgebraLevel::at(1), Vocabulary::Generators, 4).unwrap();
    let v = serde_json::to_value(&doc).unwrap();
    assert_eq!(v["level"], 1);
    assert_eq!(v["n"], 4);
    assert_eq!(v["metric"][3][3], -1);
    assert_eq!(v["metric"][0][1], 0);
    assert_eq!(
        v["sigma"][1][2],
        serde_json::json!({"sign": -1, "factors": ["j", "e_3"]})
    );
    assert_eq!(
        v["sigma"][2][2],
        serde_json::json!({"sign": 0, "factors": []})
    );
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 4);
}
