mod common;

use common::{config, ratfunc_strategy};
use pforge::expr::{parse_expr, parse_ratfunc, print_canonical};
use proptest::prelude::*;

const VALID: &str = include_str!("../fixtures/expressions/valid.tsv");
const INVALID: &str = include_str!("../fixtures/expressions/invalid.txt");

#[test]
fn fixtures_print_as_recorded() {
    for line in VALID.lines() {
        let (input, canonical) = line.split_once('\t').expect("tab-separated fixture");
        let e = parse_ratfunc(input).unwrap_or_else(|err| panic!("{input}: {err}"));
        assert_eq!(print_canonical(&e), canonical, "input {input}");
    }
}

#[test]
fn fixtures_round_trip_exactly() {
    for line in VALID.lines() {
        let canonical = line.split_once('\t').unwrap().1;
        let again = parse_ratfunc(canonical).unwrap();
        assert_eq!(print_canonical(&again), canonical);
    }
}

#[test]
fn negative_corpus_is_rejected() {
    for input in INVALID.lines() {
        assert!(parse_ratfunc(input).is_err(), "{input:?} should not parse");
    }
}

#[test]
fn witness_fixtures_are_valid_json_forms() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/witnesses");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let parsed = pforge::qforms::CongruenceWitness::from_json(&v);
        let broken = path
            .file_name()
            .unwrap()
            .to_string_lossy()
            .starts_with("broken");
        assert_eq!(parsed.is_err(), broken, "{}", path.display());
    }
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn printed_values_parse_back(e in ratfunc_strategy()) {
        let printed = print_canonical(&e);
        let back = parse_ratfunc(&printed).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(print_canonical(&back), printed);
    }

    #[test]
    fn parser_never_panics(s in "[-+*/^() xyz0-9]{0,24}") {
        let _ = parse_expr(&s);
    }
}
