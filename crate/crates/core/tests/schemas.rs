use jsonschema::{Registry, Validator};
use pforge::cli::invoke;
use serde_json::Value;

const REPORT: &str = include_str!("../../../docs/schemas/report.schema.json");
const CN_RECORD: &str = include_str!("../../../docs/schemas/cn-record.schema.json");
const WITNESS: &str = include_str!("../../../docs/schemas/witness.schema.json");
const BASE: &str = "https://pforge.invalid/schemas/";

fn json(s: &str) -> Value {
    serde_json::from_str(s).expect("valid JSON")
}

fn validator(schema: &str) -> Validator {
    let registry = Registry::new()
        .add(format!("{BASE}witness.schema.json"), json(WITNESS))
        .unwrap()
        .prepare()
        .unwrap();
    jsonschema::options()
        .with_registry(&registry)
        .build(&json(schema))
        .expect("schema compiles")
}

fn assert_valid(v: &Validator, doc: &Value, what: &str) {
    let errors: Vec<String> = v
        .iter_errors(doc)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{what}: {errors:?}");
}

fn run(args: &[&str]) -> (i32, Value) {
    let inv = invoke(std::iter::once("pforge").chain(args.iter().copied()));
    let out = if inv.stdout.is_empty() {
        &inv.stderr
    } else {
        &inv.stdout
    };
    let start = out
        .find('{')
        .unwrap_or_else(|| panic!("{args:?}: no JSON in {out:?}"));
    (inv.code, json(&out[start..]))
}

#[test]
fn reports_validate() {
    let report = validator(REPORT);
    let witness = "fixtures/witnesses/twist_a1_a2.json";
    let broken = "fixtures/witnesses/broken_twist_a1_a2.json";
    let cases: &[&[&str]] = &[
        &["build-cn", "2", "--matrix"],
        &["verify", "cn-steps", "--n", "2"],
        &["verify", "theta", "--n", "1"],
        &["verify", "census", "--p", "3"],
        &["verify", "nrd", "--p", "3", "--trials", "5"],
        &[
            "chain",
            "--presentation",
            "a1,a2,a3",
            "--step",
            "1,2",
            "--witness",
            witness,
        ],
        &[
            "chain",
            "--presentation",
            "a1,a2,a3",
            "--step",
            "1,2",
            "--witness",
            broken,
        ],
        &["reproduce", "--suite", "dispatcher"],
        &["build-cn", "9"],
    ];
    for args in cases {
        let (code, doc) = run(args);
        assert!([0, 1, 2].contains(&code), "{args:?} exited {code}");
        assert_valid(&report, &doc, &format!("{args:?}"));
    }
}

#[test]
fn cn_record_validates() {
    let record = validator(CN_RECORD);
    for args in [["build-cn", "1", "--matrix"], ["build-cn", "2", "--matrix"]] {
        let (code, doc) = run(&args);
        assert_eq!(code, 0);
        assert_valid(&record, &doc["data"], &format!("{args:?}"));
    }
    let (_, doc) = run(&["build-cn", "2"]);
    assert_valid(&record, &doc["data"], "without matrix");
}

#[test]
fn witness_fixtures_validate() {
    let schema = validator(WITNESS);
    for entry in std::fs::read_dir("fixtures/witnesses").unwrap() {
        let path = entry.unwrap().path();
        let doc = json(&std::fs::read_to_string(&path).unwrap());
        assert_valid(&schema, &doc, &path.display().to_string());
    }
    assert!(!schema.is_valid(
        &serde_json::json!({"matrix": [[1]], "source": {"diag": ["1"]}, "target": null})
    ));
}
