// Drive the command line in-process and read its JSON reports.

use std::error::Error;

use pforge::cli::{invoke, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let census = invoke(["pforge", "verify", "census", "--p", "3"]);
    let report: serde_json::Value = serde_json::from_str(&census.stdout)?;
    println!(
        "verify census --p 3 -> exit {}, counts {}",
        census.code, report["data"]["counts"]
    );
    assert_eq!(census.code, EXIT_OK);

    let text = invoke([
        "pforge",
        "--format",
        "text",
        "verify",
        "rank1",
        "--n",
        "4",
        "--symbolic",
    ]);
    print!("{}", text.stdout);

    let usage = invoke(["pforge", "build-cn", "0"]);
    println!("build-cn 0 -> exit {}: {}", usage.code, usage.stderr.trim());
    assert_eq!(usage.code, EXIT_USAGE);

    let witness = format!(
        "{}/fixtures/witnesses/broken_twist_a1_a2.json",
        env!("CARGO_MANIFEST_DIR")
    );
    let bad = invoke([
        "pforge",
        "chain",
        "--presentation",
        "a1,a2,a3",
        "--step",
        "1,2",
        "--witness",
        &witness,
    ]);
    println!("chain with a broken witness -> exit {}", bad.code);
    assert_eq!(bad.code, EXIT_VERIFY);

    let suite = invoke([
        "pforge",
        "--format",
        "text",
        "reproduce",
        "--suite",
        "dispatcher",
    ]);
    println!("{}", suite.stdout.lines().next().unwrap_or(""));
    assert_eq!(suite.code, EXIT_OK);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
