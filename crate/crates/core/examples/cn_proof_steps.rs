// Replay the congruences that assemble C_n from C_{n-1}.

use std::error::Error;

use pforge::cn::verify_cn_steps;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for n in 2..=3 {
        let report = verify_cn_steps(n)?;
        println!("n = {n}");
        for c in report
            .steps
            .iter()
            .chain([&report.assembly])
            .chain(&report.expansion)
        {
            println!("  {} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
        }
        if !report.passed() {
            return Err(format!("step replay fails at n = {n}").into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
