// Reduced norms of diagonal elements over Q(zeta_p)(c): the displayed
// matrix, its actual norm, and a corrected witness with norm c.

use std::error::Error;

use pforge::split::{nrd_report, nrd_trials};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for p in [3, 5] {
        let r = nrd_report(p)?;
        println!("p = {p}");
        println!("  displayed matrix diag({})", r.stated_entries.join(", "));
        println!(
            "  its reduced norm {} (equals c: {})",
            r.stated_value, r.stated_value_is_c
        );
        println!(
            "  corrected witness diag({}) has norm {}",
            r.witness_entries.join(", "),
            r.witness_value
        );
        let trials = nrd_trials(p, 100, 1729)?;
        println!("  {}: {}", trials.name, trials.passed);
        if !(r.passed() && trials.passed) {
            return Err(format!("reduced norm checks fail at p = {p}").into());
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
