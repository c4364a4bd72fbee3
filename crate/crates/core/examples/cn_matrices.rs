// Build the similarity matrices C_1, C_2, C_3 and check that they realize
// the multiplicativity of the Pfister form.

use std::error::Error;

use pforge::cn::{build_cn, default_params, multiplicativity};
use pforge::expr::print_canonical;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for n in 1..=3 {
        let rec = build_cn(n, &default_params(n))?;
        let check = multiplicativity(&rec)?;
        let longest = rec
            .cn
            .entries()
            .iter()
            .map(|e| e.numer().len())
            .max()
            .unwrap_or(0);
        println!(
            "C_{n}: {dim}x{dim}, c = phi_{n}(x) has {} terms, longest numerator {longest} terms, {}: {}",
            rec.c.numer().len(),
            check.name,
            check.passed,
            dim = rec.cn.rows(),
        );
        if !check.passed {
            return Err(format!("multiplicativity fails at n = {n}").into());
        }
    }
    let c1 = build_cn(1, &default_params(1))?;
    for i in 0..2 {
        let row: Vec<String> = (0..2).map(|j| print_canonical(c1.cn.get(i, j))).collect();
        println!("  [{}]", row.join(", "));
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
