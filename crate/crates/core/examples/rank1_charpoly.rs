// The characteristic polynomial of a rank-one matrix.

use std::error::Error;

use pforge::algebra::Var;
use pforge::cn::{rank1_charpoly, rank1_symbolic};
use pforge::expr::exprs_from_strs;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let x = Var::named("x");
    for n in 1..=5 {
        let (a, b) = rank1_symbolic(n);
        let r = rank1_charpoly(&a, &b, x)?;
        println!(
            "n = {n}: {} ({})",
            r.factored(x),
            if r.matches { "matches" } else { "MISMATCH" }
        );
        if !r.matches {
            return Err(format!("rank-1 identity fails at n = {n}").into());
        }
    }
    let a = exprs_from_strs(&["1/2", "-3", "4"])?;
    let b = exprs_from_strs(&["2", "1/3", "5/4"])?;
    let r = rank1_charpoly(&a, &b, x)?;
    println!("numeric: {}", r.factored(x));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
