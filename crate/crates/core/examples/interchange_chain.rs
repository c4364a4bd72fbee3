// The birational chain from phi(x) - b phi(y) - c z^2 to
// phi(x'') - c phi(y') - b z'^2, and its round trip.

use std::error::Error;

use pforge::algebra::RatFunc;
use pforge::chains::{build_interchange_chain, interchange_round_trip};
use pforge::expr::{print_canonical, print_poly};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let params = vec![RatFunc::named("a1")];
    let (b, c) = (RatFunc::named("b"), RatFunc::named("c"));
    let chain = build_interchange_chain(&params, &b, &c)?;
    for step in &chain.steps {
        println!(
            "{}  ->  {}",
            print_poly(&step.from.equation),
            print_poly(&step.to.equation)
        );
        println!("    multiplier {}", print_canonical(&step.multiplier));
    }
    println!(
        "composed multiplier {}",
        print_canonical(&chain.composed_multiplier)
    );

    let (round, same) = interchange_round_trip(&params, &b, &c)?;
    println!(
        "round trip: {} steps, back at the start: {same}",
        round.steps.len()
    );
    if !same {
        return Err("round trip does not return".into());
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
