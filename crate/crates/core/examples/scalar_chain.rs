// The scalar chain phi(x) - b phi(x0) y^2 to phi(x') - b y'^2, at a generic
// point and at specific ones.

use std::error::Error;

use pforge::algebra::Var;
use pforge::chains::build_scalar_chain;
use pforge::expr::{exprs_from_strs, print_canonical};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let params = exprs_from_strs(&["a1", "a2"])?;
    let b = exprs_from_strs(&["b"])?.remove(0);
    let generic = build_scalar_chain(&params, &b, None)?;
    println!(
        "generic multiplier {}",
        print_canonical(&generic.composed_multiplier)
    );

    let ones = exprs_from_strs(&["1", "1", "1", "1"])?;
    let at_ones = build_scalar_chain(&params, &b, Some(&ones))?;
    println!(
        "at (1, 1, 1, 1): {}",
        print_canonical(&at_ones.composed_multiplier)
    );

    let e1 = exprs_from_strs(&["1", "0"])?;
    let small = build_scalar_chain(&params[..1], &b, Some(&e1))?;
    let image = |v: &str| {
        small
            .composed
            .image(Var::named(v))
            .map(|e| print_canonical(&e))
    };
    println!(
        "dimension 2 at e1: xp1 -> {:?}, xp2 -> {:?}",
        image("xp1"),
        image("xp2")
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
