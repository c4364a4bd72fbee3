// Pfister forms, the subform psi, and congruence witnesses read from JSON.

use std::error::Error;

use pforge::chains::twist_witness;
use pforge::expr::{exprs_from_strs, print_canonical};
use pforge::qforms::{pfister, qform_eval, subform_psi, CongruenceWitness};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let params = exprs_from_strs(&["a1", "a2"])?;
    let phi = pfister(&params)?;
    let diag: Vec<String> = phi.diag().iter().map(print_canonical).collect();
    println!("<<a1, a2>> = <{}>", diag.join(", "));

    let x = exprs_from_strs(&["x1", "x2", "x3", "x4"])?;
    println!("phi(x) = {}", print_canonical(&qform_eval(&phi, &x)?));

    let psi = subform_psi(&exprs_from_strs(&["a1", "a2", "a3"])?)?;
    println!("psi has dimension {}", psi.dim());

    let text = include_str!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/witnesses/twist_a1_a2.json"
    ));
    let w = CongruenceWitness::from_json(&serde_json::from_str(text)?)?;
    assert_eq!(w, twist_witness(&params[0], &params[1])?);
    let back = w.inverse()?;
    println!(
        "twist witness verified; inverse maps <<a1, -a1*a2>> back: {}",
        back.target() == w.source()
    );

    let broken = include_str!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/witnesses/broken_twist_a1_a2.json"
    ));
    match CongruenceWitness::from_json(&serde_json::from_str(broken)?) {
        Ok(_) => return Err("broken witness was accepted".into()),
        Err(e) => println!("broken witness rejected: {e}"),
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
