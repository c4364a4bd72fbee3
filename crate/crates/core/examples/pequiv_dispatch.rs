// Expand simple P-equivalence steps on a three-slot presentation into the
// slot rewrites, transpositions and interchanges that realize them on psi.

use std::error::Error;

use pforge::chains::{apply_moves, dispatch_pequiv_move, expected_final, Presentation};
use pforge::expr::exprs_from_strs;
use pforge::qforms::CongruenceWitness;

fn witness(name: &str) -> Result<CongruenceWitness, Box<dyn Error>> {
    let path = format!(
        "{}/fixtures/witnesses/{name}.json",
        env!("CARGO_MANIFEST_DIR")
    );
    let text = std::fs::read_to_string(path)?;
    Ok(CongruenceWitness::from_json(&serde_json::from_str(&text)?)?)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = Presentation(exprs_from_strs(&["a1", "a2", "a3"])?);
    for (i, j, file) in [
        (1, 2, "identity_a1_a2"),
        (1, 2, "twist_a1_a2"),
        (1, 3, "twist_a1_a3"),
        (2, 3, "twist_a2_a3"),
    ] {
        let w = witness(file)?;
        let (case, moves) = dispatch_pequiv_move(&p, i, j, &w)?;
        let labels: Vec<&str> = moves.iter().map(|m| m.label).collect();
        let reached = apply_moves(&p, &moves)?;
        let new = w
            .target()
            .pfister_params()
            .ok_or("witness target has no parameters")?;
        let expected = expected_final(&p, i, j, (&new[0], &new[1]));
        println!("({i},{j}) {file}: case {case:?}, moves {labels:?}");
        println!("    final presentation {:?}", reached.strings());
        if reached != expected {
            return Err(format!("step ({i},{j}) lands on the wrong presentation").into());
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
