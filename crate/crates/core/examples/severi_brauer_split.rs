// The split Severi-Brauer map f_L on the coordinates t_i/t_0 and its
// compatibility with the cyclic action.

use std::error::Error;

use pforge::expr::print_canonical;
use pforge::split::{sb_split_map, CyclicFunctionField};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let field = CyclicFunctionField::new(3)?;
    let x0 = field.gen(0);
    let moved = field.apply_sigma(&x0)?;
    println!(
        "p = 3: sigma(x0) = {}, N(x0) = {}",
        print_canonical(&moved),
        print_canonical(&field.norm(&x0)?)
    );

    for p in [2, 3, 5] {
        let r = sb_split_map(p)?;
        println!("p = {p}: f_L(t_i/t_0) = {:?}", r.images);
        println!("        inverse images {:?}", r.inverse_images);
        for c in &r.checks {
            println!(
                "        {} {}",
                if c.passed { "ok  " } else { "FAIL" },
                c.name
            );
        }
        if !r.passed() {
            return Err(format!("split map fails at p = {p}").into());
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
