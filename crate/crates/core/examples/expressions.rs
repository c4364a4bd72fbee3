// Parse expressions, print them canonically, and move matrices through JSON.

use std::error::Error;

use pforge::algebra::Matrix;
use pforge::expr::{matrix_from_json, matrix_to_json, parse_ratfunc, print_canonical};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let e = parse_ratfunc("(x^2 - y^2)/(x + y)")?;
    assert_eq!(print_canonical(&e), "x - y");
    println!("(x^2 - y^2)/(x + y) = {}", print_canonical(&e));

    let z = parse_ratfunc("x/(zeta(3)*y)")?;
    println!("over Q(zeta(3)): {}", print_canonical(&z));

    let table = include_str!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/expressions/valid.tsv"
    ));
    for line in table.lines() {
        let (input, canonical) = line.split_once('\t').ok_or("malformed fixture line")?;
        let printed = print_canonical(&parse_ratfunc(input)?);
        if printed != canonical {
            return Err(format!("{input}: printed {printed}, fixture says {canonical}").into());
        }
        if print_canonical(&parse_ratfunc(&printed)?) != printed {
            return Err(format!("{printed} is not a fixed point").into());
        }
    }
    println!("{} fixture expressions round-trip", table.lines().count());

    let m = Matrix::from_rows(vec![
        vec![parse_ratfunc("x1")?, parse_ratfunc("x2")?],
        vec![parse_ratfunc("-a1*x2")?, parse_ratfunc("-x1")?],
    ])?;
    let json = matrix_to_json(&m);
    println!("C_1 as JSON: {json}");
    assert_eq!(matrix_from_json(&json)?, m);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
