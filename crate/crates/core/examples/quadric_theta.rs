// The discriminant of the generic plane section of psi, the norm identity
// that turns it into phi_{n+1}, and the determinant of the minor M.

use std::error::Error;

use pforge::chains::{norm_identity, theta_reduce};
use pforge::cn::{build_m, default_params};
use pforge::expr::print_canonical;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for n in 1..=2 {
        let theta = theta_reduce(n)?;
        println!("n = {n}: theta = {}", theta.theta);
        println!("        closed form {}", theta.closed_form);
        let norm = norm_identity(n)?;
        println!("        {} = {}", norm.lhs, norm.rhs);
        let m = build_m(n, &default_params(n))?;
        println!(
            "        det(M) = {} (sign {})",
            print_canonical(&m.det),
            m.det_sign
        );
        if !(theta.passed() && norm.passed() && m.passed()) {
            return Err(format!("quadric identities fail at n = {n}").into());
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
