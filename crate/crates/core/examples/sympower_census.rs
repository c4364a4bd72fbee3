// Exhaustive census of the p-th symmetric power of a p-point set.

use std::error::Error;

use pforge::split::sympower_census;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    println!("  p  |X^p|  off-diag  |S^p(X)|  |U|  fiber");
    for p in [2, 3, 5] {
        let r = sympower_census(p)?;
        let [t, o, s, u, f] = r.counts();
        println!("{p:>3} {t:>6} {o:>9} {s:>9} {u:>4} {f:>6}");
        if !r.passed() {
            return Err(format!("census fails at p = {p}").into());
        }
    }
    let r = sympower_census(3)?;
    let fiber: Vec<String> = r
        .fiber
        .iter()
        .map(|f| format!("{} + {:?}", f.label, f.rest.0))
        .collect();
    println!("fiber over the free class at p = 3: {}", fiber.join("; "));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
