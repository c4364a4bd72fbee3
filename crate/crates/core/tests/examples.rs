mod expressions_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/expressions.rs"
    ));
}
mod pfister_forms_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/pfister_forms.rs"
    ));
}
mod cn_matrices_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/cn_matrices.rs"
    ));
}
mod cn_proof_steps_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/cn_proof_steps.rs"
    ));
}
mod rank1_charpoly_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/rank1_charpoly.rs"
    ));
}
mod quadric_theta_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/quadric_theta.rs"
    ));
}
mod interchange_chain_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/interchange_chain.rs"
    ));
}
mod scalar_chain_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/scalar_chain.rs"
    ));
}
mod pequiv_dispatch_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/pequiv_dispatch.rs"
    ));
}
mod sympower_census_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/sympower_census.rs"
    ));
}
mod severi_brauer_split_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/severi_brauer_split.rs"
    ));
}
mod reduced_norm_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/reduced_norm.rs"
    ));
}
mod cli_reports_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/cli_reports.rs"
    ));
}

#[test]
fn expressions_example_runs() {
    expressions_example::run_example().expect("expressions example should run");
}

#[test]
fn pfister_forms_example_runs() {
    pfister_forms_example::run_example().expect("pfister forms example should run");
}

#[test]
fn cn_matrices_example_runs() {
    cn_matrices_example::run_example().expect("cn matrices example should run");
}

#[test]
fn cn_proof_steps_example_runs() {
    cn_proof_steps_example::run_example().expect("cn proof steps example should run");
}

#[test]
fn rank1_charpoly_example_runs() {
    rank1_charpoly_example::run_example().expect("rank-1 example should run");
}

#[test]
fn quadric_theta_example_runs() {
    quadric_theta_example::run_example().expect("quadric theta example should run");
}

#[test]
fn interchange_chain_example_runs() {
    interchange_chain_example::run_example().expect("interchange example should run");
}

#[test]
fn scalar_chain_example_runs() {
    scalar_chain_example::run_example().expect("scalar chain example should run");
}

#[test]
fn pequiv_dispatch_example_runs() {
    pequiv_dispatch_example::run_example().expect("dispatch example should run");
}

#[test]
fn sympower_census_example_runs() {
    sympower_census_example::run_example().expect("census example should run");
}

#[test]
fn severi_brauer_split_example_runs() {
    severi_brauer_split_example::run_example().expect("Severi-Brauer example should run");
}

#[test]
fn reduced_norm_example_runs() {
    reduced_norm_example::run_example().expect("reduced norm example should run");
}

#[test]
fn cli_reports_example_runs() {
    cli_reports_example::run_example().expect("cli example should run");
}
