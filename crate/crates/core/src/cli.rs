//! The `pforge` command line: one subcommand per construction or check,
//! JSON or text reports, and the exit-code contract
//! 0 ok, 1 usage, 2 verification failure, 3 internal error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{AlgebraError, RatFunc, Rational, Scalar, Var};
use crate::chains::{
    apply_moves, build_interchange_chain, build_scalar_chain, dispatch_with_cap, expected_final,
    interchange_round_trip, norm_identity_with, theta_reduce_with, twist_witness, ChainError,
    MoveCase, PfisterMove, Presentation,
};
use crate::cn::{
    build_cn_over, build_m_with, default_params, multiplicativity, rank1_charpoly, rank1_symbolic,
    verify_cn_steps_with, x_vars, Check, CnConfig, CnError,
};
use crate::expr::{exprs_from_strs, print_canonical, ExprError};
use crate::qforms::{pfister, qform_eval, CongruenceWitness, QFormError};
use crate::split::{nrd_report, nrd_trials, sb_split_map, sympower_census, SplitError};

pub const DEFAULT_SEED: u64 = 1729;
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "pforge",
    version,
    about = "Exact verification of Pfister similarity matrices, quadric chains and split models"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for randomized trials.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Raise the caps to include the long-running checks.
    #[arg(long, global = true)]
    pub long: bool,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Build C_n and verify its identities.
    BuildCn {
        n: usize,
        /// Comma-separated parameter expressions (default a1,…,an).
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        /// Include the matrix even at levels where it is very large.
        #[arg(long)]
        matrix: bool,
    },
    /// Run one named verification.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Expand one simple P-equivalence step into Pfister moves.
    Chain {
        /// Comma-separated presentation a1,…,an.
        #[arg(long, allow_hyphen_values = true)]
        presentation: String,
        /// One-based positions `i,j` with i < j.
        #[arg(long)]
        step: String,
        /// Congruence witness JSON file.
        #[arg(long)]
        witness: PathBuf,
    },
    /// Run every check of one suite.
    Reproduce {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum VerifyKind {
    /// The intermediate congruences behind C_n.
    CnSteps {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// The minor M of C_n at x1 = 1.
    MRecord {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// det(xI - (a_i b_j)) = x^(n-1) (x - sum a_i b_i).
    Rank1 {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long)]
        symbolic: bool,
        /// Random rational trials.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// The discriminant of the generic plane section.
    Theta {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// The quadratic norm identity giving phi_(n+1).
    NormIdentity {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// The interchange chain and its round trip.
    Interchange {
        #[arg(long, default_value_t = 4)]
        dim: usize,
    },
    /// The scalar chain at a generic point and at e1.
    Scalar {
        #[arg(long, default_value_t = 4)]
        dim: usize,
    },
    /// The symmetric-power census of a p-point set.
    Census {
        #[arg(long, default_value_t = 5)]
        p: u32,
    },
    /// The split Severi-Brauer map and its cyclic action.
    SbMap {
        #[arg(long, default_value_t = 5)]
        p: u32,
    },
    /// Diagonal reduced norms over Q(zeta_p).
    Nrd {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// C_n identities and proof steps.
    LemmaCn,
    /// Theta reduction, norm identity, M record, rank-1 polynomial.
    TheoremQuadric,
    /// Interchange and scalar chains.
    ChainLemmas,
    /// The three dispatcher cases.
    Dispatcher,
    /// Symmetric-power census.
    Census,
    /// Split Severi-Brauer map.
    SeveriBrauer,
    /// Diagonal reduced norms.
    ReducedNorm,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::LemmaCn,
        Suite::TheoremQuadric,
        Suite::ChainLemmas,
        Suite::Dispatcher,
        Suite::Census,
        Suite::SeveriBrauer,
        Suite::ReducedNorm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LemmaCn => "lemma-cn",
            Suite::TheoremQuadric => "theorem-quadric",
            Suite::ChainLemmas => "chain-lemmas",
            Suite::Dispatcher => "dispatcher",
            Suite::Census => "census",
            Suite::SeveriBrauer => "severi-brauer",
            Suite::ReducedNorm => "reduced-norm",
        }
    }
}

/// Caps and output settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub format: Format,
    pub long: bool,
    pub seed: u64,
    pub output: Option<PathBuf>,
    /// Largest C_n level.
    pub n_cap: usize,
    /// Largest prime for the split models.
    pub p_cap: u32,
    /// Largest Pfister dimension for built chains.
    pub chain_dim_cap: usize,
    /// Largest n for the theta and norm identities.
    pub theta_cap: usize,
    pub rank1_cap: usize,
}

impl RunConfig {
    pub fn new(long: bool) -> Self {
        RunConfig {
            format: Format::Json,
            long,
            seed: DEFAULT_SEED,
            output: None,
            n_cap: if long { 4 } else { 3 },
            p_cap: if long { 7 } else { 5 },
            chain_dim_cap: if long { 8 } else { 4 },
            theta_cap: if long { 3 } else { 2 },
            rank1_cap: if long { 6 } else { 5 },
        }
    }

    /// Applies `PFORGE_CAP_N`.
    pub fn with_env(mut self) -> Result<Self, CliError> {
        if let Ok(v) = std::env::var("PFORGE_CAP_N") {
            self.n_cap = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("PFORGE_CAP_N={v:?} is not a level")))?;
        }
        Ok(self)
    }

    fn cn(&self) -> CnConfig {
        CnConfig { cap: self.n_cap }
    }

    fn hint(&self) -> &'static str {
        if self.long {
            ""
        } else {
            " (raise with --long)"
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Verification(_) => EXIT_VERIFY,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

#[derive(Clone, Copy)]
enum Kind {
    Usage,
    Verification,
    Internal,
}

fn algebra_kind(e: &AlgebraError) -> Kind {
    match e {
        AlgebraError::FieldMismatch(..)
        | AlgebraError::NotPrime(_)
        | AlgebraError::InvalidVariable(_)
        | AlgebraError::VarCollision(_)
        | AlgebraError::DivisionByZero => Kind::Usage,
        _ => Kind::Internal,
    }
}

fn qform_kind(e: &QFormError) -> Kind {
    match e {
        QFormError::EntryMismatch { .. } => Kind::Verification,
        QFormError::Algebra(a) => algebra_kind(a),
        _ => Kind::Usage,
    }
}

fn cn_kind(e: &CnError) -> Kind {
    match e {
        CnError::Level(..) | CnError::Params { .. } => Kind::Usage,
        CnError::Invariant { .. } | CnError::Identity(_) => Kind::Verification,
        CnError::Algebra(a) => algebra_kind(a),
        CnError::QForm(q) => qform_kind(q),
    }
}

fn chain_kind(e: &ChainError) -> Kind {
    match e {
        ChainError::InvalidMove(_) => Kind::Usage,
        ChainError::Empty => Kind::Internal,
        ChainError::Algebra(a) => algebra_kind(a),
        ChainError::Cn(c) => cn_kind(c),
        ChainError::QForm(q) => qform_kind(q),
        _ => Kind::Verification,
    }
}

fn split_kind(e: &SplitError) -> Kind {
    match e {
        SplitError::NotPrime(_) | SplitError::OverCap(..) => Kind::Usage,
        SplitError::Relation(_) | SplitError::NormMismatch(..) => Kind::Verification,
        SplitError::Algebra(a) => algebra_kind(a),
    }
}

fn classified(kind: Kind, msg: String) -> CliError {
    match kind {
        Kind::Usage => CliError::Usage(msg),
        Kind::Verification => CliError::Verification(msg),
        Kind::Internal => CliError::Internal(msg),
    }
}

impl From<CnError> for CliError {
    fn from(e: CnError) -> Self {
        classified(cn_kind(&e), e.to_string())
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        classified(chain_kind(&e), e.to_string())
    }
}

impl From<SplitError> for CliError {
    fn from(e: SplitError) -> Self {
        classified(split_kind(&e), e.to_string())
    }
}

impl From<QFormError> for CliError {
    fn from(e: QFormError) -> Self {
        classified(qform_kind(&e), e.to_string())
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// The machine-readable result of one command.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub data: Value,
}

impl Report {
    pub fn new(command: impl Into<String>, checks: Vec<Check>, data: Value) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Report {
            command: command.into(),
            passed,
            checks,
            data,
        }
    }

    /// Sections of a suite, with check names prefixed by their section.
    pub fn merge(command: impl Into<String>, parts: Vec<Report>) -> Self {
        let mut checks = Vec::new();
        let mut sections = Vec::new();
        for r in parts {
            for c in &r.checks {
                checks.push(Check {
                    name: format!("{}: {}", r.command, c.name),
                    ..c.clone()
                });
            }
            sections.push(json!({"section": r.command, "passed": r.passed, "data": r.data}));
        }
        let mut out = Report::new(command, checks, json!({ "sections": sections }));
        out.passed = out.passed && sections_passed(&out.data);
        out
    }

    fn error(command: &str, e: &CliError) -> Self {
        Report {
            command: command.to_string(),
            passed: false,
            checks: Vec::new(),
            data: json!({"error": e.to_string(), "exit_code": e.exit_code()}),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_OK
        } else {
            EXIT_VERIFY
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}: {}\n",
            self.command,
            if self.passed { "PASS" } else { "FAIL" }
        );
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            match &c.detail {
                Some(d) => out.push_str(&format!("  {mark} {}: {d}\n", c.name)),
                None => out.push_str(&format!("  {mark} {}\n", c.name)),
            }
        }
        text_data(&self.data, "  ", &mut out);
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json() + "\n",
            Format::Text => self.to_text(),
        }
    }
}

fn sections_passed(data: &Value) -> bool {
    data["sections"]
        .as_array()
        .is_none_or(|s| s.iter().all(|x| x["passed"] == Value::Bool(true)))
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Null => Some("null".into()),
        _ => None,
    }
}

fn text_data(data: &Value, indent: &str, out: &mut String) {
    let Some(obj) = data.as_object() else { return };
    for (k, v) in obj {
        if let Some(s) = scalar_text(v) {
            out.push_str(&format!("{indent}{k}: {s}\n"));
        } else if let Some(items) = v
            .as_array()
            .and_then(|a| a.iter().map(scalar_text).collect::<Option<Vec<_>>>())
        {
            out.push_str(&format!("{indent}{k}: [{}]\n", items.join(", ")));
        } else if k == "sections" {
            for s in v.as_array().into_iter().flatten() {
                out.push_str(&format!(
                    "{indent}[{}]\n",
                    s["section"].as_str().unwrap_or("?")
                ));
                text_data(&s["data"], &format!("{indent}  "), out);
            }
        }
    }
}

/// What a command printed and how it exited.
#[derive(Debug, Clone)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn invoke<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Invocation {
                code,
                stdout,
                stderr,
            };
        }
    };
    let name = command_name(&cli.command);
    let cfg = RunConfig {
        format: cli.format,
        seed: cli.seed,
        output: cli.output.clone(),
        ..RunConfig::new(cli.long)
    }
    .with_env();
    let (report, code, stderr) = match cfg
        .as_ref()
        .map_err(Clone::clone)
        .and_then(|c| execute(&cli.command, c))
    {
        Ok(r) => {
            let code = r.exit_code();
            (r, code, String::new())
        }
        Err(e) => (
            Report::error(&name, &e),
            e.exit_code(),
            format!("pforge: {e}\n"),
        ),
    };
    let rendered = report.render(cli.format);
    match &cli.output {
        Some(path) => match std::fs::write(path, &rendered) {
            Ok(()) => Invocation {
                code,
                stdout: String::new(),
                stderr,
            },
            Err(e) => Invocation {
                code: EXIT_INTERNAL,
                stdout: String::new(),
                stderr: format!("pforge: cannot write {}: {e}\n", path.display()),
            },
        },
        None => Invocation {
            code,
            stdout: rendered,
            stderr,
        },
    }
}

/// Entry point for the binary; returns the exit code.
pub fn run() -> i32 {
    let inv = invoke(std::env::args_os());
    print!("{}", inv.stdout);
    eprint!("{}", inv.stderr);
    inv.code
}

fn command_name(c: &Command) -> String {
    match c {
        Command::BuildCn { n, .. } => format!("build-cn {n}"),
        Command::Verify { kind } => format!("verify {}", verify_name(kind)),
        Command::Chain { .. } => "chain".into(),
        Command::Reproduce { suite } => format!("reproduce {}", suite.name()),
    }
}

fn verify_name(k: &VerifyKind) -> String {
    match k {
        VerifyKind::CnSteps { n } => format!("cn-steps n={n}"),
        VerifyKind::MRecord { n } => format!("m-record n={n}"),
        VerifyKind::Rank1 { n, .. } => format!("rank1 n={n}"),
        VerifyKind::Theta { n } => format!("theta n={n}"),
        VerifyKind::NormIdentity { n } => format!("norm-identity n={n}"),
        VerifyKind::Interchange { dim } => format!("interchange dim={dim}"),
        VerifyKind::Scalar { dim } => format!("scalar dim={dim}"),
        VerifyKind::Census { p } => format!("census p={p}"),
        VerifyKind::SbMap { p } => format!("sb-map p={p}"),
        VerifyKind::Nrd { p, .. } => format!("nrd p={p}"),
    }
}

pub fn execute(command: &Command, cfg: &RunConfig) -> Result<Report, CliError> {
    match command {
        Command::BuildCn { n, params, matrix } => cmd_build_cn(*n, params.as_deref(), *matrix, cfg),
        Command::Verify { kind } => cmd_verify(kind, cfg),
        Command::Chain {
            presentation,
            step,
            witness,
        } => {
            let text = std::fs::read_to_string(witness)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", witness.display())))?;
            cmd_chain(presentation, step, &text, cfg)
        }
        Command::Reproduce { suite } => reproduce(*suite, cfg),
    }
}

fn split_list(text: &str) -> Vec<&str> {
    text.split(',').map(str::trim).collect()
}

fn strs(v: &[RatFunc]) -> Vec<String> {
    v.iter().map(print_canonical).collect()
}

fn pass(name: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed: true,
        detail: None,
    }
}

fn flag(name: impl Into<String>, ok: bool, detail: Option<String>) -> Check {
    Check {
        name: name.into(),
        passed: ok,
        detail: if ok { None } else { detail },
    }
}

fn check_level(n: usize, cap: usize, what: &str, cfg: &RunConfig) -> Result<(), CliError> {
    if n == 0 || n > cap {
        return Err(CliError::Usage(format!(
            "{what} n = {n} is outside 1..={cap}{}",
            cfg.hint()
        )));
    }
    Ok(())
}

fn check_dim(dim: usize, cfg: &RunConfig) -> Result<Vec<RatFunc>, CliError> {
    if dim < 2 || !dim.is_power_of_two() || dim > cfg.chain_dim_cap {
        return Err(CliError::Usage(format!(
            "dim = {dim} must be a power of two in 2..={}{}",
            cfg.chain_dim_cap,
            cfg.hint()
        )));
    }
    Ok(default_params(dim.trailing_zeros() as usize)
        .into_iter()
        .map(RatFunc::var)
        .collect())
}

fn check_p(p: u32, cfg: &RunConfig) -> Result<(), CliError> {
    if !crate::algebra::is_prime(p) {
        return Err(CliError::Usage(format!("{p} is not prime")));
    }
    if p > cfg.p_cap {
        return Err(CliError::Usage(format!(
            "p = {p} is over the cap {}{}",
            cfg.p_cap,
            cfg.hint()
        )));
    }
    Ok(())
}

pub fn cmd_build_cn(
    n: usize,
    params: Option<&str>,
    with_matrix: bool,
    cfg: &RunConfig,
) -> Result<Report, CliError> {
    check_level(n, cfg.n_cap, "build-cn", cfg)?;
    let values = match params {
        Some(text) => exprs_from_strs(&split_list(text))?,
        None => default_params(n).into_iter().map(RatFunc::var).collect(),
    };
    if values.len() != n {
        return Err(CliError::Usage(format!(
            "expected {n} parameters, got {}",
            values.len()
        )));
    }
    let rec = build_cn_over(&values, &x_vars(1 << n), &cfg.cn())?;
    let mut checks = vec![pass(format!(
        "C A C^t = c A, C^2 = c I, first row and column ({})",
        mode_name(&rec)
    ))];
    if n <= 3 {
        checks.push(multiplicativity(&rec)?);
    }
    let show = with_matrix || n < 4;
    Ok(Report::new(
        format!("build-cn {n}"),
        checks,
        rec.to_json(show),
    ))
}

fn mode_name(rec: &crate::cn::CnRecord) -> &'static str {
    match rec.verify_mode() {
        crate::cn::VerifyMode::Direct => "direct",
        crate::cn::VerifyMode::Blockwise => "blockwise",
    }
}

pub fn cmd_verify(kind: &VerifyKind, cfg: &RunConfig) -> Result<Report, CliError> {
    let name = format!("verify {}", verify_name(kind));
    match *kind {
        VerifyKind::CnSteps { n } => {
            check_level(n, cfg.n_cap.min(3), "cn-steps", cfg)?;
            if n < 2 {
                return Err(CliError::Usage("cn-steps needs n >= 2".into()));
            }
            let r = verify_cn_steps_with(n, &cfg.cn())?;
            let mut checks = r.steps.clone();
            checks.push(r.assembly.clone());
            checks.extend(r.expansion.iter().cloned());
            Ok(Report::new(name, checks, json!({ "n": n })))
        }
        VerifyKind::MRecord { n } => {
            check_level(n, cfg.theta_cap, "m-record", cfg)?;
            let m = build_m_with(n, &default_params(n), &cfg.cn())?;
            Ok(Report::new(name, m.checks.clone(), m.to_json()))
        }
        VerifyKind::Rank1 {
            n,
            symbolic,
            trials,
        } => {
            check_level(n, cfg.rank1_cap, "rank1", cfg)?;
            let mut parts = Vec::new();
            if symbolic || trials.is_none() {
                parts.push(rank1_symbolic_report(n)?);
            }
            if let Some(t) = trials {
                parts.push(rank1_trials_report(n, t, cfg.seed)?);
            }
            Ok(single_or_merge(name, parts))
        }
        VerifyKind::Theta { n } => {
            check_level(n, cfg.theta_cap, "theta", cfg)?;
            let r = theta_reduce_with(n, &cfg.cn())?;
            let mut checks = r.lines.clone();
            checks.push(r.y_zero.clone());
            Ok(Report::new(
                name,
                checks,
                json!({"n": n, "theta": r.theta, "closed_form": r.closed_form, "z": r.z}),
            ))
        }
        VerifyKind::NormIdentity { n } => {
            check_level(n, cfg.theta_cap, "norm-identity", cfg)?;
            let r = norm_identity_with(n, &cfg.cn())?;
            Ok(Report::new(
                name,
                r.checks.clone(),
                json!({"n": n, "lhs": r.lhs, "rhs": r.rhs}),
            ))
        }
        VerifyKind::Interchange { dim } => renamed(name, interchange_report(dim, cfg)),
        VerifyKind::Scalar { dim } => renamed(name, scalar_report(dim, cfg)),
        VerifyKind::Census { p } => renamed(name, census_report(p, cfg)),
        VerifyKind::SbMap { p } => renamed(name, sb_report(p, cfg)),
        VerifyKind::Nrd { p, trials } => renamed(name, nrd_section(p, trials, cfg)),
    }
}

fn renamed(name: String, r: Result<Report, CliError>) -> Result<Report, CliError> {
    r.map(|r| Report { command: name, ..r })
}

fn single_or_merge(name: String, mut parts: Vec<Report>) -> Report {
    if parts.len() == 1 {
        let mut r = parts.remove(0);
        r.command = name;
        r
    } else {
        Report::merge(name, parts)
    }
}

fn rank1_symbolic_report(n: usize) -> Result<Report, CliError> {
    let (a, b) = rank1_symbolic(n);
    let x = Var::named("x");
    let r = rank1_charpoly(&a, &b, x)?;
    let checks = vec![flag(
        format!("det(xI - (a_i b_j)) = x^{} (x - sum a_i b_i)", n - 1),
        r.matches,
        Some(print_canonical(&r.charpoly)),
    )];
    Ok(Report::new(
        format!("rank1 symbolic n={n}"),
        checks,
        r.to_json(x),
    ))
}

fn random_rational(rng: &mut ChaCha8Rng) -> RatFunc {
    let q =
        Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=5)).expect("nonzero denominator");
    RatFunc::constant(Scalar::Rational(q))
}

/// Random rational vectors checked against the closed form.
pub fn rank1_trials_report(n: usize, trials: usize, seed: u64) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = Var::named("x");
    let mut failures = Vec::new();
    for k in 0..trials {
        let a: Vec<RatFunc> = (0..n).map(|_| random_rational(&mut rng)).collect();
        let b: Vec<RatFunc> = (0..n).map(|_| random_rational(&mut rng)).collect();
        if !rank1_charpoly(&a, &b, x)?.matches {
            failures.push(k);
        }
    }
    let checks = vec![flag(
        format!("{trials} random trials, seed {seed}"),
        failures.is_empty(),
        Some(format!("failed trials {failures:?}")),
    )];
    Ok(Report::new(
        format!("rank1 trials n={n}"),
        checks,
        json!({"n": n, "trials": trials, "seed": seed}),
    ))
}

pub fn interchange_report(dim: usize, cfg: &RunConfig) -> Result<Report, CliError> {
    let params = check_dim(dim, cfg)?;
    let (b, c) = (RatFunc::named("b"), RatFunc::named("c"));
    let chain = build_interchange_chain(&params, &b, &c)?;
    chain.verify()?;
    let (round, same) = interchange_round_trip(&params, &b, &c)?;
    let checks = vec![
        pass(format!("{} step certificates", chain.steps.len())),
        pass("composed certificate"),
        flag(
            "round trip returns to the start equation with nonzero multiplier",
            same && !round.composed_multiplier.is_zero(),
            Some(print_canonical(&round.composed_multiplier)),
        ),
    ];
    let data = json!({
        "dim": dim,
        "params": strs(&params),
        "chain": chain.to_json(),
        "round_trip_multiplier": print_canonical(&round.composed_multiplier),
    });
    Ok(Report::new(format!("interchange dim={dim}"), checks, data))
}

pub fn scalar_report(dim: usize, cfg: &RunConfig) -> Result<Report, CliError> {
    let params = check_dim(dim, cfg)?;
    let b = RatFunc::named("b");
    let generic = build_scalar_chain(&params, &b, None)?;
    generic.verify()?;
    let field = b.field();
    let phi = pfister(&params)?;
    let mut checks = vec![pass(format!(
        "{} step certificates at a generic point",
        generic.steps.len()
    ))];
    // C_n only specializes at e1 for n = 1; larger levels use the all-ones point
    let points: Vec<(&str, Vec<RatFunc>)> = if dim == 2 {
        vec![
            ("e1", vec![RatFunc::one(field), RatFunc::zero(field)]),
            ("(1, 1)", vec![RatFunc::one(field); 2]),
        ]
    } else {
        vec![("(1, ..., 1)", vec![RatFunc::one(field); dim])]
    };
    for (label, point) in points {
        let ch = build_scalar_chain(&params, &b, Some(&point))?;
        let expected = qform_eval(&phi, &point)?;
        checks.push(Check::from_values(
            &format!("multiplier at {label} is phi(x0)"),
            &ch.composed_multiplier,
            &expected,
        ));
    }
    let data = json!({
        "dim": dim,
        "params": strs(&params),
        "chain": generic.to_json(),
        "generic_multiplier": print_canonical(&generic.composed_multiplier),
    });
    Ok(Report::new(format!("scalar dim={dim}"), checks, data))
}

pub fn census_report(p: u32, cfg: &RunConfig) -> Result<Report, CliError> {
    check_p(p, cfg)?;
    let r = sympower_census(p)?;
    let data = json!({"p": p, "counts": r.counts(), "free_classes": r.free_classes, "fiber_size": r.fiber.len()});
    Ok(Report::new(format!("census p={p}"), r.checks, data))
}

pub fn sb_report(p: u32, cfg: &RunConfig) -> Result<Report, CliError> {
    check_p(p, cfg)?;
    let r = sb_split_map(p)?;
    let data = json!({"p": p, "images": r.images, "inverse_images": r.inverse_images});
    Ok(Report::new(format!("sb-map p={p}"), r.checks, data))
}

fn nrd_section(p: u32, trials: usize, cfg: &RunConfig) -> Result<Report, CliError> {
    check_p(p, cfg)?;
    if p == 2 {
        return Err(CliError::Usage("nrd needs an odd prime".into()));
    }
    let r = nrd_report(p)?;
    let mut checks = r.checks.clone();
    checks.push(nrd_trials(p, trials, cfg.seed)?);
    let data = json!({
        "p": p,
        "stated_entries": r.stated_entries,
        "stated_value": r.stated_value,
        "stated_value_is_c": r.stated_value_is_c,
        "witness_entries": r.witness_entries,
        "witness_value": r.witness_value,
        "trials": trials,
        "seed": cfg.seed,
    });
    Ok(Report::new(format!("nrd p={p}"), checks, data))
}

fn parse_step(step: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("--step {step:?}: expected i,j"));
    match split_list(step).as_slice() {
        [i, j] => Ok((i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

fn case_name(c: MoveCase) -> &'static str {
    match c {
        MoveCase::I => "i",
        MoveCase::J => "j",
        MoveCase::III => "iii",
    }
}

/// Dispatches one step given the witness JSON text.
pub fn cmd_chain(
    presentation: &str,
    step: &str,
    witness_json: &str,
    cfg: &RunConfig,
) -> Result<Report, CliError> {
    let p = Presentation(exprs_from_strs(&split_list(presentation))?);
    let (i, j) = parse_step(step)?;
    let value: Value = serde_json::from_str(witness_json)
        .map_err(|e| CliError::Usage(format!("witness JSON: {e}")))?;
    let w = CongruenceWitness::from_json(&value)?;
    dispatch_report(&p, i, j, &w, cfg)
}

fn dispatch_report(
    p: &Presentation,
    i: usize,
    j: usize,
    w: &CongruenceWitness,
    cfg: &RunConfig,
) -> Result<Report, CliError> {
    let (case, moves) = dispatch_with_cap(p, i, j, w, cfg.chain_dim_cap)?;
    let new = w
        .target()
        .pfister_params()
        .expect("checked by the dispatcher");
    let expected = expected_final(p, i, j, (&new[0], &new[1]));
    let reached = apply_moves(p, &moves)?;
    let checks = vec![
        pass("every move certified"),
        flag(
            "moves land on the expected presentation",
            reached == expected,
            Some(reached.strings().join(", ")),
        ),
    ];
    let data = json!({
        "presentation": p.strings(),
        "step": [i, j],
        "case": case_name(case),
        "labels": moves.iter().map(|m| m.label).collect::<Vec<_>>(),
        "moves": moves.iter().map(PfisterMove::to_json).collect::<Vec<_>>(),
        "final": reached.strings(),
    });
    Ok(Report::new(format!("chain ({i},{j})"), checks, data))
}

pub fn reproduce(suite: Suite, cfg: &RunConfig) -> Result<Report, CliError> {
    let parts = match suite {
        Suite::LemmaCn => suite_lemma_cn(cfg)?,
        Suite::TheoremQuadric => suite_quadric(cfg)?,
        Suite::ChainLemmas => suite_chains(cfg)?,
        Suite::Dispatcher => suite_dispatcher(cfg)?,
        Suite::Census => primes(cfg, &[2, 3, 5, 7])
            .into_iter()
            .map(|p| census_report(p, cfg))
            .collect::<Result<_, _>>()?,
        Suite::SeveriBrauer => primes(cfg, &[2, 3, 5, 7])
            .into_iter()
            .map(|p| sb_report(p, cfg))
            .collect::<Result<_, _>>()?,
        Suite::ReducedNorm => primes(cfg, &[3, 5])
            .into_iter()
            .map(|p| nrd_section(p, 100, cfg))
            .collect::<Result<_, _>>()?,
    };
    Ok(Report::merge(format!("reproduce {}", suite.name()), parts))
}

fn primes(cfg: &RunConfig, all: &[u32]) -> Vec<u32> {
    all.iter().copied().filter(|&p| p <= cfg.p_cap).collect()
}

fn suite_lemma_cn(cfg: &RunConfig) -> Result<Vec<Report>, CliError> {
    let mut parts = Vec::new();
    for n in 1..=cfg.n_cap.min(4) {
        parts.push(cmd_build_cn(n, None, false, cfg)?);
    }
    for n in 2..=cfg.n_cap.min(3) {
        parts.push(cmd_verify(&VerifyKind::CnSteps { n }, cfg)?);
    }
    Ok(parts)
}

fn suite_quadric(cfg: &RunConfig) -> Result<Vec<Report>, CliError> {
    let mut parts = Vec::new();
    for n in 1..=cfg.theta_cap {
        parts.push(cmd_verify(&VerifyKind::Theta { n }, cfg)?);
        parts.push(cmd_verify(&VerifyKind::NormIdentity { n }, cfg)?);
        parts.push(cmd_verify(&VerifyKind::MRecord { n }, cfg)?);
    }
    for n in 1..=5 {
        parts.push(rank1_symbolic_report(n)?);
    }
    for n in 1..=4 {
        parts.push(rank1_trials_report(n, 100, cfg.seed)?);
    }
    Ok(parts)
}

fn suite_chains(cfg: &RunConfig) -> Result<Vec<Report>, CliError> {
    let dims: Vec<usize> = [2, 4, 8]
        .into_iter()
        .filter(|&d| d <= cfg.chain_dim_cap)
        .collect();
    let mut parts = Vec::new();
    for &d in &dims {
        parts.push(interchange_report(d, cfg)?);
    }
    for &d in dims.iter().filter(|&&d| d <= 4) {
        parts.push(scalar_report(d, cfg)?);
    }
    Ok(parts)
}

/// `⟨⟨a1, a2, a3⟩⟩` with the twist witness on each pair: one move for
/// `(1,2)`, three for `(1,3)`, five for `(2,3)`.
fn suite_dispatcher(cfg: &RunConfig) -> Result<Vec<Report>, CliError> {
    let p = Presentation(default_params(3).into_iter().map(RatFunc::var).collect());
    let mut parts = Vec::new();
    for (i, j, len) in [(1, 2, 1), (1, 3, 3), (2, 3, 5)] {
        let w = twist_witness(&p.0[i - 1], &p.0[j - 1])?;
        let mut r = dispatch_report(&p, i, j, &w, cfg)?;
        let got = r.data["labels"].as_array().map_or(0, Vec::len);
        r.checks.push(flag(
            format!("{len} moves"),
            got == len,
            Some(format!("{got} moves")),
        ));
        r.passed = r.checks.iter().all(|c| c.passed);
        parts.push(r);
    }
    Ok(parts)
}
