//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Every identity is compared exactly (zero tolerance). Time limits:
//! C_3 build and verification under 60 s, the default run under 120 s
//! (not enforced with `--long`).
//! Pass `--long` or set `PFORGE_LONG=1` for the gated checks.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{cofactor_det, random_rational, SEED};
use pforge::algebra::{
    char_poly, coefficients_in, det_fraction_free, det_gauss, Matrix, RatFunc, Scalar, Var,
};
use pforge::chains::{
    apply_moves, build_interchange_chain, build_scalar_chain, dispatch_pequiv_move, expected_final,
    interchange_round_trip, norm_identity_with, theta_reduce_with, twist_witness, Presentation,
};
use pforge::cn::{
    build_cn_with, build_m_with, default_params, rank1_charpoly, rank1_symbolic, verify_cn_steps,
    CnConfig, VerifyMode,
};
use pforge::expr::{parse_ratfunc, print_canonical};
use pforge::qforms::{congruence_product, pfister, qform_eval};
use pforge::split::{
    diagonal_nrd, distinct_eigenvalues, nrd_report, nrd_trials, sb_split_map, sympower_census,
    DiagonalAlgebraElement,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const C3_LIMIT: Duration = Duration::from_secs(60);
const SUITE_LIMIT: Duration = Duration::from_secs(120);

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rats(vs: &[Var]) -> Vec<RatFunc> {
    vs.iter().map(|&v| RatFunc::var(v)).collect()
}

fn c1_cn_identities(long: bool) -> Outcome {
    let top = if long { 4 } else { 3 };
    let cfg = CnConfig { cap: 4 };
    let mut notes = Vec::new();
    for n in 1..=top {
        let start = Instant::now();
        let params = default_params(n);
        let rec = build_cn_with(n, &params, &cfg).map_err(|e| format!("n = {n}: {e}"))?;
        let a = pfister(&rats(&params)).map_err(|e| e.to_string())?.gram();
        let x = rats(&rec.xs);
        let dim = x.len();
        let phi = qform_eval(&pfister(&rats(&params)).unwrap(), &x).unwrap();
        ensure(rec.c == phi, || format!("n = {n}: c is not phi(x)"))?;
        ensure(rec.cn.row(0) == x, || format!("n = {n}: first row"))?;
        ensure(rec.cn.col(0) == a.mul_vec(&x).unwrap(), || {
            format!("n = {n}: first column")
        })?;
        if rec.verify_mode() == VerifyMode::Direct {
            let diag: Vec<RatFunc> = (0..dim).map(|i| a.get(i, i).clone()).collect();
            let cact = congruence_product(&rec.cn, &diag).unwrap();
            ensure(cact == a.scale(&phi), || format!("n = {n}: C A C^t != c A"))?;
            ensure(
                rec.cn.mul(&rec.cn) == Matrix::scalar_identity(dim, &phi),
                || format!("n = {n}: C^2 != c I"),
            )?;
        }
        let took = start.elapsed();
        if n == 3 {
            ensure(took < C3_LIMIT, || format!("n = 3 took {took:?}"))?;
        }
        let mode = match rec.verify_mode() {
            VerifyMode::Direct => "direct",
            VerifyMode::Blockwise => "blockwise",
        };
        notes.push(format!("n={n} {mode} {:.2}s", took.as_secs_f64()));
    }
    if !long {
        notes.push("n=4 gated behind --long".into());
    }
    Ok(notes.join(", "))
}

fn c2_proof_steps() -> Outcome {
    for n in 2..=3 {
        let r = verify_cn_steps(n).map_err(|e| format!("n = {n}: {e}"))?;
        ensure(r.steps.len() == 4, || {
            format!("n = {n}: {} steps", r.steps.len())
        })?;
        for c in r.steps.iter().chain([&r.assembly]) {
            ensure(c.passed, || format!("n = {n}: {} {:?}", c.name, c.detail))?;
        }
    }
    Ok("(i), (j), (k), sign flip and assembly for n = 2, 3".into())
}

fn c3_rank1() -> Outcome {
    let x = Var::named("x");
    for n in 1..=5 {
        let (a, b) = rank1_symbolic(n);
        ensure(
            rank1_charpoly(&a, &b, x)
                .map_err(|e| e.to_string())?
                .matches,
            || format!("symbolic n = {n}"),
        )?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let xr = RatFunc::var(x);
    for n in 1..=4 {
        for t in 0..100 {
            let a: Vec<RatFunc> = (0..n).map(|_| random_rational(&mut rng)).collect();
            let b: Vec<RatFunc> = (0..n).map(|_| random_rational(&mut rng)).collect();
            let m = Matrix::from_fn(n, n, |i, j| {
                if i == j { xr.clone() } else { RatFunc::int(0) }.sub(&a[i].mul(&b[j]))
            });
            let r = rank1_charpoly(&a, &b, x).map_err(|e| e.to_string())?;
            ensure(r.matches && r.charpoly == cofactor_det(&m), || {
                format!("n = {n}, trial {t}")
            })?;
        }
    }
    Ok(format!(
        "symbolic n <= 5; 4 x 100 cofactor trials, seed {SEED}"
    ))
}

fn c4_quadric(long: bool) -> Outcome {
    let top = if long { 3 } else { 2 };
    let cfg = CnConfig::default();
    let mut notes = Vec::new();
    for n in 1..=top {
        let t = theta_reduce_with(n, &cfg).map_err(|e| format!("theta n = {n}: {e}"))?;
        ensure(t.passed() && t.theta == t.closed_form, || {
            format!("theta n = {n}")
        })?;
        let norm = norm_identity_with(n, &cfg).map_err(|e| format!("norm n = {n}: {e}"))?;
        ensure(norm.passed(), || format!("norm identity n = {n}"))?;
        let m = build_m_with(n, &default_params(n), &cfg).map_err(|e| format!("M n = {n}: {e}"))?;
        let k = (1u32 << (n - 1)) - 1;
        let power = m.phi1.pow(k);
        if n == 1 {
            // M = [-1]: only the square is determined
            ensure(m.det.pow(2) == power.pow(2), || "det(M)^2 at n = 1".into())?;
            notes.push(format!(
                "n=1 det(M) = {} (squared check)",
                print_canonical(&m.det)
            ));
        } else {
            ensure(m.det == power, || format!("det(M) != phi1^{k} at n = {n}"))?;
            notes.push(format!("n={n} det(M) = phi1^{k}"));
        }
        ensure(m.passed(), || format!("M record n = {n}"))?;
    }
    if !long {
        notes.push("n=3 gated behind --long".into());
    }
    Ok(notes.join(", "))
}

fn c5_chains(long: bool) -> Outcome {
    let (b, c) = (RatFunc::named("b"), RatFunc::named("c"));
    let dims: &[usize] = if long { &[2, 4, 8] } else { &[2, 4] };
    let mut steps = 0;
    for &dim in dims {
        let params = rats(&default_params(dim.trailing_zeros() as usize));
        let chain = build_interchange_chain(&params, &b, &c)
            .map_err(|e| format!("interchange dim {dim}: {e}"))?;
        for s in &chain.steps {
            s.reverify().map_err(|e| format!("dim {dim}: {e}"))?;
        }
        chain.verify().map_err(|e| e.to_string())?;
        steps += chain.steps.len();
        if dim <= 4 {
            let (round, same) =
                interchange_round_trip(&params, &b, &c).map_err(|e| e.to_string())?;
            ensure(same && !round.composed_multiplier.is_zero(), || {
                format!("round trip dim {dim}")
            })?;
            let scalar = build_scalar_chain(&params, &b, None)
                .map_err(|e| format!("scalar dim {dim}: {e}"))?;
            for s in &scalar.steps {
                s.reverify().map_err(|e| format!("scalar dim {dim}: {e}"))?;
            }
            scalar.verify().map_err(|e| e.to_string())?;
            steps += scalar.steps.len();
        }
    }
    Ok(format!(
        "{steps} step certificates, dims {dims:?}, round trips nonzero"
    ))
}

fn c6_dispatcher() -> Outcome {
    let p = Presentation(rats(&default_params(3)));
    let expected: [(usize, usize, &[&str]); 3] = [
        (1, 2, &["rewrite"]),
        (1, 3, &["interchange", "rewrite", "interchange"]),
        (
            2,
            3,
            &[
                "transpose",
                "interchange",
                "rewrite",
                "interchange",
                "transpose",
            ],
        ),
    ];
    for (i, j, labels) in expected {
        let w = twist_witness(&p.0[i - 1], &p.0[j - 1]).map_err(|e| e.to_string())?;
        let (_, moves) = dispatch_pequiv_move(&p, i, j, &w).map_err(|e| e.to_string())?;
        let got: Vec<&str> = moves.iter().map(|m| m.label).collect();
        ensure(got == labels, || format!("({i},{j}): {got:?}"))?;
        let new = w.target().pfister_params().unwrap();
        let reached = apply_moves(&p, &moves).map_err(|e| e.to_string())?;
        ensure(
            reached == expected_final(&p, i, j, (&new[0], &new[1])),
            || format!("({i},{j}) final presentation"),
        )?;
    }
    Ok("cases (1,2), (1,3), (2,3): lengths 1, 3, 5".into())
}

fn c7_census(long: bool) -> Outcome {
    let primes: &[u32] = if long { &[2, 3, 5, 7] } else { &[2, 3, 5] };
    for &p in primes {
        let r = sympower_census(p).map_err(|e| e.to_string())?;
        let q = u64::from(p);
        let fact: u64 = (1..=q).product();
        let binom = (1..=q).fold(1u64, |acc, i| acc * (2 * q - i) / i);
        let want = [q.pow(p), fact, binom, 1, q];
        ensure(r.counts() == want, || {
            format!("p = {p}: {:?} vs {want:?}", r.counts())
        })?;
    }
    Ok(format!("p in {primes:?}"))
}

fn c8_severi_brauer() -> Outcome {
    for p in [2, 3, 5] {
        let r = sb_split_map(p).map_err(|e| e.to_string())?;
        if let Some(c) = r.checks.iter().find(|c| !c.passed) {
            return Err(format!("p = {p}: {}", c.name));
        }
    }
    Ok("equivariance and inverse identities for p = 2, 3, 5".into())
}

fn c9_reduced_norm() -> Outcome {
    let mut notes = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for p in [3u32, 5] {
        let t = nrd_trials(p, 100, SEED).map_err(|e| e.to_string())?;
        ensure(t.passed, || format!("trials p = {p}: {:?}", t.detail))?;
        // the product against an independent determinant
        for _ in 0..20 {
            let entries: Vec<RatFunc> = (0..p)
                .map(|_| {
                    let k = rng.gen_range(0..p as i64);
                    RatFunc::constant(Scalar::zeta_pow(p, k).unwrap())
                        .mul(&random_rational(&mut rng).promote(p).unwrap())
                })
                .collect();
            let d = DiagonalAlgebraElement::new(p, entries).map_err(|e| e.to_string())?;
            ensure(
                diagonal_nrd(&d).unwrap() == cofactor_det(&d.matrix()),
                || format!("cofactor p = {p}"),
            )?;
        }
        let r = nrd_report(p).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.witness_value == "c", || {
            format!("witness p = {p}")
        })?;
        let c = parse_ratfunc("c").unwrap().promote(p).unwrap();
        let w = pforge::split::corrected_witness(p, &c).unwrap();
        ensure(distinct_eigenvalues(&w), || {
            format!("witness eigenvalues p = {p}")
        })?;
        notes.push(format!("p={p} displayed matrix has Nrd {}", r.stated_value));
    }
    Ok(notes.join(", "))
}

fn c10_infrastructure(suite_start: Instant, long: bool) -> Outcome {
    let table = include_str!("../fixtures/expressions/valid.tsv");
    for line in table.lines() {
        let (input, canonical) = line.split_once('\t').ok_or("fixture line")?;
        let printed = print_canonical(&parse_ratfunc(input).map_err(|e| e.to_string())?);
        ensure(printed == canonical, || {
            format!("{input} printed {printed}")
        })?;
        ensure(
            print_canonical(&parse_ratfunc(&printed).unwrap()) == printed,
            || format!("{printed} not fixed"),
        )?;
    }
    for bad in include_str!("../fixtures/expressions/invalid.txt").lines() {
        ensure(parse_ratfunc(bad).is_err(), || format!("{bad:?} parsed"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (x, y, t) = (RatFunc::named("x"), RatFunc::named("y"), Var::named("t"));
    for n in 1..=5 {
        for _ in 0..10 {
            let entries: Vec<RatFunc> = (0..n * n)
                .map(|_| match rng.gen_range(0..4) {
                    0 => x.mul(&RatFunc::int(rng.gen_range(-3..=3))),
                    1 => y.add(&RatFunc::int(rng.gen_range(-3..=3))),
                    _ => random_rational(&mut rng),
                })
                .collect();
            let m = Matrix::new(n, n, entries).unwrap();
            let oracle = cofactor_det(&m);
            ensure(det_fraction_free(&m).unwrap() == oracle, || {
                format!("fraction-free det n = {n}")
            })?;
            ensure(det_gauss(&m).unwrap() == oracle, || {
                format!("Gauss det n = {n}")
            })?;
            if n <= 4 {
                let coeffs = coefficients_in(&char_poly(&m, t).unwrap(), t).unwrap();
                let (mut acc, mut power) = (
                    Matrix::zeros(m.field(), n, n),
                    Matrix::identity(m.field(), n),
                );
                for c in &coeffs {
                    acc = acc.add(&power.scale(c));
                    power = power.mul(&m);
                }
                ensure(acc.entries().iter().all(RatFunc::is_zero), || {
                    format!("Cayley-Hamilton n = {n}")
                })?;
            }
        }
    }
    let took = suite_start.elapsed();
    if !long {
        ensure(took < SUITE_LIMIT, || format!("run took {took:?}"))?;
    }
    Ok(format!(
        "{} fixtures round-trip; oracles n <= 5; run {:.1}s",
        table.lines().count(),
        took.as_secs_f64()
    ))
}

fn main() {
    let long = std::env::args().any(|a| a == "--long")
        || std::env::var("PFORGE_LONG").is_ok_and(|v| v == "1");
    let start = Instant::now();
    let criteria: Vec<Criterion> = vec![
        ("C_n identities", Box::new(move || c1_cn_identities(long))),
        ("proof-step replay", Box::new(c2_proof_steps)),
        ("rank-1 characteristic polynomial", Box::new(c3_rank1)),
        (
            "theta reduction and norm identity",
            Box::new(move || c4_quadric(long)),
        ),
        (
            "interchange and scalar chains",
            Box::new(move || c5_chains(long)),
        ),
        ("P-equivalence dispatcher", Box::new(c6_dispatcher)),
        ("symmetric-power census", Box::new(move || c7_census(long))),
        ("Severi-Brauer split map", Box::new(c8_severi_brauer)),
        ("diagonal reduced norm", Box::new(c9_reduced_norm)),
        (
            "infrastructure",
            Box::new(move || c10_infrastructure(start, long)),
        ),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let (mark, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2}: {mark}  {title} [exact] ({detail})", k + 1);
    }
    println!(
        "acceptance: {} of 10 passed in {:.1}s{}",
        10 - failed,
        start.elapsed().as_secs_f64(),
        if long { " (long)" } else { "" }
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
