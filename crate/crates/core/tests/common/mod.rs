//! Oracles and generators shared by the integration tests.
#![allow(dead_code)]

use pforge::algebra::{Matrix, RatFunc, Rational, Scalar, Var};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 1729;

/// Fixed-seed proptest settings.
pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Laplace expansion along the first row. Exponential, so only for small matrices.
pub fn cofactor_det(m: &Matrix) -> RatFunc {
    let n = m.rows();
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = RatFunc::zero(m.field());
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let term = m.get(0, j).mul(&cofactor_det(&m.minor(0, j)));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

pub fn rational(num: i64, den: i64) -> RatFunc {
    RatFunc::constant(Scalar::Rational(
        Rational::new(num, den).expect("nonzero denominator"),
    ))
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> RatFunc {
    rational(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn var(name: &str) -> RatFunc {
    RatFunc::var(Var::named(name))
}

/// Sums of up to four terms `c x^i y^j z^k` with small exponents.
pub fn poly_strategy() -> impl Strategy<Value = RatFunc> {
    prop::collection::vec((-4i64..=4, 0u32..3, 0u32..3, 0u32..2), 0..5).prop_map(|terms| {
        let (x, y, z) = (var("x"), var("y"), var("z"));
        terms
            .into_iter()
            .fold(RatFunc::int(0), |acc, (c, i, j, k)| {
                acc.add(&RatFunc::int(c).mul(&x.pow(i)).mul(&y.pow(j)).mul(&z.pow(k)))
            })
    })
}

pub fn nonzero_poly_strategy() -> impl Strategy<Value = RatFunc> {
    poly_strategy().prop_filter("nonzero", |p| !p.is_zero())
}

pub fn ratfunc_strategy() -> impl Strategy<Value = RatFunc> {
    (poly_strategy(), nonzero_poly_strategy())
        .prop_map(|(n, d)| n.div(&d).expect("nonzero denominator"))
}

/// Square matrices whose entries are small integers or low-degree polynomials.
pub fn matrix_strategy(n: usize) -> impl Strategy<Value = Matrix> {
    let entry = prop_oneof![
        3 => (-5i64..=5).prop_map(RatFunc::int),
        1 => (-2i64..=2, 0u32..2, 0u32..2).prop_map(|(c, i, j)| RatFunc::int(c).mul(&var("x").pow(i)).mul(&var("y").pow(j))),
    ];
    prop::collection::vec(entry, n * n).prop_map(move |e| Matrix::new(n, n, e).expect("shape"))
}
