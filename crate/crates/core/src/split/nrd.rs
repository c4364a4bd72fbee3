//! Diagonal elements of the split algebra `M_p(L)` over `Q(ζ_p)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_prime, SplitError};
use crate::algebra::{det_fraction_free, Cyclotomic, Field, Matrix, RatFunc, Rational, Scalar};
use crate::cn::Check;
use crate::expr::print_canonical;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalAlgebraElement {
    pub p: u32,
    pub entries: Vec<RatFunc>,
}

impl DiagonalAlgebraElement {
    /// Entries are promoted into `Q(ζ_p)`.
    pub fn new(p: u32, entries: Vec<RatFunc>) -> Result<Self, SplitError> {
        check_prime(p, u32::MAX)?;
        if entries.len() != p as usize {
            return Err(SplitError::Relation(format!(
                "{} entries for p = {p}",
                entries.len()
            )));
        }
        let entries = entries
            .iter()
            .map(|e| e.promote(p))
            .collect::<Result<_, _>>()?;
        Ok(DiagonalAlgebraElement { p, entries })
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::diag(&self.entries)
    }

    /// Entrywise product.
    pub fn mul(&self, other: &Self) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.mul(b))
            .collect();
        DiagonalAlgebraElement { p: self.p, entries }
    }

    pub fn strings(&self) -> Vec<String> {
        self.entries.iter().map(print_canonical).collect()
    }
}

/// `∏ d_i`, checked against the determinant of the diagonal matrix.
pub fn diagonal_nrd(d: &DiagonalAlgebraElement) -> Result<RatFunc, SplitError> {
    let field = Field::Cyclotomic(d.p);
    let prod = d
        .entries
        .iter()
        .fold(RatFunc::one(field), |acc, e| acc.mul(e));
    let det = det_fraction_free(&d.matrix())?;
    if det != prod {
        return Err(SplitError::NormMismatch(
            print_canonical(&prod),
            print_canonical(&det),
        ));
    }
    Ok(prod)
}

/// True iff the entries are pairwise distinct.
pub fn distinct_eigenvalues(d: &DiagonalAlgebraElement) -> bool {
    let e = &d.entries;
    (0..e.len()).all(|i| (i + 1..e.len()).all(|j| e[i] != e[j]))
}

fn zeta(p: u32, k: i64) -> RatFunc {
    RatFunc::constant(Scalar::Cyclotomic(Cyclotomic::zeta_pow(p, k)))
}

fn with_head(p: u32, head: RatFunc) -> Result<DiagonalAlgebraElement, SplitError> {
    let mut entries = vec![head];
    entries.extend((1..p).map(|k| zeta(p, k as i64)));
    DiagonalAlgebraElement::new(p, entries)
}

/// `(c/ζ^{(p−1)/2}, ζ, …, ζ^{p−1})` for odd `p`.
pub fn stated_diagonal(p: u32, c: &RatFunc) -> Result<DiagonalAlgebraElement, SplitError> {
    check_prime(p, u32::MAX)?;
    if p == 2 {
        return Err(SplitError::Relation(
            "(p - 1)/2 is not an integer for p = 2".into(),
        ));
    }
    with_head(p, c.promote(p)?.mul(&zeta(p, -(((p - 1) / 2) as i64))))
}

/// `(c·ζ^{−s}, ζ, …, ζ^{p−1})` with `s = p(p−1)/2 mod p`, whose product is `c`.
pub fn corrected_witness(p: u32, c: &RatFunc) -> Result<DiagonalAlgebraElement, SplitError> {
    check_prime(p, u32::MAX)?;
    let s = (p as i64 * (p as i64 - 1) / 2) % p as i64;
    with_head(p, c.promote(p)?.mul(&zeta(p, -s)))
}

#[derive(Debug, Clone, Serialize)]
pub struct NrdReport {
    pub p: u32,
    pub stated_entries: Vec<String>,
    /// The actual product of the stated entries.
    pub stated_value: String,
    pub stated_value_is_c: bool,
    pub witness_entries: Vec<String>,
    pub witness_value: String,
    pub checks: Vec<Check>,
}

impl NrdReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Computes the stated diagonal matrix and the corrected witness over
/// `Q(ζ_p)(c)` for odd `p`.
pub fn nrd_report(p: u32) -> Result<NrdReport, SplitError> {
    let c = RatFunc::named("c").promote(p)?;
    let stated = stated_diagonal(p, &c)?;
    let witness = corrected_witness(p, &c)?;
    let stated_value = diagonal_nrd(&stated)?;
    let witness_value = diagonal_nrd(&witness)?;
    let e = ((p - 1) * (p - 1) / 2) as i64;
    let mut checks = vec![
        Check::from_values(
            "Nrd(stated matrix) = c zeta^((p-1)^2/2)",
            &stated_value,
            &c.mul(&zeta(p, e)),
        ),
        Check::from_values("Nrd(witness) = c", &witness_value, &c),
        Check {
            name: "witness has distinct eigenvalues".into(),
            passed: distinct_eigenvalues(&witness),
            detail: None,
        },
        Check {
            name: "stated matrix has distinct eigenvalues".into(),
            passed: distinct_eigenvalues(&stated),
            detail: None,
        },
    ];
    let both = diagonal_nrd(&stated.mul(&witness))?;
    checks.push(Check::from_values(
        "Nrd(d e) = Nrd(d) Nrd(e)",
        &both,
        &stated_value.mul(&witness_value),
    ));
    Ok(NrdReport {
        p,
        stated_entries: stated.strings(),
        stated_value: print_canonical(&stated_value),
        stated_value_is_c: stated_value == c,
        witness_entries: witness.strings(),
        witness_value: print_canonical(&witness_value),
        checks,
    })
}

fn random_element(p: u32, rng: &mut ChaCha8Rng) -> RatFunc {
    let coeffs: Vec<Rational> = (0..p - 1)
        .map(|_| {
            Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=5)).expect("nonzero denominator")
        })
        .collect();
    RatFunc::constant(Scalar::Cyclotomic(Cyclotomic::from_coeffs(p, &coeffs)))
}

/// Random diagonal elements over `Q(ζ_p)`: the product equals the
/// determinant, and the norm is multiplicative.
pub fn nrd_trials(p: u32, trials: usize, seed: u64) -> Result<Check, SplitError> {
    check_prime(p, u32::MAX)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..trials {
        let d =
            DiagonalAlgebraElement::new(p, (0..p).map(|_| random_element(p, &mut rng)).collect())?;
        let e =
            DiagonalAlgebraElement::new(p, (0..p).map(|_| random_element(p, &mut rng)).collect())?;
        let (nd, ne) = match (diagonal_nrd(&d), diagonal_nrd(&e)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(err), _) | (_, Err(err)) => {
                return Ok(Check {
                    name: format!("Nrd over Q(zeta({p}))"),
                    passed: false,
                    detail: Some(format!("trial {k}: {err}")),
                })
            }
        };
        if diagonal_nrd(&d.mul(&e))? != nd.mul(&ne) {
            return Ok(Check {
                name: format!("Nrd over Q(zeta({p}))"),
                passed: false,
                detail: Some(format!("trial {k}: not multiplicative")),
            });
        }
    }
    Ok(Check {
        name: format!("Nrd = det over Q(zeta({p})), {trials} trials"),
        passed: true,
        detail: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_distinctness() {
        let one = DiagonalAlgebraElement::new(3, vec![RatFunc::int(1); 3]).unwrap();
        assert!(diagonal_nrd(&one).unwrap().is_one());
        let d =
            DiagonalAlgebraElement::new(3, vec![RatFunc::int(1), zeta(3, 1), zeta(3, 2)]).unwrap();
        assert!(distinct_eigenvalues(&d));
        let d = DiagonalAlgebraElement::new(3, vec![RatFunc::int(1), RatFunc::int(1), zeta(3, 1)])
            .unwrap();
        assert!(!distinct_eigenvalues(&d));
    }

    #[test]
    fn stated_matrix_misses_c() {
        for p in [3, 5] {
            let r = nrd_report(p).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(!r.stated_value_is_c);
        }
    }

    #[test]
    fn seeded_trials() {
        assert!(nrd_trials(3, 10, 7).unwrap().passed);
    }
}
