//! Exhaustive enumeration of `Xᵖ`, `Sᵖ(X)` and the fiber over the free orbit
//! for the `p`-point set `{1, …, p}`.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use super::{check_prime, SplitError};
use crate::cn::Check;

pub const MAX_CENSUS_P: u32 = 7;

/// A sorted multiset of labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MultisetPoint(pub Vec<u32>);

impl MultisetPoint {
    pub fn new(mut labels: Vec<u32>) -> Self {
        labels.sort_unstable();
        MultisetPoint(labels)
    }

    pub fn is_free(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    pub fn insert(&self, n: u32) -> Self {
        let mut v = self.0.clone();
        v.push(n);
        Self::new(v)
    }
}

/// A point `(n, m)` of `X × Sᵖ⁻¹(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberPoint {
    pub label: u32,
    pub rest: MultisetPoint,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub p: u32,
    pub tuples: u64,
    pub diagonal: u64,
    pub off_diagonal: u64,
    pub classes: u64,
    pub free_classes: Vec<MultisetPoint>,
    pub fiber: Vec<FiberPoint>,
    pub checks: Vec<Check>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// `(|Xᵖ|, |Xᵖ∖Δ|, |Sᵖ(X)|, |U|, |p⁻¹(U)|)`.
    pub fn counts(&self) -> [u64; 5] {
        [
            self.tuples,
            self.off_diagonal,
            self.classes,
            self.free_classes.len() as u64,
            self.fiber.len() as u64,
        ]
    }
}

fn count_check(name: &str, got: u64, want: u64) -> Check {
    Check {
        name: name.into(),
        passed: got == want,
        detail: (got != want).then(|| format!("{got} vs {want}")),
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

pub fn sympower_census(p: u32) -> Result<CensusReport, SplitError> {
    check_prime(p, MAX_CENSUS_P)?;
    let labels: Vec<u32> = (1..=p).collect();
    let (mut tuples, mut diagonal) = (0u64, 0u64);
    let mut classes = BTreeSet::new();
    for t in std::iter::repeat_n(labels.iter().copied(), p as usize).multi_cartesian_product() {
        tuples += 1;
        let m = MultisetPoint::new(t);
        if !m.is_free() {
            diagonal += 1;
        }
        classes.insert(m);
    }
    let free_classes: Vec<MultisetPoint> =
        classes.iter().filter(|m| m.is_free()).cloned().collect();

    // the square: X × S^{p−1}(X) → S^p(X), (n, m) ↦ m + n, restricted over U
    let fiber: Vec<FiberPoint> = labels
        .iter()
        .cartesian_product(
            labels
                .iter()
                .copied()
                .combinations_with_replacement(p as usize - 1),
        )
        .map(|(&n, rest)| FiberPoint {
            label: n,
            rest: MultisetPoint::new(rest),
        })
        .filter(|f| free_classes.contains(&f.rest.insert(f.label)))
        .collect();

    let pp = u64::from(p);
    let factorial: u64 = (1..=pp).product();
    let mut checks = vec![
        count_check("|X^p| = p^p", tuples, pp.pow(p)),
        count_check("|X^p \\ diagonal| = p!", tuples - diagonal, factorial),
        count_check(
            "|S^p(X)| = C(2p-1, p)",
            classes.len() as u64,
            binomial(2 * pp - 1, pp),
        ),
        count_check("|U| = 1", free_classes.len() as u64, 1),
        count_check("|p^-1(U)| = p", fiber.len() as u64, pp),
    ];
    checks.push(Check {
        name: "U = {(1, ..., p)}".into(),
        passed: free_classes == [MultisetPoint(labels.clone())],
        detail: None,
    });
    let complements = fiber.iter().all(|f| {
        let expected: Vec<u32> = labels.iter().copied().filter(|&l| l != f.label).collect();
        f.rest.0 == expected
    });
    let distinct_labels =
        fiber.iter().map(|f| f.label).collect::<BTreeSet<_>>().len() == fiber.len();
    checks.push(Check {
        name: "fiber points are (n, complement of n)".into(),
        passed: complements && distinct_labels,
        detail: None,
    });

    Ok(CensusReport {
        p,
        tuples,
        diagonal,
        off_diagonal: tuples - diagonal,
        classes: classes.len() as u64,
        free_classes,
        fiber,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let r = sympower_census(2).unwrap();
        assert!(r.passed());
        assert_eq!(r.counts(), [4, 2, 3, 1, 2]);
        assert_eq!(r.diagonal, 2);
        let r = sympower_census(3).unwrap();
        assert_eq!(r.counts(), [27, 6, 10, 1, 3]);
        assert_eq!(
            r.fiber[0],
            FiberPoint {
                label: 1,
                rest: MultisetPoint(vec![2, 3])
            }
        );
    }

    #[test]
    fn rejects() {
        assert_eq!(sympower_census(4).unwrap_err(), SplitError::NotPrime(4));
        assert_eq!(sympower_census(11).unwrap_err(), SplitError::OverCap(11, 7));
    }
}
