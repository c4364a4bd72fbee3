//! Power products of variables.

use std::cmp::Ordering;

use smallvec::SmallVec;

use super::var::Var;

/// Sparse exponent vector sorted by variable id, without zero exponents.
///
/// `Ord` is graded lexicographic over variable ids and serves as the internal
/// term order. [`Monomial::canonical_cmp`] is the same order over variable
/// names and is what printing and normalization use.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    deg: u32,
    exps: SmallVec<[(Var, u32); 4]>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        let mut exps = SmallVec::new();
        exps.push((v, e));
        Monomial { deg: e, exps }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut m = Self::one();
        for (v, e) in pairs {
            m = m.mul(&Self::var_pow(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.exps
            .iter()
            .find(|(w, _)| *w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.exps
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = SmallVec::with_capacity(self.exps.len() + other.exps.len());
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    exps.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&a[i..]);
        exps.extend_from_slice(&b[j..]);
        Monomial {
            deg: self.deg + other.deg,
            exps,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        Monomial {
            deg: self.deg * e,
            exps: self.exps.iter().map(|&(v, k)| (v, k * e)).collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.deg > self.deg {
            return None;
        }
        let mut exps = SmallVec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(v, e) in &self.exps {
            if j < other.exps.len() && other.exps[j].0 < v {
                return None;
            }
            if j < other.exps.len() && other.exps[j].0 == v {
                let f = other.exps[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => exps.push((v, e - f)),
                }
            } else {
                exps.push((v, e));
            }
        }
        if j < other.exps.len() {
            return None;
        }
        Some(Monomial {
            deg: self.deg - other.deg,
            exps,
        })
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div(self).is_some()
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut exps = SmallVec::new();
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    exps.push((a[i].0, a[i].1.min(b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        let deg = exps.iter().map(|&(_, e)| e).sum();
        Monomial { deg, exps }
    }

    /// Removes `v` and returns its exponent together with the remainder.
    pub fn split_var(&self, v: Var) -> (u32, Self) {
        match self.exps.iter().position(|&(w, _)| w == v) {
            None => (0, self.clone()),
            Some(k) => {
                let e = self.exps[k].1;
                let mut exps = self.exps.clone();
                exps.remove(k);
                (
                    e,
                    Monomial {
                        deg: self.deg - e,
                        exps,
                    },
                )
            }
        }
    }

    /// Exponent pairs sorted by canonical (name) order.
    pub fn canonical_pairs(&self) -> SmallVec<[(Var, u32); 4]> {
        let mut p = self.exps.clone();
        p.sort_by(|a, b| a.0.canonical_cmp(b.0));
        p
    }

    /// Graded lexicographic order over variable names.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            if self.exps.len() <= 1 && other.exps.len() <= 1 {
                return lex_cmp(&self.exps, &other.exps, Var::canonical_cmp);
            }
            lex_cmp(
                &self.canonical_pairs(),
                &other.canonical_pairs(),
                Var::canonical_cmp,
            )
        })
    }
}

/// Lexicographic comparison of sorted sparse exponent lists: the first
/// variable (in `var_cmp` order) where the exponents differ decides, and a
/// larger exponent wins.
fn lex_cmp(a: &[(Var, u32)], b: &[(Var, u32)], var_cmp: impl Fn(Var, Var) -> Ordering) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        if x.0 != y.0 {
            // The side holding the earlier variable has a positive exponent
            // where the other has zero.
            return match var_cmp(x.0, y.0) {
                Ordering::Less => Ordering::Greater,
                _ => Ordering::Less,
            };
        }
        if x.1 != y.1 {
            return x.1.cmp(&y.1);
        }
    }
    a.len().cmp(&b.len())
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| lex_cmp(&self.exps, &other.exps, |a, b| a.cmp(&b)))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .canonical_pairs()
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(&str, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|&(n, e)| (Var::named(n), e)))
    }

    #[test]
    fn mul_div_roundtrip() {
        let a = m(&[("x", 2), ("y", 1)]);
        let b = m(&[("y", 3), ("z", 1)]);
        let ab = a.mul(&b);
        assert_eq!(ab.degree(), 7);
        assert_eq!(ab.div(&b), Some(a.clone()));
        assert_eq!(a.div(&b), None);
        assert_eq!(a.gcd(&b), m(&[("y", 1)]));
    }

    #[test]
    fn canonical_order_is_graded_lex_by_name() {
        let lo = m(&[("x1", 2)]);
        let hi = m(&[("a", 1), ("x2", 2)]);
        assert_eq!(lo.canonical_cmp(&hi), Ordering::Less);
        // same degree: a1*b1 beats a2*b2 because a1 is the earliest name
        assert_eq!(
            m(&[("a1", 1), ("b1", 1)]).canonical_cmp(&m(&[("a2", 1), ("b2", 1)])),
            Ordering::Greater
        );
        assert_eq!(
            m(&[("x1", 1), ("x2", 1)]).canonical_cmp(&m(&[("x2", 2)])),
            Ordering::Greater
        );
    }
}
