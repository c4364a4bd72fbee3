//! Interned variable identifiers.
//!
//! The interner is append-only and process-wide. Ids give a fast internal
//! term order; the canonical order used for printing and normalization is the
//! natural order of names (`a < a2 < a10 < b < x1 < x2 < x10`), which does not
//! depend on the order in which variables were first seen.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use super::AlgebraError;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

#[derive(Default)]
struct Interner {
    names: Vec<&'static str>,
    ids: HashMap<&'static str, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

/// Letters, digits and underscores, starting with a letter; `zeta` is reserved.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "zeta"
}

impl Var {
    pub fn new(name: &str) -> Result<Var, AlgebraError> {
        if !is_valid_name(name) {
            return Err(AlgebraError::InvalidVariable(name.to_string()));
        }
        if let Some(&id) = interner().read().expect("interner poisoned").ids.get(name) {
            return Ok(Var(id));
        }
        let mut w = interner().write().expect("interner poisoned");
        if let Some(&id) = w.ids.get(name) {
            return Ok(Var(id));
        }
        let id = w.names.len() as u32;
        let leaked: &'static str = Box::leak(name.to_string().into_boxed_str());
        w.names.push(leaked);
        w.ids.insert(leaked, id);
        Ok(Var(id))
    }

    /// Shorthand for names known to be valid (panics otherwise).
    pub fn named(name: &str) -> Var {
        Var::new(name).unwrap_or_else(|e| panic!("{e}"))
    }

    /// `prefix` followed by a decimal index, e.g. `x3`.
    pub fn indexed(prefix: &str, i: usize) -> Var {
        Var::named(&format!("{prefix}{i}"))
    }

    pub fn name(self) -> &'static str {
        interner().read().expect("interner poisoned").names[self.0 as usize]
    }

    pub fn canonical_cmp(self, other: Var) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        natural_cmp(self.name(), other.name())
    }
}

/// Compares names chunk by chunk: digit runs numerically, everything else bytewise.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (a, b) = (a.as_bytes(), b.as_bytes());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i].is_ascii_digit() && b[j].is_ascii_digit() {
            let si = i;
            while i < a.len() && a[i].is_ascii_digit() {
                i += 1;
            }
            let sj = j;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            let na = trim_zeros(&a[si..i]);
            let nb = trim_zeros(&b[sj..j]);
            let ord = na
                .len()
                .cmp(&nb.len())
                .then_with(|| na.cmp(nb))
                .then_with(|| (i - si).cmp(&(j - sj)));
            if ord != Ordering::Equal {
                return ord;
            }
        } else {
            let ord = a[i].cmp(&b[j]);
            if ord != Ordering::Equal {
                return ord;
            }
            i += 1;
            j += 1;
        }
    }
    (a.len() - i).cmp(&(b.len() - j))
}

fn trim_zeros(d: &[u8]) -> &[u8] {
    let k = d.iter().position(|&c| c != b'0').unwrap_or(d.len());
    &d[k..]
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        let a = Var::named("alpha_1");
        assert_eq!(Var::named("alpha_1"), a);
        assert_eq!(a.name(), "alpha_1");
    }

    #[test]
    fn rejects_bad_names() {
        for bad in ["", "1x", "_x", "x-y", "zeta", "x.1"] {
            assert!(Var::new(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn natural_order() {
        let mut names = vec!["x10", "x2", "b", "a10", "a2", "a", "x1", "z"];
        names.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(names, ["a", "a2", "a10", "b", "x1", "x2", "x10", "z"]);
        assert_eq!(natural_cmp("x01", "x1"), Ordering::Greater);
    }
}
