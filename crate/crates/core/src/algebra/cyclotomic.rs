//! Elements of the cyclotomic field Q(ζ_p) in the power basis 1, ζ, …, ζ^{p−2}.

use std::fmt;

use super::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    p: u32,
    coeffs: Vec<Rational>,
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Cyclotomic {
    /// Reduces a coefficient vector of any length modulo Φ_p.
    ///
    /// Exponents are first folded modulo p (ζ^p = 1), then the ζ^{p−1}
    /// coefficient is eliminated with 1 + ζ + … + ζ^{p−1} = 0.
    pub fn from_coeffs(p: u32, raw: &[Rational]) -> Self {
        assert!(is_prime(p), "cyclotomic order must be prime, got {p}");
        let p_us = p as usize;
        let mut folded = vec![Rational::zero(); p_us];
        for (k, c) in raw.iter().enumerate() {
            if !c.is_zero() {
                folded[k % p_us] = folded[k % p_us].add(c);
            }
        }
        let top = folded.pop().expect("p >= 2");
        let coeffs = folded.into_iter().map(|c| c.sub(&top)).collect();
        Cyclotomic { p, coeffs }
    }

    pub fn from_rational(p: u32, r: Rational) -> Self {
        Self::from_coeffs(p, &[r])
    }

    pub fn zero(p: u32) -> Self {
        Self::from_rational(p, Rational::zero())
    }

    pub fn one(p: u32) -> Self {
        Self::from_rational(p, Rational::one())
    }

    /// ζ_p^k for any integer k.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        let e = k.rem_euclid(p as i64) as usize;
        let mut raw = vec![Rational::zero(); e + 1];
        raw[e] = Rational::one();
        Self::from_coeffs(p, &raw)
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..]
            .iter()
            .all(Rational::is_zero)
            .then(|| &self.coeffs[0])
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        Cyclotomic { p: self.p, coeffs }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            p: self.p,
            coeffs: self.coeffs.iter().map(Rational::neg).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c.mul(r)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let n = self.coeffs.len();
        let mut raw = vec![Rational::zero(); 2 * n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] = raw[i + j].add(&a.mul(b));
                }
            }
        }
        Self::from_coeffs(self.p, &raw)
    }

    /// Image under the Galois automorphism ζ ↦ ζ^k (k coprime to p).
    pub fn galois(&self, k: u32) -> Self {
        let p = self.p as usize;
        let mut raw = vec![Rational::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = (i * k as usize) % p;
            raw[e] = raw[e].add(c);
        }
        Self::from_coeffs(self.p, &raw)
    }

    /// Field norm N_{Q(ζ)/Q}: the product of all Galois conjugates.
    pub fn norm(&self) -> Rational {
        let mut acc = self.clone();
        for k in 2..self.p {
            acc = acc.mul(&self.galois(k));
        }
        acc.as_rational().cloned().expect("norm lies in Q")
    }

    /// Inverse via the conjugate product divided by the norm; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut conj = Self::one(self.p);
        for k in 2..self.p {
            conj = conj.mul(&self.galois(k));
        }
        let n = self
            .mul(&conj)
            .as_rational()
            .cloned()
            .expect("norm lies in Q");
        Some(conj.scale(&n.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.p);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Number of nonzero power-basis coordinates.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for Cyclotomic {
    /// Prints as a sum of powers of `zeta(p)`, parseable by the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let zeta = match k {
                0 => String::new(),
                1 => format!("zeta({})", self.p),
                _ => format!("zeta({})^{}", self.p, k),
            };
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{zeta}")?,
                (_, false) => write!(f, "{mag}*{zeta}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
