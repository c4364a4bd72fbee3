//! Matrices whose entries have denominators in a fixed basis of pairwise
//! coprime irreducible polynomials. Sums take the elementwise maximum of the
//! exponents, so no gcd is ever computed; cancellation is trial division by
//! the basis.

use std::cell::RefCell;

use crate::algebra::{Matrix, Poly, RatFunc, Var};

#[derive(Clone, Debug)]
pub(crate) struct Frac {
    num: Poly,
    exps: Vec<u32>,
}

pub(crate) struct Basis {
    factors: Vec<Poly>,
    /// Trusted bases consist of coprime irreducibles; results are then
    /// already in lowest terms.
    trusted: bool,
    powers: RefCell<Vec<Vec<Poly>>>,
}

#[derive(Clone, Debug)]
pub(crate) struct FracMat {
    rows: usize,
    cols: usize,
    entries: Vec<Frac>,
}

impl Basis {
    pub(crate) fn new(factors: Vec<Poly>, trusted: bool) -> Self {
        let powers = factors
            .iter()
            .map(|f| vec![Poly::one(f.field()), f.clone()])
            .collect();
        Basis {
            factors,
            trusted,
            powers: RefCell::new(powers),
        }
    }

    pub(crate) fn factors(&self) -> &[Poly] {
        &self.factors
    }

    fn power(&self, i: usize, e: u32) -> Poly {
        let mut cache = self.powers.borrow_mut();
        let row = &mut cache[i];
        while row.len() <= e as usize {
            let next = row[row.len() - 1].mul(&self.factors[i]);
            row.push(next);
        }
        row[e as usize].clone()
    }

    fn product(&self, exps: &[u32]) -> Option<Poly> {
        let mut acc: Option<Poly> = None;
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                let p = self.power(i, e);
                acc = Some(match acc {
                    None => p,
                    Some(a) => a.mul(&p),
                });
            }
        }
        acc
    }

    /// Writes the denominator of `r` over the basis, if it factors there.
    pub(crate) fn lift(&self, r: &RatFunc) -> Option<Frac> {
        let mut den = r.denom().clone();
        let mut exps = vec![0; self.factors.len()];
        for (i, f) in self.factors.iter().enumerate() {
            while !den.is_constant() {
                match den.div_exact(f) {
                    Some(q) => {
                        den = q;
                        exps[i] += 1;
                    }
                    None => break,
                }
            }
        }
        let k = den.as_constant()?;
        Some(Frac {
            num: r.numer().scale(&k.inv()),
            exps,
        })
    }

    pub(crate) fn lift_matrix(&self, m: &Matrix) -> Option<FracMat> {
        let entries = m
            .entries()
            .iter()
            .map(|e| self.lift(e))
            .collect::<Option<_>>()?;
        Some(FracMat {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        })
    }

    pub(crate) fn zero(&self, field: crate::algebra::Field) -> Frac {
        Frac {
            num: Poly::zero(field),
            exps: vec![0; self.factors.len()],
        }
    }

    pub(crate) fn mul(&self, a: &Frac, b: &Frac) -> Frac {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero(a.num.field());
        }
        Frac {
            num: a.num.mul(&b.num),
            exps: a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect(),
        }
    }

    pub(crate) fn sum(&self, items: &[Frac]) -> Frac {
        let field = items[0].num.field();
        let live: Vec<&Frac> = items.iter().filter(|f| !f.num.is_zero()).collect();
        if live.is_empty() {
            return self.zero(field);
        }
        let top: Vec<u32> = (0..self.factors.len())
            .map(|i| live.iter().map(|f| f.exps[i]).max().unwrap_or(0))
            .collect();
        let mut terms = Vec::new();
        for f in live {
            let diff: Vec<u32> = top.iter().zip(&f.exps).map(|(t, e)| t - e).collect();
            let num = match self.product(&diff) {
                Some(p) => f.num.mul(&p),
                None => f.num.clone(),
            };
            terms.extend(num.terms().iter().cloned());
        }
        Frac {
            num: Poly::from_terms(field, terms),
            exps: top,
        }
    }

    /// Cancels basis factors from the numerator.
    pub(crate) fn reduce(&self, f: &Frac) -> Frac {
        if f.num.is_zero() {
            return self.zero(f.num.field());
        }
        let mut num = f.num.clone();
        let mut exps = f.exps.clone();
        for (i, e) in exps.iter_mut().enumerate() {
            while *e > 0 {
                match num.div_exact(&self.factors[i]) {
                    Some(q) => {
                        num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        Frac { num, exps }
    }

    pub(crate) fn to_ratfunc(&self, f: &Frac) -> RatFunc {
        let r = self.reduce(f);
        match self.product(&r.exps) {
            None => RatFunc::from_poly(r.num),
            Some(den) if self.trusted => RatFunc::from_coprime(r.num, den),
            Some(den) => RatFunc::new(r.num, den).expect("nonzero basis product"),
        }
    }

    /// Exact equality of the represented values.
    pub(crate) fn eq(&self, a: &Frac, b: &Frac) -> bool {
        let diff = self.sum(&[
            a.clone(),
            Frac {
                num: b.num.neg(),
                exps: b.exps.clone(),
            },
        ]);
        diff.num.is_zero()
    }

    pub(crate) fn matmul(&self, a: &FracMat, b: &FracMat) -> FracMat {
        let mut entries = Vec::with_capacity(a.rows * b.cols);
        for i in 0..a.rows {
            for j in 0..b.cols {
                let prods: Vec<Frac> = (0..a.cols)
                    .map(|k| self.mul(a.get(i, k), b.get(k, j)))
                    .collect();
                entries.push(self.reduce(&self.sum(&prods)));
            }
        }
        FracMat {
            rows: a.rows,
            cols: b.cols,
            entries,
        }
    }

    pub(crate) fn to_matrix(&self, m: &FracMat) -> Matrix {
        Matrix::new(
            m.rows,
            m.cols,
            m.entries.iter().map(|e| self.to_ratfunc(e)).collect(),
        )
        .expect("shape")
    }

    /// First entry where the two matrices differ.
    pub(crate) fn first_difference(&self, a: &FracMat, b: &FracMat) -> Option<(usize, usize)> {
        (0..a.rows)
            .flat_map(|i| (0..a.cols).map(move |j| (i, j)))
            .find(|&(i, j)| !self.eq(a.get(i, j), b.get(i, j)))
    }
}

impl FracMat {
    pub(crate) fn get(&self, i: usize, j: usize) -> &Frac {
        &self.entries[i * self.cols + j]
    }

    pub(crate) fn transpose(&self) -> FracMat {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        FracMat {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Scales column `j` by `d[j]`.
    pub(crate) fn scale_columns(&self, basis: &Basis, d: &[Frac]) -> FracMat {
        let entries = (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .map(|(i, j)| basis.mul(self.get(i, j), &d[j]))
            .collect();
        FracMat {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }
}

impl Frac {
    fn poly(p: Poly, len: usize) -> Frac {
        Frac {
            num: p,
            exps: vec![0; len],
        }
    }

    /// Moves the exponents into the slots starting at `offset` of a basis
    /// of length `len`.
    fn embed(&self, offset: usize, len: usize) -> Frac {
        let mut exps = vec![0; len];
        exps[offset..offset + self.exps.len()].copy_from_slice(&self.exps);
        Frac {
            num: self.num.clone(),
            exps,
        }
    }

    fn rename(&self, map: &dyn Fn(Var) -> Var) -> Frac {
        Frac {
            num: self.num.rename(map),
            exps: self.exps.clone(),
        }
    }

    fn neg(&self) -> Frac {
        Frac {
            num: self.num.neg(),
            exps: self.exps.clone(),
        }
    }

    fn mul_poly(&self, p: &Poly) -> Frac {
        Frac {
            num: self.num.mul(p),
            exps: self.exps.clone(),
        }
    }

    fn bump(&self, i: usize) -> Frac {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        Frac {
            num: self.num.clone(),
            exps,
        }
    }
}

impl FracMat {
    fn map(&self, f: impl Fn(&Frac) -> Frac) -> FracMat {
        FracMat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn block(tl: &FracMat, tr: &FracMat, bl: &FracMat, br: &FracMat) -> FracMat {
        let h = tl.rows;
        let n = 2 * h;
        let entries = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| {
                let m = match (i < h, j < h) {
                    (true, true) => tl,
                    (true, false) => tr,
                    (false, true) => bl,
                    (false, false) => br,
                };
                m.get(i % h, j % h).clone()
            })
            .collect();
        FracMat {
            rows: n,
            cols: n,
            entries,
        }
    }
}

/// `C_n` and its blocks over the basis built along the recursion.
pub(crate) struct Assembled {
    pub basis: Basis,
    pub cn: FracMat,
    pub c: Poly,
    /// Lower block, renamed block, `(C C')⁻¹`, `s`, `t`; absent at level 1.
    pub blocks: Option<(FracMat, FracMat, FracMat, Poly, Poly)>,
}

struct Level {
    factors: Vec<Poly>,
    cn: FracMat,
    c: Poly,
    blocks: Option<(FracMat, FracMat, FracMat, Poly, Poly)>,
}

/// Builds `C_n` for polynomial parameters. The basis at level `n` is the
/// lower basis, its renamed copy, `t` and `s`.
pub(crate) fn assemble_factored(params: &[Poly], xs: &[Var], trusted: bool) -> Assembled {
    let level = assemble_level(params, xs);
    Assembled {
        basis: Basis::new(level.factors, trusted),
        cn: level.cn,
        c: level.c,
        blocks: level.blocks,
    }
}

fn assemble_level(params: &[Poly], xs: &[Var]) -> Level {
    let n = params.len();
    let field = params[0].field();
    let x: Vec<Poly> = xs.iter().map(|&v| Poly::var_in(field, v)).collect();
    if n == 1 {
        let a = &params[0];
        let entries = vec![x[0].clone(), x[1].clone(), a.mul(&x[1]).neg(), x[0].neg()];
        let cn = FracMat {
            rows: 2,
            cols: 2,
            entries: entries.into_iter().map(|p| Frac::poly(p, 0)).collect(),
        };
        let c = x[0].mul(&x[0]).sub(&a.mul(&x[1]).mul(&x[1]));
        return Level {
            factors: Vec::new(),
            cn,
            c,
            blocks: None,
        };
    }
    let h = xs.len() / 2;
    let lower = assemble_level(&params[..n - 1], &xs[..h]);
    let rename = |v: Var| match xs[..h].iter().position(|&w| w == v) {
        Some(i) => xs[h + i],
        None => v,
    };
    let k = lower.factors.len();
    let len = 2 * k + 2;
    let (ti, si) = (2 * k, 2 * k + 1);
    let s = lower.c.clone();
    let t = s.rename(&rename);
    let mut factors = lower.factors.clone();
    factors.extend(lower.factors.iter().map(|f| f.rename(&rename)));
    factors.push(t.clone());
    factors.push(s.clone());
    let basis = Basis::new(factors.clone(), false);

    let c = lower.cn.map(|e| e.embed(0, len));
    let c_prime = lower.cn.map(|e| e.rename(&rename).embed(k, len));
    let b = &params[n - 1];
    let cc = basis.matmul(&c_prime, &c);
    let ccc = basis.matmul(&cc, &c_prime);
    let br = ccc.map(|e| basis.reduce(&e.neg().bump(ti)));
    let bl = c_prime.map(|e| e.mul_poly(&b.neg()));
    let cn = FracMat::block(&c, &c_prime, &bl, &br);
    let d = cc.map(|e| basis.reduce(&e.bump(ti).bump(si)));
    let cval = s.sub(&b.mul(&t));
    Level {
        factors,
        cn,
        c: cval,
        blocks: Some((c, c_prime, d, s, t)),
    }
}
