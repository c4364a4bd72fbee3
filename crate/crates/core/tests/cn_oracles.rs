mod common;

use common::{cofactor_det, random_rational, SEED};
use pforge::algebra::{Matrix, RatFunc, Scalar, Var};
use pforge::cn::{build_cn, default_params, rank1_charpoly};
use pforge::qforms::pfister;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scalar(r: &RatFunc) -> Scalar {
    if r.is_zero() {
        return Scalar::int(0);
    }
    r.as_constant().expect("numeric value")
}

/// C_n at random rational parameters and coordinates, checked against the
/// defining identities evaluated independently.
#[test]
fn numeric_cn_trials() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 1..=3 {
        let params = default_params(n);
        let rec = build_cn(n, &params).unwrap();
        let mut done = 0;
        while done < 100 {
            let pv: Vec<RatFunc> = (0..n).map(|_| random_rational(&mut rng)).collect();
            if pv.iter().any(RatFunc::is_zero) {
                continue;
            }
            let xv: Vec<RatFunc> = (0..1 << n).map(|_| random_rational(&mut rng)).collect();
            let point: Vec<(Var, Scalar)> = params
                .iter()
                .zip(&pv)
                .chain(rec.xs.iter().zip(&xv))
                .map(|(&v, r)| (v, scalar(r)))
                .collect();
            let Ok(c) = rec.specialize(&point) else {
                continue;
            };
            let a = pfister(&pv).unwrap().gram();
            let phi = xv.iter().enumerate().fold(RatFunc::int(0), |acc, (i, x)| {
                acc.add(&a.get(i, i).mul(&x.pow(2)))
            });
            let dim = 1 << n;
            assert_eq!(
                c.mul(&a).mul(&c.transpose()),
                a.scale(&phi),
                "n = {n}, trial {done}"
            );
            assert_eq!(
                c.mul(&c),
                Matrix::scalar_identity(dim, &phi),
                "n = {n}, trial {done}"
            );
            assert_eq!(c.row(0), xv);
            assert_eq!(c.col(0), a.mul_vec(&xv).unwrap());
            done += 1;
        }
    }
}

/// det(xI - (a_i b_j)) through cofactor expansion, for random rational vectors.
#[test]
fn rank1_against_cofactor_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let x = Var::named("x");
    let xr = RatFunc::var(x);
    for n in 1..=4 {
        for _ in 0..100 {
            let a: Vec<RatFunc> = (0..n).map(|_| random_rational(&mut rng)).collect();
            let b: Vec<RatFunc> = (0..n).map(|_| random_rational(&mut rng)).collect();
            let m = Matrix::from_fn(n, n, |i, j| {
                let d = if i == j { xr.clone() } else { RatFunc::int(0) };
                d.sub(&a[i].mul(&b[j]))
            });
            let r = rank1_charpoly(&a, &b, x).unwrap();
            assert!(r.matches);
            assert_eq!(r.charpoly, cofactor_det(&m));
        }
    }
}

#[test]
fn rank1_symbolic_against_cofactor_oracle() {
    let x = Var::named("x");
    for n in 1..=4 {
        let (a, b) = pforge::cn::rank1_symbolic(n);
        let m = Matrix::from_fn(n, n, |i, j| {
            let d = if i == j {
                RatFunc::var(x)
            } else {
                RatFunc::int(0)
            };
            d.sub(&a[i].mul(&b[j]))
        });
        assert_eq!(
            rank1_charpoly(&a, &b, x).unwrap().charpoly,
            cofactor_det(&m)
        );
    }
}
