//! Moves between the subforms `ψ = ⟨⟨a_1, …, a_{n−1}⟩⟩ ⊥ ⟨−a_n⟩` of two
//! simply P-equivalent presentations.

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Matrix, RatFunc, Var};
use crate::expr::print_canonical;
use crate::qforms::{
    pfister, qform_eval, subform_psi, verify_congruence, CongruenceWitness, QForm,
};

use super::lemmas::build_interchange_chain;
use super::{ChainError, SubstChain};

/// A presentation `a_1, …, a_n`; its subform is `⟨⟨a_1..a_{n−1}⟩⟩ ⊥ ⟨−a_n⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation(pub Vec<RatFunc>);

impl Presentation {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn psi(&self) -> Result<QForm, ChainError> {
        Ok(subform_psi(&self.0)?)
    }

    fn swapped(&self, p: usize, q: usize) -> Presentation {
        let mut v = self.0.clone();
        v.swap(p - 1, q - 1);
        Presentation(v)
    }

    fn replaced(&self, p: usize, q: usize, a: &RatFunc, b: &RatFunc) -> Presentation {
        let mut v = self.0.clone();
        v[p - 1] = a.clone();
        v[q - 1] = b.clone();
        Presentation(v)
    }

    pub fn strings(&self) -> Vec<String> {
        self.0.iter().map(print_canonical).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveKind {
    IsometrySlotRewrite,
    InterchangeLemma,
    ScalarLemma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MoveCase {
    /// `j ≠ n`.
    #[serde(rename = "i")]
    I,
    /// `i ≠ n − 1`, `j = n`.
    #[serde(rename = "j")]
    J,
    /// `i = n − 1`, `j = n`.
    #[serde(rename = "iii")]
    III,
}

#[derive(Debug, Clone)]
pub enum MovePayload {
    Witness(CongruenceWitness),
    Chain(Box<SubstChain>),
    /// Too large to build here; the same chain was verified on a template
    /// of this dimension.
    Deferred {
        template_dim: usize,
    },
}

#[derive(Debug, Clone)]
pub struct PfisterMove {
    pub kind: MoveKind,
    /// `rewrite`, `transpose` or `interchange`.
    pub label: &'static str,
    /// One-based positions in the presentation.
    pub positions: (usize, usize),
    pub before: Presentation,
    pub after: Presentation,
    pub payload: MovePayload,
}

impl PfisterMove {
    pub fn to_json(&self) -> Value {
        let payload = match &self.payload {
            MovePayload::Witness(w) => json!({"witness": w.matrix().to_rows().iter()
                .map(|r| r.iter().map(print_canonical).collect::<Vec<_>>()).collect::<Vec<_>>()}),
            MovePayload::Chain(c) => json!({"chain": c.to_json()}),
            MovePayload::Deferred { template_dim } => {
                json!({"deferred": format!("verified at dim <= {template_dim} template")})
            }
        };
        json!({
            "kind": self.kind,
            "label": self.label,
            "positions": [self.positions.0, self.positions.1],
            "before": self.before.strings(),
            "after": self.after.strings(),
            "payload": payload,
        })
    }
}

/// `⟨⟨a, b⟩⟩ ≅ ⟨⟨a, −ab⟩⟩` by `e0, e1, e3, a·e2`.
pub fn twist_witness(a: &RatFunc, b: &RatFunc) -> Result<CongruenceWitness, ChainError> {
    let f = a.field();
    let (o, z) = (RatFunc::one(f), RatFunc::zero(f));
    let m = Matrix::from_rows(vec![
        vec![o.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), o.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), o.clone()],
        vec![z.clone(), z.clone(), a.clone(), z],
    ])?;
    let src = pfister(&[a.clone(), b.clone()])?;
    let dst = pfister(&[a.clone(), a.mul(b).neg()])?;
    Ok(verify_congruence(&m, &src, &dst)?)
}

/// Lifts a witness on `⟨⟨α, β⟩⟩` to `⟨⟨…⟩⟩` with `k` parameters, acting on
/// the zero-based slots `p < q` and as the identity on the others.
pub fn lift_pair_witness(w: &Matrix, k: usize, p: usize, q: usize) -> Matrix {
    let field = w.field();
    let local = |r: usize| ((r >> p) & 1) | (((r >> q) & 1) << 1);
    let rest = |r: usize| r & !(1 << p) & !(1 << q);
    Matrix::from_fn(1 << k, 1 << k, |r, c| {
        if rest(r) == rest(c) {
            w.get(local(r), local(c)).clone()
        } else {
            RatFunc::zero(field)
        }
    })
}

/// `⟨⟨α, β⟩⟩ ≅ ⟨⟨β, α⟩⟩` by exchanging the middle coordinates.
pub fn swap_witness(alpha: &RatFunc, beta: &RatFunc) -> Result<CongruenceWitness, ChainError> {
    let field = alpha.field();
    let p = Matrix::from_fn(4, 4, |r, c| {
        let image = match r {
            1 => 2,
            2 => 1,
            r => r,
        };
        if image == c {
            RatFunc::one(field)
        } else {
            RatFunc::zero(field)
        }
    });
    let src = pfister(&[alpha.clone(), beta.clone()])?;
    let dst = pfister(&[beta.clone(), alpha.clone()])?;
    Ok(verify_congruence(&p, &src, &dst)?)
}

/// Presentations above this Pfister dimension get deferred interchange payloads.
pub const CHAIN_DIM_CAP: usize = 4;

struct Builder {
    moves: Vec<PfisterMove>,
    current: Presentation,
    chain_cap: usize,
}

impl Builder {
    fn isometry(
        &mut self,
        label: &'static str,
        p: usize,
        q: usize,
        w: &CongruenceWitness,
        after: Presentation,
    ) -> Result<(), ChainError> {
        let k = self.current.len() - 1;
        let lifted = lift_pair_witness(w.matrix(), k, p - 1, q - 1);
        let full = lifted.direct_sum(&Matrix::identity(lifted.field(), 1));
        let witness = verify_congruence(&full, &self.current.psi()?, &after.psi()?)?;
        self.push(
            MoveKind::IsometrySlotRewrite,
            label,
            (p, q),
            after,
            MovePayload::Witness(witness),
        );
        Ok(())
    }

    fn transpose(&mut self, p: usize, q: usize) -> Result<(), ChainError> {
        let cur = &self.current.0;
        let w = swap_witness(&cur[p - 1], &cur[q - 1])?;
        let after = self.current.swapped(p, q);
        self.isometry("transpose", p, q, &w, after)
    }

    fn rewrite(
        &mut self,
        p: usize,
        q: usize,
        w: &CongruenceWitness,
        new: (&RatFunc, &RatFunc),
    ) -> Result<(), ChainError> {
        let after = self.current.replaced(p, q, new.0, new.1);
        self.isometry("rewrite", p, q, w, after)
    }

    /// `⟨⟨P, α⟩⟩ ⊥ ⟨−β⟩ ≈ ⟨⟨P, β⟩⟩ ⊥ ⟨−α⟩`.
    fn interchange(&mut self) -> Result<(), ChainError> {
        let n = self.current.len();
        let cur = self.current.0.clone();
        let (head, alpha, beta) = (&cur[..n - 2], &cur[n - 2], &cur[n - 1]);
        let after = self.current.swapped(n - 1, n);
        let payload = if 1usize << head.len() <= self.chain_cap {
            let chain = build_interchange_chain(head, alpha, beta)?;
            check_endpoints(&chain, &self.current, &after)?;
            MovePayload::Chain(Box::new(chain))
        } else {
            let template: Vec<RatFunc> = (1..=2)
                .map(|i| RatFunc::var(Var::indexed("t", i)))
                .collect();
            build_interchange_chain(&template, &RatFunc::named("b"), &RatFunc::named("c"))?;
            MovePayload::Deferred { template_dim: 4 }
        };
        self.push(
            MoveKind::InterchangeLemma,
            "interchange",
            (n - 1, n),
            after,
            payload,
        );
        Ok(())
    }

    fn push(
        &mut self,
        kind: MoveKind,
        label: &'static str,
        positions: (usize, usize),
        after: Presentation,
        payload: MovePayload,
    ) {
        let before = std::mem::replace(&mut self.current, after.clone());
        self.moves.push(PfisterMove {
            kind,
            label,
            positions,
            before,
            after,
            payload,
        });
    }
}

/// The chain's end equations are the generic-zero equations of the two subforms.
fn check_endpoints(
    chain: &SubstChain,
    before: &Presentation,
    after: &Presentation,
) -> Result<(), ChainError> {
    let dim = (before.psi()?.dim() - 1) / 2;
    let coords = |x: &str, y: &str, z: &str| -> Vec<RatFunc> {
        (1..=dim)
            .map(|i| RatFunc::var(Var::indexed(x, i)))
            .chain((1..=dim).map(|i| RatFunc::var(Var::indexed(y, i))))
            .chain([RatFunc::named(z)])
            .collect()
    };
    let src = qform_eval(&before.psi()?, &coords("x", "y", "z"))?;
    let dst = qform_eval(&after.psi()?, &coords("xpp", "yp", "zp"))?;
    if src.numer() != &chain.source().equation || dst.numer() != &chain.target().equation {
        return Err(ChainError::Identity(
            "interchange chain does not join the two subforms".into(),
        ));
    }
    Ok(())
}

/// The moves for one simple P-equivalence step `⟨⟨a_i, a_j⟩⟩ ≅ ⟨⟨a_i', a_j'⟩⟩`,
/// certified by `witness` whose target carries the parameters `a_i', a_j'`.
pub fn dispatch_pequiv_move(
    presentation: &Presentation,
    i: usize,
    j: usize,
    witness: &CongruenceWitness,
) -> Result<(MoveCase, Vec<PfisterMove>), ChainError> {
    dispatch_with_cap(presentation, i, j, witness, CHAIN_DIM_CAP)
}

pub fn dispatch_with_cap(
    presentation: &Presentation,
    i: usize,
    j: usize,
    witness: &CongruenceWitness,
    chain_cap: usize,
) -> Result<(MoveCase, Vec<PfisterMove>), ChainError> {
    let n = presentation.len();
    if n < 3 {
        return Err(ChainError::InvalidMove(format!(
            "presentation of length {n}; at least 3 needed"
        )));
    }
    if !(1 <= i && i < j && j <= n) {
        return Err(ChainError::InvalidMove(format!(
            "need 1 <= i < j <= {n}, got ({i}, {j})"
        )));
    }
    let (ai, aj) = (&presentation.0[i - 1], &presentation.0[j - 1]);
    if witness.source() != &pfister(&[ai.clone(), aj.clone()])? {
        return Err(ChainError::InvalidMove(format!(
            "witness source is not <<{}, {}>>",
            print_canonical(ai),
            print_canonical(aj)
        )));
    }
    let new = match witness.target().pfister_params() {
        Some([p, q]) => (p.clone(), q.clone()),
        _ => {
            return Err(ChainError::InvalidMove(
                "witness target must be a 2-fold Pfister form".into(),
            ))
        }
    };
    let mut b = Builder {
        moves: Vec::new(),
        current: presentation.clone(),
        chain_cap,
    };
    let case = if j != n {
        b.rewrite(i, j, witness, (&new.0, &new.1))?;
        MoveCase::I
    } else if i != n - 1 {
        b.interchange()?;
        b.rewrite(i, n - 1, witness, (&new.0, &new.1))?;
        b.interchange()?;
        MoveCase::J
    } else {
        b.transpose(n - 2, n - 1)?;
        b.interchange()?;
        b.rewrite(n - 2, n - 1, witness, (&new.0, &new.1))?;
        b.interchange()?;
        b.transpose(n - 2, n - 1)?;
        MoveCase::III
    };
    Ok((case, b.moves))
}

/// Follows the moves from `start`, checking that each begins where the
/// previous one ended.
pub fn apply_moves(
    start: &Presentation,
    moves: &[PfisterMove],
) -> Result<Presentation, ChainError> {
    let mut cur = start.clone();
    for (k, m) in moves.iter().enumerate() {
        if m.before != cur {
            return Err(ChainError::Disconnected(k, k.saturating_sub(1)));
        }
        cur = m.after.clone();
    }
    Ok(cur)
}

/// The presentation with `(a_i, a_j)` replaced.
pub fn expected_final(
    p: &Presentation,
    i: usize,
    j: usize,
    new: (&RatFunc, &RatFunc),
) -> Presentation {
    p.replaced(i, j, new.0, new.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_ratfunc;

    fn r(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn pres(items: &[&str]) -> Presentation {
        Presentation(items.iter().map(|s| r(s)).collect())
    }

    fn twist(a: &RatFunc, b: &RatFunc) -> CongruenceWitness {
        twist_witness(a, b).unwrap()
    }

    #[test]
    fn lifted_swap_is_a_permutation() {
        let w = swap_witness(&r("a"), &r("b")).unwrap();
        let l = lift_pair_witness(w.matrix(), 3, 0, 2);
        let src = pfister(&[r("a"), r("c"), r("b")]).unwrap();
        let dst = pfister(&[r("b"), r("c"), r("a")]).unwrap();
        assert!(verify_congruence(&l, &src, &dst).is_ok());
    }

    #[test]
    fn three_cases() {
        let p = pres(&["a1", "a2", "a3"]);
        let cases = [
            (1, 2, MoveCase::I, vec!["rewrite"]),
            (
                1,
                3,
                MoveCase::J,
                vec!["interchange", "rewrite", "interchange"],
            ),
            (
                2,
                3,
                MoveCase::III,
                vec![
                    "transpose",
                    "interchange",
                    "rewrite",
                    "interchange",
                    "transpose",
                ],
            ),
        ];
        for (i, j, case, labels) in cases {
            let w = twist(&p.0[i - 1], &p.0[j - 1]);
            let (c, moves) = dispatch_pequiv_move(&p, i, j, &w).unwrap();
            assert_eq!(c, case);
            assert_eq!(moves.iter().map(|m| m.label).collect::<Vec<_>>(), labels);
            let new = w.target().pfister_params().unwrap();
            let expected = expected_final(&p, i, j, (&new[0], &new[1]));
            assert_eq!(apply_moves(&p, &moves).unwrap(), expected);
            assert_eq!(
                apply_moves(&p, &moves).unwrap().psi().unwrap().diag(),
                expected.psi().unwrap().diag()
            );
        }
    }

    #[test]
    fn rejects_bad_steps() {
        let p = pres(&["a1", "a2", "a3"]);
        let w = twist(&p.0[0], &p.0[1]);
        assert!(dispatch_pequiv_move(&p, 2, 1, &w).is_err());
        assert!(dispatch_pequiv_move(&p, 1, 3, &w).is_err());
        assert!(dispatch_pequiv_move(&pres(&["a1", "a2"]), 1, 2, &w).is_err());
    }

    #[test]
    fn deferred_payload_above_cap() {
        let p = pres(&["a1", "a2", "a3"]);
        let w = twist(&p.0[1], &p.0[2]);
        let (_, moves) = dispatch_with_cap(&p, 2, 3, &w, 1).unwrap();
        assert!(matches!(
            moves[1].payload,
            MovePayload::Deferred { template_dim: 4 }
        ));
    }
}
