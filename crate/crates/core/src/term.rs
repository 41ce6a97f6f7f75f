//! Program terms and their bijective Gödel numbering.

use std::fmt;
use std::sync::Arc;

use crate::nat::{Nat, TooLarge};

pub const CODE_ZERO: u64 = 0;
pub const CODE_SUCC: u64 = 1;
pub const CODE_PRED: u64 = 2;
pub const CODE_ID: u64 = 3;
pub const CODE_PROJ1: u64 = 4;
pub const CODE_PROJ2: u64 = 5;
pub const CODE_UNIV: u64 = 6;

/// A program denoting a unary partial function on naturals.
#[derive(Clone, PartialEq, Eq)]
pub enum Term {
    Zero,
    Succ,
    Pred,
    Id,
    Proj1,
    Proj2,
    Univ,
    Const(Nat),
    Mu(Arc<Term>),
    Pair(Arc<Term>, Arc<Term>),
    Comp(Arc<Term>, Arc<Term>),
    IfZ(Arc<Term>, Arc<Term>, Arc<Term>),
    Rec(Arc<Term>, Arc<Term>),
}

impl Term {
    pub fn constant(n: impl Into<Nat>) -> Term {
        Term::Const(n.into())
    }

    pub fn mu(body: Term) -> Term {
        Term::Mu(Arc::new(body))
    }

    pub fn pair(f: Term, g: Term) -> Term {
        Term::Pair(Arc::new(f), Arc::new(g))
    }

    pub fn comp(f: Term, g: Term) -> Term {
        Term::Comp(Arc::new(f), Arc::new(g))
    }

    pub fn ifz(c: Term, a: Term, b: Term) -> Term {
        Term::IfZ(Arc::new(c), Arc::new(a), Arc::new(b))
    }

    pub fn rec(base: Term, step: Term) -> Term {
        Term::Rec(Arc::new(base), Arc::new(step))
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Mu(b) => 1 + b.size(),
            Term::Pair(f, g) | Term::Comp(f, g) | Term::Rec(f, g) => 1 + f.size() + g.size(),
            Term::IfZ(c, a, b) => 1 + c.size() + a.size() + b.size(),
            _ => 1,
        }
    }

    /// Tree depth; leaves have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Term::Mu(b) => 1 + b.depth(),
            Term::Pair(f, g) | Term::Comp(f, g) | Term::Rec(f, g) => 1 + f.depth().max(g.depth()),
            Term::IfZ(c, a, b) => 1 + c.depth().max(a.depth()).max(b.depth()),
            _ => 1,
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_term(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_term(self))
    }
}

pub fn code_const(n: &Nat) -> Nat {
    Nat::affine(6, 7, n)
}

pub fn code_mu(body: &Nat) -> Nat {
    Nat::affine(6, 8, body)
}

pub fn code_pair(f: &Nat, g: &Nat) -> Nat {
    Nat::affine(6, 9, &Nat::pair(f, g))
}

pub fn code_comp(f: &Nat, g: &Nat) -> Nat {
    Nat::affine(6, 10, &Nat::pair(f, g))
}

pub fn code_ifz(c: &Nat, a: &Nat, b: &Nat) -> Nat {
    Nat::affine(6, 11, &Nat::pair(c, &Nat::pair(a, b)))
}

pub fn code_rec(base: &Nat, step: &Nat) -> Nat {
    Nat::affine(6, 12, &Nat::pair(base, step))
}

/// Gödel number of a term.
pub fn encode(t: &Term) -> Nat {
    match t {
        Term::Zero => Nat::from(CODE_ZERO),
        Term::Succ => Nat::from(CODE_SUCC),
        Term::Pred => Nat::from(CODE_PRED),
        Term::Id => Nat::from(CODE_ID),
        Term::Proj1 => Nat::from(CODE_PROJ1),
        Term::Proj2 => Nat::from(CODE_PROJ2),
        Term::Univ => Nat::from(CODE_UNIV),
        Term::Const(n) => code_const(n),
        Term::Mu(b) => code_mu(&encode(b)),
        Term::Pair(f, g) => code_pair(&encode(f), &encode(g)),
        Term::Comp(f, g) => code_comp(&encode(f), &encode(g)),
        Term::IfZ(c, a, b) => code_ifz(&encode(c), &encode(a), &encode(b)),
        Term::Rec(b, s) => code_rec(&encode(b), &encode(s)),
    }
}

/// The term with Gödel number `n`.
///
/// Total on concrete naturals. Symbolic indices are decoded through their
/// structure where possible; an index that would have to be expanded past
/// the materialization limit yields [`TooLarge`].
pub fn decode(n: &Nat) -> Result<Term, TooLarge> {
    if let Some(v) = n.to_u64() {
        if v < 7 {
            return Ok(match v {
                CODE_ZERO => Term::Zero,
                CODE_SUCC => Term::Succ,
                CODE_PRED => Term::Pred,
                CODE_ID => Term::Id,
                CODE_PROJ1 => Term::Proj1,
                CODE_PROJ2 => Term::Proj2,
                _ => Term::Univ,
            });
        }
    }
    let (q, r) = n.sub_small(7).div_rem_small(6)?;
    Ok(match r {
        0 => Term::Const(q),
        1 => Term::mu(decode(&q)?),
        2 | 3 | 5 => {
            let (a, b) = q.unpair()?;
            let (a, b) = (decode(&a)?, decode(&b)?);
            match r {
                2 => Term::pair(a, b),
                3 => Term::comp(a, b),
                _ => Term::rec(a, b),
            }
        }
        _ => {
            let (c, rest) = q.unpair()?;
            let (a, b) = rest.unpair()?;
            Term::ifz(decode(&c)?, decode(&a)?, decode(&b)?)
        }
    })
}

/// Decoding of a machine-word index; never fails.
pub fn decode_u64(n: u64) -> Term {
    decode(&Nat::from(n)).expect("word-sized indices always decode")
}
