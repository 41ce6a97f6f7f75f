//! Small library of total arithmetic terms used by the code generators.
//!
//! All binary functions take their arguments as `pair(a, b)`. Loops are
//! unary: `ADD` iterates on its first argument, `MUL` costs roughly `a·b`.

use std::fmt;
use std::str::FromStr;

use crate::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StdlibName {
    Add,
    Mul,
    Monus,
    Eq0Diff,
    SuccK(u64),
    GBuilder,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown stdlib term {0:?}")]
pub struct UnknownStdlib(pub String);

impl FromStr for StdlibName {
    type Err = UnknownStdlib;

    /// Accepts `ADD`, `MUL`, `MONUS`, `EQ0DIFF`, `SUCC_K(k)` and `G_BUILDER`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || UnknownStdlib(s.to_string());
        Ok(match s {
            "ADD" => StdlibName::Add,
            "MUL" => StdlibName::Mul,
            "MONUS" => StdlibName::Monus,
            "EQ0DIFF" => StdlibName::Eq0Diff,
            "G_BUILDER" => StdlibName::GBuilder,
            _ => {
                let k = s
                    .strip_prefix("SUCC_K(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(unknown)?;
                StdlibName::SuccK(k.parse().map_err(|_| unknown())?)
            }
        })
    }
}

impl fmt::Display for StdlibName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StdlibName::Add => f.write_str("ADD"),
            StdlibName::Mul => f.write_str("MUL"),
            StdlibName::Monus => f.write_str("MONUS"),
            StdlibName::Eq0Diff => f.write_str("EQ0DIFF"),
            StdlibName::SuccK(k) => write!(f, "SUCC_K({k})"),
            StdlibName::GBuilder => f.write_str("G_BUILDER"),
        }
    }
}

pub fn stdlib_term(name: StdlibName) -> Term {
    match name {
        StdlibName::Add => add(),
        StdlibName::Mul => mul(),
        StdlibName::Monus => monus(),
        StdlibName::Eq0Diff => eq0diff(),
        StdlibName::SuccK(k) => succ_k(k),
        StdlibName::GBuilder => g_builder(),
    }
}

/// `pair(k, pair(r, a))`, the argument a `rec` step receives.
fn step_acc() -> Term {
    Term::comp(Term::Proj1, Term::Proj2)
}

fn step_param() -> Term {
    Term::comp(Term::Proj2, Term::Proj2)
}

fn swap() -> Term {
    Term::pair(Term::Proj2, Term::Proj1)
}

/// `pair(n, a) ↦ n + a`
pub fn add() -> Term {
    Term::rec(Term::Id, Term::comp(Term::Succ, step_acc()))
}

/// `pair(n, a) ↦ n · a`
pub fn mul() -> Term {
    Term::rec(
        Term::Zero,
        Term::comp(add(), Term::pair(step_param(), step_acc())),
    )
}

/// `pair(a, b) ↦ a ∸ b`
pub fn monus() -> Term {
    let sub = Term::rec(Term::Id, Term::comp(Term::Pred, step_acc()));
    Term::comp(sub, swap())
}

/// `pair(a, b) ↦ (a ∸ b) + (b ∸ a)`
pub fn eq0diff() -> Term {
    Term::comp(
        add(),
        Term::pair(monus(), Term::comp(monus(), swap())),
    )
}

/// `x ↦ x + k`
pub fn succ_k(k: u64) -> Term {
    let mut t = Term::Id;
    for _ in 0..k {
        t = if t == Term::Id {
            Term::Succ
        } else {
            Term::comp(Term::Succ, t)
        };
    }
    t
}

/// `x ↦ m·x + d`
pub fn affine(m: u64, d: u64) -> Term {
    let scaled = Term::comp(mul(), Term::pair(Term::constant(m), Term::Id));
    if d == 0 {
        scaled
    } else {
        Term::comp(succ_k(d), scaled)
    }
}

/// Term computing the code of `const(u)` from `u`.
pub fn const_builder() -> Term {
    affine(6, 7)
}

/// In-machine code builders for the nested pieces of
/// `comp(univ,pair(comp(univ,pair(const(u),const(u))),id))`, innermost first.
pub fn g_builder_stages() -> Vec<Term> {
    let c = const_builder();
    let pair_cc = Term::comp(affine(6, 9), Term::pair(c.clone(), c.clone()));
    let comp_inner = Term::comp(affine(6, 10), Term::pair(Term::constant(6u64), pair_cc.clone()));
    let pair_id = Term::comp(affine(6, 9), Term::pair(comp_inner.clone(), Term::constant(3u64)));
    let outer = Term::comp(affine(6, 10), Term::pair(Term::constant(6u64), pair_id.clone()));
    vec![c, pair_cc, comp_inner, pair_id, outer]
}

/// `u ↦ encode(comp(univ,pair(comp(univ,pair(const(u),const(u))),id)))`
pub fn g_builder() -> Term {
    g_builder_stages().pop().expect("stages are non-empty")
}
