//! Index transformations.
//!
//! Every construction works on codes directly through the codec helpers, so
//! an index is never decoded and re-encoded. Codes built from large inputs
//! share the input's representation.

use crate::nat::Nat;
use crate::stdlib::{const_builder, eq0diff, g_builder};
use crate::term::{
    code_comp, code_const, code_ifz, code_mu, code_pair, encode, CODE_ID, CODE_PRED, CODE_PROJ1,
    CODE_PROJ2, CODE_SUCC, CODE_UNIV,
};

fn n(v: u64) -> Nat {
    Nat::from(v)
}

/// `encode(comp(decode(i), pair(const(a), id)))`, so `φ_result(x) = φ_i(pair(a, x))`.
pub fn smn(i: &Nat, a: &Nat) -> Nat {
    code_comp(i, &code_pair(&code_const(a), &n(CODE_ID)))
}

/// Code of `x ↦ φ_{φ_i(x)}(x) + 1`.
pub fn psi_tot(i: &Nat) -> Nat {
    let inner = code_comp(&n(CODE_UNIV), &code_pair(&code_const(i), &n(CODE_ID)));
    let diag = code_comp(&n(CODE_UNIV), &code_pair(&inner, &n(CODE_ID)));
    code_comp(&n(CODE_SUCC), &diag)
}

/// Code of a program halting exactly on the values `φ_i(1), φ_i(2), …`.
///
/// The result is `mu` over `pair(n, y) ↦ |φ_i(n+1) − y|`.
pub fn range_to_domain(i: &Nat) -> Nat {
    let shifted = code_comp(i, &code_comp(&n(CODE_SUCC), &n(CODE_PROJ1)));
    let body = code_comp(&encode(&eq0diff()), &code_pair(&shifted, &n(CODE_PROJ2)));
    code_mu(&body)
}

/// The productive function for the complement of the self-halting set.
pub fn psi_kbar(i: &Nat) -> Nat {
    range_to_domain(i)
}

/// Code of the enumerator `v, φ_i(1), φ_i(2), …`.
pub fn extend_enumerator(i: &Nat, v: &Nat) -> Nat {
    code_ifz(&n(CODE_PRED), &code_const(v), &code_comp(i, &n(CODE_PRED)))
}

/// Host-side counterpart of the `G_BUILDER` stdlib term.
pub fn g_value(u: &Nat) -> Nat {
    let cu = code_const(u);
    let inner = code_comp(&n(CODE_UNIV), &code_pair(&cu, &cu));
    code_comp(&n(CODE_UNIV), &code_pair(&inner, &n(CODE_ID)))
}

/// Kleene fixed point of the index transformer coded by `h`.
///
/// With `v = encode(comp(decode(h), G_BUILDER))` the result is `g(v)`, whose
/// program computes `φ_{φ_v(v)} = φ_{φ_h(g(v))}`.
pub fn fixed_point(h: &Nat) -> Nat {
    let v = code_comp(h, &encode(&g_builder()));
    g_value(&v)
}

/// Code of the in-machine map `u ↦ encode(const(u))`.
pub fn const_builder_index() -> Nat {
    encode(&const_builder())
}

/// A program whose output on every input is its own code.
pub fn quine() -> Nat {
    fixed_point(&const_builder_index())
}
