//! Gödel numbering of arithmetic terms and formulas.
//!
//! Terms: `0` is zero; otherwise `m = c−1`, `r = m mod 4`, `q = m div 4`
//! with `r=0` var(q), `r=1` succ(q), `r=2` plus(unpair q), `r=3`
//! times(unpair q). Formulas: `r = c mod 5`, `q = c div 5` with `r=0`
//! eq(unpair q), `r=1` atom(k, t, u) from `q = pair(k, pair(t, u))`, `r=2`
//! not(q), `r=3` imp(unpair q), `r=4` all(v<left q>, right q).

use crate::nat::{Nat, TooLarge, View};

use super::fol::{FOTerm, Formula};

fn pair(a: &Nat, b: &Nat) -> Nat {
    Nat::pair(a, b)
}

pub fn gn_term(t: &FOTerm) -> Nat {
    match t {
        FOTerm::Zero => Nat::zero(),
        FOTerm::Var(k) => Nat::affine(4, 1, &Nat::from(*k)),
        // one successor is c ↦ 4c + 2
        FOTerm::Succ(n, inner) => Nat::iterate(4, 2, n, &gn_term(inner)),
        FOTerm::Plus(a, b) => Nat::affine(4, 3, &pair(&gn_term(a), &gn_term(b))),
        FOTerm::Times(a, b) => Nat::affine(4, 4, &pair(&gn_term(a), &gn_term(b))),
    }
}

pub fn gn_formula(f: &Formula) -> Nat {
    match f {
        Formula::Eq(a, b) => Nat::affine(5, 0, &pair(&gn_term(a), &gn_term(b))),
        Formula::Atom(k, a, b) => Nat::affine(
            5,
            1,
            &pair(&Nat::from(*k), &pair(&gn_term(a), &gn_term(b))),
        ),
        Formula::Not(g) => Nat::affine(5, 2, &gn_formula(g)),
        Formula::Imp(a, b) => Nat::affine(5, 3, &pair(&gn_formula(a), &gn_formula(b))),
        Formula::All(k, g) => Nat::affine(5, 4, &pair(&Nat::from(*k), &gn_formula(g))),
    }
}

fn small(n: &Nat) -> Result<u64, TooLarge> {
    n.to_u64().ok_or(TooLarge {
        bits: n.log2_estimate().ceil() as u64,
        limit: 64,
    })
}

/// Inverse of [`gn_term`]. Variable indices must fit in 64 bits.
pub fn decode_term(c: &Nat) -> Result<FOTerm, TooLarge> {
    if c.is_zero() {
        return Ok(FOTerm::Zero);
    }
    if let View::Iterate { mul: 4, add: 2, count, base } = c.view() {
        return Ok(FOTerm::succ_n(count, decode_term(base)?));
    }
    let (q, r) = c.pred().div_rem_small(4)?;
    Ok(match r {
        0 => FOTerm::Var(small(&q)?),
        1 => FOTerm::succ(decode_term(&q)?),
        _ => {
            let (a, b) = q.unpair()?;
            let (a, b) = (decode_term(&a)?, decode_term(&b)?);
            if r == 2 {
                FOTerm::plus(a, b)
            } else {
                FOTerm::times(a, b)
            }
        }
    })
}

/// Inverse of [`gn_formula`]; every natural decodes to some formula.
pub fn decode_formula(c: &Nat) -> Result<Formula, TooLarge> {
    let (q, r) = c.div_rem_small(5)?;
    Ok(match r {
        0 => {
            let (a, b) = q.unpair()?;
            Formula::eq(decode_term(&a)?, decode_term(&b)?)
        }
        1 => {
            let (k, rest) = q.unpair()?;
            let (a, b) = rest.unpair()?;
            Formula::atom(small(&k)?, decode_term(&a)?, decode_term(&b)?)
        }
        2 => Formula::not(decode_formula(&q)?),
        3 => {
            let (a, b) = q.unpair()?;
            Formula::imp(decode_formula(&a)?, decode_formula(&b)?)
        }
        _ => {
            let (k, g) = q.unpair()?;
            Formula::all(small(&k)?, decode_formula(&g)?)
        }
    })
}
