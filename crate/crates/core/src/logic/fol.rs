//! First-order arithmetic terms and formulas.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::nat::Nat;

/// Arithmetic term. Successor chains are stored run-length: `Succ(n, t)` is
/// `S` applied `n ≥ 1` times to a `t` that is not itself a successor, so a
/// numeral costs one node however large it is.
#[derive(Clone, PartialEq, Eq)]
pub enum FOTerm {
    Var(u64),
    Zero,
    Succ(Nat, Arc<FOTerm>),
    Plus(Arc<FOTerm>, Arc<FOTerm>),
    Times(Arc<FOTerm>, Arc<FOTerm>),
}

impl FOTerm {
    pub fn var(k: u64) -> FOTerm {
        FOTerm::Var(k)
    }

    pub fn succ(t: FOTerm) -> FOTerm {
        FOTerm::succ_n(&Nat::from(1u64), t)
    }

    /// `S^n(t)`, merging with a successor run at the root of `t`.
    pub fn succ_n(n: &Nat, t: FOTerm) -> FOTerm {
        if n.is_zero() {
            return t;
        }
        match t {
            FOTerm::Succ(m, inner) => FOTerm::Succ(n.add(&m), inner),
            t => FOTerm::Succ(n.clone(), Arc::new(t)),
        }
    }

    pub fn plus(a: FOTerm, b: FOTerm) -> FOTerm {
        FOTerm::Plus(Arc::new(a), Arc::new(b))
    }

    pub fn times(a: FOTerm, b: FOTerm) -> FOTerm {
        FOTerm::Times(Arc::new(a), Arc::new(b))
    }

    /// Removes one successor from the root, if there is one.
    pub fn unsucc(&self) -> Option<FOTerm> {
        match self {
            FOTerm::Succ(n, inner) => {
                let rest = n.pred();
                Some(if rest.is_zero() {
                    (**inner).clone()
                } else {
                    FOTerm::Succ(rest, inner.clone())
                })
            }
            _ => None,
        }
    }

    /// The value of a closed numeral.
    pub fn as_numeral(&self) -> Option<Nat> {
        match self {
            FOTerm::Zero => Some(Nat::zero()),
            FOTerm::Succ(n, inner) if **inner == FOTerm::Zero => Some(n.clone()),
            _ => None,
        }
    }

    pub fn free_vars(&self, out: &mut BTreeSet<u64>) {
        match self {
            FOTerm::Var(k) => {
                out.insert(*k);
            }
            FOTerm::Zero => {}
            FOTerm::Succ(_, t) => t.free_vars(out),
            FOTerm::Plus(a, b) | FOTerm::Times(a, b) => {
                a.free_vars(out);
                b.free_vars(out);
            }
        }
    }

    pub fn has_var(&self, k: u64) -> bool {
        match self {
            FOTerm::Var(j) => *j == k,
            FOTerm::Zero => false,
            FOTerm::Succ(_, t) => t.has_var(k),
            FOTerm::Plus(a, b) | FOTerm::Times(a, b) => a.has_var(k) || b.has_var(k),
        }
    }

    /// Replaces every occurrence of variable `k` by `t`.
    pub fn substitute(&self, k: u64, t: &FOTerm) -> FOTerm {
        match self {
            FOTerm::Var(j) if *j == k => t.clone(),
            FOTerm::Var(_) | FOTerm::Zero => self.clone(),
            FOTerm::Succ(n, inner) => FOTerm::succ_n(n, inner.substitute(k, t)),
            FOTerm::Plus(a, b) => FOTerm::plus(a.substitute(k, t), b.substitute(k, t)),
            FOTerm::Times(a, b) => FOTerm::times(a.substitute(k, t), b.substitute(k, t)),
        }
    }
}

/// `S^n(0)`.
pub fn numeral(n: &Nat) -> FOTerm {
    FOTerm::succ_n(n, FOTerm::Zero)
}

/// Formula of the arithmetic language with checker-backed atoms.
///
/// `Atom(0, …)` is reserved: `Atom(0, numeral(c), 0)` is the nullary
/// consistency atom `Consys<c>`.
#[derive(Clone, PartialEq, Eq)]
pub enum Formula {
    Eq(FOTerm, FOTerm),
    Atom(u64, FOTerm, FOTerm),
    Not(Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    All(u64, Arc<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("term is not free for v{var}: v{captured} would be captured")]
pub struct NotFreeFor {
    pub var: u64,
    pub captured: u64,
}

impl Formula {
    pub fn eq(a: FOTerm, b: FOTerm) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn atom(tag: u64, a: FOTerm, b: FOTerm) -> Formula {
        Formula::Atom(tag, a, b)
    }

    pub fn consys(tag: u64) -> Formula {
        Formula::Atom(0, numeral(&Nat::from(tag)), FOTerm::Zero)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Arc::new(f))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn all(k: u64, f: Formula) -> Formula {
        Formula::All(k, Arc::new(f))
    }

    /// The tag of a consistency atom.
    pub fn as_consys(&self) -> Option<u64> {
        match self {
            Formula::Atom(0, t, FOTerm::Zero) => t.as_numeral()?.to_u64(),
            _ => None,
        }
    }

    /// Checker-backed atom tags, excluding consistency atoms.
    pub fn atom_tags(&self, out: &mut BTreeSet<u64>) {
        self.visit_atoms(&mut |f| {
            if let Formula::Atom(tag, ..) = f {
                if f.as_consys().is_none() {
                    out.insert(*tag);
                }
            }
        });
    }

    pub fn consys_tags(&self, out: &mut BTreeSet<u64>) {
        self.visit_atoms(&mut |f| {
            if let Some(c) = f.as_consys() {
                out.insert(c);
            }
        });
    }

    fn visit_atoms(&self, visit: &mut impl FnMut(&Formula)) {
        match self {
            Formula::Eq(..) | Formula::Atom(..) => visit(self),
            Formula::Not(f) | Formula::All(_, f) => f.visit_atoms(visit),
            Formula::Imp(a, b) => {
                a.visit_atoms(visit);
                b.visit_atoms(visit);
            }
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Eq(..) | Formula::Atom(..))
    }

    pub fn free_vars(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<u64>, out: &mut BTreeSet<u64>) {
        match self {
            Formula::Eq(a, b) | Formula::Atom(_, a, b) => {
                let mut vs = BTreeSet::new();
                a.free_vars(&mut vs);
                b.free_vars(&mut vs);
                out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::Imp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::All(k, f) => {
                bound.push(*k);
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_free(&self, k: u64) -> bool {
        match self {
            Formula::Eq(a, b) | Formula::Atom(_, a, b) => a.has_var(k) || b.has_var(k),
            Formula::Not(f) => f.is_free(k),
            Formula::Imp(a, b) => a.is_free(k) || b.is_free(k),
            Formula::All(j, f) => *j != k && f.is_free(k),
        }
    }

    /// Capture-avoiding replacement of the free occurrences of `v<k>` by `t`.
    ///
    /// Fails when a free occurrence sits under a quantifier binding a
    /// variable of `t`.
    pub fn substitute(&self, k: u64, t: &FOTerm) -> Result<Formula, NotFreeFor> {
        let mut tv = BTreeSet::new();
        t.free_vars(&mut tv);
        self.subst(k, t, &tv)
    }

    fn subst(&self, k: u64, t: &FOTerm, tv: &BTreeSet<u64>) -> Result<Formula, NotFreeFor> {
        Ok(match self {
            Formula::Eq(a, b) => Formula::Eq(a.substitute(k, t), b.substitute(k, t)),
            Formula::Atom(tag, a, b) => Formula::Atom(*tag, a.substitute(k, t), b.substitute(k, t)),
            Formula::Not(f) => Formula::not(f.subst(k, t, tv)?),
            Formula::Imp(a, b) => Formula::imp(a.subst(k, t, tv)?, b.subst(k, t, tv)?),
            Formula::All(j, f) => {
                if *j == k || !f.is_free(k) {
                    return Ok(self.clone());
                }
                if tv.contains(j) {
                    return Err(NotFreeFor { var: k, captured: *j });
                }
                Formula::all(*j, f.subst(k, t, tv)?)
            }
        })
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Atom(..) => 1,
            Formula::Not(f) | Formula::All(_, f) => 1 + f.depth(),
            Formula::Imp(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl fmt::Display for FOTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::print_fo_term(self))
    }
}

impl fmt::Debug for FOTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::print_formula(self))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(k: u64) -> FOTerm {
        FOTerm::var(k)
    }

    fn num(n: u64) -> FOTerm {
        numeral(&Nat::from(n))
    }

    #[test]
    fn numerals_are_run_length() {
        let two = FOTerm::succ(FOTerm::succ(FOTerm::Zero));
        assert_eq!(two, num(2));
        assert_eq!(num(2).as_numeral(), Some(Nat::from(2u64)));
        assert_eq!(num(0), FOTerm::Zero);
        assert_eq!(num(3).unsucc(), Some(num(2)));
        assert_eq!(FOTerm::succ(v(1)).unsucc(), Some(v(1)));
        assert_eq!(v(1).as_numeral(), None);
    }

    #[test]
    fn substitution_examples() {
        let f = Formula::eq(v(0), FOTerm::Zero);
        assert_eq!(
            f.substitute(0, &num(2)).unwrap(),
            Formula::eq(FOTerm::succ(FOTerm::succ(FOTerm::Zero)), FOTerm::Zero)
        );
        // no free occurrence
        let g = Formula::eq(v(1), v(2));
        assert_eq!(g.substitute(0, &num(5)).unwrap(), g);
        // bound occurrence
        let h = Formula::all(0, Formula::eq(v(0), FOTerm::Zero));
        assert_eq!(h.substitute(0, &num(5)).unwrap(), h);
    }

    #[test]
    fn substitution_merges_successor_runs() {
        let f = Formula::eq(FOTerm::succ(v(0)), FOTerm::Zero);
        assert_eq!(
            f.substitute(0, &num(4)).unwrap(),
            Formula::eq(num(5), FOTerm::Zero)
        );
    }

    #[test]
    fn capture_is_refused() {
        let f = Formula::all(1, Formula::eq(v(0), v(1)));
        assert_eq!(f.substitute(0, &v(1)), Err(NotFreeFor { var: 0, captured: 1 }));
        // a term whose variable is not bound where the occurrence sits is fine
        assert!(f.substitute(0, &v(2)).is_ok());
    }

    #[test]
    fn free_variables() {
        let f = Formula::imp(
            Formula::all(0, Formula::eq(v(0), v(1))),
            Formula::atom(3, v(0), FOTerm::plus(v(2), num(1))),
        );
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(f.is_free(0));
        assert!(!Formula::all(0, Formula::eq(v(0), v(0))).is_free(0));
    }

    #[test]
    fn consistency_atoms() {
        let c = Formula::consys(2);
        assert_eq!(c.as_consys(), Some(2));
        assert_eq!(Formula::consys(0), Formula::atom(0, FOTerm::Zero, FOTerm::Zero));
        assert_eq!(Formula::atom(0, v(1), FOTerm::Zero).as_consys(), None);
        let f = Formula::imp(c, Formula::atom(3, num(1), num(2)));
        let (mut a, mut k) = (BTreeSet::new(), BTreeSet::new());
        f.atom_tags(&mut a);
        f.consys_tags(&mut k);
        assert_eq!(a.into_iter().collect::<Vec<_>>(), vec![3]);
        assert_eq!(k.into_iter().collect::<Vec<_>>(), vec![2]);
    }
}
