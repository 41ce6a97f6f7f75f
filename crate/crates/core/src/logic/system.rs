//! Formal systems, the executable proof predicate, Gödel sentences and the
//! observing tower.
//!
//! Level `k+1` observes level `k`: it adds the atom `A<k+1>`, decided by
//! [`prf_checker`] over level `k`, the nullary atom `Consys<k>`, and one
//! admitted schema `(Consys<k> -> G)` where `G` is level `k`'s Gödel
//! sentence built over `A<k+1>`. Signatures and admitted schemas are
//! cumulative up the tower.

use std::fmt;
use std::sync::Arc;

use crate::nat::Nat;

use super::codec::{decode_formula, gn_formula};
use super::fol::{numeral, FOTerm, Formula};
use super::proof::{check_proof, decode_proof, Justification, Proof, Rejection, Schema};

/// Variable of the open diagonal formula that receives its own code.
pub const VAR_A: u64 = 0;
/// Variable ranging over proof codes.
pub const VAR_B: u64 = 1;

pub const DEFAULT_UNPROVABILITY_BOUND: u64 = 20_000;

#[derive(Clone)]
pub struct CheckerAtom {
    pub tag: u64,
    pub backing: Arc<SystemDef>,
}

#[derive(Clone)]
pub struct SystemDef {
    pub level: u64,
    pub atoms: Vec<CheckerAtom>,
    pub consys_tags: Vec<u64>,
    /// Formulas accepted on `ADMIT <index>` lines.
    pub admitted: Vec<Formula>,
    pub induction: bool,
}

impl SystemDef {
    pub fn atom(&self, tag: u64) -> Option<&CheckerAtom> {
        self.atoms.iter().find(|a| a.tag == tag)
    }

    pub fn axiom_schemas(&self) -> Vec<Schema> {
        Schema::ALL
            .into_iter()
            .filter(|s| *s != Schema::Ind || self.induction)
            .collect()
    }

    /// Whether every atom of `f` belongs to this system's signature.
    pub fn expresses(&self, f: &Formula) -> bool {
        let (mut atoms, mut consys) = Default::default();
        f.atom_tags(&mut atoms);
        f.consys_tags(&mut consys);
        atoms.iter().all(|t| self.atom(*t).is_some())
            && consys.iter().all(|c| self.consys_tags.contains(c))
    }
}

impl fmt::Debug for SystemDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SystemDef")
            .field("level", &self.level)
            .field("atoms", &self.atoms.iter().map(|a| (a.tag, a.backing.level)).collect::<Vec<_>>())
            .field("consys_tags", &self.consys_tags)
            .field("admitted", &self.admitted)
            .field("induction", &self.induction)
            .finish()
    }
}

/// `S₀`: pure arithmetic, no checker atoms, nothing admitted.
pub fn base_system() -> SystemDef {
    SystemDef {
        level: 0,
        atoms: Vec::new(),
        consys_tags: Vec::new(),
        admitted: Vec::new(),
        induction: false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagResult {
    /// Code of the open formula `all v1. ~A<tag>(v0, v1)`.
    pub p_prime: Nat,
    pub open: Formula,
    /// `all v1. ~A<tag>(p′, v1)`.
    pub sentence: Formula,
}

pub fn godel_sentence(tag: u64) -> DiagResult {
    let open = Formula::all(
        VAR_B,
        Formula::not(Formula::atom(tag, FOTerm::var(VAR_A), FOTerm::var(VAR_B))),
    );
    let p_prime = gn_formula(&open);
    let sentence = open
        .substitute(VAR_A, &numeral(&p_prime))
        .expect("numerals are closed");
    DiagResult {
        p_prime,
        open,
        sentence,
    }
}

/// The observing system of `base`.
pub fn observe(base: &SystemDef) -> SystemDef {
    let tag = base.level + 1;
    let g = godel_sentence(tag).sentence;
    let mut next = base.clone();
    next.level = tag;
    next.atoms.push(CheckerAtom {
        tag,
        backing: Arc::new(base.clone()),
    });
    next.consys_tags.push(base.level);
    next.admitted.push(Formula::imp(Formula::consys(base.level), g));
    next
}

/// `b` codes a proof in `base` of `F(numeral a)`, where `F`, with code `a`,
/// has exactly one free variable.
pub fn prf_checker(base: &SystemDef, a: &Nat, b: &Nat) -> bool {
    match diagonal_target(a) {
        Some(target) => proves(base, &target, b),
        None => false,
    }
}

fn diagonal_target(a: &Nat) -> Option<Formula> {
    let f = decode_formula(a).ok()?;
    let free = f.free_vars();
    if free.len() != 1 {
        return None;
    }
    let x = *free.iter().next().expect("one variable");
    f.substitute(x, &numeral(a)).ok()
}

fn proves(base: &SystemDef, target: &Formula, b: &Nat) -> bool {
    let Some(proof) = decode_proof(b) else {
        return false;
    };
    proof.conclusion() == Some(target) && check_proof(base, &proof).is_ok()
}

/// First `b ≤ bound` with `prf_checker(base, a, b)`, if any.
pub fn search_proof_code(base: &SystemDef, a: &Nat, bound: u64) -> Option<u64> {
    let target = diagonal_target(a)?;
    (0..=bound).find(|&b| proves(base, &target, &Nat::from(b)))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("base proof is not accepted: {0}")]
pub struct NotAccepted(pub Rejection);

/// The same lines, read in `observe(base)`; every justification survives
/// because the signature and the admitted list only grow.
pub fn translate_proof(base: &SystemDef, proof: &Proof) -> Result<Proof, NotAccepted> {
    check_proof(base, proof).map_err(NotAccepted)?;
    Ok(proof.clone())
}

#[derive(Debug, Clone)]
pub struct Level {
    pub system: SystemDef,
    /// Gödel sentence of the level below, over this level's new atom.
    pub diag: DiagResult,
    /// `(Consys<k-1> -> G)` by its single admitted line.
    pub proof: Proof,
}

/// `S₁, …, S_k` with their conditional Gödel theorems, each checked.
pub fn tower(k: u64) -> Vec<Level> {
    let mut out = Vec::new();
    let mut sys = base_system();
    for _ in 0..k {
        let below = sys.level;
        sys = observe(&sys);
        let diag = godel_sentence(sys.level);
        let mut proof = Proof::new();
        proof.push(
            Formula::imp(Formula::consys(below), diag.sentence.clone()),
            Justification::Admit(below as usize),
        );
        check_proof(&sys, &proof).expect("the admitted conditional checks");
        out.push(Level {
            system: sys.clone(),
            diag,
            proof,
        });
    }
    out
}

/// `S_level` of the tower.
pub fn system_at(level: u64) -> SystemDef {
    let mut sys = base_system();
    for _ in 0..level {
        sys = observe(&sys);
    }
    sys
}
