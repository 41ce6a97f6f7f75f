//! Hand-built proofs covering every axiom schema and rule.

use super::codec::gn_formula;
use super::fol::{numeral, FOTerm, Formula};
use super::proof::{encode_proof, parse_proof, Justification, Proof, Schema};
use super::system::godel_sentence;
use super::text::parse_formula;

#[derive(Debug, Clone)]
pub struct CorpusProof {
    pub name: &'static str,
    /// Tower level whose system accepts the proof.
    pub level: u64,
    pub proof: Proof,
}

const TEXTS: &[(&str, u64, &str)] = &[
    (
        "l1-mp",
        0,
        "1. ((0 = 0) -> ((0 = 0) -> (0 = 0))) ; AX L1
2. (0 = 0) ; AX E1
3. ((0 = 0) -> (0 = 0)) ; MP 2 1",
    ),
    (
        "identity",
        0,
        "1. ((v0 = v0) -> (((v0 = v0) -> (v0 = v0)) -> (v0 = v0))) ; AX L1
2. (((v0 = v0) -> (((v0 = v0) -> (v0 = v0)) -> (v0 = v0))) -> (((v0 = v0) -> ((v0 = v0) -> (v0 = v0))) -> ((v0 = v0) -> (v0 = v0)))) ; AX L2
3. (((v0 = v0) -> ((v0 = v0) -> (v0 = v0))) -> ((v0 = v0) -> (v0 = v0))) ; MP 1 2
4. ((v0 = v0) -> ((v0 = v0) -> (v0 = v0))) ; AX L1
5. ((v0 = v0) -> (v0 = v0)) ; MP 4 3",
    ),
    (
        "contraposition",
        0,
        "1. ((~(1 = 0) -> ~(0 = 0)) -> ((0 = 0) -> (1 = 0))) ; AX L3
2. ~(1 = 0) ; AX N1
3. (~(1 = 0) -> (~(0 = 0) -> ~(1 = 0))) ; AX L1
4. (~(0 = 0) -> ~(1 = 0)) ; MP 2 3",
    ),
    (
        "instantiation",
        0,
        "1. (v0 = v0) ; AX E1
2. all v0. (v0 = v0) ; GEN 1 v0
3. (all v0. (v0 = v0) -> (5 = 5)) ; AX Q1
4. (5 = 5) ; MP 2 3",
    ),
    (
        "quantifier-shift",
        0,
        "1. (all v0. ((0 = 0) -> (v0 = v0)) -> ((0 = 0) -> all v0. (v0 = v0))) ; AX Q2
2. (v0 = v0) ; AX E1
3. ((v0 = v0) -> ((0 = 0) -> (v0 = v0))) ; AX L1
4. ((0 = 0) -> (v0 = v0)) ; MP 2 3
5. all v0. ((0 = 0) -> (v0 = v0)) ; GEN 4 v0
6. ((0 = 0) -> all v0. (v0 = v0)) ; MP 5 1",
    ),
    (
        "substitution",
        0,
        "1. ((v0 + 0) = v0) ; AX N3
2. (((v0 + 0) = v0) -> (((v0 + 0) = (v0 + 0)) -> ((v0 + 0) = v0))) ; AX E2
3. (((v0 + 0) = (v0 + 0)) -> ((v0 + 0) = v0)) ; MP 1 2
4. ((v0 + 0) = (v0 + 0)) ; AX E1
5. ((v0 + 0) = v0) ; MP 4 3",
    ),
    (
        "successor",
        0,
        "1. ~(S(v0) = 0) ; AX N1
2. ((S(v0) = S(v1)) -> (v0 = v1)) ; AX N2
3. all v1. ((S(v0) = S(v1)) -> (v0 = v1)) ; GEN 2 v1",
    ),
    (
        "one-plus-one",
        0,
        "1. ((1 + 1) = S((1 + 0))) ; AX N4
2. ((1 + 0) = 1) ; AX N3
3. (((1 + 0) = 1) -> (((1 + 1) = S((1 + 0))) -> ((1 + 1) = 2))) ; AX E2
4. (((1 + 1) = S((1 + 0))) -> ((1 + 1) = 2)) ; MP 2 3
5. ((1 + 1) = 2) ; MP 1 4",
    ),
    (
        "times",
        0,
        "1. ((2 * 0) = 0) ; AX N5
2. ((2 * 1) = ((2 * 0) + 2)) ; AX N6",
    ),
    (
        "refuted-proof-claim",
        1,
        "1. ~A1(0, 0) ; CHK
2. (~A1(0, 0) -> (~A1(0, 0) -> ~A1(0, 0))) ; AX L1
3. (~A1(0, 0) -> ~A1(0, 0)) ; MP 1 2",
    ),
    (
        "second-level-check",
        2,
        "1. ~A2(0, 0) ; CHK
2. ~A1(1, 0) ; CHK",
    ),
];

/// Positive corpus: every proof is accepted by `system_at(level)`.
pub fn positive_corpus() -> Vec<CorpusProof> {
    let mut out: Vec<CorpusProof> = TEXTS
        .iter()
        .map(|&(name, level, text)| CorpusProof {
            name,
            level,
            proof: parse_proof(text).expect("corpus text parses"),
        })
        .collect();

    // A1(a, b) where b codes the one-line proof of (a = a), a = gn(v0 = v0)
    let a = gn_formula(&parse_formula("(v0 = v0)").expect("formula"));
    let mut inner = Proof::new();
    inner.push(Formula::eq(numeral(&a), numeral(&a)), Justification::Axiom(Schema::E1));
    let b = encode_proof(&inner);
    let mut chk = Proof::new();
    chk.push(Formula::atom(1, numeral(&a), numeral(&b)), Justification::Chk);
    out.push(CorpusProof { name: "confirmed-proof-claim", level: 1, proof: chk });

    for level in 1..=2u64 {
        let g = godel_sentence(level).sentence;
        let mut p = Proof::new();
        p.push(
            Formula::imp(Formula::consys(level - 1), g),
            Justification::Admit(level as usize - 1),
        );
        out.push(CorpusProof {
            name: if level == 1 { "conditional-godel-1" } else { "conditional-godel-2" },
            level,
            proof: p,
        });
    }
    out
}

/// A formula differing from `f` that no justification of `f` also justifies.
pub fn corrupt(f: &Formula) -> Formula {
    match f {
        Formula::Eq(a, b) => Formula::eq(FOTerm::succ(a.clone()), b.clone()),
        f => Formula::not(f.clone()),
    }
}

/// `proof` with line `line` (1-based) corrupted.
pub fn mutate(proof: &Proof, line: usize) -> Proof {
    let mut p = proof.clone();
    let l = &mut p.lines[line - 1];
    l.formula = corrupt(&l.formula);
    p
}
