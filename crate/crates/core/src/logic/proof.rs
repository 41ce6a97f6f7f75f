//! Hilbert-style proofs: axiom schemas, the line checker, proof numbering
//! and the proof file format.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::nat::Nat;

use super::codec::{decode_formula, gn_formula};
use super::fol::{FOTerm, Formula};
use super::system::{prf_checker, SystemDef};
use super::text::{parse_formula, print_formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Schema {
    L1,
    L2,
    L3,
    Q1,
    Q2,
    E1,
    E2,
    N1,
    N2,
    N3,
    N4,
    N5,
    N6,
    /// Induction; only available in systems that enable it.
    Ind,
}

impl Schema {
    pub const ALL: [Schema; 14] = [
        Schema::L1,
        Schema::L2,
        Schema::L3,
        Schema::Q1,
        Schema::Q2,
        Schema::E1,
        Schema::E2,
        Schema::N1,
        Schema::N2,
        Schema::N3,
        Schema::N4,
        Schema::N5,
        Schema::N6,
        Schema::Ind,
    ];

    /// Position in [`Schema::ALL`], used by proof numbering.
    pub fn id(self) -> u64 {
        Schema::ALL.iter().position(|&s| s == self).expect("listed") as u64
    }

    pub fn from_id(id: u64) -> Option<Schema> {
        Schema::ALL.get(usize::try_from(id).ok()?).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            Schema::L1 => "L1",
            Schema::L2 => "L2",
            Schema::L3 => "L3",
            Schema::Q1 => "Q1",
            Schema::Q2 => "Q2",
            Schema::E1 => "E1",
            Schema::E2 => "E2",
            Schema::N1 => "N1",
            Schema::N2 => "N2",
            Schema::N3 => "N3",
            Schema::N4 => "N4",
            Schema::N5 => "N5",
            Schema::N6 => "N6",
            Schema::Ind => "IND",
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Schema {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Schema::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown axiom schema {s:?}"))
    }
}

/// Line references are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Justification {
    Axiom(Schema),
    /// `Mp(i, j)`: line `i` is `A`, line `j` is `A -> B`.
    Mp(usize, usize),
    /// `Gen(i, k)`: the line is `all v<k>. <line i>`.
    Gen(usize, u64),
    /// Decided by running the atom's backing checker.
    Chk,
    /// Instance of the system's admitted schema with this index.
    Admit(usize),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(s) => write!(f, "AX {s}"),
            Justification::Mp(i, j) => write!(f, "MP {i} {j}"),
            Justification::Gen(i, k) => write!(f, "GEN {i} v{k}"),
            Justification::Chk => f.write_str("CHK"),
            Justification::Admit(k) => write!(f, "ADMIT {k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub formula: Formula,
    pub just: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Proof {
    pub lines: Vec<Line>,
}

impl Proof {
    pub fn new() -> Self {
        Proof::default()
    }

    /// Appends a line and returns its 1-based number.
    pub fn push(&mut self, formula: Formula, just: Justification) -> usize {
        self.lines.push(Line { formula, just });
        self.lines.len()
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn admit_lines(&self) -> usize {
        self.lines
            .iter()
            .filter(|l| matches!(l.just, Justification::Admit(_)))
            .count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Reason {
    #[serde(rename = "EMPTY")]
    Empty,
    #[serde(rename = "BAD-REF")]
    BadRef,
    #[serde(rename = "SIGNATURE")]
    Signature,
    #[serde(rename = "NOT-INSTANCE")]
    NotInstance,
    #[serde(rename = "SCHEMA-DISABLED")]
    SchemaDisabled,
    #[serde(rename = "MP-MISMATCH")]
    MpMismatch,
    #[serde(rename = "GEN-MISMATCH")]
    GenMismatch,
    #[serde(rename = "CHK-SHAPE")]
    ChkShape,
    #[serde(rename = "CHK-MISMATCH")]
    ChkMismatch,
    #[serde(rename = "ADMIT-UNKNOWN")]
    AdmitUnknown,
    #[serde(rename = "ADMIT-MISMATCH")]
    AdmitMismatch,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::Empty => "EMPTY",
            Reason::BadRef => "BAD-REF",
            Reason::Signature => "SIGNATURE",
            Reason::NotInstance => "NOT-INSTANCE",
            Reason::SchemaDisabled => "SCHEMA-DISABLED",
            Reason::MpMismatch => "MP-MISMATCH",
            Reason::GenMismatch => "GEN-MISMATCH",
            Reason::ChkShape => "CHK-SHAPE",
            Reason::ChkMismatch => "CHK-MISMATCH",
            Reason::AdmitUnknown => "ADMIT-UNKNOWN",
            Reason::AdmitMismatch => "ADMIT-MISMATCH",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// First failing line (1-based; 0 for an empty proof) and why.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("line {line}: {reason}: {detail}")]
pub struct Rejection {
    pub line: usize,
    pub reason: Reason,
    pub detail: String,
}

pub type Verdict = Result<(), Rejection>;

fn reject(line: usize, reason: Reason, detail: impl Into<String>) -> Verdict {
    Err(Rejection {
        line,
        reason,
        detail: detail.into(),
    })
}

pub fn check_proof(sys: &SystemDef, proof: &Proof) -> Verdict {
    if proof.lines.is_empty() {
        return reject(0, Reason::Empty, "no lines");
    }
    for (idx, line) in proof.lines.iter().enumerate() {
        check_line(sys, proof, idx + 1, line)?;
    }
    Ok(())
}

fn check_line(sys: &SystemDef, proof: &Proof, n: usize, line: &Line) -> Verdict {
    let f = &line.formula;
    let (mut atoms, mut consys) = (BTreeSet::new(), BTreeSet::new());
    f.atom_tags(&mut atoms);
    f.consys_tags(&mut consys);
    if let Some(t) = atoms.iter().find(|t| sys.atom(**t).is_none()) {
        return reject(n, Reason::Signature, format!("atom A{t} is not in the signature"));
    }
    if let Some(c) = consys.iter().find(|c| !sys.consys_tags.contains(c)) {
        return reject(n, Reason::Signature, format!("Consys{c} is not in the signature"));
    }
    let earlier = |i: usize| -> Result<&Formula, Rejection> {
        if i >= 1 && i < n {
            Ok(&proof.lines[i - 1].formula)
        } else {
            Err(Rejection {
                line: n,
                reason: Reason::BadRef,
                detail: format!("line {i} is not an earlier line"),
            })
        }
    };
    match line.just {
        Justification::Axiom(s) => {
            if s == Schema::Ind && !sys.induction {
                return reject(n, Reason::SchemaDisabled, "induction is not enabled");
            }
            if !is_instance(s, f) {
                return reject(n, Reason::NotInstance, format!("not an instance of {s}"));
            }
        }
        Justification::Mp(i, j) => {
            let (a, ab) = (earlier(i)?, earlier(j)?);
            match ab {
                Formula::Imp(x, y) if **x == *a && **y == *f => {}
                _ => {
                    return reject(n, Reason::MpMismatch, format!("line {j} is not line {i} -> this line"))
                }
            }
        }
        Justification::Gen(i, k) => {
            let a = earlier(i)?;
            if *f != Formula::all(k, a.clone()) {
                return reject(n, Reason::GenMismatch, format!("expected all v{k}. <line {i}>"));
            }
        }
        Justification::Chk => {
            let (positive, atom) = match f {
                Formula::Not(g) => (false, &**g),
                g => (true, g),
            };
            let (tag, m, k) = match atom {
                Formula::Atom(tag, a, b) if atom.as_consys().is_none() => {
                    match (a.as_numeral(), b.as_numeral()) {
                        (Some(m), Some(k)) => (*tag, m, k),
                        _ => return reject(n, Reason::ChkShape, "atom arguments must be numerals"),
                    }
                }
                _ => return reject(n, Reason::ChkShape, "not a checker atom or its negation"),
            };
            let backing = &sys.atom(tag).expect("signature checked").backing;
            if prf_checker(backing, &m, &k) != positive {
                return reject(n, Reason::ChkMismatch, format!("backing checker disagrees on A{tag}"));
            }
        }
        Justification::Admit(k) => match sys.admitted.get(k) {
            None => return reject(n, Reason::AdmitUnknown, format!("no admitted schema {k}")),
            Some(a) if a != f => {
                return reject(n, Reason::AdmitMismatch, format!("not admitted schema {k}"))
            }
            Some(_) => {}
        },
    }
    Ok(())
}

fn imp_parts(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Imp(a, b) => Some((a, b)),
        _ => None,
    }
}

fn not_part(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Not(a) => Some(a),
        _ => None,
    }
}

fn eq_parts(f: &Formula) -> Option<(&FOTerm, &FOTerm)> {
    match f {
        Formula::Eq(a, b) => Some((a, b)),
        _ => None,
    }
}

fn all_parts(f: &Formula) -> Option<(u64, &Formula)> {
    match f {
        Formula::All(k, a) => Some((*k, a)),
        _ => None,
    }
}

pub fn is_instance(s: Schema, f: &Formula) -> bool {
    instance(s, f).unwrap_or(false)
}

fn instance(s: Schema, f: &Formula) -> Option<bool> {
    Some(match s {
        Schema::L1 => {
            let (a, rest) = imp_parts(f)?;
            let (_, a2) = imp_parts(rest)?;
            a == a2
        }
        Schema::L2 => {
            let (abc, rest) = imp_parts(f)?;
            let (a, bc) = imp_parts(abc)?;
            let (b, c) = imp_parts(bc)?;
            let (ab, ac) = imp_parts(rest)?;
            let (a2, b2) = imp_parts(ab)?;
            let (a3, c2) = imp_parts(ac)?;
            a == a2 && a == a3 && b == b2 && c == c2
        }
        Schema::L3 => {
            let (nb_na, ab) = imp_parts(f)?;
            let (nb, na) = imp_parts(nb_na)?;
            let (a, b) = imp_parts(ab)?;
            not_part(nb)? == b && not_part(na)? == a
        }
        Schema::Q1 => {
            let (all, inst) = imp_parts(f)?;
            let (x, a) = all_parts(all)?;
            let mut t = None;
            match_instance(a, inst, x, &mut t)
                && a.substitute(x, &t.unwrap_or(FOTerm::Var(x))).as_ref() == Ok(inst)
        }
        Schema::Q2 => {
            let (all, rest) = imp_parts(f)?;
            let (x, ab) = all_parts(all)?;
            let (a, b) = imp_parts(ab)?;
            let (a2, all_b) = imp_parts(rest)?;
            let (x2, b2) = all_parts(all_b)?;
            x == x2 && a == a2 && b == b2 && !a.is_free(x)
        }
        Schema::E1 => {
            let (a, b) = eq_parts(f)?;
            a == b
        }
        Schema::E2 => {
            let (st, rest) = imp_parts(f)?;
            let (s, t) = eq_parts(st)?;
            let (p, q) = imp_parts(rest)?;
            if p.as_consys().is_some() || q.as_consys().is_some() {
                return Some(p == q);
            }
            match (p, q) {
                (Formula::Eq(a, b), Formula::Eq(c, d)) => replaced(a, c, s, t) && replaced(b, d, s, t),
                (Formula::Atom(k, a, b), Formula::Atom(k2, c, d)) => {
                    k == k2 && replaced(a, c, s, t) && replaced(b, d, s, t)
                }
                _ => false,
            }
        }
        Schema::N1 => {
            let (a, b) = eq_parts(not_part(f)?)?;
            matches!(a, FOTerm::Succ(..)) && *b == FOTerm::Zero
        }
        Schema::N2 => {
            let (l, r) = imp_parts(f)?;
            let (a, b) = eq_parts(l)?;
            let (c, d) = eq_parts(r)?;
            a.unsucc().as_ref() == Some(c) && b.unsucc().as_ref() == Some(d)
        }
        Schema::N3 => {
            let (l, r) = eq_parts(f)?;
            match l {
                FOTerm::Plus(s, z) => **z == FOTerm::Zero && **s == *r,
                _ => false,
            }
        }
        Schema::N4 => {
            let (l, r) = eq_parts(f)?;
            match l {
                FOTerm::Plus(s, st) => {
                    let t = st.unsucc()?;
                    r.unsucc()? == FOTerm::plus((**s).clone(), t)
                }
                _ => false,
            }
        }
        Schema::N5 => {
            let (l, r) = eq_parts(f)?;
            match l {
                FOTerm::Times(_, z) => **z == FOTerm::Zero && *r == FOTerm::Zero,
                _ => false,
            }
        }
        Schema::N6 => {
            let (l, r) = eq_parts(f)?;
            match l {
                FOTerm::Times(s, st) => {
                    let t = st.unsucc()?;
                    *r == FOTerm::plus(FOTerm::times((**s).clone(), t), (**s).clone())
                }
                _ => false,
            }
        }
        Schema::Ind => {
            let (base, rest) = imp_parts(f)?;
            let (step, concl) = imp_parts(rest)?;
            let (x, a) = all_parts(concl)?;
            let (x2, step_body) = all_parts(step)?;
            let (a2, next) = imp_parts(step_body)?;
            let zero = a.substitute(x, &FOTerm::Zero).ok()?;
            let succ = a.substitute(x, &FOTerm::succ(FOTerm::Var(x))).ok()?;
            x == x2 && a2 == a && *base == zero && *next == succ
        }
    })
}

/// Whether `b` is `a` with some occurrences of `s` replaced by `t`.
fn replaced(a: &FOTerm, b: &FOTerm, s: &FOTerm, t: &FOTerm) -> bool {
    if a == b || (a == s && b == t) {
        return true;
    }
    match (a, b) {
        (FOTerm::Succ(..), FOTerm::Succ(..)) => {
            replaced(&a.unsucc().expect("successor"), &b.unsucc().expect("successor"), s, t)
        }
        (FOTerm::Plus(a1, a2), FOTerm::Plus(b1, b2)) | (FOTerm::Times(a1, a2), FOTerm::Times(b1, b2)) => {
            matches!((a, b), (FOTerm::Plus(..), FOTerm::Plus(..)) | (FOTerm::Times(..), FOTerm::Times(..)))
                && replaced(a1, b1, s, t)
                && replaced(a2, b2, s, t)
        }
        _ => false,
    }
}

/// Finds the term `t` with `a[t/x] = b`, recording it in `t`.
fn match_instance(a: &Formula, b: &Formula, x: u64, t: &mut Option<FOTerm>) -> bool {
    match (a, b) {
        (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) => match_term(a1, b1, x, t) && match_term(a2, b2, x, t),
        (Formula::Atom(k, a1, a2), Formula::Atom(k2, b1, b2)) => {
            k == k2 && match_term(a1, b1, x, t) && match_term(a2, b2, x, t)
        }
        (Formula::Not(a), Formula::Not(b)) => match_instance(a, b, x, t),
        (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => {
            match_instance(a1, b1, x, t) && match_instance(a2, b2, x, t)
        }
        (Formula::All(y, a), Formula::All(y2, b)) => {
            y == y2 && if *y == x { a == b } else { match_instance(a, b, x, t) }
        }
        _ => false,
    }
}

fn match_term(a: &FOTerm, b: &FOTerm, x: u64, t: &mut Option<FOTerm>) -> bool {
    match (a, b) {
        (FOTerm::Var(k), _) if *k == x => match t {
            Some(prev) => prev == b,
            None => {
                *t = Some(b.clone());
                true
            }
        },
        (FOTerm::Succ(n, ia), FOTerm::Succ(m, ib)) => match m.checked_sub(n) {
            Some(rest) if rest.is_zero() => match_term(ia, ib, x, t),
            Some(rest) => match_term(ia, &FOTerm::Succ(rest, ib.clone()), x, t),
            None => false,
        },
        (FOTerm::Plus(a1, a2), FOTerm::Plus(b1, b2)) | (FOTerm::Times(a1, a2), FOTerm::Times(b1, b2)) => {
            std::mem::discriminant(a) == std::mem::discriminant(b)
                && match_term(a1, b1, x, t)
                && match_term(a2, b2, x, t)
        }
        _ => a == b,
    }
}

fn just_code(j: &Justification) -> Nat {
    let p = |a: u64, b: u64| Nat::pair(&Nat::from(a), &Nat::from(b));
    match *j {
        Justification::Axiom(s) => Nat::from(5 * s.id()),
        Justification::Mp(i, k) => Nat::affine(5, 1, &p(i as u64, k as u64)),
        Justification::Gen(i, k) => Nat::affine(5, 2, &p(i as u64, k)),
        Justification::Chk => Nat::from(3u64),
        Justification::Admit(k) => Nat::affine(5, 4, &Nat::from(k as u64)),
    }
}

fn decode_just(c: &Nat) -> Option<Justification> {
    let (q, r) = c.div_rem_small(5).ok()?;
    let ref_pair = |q: &Nat| -> Option<(usize, u64)> {
        let (a, b) = q.unpair().ok()?;
        Some((usize::try_from(a.to_u64()?).ok()?, b.to_u64()?))
    };
    Some(match r {
        0 => Justification::Axiom(Schema::from_id(q.to_u64()?)?),
        1 => {
            let (i, j) = ref_pair(&q)?;
            Justification::Mp(i, usize::try_from(j).ok()?)
        }
        2 => {
            let (i, k) = ref_pair(&q)?;
            Justification::Gen(i, k)
        }
        3 if q.is_zero() => Justification::Chk,
        3 => return None,
        _ => Justification::Admit(usize::try_from(q.to_u64()?).ok()?),
    })
}

/// Gödel number of a proof.
///
/// The empty proof is 0; a proof with first line `l` and remaining lines
/// `rest` is `pair(pair(gn(formula), just), code(rest)) + 1`. Justification
/// codes: `AX s` is `5·id(s)`, `MP i j` is `5·pair(i,j)+1`, `GEN i v<k>` is
/// `5·pair(i,k)+2`, `CHK` is 3 and `ADMIT k` is `5k+4`.
pub fn encode_proof(p: &Proof) -> Nat {
    p.lines.iter().rev().fold(Nat::zero(), |acc, l| {
        let head = Nat::pair(&gn_formula(&l.formula), &just_code(&l.just));
        Nat::pair(&head, &acc).succ()
    })
}

/// Inverse of [`encode_proof`]; `None` for codes that name no proof.
pub fn decode_proof(c: &Nat) -> Option<Proof> {
    let mut proof = Proof::new();
    let mut c = c.clone();
    while !c.is_zero() {
        let (head, rest) = c.pred().unpair().ok()?;
        let (f, j) = head.unpair().ok()?;
        proof.push(decode_formula(&f).ok()?, decode_just(&j)?);
        c = rest;
    }
    Some(proof)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("proof line {line}: {message}")]
pub struct ProofParseError {
    pub line: usize,
    pub message: String,
}

/// One line per step: `n. <formula> ; AX <id> | MP <i> <j> | GEN <i> v<k> | CHK | ADMIT <id>`.
pub fn print_proof(p: &Proof) -> String {
    let mut out = String::new();
    for (i, l) in p.lines.iter().enumerate() {
        out.push_str(&format!("{}. {} ; {}\n", i + 1, print_formula(&l.formula), l.just));
    }
    out
}

pub fn parse_proof(text: &str) -> Result<Proof, ProofParseError> {
    let mut proof = Proof::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| ProofParseError { line, message };
        if raw.trim().is_empty() {
            return Err(err("empty line".into()));
        }
        let (num, rest) = raw.split_once('.').ok_or_else(|| err("missing line number".into()))?;
        let num: usize = num.trim().parse().map_err(|_| err(format!("bad line number {num:?}")))?;
        let expected = proof.lines.len() + 1;
        if num != expected {
            return Err(err(format!("expected step {expected}, found {num}")));
        }
        let (formula, just) = rest
            .rsplit_once(';')
            .ok_or_else(|| err("missing ';' before the justification".into()))?;
        let formula = parse_formula(formula.trim()).map_err(|e| err(e.to_string()))?;
        let just = parse_just(just.trim()).map_err(err)?;
        proof.push(formula, just);
    }
    Ok(proof)
}

fn parse_just(s: &str) -> Result<Justification, String> {
    let words: Vec<&str> = s.split_whitespace().collect();
    let num = |w: &str| w.parse::<usize>().map_err(|_| format!("bad number {w:?}"));
    match words.as_slice() {
        ["AX", id] => Ok(Justification::Axiom(id.parse()?)),
        ["MP", i, j] => Ok(Justification::Mp(num(i)?, num(j)?)),
        ["GEN", i, v] => {
            let k = v
                .strip_prefix('v')
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| format!("bad variable {v:?}"))?;
            Ok(Justification::Gen(num(i)?, k))
        }
        ["CHK"] => Ok(Justification::Chk),
        ["ADMIT", k] => Ok(Justification::Admit(num(k)?)),
        _ => Err(format!("bad justification {s:?}")),
    }
}
