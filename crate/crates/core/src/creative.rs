//! The creative loop: perceive a program, apply a productive function to its
//! index, and extend the enumerator with the escaping value.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constructions::{extend_enumerator, psi_kbar, psi_tot};
use crate::eval::{eval_index, EvalError, EvalOutcome, DEFAULT_FUEL};
use crate::nat::Nat;
use crate::nat_serde;
use crate::syntax::{parse_term, print_nat_bounded, print_nat_len, ParseError};
use crate::term::{decode_u64, encode, Term};

pub const DEFAULT_SAMPLE_WIDTH: u64 = 5;

/// Which productive set the loop works in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PsiKind {
    /// Indices of total functions; ψ is the "+1" diagonal.
    #[serde(rename = "TOT")]
    Tot,
    /// Complement of the self-halting set; ψ turns a range into a domain.
    #[serde(rename = "KBAR")]
    Kbar,
}

impl PsiKind {
    pub fn apply(self, i: &Nat) -> Nat {
        match self {
            PsiKind::Tot => psi_tot(i),
            PsiKind::Kbar => psi_kbar(i),
        }
    }
}

impl fmt::Display for PsiKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PsiKind::Tot => "TOT",
            PsiKind::Kbar => "KBAR",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown productive set {0:?} (expected tot or kbar)")]
pub struct UnknownPsiKind(pub String);

impl FromStr for PsiKind {
    type Err = UnknownPsiKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "tot" => Ok(PsiKind::Tot),
            "kbar" => Ok(PsiKind::Kbar),
            _ => Err(UnknownPsiKind(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CreativeConfig {
    pub psi_kind: PsiKind,
    pub fuel: u64,
    pub sample_width: u64,
}

impl Default for CreativeConfig {
    fn default() -> Self {
        CreativeConfig {
            psi_kind: PsiKind::Tot,
            fuel: DEFAULT_FUEL,
            sample_width: DEFAULT_SAMPLE_WIDTH,
        }
    }
}

/// One diagonal check `(n, lhs, rhs)`.
///
/// In TOT mode `lhs = φ_ψ(i)(n)` and `rhs = φ_{φ_i(n)}(n)`; in KBAR mode
/// `lhs = ψ(i)` and `rhs = φ_i(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence(
    pub u64,
    #[serde(with = "nat_serde")] pub Nat,
    #[serde(with = "nat_serde")] pub Nat,
);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepRecord {
    pub step: u64,
    #[serde(with = "nat_serde")]
    pub input_index: Nat,
    #[serde(with = "nat_serde")]
    pub psi_value: Nat,
    #[serde(with = "nat_serde")]
    pub extended_index: Nat,
    pub evidence: Vec<Evidence>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CreativeState {
    pub seed: Nat,
    pub current: Nat,
    pub history: Vec<StepRecord>,
    pub config: CreativeConfig,
}

impl CreativeState {
    pub fn new(seed: Nat, config: CreativeConfig) -> Self {
        CreativeState {
            current: seed.clone(),
            seed,
            history: Vec::new(),
            config,
        }
    }
}

/// A step that could not gather its evidence.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
#[error("step {step} inconclusive: {reason}")]
pub struct Inconclusive {
    pub step: u64,
    pub reason: String,
}

fn halted(
    what: impl Fn() -> String,
    r: Result<EvalOutcome, EvalError>,
) -> Result<Nat, String> {
    match r {
        Ok(EvalOutcome::Halted(v)) => Ok(v),
        Ok(EvalOutcome::OutOfFuel(f)) => Err(format!("{} ran out of fuel ({f})", what())),
        Err(e) => Err(format!("{}: {e}", what())),
    }
}

/// Longest value text a transcript records.
pub const MAX_RECORDED_CHARS: usize = 1 << 20;

fn recordable(n: u64, v: &Nat) -> Result<(), String> {
    let len = print_nat_len(v);
    if len > MAX_RECORDED_CHARS as u128 {
        return Err(format!("value at position {n} prints to about {len} chars"));
    }
    Ok(())
}

fn gather_evidence(i: &Nat, v: &Nat, config: &CreativeConfig) -> Result<Vec<Evidence>, String> {
    let fuel = config.fuel;
    let mut out = Vec::new();
    for n in 1..=config.sample_width {
        let x = Nat::from(n);
        let k = halted(|| format!("enumerator at position {n}"), eval_index(i, &x, fuel))?;
        match config.psi_kind {
            PsiKind::Tot => {
                let rhs = halted(|| format!("enumerated program at {n}"), eval_index(&k, &x, fuel))?;
                let lhs = halted(|| format!("diagonal program at {n}"), eval_index(v, &x, fuel))?;
                if lhs != rhs.succ() {
                    return Err(format!("diagonal identity fails at {n}"));
                }
                recordable(n, &lhs)?;
                recordable(n, &rhs)?;
                out.push(Evidence(n, lhs, rhs));
            }
            PsiKind::Kbar => {
                if &k == v {
                    return Err(format!("psi value is enumerated at position {n}"));
                }
                recordable(n, &k)?;
                out.push(Evidence(n, v.clone(), k));
            }
        }
    }
    Ok(out)
}

/// One perception-application-extension step.
///
/// On failure the caller's state is left untouched.
pub fn creative_step(state: &CreativeState) -> Result<CreativeState, Inconclusive> {
    let step = state.history.len() as u64 + 1;
    let i = &state.current;
    let v = state.config.psi_kind.apply(i);
    let evidence = gather_evidence(i, &v, &state.config)
        .map_err(|reason| Inconclusive { step, reason })?;
    let j = extend_enumerator(i, &v);
    let mut next = state.clone();
    next.history.push(StepRecord {
        step,
        input_index: i.clone(),
        psi_value: v,
        extended_index: j.clone(),
        evidence,
    });
    next.current = j;
    Ok(next)
}

/// Record of a creative run.
///
/// Timestamps are logical: `created` is 0 and `updated` counts completed
/// steps, which keeps persisted transcripts reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub seed: Nat,
    pub config: CreativeConfig,
    pub steps: Vec<StepRecord>,
    pub incomplete: Option<Inconclusive>,
    pub created: u64,
    pub updated: u64,
}

impl Transcript {
    pub fn new(seed: Nat, config: CreativeConfig) -> Self {
        Transcript {
            seed,
            config,
            steps: Vec::new(),
            incomplete: None,
            created: 0,
            updated: 0,
        }
    }

    /// The live enumerator: the last extended index, or the seed.
    pub fn current(&self) -> &Nat {
        self.steps
            .last()
            .map(|s| &s.extended_index)
            .unwrap_or(&self.seed)
    }

    /// The emitted sequence `j_1, j_2, …` of ψ values.
    pub fn psi_values(&self) -> Vec<&Nat> {
        self.steps.iter().map(|s| &s.psi_value).collect()
    }
}

/// Runs `k` steps from `seed`, reporting each completed step to `sink`.
pub fn creative_run_with<E>(
    seed: &Nat,
    k: u64,
    config: CreativeConfig,
    mut sink: impl FnMut(&StepRecord) -> Result<(), E>,
) -> Result<Transcript, E> {
    let mut t = Transcript::new(seed.clone(), config);
    let mut state = CreativeState::new(seed.clone(), config);
    for _ in 0..k {
        match creative_step(&state) {
            Ok(next) => {
                state = next;
                let rec = state.history.last().expect("step appended a record");
                sink(rec)?;
                t.steps.push(rec.clone());
                t.updated = t.steps.len() as u64;
            }
            Err(e) => {
                t.incomplete = Some(e);
                break;
            }
        }
    }
    Ok(t)
}

pub fn creative_run(seed: &Nat, k: u64, config: CreativeConfig) -> Transcript {
    creative_run_with(seed, k, config, |_| Ok::<(), std::convert::Infallible>(()))
        .unwrap_or_else(|e| match e {})
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "ESCAPED")]
    Escaped,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
    #[serde(rename = "REFUTED-PRECONDITION")]
    RefutedPrecondition,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Escaped => "ESCAPED",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::RefutedPrecondition => "REFUTED-PRECONDITION",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditCheck {
    pub n: u64,
    /// `φ_candidate(n)`, when it halted.
    #[serde(serialize_with = "opt_nat")]
    pub enumerated: Option<Nat>,
    #[serde(serialize_with = "opt_nat")]
    pub lhs: Option<Nat>,
    #[serde(serialize_with = "opt_nat")]
    pub rhs: Option<Nat>,
    pub verdict: Verdict,
    pub note: String,
}

// values too long to record serialize as null
fn opt_nat<S: serde::Serializer>(n: &Option<Nat>, s: S) -> Result<S::Ok, S::Error> {
    match n.as_ref().map(|n| print_nat_bounded(n, MAX_RECORDED_CHARS)) {
        Some(Ok(text)) => s.serialize_str(&text),
        _ => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    #[serde(with = "nat_serde")]
    pub candidate: Nat,
    pub psi_kind: PsiKind,
    #[serde(with = "nat_serde")]
    pub psi_value: Nat,
    pub sample_width: u64,
    pub fuel: u64,
    pub verdict: Verdict,
    pub checks: Vec<AuditCheck>,
}

fn audit_position(candidate: &Nat, v: &Nat, kind: PsiKind, n: u64, fuel: u64) -> AuditCheck {
    let x = Nat::from(n);
    let mut check = AuditCheck {
        n,
        enumerated: None,
        lhs: None,
        rhs: None,
        verdict: Verdict::Inconclusive,
        note: String::new(),
    };
    let k = match halted(|| "candidate".into(), eval_index(candidate, &x, fuel)) {
        Ok(k) => k,
        Err(note) => {
            check.note = note;
            return check;
        }
    };
    check.enumerated = Some(k.clone());
    match kind {
        PsiKind::Tot => {
            match eval_index(&k, &x, fuel) {
                Ok(EvalOutcome::Halted(r)) => check.rhs = Some(r),
                Ok(EvalOutcome::OutOfFuel(_)) => {
                    check.verdict = Verdict::RefutedPrecondition;
                    check.note = "enumerated index does not halt on the position".into();
                    return check;
                }
                Err(e) => {
                    check.note = e.to_string();
                    return check;
                }
            }
            match halted(|| "diagonal program".into(), eval_index(v, &x, fuel)) {
                Ok(l) => check.lhs = Some(l),
                Err(note) => {
                    check.note = note;
                    return check;
                }
            }
            let (l, r) = (check.lhs.as_ref().unwrap(), check.rhs.as_ref().unwrap());
            if *l == r.succ() {
                check.verdict = Verdict::Escaped;
                check.note = "psi program disagrees with the enumerated program".into();
            } else {
                check.note = "diagonal identity fails".into();
            }
        }
        PsiKind::Kbar => {
            check.lhs = Some(v.clone());
            check.rhs = Some(k.clone());
            if &k == v {
                check.verdict = Verdict::RefutedPrecondition;
                check.note = "psi value is enumerated, so the range meets the halting set".into();
                return check;
            }
            match eval_index(&k, &k, fuel) {
                Ok(EvalOutcome::Halted(_)) => {
                    check.verdict = Verdict::RefutedPrecondition;
                    check.note = "enumerated index halts on itself".into();
                }
                Ok(EvalOutcome::OutOfFuel(_)) => {
                    check.verdict = Verdict::Escaped;
                    check.note = "differs; no self-halting observed".into();
                }
                Err(e) => check.note = e.to_string(),
            }
        }
    }
    check
}

/// Bounded check that ψ(candidate) escapes the candidate's enumeration.
pub fn escape_audit(candidate: &Nat, kind: PsiKind, sample_width: u64, fuel: u64) -> AuditReport {
    let v = kind.apply(candidate);
    let checks: Vec<_> = (1..=sample_width)
        .map(|n| audit_position(candidate, &v, kind, n, fuel))
        .collect();
    let verdict = if checks.iter().any(|c| c.verdict == Verdict::RefutedPrecondition) {
        Verdict::RefutedPrecondition
    } else if checks.iter().any(|c| c.verdict == Verdict::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::Escaped
    };
    AuditReport {
        candidate: candidate.clone(),
        psi_kind: kind,
        psi_value: v,
        sample_width,
        fuel,
        verdict,
        checks,
    }
}

/// Parses a program text and returns it with its index.
pub fn perceive(text: &str) -> Result<(Term, Nat), ParseError> {
    let t = parse_term(text)?;
    let i = encode(&t);
    Ok((t, i))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("no index below {bound} decodes to the term")]
pub struct NotFound {
    pub bound: u64,
}

/// Least `c < bound` whose program is syntactically `t`, by walking the listing.
pub fn find_index_by_enumeration(t: &Term, bound: u64) -> Result<u64, NotFound> {
    (0..bound)
        .find(|&c| decode_u64(c) == *t)
        .ok_or(NotFound { bound })
}

/// Applies an arbitrary program, as an index transformer, to an index.
pub fn apply_general(psi: &Nat, i: &Nat, fuel: u64) -> Result<EvalOutcome, EvalError> {
    eval_index(psi, i, fuel)
}

/// Enumerators of total-function indices used as seeds, with their names.
pub fn tot_seed_family() -> Vec<(&'static str, Term)> {
    use crate::stdlib::affine;
    vec![
        ("const-id", Term::constant(3u64)),
        ("const-succ", Term::constant(1u64)),
        ("const-plus-two", Term::constant(34u64)),
        ("constants", affine(6, 7)),
        ("succ-then-id", Term::ifz(Term::Pred, Term::constant(1u64), Term::constant(3u64))),
        (
            "extended-const-id",
            Term::ifz(Term::Pred, Term::constant(1u64), Term::comp(Term::constant(3u64), Term::Pred)),
        ),
    ]
}

/// Enumerators whose outputs never halt on themselves, for KBAR runs.
pub fn kbar_seed_family() -> Vec<(&'static str, Term)> {
    vec![
        ("const-diverge", Term::constant(86u64)),
        ("diverge-or-loop", Term::ifz(Term::Pred, Term::constant(86u64), Term::constant(8u64))),
    ]
}
