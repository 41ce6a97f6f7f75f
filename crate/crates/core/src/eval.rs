//! Fuel-bounded evaluation.
//!
//! One unit of fuel is charged on entry to every constructor and for every
//! trial of a `mu` search. The universal primitive runs the decoded program
//! on the same budget. The machine keeps its continuation on the heap, so
//! self-interpretation depth is bounded by fuel, not by the native stack.

use std::sync::Arc;

use serde::Serialize;

use crate::nat::{Nat, TooLarge};
use crate::term::{decode, Term};

pub const DEFAULT_FUEL: u64 = 1_000_000;

/// Largest symbolic nesting depth a value may reach during evaluation.
pub const MAX_VALUE_DEPTH: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum EvalOutcome {
    Halted(#[serde(with = "crate::nat_serde")] Nat),
    OutOfFuel(u64),
}

impl EvalOutcome {
    pub fn value(&self) -> Option<&Nat> {
        match self {
            EvalOutcome::Halted(v) => Some(v),
            EvalOutcome::OutOfFuel(_) => None,
        }
    }

    pub fn is_halted(&self) -> bool {
        matches!(self, EvalOutcome::Halted(_))
    }
}

/// Host resource exhaustion: a value outgrew what the host represents.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("resource exhausted: {0}")]
    ResourceExhausted(#[from] TooLarge),
    #[error("resource exhausted: value nesting depth {depth} exceeds {limit}")]
    TooDeep { depth: u32, limit: u32 },
}

fn check_depth(v: &Nat) -> Result<(), EvalError> {
    if v.depth() > MAX_VALUE_DEPTH {
        Err(EvalError::TooDeep {
            depth: v.depth(),
            limit: MAX_VALUE_DEPTH,
        })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub outcome: EvalOutcome,
    pub fuel_used: u64,
}

enum Frame {
    PairRight { g: Arc<Term>, x: Nat },
    PairDone { left: Nat },
    CompOuter { f: Arc<Term> },
    Branch { then: Arc<Term>, other: Arc<Term>, x: Nat },
    Rec { step: Arc<Term>, k: u64, n: u64, a: Nat },
    Mu { body: Arc<Term>, y: Nat, x: Nat },
}

enum Mode {
    Eval(Arc<Term>, Nat),
    Return(Nat),
    Done(EvalOutcome),
}

struct Machine {
    budget: u64,
    used: u64,
    stack: Vec<Frame>,
}

impl Machine {
    fn tick(&mut self) -> bool {
        if self.used == self.budget {
            false
        } else {
            self.used += 1;
            true
        }
    }

    fn exhausted(&mut self) -> Mode {
        self.used = self.budget;
        Mode::Done(EvalOutcome::OutOfFuel(self.budget))
    }

    fn run(&mut self, t: Arc<Term>, x: Nat) -> Result<EvalOutcome, EvalError> {
        let mut mode = Mode::Eval(t, x);
        loop {
            mode = match mode {
                Mode::Eval(t, x) => {
                    check_depth(&x)?;
                    self.enter(&t, x)?
                }
                Mode::Return(v) => {
                    check_depth(&v)?;
                    self.resume(v)
                }
                Mode::Done(outcome) => return Ok(outcome),
            };
        }
    }

    fn enter(&mut self, t: &Arc<Term>, x: Nat) -> Result<Mode, EvalError> {
        if !self.tick() {
            return Ok(self.exhausted());
        }
        Ok(match &**t {
            Term::Zero => Mode::Return(Nat::ZERO),
            Term::Succ => Mode::Return(x.succ()),
            Term::Pred => Mode::Return(x.pred()),
            Term::Id => Mode::Return(x),
            Term::Proj1 => Mode::Return(x.unpair()?.0),
            Term::Proj2 => Mode::Return(x.unpair()?.1),
            Term::Const(n) => Mode::Return(n.clone()),
            Term::Univ => {
                let (e, a) = x.unpair()?;
                Mode::Eval(Arc::new(decode(&e)?), a)
            }
            Term::Mu(body) => {
                if !self.tick() {
                    return Ok(self.exhausted());
                }
                let arg = Nat::pair(&Nat::ZERO, &x);
                self.stack.push(Frame::Mu {
                    body: body.clone(),
                    y: Nat::ZERO,
                    x,
                });
                Mode::Eval(body.clone(), arg)
            }
            Term::Pair(f, g) => {
                self.stack.push(Frame::PairRight {
                    g: g.clone(),
                    x: x.clone(),
                });
                Mode::Eval(f.clone(), x)
            }
            Term::Comp(f, g) => {
                self.stack.push(Frame::CompOuter { f: f.clone() });
                Mode::Eval(g.clone(), x)
            }
            Term::IfZ(c, a, b) => {
                self.stack.push(Frame::Branch {
                    then: a.clone(),
                    other: b.clone(),
                    x: x.clone(),
                });
                Mode::Eval(c.clone(), x)
            }
            Term::Rec(base, step) => {
                let (n, a) = x.unpair()?;
                // the base and every iteration each cost at least one unit
                let remaining = self.budget - self.used;
                let n = match n.to_u64() {
                    Some(n) if n < remaining => n,
                    _ => return Ok(self.exhausted()),
                };
                self.stack.push(Frame::Rec {
                    step: step.clone(),
                    k: 0,
                    n,
                    a: a.clone(),
                });
                Mode::Eval(base.clone(), a)
            }
        })
    }

    fn resume(&mut self, v: Nat) -> Mode {
        match self.stack.pop() {
            None => Mode::Done(EvalOutcome::Halted(v)),
            Some(Frame::PairRight { g, x }) => {
                self.stack.push(Frame::PairDone { left: v });
                Mode::Eval(g, x)
            }
            Some(Frame::PairDone { left }) => Mode::Return(Nat::pair(&left, &v)),
            Some(Frame::CompOuter { f }) => Mode::Eval(f, v),
            Some(Frame::Branch { then, other, x }) => {
                if v.is_zero() {
                    Mode::Eval(then, x)
                } else {
                    Mode::Eval(other, x)
                }
            }
            Some(Frame::Rec { step, k, n, a }) => {
                if k == n {
                    return Mode::Return(v);
                }
                let arg = Nat::pair(&Nat::from(k), &Nat::pair(&v, &a));
                self.stack.push(Frame::Rec {
                    step: step.clone(),
                    k: k + 1,
                    n,
                    a,
                });
                Mode::Eval(step, arg)
            }
            Some(Frame::Mu { body, y, x }) => {
                if v.is_zero() {
                    return Mode::Return(y);
                }
                if !self.tick() {
                    return self.exhausted();
                }
                let y = y.succ();
                let arg = Nat::pair(&y, &x);
                self.stack.push(Frame::Mu {
                    body: body.clone(),
                    y,
                    x,
                });
                Mode::Eval(body, arg)
            }
        }
    }
}

/// Evaluates `t` on `x` and reports the fuel actually consumed.
pub fn eval_traced(t: &Term, x: &Nat, fuel: u64) -> Result<Evaluation, EvalError> {
    let mut m = Machine {
        budget: fuel,
        used: 0,
        stack: Vec::new(),
    };
    let outcome = m.run(Arc::new(t.clone()), x.clone())?;
    Ok(Evaluation {
        outcome,
        fuel_used: m.used,
    })
}

pub fn eval(t: &Term, x: &Nat, fuel: u64) -> Result<EvalOutcome, EvalError> {
    eval_traced(t, x, fuel).map(|e| e.outcome)
}

/// `φ_i(x)` under a fuel budget.
pub fn eval_index(i: &Nat, x: &Nat, fuel: u64) -> Result<EvalOutcome, EvalError> {
    eval(&decode(i)?, x, fuel)
}

/// The outputs `φ_i(1), …, φ_i(count)`, each under its own budget.
pub fn run_enumerator(i: &Nat, count: u64, fuel: u64) -> Result<Vec<EvalOutcome>, EvalError> {
    let t = decode(i)?;
    (1..=count)
        .map(|n| eval(&t, &Nat::from(n), fuel))
        .collect()
}
