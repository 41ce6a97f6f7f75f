//! C ABI over `goedel-forge`.
//!
//! Every function returns a [`GfStatus`]. Results come back through out
//! pointers; strings are NUL-terminated UTF-8 owned by the caller and
//! released with [`gf_string_free`]. Handles are opaque and released with
//! their `_free` function. After a non-`GF_STATUS_OK` status, [`gf_last_error`]
//! describes the failure on the calling thread.
//!
//! Naturals cross the boundary as text, in the same format the CLI reads
//! and prints.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use goedel_forge::constructions::{extend_enumerator, psi_kbar, psi_tot, smn};
use goedel_forge::creative::{creative_run, escape_audit, CreativeConfig, PsiKind, Transcript, Verdict};
use goedel_forge::eval::{eval, EvalOutcome};
use goedel_forge::logic::{check_proof, godel_sentence, parse_proof, print_formula, system_at, SystemDef};
use goedel_forge::syntax::print_nat_bounded;
use goedel_forge::transcript::save;
use goedel_forge::{decode, encode, parse_nat, parse_term, print_term, Nat, Term};

/// Longest natural text returned across the boundary.
const TEXT_LIMIT: usize = 1 << 24;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    OutOfFuel = 4,
    ResourceExhausted = 5,
    /// A proof was rejected.
    Rejected = 6,
    InvalidArgument = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfPsiKind {
    Tot = 0,
    Kbar = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfVerdict {
    Escaped = 0,
    Inconclusive = 1,
    RefutedPrecondition = 2,
}

/// A parsed program.
pub struct GfTerm(Term);

/// A formal system of the observing tower.
pub struct GfSystem(SystemDef);

/// A finished creative run.
pub struct GfTranscript(Transcript);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(GfStatus, String);

type Res<T> = Result<T, Fail>;

fn fail(status: GfStatus, msg: impl Into<String>) -> Fail {
    Fail(status, msg.into())
}

fn guard(f: impl FnOnce() -> Res<()>) -> GfStatus {
    let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        Err(fail(GfStatus::Panic, msg))
    });
    match r {
        Ok(()) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GfStatus::Ok
        }
        Err(Fail(status, msg)) => {
            let msg = CString::new(msg.replace('\0', " ")).expect("NUL bytes replaced");
            LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
            status
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Res<&'a str> {
    if p.is_null() {
        return Err(fail(GfStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| fail(GfStatus::InvalidUtf8, e.to_string()))
}

unsafe fn nat(p: *const c_char) -> Res<Nat> {
    parse_nat(text(p)?).map_err(|e| fail(GfStatus::Parse, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Res<&'a T> {
    p.as_ref().ok_or_else(|| fail(GfStatus::NullPointer, "null handle"))
}

unsafe fn put<T>(out: *mut T, v: T) -> Res<()> {
    if out.is_null() {
        return Err(fail(GfStatus::NullPointer, "null out pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Res<()> {
    let c = CString::new(s).map_err(|e| fail(GfStatus::InvalidArgument, e.to_string()))?;
    if out.is_null() {
        return Err(fail(GfStatus::NullPointer, "null out pointer"));
    }
    out.write(c.into_raw());
    Ok(())
}

unsafe fn put_nat(out: *mut *mut c_char, n: &Nat) -> Res<()> {
    let s = print_nat_bounded(n, TEXT_LIMIT)
        .map_err(|e| fail(GfStatus::ResourceExhausted, e.to_string()))?;
    put_string(out, s)
}

fn psi_kind(k: GfPsiKind) -> PsiKind {
    match k {
        GfPsiKind::Tot => PsiKind::Tot,
        GfPsiKind::Kbar => PsiKind::Kbar,
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call on the same thread.
#[no_mangle]
pub extern "C" fn gf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` is null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `src` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gf_term_parse(src: *const c_char, out: *mut *mut GfTerm) -> GfStatus {
    guard(|| {
        let t = parse_term(text(src)?).map_err(|e| fail(GfStatus::Parse, e.to_string()))?;
        put(out, Box::into_raw(Box::new(GfTerm(t))))
    })
}

/// Program with the given index.
///
/// # Safety
/// `index` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gf_term_decode(index: *const c_char, out: *mut *mut GfTerm) -> GfStatus {
    guard(|| {
        let t = decode(&nat(index)?).map_err(|e| fail(GfStatus::ResourceExhausted, e.to_string()))?;
        put(out, Box::into_raw(Box::new(GfTerm(t))))
    })
}

/// # Safety
/// `term` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_term_free(term: *mut GfTerm) {
    if !term.is_null() {
        drop(Box::from_raw(term));
    }
}

/// # Safety
/// `term` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gf_term_print(term: *const GfTerm, out: *mut *mut c_char) -> GfStatus {
    guard(|| put_string(out, print_term(&handle(term)?.0)))
}

/// # Safety
/// `term` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gf_term_encode(term: *const GfTerm, out: *mut *mut c_char) -> GfStatus {
    guard(|| put_nat(out, &encode(&handle(term)?.0)))
}

/// Runs `term` on `x`. Returns `GF_STATUS_OUT_OF_FUEL` when the budget runs out.
///
/// # Safety
/// `term` is a live handle, `x` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gf_eval(
    term: *const GfTerm,
    x: *const c_char,
    fuel: u64,
    out: *mut *mut c_char,
) -> GfStatus {
    guard(|| {
        let t = handle(term)?;
        match eval(&t.0, &nat(x)?, fuel) {
            Ok(EvalOutcome::Halted(v)) => put_nat(out, &v),
            Ok(EvalOutcome::OutOfFuel(f)) => {
                Err(fail(GfStatus::OutOfFuel, format!("out of fuel after {f} steps")))
            }
            Err(e) => Err(fail(GfStatus::ResourceExhausted, e.to_string())),
        }
    })
}

unsafe fn index_op(
    args: &[*const c_char],
    out: *mut *mut c_char,
    op: impl FnOnce(&[Nat]) -> Nat,
) -> GfStatus {
    guard(|| {
        let ns = args.iter().map(|a| nat(*a)).collect::<Res<Vec<_>>>()?;
        put_nat(out, &op(&ns))
    })
}

/// Index of `x ↦ φ_i(pair(a, x))`.
///
/// # Safety
/// `i` and `a` are NUL-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gf_smn(i: *const c_char, a: *const c_char, out: *mut *mut c_char) -> GfStatus {
    index_op(&[i, a], out, |n| smn(&n[0], &n[1]))
}

/// # Safety
/// `i` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gf_psi(kind: GfPsiKind, i: *const c_char, out: *mut *mut c_char) -> GfStatus {
    index_op(&[i], out, |n| match kind {
        GfPsiKind::Tot => psi_tot(&n[0]),
        GfPsiKind::Kbar => psi_kbar(&n[0]),
    })
}

/// Index of the enumerator `v, φ_i(1), φ_i(2), …`.
///
/// # Safety
/// `i` and `v` are NUL-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gf_extend(i: *const c_char, v: *const c_char, out: *mut *mut c_char) -> GfStatus {
    index_op(&[i, v], out, |n| extend_enumerator(&n[0], &n[1]))
}

/// Runs `steps` creative steps from `seed`. A run that stops early still
/// yields its transcript, with status `GF_STATUS_OUT_OF_FUEL`.
///
/// # Safety
/// `seed` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gf_creative_run(
    seed: *const c_char,
    steps: u64,
    kind: GfPsiKind,
    fuel: u64,
    sample_width: u64,
    out: *mut *mut GfTranscript,
) -> GfStatus {
    guard(|| {
        let config = CreativeConfig {
            psi_kind: psi_kind(kind),
            fuel,
            sample_width,
        };
        let t = creative_run(&nat(seed)?, steps, config);
        let incomplete = t.incomplete.clone();
        put(out, Box::into_raw(Box::new(GfTranscript(t))))?;
        match incomplete {
            None => Ok(()),
            Some(e) => Err(fail(GfStatus::OutOfFuel, e.to_string())),
        }
    })
}

/// # Safety
/// `t` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_transcript_free(t: *mut GfTranscript) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of completed steps.
///
/// # Safety
/// `t` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gf_transcript_steps(t: *const GfTranscript, out: *mut u64) -> GfStatus {
    guard(|| put(out, handle(t)?.0.steps.len() as u64))
}

/// Index of the enumerator after the last completed step.
///
/// # Safety
/// `t` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gf_transcript_current(t: *const GfTranscript, out: *mut *mut c_char) -> GfStatus {
    guard(|| put_nat(out, handle(t)?.0.current()))
}

/// The transcript as line-delimited JSON.
///
/// # Safety
/// `t` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gf_transcript_jsonl(t: *const GfTranscript, out: *mut *mut c_char) -> GfStatus {
    guard(|| put_string(out, save(&handle(t)?.0)))
}

/// Escape audit of `candidate`. The verdict is always written when the
/// arguments are valid; `json_out` may be null.
///
/// # Safety
/// `candidate` is a NUL-terminated string; `verdict` is writable;
/// `json_out` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn gf_escape_audit(
    candidate: *const c_char,
    kind: GfPsiKind,
    sample_width: u64,
    fuel: u64,
    verdict: *mut GfVerdict,
    json_out: *mut *mut c_char,
) -> GfStatus {
    guard(|| {
        let report = escape_audit(&nat(candidate)?, psi_kind(kind), sample_width, fuel);
        let v = match report.verdict {
            Verdict::Escaped => GfVerdict::Escaped,
            Verdict::Inconclusive => GfVerdict::Inconclusive,
            Verdict::RefutedPrecondition => GfVerdict::RefutedPrecondition,
        };
        put(verdict, v)?;
        if !json_out.is_null() {
            let json = serde_json::to_string(&report)
                .map_err(|e| fail(GfStatus::ResourceExhausted, e.to_string()))?;
            put_string(json_out, json)?;
        }
        Ok(())
    })
}

/// `S_level` of the observing tower.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gf_system_at(level: u64, out: *mut *mut GfSystem) -> GfStatus {
    guard(|| {
        if level > 64 {
            return Err(fail(GfStatus::InvalidArgument, "tower levels above 64 are not supported"));
        }
        put(out, Box::into_raw(Box::new(GfSystem(system_at(level)))))
    })
}

/// # Safety
/// `s` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_system_free(s: *mut GfSystem) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Checks a proof in the text format. On `GF_STATUS_REJECTED`, `failing_line`
/// receives the 1-based line of the first failure; it may be null.
///
/// # Safety
/// `system` is a live handle, `proof` a NUL-terminated string,
/// `failing_line` null or writable.
#[no_mangle]
pub unsafe extern "C" fn gf_check_proof(
    system: *const GfSystem,
    proof: *const c_char,
    failing_line: *mut u64,
) -> GfStatus {
    guard(|| {
        let sys = handle(system)?;
        let p = parse_proof(text(proof)?).map_err(|e| fail(GfStatus::Parse, e.to_string()))?;
        check_proof(&sys.0, &p).map_err(|r| {
            if !failing_line.is_null() {
                failing_line.write(r.line as u64);
            }
            fail(GfStatus::Rejected, r.to_string())
        })
    })
}

/// Gödel sentence of `S_level`, stated over the atom of the next level.
///
/// # Safety
/// `p_prime` and `sentence` are writable.
#[no_mangle]
pub unsafe extern "C" fn gf_godel_sentence(
    level: u64,
    p_prime: *mut *mut c_char,
    sentence: *mut *mut c_char,
) -> GfStatus {
    guard(|| {
        let d = godel_sentence(level + 1);
        put_nat(p_prime, &d.p_prime)?;
        put_string(sentence, print_formula(&d.sentence))
    })
}
