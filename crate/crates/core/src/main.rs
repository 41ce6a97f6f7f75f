use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use goedel_forge::constructions::{extend_enumerator, fixed_point, psi_kbar, psi_tot, quine, smn};
use goedel_forge::creative::{
    creative_run_with, escape_audit, find_index_by_enumeration, AuditReport, CreativeConfig,
    PsiKind, Verdict,
};
use goedel_forge::eval::{eval, run_enumerator, EvalOutcome, DEFAULT_FUEL};
use goedel_forge::logic::{
    check_proof, gn_formula, godel_sentence, observe, parse_proof, print_formula, print_proof,
    search_proof_code, system_at, tower, Justification, Proof, SystemDef,
};
use goedel_forge::transcript::{load, render_table, save, TranscriptWriter};
use goedel_forge::syntax::{print_nat_bounded, print_nat_len};
use goedel_forge::{decode, encode, parse_nat, parse_term, print_nat, print_term, Nat, Term};

#[derive(Parser)]
#[command(
    name = "goedel-forge",
    version,
    about = "Gödel numbering, a universal evaluator, productive sets and observing systems"
)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Serialize)]
struct Config {
    /// Step budget for every evaluation.
    #[arg(long, global = true, env = "GOEDEL_FORGE_FUEL", default_value_t = DEFAULT_FUEL)]
    fuel: u64,
    /// Positions checked per creative step and audit.
    #[arg(long, global = true, env = "GOEDEL_FORGE_SAMPLE_WIDTH", default_value_t = 5)]
    sample_width: u64,
    /// Search bound for index search and bounded unprovability.
    #[arg(long, global = true, env = "GOEDEL_FORGE_BOUND", default_value_t = 20_000)]
    bound: u64,
    /// Transcript file written by creative-run and read by audit.
    #[arg(long, global = true, env = "GOEDEL_FORGE_TRANSCRIPT")]
    transcript: Option<PathBuf>,
    /// Machine-readable JSON output.
    #[arg(long, global = true, env = "GOEDEL_FORGE_STRUCTURED")]
    structured: bool,
    /// Worker threads for audits.
    #[arg(long, global = true, env = "GOEDEL_FORGE_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Productive set: tot or kbar.
    #[arg(long, global = true, env = "GOEDEL_FORGE_PSI", default_value = "tot")]
    psi: PsiKind,
}

#[derive(Subcommand)]
enum Command {
    /// Print the index of a term.
    Encode { term: String },
    /// Print the term with an index.
    Decode { index: String },
    /// Evaluate a term (or `@<index>`, or `@<file>`) on an input.
    Eval { program: String, x: String },
    /// Outputs at positions 1..=count of an enumerator.
    Enumerate { index: String, count: u64 },
    Smn { i: String, a: String },
    PsiTot { i: String },
    PsiKbar { i: String },
    Extend { i: String, v: String },
    /// Fixed point of the index transformer `h`.
    Fixpoint { h: String },
    Quine,
    /// Search the listing for a term's index below the bound.
    FindIndex { term: String, bound: Option<u64> },
    /// Run the creative loop for `k` steps.
    CreativeRun { seed: String, k: u64 },
    /// Escape audit; without candidates, audits the transcript's final index.
    Audit { candidates: Vec<String> },
    GodelSentence { level: u64 },
    Observe { level: u64 },
    Tower { k: u64 },
    /// Check a proof file in the tower system of the given level.
    CheckProof { level: u64, file: PathBuf },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Inconclusive(String),
    Refuted(String),
    Rejected(String),
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Inconclusive(_) => "inconclusive",
            Failure::Refuted(_) => "refuted-precondition",
            Failure::Rejected(_) => "proof-rejected",
        }
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Inconclusive(_) => 2,
            Failure::Refuted(_) => 3,
            Failure::Rejected(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Inconclusive(m) | Failure::Refuted(m) | Failure::Rejected(m) => m,
        }
    }
}

/// Command output; a failure is reported after the output is printed.
struct Report {
    text: String,
    json: Value,
    failure: Option<Failure>,
}

impl Report {
    fn ok(text: impl Into<String>, json: Value) -> Result<Report, Failure> {
        Ok(Report {
            text: text.into(),
            json,
            failure: None,
        })
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn nat_arg(s: &str) -> Result<Nat, Failure> {
    parse_nat(s).map_err(|e| usage(format!("bad natural {s:?}: {e}")))
}

/// Inline term text, `@<index>`, or `@<file>` holding term text.
fn program_arg(s: &str) -> Result<Term, Failure> {
    match s.strip_prefix('@') {
        Some(rest) if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) => {
            decode(&nat_arg(rest)?).map_err(|e| Failure::Inconclusive(e.to_string()))
        }
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
            parse_term(text.trim()).map_err(|e| usage(format!("{path}: {e}")))
        }
        None => parse_term(s).map_err(|e| usage(format!("bad term {s:?}: {e}"))),
    }
}

/// Longest value text the CLI writes.
const OUTPUT_LIMIT: usize = 1 << 24;

fn text(n: &Nat) -> Result<String, Failure> {
    print_nat_bounded(n, OUTPUT_LIMIT)
        .map_err(|e| Failure::Inconclusive(format!("resource exhausted: {e}")))
}

fn index_result(label: &str, n: &Nat) -> Result<Report, Failure> {
    let s = text(n)?;
    Report::ok(s.clone(), json!({ label: s }))
}

fn outcome_json(o: &EvalOutcome) -> Result<Value, Failure> {
    Ok(match o {
        EvalOutcome::Halted(v) => json!({ "halted": text(v)? }),
        EvalOutcome::OutOfFuel(f) => json!({ "out_of_fuel": f }),
    })
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Encode { term } => index_result("index", &encode(&program_arg(term)?)),
        Command::Decode { index } => {
            let t = decode(&nat_arg(index)?).map_err(|e| Failure::Inconclusive(e.to_string()))?;
            let s = print_term(&t);
            Report::ok(s.clone(), json!({ "term": s }))
        }
        Command::Eval { program, x } => {
            let t = program_arg(program)?;
            let x = nat_arg(x)?;
            match eval(&t, &x, cfg.fuel) {
                Ok(EvalOutcome::Halted(v)) => index_result("value", &v),
                Ok(EvalOutcome::OutOfFuel(f)) => Err(Failure::Inconclusive(format!(
                    "out of fuel after {f} steps"
                ))),
                Err(e) => Err(Failure::Inconclusive(e.to_string())),
            }
        }
        Command::Enumerate { index, count } => {
            let i = nat_arg(index)?;
            let outs = run_enumerator(&i, *count, cfg.fuel)
                .map_err(|e| Failure::Inconclusive(e.to_string()))?;
            let mut lines = String::new();
            for (n, o) in outs.iter().enumerate() {
                let v = match o {
                    EvalOutcome::Halted(v) => text(v)?,
                    EvalOutcome::OutOfFuel(_) => "out-of-fuel".into(),
                };
                lines.push_str(&format!("{}\t{v}\n", n + 1));
            }
            let failure = outs
                .iter()
                .position(|o| !o.is_halted())
                .map(|n| Failure::Inconclusive(format!("position {} ran out of fuel", n + 1)));
            Ok(Report {
                text: lines.trim_end().to_string(),
                json: json!({ "outputs": outs.iter().map(outcome_json).collect::<Result<Vec<_>, _>>()? }),
                failure,
            })
        }
        Command::Smn { i, a } => index_result("index", &smn(&nat_arg(i)?, &nat_arg(a)?)),
        Command::PsiTot { i } => index_result("index", &psi_tot(&nat_arg(i)?)),
        Command::PsiKbar { i } => index_result("index", &psi_kbar(&nat_arg(i)?)),
        Command::Extend { i, v } => {
            index_result("index", &extend_enumerator(&nat_arg(i)?, &nat_arg(v)?))
        }
        Command::Fixpoint { h } => index_result("index", &fixed_point(&nat_arg(h)?)),
        Command::Quine => index_result("index", &quine()),
        Command::FindIndex { term, bound } => {
            let t = program_arg(term)?;
            let bound = bound.unwrap_or(cfg.bound);
            match find_index_by_enumeration(&t, bound) {
                Ok(c) => Report::ok(c.to_string(), json!({ "index": c.to_string() })),
                Err(e) => Err(Failure::Inconclusive(e.to_string())),
            }
        }
        Command::CreativeRun { seed, k } => creative(cfg, &nat_arg(seed)?, *k),
        Command::Audit { candidates } => audit(cfg, candidates),
        Command::GodelSentence { level } => godel(cfg, *level),
        Command::Observe { level } => observe_cmd(*level),
        Command::Tower { k } => tower_cmd(*k),
        Command::CheckProof { level, file } => {
            let text = fs::read_to_string(file)
                .map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let proof = parse_proof(&text).map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let sys = system_at(*level);
            match check_proof(&sys, &proof) {
                Ok(()) => {
                    let admitted = proof.admit_lines();
                    Report::ok(
                        format!(
                            "accepted in S{level}: {} lines, {admitted} admitted",
                            proof.lines.len()
                        ),
                        json!({ "accepted": true, "lines": proof.lines.len(), "admit_lines": admitted }),
                    )
                }
                Err(r) => Ok(Report {
                    text: String::new(),
                    json: json!({ "accepted": false, "rejection": r }),
                    failure: Some(Failure::Rejected(r.to_string())),
                }),
            }
        }
    }
}

fn creative(cfg: &Config, seed: &Nat, k: u64) -> Result<Report, Failure> {
    let config = CreativeConfig {
        psi_kind: cfg.psi,
        fuel: cfg.fuel,
        sample_width: cfg.sample_width,
    };
    let mut writer = match &cfg.transcript {
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            Some(
                TranscriptWriter::new(io::BufWriter::new(file), seed, &config)
                    .map_err(|e| usage(format!("{}: {e}", path.display())))?,
            )
        }
        None => None,
    };
    let t = creative_run_with(seed, k, config, |rec| match writer.as_mut() {
        Some(w) => w.step(rec),
        None => Ok(()),
    })
    .map_err(|e| usage(format!("writing transcript: {e}")))?;
    if let (Some(w), Some(e)) = (writer.as_mut(), &t.incomplete) {
        w.incomplete(e).map_err(|e| usage(format!("writing transcript: {e}")))?;
    }
    let mut text = render_table(&t);
    text.push_str(&format!("final index: {} chars", print_nat_len(t.current())));
    if let Some(p) = &cfg.transcript {
        text.push_str(&format!(", transcript {}", p.display()));
    }
    Ok(Report {
        text,
        json: Value::String(save(&t)),
        failure: t.incomplete.as_ref().map(|e| Failure::Inconclusive(e.to_string())),
    })
}

fn audit(cfg: &Config, candidates: &[String]) -> Result<Report, Failure> {
    let mut indices = candidates.iter().map(|c| nat_arg(c)).collect::<Result<Vec<_>, _>>()?;
    if indices.is_empty() {
        let path = cfg
            .transcript
            .as_ref()
            .ok_or_else(|| usage("audit needs a candidate index or --transcript"))?;
        let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let t = load(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        indices.push(t.current().clone());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(usage)?;
    let reports: Vec<AuditReport> = pool.install(|| {
        indices
            .par_iter()
            .map(|c| escape_audit(c, cfg.psi, cfg.sample_width, cfg.fuel))
            .collect()
    });
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!(
            "candidate {}: {} ({} checks)\n",
            short(&r.candidate),
            r.verdict,
            r.checks.len()
        ));
        for c in &r.checks {
            let show = |n: &Option<Nat>| n.as_ref().map(short).unwrap_or_else(|| "-".into());
            text.push_str(&format!(
                "  n={} enumerated={} lhs={} rhs={} {}: {}\n",
                c.n,
                show(&c.enumerated),
                show(&c.lhs),
                show(&c.rhs),
                c.verdict,
                c.note
            ));
        }
    }
    let failure = if reports.iter().any(|r| r.verdict == Verdict::RefutedPrecondition) {
        Some(Failure::Refuted("an enumerated value violates the precondition".into()))
    } else if reports.iter().any(|r| r.verdict == Verdict::Inconclusive) {
        Some(Failure::Inconclusive("an audit check ran out of fuel".into()))
    } else {
        None
    };
    Ok(Report {
        text: text.trim_end().to_string(),
        json: json!({ "reports": reports }),
        failure,
    })
}

fn short(n: &Nat) -> String {
    match print_nat_bounded(n, OUTPUT_LIMIT) {
        Ok(s) if s.len() <= 40 => s,
        Ok(s) => format!("{}… ({} chars)", &s[..16], s.len()),
        Err(e) => format!("… (about {} chars)", e.len),
    }
}

fn godel(cfg: &Config, level: u64) -> Result<Report, Failure> {
    let base = system_at(level);
    let d = godel_sentence(level + 1);
    let p = print_nat(&d.p_prime);
    let g = print_formula(&d.sentence);
    let found = search_proof_code(&base, &d.p_prime, cfg.bound);
    let mut text = format!(
        "level {level}\np' = {p}\nopen: {}\nG: {g}\ngn(G) = {}\n",
        print_formula(&d.open),
        print_nat(&gn_formula(&d.sentence))
    );
    text.push_str(&match found {
        None => format!("no proof code b <= {} proves G in S{level}", cfg.bound),
        Some(b) => format!("proof code {b} proves G in S{level}"),
    });
    Report::ok(
        text,
        json!({
            "level": level,
            "p_prime": p,
            "open": print_formula(&d.open),
            "sentence": g,
            "gn_sentence": print_nat(&gn_formula(&d.sentence)),
            "bound": cfg.bound,
            "proof_code_found": found,
        }),
    )
}

fn describe(sys: &SystemDef) -> (String, Value) {
    let atoms: Vec<_> = sys
        .atoms
        .iter()
        .map(|a| format!("A{} backed by S{}", a.tag, a.backing.level))
        .collect();
    let admitted: Vec<_> = sys.admitted.iter().map(print_formula).collect();
    let mut text = format!("S{}\natoms: {}\nconsys: ", sys.level, atoms.join(", "));
    text.push_str(
        &sys.consys_tags
            .iter()
            .map(|c| format!("Consys{c}"))
            .collect::<Vec<_>>()
            .join(", "),
    );
    for (k, a) in admitted.iter().enumerate() {
        text.push_str(&format!("\nADMIT {k}: {a}"));
    }
    let json = json!({
        "level": sys.level,
        "atoms": atoms,
        "consys": sys.consys_tags,
        "admitted": admitted,
    });
    (text, json)
}

fn observe_cmd(level: u64) -> Result<Report, Failure> {
    let sys = observe(&system_at(level));
    let (mut text, mut json) = describe(&sys);
    let mut proof = Proof::new();
    let conditional = sys.admitted.last().expect("observe admits a schema").clone();
    proof.push(conditional, Justification::Admit(sys.admitted.len() - 1));
    let verdict = check_proof(&sys, &proof);
    text.push_str(&format!("\nproof:\n{}", print_proof(&proof).trim_end()));
    text.push_str(&format!("\nverdict: {}", if verdict.is_ok() { "accepted" } else { "rejected" }));
    json["proof"] = Value::String(print_proof(&proof));
    json["accepted"] = Value::Bool(verdict.is_ok());
    Report::ok(text, json)
}

fn tower_cmd(k: u64) -> Result<Report, Failure> {
    if k == 0 {
        return Err(usage("tower needs k >= 1"));
    }
    let levels = tower(k);
    let mut text = String::new();
    let mut rows = Vec::new();
    for l in &levels {
        let proof = print_proof(&l.proof);
        text.push_str(&format!(
            "S{}: p' = {}\n  G = {}\n  {}  ADMIT lines: {}\n",
            l.system.level,
            print_nat(&l.diag.p_prime),
            print_formula(&l.diag.sentence),
            proof,
            l.proof.admit_lines()
        ));
        rows.push(json!({
            "level": l.system.level,
            "p_prime": print_nat(&l.diag.p_prime),
            "sentence": print_formula(&l.diag.sentence),
            "proof": proof,
            "admit_lines": l.proof.admit_lines(),
            "accepted": check_proof(&l.system, &l.proof).is_ok(),
        }));
    }
    Report::ok(text.trim_end().to_string(), json!({ "levels": rows }))
}

fn emit_failure(structured: bool, f: &Failure) {
    let mut err = io::stderr().lock();
    let _ = if structured {
        writeln!(
            err,
            "{}",
            json!({ "error": { "kind": f.kind(), "message": f.message(), "exit": f.code() } })
        )
    } else {
        writeln!(err, "goedel-forge: error[{}]: {}", f.kind(), f.message())
    };
}

fn main() -> ExitCode {
    std::panic::set_hook(Box::new(|info| {
        eprintln!("goedel-forge: error[internal]: {info}");
    }));
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let structured = std::env::args().any(|a| a == "--structured");
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            emit_failure(structured, &Failure::Usage(first.to_string()));
            return ExitCode::from(1);
        }
    };
    let structured = cli.config.structured;
    let report = run(&cli);
    let mut out = io::stdout().lock();
    let failure = match report {
        Ok(r) => {
            let printed = if structured {
                match (&cli.command, &r.json) {
                    (Command::CreativeRun { .. }, Value::String(lines)) => write!(out, "{lines}"),
                    _ => {
                        let mut j = r.json;
                        j["config"] = serde_json::to_value(&cli.config).expect("config serializes");
                        writeln!(out, "{j}")
                    }
                }
            } else if r.text.is_empty() {
                Ok(())
            } else {
                writeln!(out, "{}", r.text)
            };
            if printed.is_err() {
                return ExitCode::from(1);
            }
            r.failure
        }
        Err(f) => Some(f),
    };
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            emit_failure(structured, &f);
            ExitCode::from(f.code())
        }
    }
}
