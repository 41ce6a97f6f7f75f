//! Line-delimited JSON persistence for creative-loop transcripts.
//!
//! The first line is a header, each completed step is one line, and a run
//! that stopped early ends with an `incomplete` trailer:
//!
//! ```text
//! {"version":"goedel-forge/1","seed":"25","psi_kind":"TOT","fuel":1000000,"sample_width":5}
//! {"step":1,"input_index":"25","psi_value":"…","extended_index":"…","evidence":[[1,"2","1"],…]}
//! {"incomplete":{"step":2,"reason":"…"}}
//! ```

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::constructions::extend_enumerator;
use crate::creative::{CreativeConfig, Inconclusive, PsiKind, StepRecord, Transcript};
use crate::nat::Nat;
use crate::nat_serde;

pub const FORMAT_VERSION: &str = "goedel-forge/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    version: String,
    #[serde(with = "nat_serde")]
    seed: Nat,
    psi_kind: PsiKind,
    fuel: u64,
    sample_width: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Trailer {
    incomplete: Inconclusive,
}

#[derive(Debug, thiserror::Error)]
pub enum TranscriptError {
    #[error("transcript is empty")]
    Empty,
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line 1: unsupported format version {0:?}")]
    Version(String),
    #[error("line {line}: {reason}")]
    Invalid { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Append-only writer; each record is flushed as soon as it is written.
pub struct TranscriptWriter<W: Write> {
    out: W,
}

impl<W: Write> TranscriptWriter<W> {
    pub fn new(mut out: W, seed: &Nat, config: &CreativeConfig) -> io::Result<Self> {
        let header = Header {
            version: FORMAT_VERSION.to_string(),
            seed: seed.clone(),
            psi_kind: config.psi_kind,
            fuel: config.fuel,
            sample_width: config.sample_width,
        };
        write_line(&mut out, &header)?;
        Ok(TranscriptWriter { out })
    }

    pub fn step(&mut self, rec: &StepRecord) -> io::Result<()> {
        write_line(&mut self.out, rec)
    }

    pub fn incomplete(&mut self, e: &Inconclusive) -> io::Result<()> {
        write_line(&mut self.out, &Trailer { incomplete: e.clone() })
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

fn write_line<T: Serialize>(out: &mut impl Write, v: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    out.write_all(b"\n")?;
    out.flush()
}

pub fn write_transcript(out: impl Write, t: &Transcript) -> io::Result<()> {
    let mut w = TranscriptWriter::new(out, &t.seed, &t.config)?;
    for s in &t.steps {
        w.step(s)?;
    }
    if let Some(e) = &t.incomplete {
        w.incomplete(e)?;
    }
    Ok(())
}

pub fn save(t: &Transcript) -> String {
    let mut buf = Vec::new();
    write_transcript(&mut buf, t).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("JSON output is UTF-8")
}

/// Reads and validates a transcript.
///
/// Steps must be numbered from 1, chain from the seed, and carry the
/// extension of their own input and ψ value.
pub fn read_transcript(input: impl BufRead) -> Result<Transcript, TranscriptError> {
    let mut lines = input.lines().enumerate();
    let header: Header = loop {
        match lines.next() {
            None => return Err(TranscriptError::Empty),
            Some((_, l)) if l.as_ref().is_ok_and(|l| l.trim().is_empty()) => continue,
            Some((i, l)) => {
                break serde_json::from_str(&l?)
                    .map_err(|source| TranscriptError::Json { line: i + 1, source })?
            }
        }
    };
    if header.version != FORMAT_VERSION {
        return Err(TranscriptError::Version(header.version));
    }
    let config = CreativeConfig {
        psi_kind: header.psi_kind,
        fuel: header.fuel,
        sample_width: header.sample_width,
    };
    let mut t = Transcript::new(header.seed, config);
    for (i, l) in lines {
        let line = i + 1;
        let l = l?;
        if l.trim().is_empty() {
            continue;
        }
        let invalid = |reason: String| TranscriptError::Invalid { line, reason };
        if t.incomplete.is_some() {
            return Err(invalid("record after the incomplete trailer".into()));
        }
        let json = |source| TranscriptError::Json { line, source };
        let value: serde_json::Value = serde_json::from_str(&l).map_err(json)?;
        if value.get("incomplete").is_some() {
            let trailer: Trailer = serde_json::from_value(value).map_err(json)?;
            t.incomplete = Some(trailer.incomplete);
            continue;
        }
        let rec: StepRecord = serde_json::from_value(value).map_err(json)?;
        let expected = t.steps.len() as u64 + 1;
        if rec.step != expected {
            return Err(invalid(format!("expected step {expected}, found {}", rec.step)));
        }
        if &rec.input_index != t.current() {
            return Err(invalid("input index is not the previous enumerator".into()));
        }
        if rec.extended_index != extend_enumerator(&rec.input_index, &rec.psi_value) {
            return Err(invalid("extended index does not extend the input".into()));
        }
        t.steps.push(rec);
    }
    t.updated = t.steps.len() as u64;
    Ok(t)
}

pub fn load(text: &str) -> Result<Transcript, TranscriptError> {
    read_transcript(text.as_bytes())
}

/// Values longer than this are shortened in tables.
const CELL_MAX: usize = 40;

fn cell(n: &Nat) -> String {
    let s = crate::syntax::print_nat(n);
    if s.len() <= CELL_MAX {
        return s;
    }
    let head: String = s.chars().take(16).collect();
    let tail: String = s.chars().rev().take(8).collect::<Vec<_>>().into_iter().rev().collect();
    format!("{head}…{tail} ({} chars)", s.len())
}

/// Step table: one header line, then one row per completed step.
pub fn render_table(t: &Transcript) -> String {
    let mut out = String::from("step\tinput_index\tpsi_value\textended_index\tevidence\n");
    for s in &t.steps {
        let summary = match t.config.psi_kind {
            PsiKind::Tot => {
                let ok = s.evidence.iter().filter(|e| e.1 == e.2.succ()).count();
                format!("{ok}/{} lhs=rhs+1", s.evidence.len())
            }
            PsiKind::Kbar => {
                let ok = s.evidence.iter().filter(|e| e.1 != e.2).count();
                format!("{ok}/{} distinct", s.evidence.len())
            }
        };
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            s.step,
            cell(&s.input_index),
            cell(&s.psi_value),
            cell(&s.extended_index),
            summary
        ));
    }
    out
}
