//! First-order arithmetic with checker-backed provability atoms: formula
//! syntax and numbering, a Hilbert-style proof checker, diagonal Gödel
//! sentences and the tower of observing systems.

pub mod codec;
pub mod corpus;
pub mod fol;
pub mod proof;
pub mod system;
pub mod text;

pub use codec::{decode_formula, decode_term, gn_formula, gn_term};
pub use fol::{numeral, FOTerm, Formula, NotFreeFor};
pub use proof::{
    check_proof, decode_proof, encode_proof, parse_proof, print_proof, Justification, Line, Proof,
    Reason, Rejection, Schema,
};
pub use system::{
    base_system, godel_sentence, observe, prf_checker, search_proof_code, system_at, tower,
    translate_proof, DiagResult, Level, SystemDef, VAR_A, VAR_B,
};
pub use text::{parse_fo_term, parse_formula, print_fo_term, print_formula};
