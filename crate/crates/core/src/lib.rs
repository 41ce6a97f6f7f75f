//! Computability workbench: Gödel numbering of a small functional
//! programming language, a fuel-bounded universal evaluator, the classic
//! index constructions (s-m-n, recursion theorem, productive functions), a
//! creative extension loop over enumerators, and a tower of formal systems
//! that observe their predecessors.

pub mod constructions;
pub mod creative;
pub mod eval;
pub mod logic;
pub mod nat;
pub mod stdlib;
pub mod syntax;
pub mod term;
pub mod transcript;

pub use eval::{eval, eval_index, eval_traced, run_enumerator, EvalError, EvalOutcome};
pub use nat::Nat;
pub use syntax::{parse_nat, parse_term, print_nat, print_term, ParseError};
pub use term::{decode, encode, Term};

/// Serde adapter writing naturals as strings in the textual natural format.
pub mod nat_serde {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use crate::nat::Nat;
    use crate::syntax::{parse_nat, print_nat};

    pub fn serialize<S: Serializer>(n: &Nat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&print_nat(n))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Nat, D::Error> {
        let s = String::deserialize(d)?;
        parse_nat(&s).map_err(de::Error::custom)
    }
}
