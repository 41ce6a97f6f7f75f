//! Text form of arithmetic terms and formulas.
//!
//! ```text
//! term    := "0" | decimal | "v" k | "S(" term ")" | "S^" n "(" term ")"
//!          | "(" term " + " term ")" | "(" term " * " term ")"
//! formula := "(" term " = " term ")" | "A" tag "(" term ", " term ")"
//!          | "Consys" tag | "~" formula | "(" formula " -> " formula ")"
//!          | "all v" k ". " formula
//! ```
//!
//! A decimal `n` stands for the numeral `S^n(0)`. The printer writes closed
//! numerals in decimal, short successor chains as nested `S(…)` and long
//! ones as `S^n(…)`. Spaces are optional on input.

use crate::nat::Nat;
use crate::syntax::{ParseError, Parser};

use super::fol::{FOTerm, Formula};

/// Successor chains up to this length print as nested `S(…)`.
const NESTED_SUCC_MAX: u64 = 16;

const MAX_FORMULA_NESTING: usize = 1000;

pub fn print_fo_term(t: &FOTerm) -> String {
    let mut s = String::new();
    write_term(&mut s, t);
    s
}

fn write_term(out: &mut String, t: &FOTerm) {
    match t {
        FOTerm::Zero => out.push('0'),
        FOTerm::Var(k) => out.push_str(&format!("v{k}")),
        FOTerm::Succ(n, inner) if **inner == FOTerm::Zero => out.push_str(&n.to_string()),
        FOTerm::Succ(n, inner) => match n.to_u64() {
            Some(k) if k <= NESTED_SUCC_MAX => {
                for _ in 0..k {
                    out.push_str("S(");
                }
                write_term(out, inner);
                for _ in 0..k {
                    out.push(')');
                }
            }
            _ => {
                out.push_str(&format!("S^{n}("));
                write_term(out, inner);
                out.push(')');
            }
        },
        FOTerm::Plus(a, b) | FOTerm::Times(a, b) => {
            out.push('(');
            write_term(out, a);
            out.push_str(if matches!(t, FOTerm::Plus(..)) { " + " } else { " * " });
            write_term(out, b);
            out.push(')');
        }
    }
}

pub fn print_formula(f: &Formula) -> String {
    let mut s = String::new();
    write_formula(&mut s, f);
    s
}

fn write_formula(out: &mut String, f: &Formula) {
    match f {
        Formula::Eq(a, b) => {
            out.push('(');
            write_term(out, a);
            out.push_str(" = ");
            write_term(out, b);
            out.push(')');
        }
        Formula::Atom(tag, a, b) => match f.as_consys() {
            Some(c) => out.push_str(&format!("Consys{c}")),
            None => {
                out.push_str(&format!("A{tag}("));
                write_term(out, a);
                out.push_str(", ");
                write_term(out, b);
                out.push(')');
            }
        },
        Formula::Not(g) => {
            out.push('~');
            write_formula(out, g);
        }
        Formula::Imp(a, b) => {
            out.push('(');
            write_formula(out, a);
            out.push_str(" -> ");
            write_formula(out, b);
            out.push(')');
        }
        Formula::All(k, g) => {
            out.push_str(&format!("all v{k}. "));
            write_formula(out, g);
        }
    }
}

struct FormulaParser<'a> {
    p: Parser<'a>,
    depth: usize,
}

impl<'a> FormulaParser<'a> {
    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_FORMULA_NESTING {
            return self.p.fail("shallower nesting");
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn token(&mut self, lit: &str) -> Result<(), ParseError> {
        self.p.skip_spaces();
        self.p.expect(lit)
    }

    fn term(&mut self) -> Result<FOTerm, ParseError> {
        self.enter()?;
        self.p.skip_spaces();
        let t = match self.p.peek() {
            Some(c) if c.is_ascii_digit() => crate::logic::fol::numeral(&self.p.decimal()?),
            Some('v') => {
                self.p.expect("v")?;
                FOTerm::Var(self.p.small()?)
            }
            Some('S') => {
                self.p.expect("S")?;
                let n = if self.p.eat("^") { self.p.decimal()? } else { Nat::from(1u64) };
                self.token("(")?;
                let inner = self.term()?;
                self.token(")")?;
                FOTerm::succ_n(&n, inner)
            }
            Some('(') => {
                self.p.expect("(")?;
                let a = self.term()?;
                self.p.skip_spaces();
                let plus = if self.p.eat("+") {
                    true
                } else if self.p.eat("*") {
                    false
                } else {
                    return self.p.fail("'+' or '*'");
                };
                let b = self.term()?;
                self.token(")")?;
                if plus {
                    FOTerm::plus(a, b)
                } else {
                    FOTerm::times(a, b)
                }
            }
            _ => return self.p.fail("term"),
        };
        self.leave();
        Ok(t)
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.enter()?;
        self.p.skip_spaces();
        let f = if self.p.eat("~") {
            Formula::not(self.formula()?)
        } else if self.p.eat("all") {
            self.token("v")?;
            let k = self.p.small()?;
            self.token(".")?;
            Formula::all(k, self.formula()?)
        } else if self.p.eat("Consys") {
            Formula::consys(self.p.small()?)
        } else if self.p.eat("A") {
            let tag = self.p.small()?;
            self.token("(")?;
            let a = self.term()?;
            self.token(",")?;
            let b = self.term()?;
            self.token(")")?;
            Formula::atom(tag, a, b)
        } else if self.p.peek() == Some('(') {
            self.paren()?
        } else {
            return self.p.fail("formula");
        };
        self.leave();
        Ok(f)
    }

    /// `(t = u)` or `(f -> g)`; tries the equation first.
    fn paren(&mut self) -> Result<Formula, ParseError> {
        let start = self.p.offset();
        let depth = self.depth;
        self.p.expect("(")?;
        if let Ok(a) = self.term() {
            self.p.skip_spaces();
            if self.p.eat("=") {
                let b = self.term()?;
                self.token(")")?;
                return Ok(Formula::eq(a, b));
            }
        }
        self.p.reset(start);
        self.depth = depth;
        self.p.expect("(")?;
        let a = self.formula()?;
        self.token("->")?;
        let b = self.formula()?;
        self.token(")")?;
        Ok(Formula::imp(a, b))
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut fp = FormulaParser { p: Parser::new(text), depth: 0 };
    let f = fp.formula()?;
    fp.p.skip_spaces();
    fp.p.end()?;
    Ok(f)
}

pub fn parse_fo_term(text: &str) -> Result<FOTerm, ParseError> {
    let mut fp = FormulaParser { p: Parser::new(text), depth: 0 };
    let t = fp.term()?;
    fp.p.skip_spaces();
    fp.p.end()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::codec::tests::{arb_fo_term, arb_formula};
    use crate::logic::fol::numeral;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(
            parse_formula("all v0. ~(S(0) = 0)").unwrap(),
            Formula::all(0, Formula::not(Formula::eq(FOTerm::succ(FOTerm::Zero), FOTerm::Zero)))
        );
        assert_eq!(print_formula(&Formula::eq(FOTerm::Zero, FOTerm::Zero)), "(0 = 0)");
        assert_eq!(
            parse_formula("A1(0, v2)").unwrap(),
            Formula::atom(1, FOTerm::Zero, FOTerm::var(2))
        );
    }

    #[test]
    fn canonical_printing() {
        let f = parse_formula("(Consys0->all v1.~A2(S(S(0)),(v1+S(v3))))").unwrap();
        assert_eq!(print_formula(&f), "(Consys0 -> all v1. ~A2(2, (v1 + S(v3))))");
        let long = FOTerm::succ_n(&Nat::from(40u64), FOTerm::var(0));
        assert_eq!(print_fo_term(&long), "S^40(v0)");
        assert_eq!(parse_fo_term("S^40(v0)").unwrap(), long);
        assert_eq!(parse_fo_term("S^2(S(v0))").unwrap(), FOTerm::succ_n(&Nat::from(3u64), FOTerm::var(0)));
        let big = numeral(&Nat::from(252_770_104u64));
        assert_eq!(print_fo_term(&big), "252770104");
    }

    #[test]
    fn nested_implications_and_equations() {
        let s = "(((0 + v1) = v1) -> ((v1 * 0) = 0))";
        let f = parse_formula(s).unwrap();
        assert!(matches!(f, Formula::Imp(..)));
        assert_eq!(print_formula(&f), s);
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_formula("(0 = 0").unwrap_err();
        assert_eq!(e.offset, 6);
        assert!(parse_formula("B1(0, 0)").is_err());
        assert!(parse_formula("(0 = 0) extra").is_err());
        let deep = "~".repeat(5000) + "(0 = 0)";
        assert!(parse_formula(&deep).is_err());
    }

    proptest! {
        #[test]
        fn formula_text_round_trip(f in arb_formula(6)) {
            let s = print_formula(&f);
            prop_assert_eq!(parse_formula(&s).unwrap(), f);
        }

        #[test]
        fn term_text_round_trip(t in arb_fo_term(5)) {
            prop_assert_eq!(parse_fo_term(&print_fo_term(&t)).unwrap(), t);
        }
    }
}
