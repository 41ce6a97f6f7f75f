//! Canonical text form of terms and naturals.
//!
//! Terms print as `comp(succ,succ)`: lowercase keywords, commas, no spaces.
//! Naturals print as decimal digits. A natural too large to write out
//! (estimated above [`DECIMAL_LIMIT_BITS`]) prints as the expression it was
//! built from: `pair(a,b)`, `add(x,k)` and `sub(x,k)`, `lin(m,o,x)` for
//! `m·x+o`, or `iter(m,o,k,b)` for the `k`-fold application of `c ↦ m·c+o`
//! to `b`. The parser accepts both forms.

use std::collections::HashMap;
use std::fmt;

use crate::nat::{Nat, View};
use crate::term::Term;

/// Naturals up to this estimated size print in decimal.
pub const DECIMAL_LIMIT_BITS: f64 = 65536.0;

const MAX_NESTING: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
    pub found: Option<char>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.found {
            Some(c) => write!(f, "at byte {}: expected {}, found {:?}", self.offset, self.expected, c),
            None => write!(f, "at byte {}: expected {}, found end of input", self.offset, self.expected),
        }
    }
}

pub fn print_nat(n: &Nat) -> String {
    let mut s = String::new();
    write_nat(&mut s, n);
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("value text of about {len} chars exceeds {limit}")]
pub struct TextTooLong {
    pub len: u128,
    pub limit: usize,
}

/// [`print_nat`], refusing values whose text would exceed `limit` chars.
///
/// Expressions repeat shared subvalues, so a value built in a few thousand
/// steps can print to more text than memory holds.
pub fn print_nat_bounded(n: &Nat, limit: usize) -> Result<String, TextTooLong> {
    let len = print_nat_len(n);
    if len > limit as u128 {
        return Err(TextTooLong { len, limit });
    }
    Ok(print_nat(n))
}

/// Approximate length of [`print_nat`] (decimal lengths are estimated from
/// the size), computed once per shared node.
pub fn print_nat_len(n: &Nat) -> u128 {
    text_len(n, &mut HashMap::new())
}

fn digits(v: u64) -> u128 {
    v.checked_ilog10().map_or(1, |d| d as u128 + 1)
}

fn text_len(n: &Nat, memo: &mut HashMap<usize, u128>) -> u128 {
    if let Some(v) = n.to_u64() {
        return digits(v);
    }
    if n.is_concrete() || n.log2_estimate() <= DECIMAL_LIMIT_BITS {
        return (n.log2_estimate() * std::f64::consts::LOG10_2) as u128 + 1;
    }
    let id = n.node_id().expect("symbolic");
    if let Some(&l) = memo.get(&id) {
        return l;
    }
    let l = match n.view() {
        View::Small(_) | View::Big(_) => unreachable!("handled above"),
        View::Pair(a, b) => 7 + text_len(a, memo).saturating_add(text_len(b, memo)),
        View::Offset { base, delta } => 6 + digits(delta.unsigned_abs()) + text_len(base, memo),
        View::Affine { mul, add, x } => 7 + digits(mul) + digits(add) + text_len(x, memo),
        View::Iterate {
            mul,
            add,
            count,
            base,
        } => (9 + digits(mul) + digits(add))
            .saturating_add(text_len(count, memo))
            .saturating_add(text_len(base, memo)),
    };
    memo.insert(id, l);
    l
}

fn write_nat(out: &mut String, n: &Nat) {
    if n.is_concrete() || n.log2_estimate() <= DECIMAL_LIMIT_BITS {
        out.push_str(&n.to_string());
        return;
    }
    match n.view() {
        View::Small(_) | View::Big(_) => out.push_str(&n.to_string()),
        View::Pair(a, b) => {
            out.push_str("pair(");
            write_nat(out, a);
            out.push(',');
            write_nat(out, b);
            out.push(')');
        }
        View::Offset { base, delta } => {
            out.push_str(if delta > 0 { "add(" } else { "sub(" });
            write_nat(out, base);
            out.push_str(&format!(",{})", delta.unsigned_abs()));
        }
        View::Affine { mul, add, x } => {
            out.push_str(&format!("lin({mul},{add},"));
            write_nat(out, x);
            out.push(')');
        }
        View::Iterate {
            mul,
            add,
            count,
            base,
        } => {
            out.push_str(&format!("iter({mul},{add},"));
            write_nat(out, count);
            out.push(',');
            write_nat(out, base);
            out.push(')');
        }
    }
}

pub fn print_term(t: &Term) -> String {
    let mut s = String::new();
    write_term(&mut s, t);
    s
}

fn write_term(out: &mut String, t: &Term) {
    let (name, args): (&str, Vec<&Term>) = match t {
        Term::Zero => ("zero", vec![]),
        Term::Succ => ("succ", vec![]),
        Term::Pred => ("pred", vec![]),
        Term::Id => ("id", vec![]),
        Term::Proj1 => ("p1", vec![]),
        Term::Proj2 => ("p2", vec![]),
        Term::Univ => ("univ", vec![]),
        Term::Const(n) => {
            out.push_str("const(");
            write_nat(out, n);
            out.push(')');
            return;
        }
        Term::Mu(b) => ("mu", vec![b]),
        Term::Pair(f, g) => ("pair", vec![f, g]),
        Term::Comp(f, g) => ("comp", vec![f, g]),
        Term::IfZ(c, a, b) => ("ifz", vec![c, a, b]),
        Term::Rec(b, s) => ("rec", vec![b, s]),
    };
    out.push_str(name);
    if args.is_empty() {
        return;
    }
    out.push('(');
    for (k, a) in args.into_iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        write_term(out, a);
    }
    out.push(')');
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    p.end()?;
    Ok(t)
}

pub fn parse_nat(text: &str) -> Result<Nat, ParseError> {
    let mut p = Parser::new(text);
    let n = p.nat()?;
    p.end()?;
    Ok(n)
}

pub(crate) struct Parser<'a> {
    src: &'a str,
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Parser { src, pos: 0, depth: 0 }
    }

    pub(crate) fn offset(&self) -> usize {
        self.pos
    }

    pub(crate) fn reset(&mut self, pos: usize) {
        self.pos = pos;
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn fail<T>(&self, expected: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.pos,
            expected: expected.into(),
            found: self.peek(),
        })
    }

    pub(crate) fn end(&self) -> Result<(), ParseError> {
        if self.pos == self.src.len() {
            Ok(())
        } else {
            self.fail("end of input")
        }
    }

    pub(crate) fn eat(&mut self, lit: &str) -> bool {
        if self.src[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, lit: &str) -> Result<(), ParseError> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.fail(format!("{lit:?}"))
        }
    }

    pub(crate) fn skip_spaces(&mut self) {
        while self.peek() == Some(' ') {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    pub(crate) fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return self.fail("shallower nesting");
        }
        Ok(())
    }

    pub(crate) fn leave(&mut self) {
        self.depth -= 1;
    }

    pub(crate) fn decimal(&mut self) -> Result<Nat, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = &self.src[start..self.pos];
        if digits.is_empty() {
            return self.fail("decimal digits");
        }
        if digits.len() > 1 && digits.starts_with('0') {
            self.pos = start + 1;
            return self.fail("no leading zeros");
        }
        Ok(digits.parse().expect("validated digits"))
    }

    pub(crate) fn small(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        let n = self.decimal()?;
        n.to_u64().ok_or(ParseError {
            offset: start,
            expected: "a 64-bit number".into(),
            found: self.src[start..].chars().next(),
        })
    }

    pub(crate) fn nat(&mut self) -> Result<Nat, ParseError> {
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return self.decimal();
        }
        self.enter()?;
        let start = self.pos;
        let n = match self.word() {
            "pair" => {
                self.expect("(")?;
                let a = self.nat()?;
                self.expect(",")?;
                let b = self.nat()?;
                Nat::pair(&a, &b)
            }
            "add" | "sub" => {
                let add = self.src[start..].starts_with('a');
                self.expect("(")?;
                let x = self.nat()?;
                self.expect(",")?;
                let k = self.small()?;
                if add {
                    x.add_small(k)
                } else {
                    x.sub_small(k)
                }
            }
            "lin" => {
                self.expect("(")?;
                let m = self.small()?;
                if m == 0 {
                    return self.fail("positive multiplier");
                }
                self.expect(",")?;
                let o = self.small()?;
                self.expect(",")?;
                let x = self.nat()?;
                Nat::affine(m, o, &x)
            }
            "iter" => {
                self.expect("(")?;
                let m = self.small()?;
                if m < 2 {
                    return self.fail("multiplier of at least 2");
                }
                self.expect(",")?;
                let o = self.small()?;
                self.expect(",")?;
                let k = self.nat()?;
                self.expect(",")?;
                let b = self.nat()?;
                Nat::iterate(m, o, &k, &b)
            }
            _ => {
                self.pos = start;
                return self.fail("natural number");
            }
        };
        self.expect(")")?;
        self.leave();
        Ok(n)
    }

    pub(crate) fn term(&mut self) -> Result<Term, ParseError> {
        let start = self.pos;
        let w = self.word();
        let arity = match w {
            "zero" => return Ok(Term::Zero),
            "succ" => return Ok(Term::Succ),
            "pred" => return Ok(Term::Pred),
            "id" => return Ok(Term::Id),
            "p1" => return Ok(Term::Proj1),
            "p2" => return Ok(Term::Proj2),
            "univ" => return Ok(Term::Univ),
            "const" => 0,
            "mu" => 1,
            "pair" | "comp" | "rec" => 2,
            "ifz" => 3,
            _ => {
                self.pos = start;
                return self.fail("term keyword");
            }
        };
        self.enter()?;
        self.expect("(")?;
        let t = if arity == 0 {
            Term::Const(self.nat()?)
        } else {
            let mut args = Vec::with_capacity(arity);
            for k in 0..arity {
                if k > 0 {
                    self.expect(",")?;
                }
                args.push(self.term()?);
            }
            let mut it = args.into_iter();
            let mut next = || it.next().expect("arity checked");
            match w {
                "mu" => Term::mu(next()),
                "pair" => Term::pair(next(), next()),
                "comp" => Term::comp(next(), next()),
                "rec" => Term::rec(next(), next()),
                _ => Term::ifz(next(), next(), next()),
            }
        };
        self.expect(")")?;
        self.leave();
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::encode;
    use proptest::prelude::*;

    #[test]
    fn grammar_examples() {
        assert_eq!(
            parse_term("comp(succ,succ)").unwrap(),
            Term::comp(Term::Succ, Term::Succ)
        );
        assert_eq!(print_term(&Term::Zero), "zero");
        assert_eq!(parse_term("const(5)").unwrap(), Term::constant(5u64));
        assert_eq!(
            print_term(&Term::ifz(Term::Pred, Term::constant(1u64), Term::rec(Term::Id, Term::Proj2))),
            "ifz(pred,const(1),rec(id,p2))"
        );
    }

    #[test]
    fn errors_carry_offset_and_expectation() {
        let e = parse_term("comp(succ succ)").unwrap_err();
        assert_eq!(e.offset, 9);
        assert_eq!(e.expected, "\",\"");
        let e = parse_term("comp(succ,sux)").unwrap_err();
        assert_eq!(e.offset, 10);
        assert_eq!(e.expected, "term keyword");
        let e = parse_term("const(05)").unwrap_err();
        assert_eq!(e.expected, "no leading zeros");
        let e = parse_term("succ)").unwrap_err();
        assert_eq!((e.offset, e.expected.as_str()), (4, "end of input"));
        assert!(parse_term("Succ").is_err());
        assert!(parse_term("").is_err());
    }

    #[test]
    fn symbolic_naturals_round_trip_as_expressions() {
        let mut t = Term::Succ;
        for _ in 0..30 {
            t = Term::comp(Term::Succ, t);
        }
        let code = encode(&t);
        let text = print_nat(&code);
        assert!(text.starts_with("lin("));
        assert_eq!(parse_nat(&text).unwrap(), code);
        let c = Term::Const(code);
        assert_eq!(parse_term(&print_term(&c)).unwrap(), c);
    }

    #[test]
    fn text_length_estimate() {
        let x = Nat::iterate(4, 2, &Nat::from(100_000u64), &Nat::from(7u64));
        let mut v = Nat::pair(&x, &Nat::from(12_345u64));
        for k in 0..5u64 {
            v = Nat::affine(6, k, &Nat::pair(&v, &x).succ());
        }
        let text = print_nat(&v);
        assert_eq!(print_nat_len(&v), text.len() as u128);
        assert_eq!(print_nat_bounded(&v, text.len()).unwrap(), text);
        assert!(print_nat_bounded(&v, text.len() - 1).is_err());
        assert_eq!(print_nat_len(&Nat::from(0u64)), 1);
        assert_eq!(print_nat_len(&Nat::from(1000u64)), 4);
    }

    #[test]
    fn shared_values_refuse_to_print() {
        let mut acc = Nat::pair(&Nat::iterate(4, 2, &Nat::from(100_000u64), &Nat::from(7u64)), &Nat::from(0u64));
        for i in 0..100u64 {
            let p = Nat::pair(&Nat::from(i), &acc);
            acc = Nat::pair(&p, &p.succ());
        }
        let e = print_nat_bounded(&acc, 1 << 20).unwrap_err();
        assert!(e.len > 1u128 << 100);
    }

    proptest! {
        #[test]
        fn parse_inverts_print(t in crate::term::tests::arb_term(8)) {
            prop_assert_eq!(parse_term(&print_term(&t)).unwrap(), t);
        }

        #[test]
        fn decimal_round_trip(n in any::<u64>()) {
            prop_assert_eq!(parse_nat(&n.to_string()).unwrap(), Nat::from(n));
        }
    }
}
