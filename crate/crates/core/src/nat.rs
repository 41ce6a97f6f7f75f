//! Arbitrary-precision naturals and the Cantor pairing bijection.
//!
//! Gödel numbers of nested programs grow doubly exponentially with nesting
//! depth: every binary node roughly squares its payload. A value therefore
//! carries one of three representations:
//!
//! * `Small` / `Big` hold the concrete number,
//! * `Sym` holds a node built from `pair`, an affine map `mul·x + add`, or an
//!   iterated affine map, over other naturals.
//!
//! Symbolic nodes are only created when the estimated size exceeds
//! [`EAGER_BITS`]; below that everything is computed eagerly. The operations
//! the codecs and the interpreter need (unpair of a pair node, division by a
//! small modulus of an affine node, successor and predecessor) work directly
//! on the node structure. Anything else materializes the number, bounded by
//! [`MATERIALIZE_LIMIT_BITS`] on the fallible paths.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Values whose estimated size is at most this many bits are always computed.
pub const EAGER_BITS: f64 = 256.0;

/// Upper bound on the size of a number the fallible paths will materialize.
pub const MATERIALIZE_LIMIT_BITS: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("natural of about {bits} bits exceeds the materialization limit of {limit} bits")]
pub struct TooLarge {
    pub bits: u64,
    pub limit: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid natural literal {0:?}")]
pub struct ParseNatError(pub String);

/// A natural number.
#[derive(Clone)]
pub struct Nat(Repr);

#[derive(Clone)]
enum Repr {
    Small(u64),
    // invariant: does not fit in u64
    Big(Arc<BigUint>),
    Sym(Arc<Sym>),
}

struct Sym {
    node: Node,
    log2: f64,
    depth: u32,
    value: OnceLock<BigUint>,
}

enum Node {
    Pair(Nat, Nat),
    // base ± delta where base is a pair node; delta != 0
    Offset { base: Nat, delta: i64 },
    // mul >= 2
    Affine { mul: u64, add: u64, x: Nat },
    // f^count(base) with f(c) = mul·c + add; mul >= 2, count >= 1
    Iterate { mul: u64, add: u64, count: Nat, base: Nat },
}

/// Borrowed view of a natural's representation.
#[derive(Debug, Clone, Copy)]
pub enum View<'a> {
    Small(u64),
    Big(&'a BigUint),
    Pair(&'a Nat, &'a Nat),
    Offset { base: &'a Nat, delta: i64 },
    Affine { mul: u64, add: u64, x: &'a Nat },
    Iterate { mul: u64, add: u64, count: &'a Nat, base: &'a Nat },
}

fn log2_u64(v: u64) -> f64 {
    if v == 0 {
        f64::NEG_INFINITY
    } else {
        (v as f64).log2()
    }
}

fn log2_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return log2_u64(n.to_u64().unwrap_or(0));
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().unwrap_or(u64::MAX);
    (top as f64).log2() + shift as f64
}

/// log2(2^a + 2^b)
fn log2_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (1.0 + (lo - hi).exp2()).log2()
}

fn pair_log2(la: f64, lb: f64) -> f64 {
    let s = log2_add(la, lb);
    if s == f64::NEG_INFINITY {
        s
    } else {
        2.0 * s - 1.0
    }
}

fn isqrt_u128(n: u128) -> u128 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn pair_u64(x: u64, y: u64) -> Option<u64> {
    let s = x as u128 + y as u128;
    let t = s.checked_mul(s + 1)? / 2;
    u64::try_from(t + y as u128).ok()
}

fn unpair_u64(n: u64) -> (u64, u64) {
    let s = (isqrt_u128(8 * n as u128 + 1) - 1) / 2;
    let y = n as u128 - s * (s + 1) / 2;
    ((s - y) as u64, y as u64)
}

fn pair_big(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    let t = (&s * (&s + 1u32)) >> 1u32;
    t + y
}

fn unpair_big(n: &BigUint) -> (BigUint, BigUint) {
    let s = ((n * 8u32 + 1u32).sqrt() - 1u32) >> 1u32;
    let t = (&s * (&s + 1u32)) >> 1u32;
    let y = n - t;
    let x = s - &y;
    (x, y)
}

impl Nat {
    pub const ZERO: Nat = Nat(Repr::Small(0));

    pub fn zero() -> Nat {
        Nat::ZERO
    }

    pub fn from_biguint(n: BigUint) -> Nat {
        match n.to_u64() {
            Some(v) => Nat(Repr::Small(v)),
            None => Nat(Repr::Big(Arc::new(n))),
        }
    }

    fn sym(node: Node, log2: f64) -> Nat {
        let depth = 1 + match &node {
            Node::Pair(a, b) => a.depth().max(b.depth()),
            Node::Offset { base, .. } => base.depth() - 1,
            Node::Affine { x, .. } => x.depth(),
            Node::Iterate { count, base, .. } => count.depth().max(base.depth()),
        };
        Nat(Repr::Sym(Arc::new(Sym {
            node,
            log2,
            depth,
            value: OnceLock::new(),
        })))
    }

    pub fn view(&self) -> View<'_> {
        match &self.0 {
            Repr::Small(v) => View::Small(*v),
            Repr::Big(b) => View::Big(b),
            Repr::Sym(s) => match &s.node {
                Node::Pair(a, b) => View::Pair(a, b),
                Node::Offset { base, delta } => View::Offset {
                    base,
                    delta: *delta,
                },
                Node::Affine { mul, add, x } => View::Affine {
                    mul: *mul,
                    add: *add,
                    x,
                },
                Node::Iterate {
                    mul,
                    add,
                    count,
                    base,
                } => View::Iterate {
                    mul: *mul,
                    add: *add,
                    count,
                    base,
                },
            },
        }
    }

    /// True when the value is held as a concrete number.
    pub fn is_concrete(&self) -> bool {
        !matches!(self.0, Repr::Sym(_))
    }

    /// Approximate base-2 logarithm (`-inf` for zero).
    pub fn log2_estimate(&self) -> f64 {
        match &self.0 {
            Repr::Small(v) => log2_u64(*v),
            Repr::Big(b) => log2_big(b),
            Repr::Sym(s) => s.log2,
        }
    }

    /// Nesting depth of the symbolic representation; 0 for concrete values.
    pub fn depth(&self) -> u32 {
        match &self.0 {
            Repr::Sym(s) => s.depth,
            _ => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        // symbolic values are never small
        matches!(self.0, Repr::Small(0))
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.0 {
            Repr::Small(v) => Some(v),
            _ => None,
        }
    }

    /// Materializes the number, refusing anything estimated above `limit_bits`.
    pub fn to_biguint_limited(&self, limit_bits: u64) -> Result<Cow<'_, BigUint>, TooLarge> {
        match &self.0 {
            Repr::Small(v) => Ok(Cow::Owned(BigUint::from(*v))),
            Repr::Big(b) => Ok(Cow::Borrowed(b)),
            Repr::Sym(s) => {
                if let Some(v) = s.value.get() {
                    return Ok(Cow::Borrowed(v));
                }
                if s.log2 > limit_bits as f64 {
                    return Err(TooLarge {
                        bits: s.log2.min(u64::MAX as f64) as u64,
                        limit: limit_bits,
                    });
                }
                let v = s.node.materialize(limit_bits)?;
                let _ = s.value.set(v);
                Ok(Cow::Borrowed(s.value.get().expect("value was just set")))
            }
        }
    }

    /// Materializes the number under [`MATERIALIZE_LIMIT_BITS`].
    pub fn to_biguint(&self) -> Result<Cow<'_, BigUint>, TooLarge> {
        self.to_biguint_limited(MATERIALIZE_LIMIT_BITS)
    }

    fn big_unbounded(&self) -> Cow<'_, BigUint> {
        self.to_biguint_limited(u64::MAX)
            .expect("unbounded materialization cannot fail")
    }

    /// Cantor pairing `(x+y)(x+y+1)/2 + y`.
    pub fn pair(x: &Nat, y: &Nat) -> Nat {
        if let (Repr::Small(a), Repr::Small(b)) = (&x.0, &y.0) {
            if let Some(v) = pair_u64(*a, *b) {
                return Nat(Repr::Small(v));
            }
        }
        let est = pair_log2(x.log2_estimate(), y.log2_estimate());
        if x.is_concrete() && y.is_concrete() && est <= EAGER_BITS {
            return Nat::from_biguint(pair_big(&x.big_unbounded(), &y.big_unbounded()));
        }
        Nat::sym(Node::Pair(x.clone(), y.clone()), est)
    }

    /// Inverse of [`Nat::pair`].
    pub fn unpair(&self) -> Result<(Nat, Nat), TooLarge> {
        match &self.0 {
            Repr::Small(v) => {
                let (a, b) = unpair_u64(*v);
                Ok((Nat::from(a), Nat::from(b)))
            }
            Repr::Sym(s) => match s.pair_view() {
                Some(ab) => Ok(ab),
                None => {
                    let (a, b) = unpair_big(&*self.to_biguint()?);
                    Ok((Nat::from_biguint(a), Nat::from_biguint(b)))
                }
            },
            Repr::Big(_) => {
                let (a, b) = unpair_big(&*self.to_biguint()?);
                Ok((Nat::from_biguint(a), Nat::from_biguint(b)))
            }
        }
    }

    /// `mul·x + add`.
    pub fn affine(mul: u64, add: u64, x: &Nat) -> Nat {
        assert!(mul >= 1, "affine multiplier must be positive");
        if mul == 1 {
            return x.add_small(add);
        }
        if let Repr::Small(v) = x.0 {
            let r = mul as u128 * v as u128 + add as u128;
            if let Ok(r) = u64::try_from(r) {
                return Nat(Repr::Small(r));
            }
        }
        let est = log2_add(log2_u64(mul) + x.log2_estimate(), log2_u64(add));
        if x.is_concrete() && est <= EAGER_BITS {
            return Nat::from_biguint(x.big_unbounded().as_ref() * mul + add);
        }
        Nat::sym(
            Node::Affine {
                mul,
                add,
                x: x.clone(),
            },
            est,
        )
    }

    /// `f^count(base)` where `f(c) = mul·c + add`.
    pub fn iterate(mul: u64, add: u64, count: &Nat, base: &Nat) -> Nat {
        assert!(mul >= 2, "iterate multiplier must be at least 2");
        if count.is_zero() {
            return base.clone();
        }
        // merge nested runs of the same map
        if let Repr::Sym(s) = &base.0 {
            if let Node::Iterate {
                mul: m2,
                add: a2,
                count: c2,
                base: b2,
            } = &s.node
            {
                if *m2 == mul && *a2 == add {
                    return Nat::iterate(mul, add, &count.add(c2), b2);
                }
            }
        }
        let c = match count.to_u64() {
            Some(c) => c as f64,
            None => count.log2_estimate().exp2(),
        };
        let offset = add as f64 / (mul - 1) as f64;
        let est = c * log2_u64(mul) + log2_add(base.log2_estimate(), offset.log2());
        if base.is_concrete() && count.is_concrete() && est <= EAGER_BITS {
            let mut v = base.big_unbounded().into_owned();
            for _ in 0..count.to_u64().expect("small count") {
                v = v * mul + add;
            }
            return Nat::from_biguint(v);
        }
        Nat::sym(
            Node::Iterate {
                mul,
                add,
                count: count.clone(),
                base: base.clone(),
            },
            est,
        )
    }

    /// One-step affine view of an iterate node.
    fn peel_iterate(mul: u64, add: u64, count: &Nat, base: &Nat) -> Nat {
        Nat::iterate(mul, add, &count.pred(), base)
    }

    pub fn succ(&self) -> Nat {
        self.add_small(1)
    }

    /// Predecessor with `pred(0) = 0`.
    pub fn pred(&self) -> Nat {
        self.sub_small(1)
    }

    pub fn add_small(&self, k: u64) -> Nat {
        if k == 0 {
            return self.clone();
        }
        match &self.0 {
            Repr::Small(v) => match v.checked_add(k) {
                Some(r) => Nat(Repr::Small(r)),
                None => Nat::from_biguint(BigUint::from(*v) + k),
            },
            Repr::Big(b) => Nat::from_biguint(b.as_ref() + k),
            Repr::Sym(s) => match &s.node {
                Node::Affine { mul, add, x } => affine_plus(*mul, *add, k, x),
                Node::Iterate {
                    mul,
                    add,
                    count,
                    base,
                } => affine_plus(*mul, *add, k, &Nat::peel_iterate(*mul, *add, count, base)),
                Node::Pair(..) => Nat::offset(self, k as i128),
                Node::Offset { base, delta } => Nat::offset(base, *delta as i128 + k as i128),
            },
        }
    }

    /// Truncated subtraction of a small constant.
    pub fn sub_small(&self, k: u64) -> Nat {
        if k == 0 {
            return self.clone();
        }
        match &self.0 {
            Repr::Small(v) => Nat(Repr::Small(v.saturating_sub(k))),
            Repr::Big(b) => Nat::from_biguint(b.as_ref() - k),
            Repr::Sym(s) => match &s.node {
                Node::Affine { mul, add, x } => affine_minus(*mul, *add, k, x),
                Node::Iterate {
                    mul,
                    add,
                    count,
                    base,
                } => affine_minus(*mul, *add, k, &Nat::peel_iterate(*mul, *add, count, base)),
                Node::Pair(..) => Nat::offset(self, -(k as i128)),
                Node::Offset { base, delta } => Nat::offset(base, *delta as i128 - k as i128),
            },
        }
    }

    /// Division with remainder by a small positive modulus.
    pub fn div_rem_small(&self, m: u64) -> Result<(Nat, u64), TooLarge> {
        assert!(m > 0, "division by zero");
        match &self.0 {
            Repr::Small(v) => Ok((Nat(Repr::Small(v / m)), v % m)),
            Repr::Big(b) => {
                let (q, r) = b.div_rem(&BigUint::from(m));
                Ok((Nat::from_biguint(q), r.to_u64().unwrap_or(0)))
            }
            Repr::Sym(s) => {
                let affine = match &s.node {
                    Node::Affine { mul, add, x } => Some((*mul, *add, x.clone())),
                    Node::Iterate {
                        mul,
                        add,
                        count,
                        base,
                    } => Some((*mul, *add, Nat::peel_iterate(*mul, *add, count, base))),
                    Node::Pair(..) | Node::Offset { .. } => None,
                };
                match affine {
                    Some((mul, add, x)) if mul % m == 0 => {
                        Ok((Nat::affine(mul / m, add / m, &x), add % m))
                    }
                    _ => {
                        let (q, r) = self.to_biguint()?.div_rem(&BigUint::from(m));
                        Ok((Nat::from_biguint(q), r.to_u64().unwrap_or(0)))
                    }
                }
            }
        }
    }

    pub fn add(&self, other: &Nat) -> Nat {
        if let Some(k) = other.to_u64() {
            return self.add_small(k);
        }
        if let Some(k) = self.to_u64() {
            return other.add_small(k);
        }
        Nat::from_biguint(self.big_unbounded().as_ref() + other.big_unbounded().as_ref())
    }

    /// `self - other`, or `None` when `other > self`.
    pub fn checked_sub(&self, other: &Nat) -> Option<Nat> {
        if self < other {
            return None;
        }
        if let Some(k) = other.to_u64() {
            return Some(self.sub_small(k));
        }
        Some(Nat::from_biguint(
            self.big_unbounded().as_ref() - other.big_unbounded().as_ref(),
        ))
    }

    pub fn mul(&self, other: &Nat) -> Nat {
        if let (Some(a), Some(b)) = (self.to_u64(), other.to_u64()) {
            if let Some(r) = a.checked_mul(b) {
                return Nat::from(r);
            }
        }
        Nat::from_biguint(self.big_unbounded().as_ref() * other.big_unbounded().as_ref())
    }

    /// `pair + delta` for a symbolic pair node.
    fn offset(pair: &Nat, delta: i128) -> Nat {
        if delta == 0 {
            return pair.clone();
        }
        match i64::try_from(delta) {
            Ok(delta) => Nat::sym(
                Node::Offset {
                    base: pair.clone(),
                    delta,
                },
                pair.log2_estimate(),
            ),
            Err(_) => {
                let base = pair.big_unbounded().into_owned();
                let d = BigUint::from(delta.unsigned_abs());
                Nat::from_biguint(if delta > 0 { base + d } else { base - d })
            }
        }
    }

    fn ge_small(&self, k: u64) -> bool {
        self.to_u64().is_none_or(|v| v >= k)
    }

    fn same_node(&self, other: &Nat) -> bool {
        match (&self.0, &other.0) {
            (Repr::Sym(a), Repr::Sym(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }

    /// Identity of a symbolic node, for memo tables over shared values.
    pub(crate) fn node_id(&self) -> Option<usize> {
        match &self.0 {
            Repr::Sym(s) => Some(Arc::as_ptr(s) as usize),
            _ => None,
        }
    }
}

/// Structural equality over shared nodes. Pairs of nodes already shown
/// equal are remembered, so values built as DAGs compare in linear time.
#[derive(Default)]
struct EqMemo {
    proven: HashSet<(usize, usize)>,
    // keeps the remembered nodes alive so their addresses stay unique
    held: Vec<(Nat, Nat)>,
}

impl EqMemo {
    fn eq(&mut self, x: &Nat, y: &Nat) -> bool {
        match (&x.0, &y.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            (Repr::Small(_), Repr::Big(_)) | (Repr::Big(_), Repr::Small(_)) => false,
            (Repr::Sym(a), Repr::Sym(b)) if Arc::ptr_eq(a, b) => true,
            _ => {
                if (x.log2_estimate() - y.log2_estimate()).abs() > 4.0 {
                    return false;
                }
                if let (Repr::Sym(a), Repr::Sym(b)) = (&x.0, &y.0) {
                    let key = (Arc::as_ptr(a) as usize, Arc::as_ptr(b) as usize);
                    if self.proven.contains(&key) {
                        return true;
                    }
                    if let Some(r) = self.sym_eq(a, b) {
                        if r {
                            self.proven.insert(key);
                            self.held.push((x.clone(), y.clone()));
                        }
                        return r;
                    }
                }
                x.big_unbounded() == y.big_unbounded()
            }
        }
    }

    fn sym_eq(&mut self, a: &Sym, b: &Sym) -> Option<bool> {
        let base_of = |s: &Sym| match &s.node {
            Node::Offset { base, delta } => Some((base.clone(), *delta)),
            _ => None,
        };
        match (base_of(a), base_of(b)) {
            // offsets from one shared pair differ exactly when their deltas do
            (Some((p, d)), Some((q, e))) if p.same_node(&q) => return Some(d == e),
            (Some((p, d)), Some((q, e))) if d == e => return Some(self.eq(&p, &q)),
            (Some((p, _)), None) | (None, Some((p, _))) => {
                let other = if matches!(a.node, Node::Offset { .. }) { b } else { a };
                if let Repr::Sym(ps) = &p.0 {
                    if std::ptr::eq(Arc::as_ptr(ps), other) {
                        return Some(false);
                    }
                }
            }
            _ => {}
        }
        if let (Node::Pair(a1, a2), Node::Pair(b1, b2)) = (&a.node, &b.node) {
            return Some(self.eq(a1, b1) && self.eq(a2, b2));
        }
        if let (Some((a1, a2)), Some((b1, b2))) = (a.pair_view(), b.pair_view()) {
            return Some(self.eq(&a1, &b1) && self.eq(&a2, &b2));
        }
        match (&a.node, &b.node) {
            (
                Node::Iterate {
                    mul: m1,
                    add: c1,
                    count: n1,
                    base: x1,
                },
                Node::Iterate {
                    mul: m2,
                    add: c2,
                    count: n2,
                    base: x2,
                },
            ) if m1 == m2 && c1 == c2 && self.eq(n1, n2) => Some(self.eq(x1, x2)),
            _ => {
                let (m1, c1, x1) = a.node.affine_view()?;
                let (m2, c2, x2) = b.node.affine_view()?;
                if m1 != m2 {
                    return None;
                }
                if c1 % m1 != c2 % m1 {
                    return Some(false);
                }
                let (k1, k2) = (c1 / m1, c2 / m1);
                let k = k1.min(k2);
                Some(self.eq(&x1.add_small(k1 - k), &x2.add_small(k2 - k)))
            }
        }
    }
}

fn affine_plus(mul: u64, add: u64, k: u64, x: &Nat) -> Nat {
    match add.checked_add(k) {
        Some(c) => Nat::affine(mul, c, x),
        None => {
            let c = add as u128 + k as u128;
            let (q, r) = (c / mul as u128, c % mul as u128);
            Nat::affine(mul, r as u64, &x.add_small(q as u64))
        }
    }
}

fn affine_minus(mul: u64, add: u64, k: u64, x: &Nat) -> Nat {
    if add >= k {
        return Nat::affine(mul, add - k, x);
    }
    let deficit = k - add;
    let borrow = deficit.div_ceil(mul);
    let c = (borrow as u128 * mul as u128 + add as u128 - k as u128) as u64;
    Nat::affine(mul, c, &x.sub_small(borrow))
}

impl Sym {
    /// Components of a pair or offset-pair node, without materializing.
    fn pair_view(&self) -> Option<(Nat, Nat)> {
        match &self.node {
            Node::Pair(a, b) => Some((a.clone(), b.clone())),
            Node::Offset { base, delta } => {
                let Repr::Sym(p) = &base.0 else { return None };
                let Node::Pair(a, b) = &p.node else { return None };
                // the base is huge, so at most one wrap across a diagonal
                if *delta > 0 {
                    let k = *delta as u64;
                    if a.ge_small(k) {
                        Some((a.sub_small(k), b.add_small(k)))
                    } else {
                        // pair(a,b) + a + 1 = pair(a+b+1, 0)
                        let a = a.to_u64().expect("small component");
                        let rest = k - a - 1;
                        Some((b.add_small(a + 1).sub_small(rest), Nat::from(rest)))
                    }
                } else {
                    let j = delta.unsigned_abs();
                    if b.ge_small(j) {
                        Some((a.add_small(j), b.sub_small(j)))
                    } else {
                        // pair(a,b) - b - 1 = pair(0, a+b-1)
                        let b = b.to_u64().expect("small component");
                        let rest = j - b - 1;
                        Some((Nat::from(rest), a.add_small(b).sub_small(1 + rest)))
                    }
                }
            }
            _ => None,
        }
    }
}

impl Node {
    fn affine_view(&self) -> Option<(u64, u64, Nat)> {
        match self {
            Node::Affine { mul, add, x } => Some((*mul, *add, x.clone())),
            Node::Iterate {
                mul,
                add,
                count,
                base,
            } => Some((*mul, *add, Nat::peel_iterate(*mul, *add, count, base))),
            Node::Pair(..) | Node::Offset { .. } => None,
        }
    }

    fn materialize(&self, limit: u64) -> Result<BigUint, TooLarge> {
        Ok(match self {
            Node::Pair(a, b) => pair_big(&*a.to_biguint_limited(limit)?, &*b.to_biguint_limited(limit)?),
            Node::Offset { base, delta } => {
                let base = base.to_biguint_limited(limit)?;
                let d = BigUint::from(delta.unsigned_abs());
                if *delta > 0 {
                    base.as_ref() + d
                } else {
                    base.as_ref() - d
                }
            }
            Node::Affine { mul, add, x } => x.to_biguint_limited(limit)?.as_ref() * *mul + *add,
            Node::Iterate {
                mul,
                add,
                count,
                base,
            } => {
                let k = count.to_u64().and_then(|k| u32::try_from(k).ok()).ok_or(TooLarge {
                    bits: u64::MAX,
                    limit,
                })?;
                let base = base.to_biguint_limited(limit)?;
                let p = BigUint::from(*mul).pow(k);
                // f^k(b) = mul^k·b + add·(mul^k - 1)/(mul - 1)
                let tail = (&p - 1u32) / (*mul - 1) * *add;
                p * base.as_ref() + tail
            }
        })
    }
}

impl Default for Nat {
    fn default() -> Self {
        Nat::ZERO
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Self {
        Nat(Repr::Small(v))
    }
}

impl From<u32> for Nat {
    fn from(v: u32) -> Self {
        Nat(Repr::Small(v as u64))
    }
}

impl From<BigUint> for Nat {
    fn from(v: BigUint) -> Self {
        Nat::from_biguint(v)
    }
}

impl PartialEq for Nat {
    fn eq(&self, other: &Nat) -> bool {
        EqMemo::default().eq(self, other)
    }
}

impl Eq for Nat {}

impl PartialOrd for Nat {
    fn partial_cmp(&self, other: &Nat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Nat {
    fn cmp(&self, other: &Nat) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            (Repr::Small(_), Repr::Big(_)) => Ordering::Less,
            (Repr::Big(_), Repr::Small(_)) => Ordering::Greater,
            (Repr::Big(a), Repr::Big(b)) => a.cmp(b),
            _ => {
                if self == other {
                    return Ordering::Equal;
                }
                let (la, lb) = (self.log2_estimate(), other.log2_estimate());
                if (la - lb).abs() > 4.0 {
                    return la.partial_cmp(&lb).unwrap_or(Ordering::Equal);
                }
                self.big_unbounded().cmp(&other.big_unbounded())
            }
        }
    }
}

impl fmt::Display for Nat {
    /// Decimal digits; materializes symbolic values.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            _ => write!(f, "{}", self.big_unbounded()),
        }
    }
}

/// Debug output stops expanding nodes below this nesting.
const DEBUG_DEPTH: u32 = 6;

fn debug_nat(n: &Nat, f: &mut fmt::Formatter<'_>, budget: u32) -> fmt::Result {
    if budget == 0 && !n.is_concrete() {
        return write!(f, "…");
    }
    let b = budget.saturating_sub(1);
    match n.view() {
        View::Small(v) => write!(f, "{v}"),
        View::Big(v) => write!(f, "{v}"),
        View::Pair(x, y) => {
            write!(f, "pair(")?;
            debug_nat(x, f, b)?;
            write!(f, ", ")?;
            debug_nat(y, f, b)?;
            write!(f, ")")
        }
        View::Offset { base, delta } => {
            write!(f, "(")?;
            debug_nat(base, f, b)?;
            write!(f, "{delta:+})")
        }
        View::Affine { mul, add, x } => {
            write!(f, "({mul}*")?;
            debug_nat(x, f, b)?;
            write!(f, "+{add})")
        }
        View::Iterate {
            mul,
            add,
            count,
            base,
        } => {
            write!(f, "iter({mul},{add},")?;
            debug_nat(count, f, b)?;
            write!(f, ",")?;
            debug_nat(base, f, b)?;
            write!(f, ")")
        }
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        debug_nat(self, f, DEBUG_DEPTH)
    }
}

impl FromStr for Nat {
    type Err = ParseNatError;

    /// Decimal digits without sign or leading zeros (except "0").
    fn from_str(s: &str) -> Result<Nat, ParseNatError> {
        let ok = !s.is_empty()
            && s.bytes().all(|b| b.is_ascii_digit())
            && (s == "0" || !s.starts_with('0'));
        if !ok {
            return Err(ParseNatError(s.to_string()));
        }
        if let Ok(v) = s.parse::<u64>() {
            return Ok(Nat::from(v));
        }
        BigUint::parse_bytes(s.as_bytes(), 10)
            .map(Nat::from_biguint)
            .ok_or_else(|| ParseNatError(s.to_string()))
    }
}

/// Cantor pairing on naturals.
pub fn pair(x: &Nat, y: &Nat) -> Nat {
    Nat::pair(x, y)
}

/// Cantor pairing on `u64` with overflow reported.
pub fn pair_checked(x: u64, y: u64) -> Option<u64> {
    pair_u64(x, y)
}

/// Inverse Cantor pairing on `u64`; total.
pub fn unpair_u64_exact(n: u64) -> (u64, u64) {
    unpair_u64(n)
}
