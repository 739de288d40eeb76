//! Exact Wajsberg chains and their finite products.
//!
//! Bounded chains come from the Γ construction over `Z` and over the
//! lexicographic square `Z ×_l Z`: the carrier is the interval `[0, u]` of the
//! group, with `a·b = max(a + b − u, 0)` and `a → b = min(u − a + b, u)`.
//! `C_ω` is the negative cone of `Z` with `x·y = x + y` and
//! `x → y = min(y − x, 0)`; its generator is `c = −1`.

mod closure;
mod descriptor;
mod embed;
mod product;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::terms::Term;

pub use closure::{bounded_closure, generate_subalgebra, Closure};
pub use descriptor::{parse_descriptor_list, ChainDescriptor};
pub use embed::{embeds, rank_and_div_index, Extent};
pub use product::{ProductAlgebra, ProductElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("negation is not available on the unbounded chain {0}")]
    NegationUnbounded(String),
    #[error("{op:?} takes {expected} argument(s), got {got}")]
    Arity {
        op: Operation,
        expected: usize,
        got: usize,
    },
    #[error("element {element} does not belong to {algebra}")]
    ForeignElement { element: String, algebra: String },
    #[error("variable `{0}` is not assigned")]
    Unassigned(String),
    #[error("cannot parse {what}: {text:?}")]
    Parse { what: &'static str, text: String },
}

impl ChainError {
    pub(crate) fn parse(what: &'static str, text: &str) -> ChainError {
        ChainError::Parse {
            what,
            text: text.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operation {
    Mul,
    Imp,
    Meet,
    Join,
    Neg,
}

impl Operation {
    pub fn arity(self) -> usize {
        if self == Operation::Neg {
            1
        } else {
            2
        }
    }
}

/// An algebra in the hoop signature with exact elements.
pub trait Hoop {
    type Elem: Clone + Ord + fmt::Debug + fmt::Display;

    fn top(&self) -> Self::Elem;

    fn contains(&self, x: &Self::Elem) -> bool;

    fn op_apply(&self, op: Operation, args: &[Self::Elem]) -> Result<Self::Elem, ChainError>;

    /// The whole carrier in increasing element order, when it is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    fn name(&self) -> String;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ChainError> {
        self.op_apply(Operation::Mul, &[a.clone(), b.clone()])
    }

    fn imp(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ChainError> {
        self.op_apply(Operation::Imp, &[a.clone(), b.clone()])
    }

    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ChainError> {
        self.op_apply(Operation::Meet, &[a.clone(), b.clone()])
    }

    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ChainError> {
        self.op_apply(Operation::Join, &[a.clone(), b.clone()])
    }

    fn neg(&self, a: &Self::Elem) -> Result<Self::Elem, ChainError> {
        self.op_apply(Operation::Neg, std::slice::from_ref(a))
    }

    /// Lattice order, read off the meet.
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool, ChainError> {
        Ok(&self.meet(a, b)? == a)
    }

    /// Bottom-up evaluation of `t`; the constant `1` denotes the top.
    fn eval(
        &self,
        t: &Term,
        assignment: &BTreeMap<String, Self::Elem>,
    ) -> Result<Self::Elem, ChainError> {
        match t {
            Term::Var(v) => assignment
                .get(v)
                .cloned()
                .ok_or_else(|| ChainError::Unassigned(v.clone())),
            Term::One => Ok(self.top()),
            Term::Mul(l, r) => self.mul(&self.eval(l, assignment)?, &self.eval(r, assignment)?),
            Term::Imp(l, r) => self.imp(&self.eval(l, assignment)?, &self.eval(r, assignment)?),
            Term::Meet(l, r) => self.meet(&self.eval(l, assignment)?, &self.eval(r, assignment)?),
            Term::Join(l, r) => self.join(&self.eval(l, assignment)?, &self.eval(r, assignment)?),
        }
    }

    /// Evaluates a term in (at most) one variable at `x`.
    fn eval_at(&self, t: &Term, x: &Self::Elem) -> Result<Self::Elem, ChainError> {
        let assignment = t.variables().into_iter().map(|v| (v, x.clone())).collect();
        self.eval(t, &assignment)
    }
}

/// Element of a single chain. Each element remembers the chain it lives in,
/// so mixing elements of different chains is caught at the operation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element<S> {
    /// `a ∈ {0, …, n}` in `Ł_n`.
    Fin { n: u64, a: S },
    /// `(a, b)` with `(0,0) ≤_lex (a,b) ≤_lex (n,k)` in `Ł_{n,k}`.
    Lex { n: u64, k: u64, a: S, b: S },
    /// `z ≤ 0` in `C_ω`.
    NegCone(S),
}

impl<S: Scalar> Element<S> {
    pub fn fin(n: u64, a: i64) -> Self {
        Element::Fin {
            n,
            a: S::from_i64_lossless(a),
        }
    }

    pub fn lex(n: u64, k: u64, a: i64, b: i64) -> Self {
        Element::Lex {
            n,
            k,
            a: S::from_i64_lossless(a),
            b: S::from_i64_lossless(b),
        }
    }

    pub fn neg_cone(z: i64) -> Self {
        Element::NegCone(S::from_i64_lossless(z))
    }

    pub fn descriptor(&self) -> ChainDescriptor {
        match self {
            Element::Fin { n, .. } => ChainDescriptor::Fin(*n),
            Element::Lex { n, k, .. } => ChainDescriptor::Lex(*n, *k),
            Element::NegCone(_) => ChainDescriptor::NegCone,
        }
    }
}

impl<S: Scalar> fmt::Display for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Fin { a, .. } => write!(f, "{a}"),
            Element::Lex { a, b, .. } => write!(f, "({a},{b})"),
            Element::NegCone(z) => write!(f, "{z}"),
        }
    }
}

/// A single chain over the scalar `S`, with its strong unit cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain<S> {
    desc: ChainDescriptor,
    n: S,
    k: S,
}

fn lex_max<S: Scalar>(x: (S, S), y: (S, S)) -> (S, S) {
    if x >= y {
        x
    } else {
        y
    }
}

fn lex_min<S: Scalar>(x: (S, S), y: (S, S)) -> (S, S) {
    if x <= y {
        x
    } else {
        y
    }
}

impl<S: Scalar> Chain<S> {
    pub fn new(desc: ChainDescriptor) -> Self {
        let (n, k) = match desc {
            ChainDescriptor::Fin(n) => (n, 0),
            ChainDescriptor::Lex(n, k) => (n, k),
            ChainDescriptor::NegCone => (0, 0),
        };
        Chain {
            desc,
            n: S::from_u64_lossless(n),
            k: S::from_u64_lossless(k),
        }
    }

    pub fn descriptor(&self) -> ChainDescriptor {
        self.desc
    }

    pub fn is_bounded(&self) -> bool {
        self.desc.is_bounded()
    }

    /// Least element of a bounded chain.
    pub fn bottom(&self) -> Option<Element<S>> {
        match self.desc {
            ChainDescriptor::Fin(n) => Some(Element::Fin { n, a: S::zero() }),
            ChainDescriptor::Lex(n, k) => Some(Element::Lex {
                n,
                k,
                a: S::zero(),
                b: S::zero(),
            }),
            ChainDescriptor::NegCone => None,
        }
    }

    /// Parses `2`, `(1,-3)` or `-1` as an element of this chain.
    pub fn parse_element(&self, text: &str) -> Result<Element<S>, ChainError> {
        let text = text.trim();
        let num = |s: &str| s.trim().parse::<S>().map_err(|_| ChainError::parse("element", text));
        let e = match self.desc {
            ChainDescriptor::Fin(n) => Element::Fin { n, a: num(text)? },
            ChainDescriptor::NegCone => Element::NegCone(num(text)?),
            ChainDescriptor::Lex(n, k) => {
                let inner = text
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| ChainError::parse("element", text))?;
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| ChainError::parse("element", text))?;
                Element::Lex {
                    n,
                    k,
                    a: num(a)?,
                    b: num(b)?,
                }
            }
        };
        if !self.contains(&e) {
            return Err(self.foreign(&e));
        }
        Ok(e)
    }

    fn foreign(&self, e: &Element<S>) -> ChainError {
        ChainError::ForeignElement {
            element: format!("{e} of {}", e.descriptor()),
            algebra: self.desc.to_string(),
        }
    }

    fn fin_value<'a>(&self, e: &'a Element<S>) -> Result<&'a S, ChainError> {
        match e {
            Element::Fin { a, .. } if self.contains(e) => Ok(a),
            _ => Err(self.foreign(e)),
        }
    }

    fn lex_value(&self, e: &Element<S>) -> Result<(S, S), ChainError> {
        match e {
            Element::Lex { a, b, .. } if self.contains(e) => Ok((a.clone(), b.clone())),
            _ => Err(self.foreign(e)),
        }
    }

    fn cone_value<'a>(&self, e: &'a Element<S>) -> Result<&'a S, ChainError> {
        match e {
            Element::NegCone(z) if self.contains(e) => Ok(z),
            _ => Err(self.foreign(e)),
        }
    }

    fn binary(&self, op: Operation, x: &Element<S>, y: &Element<S>) -> Result<Element<S>, ChainError> {
        let zero = S::zero();
        Ok(match self.desc {
            ChainDescriptor::Fin(n) => {
                let (a, b) = (self.fin_value(x)?, self.fin_value(y)?);
                let u = &self.n;
                let v = match op {
                    Operation::Mul => (a.clone() + b.clone() - u.clone()).max(zero),
                    Operation::Imp => (u.clone() - a.clone() + b.clone()).min(u.clone()),
                    Operation::Meet => a.clone().min(b.clone()),
                    Operation::Join => a.clone().max(b.clone()),
                    Operation::Neg => unreachable!(),
                };
                Element::Fin { n, a: v }
            }
            ChainDescriptor::Lex(n, k) => {
                let (p, q) = (self.lex_value(x)?, self.lex_value(y)?);
                let u = (self.n.clone(), self.k.clone());
                let (a, b) = match op {
                    Operation::Mul => lex_max(
                        (p.0 + q.0 - u.0, p.1 + q.1 - u.1),
                        (zero.clone(), zero),
                    ),
                    Operation::Imp => lex_min((u.0.clone() - p.0 + q.0, u.1.clone() - p.1 + q.1), u),
                    Operation::Meet => lex_min(p, q),
                    Operation::Join => lex_max(p, q),
                    Operation::Neg => unreachable!(),
                };
                Element::Lex { n, k, a, b }
            }
            ChainDescriptor::NegCone => {
                let (a, b) = (self.cone_value(x)?, self.cone_value(y)?);
                let v = match op {
                    Operation::Mul => a.clone() + b.clone(),
                    Operation::Imp => (b.clone() - a.clone()).min(zero),
                    Operation::Meet => a.clone().min(b.clone()),
                    Operation::Join => a.clone().max(b.clone()),
                    Operation::Neg => unreachable!(),
                };
                Element::NegCone(v)
            }
        })
    }
}

impl<S: Scalar> Hoop for Chain<S> {
    type Elem = Element<S>;

    fn top(&self) -> Element<S> {
        match self.desc {
            ChainDescriptor::Fin(n) => Element::Fin { n, a: self.n.clone() },
            ChainDescriptor::Lex(n, k) => Element::Lex {
                n,
                k,
                a: self.n.clone(),
                b: self.k.clone(),
            },
            ChainDescriptor::NegCone => Element::NegCone(S::zero()),
        }
    }

    fn contains(&self, x: &Element<S>) -> bool {
        if x.descriptor() != self.desc {
            return false;
        }
        let zero = S::zero();
        match x {
            Element::Fin { a, .. } => *a >= zero && *a <= self.n,
            Element::Lex { a, b, .. } => {
                let p = (a.clone(), b.clone());
                p >= (zero.clone(), zero) && p <= (self.n.clone(), self.k.clone())
            }
            Element::NegCone(z) => *z <= zero,
        }
    }

    fn op_apply(&self, op: Operation, args: &[Element<S>]) -> Result<Element<S>, ChainError> {
        if args.len() != op.arity() {
            return Err(ChainError::Arity {
                op,
                expected: op.arity(),
                got: args.len(),
            });
        }
        if op == Operation::Neg {
            let bottom = self
                .bottom()
                .ok_or_else(|| ChainError::NegationUnbounded(self.desc.to_string()))?;
            return self.binary(Operation::Imp, &args[0], &bottom);
        }
        self.binary(op, &args[0], &args[1])
    }

    fn elements(&self) -> Option<Vec<Element<S>>> {
        match self.desc {
            ChainDescriptor::Fin(n) => Some(
                (0..=n)
                    .map(|a| Element::Fin {
                        n,
                        a: S::from_u64_lossless(a),
                    })
                    .collect(),
            ),
            _ => None,
        }
    }

    fn name(&self) -> String {
        self.desc.to_string()
    }
}
