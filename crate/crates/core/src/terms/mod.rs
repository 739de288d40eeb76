//! Terms over the hoop signature `{·, →, ∧, ∨, 1}`.
//!
//! Surface syntax is ASCII: `*`, `/\`, `\/`, `->` and the constant `1`.
//! Precedence from tightest to loosest is `*`, `/\`, `\/`, `->`; the arrow
//! associates to the right, the other connectives to the left.

mod enumerate;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

pub use enumerate::{enumerate_terms, random_term, TermEnumerator};
pub use parse::{parse, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    One,
    Mul(Box<Term>, Box<Term>),
    Imp(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Mul,
    Imp,
    Meet,
    Join,
}

impl BinOp {
    pub const ALL: [BinOp; 4] = [BinOp::Mul, BinOp::Imp, BinOp::Meet, BinOp::Join];

    fn precedence(self) -> u8 {
        match self {
            BinOp::Imp => 1,
            BinOp::Join => 2,
            BinOp::Meet => 3,
            BinOp::Mul => 4,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            BinOp::Mul => "*",
            BinOp::Imp => " -> ",
            BinOp::Meet => " /\\ ",
            BinOp::Join => " \\/ ",
        }
    }
}

const ATOM_PRECEDENCE: u8 = 5;

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn binary(op: BinOp, l: Term, r: Term) -> Term {
        let (l, r) = (Box::new(l), Box::new(r));
        match op {
            BinOp::Mul => Term::Mul(l, r),
            BinOp::Imp => Term::Imp(l, r),
            BinOp::Meet => Term::Meet(l, r),
            BinOp::Join => Term::Join(l, r),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(l: Term, r: Term) -> Term {
        Term::binary(BinOp::Mul, l, r)
    }

    pub fn imp(l: Term, r: Term) -> Term {
        Term::binary(BinOp::Imp, l, r)
    }

    pub fn meet(l: Term, r: Term) -> Term {
        Term::binary(BinOp::Meet, l, r)
    }

    pub fn join(l: Term, r: Term) -> Term {
        Term::binary(BinOp::Join, l, r)
    }

    /// `t^n` as a left-nested product; `t^0` is the constant 1.
    pub fn power(t: &Term, n: u32) -> Term {
        if n == 0 {
            return Term::One;
        }
        let mut acc = t.clone();
        for _ in 1..n {
            acc = Term::mul(acc, t.clone());
        }
        acc
    }

    pub fn as_binary(&self) -> Option<(BinOp, &Term, &Term)> {
        match self {
            Term::Mul(l, r) => Some((BinOp::Mul, l, r)),
            Term::Imp(l, r) => Some((BinOp::Imp, l, r)),
            Term::Meet(l, r) => Some((BinOp::Meet, l, r)),
            Term::Join(l, r) => Some((BinOp::Join, l, r)),
            Term::Var(_) | Term::One => None,
        }
    }

    pub fn depth(&self) -> usize {
        match self.as_binary() {
            Some((_, l, r)) => 1 + l.depth().max(r.depth()),
            None => 0,
        }
    }

    pub fn size(&self) -> usize {
        match self.as_binary() {
            Some((_, l, r)) => 1 + l.size() + r.size(),
            None => 1,
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::One => {}
            _ => {
                let (_, l, r) = self.as_binary().unwrap();
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self.as_binary() {
            Some((op, _, _)) => op.precedence(),
            None => ATOM_PRECEDENCE,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let parens = self.precedence() < min_prec;
        if parens {
            f.write_str("(")?;
        }
        match self {
            Term::Var(v) => f.write_str(v)?,
            Term::One => f.write_str("1")?,
            _ => {
                let (op, l, r) = self.as_binary().unwrap();
                let p = op.precedence();
                // `->` is right-associative, everything else left-associative.
                let (lp, rp) = if op == BinOp::Imp { (p + 1, p) } else { (p, p + 1) };
                l.write_at(f, lp)?;
                f.write_str(op.symbol())?;
                r.write_at(f, rp)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Minimal-parenthesization rendering; `parse(&t.to_string()) == Ok(t)`.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl std::str::FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Renders a term; the inverse of [`parse`].
pub fn print(t: &Term) -> String {
    t.to_string()
}
