//! One-variable Wajsberg functions: continuous piecewise-linear maps
//! `[0,1] → [0,1]` whose pieces have integer slope and intercept and which
//! send 1 to 1. They realize the free one-generated Wajsberg hoop, with the
//! operations computed pointwise.

mod comb;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::chains::Element;
use crate::scalar::{fmt_ratio, int_ratio, Scalar};
use crate::terms::Term;

pub use comb::{
    comb_targets, condition4_cutoff, condition4_direct, is_comb, make_comb, CombTargets,
    CombViolation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlError {
    #[error("a function needs at least the nodes at 0 and 1")]
    TooFewNodes,
    #[error("abscissas must run strictly increasing from 0 to 1 (problem at node {0})")]
    Abscissa(usize),
    #[error("value at node {0} is outside [0,1]")]
    Range(usize),
    #[error("segment {segment} has non-integer {what}")]
    NonInteger { segment: usize, what: &'static str },
    #[error("a Wajsberg function must take the value 1 at 1")]
    NotWajsberg,
    #[error("point {0} is outside [0,1]")]
    OutOfDomain(String),
    #[error("term has more than one variable: {0}")]
    TooManyVariables(String),
    #[error("cannot parse L-notation: {0}")]
    Parse(String),
    #[error("presentation is not reduced: {0}")]
    NotReduced(String),
    #[error("comb construction failed verification for {0}")]
    CombConstruction(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlOp {
    Mul,
    Imp,
    Meet,
    Join,
}

/// Affine piece `t ↦ slope·t + intercept` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piece<S> {
    pub slope: S,
    pub intercept: S,
}

impl<S: Scalar> Piece<S> {
    pub fn at(&self, t: &Ratio<S>) -> Ratio<S> {
        t * int_ratio(self.slope.clone()) + int_ratio(self.intercept.clone())
    }

    fn one() -> Self {
        Piece {
            slope: S::zero(),
            intercept: S::one(),
        }
    }
}

/// Canonical node list `(t_0,x_0), …, (t_k,x_k)`; equality of functions is
/// equality of node lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlFunction<S: Clone + num_integer::Integer> {
    nodes: Vec<(Ratio<S>, Ratio<S>)>,
}

fn rat<S: Scalar>(n: i64, d: i64) -> Ratio<S> {
    crate::scalar::ratio(n, d)
}

impl<S: Scalar> PlFunction<S> {
    /// Linear interpolation `L(t_0,x_0; …; t_k,x_k)`, validated and with
    /// collinear nodes merged.
    pub fn interpolate(nodes: Vec<(Ratio<S>, Ratio<S>)>) -> Result<Self, PlError> {
        let f = PlFunction {
            nodes: canonical(nodes),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn identity() -> Self {
        PlFunction {
            nodes: vec![(Ratio::zero(), Ratio::zero()), (Ratio::one(), Ratio::one())],
        }
    }

    pub fn one() -> Self {
        PlFunction {
            nodes: vec![(Ratio::zero(), Ratio::one()), (Ratio::one(), Ratio::one())],
        }
    }

    pub fn nodes(&self) -> &[(Ratio<S>, Ratio<S>)] {
        &self.nodes
    }

    pub fn is_one(&self) -> bool {
        self.nodes.iter().all(|(_, x)| x.is_one())
    }

    fn validate(&self) -> Result<(), PlError> {
        let nodes = &self.nodes;
        if nodes.len() < 2 {
            return Err(PlError::TooFewNodes);
        }
        if !nodes[0].0.is_zero() {
            return Err(PlError::Abscissa(0));
        }
        if !nodes[nodes.len() - 1].0.is_one() {
            return Err(PlError::Abscissa(nodes.len() - 1));
        }
        for (i, w) in nodes.windows(2).enumerate() {
            if w[0].0 >= w[1].0 {
                return Err(PlError::Abscissa(i + 1));
            }
        }
        for (i, (_, x)) in nodes.iter().enumerate() {
            if x.is_negative() || *x > Ratio::one() {
                return Err(PlError::Range(i));
            }
        }
        for segment in 0..nodes.len() - 1 {
            let (slope, intercept) = segment_coefficients(&nodes[segment], &nodes[segment + 1]);
            if !slope.is_integer() {
                return Err(PlError::NonInteger {
                    segment,
                    what: "slope",
                });
            }
            if !intercept.is_integer() {
                return Err(PlError::NonInteger {
                    segment,
                    what: "intercept",
                });
            }
        }
        if !nodes[nodes.len() - 1].1.is_one() {
            return Err(PlError::NotWajsberg);
        }
        Ok(())
    }

    /// The pieces together with the segment each one lives on.
    pub fn pieces(&self) -> Vec<(Ratio<S>, Ratio<S>, Piece<S>)> {
        self.nodes
            .windows(2)
            .map(|w| (w[0].0.clone(), w[1].0.clone(), piece_of(&w[0], &w[1])))
            .collect()
    }

    fn check_domain(q: &Ratio<S>) -> Result<(), PlError> {
        if q.is_negative() || *q > Ratio::one() {
            return Err(PlError::OutOfDomain(fmt_ratio(q)));
        }
        Ok(())
    }

    /// Index of the segment `[t_i, t_{i+1}]` used for `q`, preferring the one
    /// starting at `q` when `q` is a node.
    fn segment_index(&self, q: &Ratio<S>) -> usize {
        let last = self.nodes.len() - 2;
        match self.nodes.binary_search_by(|(t, _)| t.cmp(q)) {
            Ok(i) => i.min(last),
            Err(i) => i - 1,
        }
    }

    /// Exact value at `q ∈ [0,1]`.
    pub fn eval(&self, q: &Ratio<S>) -> Result<Ratio<S>, PlError> {
        Self::check_domain(q)?;
        let i = self.segment_index(q);
        let ((t0, x0), (t1, x1)) = (&self.nodes[i], &self.nodes[i + 1]);
        Ok(x0 + (x1 - x0) * (q - t0) / (t1 - t0))
    }

    /// Piece active immediately to the right of `q`; `None` at 1.
    pub fn germ_right(&self, q: &Ratio<S>) -> Option<Piece<S>> {
        if *q >= Ratio::one() || q.is_negative() {
            return None;
        }
        let i = self.segment_index(q);
        Some(piece_of(&self.nodes[i], &self.nodes[i + 1]))
    }

    /// Piece active immediately to the left of `q`; `None` at 0.
    pub fn germ_left(&self, q: &Ratio<S>) -> Option<Piece<S>> {
        if q.is_zero() || q.is_negative() || *q > Ratio::one() {
            return None;
        }
        let i = match self.nodes.binary_search_by(|(t, _)| t.cmp(q)) {
            Ok(i) => i - 1,
            Err(i) => i - 1,
        };
        Some(piece_of(&self.nodes[i], &self.nodes[i + 1]))
    }

    /// Whether `self` and `other` coincide on a neighbourhood of `q` in `[0,1]`.
    pub fn locally_equal(&self, other: &Self, q: &Ratio<S>) -> bool {
        self.germ_left(q) == other.germ_left(q) && self.germ_right(q) == other.germ_right(q)
    }

    /// Whether `self` is identically 1 on a neighbourhood of `q` in `[0,1]`.
    pub fn locally_one(&self, q: &Ratio<S>) -> bool {
        let one = Some(Piece::one());
        let left = q.is_zero() || self.germ_left(q) == one;
        let right = q.is_one() || self.germ_right(q) == one;
        left && right
    }

    /// Value of the term represented by `self` at a chain element, read off
    /// the function: at `a ∈ Ł_n` it is `n·f(a/n)`; at `(a,b) ∈ Ł_{n,k}` it is
    /// the active piece applied to `(a,b)` and the unit `(n,k)`, the side being
    /// fixed by the sign of `b·n − a·k`; at `z ∈ C_ω` it is `z` times the
    /// slope of the germ at 1.
    pub fn apply_to_element(&self, e: &Element<S>) -> Element<S> {
        match e {
            Element::Fin { n, a } => {
                let n_s = S::from_u64_lossless(*n);
                let v = self
                    .eval(&Ratio::new(a.clone(), n_s.clone()))
                    .expect("element of a chain lies in the domain");
                let scaled = v * int_ratio(n_s);
                Element::Fin {
                    n: *n,
                    a: scaled.to_integer(),
                }
            }
            Element::Lex { n, k, a, b } => {
                let (n_s, k_s) = (S::from_u64_lossless(*n), S::from_u64_lossless(*k));
                let q = Ratio::new(a.clone(), n_s.clone());
                let direction = (b.clone() * n_s.clone()).cmp(&(a.clone() * k_s.clone()));
                let piece = match direction {
                    Ordering::Greater => self.germ_right(&q),
                    Ordering::Less => self.germ_left(&q),
                    Ordering::Equal => self.germ_right(&q).or_else(|| self.germ_left(&q)),
                }
                .expect("a side exists");
                Element::Lex {
                    n: *n,
                    k: *k,
                    a: piece.slope.clone() * a.clone() + piece.intercept.clone() * n_s,
                    b: piece.slope * b.clone() + piece.intercept * k_s,
                }
            }
            Element::NegCone(z) => {
                let piece = self.germ_left(&Ratio::one()).expect("left germ at 1");
                Element::NegCone(piece.slope * z.clone())
            }
        }
    }

    pub fn apply(op: PlOp, f: &Self, g: &Self) -> Self {
        pl_apply(op, f, g)
    }
}

fn segment_coefficients<S: Scalar>(
    p: &(Ratio<S>, Ratio<S>),
    q: &(Ratio<S>, Ratio<S>),
) -> (Ratio<S>, Ratio<S>) {
    let slope = (&q.1 - &p.1) / (&q.0 - &p.0);
    let intercept = &p.1 - &slope * &p.0;
    (slope, intercept)
}

fn piece_of<S: Scalar>(p: &(Ratio<S>, Ratio<S>), q: &(Ratio<S>, Ratio<S>)) -> Piece<S> {
    let (slope, intercept) = segment_coefficients(p, q);
    Piece {
        slope: slope.to_integer(),
        intercept: intercept.to_integer(),
    }
}

fn canonical<S: Scalar>(nodes: Vec<(Ratio<S>, Ratio<S>)>) -> Vec<(Ratio<S>, Ratio<S>)> {
    let mut out: Vec<(Ratio<S>, Ratio<S>)> = Vec::with_capacity(nodes.len());
    for node in nodes {
        if out.len() >= 2 {
            let (a, b) = (&out[out.len() - 2], &out[out.len() - 1]);
            let collinear = (&b.1 - &a.1) * (&node.0 - &b.0) == (&node.1 - &b.1) * (&b.0 - &a.0);
            if collinear && b.0 > a.0 && node.0 > b.0 {
                out.pop();
            }
        }
        out.push(node);
    }
    out
}

fn pointwise<S: Scalar>(op: PlOp, x: &Ratio<S>, y: &Ratio<S>) -> Ratio<S> {
    let one = Ratio::<S>::one();
    match op {
        PlOp::Mul => (x + y - &one).max(Ratio::zero()),
        PlOp::Imp => (&one - x + y).min(one),
        PlOp::Meet => x.clone().min(y.clone()),
        PlOp::Join => x.clone().max(y.clone()),
    }
}

/// Pointwise hoop operation on Wajsberg functions. Breakpoints of the result
/// are the breakpoints of the inputs plus the points where the active pieces
/// cross the switching line of the operation.
pub fn pl_apply<S: Scalar>(op: PlOp, f: &PlFunction<S>, g: &PlFunction<S>) -> PlFunction<S> {
    let mut ts: Vec<Ratio<S>> = f
        .nodes
        .iter()
        .chain(&g.nodes)
        .map(|(t, _)| t.clone())
        .collect();
    ts.sort();
    ts.dedup();
    let mut points = Vec::with_capacity(ts.len() * 2);
    for w in ts.windows(2) {
        points.push(w[0].clone());
        let mid = (&w[0] + &w[1]) / int_ratio(S::from_i64_lossless(2));
        let (pf, pg) = (
            f.germ_right(&w[0]).unwrap_or_else(|| f.germ_left(&mid).unwrap()),
            g.germ_right(&w[0]).unwrap_or_else(|| g.germ_left(&mid).unwrap()),
        );
        // Solve slope·t + intercept = target for the switching line.
        let (slope, intercept, target) = match op {
            PlOp::Mul => (
                pf.slope.clone() + pg.slope.clone(),
                pf.intercept.clone() + pg.intercept.clone(),
                S::one(),
            ),
            PlOp::Imp | PlOp::Meet | PlOp::Join => (
                pf.slope.clone() - pg.slope.clone(),
                pf.intercept.clone() - pg.intercept.clone(),
                S::zero(),
            ),
        };
        if !slope.is_zero() {
            let t = Ratio::new(target - intercept, slope);
            if t > w[0] && t < w[1] {
                points.push(t);
            }
        }
    }
    points.push(ts[ts.len() - 1].clone());
    let nodes = points
        .into_iter()
        .map(|t| {
            let v = pointwise(op, &f.eval(&t).unwrap(), &g.eval(&t).unwrap());
            (t, v)
        })
        .collect();
    PlFunction::interpolate(nodes).expect("Wajsberg functions are closed under hoop operations")
}

/// The Wajsberg function of a term in at most one variable.
pub fn term_to_pl<S: Scalar>(t: &Term) -> Result<PlFunction<S>, PlError> {
    let vars = t.variables();
    if vars.len() > 1 {
        return Err(PlError::TooManyVariables(t.to_string()));
    }
    Ok(fold_term(t))
}

fn fold_term<S: Scalar>(t: &Term) -> PlFunction<S> {
    match t {
        Term::Var(_) => PlFunction::identity(),
        Term::One => PlFunction::one(),
        _ => {
            let (op, l, r) = t.as_binary().unwrap();
            let op = match op {
                crate::terms::BinOp::Mul => PlOp::Mul,
                crate::terms::BinOp::Imp => PlOp::Imp,
                crate::terms::BinOp::Meet => PlOp::Meet,
                crate::terms::BinOp::Join => PlOp::Join,
            };
            pl_apply(op, &fold_term(l), &fold_term(r))
        }
    }
}

/// Exact value of `f` at `q`.
pub fn pl_eval<S: Scalar>(f: &PlFunction<S>, q: &Ratio<S>) -> Result<Ratio<S>, PlError> {
    f.eval(q)
}

/// A node `(t, f(t))` as two `(numerator, denominator)` pairs.
pub type RawNode = ((i64, i64), (i64, i64));

/// `L(t_0,x_0; …)` builder from `(num, den)` pairs, for literals in code.
pub fn nodes_from_pairs<S: Scalar>(pairs: &[RawNode]) -> Vec<(Ratio<S>, Ratio<S>)> {
    pairs
        .iter()
        .map(|&((tn, td), (xn, xd))| (rat(tn, td), rat(xn, xd)))
        .collect()
}

impl<S: Scalar> fmt::Display for PlFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("L(")?;
        for (i, (t, x)) in self.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{},{}", fmt_ratio(t), fmt_ratio(x))?;
        }
        f.write_str(")")
    }
}

impl<S: Scalar> FromStr for PlFunction<S> {
    type Err = PlError;

    fn from_str(s: &str) -> Result<Self, PlError> {
        let bad = || PlError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix("L(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let nodes = inner
            .split(';')
            .map(|node| {
                let (t, x) = node.split_once(',').ok_or_else(bad)?;
                let t: Ratio<S> = t.trim().parse().map_err(|_| bad())?;
                let x: Ratio<S> = x.trim().parse().map_err(|_| bad())?;
                Ok((t, x))
            })
            .collect::<Result<Vec<_>, PlError>>()?;
        PlFunction::interpolate(nodes)
    }
}
