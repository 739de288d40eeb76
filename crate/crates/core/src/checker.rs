//! Validity of equations and clauses: exhaustively on finite algebras, and
//! for one-variable equations over a whole variety `V(P)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bdelta::g_kh;
use crate::chains::{ChainDescriptor, ChainError, Element, Hoop};
use crate::mcnaughton::{comb_targets, term_to_pl, PlError, PlFunction};
use crate::presentations::{Presentation, PresentationError};
use crate::scalar::{fmt_ratio, Scalar};
use crate::terms::{ParseError, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("cannot parse `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error("algebra {0} is infinite; exhaustive checking needs a finite carrier")]
    NotFinite(String),
    #[error(
        "point evaluation and function comparison disagree on {equation} over {presentation}: \
         points say {points}, functions say {functions}"
    )]
    RouteDisagreement {
        equation: String,
        presentation: String,
        points: String,
        functions: String,
    },
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Pl(#[from] PlError),
}

fn parse_term(text: &str) -> Result<Term, CheckError> {
    text.trim().parse().map_err(|e: ParseError| CheckError::Parse {
        text: text.to_string(),
        reason: e.to_string(),
    })
}

/// `p ≈ q`, written `p ~ q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut v = self.lhs.variables();
        v.extend(self.rhs.variables());
        v
    }

    pub fn holds<A: Hoop>(&self, alg: &A, env: &BTreeMap<String, A::Elem>) -> Result<bool, ChainError> {
        Ok(alg.eval(&self.lhs, env)? == alg.eval(&self.rhs, env)?)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ~ {}", self.lhs, self.rhs)
    }
}

impl FromStr for Equation {
    type Err = CheckError;

    fn from_str(s: &str) -> Result<Self, CheckError> {
        let (l, r) = s.split_once('~').ok_or_else(|| CheckError::Parse {
            text: s.to_string(),
            reason: "expected `p ~ q`".into(),
        })?;
        Ok(Equation::new(parse_term(l)?, parse_term(r)?))
    }
}

/// `Σ ⇒ Γ`: if every premise holds then some conclusion holds. An empty
/// premise list makes it a disjunction of equations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    pub premises: Vec<Equation>,
    pub conclusions: Vec<Equation>,
}

/// A clause with a single conclusion.
pub type Quasiequation = Clause;

impl Clause {
    pub fn new(premises: Vec<Equation>, conclusions: Vec<Equation>) -> Result<Self, CheckError> {
        if conclusions.is_empty() {
            return Err(CheckError::Parse {
                text: String::new(),
                reason: "a clause needs at least one conclusion".into(),
            });
        }
        Ok(Clause { premises, conclusions })
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.premises
            .iter()
            .chain(&self.conclusions)
            .flat_map(Equation::variables)
            .collect()
    }

    pub fn holds<A: Hoop>(&self, alg: &A, env: &BTreeMap<String, A::Elem>) -> Result<bool, ChainError> {
        for e in &self.premises {
            if !e.holds(alg, env)? {
                return Ok(true);
            }
        }
        for e in &self.conclusions {
            if e.holds(alg, env)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Equation], sep: &str| v.iter().map(Equation::to_string).collect::<Vec<_>>().join(sep);
        if self.premises.is_empty() {
            write!(f, "=> {}", join(&self.conclusions, " | "))
        } else {
            write!(f, "{} => {}", join(&self.premises, ", "), join(&self.conclusions, " | "))
        }
    }
}

impl FromStr for Clause {
    type Err = CheckError;

    /// `e1, e2 => f1 | f2`; a line without `=>` is a single equation.
    fn from_str(s: &str) -> Result<Self, CheckError> {
        let (prem, concl) = match s.split_once("=>") {
            Some((p, c)) => (p, c),
            None => ("", s),
        };
        let premises = prem
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Equation>, _>>()?;
        let conclusions = concl
            .split('|')
            .filter(|t| !t.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Equation>, _>>()?;
        Clause::new(premises, conclusions).map_err(|_| CheckError::Parse {
            text: s.to_string(),
            reason: "a clause needs at least one conclusion".into(),
        })
    }
}

pub type Assignment<E> = BTreeMap<String, E>;

/// `Valid`, or `Invalid` with the first failing assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<E> {
    Valid,
    Invalid(Assignment<E>),
}

impl<E> Verdict<E> {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Calls `visit` on every assignment of carrier elements to `vars`, in
/// lexicographic order (first variable most significant); stops at the first
/// assignment for which `visit` returns `false` and returns it.
fn first_failure<E: Clone, F>(
    vars: &BTreeSet<String>,
    carrier: &[E],
    mut visit: F,
) -> Result<Option<Assignment<E>>, ChainError>
where
    F: FnMut(&Assignment<E>) -> Result<bool, ChainError>,
{
    let vars: Vec<&String> = vars.iter().collect();
    if carrier.is_empty() {
        return Ok(None);
    }
    let mut idx = vec![0usize; vars.len()];
    loop {
        let env: Assignment<E> = vars
            .iter()
            .zip(&idx)
            .map(|(v, &i)| ((*v).clone(), carrier[i].clone()))
            .collect();
        if !visit(&env)? {
            return Ok(Some(env));
        }
        let mut pos = vars.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < carrier.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn carrier<A: Hoop>(alg: &A) -> Result<Vec<A::Elem>, CheckError> {
    alg.elements().ok_or_else(|| CheckError::NotFinite(alg.name()))
}

/// Exhaustive check of `e` over a finite algebra.
pub fn valid_identity_finite<A: Hoop>(e: &Equation, alg: &A) -> Result<Verdict<A::Elem>, CheckError> {
    let els = carrier(alg)?;
    let failure = first_failure(&e.variables(), &els, |env| e.holds(alg, env))?;
    Ok(failure.map_or(Verdict::Valid, Verdict::Invalid))
}

/// Exhaustive check of a clause over a finite algebra.
pub fn valid_clause_finite<A: Hoop>(c: &Clause, alg: &A) -> Result<Verdict<A::Elem>, CheckError> {
    let els = carrier(alg)?;
    let failure = first_failure(&c.variables(), &els, |env| c.holds(alg, env))?;
    Ok(failure.map_or(Verdict::Valid, Verdict::Invalid))
}

/// A chain of `V(P)` together with the assignment refuting an equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainWitness<S> {
    pub chain: ChainDescriptor,
    pub assignment: Assignment<Element<S>>,
}

impl<S: Scalar> fmt::Display for ChainWitness<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{} at {}", self.chain, parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarietyVerdict<S> {
    Valid,
    /// Refuted in the named chain; `reason` describes where the two
    /// functions differ (for one-variable equations).
    Invalid { witness: ChainWitness<S>, reason: String },
    /// Equations in several variables over a variety with infinite members.
    Undecided,
}

/// One-variable points that decide validity in `V(P)`: every element of
/// `Ł_k` for `k ∈ (I∪J)↓`, `g_{k,h}` and `¬g_{k,h}` in `Ł_{k,h}` for
/// `k ∈ J↓`, and `c` in `C_ω` when `J ∪ K ≠ ∅`.
pub fn test_points<S: Scalar>(p: &Presentation) -> Result<Vec<(ChainDescriptor, Element<S>)>, CheckError> {
    let mut out = Vec::new();
    for k in p.ij_down() {
        let chain = ChainDescriptor::Fin(k).chain::<S>();
        for e in chain.elements().expect("finite chain") {
            out.push((ChainDescriptor::Fin(k), e));
        }
    }
    for k in p.j_down() {
        for h in (0..k).filter(|h| num_integer::gcd(*h, k) == 1) {
            let d = ChainDescriptor::Lex(k, h);
            let g = g_kh::<S>(k, h).map_err(|e| CheckError::Parse {
                text: format!("({k},{h})"),
                reason: e.to_string(),
            })?;
            let ng = d.chain::<S>().neg(&g)?;
            out.push((d, g));
            out.push((d, ng));
        }
    }
    if !p.j.is_empty() || p.omega {
        out.push((ChainDescriptor::NegCone, Element::NegCone(-S::one())));
    }
    Ok(out)
}

fn points_route<S: Scalar>(
    e: &Equation,
    var: &str,
    p: &Presentation,
) -> Result<Option<ChainWitness<S>>, CheckError> {
    for (d, x) in test_points::<S>(p)? {
        let chain = d.chain::<S>();
        let env: Assignment<Element<S>> = [(var.to_string(), x)].into();
        if !e.holds(&chain, &env)? {
            return Ok(Some(ChainWitness {
                chain: d,
                assignment: env,
            }));
        }
    }
    Ok(None)
}

/// `None` if the two functions agree at the points of `𝓘` and on a
/// neighbourhood of each point of `𝒥`; otherwise where they differ.
fn functions_route<S: Scalar>(e: &Equation, p: &Presentation) -> Result<Option<String>, CheckError> {
    compare_functions(&term_to_pl::<S>(&e.lhs)?, &term_to_pl::<S>(&e.rhs)?, p)
}

fn compare_functions<S: Scalar>(
    f: &PlFunction<S>,
    g: &PlFunction<S>,
    p: &Presentation,
) -> Result<Option<String>, CheckError> {
    let targets = comb_targets::<S>(p)?;
    for u in &targets.script_i {
        if f.eval(u)? != g.eval(u)? {
            return Ok(Some(format!("values differ at {}", fmt_ratio(u))));
        }
    }
    for v in &targets.script_j {
        if !f.locally_equal(g, v) {
            return Ok(Some(format!("functions differ near {}", fmt_ratio(v))));
        }
    }
    Ok(None)
}

/// Decides `e` over `V(P)`. One-variable equations are decided twice, by
/// evaluation at [`test_points`] and by comparing the functions of the two
/// sides; the answers must coincide. Equations in more variables are decided
/// on the finite generators when `V(P)` is locally finite and reported
/// [`VarietyVerdict::Undecided`] otherwise.
pub fn valid_identity_variety<S: Scalar>(
    e: &Equation,
    p: &Presentation,
) -> Result<VarietyVerdict<S>, CheckError> {
    p.require_reduced()?;
    let vars = e.variables();
    if vars.len() > 1 {
        if !p.is_locally_finite() {
            return Ok(VarietyVerdict::Undecided);
        }
        for &n in &p.i {
            let chain = ChainDescriptor::Fin(n).chain::<S>();
            if let Verdict::Invalid(assignment) = valid_identity_finite(e, &chain)? {
                return Ok(VarietyVerdict::Invalid {
                    witness: ChainWitness {
                        chain: ChainDescriptor::Fin(n),
                        assignment,
                    },
                    reason: "fails in a generator".into(),
                });
            }
        }
        return Ok(VarietyVerdict::Valid);
    }
    let var = vars.into_iter().next().unwrap_or_else(|| "x".to_string());
    let points = points_route::<S>(e, &var, p)?;
    let functions = functions_route::<S>(e, p)?;
    combine_routes(points, functions, || e.to_string(), p)
}

fn combine_routes<S: Scalar>(
    points: Option<ChainWitness<S>>,
    functions: Option<String>,
    equation: impl FnOnce() -> String,
    p: &Presentation,
) -> Result<VarietyVerdict<S>, CheckError> {
    match (points, functions) {
        (None, None) => Ok(VarietyVerdict::Valid),
        (Some(witness), Some(reason)) => Ok(VarietyVerdict::Invalid { witness, reason }),
        (points, functions) => Err(CheckError::RouteDisagreement {
            equation: equation(),
            presentation: p.to_string(),
            points: points.map_or("valid".into(), |w| format!("invalid in {w}")),
            functions: functions.unwrap_or_else(|| "valid".into()),
        }),
    }
}

/// `f ≈ g` for one-variable functions, checked exhaustively in a finite
/// chain by reading the functions off at each element.
pub fn valid_function_identity_finite<S: Scalar>(
    f: &PlFunction<S>,
    g: &PlFunction<S>,
    n: u64,
) -> Result<Verdict<Element<S>>, CheckError> {
    let chain = ChainDescriptor::Fin(n).chain::<S>();
    for x in chain.elements().expect("finite chain") {
        if f.apply_to_element(&x) != g.apply_to_element(&x) {
            return Ok(Verdict::Invalid([("x".to_string(), x)].into()));
        }
    }
    Ok(Verdict::Valid)
}

/// `f ≈ g` over `V(P)` for one-variable functions, by the same two routes as
/// [`valid_identity_variety`]: values transported to the [`test_points`],
/// and germ comparison at the comb targets.
pub fn valid_function_identity_variety<S: Scalar>(
    f: &PlFunction<S>,
    g: &PlFunction<S>,
    p: &Presentation,
) -> Result<VarietyVerdict<S>, CheckError> {
    p.require_reduced()?;
    let points = test_points::<S>(p)?
        .into_iter()
        .find(|(_, x)| f.apply_to_element(x) != g.apply_to_element(x))
        .map(|(chain, x)| ChainWitness {
            chain,
            assignment: [("x".to_string(), x)].into(),
        });
    let functions = compare_functions(f, g, p)?;
    combine_routes(points, functions, || format!("{f} ~ {g}"), p)
}

/// Whether a rule holds in `Ł_n`. Tabular logics are structurally complete,
/// so for the logic of `Ł_n` this also decides admissibility.
pub fn derivable_rule_tabular<S: Scalar>(
    c: &Clause,
    n: u64,
) -> Result<Verdict<Element<S>>, CheckError> {
    if n == 0 {
        return Err(CheckError::Parse {
            text: "0".into(),
            reason: "n must be positive".into(),
        });
    }
    valid_clause_finite(c, &ChainDescriptor::Fin(n).chain::<S>())
}

pub const TABULAR_NOTE: &str =
    "the finite-chain logic is structurally complete, so derivable and admissible rules coincide";
