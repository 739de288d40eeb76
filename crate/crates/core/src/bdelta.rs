//! The product `A_Δ` of chains indexed by `Δ = Δ_I ∪ Δ_J ∪ Δ_K`, its
//! distinguished element `ḡ` (which generates the free one-generated algebra
//! of `V(P)`), and executable checks of the embeddings of `Ł_a`, `C_ω` and
//! `Ł_{j,1}` into it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chains::{
    bounded_closure, generate_subalgebra, Chain, ChainDescriptor, ChainError, Element, Hoop,
    ProductAlgebra, ProductElement,
};
use crate::mcnaughton::{PlError, PlFunction};
use crate::presentations::{Presentation, PresentationError};
use crate::scalar::{ratio, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeltaError {
    #[error("{h} and {k} are not coprime with {h} < {k}")]
    NotCoprime { k: u64, h: u64 },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Pl(#[from] PlError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// An index `(k, h, i)`: factors `Ł_{k,h}` for `i ∈ {0,1}`, `Ł_k` for `i = 2`,
/// `C_ω` for `i = 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DeltaTriple {
    pub k: u64,
    pub h: u64,
    pub i: u8,
}

impl DeltaTriple {
    pub const fn new(k: u64, h: u64, i: u8) -> Self {
        DeltaTriple { k, h, i }
    }

    pub fn factor(self) -> ChainDescriptor {
        match self.i {
            0 | 1 => ChainDescriptor::Lex(self.k, self.h),
            2 => ChainDescriptor::Fin(self.k),
            _ => ChainDescriptor::NegCone,
        }
    }
}

impl fmt::Display for DeltaTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.k, self.h, self.i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaIndex {
    pub triples: Vec<DeltaTriple>,
}

impl DeltaIndex {
    pub fn factors(&self) -> Vec<ChainDescriptor> {
        self.triples.iter().map(|t| t.factor()).collect()
    }

    pub fn algebra<S: Scalar>(&self) -> ProductAlgebra<S> {
        ProductAlgebra::new(self.factors())
    }

    pub fn position(&self, t: DeltaTriple) -> Option<usize> {
        self.triples.iter().position(|&x| x == t)
    }
}

fn coprime_below(k: u64) -> impl Iterator<Item = u64> {
    (0..k).filter(move |h| h.gcd(&k) == 1)
}

/// `Δ_I`, then `Δ_J`, then `Δ_K`, each in increasing `(k, h, i)` order.
pub fn delta_index(p: &Presentation) -> Result<DeltaIndex, DeltaError> {
    p.require_reduced()?;
    let mut triples = Vec::new();
    for k in p.i_down() {
        triples.extend(coprime_below(k).map(|h| DeltaTriple::new(k, h, 2)));
    }
    for k in p.j_down() {
        for h in coprime_below(k) {
            triples.push(DeltaTriple::new(k, h, 0));
            triples.push(DeltaTriple::new(k, h, 1));
        }
    }
    if p.j.is_empty() && p.omega {
        triples.push(DeltaTriple::new(0, 0, 3));
    }
    Ok(DeltaIndex { triples })
}

/// The generator `g_{k,h} = (r, s)` of `Ł_{k,h}` lying below its negation:
/// `|r·h − s·k| = 1`, `0 < r < k`, and of the two such pairs `(r, s)` and
/// `(k − r, h − s)` the lexicographically smaller. `g_{1,0} = (0,1)`.
pub fn g_kh<S: Scalar>(k: u64, h: u64) -> Result<Element<S>, DeltaError> {
    if k == 0 || !(h < k || (k, h) == (1, 0)) || h.gcd(&k) != 1 {
        return Err(DeltaError::NotCoprime { k, h });
    }
    if k == 1 {
        return Ok(lex_element(1, 0, 0, 1));
    }
    let (ki, hi) = (k as i128, h as i128);
    // h·x + k·y = 1, so r = x mod k satisfies r·h ≡ 1 (mod k)
    let egcd = hi.extended_gcd(&ki);
    let r = egcd.x.rem_euclid(ki);
    let s = (r * hi - 1) / ki;
    let (r2, s2) = (ki - r, hi - s);
    let (r, s) = if (r, s) <= (r2, s2) { (r, s) } else { (r2, s2) };
    Ok(lex_element(k, h, r, s))
}

fn lex_element<S: Scalar>(n: u64, k: u64, a: i128, b: i128) -> Element<S> {
    Element::Lex {
        n,
        k,
        a: S::from_i128(a).expect("scalar holds chain coordinate"),
        b: S::from_i128(b).expect("scalar holds chain coordinate"),
    }
}

/// `A_Δ` together with `ḡ`.
pub fn canonical_generator<S: Scalar>(
    p: &Presentation,
) -> Result<(DeltaIndex, ProductAlgebra<S>, ProductElement<S>), DeltaError> {
    let delta = delta_index(p)?;
    let alg = delta.algebra::<S>();
    let coords = delta
        .triples
        .iter()
        .enumerate()
        .map(|(pos, t)| {
            Ok(match t.i {
                2 => Element::Fin {
                    n: t.k,
                    a: S::from_u64_lossless(t.h),
                },
                3 => Element::NegCone(-S::one()),
                0 => g_kh(t.k, t.h)?,
                _ => alg.factor(pos).neg(&g_kh(t.k, t.h)?)?,
            })
        })
        .collect::<Result<Vec<_>, DeltaError>>()?;
    Ok((delta, alg, ProductElement(coords)))
}

/// `f` applied to every coordinate, read off the function's values and
/// germs.
pub fn apply_coordinatewise<S: Scalar>(f: &PlFunction<S>, x: &ProductElement<S>) -> ProductElement<S> {
    ProductElement(x.0.iter().map(|e| f.apply_to_element(e)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    VerifiedBounded,
    /// The bounded search found no witness; this is not a refutation.
    Inconclusive,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateRecord {
    pub index: String,
    pub factor: String,
    pub generator: String,
    pub value: String,
}

/// Outcome of one embedding check, in the shape emitted as JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub presentation: String,
    pub theorem: String,
    pub witness: Option<String>,
    pub coordinates: Vec<CoordinateRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    pub status: Status,
    pub detail: String,
}

impl VerificationRecord {
    fn new(p: &Presentation, theorem: &str) -> Self {
        VerificationRecord {
            presentation: p.to_string(),
            theorem: theorem.to_string(),
            witness: None,
            coordinates: Vec::new(),
            closure_size: None,
            depth: None,
            certificate: None,
            status: Status::Failed,
            detail: String::new(),
        }
    }

    fn fill_coordinates<S: Scalar>(
        &mut self,
        delta: &DeltaIndex,
        g: &ProductElement<S>,
        value: &ProductElement<S>,
    ) {
        self.coordinates = delta
            .triples
            .iter()
            .zip(g.0.iter().zip(&value.0))
            .map(|(t, (gc, vc))| CoordinateRecord {
                index: t.to_string(),
                factor: t.factor().to_string(),
                generator: gc.to_string(),
                value: vc.to_string(),
            })
            .collect();
    }

    pub fn is_success(&self) -> bool {
        matches!(self.status, Status::Verified | Status::VerifiedBounded)
    }
}

fn product_of(set: impl IntoIterator<Item = u64>) -> u64 {
    set.into_iter().product::<u64>().max(1)
}

fn is_top<S: Scalar>(alg: &ProductAlgebra<S>, pos: usize, e: &Element<S>) -> bool {
    alg.factor(pos).top() == *e
}

fn is_bottom<S: Scalar>(alg: &ProductAlgebra<S>, pos: usize, e: &Element<S>) -> bool {
    alg.factor(pos).bottom().as_ref() == Some(e)
}

/// Coordinates of `f(ḡ)` that differ from the predicted bottom/top pattern.
fn pattern_mismatch<S: Scalar>(
    delta: &DeltaIndex,
    alg: &ProductAlgebra<S>,
    value: &ProductElement<S>,
    zeros: &BTreeSet<DeltaTriple>,
) -> Option<String> {
    for (pos, (t, e)) in delta.triples.iter().zip(&value.0).enumerate() {
        let ok = if zeros.contains(t) {
            is_bottom(alg, pos, e)
        } else {
            is_top(alg, pos, e)
        };
        if !ok {
            let want = if zeros.contains(t) { "bottom" } else { "top" };
            return Some(format!("coordinate {t} is {e}, expected {want}"));
        }
    }
    None
}

fn witness_embed1<S: Scalar>(a: u64, m: u64) -> Result<PlFunction<S>, PlError> {
    if a == 1 {
        // (x → x²) → x
        return "L(0,0;1/2,1;1,1)".parse();
    }
    let (a, m2) = (a as i64, 2 * m as i64);
    let q = |n: i64, d: i64| ratio::<S>(n, d);
    let center = q(1, a);
    let delta = q(1, m2);
    PlFunction::interpolate(vec![
        (Ratio::zero(), Ratio::one()),
        (&center - &delta, Ratio::one()),
        (center.clone(), Ratio::zero()),
        (&center + &delta, Ratio::one()),
        (Ratio::one(), Ratio::one()),
    ])
}

/// `Ł_a` embeds into `B_Δ` for `a ∈ I`: the witness `f` is 0 exactly at the
/// `Ł_a` coordinate of `ḡ` whose entry is 1, so `ḡ ∨ f(ḡ)` is top except
/// there and generates a copy of `Ł_a`.
pub fn verify_embed_finite_chain<S: Scalar>(
    p: &Presentation,
    a: u64,
) -> Result<VerificationRecord, DeltaError> {
    p.require_reduced()?;
    if !p.i.contains(&a) {
        return Err(DeltaError::Precondition(format!("{a} is not in I")));
    }
    let (delta, alg, g) = canonical_generator::<S>(p)?;
    let m = product_of(p.i.union(&p.j).copied());
    let f = witness_embed1::<S>(a, m)?;
    let mut rec = VerificationRecord::new(p, "embed1");
    rec.witness = Some(f.to_string());
    let fg = apply_coordinatewise(&f, &g);
    rec.fill_coordinates(&delta, &g, &fg);
    let zero_at = if a == 1 {
        DeltaTriple::new(1, 0, 2)
    } else {
        DeltaTriple::new(a, 1, 2)
    };
    if let Some(msg) = pattern_mismatch(&delta, &alg, &fg, &[zero_at].into()) {
        rec.detail = msg;
        return Ok(rec);
    }
    let w = alg.join(&g, &fg)?;
    let closure = generate_subalgebra(&alg, &[w], 4 * a as usize + 16)?;
    let els = closure.elements();
    rec.closure_size = Some(els.len());
    let is_chain = els
        .iter()
        .all(|x| els.iter().all(|y| alg.leq(x, y).unwrap() || alg.leq(y, x).unwrap()));
    if closure.is_finite() && els.len() as u64 == a + 1 && is_chain {
        rec.status = Status::Verified;
        rec.detail = format!("generated subalgebra is a chain with {} elements", a + 1);
    } else {
        rec.detail = format!("generated subalgebra has {} elements", els.len());
    }
    Ok(rec)
}

fn witness_embed2<S: Scalar>(m: u64) -> Result<PlFunction<S>, PlError> {
    let m = m as i64;
    let mut nodes = vec![(Ratio::zero(), Ratio::one())];
    if m > 1 {
        nodes.push((ratio(m - 1, m), Ratio::one()));
    }
    nodes.push((ratio(m, m + 1), ratio(m, m + 1)));
    nodes.push((Ratio::one(), Ratio::one()));
    PlFunction::interpolate(nodes)
}

/// `C_ω` embeds into `B_Δ` for `P = (I, ∅, {ω})`: with `m = ∏ I`, the
/// function of `x^m → x^{m+1}` is 1 at every point of `Δ_I` and the identity
/// near 1, so `f(ḡ)` is top except for `c` in the cancellative coordinate.
pub fn verify_embed_comega<S: Scalar>(p: &Presentation) -> Result<VerificationRecord, DeltaError> {
    p.require_reduced()?;
    if !p.omega {
        return Err(DeltaError::Precondition("K must be {omega}".into()));
    }
    let (delta, alg, g) = canonical_generator::<S>(p)?;
    let mut rec = VerificationRecord::new(p, "embed2");
    if p.i.is_empty() {
        rec.fill_coordinates(&delta, &g, &g);
        rec.status = Status::Verified;
        rec.detail = "the product is C_omega itself".into();
        return Ok(rec);
    }
    let f = witness_embed2::<S>(product_of(p.i.iter().copied()))?;
    rec.witness = Some(f.to_string());
    let fg = apply_coordinatewise(&f, &g);
    rec.fill_coordinates(&delta, &g, &fg);
    for (pos, (t, e)) in delta.triples.iter().zip(&fg.0).enumerate() {
        let ok = match t.i {
            3 => *e == Element::NegCone(-S::one()),
            _ => is_top(&alg, pos, e),
        };
        if !ok {
            rec.detail = format!("coordinate {t} is {e}");
            return Ok(rec);
        }
    }
    rec.status = Status::Verified;
    rec.detail = "f(g) is top except c at the cancellative coordinate".into();
    Ok(rec)
}

fn witness_embed3<S: Scalar>(j: u64, m: u64) -> Result<PlFunction<S>, PlError> {
    let m3 = 3 * m as i64;
    let q = |n: i64, d: i64| ratio::<S>(n, d);
    let (zero, one) = (Ratio::<S>::zero(), Ratio::<S>::one());
    if j == 1 {
        return PlFunction::interpolate(vec![
            (zero.clone(), zero.clone()),
            (q(1, m3), zero),
            (q(2, m3), one.clone()),
            (one.clone(), one),
        ]);
    }
    let c = q(1, j as i64);
    let (d1, d2) = (q(1, m3), q(2, m3));
    PlFunction::interpolate(vec![
        (zero, one.clone()),
        (&c - &d2, one.clone()),
        (&c - &d1, Ratio::zero()),
        (&c + &d1, Ratio::zero()),
        (&c + &d2, one.clone()),
        (one.clone(), one),
    ])
}

/// Coordinates where the `Ł_{j,1}` witness sends `ḡ` to the bottom.
///
/// Besides the `Ł_{j,h}` coordinates whose generator sits at `1/j` (or at 0
/// when `j = 1`), a finite factor `Ł_j` with entry 1 (or `Ł_1` when `j = 1`)
/// is sent to 0 as well, since the witness vanishes at that point.
pub fn predicted_zeros_lj1(delta: &DeltaIndex, j: u64) -> BTreeSet<DeltaTriple> {
    let mut zeros = BTreeSet::new();
    let lex: &[DeltaTriple] = &match j {
        1 => vec![DeltaTriple::new(1, 0, 0)],
        2 => vec![DeltaTriple::new(2, 1, 0), DeltaTriple::new(2, 1, 1)],
        _ => vec![DeltaTriple::new(j, 1, 0), DeltaTriple::new(j, j - 1, 0)],
    };
    zeros.extend(lex.iter().copied());
    let fin = if j == 1 {
        DeltaTriple::new(1, 0, 2)
    } else {
        DeltaTriple::new(j, 1, 2)
    };
    if delta.position(fin).is_some() {
        zeros.insert(fin);
    }
    zeros
}

/// Whether the assignment `ga ↦ gb` respects every equation between
/// one-variable terms of depth at most `depth`: the values of all such terms
/// at `ga` and at `gb`, paired term by term, must form a bijection.
pub fn bisimilar_to_depth<A: Hoop, B: Hoop>(
    a: &A,
    ga: &A::Elem,
    b: &B,
    gb: &B::Elem,
    depth: usize,
) -> Result<bool, ChainError> {
    let mut fwd: BTreeMap<A::Elem, B::Elem> = BTreeMap::new();
    let mut bwd: BTreeMap<B::Elem, A::Elem> = BTreeMap::new();
    let mut insert = |x: A::Elem, y: B::Elem, fresh: &mut Vec<(A::Elem, B::Elem)>| -> bool {
        match (fwd.get(&x), bwd.get(&y)) {
            (Some(y0), Some(x0)) => *y0 == y && *x0 == x,
            (None, None) => {
                fwd.insert(x.clone(), y.clone());
                bwd.insert(y.clone(), x.clone());
                fresh.push((x, y));
                true
            }
            _ => false,
        }
    };
    let mut level: Vec<(A::Elem, B::Elem)> = Vec::new();
    for (x, y) in [(ga.clone(), gb.clone()), (a.top(), b.top())] {
        if !insert(x, y, &mut level) {
            return Ok(false);
        }
    }
    for _ in 0..depth {
        let mut fresh = Vec::new();
        for (x1, y1) in &level {
            for (x2, y2) in &level {
                let pairs = [
                    (a.mul(x1, x2)?, b.mul(y1, y2)?),
                    (a.imp(x1, x2)?, b.imp(y1, y2)?),
                    (a.meet(x1, x2)?, b.meet(y1, y2)?),
                    (a.join(x1, x2)?, b.join(y1, y2)?),
                ];
                for (x, y) in pairs {
                    if !insert(x, y, &mut fresh) {
                        return Ok(false);
                    }
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        level.extend(fresh);
    }
    Ok(true)
}

const MIN_CANDIDATE_DEPTH: usize = 5;
const EXTRA_CANDIDATE_DEPTH: usize = 3;

/// `Ł_{j,1}` embeds into `B_Δ` for `j ∈ J`. Checks the witness pattern of
/// `f(ḡ)`, that `ḡ ∨ f(ḡ)` restricted to its non-top coordinates is the
/// generator of `D_j`, and searches the depth-limited closure of that element
/// for an image of `g_{j,1}` passing [`bisimilar_to_depth`].
pub fn verify_embed_lj1<S: Scalar>(
    p: &Presentation,
    j: u64,
    depth: usize,
) -> Result<VerificationRecord, DeltaError> {
    p.require_reduced()?;
    if !p.j.contains(&j) {
        return Err(DeltaError::Precondition(format!("{j} is not in J")));
    }
    if depth == 0 {
        return Err(DeltaError::Precondition("depth must be at least 1".into()));
    }
    let (delta, alg, g) = canonical_generator::<S>(p)?;
    let m = product_of(p.i.union(&p.j).copied());
    let f = witness_embed3::<S>(j, m)?;
    let mut rec = VerificationRecord::new(p, "embed3");
    rec.witness = Some(f.to_string());
    rec.depth = Some(depth);
    let fg = apply_coordinatewise(&f, &g);
    rec.fill_coordinates(&delta, &g, &fg);
    let zeros = predicted_zeros_lj1(&delta, j);
    if let Some(msg) = pattern_mismatch(&delta, &alg, &fg, &zeros) {
        rec.detail = msg;
        return Ok(rec);
    }
    let w = alg.join(&g, &fg)?;
    let kept: Vec<usize> = (0..delta.triples.len())
        .filter(|&pos| !is_top(&alg, pos, &w.0[pos]))
        .collect();
    let lex_part: Vec<Element<S>> = kept
        .iter()
        .filter(|&&pos| delta.triples[pos].i != 2)
        .map(|&pos| w.0[pos].clone())
        .collect();
    let expected: Vec<Element<S>> = match j {
        1 => vec![lex_element(1, 0, 0, 1)],
        2 => vec![lex_element(2, 1, 1, 0), lex_element(2, 1, 1, 1)],
        _ => vec![lex_element(j, 1, 1, 0), lex_element(j, j - 1, 1, 1)],
    };
    if lex_part != expected {
        rec.detail = format!(
            "non-top infinite coordinates of g v f(g) are {}, not the generator of D_{j}",
            ProductElement(lex_part)
        );
        return Ok(rec);
    }
    let d_alg = ProductAlgebra::<S>::new(kept.iter().map(|&pos| delta.triples[pos].factor()));
    let d_gen = ProductElement(kept.iter().map(|&pos| w.0[pos].clone()).collect());
    let (reference, r_gen): (Chain<S>, Element<S>) = if j == 1 {
        (ChainDescriptor::Lex(1, 1).chain(), lex_element(1, 1, 0, 1))
    } else {
        (ChainDescriptor::Lex(j, 1).chain(), g_kh(j, 1)?)
    };
    // The image of g_{j,1} can sit deeper than the certification depth
    // (depth 6 for j = 6), so candidates come from a closure grown level by
    // level until one passes.
    let search_limit = depth.max(MIN_CANDIDATE_DEPTH) + EXTRA_CANDIDATE_DEPTH;
    let mut tried = BTreeSet::new();
    for level in 1..=search_limit {
        let candidates = bounded_closure(&d_alg, std::slice::from_ref(&d_gen), level)?;
        if candidates.len() == tried.len() {
            break;
        }
        for u in candidates {
            if tried.contains(&u) {
                continue;
            }
            if bisimilar_to_depth(&reference, &r_gen, &d_alg, &u, depth)? {
                rec.certificate = Some(format!(
                    "{} in {} matches {} in {} up to depth {depth} (found at closure depth {level})",
                    r_gen,
                    reference.descriptor(),
                    u,
                    d_alg.name()
                ));
                rec.status = Status::VerifiedBounded;
                rec.detail = format!("pattern holds; embedding certified to depth {depth}");
                return Ok(rec);
            }
            tried.insert(u);
        }
    }
    rec.status = Status::Inconclusive;
    rec.detail = format!("no image of the generator found in the closure up to depth {search_limit}");
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = Element<i64>;

    fn p(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    fn triples(v: &[(u64, u64, u8)]) -> Vec<DeltaTriple> {
        v.iter().map(|&(k, h, i)| DeltaTriple::new(k, h, i)).collect()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(
            delta_index(&p("I=2; K=omega")).unwrap().triples,
            triples(&[(1, 0, 2), (2, 1, 2), (0, 0, 3)])
        );
        assert_eq!(
            delta_index(&p("J=1")).unwrap().triples,
            triples(&[(1, 0, 0), (1, 0, 1)])
        );
        assert_eq!(
            delta_index(&p("I=3; J=2")).unwrap().triples,
            triples(&[(1, 0, 2), (3, 1, 2), (3, 2, 2), (1, 0, 0), (1, 0, 1), (2, 1, 0), (2, 1, 1)])
        );
        assert!(delta_index(&p("I=2; J=4")).is_err());
    }

    #[test]
    fn generators_of_lex_chains() {
        assert_eq!(g_kh::<i64>(1, 0).unwrap(), E::lex(1, 0, 0, 1));
        assert_eq!(g_kh::<i64>(2, 1).unwrap(), E::lex(2, 1, 1, 0));
        assert_eq!(g_kh::<i64>(5, 2).unwrap(), E::lex(5, 2, 2, 1));
        for k in 3..=12 {
            assert_eq!(g_kh::<i64>(k, 1).unwrap(), E::lex(k, 1, 1, 0));
            assert_eq!(g_kh::<i64>(k, k - 1).unwrap(), E::lex(k, k - 1, 1, 1));
        }
        assert!(g_kh::<i64>(4, 2).is_err());
        assert!(g_kh::<i64>(3, 3).is_err());
    }

    #[test]
    fn canonical_generator_examples() {
        let (_, _, g) = canonical_generator::<i64>(&p("I=2; K=omega")).unwrap();
        assert_eq!(g.0, vec![E::fin(1, 0), E::fin(2, 1), E::neg_cone(-1)]);
        let (_, _, g) = canonical_generator::<i64>(&p("J=1")).unwrap();
        assert_eq!(g.0, vec![E::lex(1, 0, 0, 1), E::lex(1, 0, 1, -1)]);
        let (d, _, g) = canonical_generator::<i64>(&p("I=3; J=2")).unwrap();
        assert_eq!(g.0[d.position(DeltaTriple::new(2, 1, 0)).unwrap()], E::lex(2, 1, 1, 0));
        assert_eq!(g.0[d.position(DeltaTriple::new(2, 1, 1)).unwrap()], E::lex(2, 1, 1, 1));
    }

    #[test]
    fn witness_functions_match_their_terms() {
        use crate::mcnaughton::term_to_pl;
        use crate::terms::Term;
        for m in 1..=6u32 {
            let x = Term::var("x");
            let t = Term::imp(Term::power(&x, m), Term::power(&x, m + 1));
            assert_eq!(term_to_pl::<i64>(&t).unwrap(), witness_embed2::<i64>(m as u64).unwrap());
        }
        assert_eq!(
            witness_embed3::<i64>(2, 2).unwrap().to_string(),
            "L(0,1;1/6,1;1/3,0;2/3,0;5/6,1;1,1)"
        );
    }

    #[test]
    fn finite_chain_embeddings() {
        let r = verify_embed_finite_chain::<i64>(&p("I=3; J=2"), 3).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.detail);
        assert_eq!(r.closure_size, Some(4));
        let r = verify_embed_finite_chain::<i64>(&p("I=1; K=omega"), 1).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.detail);
        assert_eq!(r.coordinates[0].value, "0");
        assert_eq!(r.coordinates[1].value, "0");
        let r = verify_embed_finite_chain::<i64>(&p("I=2"), 2).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.closure_size, Some(3));
        assert!(verify_embed_finite_chain::<i64>(&p("I=2"), 3).is_err());
    }

    #[test]
    fn cancellative_embeddings() {
        for s in ["I=2; K=omega", "K=omega", "I=2,3; K=omega"] {
            let r = verify_embed_comega::<i64>(&p(s)).unwrap();
            assert_eq!(r.status, Status::Verified, "{s}: {}", r.detail);
        }
        let r = verify_embed_comega::<i64>(&p("I=2; K=omega")).unwrap();
        let values: Vec<_> = r.coordinates.iter().map(|c| c.value.as_str()).collect();
        assert_eq!(values, ["1", "2", "-1"]);
    }

    #[test]
    fn lex_chain_embeddings() {
        let r = verify_embed_lj1::<i64>(&p("J=2"), 2, 5).unwrap();
        assert_eq!(r.witness.as_deref(), Some("L(0,1;1/6,1;1/3,0;2/3,0;5/6,1;1,1)"));
        assert_eq!(r.status, Status::VerifiedBounded, "{}", r.detail);
        for (s, j) in [("J=1", 1), ("I=3; J=2", 2), ("J=3", 3), ("I=3; J=1", 1), ("I=4; J=2", 2)] {
            let r = verify_embed_lj1::<i64>(&p(s), j, 5).unwrap();
            assert_eq!(r.status, Status::VerifiedBounded, "{s}: {}", r.detail);
        }
    }

    #[test]
    fn bisimulation_detects_non_generators() {
        let l21: Chain<i64> = ChainDescriptor::Lex(2, 1).chain();
        let g = g_kh::<i64>(2, 1).unwrap();
        assert!(bisimilar_to_depth(&l21, &g, &l21, &g, 4).unwrap());
        let l2: Chain<i64> = ChainDescriptor::Fin(2).chain();
        assert!(!bisimilar_to_depth(&l21, &g, &l2, &E::fin(2, 1), 4).unwrap());
    }

    #[test]
    fn records_serialize() {
        let r = verify_embed_comega::<i64>(&p("I=2; K=omega")).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["status"], "verified");
        assert_eq!(json["theorem"], "embed2");
        assert!(json.get("depth").is_none());
    }
}
