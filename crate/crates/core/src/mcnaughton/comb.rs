use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use super::{PlError, PlFunction};
use crate::presentations::Presentation;
use crate::scalar::{fmt_ratio, Scalar};

/// The points where a comb must be 1 on a neighbourhood (`script_j`) and the
/// points where it must take the value 1 (`script_i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombTargets<S: Clone + Integer> {
    pub script_i: BTreeSet<Ratio<S>>,
    pub script_j: BTreeSet<Ratio<S>>,
}

fn fractions_with_denominator_in<S: Scalar>(dens: &BTreeSet<u64>) -> BTreeSet<Ratio<S>> {
    let mut out = BTreeSet::new();
    for &d in dens {
        for h in 0..=d {
            if h.gcd(&d) == 1 {
                out.insert(Ratio::new(S::from_u64_lossless(h), S::from_u64_lossless(d)));
            }
        }
    }
    out
}

fn not_reduced(p: &Presentation) -> PlError {
    PlError::NotReduced(p.to_string())
}

pub fn comb_targets<S: Scalar>(p: &Presentation) -> Result<CombTargets<S>, PlError> {
    if !p.is_reduced() {
        return Err(not_reduced(p));
    }
    let script_j = if p.omega {
        [Ratio::one()].into()
    } else {
        fractions_with_denominator_in(&p.j_down())
    };
    let script_i = fractions_with_denominator_in(&p.i_down())
        .difference(&script_j)
        .cloned()
        .collect();
    Ok(CombTargets { script_i, script_j })
}

/// The first comb condition found to fail, with the offending point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CombViolation<S: Clone + Integer> {
    /// Not identically 1 around a point of `𝒥`.
    NotLocallyOne(Ratio<S>),
    /// Not 1 at a point of `𝓘`.
    NotOneAt(Ratio<S>),
    /// Identically 1 around every point of `𝓘` whose denominator divides
    /// that of the given point.
    NoSupport(Ratio<S>),
    /// Equal to 1 at every `h/d`, for a denominator outside `(I ∪ J)↓`.
    Denominator(u64),
}

impl<S: Scalar> fmt::Display for CombViolation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CombViolation::NotLocallyOne(v) => {
                write!(f, "condition 1: not locally 1 at {}", fmt_ratio(v))
            }
            CombViolation::NotOneAt(u) => write!(f, "condition 2: value at {} is not 1", fmt_ratio(u)),
            CombViolation::NoSupport(u) => write!(
                f,
                "condition 3: locally 1 at every admissible point for {}",
                fmt_ratio(u)
            ),
            CombViolation::Denominator(d) => write!(f, "condition 4: f(h/{d}) = 1 for all h"),
        }
    }
}

impl<S: Scalar> CombViolation<S> {
    pub fn condition(&self) -> u8 {
        match self {
            CombViolation::NotLocallyOne(_) => 1,
            CombViolation::NotOneAt(_) => 2,
            CombViolation::NoSupport(_) => 3,
            CombViolation::Denominator(_) => 4,
        }
    }
}

/// Length of the longest relatively open interval of `[0,1]` on which
/// `f < 1`; zero when `f ≡ 1`.
fn longest_dip<S: Scalar>(f: &PlFunction<S>) -> Ratio<S> {
    let mut longest = Ratio::zero();
    let mut start: Option<Ratio<S>> = None;
    for w in f.nodes().windows(2) {
        let ((t0, x0), (t1, x1)) = (&w[0], &w[1]);
        let below = !(x0.is_one() && x1.is_one());
        if below && start.is_none() {
            start = Some(t0.clone());
        }
        if x1.is_one() {
            if let Some(s) = start.take() {
                longest = longest.max(t1 - s);
            }
        }
    }
    longest
}

/// `d* = ⌊1/ℓ⌋ + 1` for the longest dip `ℓ`, or `None` when `f ≡ 1`.
///
/// An open interval longer than `1/d` contains some `h/d` with `0 < h < d`,
/// and a dip of the form `[0, b)` contains `0/d`. No dip reaches 1 because
/// `f(1) = 1`. So for `d ≥ d*` the longest dip alone supplies an `h/d` with
/// `f(h/d) < 1`.
pub fn condition4_cutoff<S: Scalar>(f: &PlFunction<S>) -> Option<u64> {
    let l = longest_dip(f);
    if l.is_zero() {
        return None;
    }
    let inv = l.recip().floor().to_integer();
    Some(inv.to_u64().expect("dip length is at least 1/u64::MAX") + 1)
}

/// Denominators `d ≤ d_max` outside `(I ∪ J)↓` at which `f(h/d) = 1` for all
/// `0 ≤ h < d`, found by evaluating every point.
pub fn condition4_direct<S: Scalar>(f: &PlFunction<S>, p: &Presentation, d_max: u64) -> Vec<u64> {
    let allowed = p.ij_down();
    (1..=d_max)
        .filter(|d| !allowed.contains(d))
        .filter(|&d| all_one_at_denominator(f, d))
        .collect()
}

fn all_one_at_denominator<S: Scalar>(f: &PlFunction<S>, d: u64) -> bool {
    let den = S::from_u64_lossless(d);
    (0..d).all(|h| {
        f.eval(&Ratio::new(S::from_u64_lossless(h), den.clone()))
            .unwrap()
            .is_one()
    })
}

/// Checks the four comb conditions for `P`; `Ok(())` means `f(x) ≈ 1`
/// axiomatizes `V(P)`. Conditions are tried in the order 1, 2, 4, 3, so a
/// function that is 1 everywhere is reported through its missing
/// denominator.
pub fn is_comb<S: Scalar>(f: &PlFunction<S>, p: &Presentation) -> Result<Result<(), CombViolation<S>>, PlError> {
    let targets = comb_targets::<S>(p)?;
    for v in &targets.script_j {
        if !f.locally_one(v) {
            return Ok(Err(CombViolation::NotLocallyOne(v.clone())));
        }
    }
    for u in &targets.script_i {
        if !f.eval(u).unwrap().is_one() {
            return Ok(Err(CombViolation::NotOneAt(u.clone())));
        }
    }
    let allowed = p.ij_down();
    match condition4_cutoff(f) {
        None => {
            let d = (1..).find(|d| !allowed.contains(d)).unwrap();
            return Ok(Err(CombViolation::Denominator(d)));
        }
        Some(cutoff) => {
            for d in (1..cutoff).filter(|d| !allowed.contains(d)) {
                if all_one_at_denominator(f, d) {
                    return Ok(Err(CombViolation::Denominator(d)));
                }
            }
        }
    }
    for u in &targets.script_i {
        let supported = targets
            .script_i
            .iter()
            .any(|v| u.denom().is_multiple_of(v.denom()) && !f.locally_one(v));
        if !supported {
            return Ok(Err(CombViolation::NoSupport(u.clone())));
        }
    }
    Ok(Ok(()))
}

/// Builds a comb for `P`: plateaus of radius `1/N` with ramps of slope `±N`
/// around the points of `𝒥`, spikes of half-width `1/N` at the points of
/// `𝓘`, value 0 elsewhere. `N` is a multiple of every denominator so the
/// pieces keep integer intercepts.
pub fn make_comb<S: Scalar>(p: &Presentation) -> Result<PlFunction<S>, PlError> {
    let targets = comb_targets::<S>(p)?;
    let mut special: BTreeSet<Ratio<S>> = targets.script_i.union(&targets.script_j).cloned().collect();
    special.insert(Ratio::zero());
    special.insert(Ratio::one());
    let special: Vec<Ratio<S>> = special.into_iter().collect();
    let gap = special
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .expect("0 and 1 are special");
    let lcm = p
        .ij_down()
        .into_iter()
        .fold(S::one(), |acc, d| acc.lcm(&S::from_u64_lossless(d)));
    // a plateau with its ramps spans 4/N, two of them must fit in one gap
    let five = Ratio::from_integer(S::from_u64_lossless(5));
    let least = (five / gap).ceil().to_integer();
    let mut n = least.div_ceil(&lcm) * lcm;
    for _ in 0..8 {
        let f = comb_with_width(&targets, &n)?;
        if is_comb(&f, p)?.is_ok() {
            return Ok(f);
        }
        n = n * S::from_u64_lossless(2);
    }
    Err(PlError::CombConstruction(p.to_string()))
}

fn comb_with_width<S: Scalar>(targets: &CombTargets<S>, n: &S) -> Result<PlFunction<S>, PlError> {
    let step = Ratio::new(S::one(), n.clone());
    let two = &step + &step;
    let (zero, one) = (Ratio::<S>::zero(), Ratio::<S>::one());
    let mut nodes: Vec<(Ratio<S>, Ratio<S>)> = vec![(zero.clone(), zero.clone()), (one.clone(), zero.clone())];
    let mut push = |t: Ratio<S>, x: &Ratio<S>| {
        if t >= zero && t <= one {
            nodes.push((t, x.clone()));
        }
    };
    for v in &targets.script_j {
        push(v - &two, &zero);
        push(v - &step, &one);
        push(v.clone(), &one);
        push(v + &step, &one);
        push(v + &two, &zero);
    }
    for u in &targets.script_i {
        push(u - &step, &zero);
        push(u.clone(), &one);
        push(u + &step, &zero);
    }
    // special points override the default zeros at 0 and 1
    nodes.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    nodes.dedup_by(|later, earlier| later.0 == earlier.0);
    PlFunction::interpolate(nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = PlFunction<i64>;

    fn p(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    fn set(v: &[(i64, i64)]) -> BTreeSet<Ratio<i64>> {
        v.iter().map(|&(n, d)| q(n, d)).collect()
    }

    #[test]
    fn targets() {
        let t = comb_targets::<i64>(&p("I=2")).unwrap();
        assert!(t.script_j.is_empty());
        assert_eq!(t.script_i, set(&[(0, 1), (1, 2), (1, 1)]));
        let t = comb_targets::<i64>(&p("I=2; K=omega")).unwrap();
        assert_eq!(t.script_j, set(&[(1, 1)]));
        assert_eq!(t.script_i, set(&[(0, 1), (1, 2)]));
        let t = comb_targets::<i64>(&p("J=2")).unwrap();
        assert_eq!(t.script_j, set(&[(0, 1), (1, 2), (1, 1)]));
        assert!(t.script_i.is_empty());
        assert!(comb_targets::<i64>(&p("I=2; J=4")).is_err());
    }

    #[test]
    fn comb_checks() {
        let f: F = "L(0,1;1/4,0;1/2,1;3/4,0;1,1)".parse().unwrap();
        assert_eq!(is_comb(&f, &p("I=2")).unwrap(), Ok(()));
        assert_eq!(
            is_comb(&F::one(), &p("I=2")).unwrap(),
            Err(CombViolation::Denominator(3))
        );
        let g: F = "L(0,1;1/4,0;3/4,0;7/8,1;1,1)".parse().unwrap();
        assert_eq!(is_comb(&g, &p("I=1; K=omega")).unwrap(), Ok(()));
        // the same function is not a comb for Ł_2: f(1/2) = 0
        assert_eq!(
            is_comb(&g, &p("I=2; K=omega")).unwrap(),
            Err(CombViolation::NotOneAt(q(1, 2)))
        );
        assert_eq!(
            is_comb(&F::identity(), &p("K=omega")).unwrap(),
            Err(CombViolation::NotLocallyOne(q(1, 1)))
        );
    }

    #[test]
    fn cutoff_is_from_longest_dip() {
        let f: F = "L(0,1;1/4,0;1/2,1;3/4,0;1,1)".parse().unwrap();
        assert_eq!(condition4_cutoff(&f), Some(3));
        assert_eq!(condition4_cutoff(&F::one()), None);
        assert_eq!(condition4_cutoff(&F::identity()), Some(2));
    }

    #[test]
    fn constructed_combs() {
        let f = make_comb::<i64>(&p("I=2")).unwrap();
        let ones: Vec<_> = f.nodes().iter().filter(|(_, x)| x.is_one()).map(|(t, _)| *t).collect();
        assert_eq!(ones, vec![q(0, 1), q(1, 2), q(1, 1)]);
        let f = make_comb::<i64>(&p("K=omega")).unwrap();
        assert!(f.locally_one(&q(1, 1)));
        assert!(!f.eval(&q(0, 1)).unwrap().is_one());
        for k in 0..=4 {
            assert!(f.eval(&q(4 + k, 16)).unwrap().is_zero());
        }
        let f = make_comb::<i64>(&p("I=1")).unwrap();
        assert!(f.eval(&q(0, 1)).unwrap().is_one());
        assert!(f.eval(&q(1, 2)).unwrap().is_zero());
    }

    #[test]
    fn every_small_presentation_gets_a_comb() {
        for pres in crate::presentations::enumerate_reduced(6) {
            let f = make_comb::<i64>(&pres).unwrap();
            assert_eq!(is_comb(&f, &pres).unwrap(), Ok(()), "{pres}");
        }
    }
}
