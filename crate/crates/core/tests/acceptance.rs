//! Acceptance checks, one test per criterion. Each prints a single
//! `[PASS]` / `[FAIL]` line and then asserts.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wajsberg::bdelta::{
    canonical_generator, g_kh, verify_embed_comega, verify_embed_finite_chain, verify_embed_lj1,
    Status,
};
use wajsberg::chains::{embeds, Chain, Element};
use wajsberg::checker::{
    valid_function_identity_finite, valid_identity_variety, Equation, VarietyVerdict,
};
use wajsberg::mcnaughton::{
    condition4_cutoff, condition4_direct, is_comb, make_comb, term_to_pl, PlFunction,
};
use wajsberg::presentations::{
    down, enumerate_reduced, primitivity, quasi_leq, subvariety_lattice, variety_leq, Bracket,
    Primitivity, VarietyNode,
};
use wajsberg::terms::random_term;
use wajsberg::{BigInt, ChainDescriptor, Hoop, Presentation, QuasiDescriptor, Term};

const LIMIT_SEMANTICS: Duration = Duration::from_secs(1);
const LIMIT_IDENTITIES: Duration = Duration::from_secs(5);
const LIMIT_COMB: Duration = Duration::from_millis(100);
const LIMIT_EMBED: Duration = Duration::from_secs(60);
const LEX_WINDOW: i64 = 20;
const LIFT_DEPTH: usize = 5;
const RANDOM_PAIRS: usize = 200;
const RANDOM_DEPTH: usize = 5;
const ORACLE_MAX: u64 = 8;
const CUTOFF_MAX: u64 = 50;
const SEED: u64 = 0x5eed_2024;

fn report(n: u32, ok: bool, what: &str) {
    println!("[{}] criterion {n}: {what}", if ok { "PASS" } else { "FAIL" });
}

fn term(s: &str) -> Term {
    s.parse().expect("term parses")
}

fn fin_elements(n: u64) -> Vec<Element<i64>> {
    Chain::<i64>::new(ChainDescriptor::Fin(n)).elements().unwrap()
}

/// `(a,b)` in `Ł_{n,k}` with `|b| ≤ LEX_WINDOW`.
fn lex_window(n: u64, k: u64) -> Vec<Element<i64>> {
    let mut out = Vec::new();
    for a in 0..=n as i64 {
        for b in -LEX_WINDOW..=LEX_WINDOW {
            let low_ok = a > 0 || b >= 0;
            let high_ok = a < n as i64 || b <= k as i64;
            if low_ok && high_ok {
                out.push(Element::lex(n, k, a, b));
            }
        }
    }
    out
}

fn neg_cone_window() -> Vec<Element<i64>> {
    (-LEX_WINDOW..=0).map(Element::neg_cone).collect()
}

#[test]
fn criterion_01_gamma_semantics() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 1..=12u64 {
        let chain = Chain::<i64>::new(ChainDescriptor::Fin(n));
        let scale = |e: &Element<i64>| match e {
            Element::Fin { a, .. } => Ratio::new(*a, n as i64),
            _ => unreachable!(),
        };
        let one = Ratio::from_integer(1);
        let zero = Ratio::from_integer(0);
        for x in &fin_elements(n) {
            for y in &fin_elements(n) {
                let (fx, fy) = (scale(x), scale(y));
                let prod = (fx + fy - one).max(zero);
                let imp = (one - fx + fy).min(one);
                if scale(&chain.mul(x, y).unwrap()) != prod || scale(&chain.imp(x, y).unwrap()) != imp {
                    bad.push(format!("L{n} at {x},{y}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < LIMIT_SEMANTICS;
    report(1, ok, &format!("L_n rescaling for n <= 12 ({elapsed:?}, {} mismatches)", bad.len()));
    assert!(bad.is_empty(), "{bad:?}");
    assert!(elapsed < LIMIT_SEMANTICS);
}

/// Residuation, Tanaka and the join/meet definitions on one carrier.
fn identity_failures<A: Hoop>(alg: &A, els: &[A::Elem]) -> Vec<String> {
    let mut bad = Vec::new();
    for x in els {
        for y in els {
            let xy = alg.imp(x, y).unwrap();
            let yx = alg.imp(y, x).unwrap();
            let tanaka_l = alg.imp(&xy, y).unwrap();
            let tanaka_r = alg.imp(&yx, x).unwrap();
            if tanaka_l != tanaka_r {
                bad.push(format!("{}: tanaka at {x},{y}", alg.name()));
            }
            let join = alg.join(x, y).unwrap();
            if alg.meet(&tanaka_l, &tanaka_r).unwrap() != join || tanaka_l != join {
                bad.push(format!("{}: join at {x},{y}", alg.name()));
            }
            if alg.mul(x, &xy).unwrap() != alg.meet(x, y).unwrap() {
                bad.push(format!("{}: divisibility at {x},{y}", alg.name()));
            }
            for z in els {
                let lhs = alg.mul(x, y).unwrap() <= *z;
                let rhs = *x <= alg.imp(y, z).unwrap();
                if lhs != rhs {
                    bad.push(format!("{}: residuation at {x},{y},{z}", alg.name()));
                }
            }
        }
    }
    bad
}

#[test]
fn criterion_02_hoop_identities() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 1..=12 {
        let chain = Chain::<i64>::new(ChainDescriptor::Fin(n));
        bad.extend(identity_failures(&chain, &fin_elements(n)));
    }
    for (n, k) in [(1, 0), (1, 1), (2, 0), (2, 1), (3, 1), (3, 2)] {
        let chain = Chain::<i64>::new(ChainDescriptor::Lex(n, k));
        bad.extend(identity_failures(&chain, &lex_window(n, k)));
    }
    let comega = Chain::<i64>::new(ChainDescriptor::NegCone);
    bad.extend(identity_failures(&comega, &neg_cone_window()));
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < LIMIT_IDENTITIES;
    report(
        2,
        ok,
        &format!("residuation, Tanaka, join on L_n, L_(n,k) windows, C_omega ({elapsed:?}, {} failures)", bad.len()),
    );
    assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(10)]);
    assert!(elapsed < LIMIT_IDENTITIES);
}

#[test]
fn criterion_03_term_to_pl() {
    let f = term_to_pl::<BigInt>(&term("(x -> x*x) -> x")).unwrap();
    let expected: PlFunction<BigInt> = "L(0,0;1/2,1;1,1)".parse().unwrap();
    let ok = f.nodes() == expected.nodes();
    report(3, ok, &format!("term_to_pl((x -> x^2) -> x) = {f}"));
    assert_eq!(f.nodes(), expected.nodes());
}

fn criterion4_presentations() -> Vec<Presentation> {
    enumerate_reduced(6)
        .into_iter()
        .filter(|p| !p.is_empty() && p.i.len() <= 2 && p.j.len() <= 2)
        .collect()
}

#[test]
fn criterion_04_make_comb() {
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    let ps = criterion4_presentations();
    for p in &ps {
        let start = Instant::now();
        let verdict = make_comb::<BigInt>(p).and_then(|f| is_comb(&f, p));
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        match verdict {
            Ok(Ok(())) if elapsed < LIMIT_COMB => {}
            other => bad.push(format!("{p}: {other:?} in {elapsed:?}")),
        }
    }
    report(
        4,
        bad.is_empty(),
        &format!("make_comb passes is_comb on {} presentations (slowest {slowest:?})", ps.len()),
    );
    assert!(bad.is_empty(), "{bad:?}");
}

fn comb_valid_set(p: &Presentation) -> Vec<u64> {
    let comb = make_comb::<BigInt>(p).unwrap();
    let one = PlFunction::<BigInt>::one();
    (1..=12)
        .filter(|&k| valid_function_identity_finite(&comb, &one, k).unwrap().is_valid())
        .collect()
}

#[test]
fn criterion_05_comb_validity() {
    let two = comb_valid_set(&"I=2".parse().unwrap());
    let two_three = comb_valid_set(&"I=2,3".parse().unwrap());
    let ok = two == [1, 2] && two_three == [1, 2, 3];
    report(5, ok, &format!("comb valid in L_k for k in {two:?} and {two_three:?}"));
    assert_eq!(two, [1, 2]);
    assert_eq!(two_three, [1, 2, 3]);
}

#[test]
fn criterion_06_lattice_figure() {
    let top: Presentation = "J=2".parse().unwrap();
    let lattice = subvariety_lattice(&top).unwrap();
    let v = |s: &str| VarietyNode::Variety(s.parse().unwrap());
    let figure_nodes = [
        VarietyNode::Trivial,
        v("I=1"),
        v("K=omega"),
        v("I=2"),
        v("I=1; K=omega"),
        v("I=2; K=omega"),
        v("J=1"),
        v("J=2"),
    ];
    let figure_edges = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (3, 5), (4, 5), (4, 6), (5, 7), (6, 7)];
    let expected_nodes: BTreeSet<String> = figure_nodes.iter().map(|n| n.label()).collect();
    let expected_edges: BTreeSet<(String, String)> = figure_edges
        .iter()
        .map(|&(a, b)| (figure_nodes[a].label(), figure_nodes[b].label()))
        .collect();
    let got_nodes: BTreeSet<String> = lattice.nodes.iter().map(|n| n.label()).collect();
    let got_edges: BTreeSet<(String, String)> = lattice
        .covers
        .iter()
        .map(|&(a, b)| (lattice.nodes[a].label(), lattice.nodes[b].label()))
        .collect();

    let a: Presentation = "I=2; K=omega".parse().unwrap();
    let b: Presentation = "J=1".parse().unwrap();
    let incomparable = !variety_leq(&a, &b) && !variety_leq(&b, &a);

    let ok = lattice.nodes.len() == 8 && got_nodes == expected_nodes && got_edges == expected_edges && incomparable;
    let extra: Vec<&String> = got_nodes.difference(&expected_nodes).collect();
    report(
        6,
        ok,
        &format!(
            "lattice of {}: {} nodes (figure 8), extra {extra:?}, incomparable = {incomparable}",
            top.label(),
            lattice.nodes.len()
        ),
    );
    assert!(incomparable);
    assert_eq!(lattice.nodes.len(), 8, "nodes: {got_nodes:?}");
    assert_eq!(got_nodes, expected_nodes);
    assert_eq!(got_edges, expected_edges);
}

#[test]
fn criterion_07_embedding_theorems() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let (mut n1, mut n2, mut n3) = (0, 0, 0);
    for p in enumerate_reduced(6).into_iter().filter(|p| !p.is_empty()) {
        for &a in &p.i {
            n1 += 1;
            let rec = verify_embed_finite_chain::<BigInt>(&p, a).unwrap();
            if rec.status != Status::Verified || rec.closure_size != Some(a as usize + 1) {
                bad.push(format!("embed1 {p} a={a}: {}", rec.detail));
            }
        }
        if p.omega {
            n2 += 1;
            let rec = verify_embed_comega::<BigInt>(&p).unwrap();
            if rec.status != Status::Verified {
                bad.push(format!("embed2 {p}: {}", rec.detail));
            }
        }
        for &j in &p.j {
            n3 += 1;
            let rec = verify_embed_lj1::<i64>(&p, j, LIFT_DEPTH).unwrap();
            if rec.status != Status::VerifiedBounded {
                bad.push(format!("embed3 {p} j={j}: {}", rec.detail));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < LIMIT_EMBED;
    report(
        7,
        ok,
        &format!("embeddings verified ({n1} finite, {n2} C_omega, {n3} L_(j,1) at depth {LIFT_DEPTH}) in {elapsed:?}"),
    );
    assert!(bad.is_empty(), "{bad:?}");
    assert!(elapsed < LIMIT_EMBED);
}

/// Half independent pairs, half `(p, p ∧ r)`, which coincide exactly when
/// `p ≤ r` holds in the variety at hand.
fn sample_pairs() -> Vec<(Term, Term)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..RANDOM_PAIRS)
        .map(|i| {
            let p = random_term(&mut rng, &["x"], RANDOM_DEPTH);
            let q = random_term(&mut rng, &["x"], RANDOM_DEPTH);
            if i % 2 == 0 || p.depth() >= RANDOM_DEPTH {
                (p, q)
            } else {
                let r = random_term(&mut rng, &["x"], RANDOM_DEPTH - 1 - p.depth().min(RANDOM_DEPTH - 2));
                let meet = Term::meet(p.clone(), r);
                (p, meet)
            }
        })
        .collect()
}

#[test]
fn criterion_08_free_algebra() {
    let pairs = sample_pairs();
    let mut bad = Vec::new();
    let (mut equal, mut unequal) = (0, 0);
    for p in enumerate_reduced(4).into_iter().filter(|p| !p.is_empty()) {
        let (_, alg, g) = canonical_generator::<BigInt>(&p).unwrap();
        for (s, t) in &pairs {
            let in_free = alg.eval_at(s, &g).unwrap() == alg.eval_at(t, &g).unwrap();
            let e = Equation::new(s.clone(), t.clone());
            let valid = match valid_identity_variety::<BigInt>(&e, &p) {
                Ok(VarietyVerdict::Valid) => true,
                Ok(VarietyVerdict::Invalid { .. }) => false,
                other => {
                    bad.push(format!("{p}: {e}: {other:?}"));
                    continue;
                }
            };
            if in_free {
                equal += 1;
            } else {
                unequal += 1;
            }
            if in_free != valid {
                bad.push(format!("{p}: {e}: free {in_free}, checker {valid}"));
            }
        }
    }
    report(
        8,
        bad.is_empty(),
        &format!("p(g) = q(g) iff valid ({equal} equal, {unequal} unequal, {} mismatches)", bad.len()),
    );
    assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(10)]);
}

#[test]
fn criterion_09_route_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let terms: Vec<Term> = (0..2 * RANDOM_PAIRS)
        .map(|_| random_term(&mut rng, &["x"], RANDOM_DEPTH))
        .collect();
    let mut bad = Vec::new();
    let mut decided = 0;
    for p in enumerate_reduced(4).into_iter().filter(|p| !p.is_empty()) {
        for pair in terms.chunks(2) {
            let e = Equation::new(pair[0].clone(), pair[1].clone());
            match valid_identity_variety::<BigInt>(&e, &p) {
                Ok(VarietyVerdict::Valid | VarietyVerdict::Invalid { .. }) => decided += 1,
                other => bad.push(format!("{p}: {e}: {other:?}")),
            }
        }
    }
    report(9, bad.is_empty(), &format!("routes agree on {decided} checks, {} disagreements", bad.len()));
    assert!(bad.is_empty(), "{bad:?}");
}

/// Every generator embeds into some chain of the divisor-closed family.
fn embeds_into_family(gens: &[ChainDescriptor], family: &[ChainDescriptor]) -> bool {
    gens.iter().all(|&g| family.iter().any(|&h| embeds(g, h)))
}

fn variety_family(p: &Presentation) -> Vec<ChainDescriptor> {
    let mut out: Vec<ChainDescriptor> = p.ij_down().into_iter().map(ChainDescriptor::Fin).collect();
    out.extend(down(&p.j).into_iter().map(|d| ChainDescriptor::Lex(d, 0)));
    if !p.j.is_empty() || p.omega {
        out.push(ChainDescriptor::NegCone);
    }
    out
}

fn bracket_family(b: &Bracket) -> Vec<ChainDescriptor> {
    let mut out: Vec<ChainDescriptor> = down(&b.i).into_iter().map(ChainDescriptor::Fin).collect();
    out.extend(down(&b.j).into_iter().map(|d| ChainDescriptor::Lex(d, 1)));
    out
}

#[test]
fn criterion_10_ordering_oracles() {
    let mut bad = Vec::new();
    let ps: Vec<Presentation> = enumerate_reduced(ORACLE_MAX).into_iter().filter(|p| !p.is_empty()).collect();
    for p in &ps {
        for q in &ps {
            let oracle = embeds_into_family(&p.generators(), &variety_family(q));
            if variety_leq(p, q) != oracle {
                bad.push(format!("variety {p} <= {q}: oracle {oracle}"));
            }
        }
    }
    let brackets: Vec<Bracket> = enumerate_reduced(ORACLE_MAX)
        .into_iter()
        .filter(|p| !p.omega && !p.is_empty())
        .map(|p| Bracket::new(p.i, p.j))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    for a in &brackets {
        for b in &brackets {
            let oracle = embeds_into_family(&a.generators(), &bracket_family(b));
            if quasi_leq(a, b) != oracle {
                bad.push(format!("quasi {a} <= {b}: oracle {oracle}"));
            }
        }
    }
    let qv = |s: &str| QuasiDescriptor::Generated(s.parse().unwrap());
    let qb = |i: &[u64], j: &[u64]| QuasiDescriptor::Bracket(Bracket::new(i.to_vec(), j.to_vec()));
    let prim = [
        (qv("I=2,3"), "primitive"),
        (qb(&[], &[2]), "primitive"),
        (qb(&[2], &[2]), "not"),
        (qb(&[], &[2, 3]), "unknown"),
    ];
    for (q, want) in &prim {
        let got = primitivity(q);
        let matches = match got {
            Primitivity::Primitive(_) => *want == "primitive",
            Primitivity::NotPrimitive(_) => *want == "not",
            Primitivity::Unknown => *want == "unknown",
        };
        if !matches {
            bad.push(format!("primitivity {q:?}: {got}"));
        }
    }
    report(
        10,
        bad.is_empty(),
        &format!(
            "orders agree with embeddability on {} varieties and {} brackets; primitivity examples",
            ps.len(),
            brackets.len()
        ),
    );
    assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(10)]);
}

fn gcd(a: u64, b: u64) -> u64 {
    wajsberg::scalar::gcd(a, b)
}

#[test]
fn criterion_11_g_kh() {
    let mut bad = Vec::new();
    let mut checked = 0;
    for k in 2..=30u64 {
        for h in (1..k).filter(|&h| gcd(k, h) == 1) {
            checked += 1;
            let g = g_kh::<i64>(k, h).unwrap();
            let chain = Chain::<i64>::new(ChainDescriptor::Lex(k, h));
            let neg = chain.neg(&g).unwrap();
            let Element::Lex { a: r, b: s, .. } = g else {
                bad.push(format!("g({k},{h}) is not a lex element"));
                continue;
            };
            if (r * h as i64 - s * k as i64).abs() != 1 {
                bad.push(format!("g({k},{h}) = ({r},{s}) fails the determinant law"));
            }
            if g > neg {
                bad.push(format!("g({k},{h}) = ({r},{s}) above its negation"));
            }
            if k >= 3 && h == 1 && (r, s) != (1, 0) {
                bad.push(format!("g({k},1) = ({r},{s})"));
            }
            if k >= 3 && h == k - 1 && (r, s) != (1, 1) {
                bad.push(format!("g({k},{}) = ({r},{s})", k - 1));
            }
        }
    }
    report(11, bad.is_empty(), &format!("g_kh law on {checked} pairs (k <= 30)"));
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn criterion_12_cutoff() {
    let mut bad = Vec::new();
    let ps = criterion4_presentations();
    for p in &ps {
        let f = make_comb::<BigInt>(p).unwrap();
        if !condition4_direct(&f, p, CUTOFF_MAX).is_empty() {
            bad.push(format!("{p}: direct check finds a violation"));
        }
        let Some(cutoff) = condition4_cutoff(&f) else {
            bad.push(format!("{p}: no cutoff"));
            continue;
        };
        // Past the cutoff every denominator meets a point where f is not 1.
        for d in cutoff.max(1)..=CUTOFF_MAX {
            let hit = (0..d).any(|h| f.eval(&Ratio::new(BigInt::from(h), BigInt::from(d))).unwrap() != Ratio::from_integer(BigInt::from(1)));
            if !hit {
                bad.push(format!("{p}: f is 1 on all of (1/{d})Z below 1, cutoff {cutoff}"));
            }
        }
    }
    report(12, bad.is_empty(), &format!("cutoff agrees with direct check up to d = {CUTOFF_MAX} on {} combs", ps.len()));
    assert!(bad.is_empty(), "{bad:?}");
}
