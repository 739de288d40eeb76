use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use wajsberg::bdelta::{
    canonical_generator, g_kh, verify_embed_comega, verify_embed_finite_chain, verify_embed_lj1,
    DeltaError, Status, VerificationRecord,
};
use wajsberg::chains::{
    embeds, generate_subalgebra, parse_descriptor_list, rank_and_div_index, ChainError, Closure,
};
use wajsberg::checker::{
    derivable_rule_tabular, valid_clause_finite, valid_identity_finite, valid_identity_variety,
    CheckError, Clause, Equation, VarietyVerdict, Verdict, TABULAR_NOTE,
};
use wajsberg::mcnaughton::{comb_targets, is_comb, make_comb, term_to_pl, PlError};
use wajsberg::presentations::{
    enumerate_reduced, is_structural_variety, primitivity, quasi_leq, structural_core,
    subvariety_lattice, variety_leq, variety_member, Bracket, PresentationError, Primitivity,
};
use wajsberg::terms::{enumerate_terms, random_term};
use wajsberg::{
    BigInt, ChainDescriptor, Hoop, PlFunction, Presentation, ProductAlgebra, QuasiDescriptor,
    Rational, Term,
};

use crate::{Command, Target, Theorem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Code {
    Yes = 0,
    No = 1,
    Unknown = 2,
}

pub struct Outcome {
    pub code: Code,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn new(code: Code, text: impl Into<String>, json: Value) -> Self {
        Outcome {
            code,
            text: text.into(),
            json,
        }
    }

    fn yes_no(yes: bool, text: impl Into<String>, json: Value) -> Self {
        Outcome::new(if yes { Code::Yes } else { Code::No }, text, json)
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(String),
    Internal(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Data(_) => 65,
            Failure::Internal(_) => 70,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Data(m) | Failure::Internal(m) => f.write_str(m),
        }
    }
}

macro_rules! data_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Data(e.to_string())
            }
        }
    )*};
}

data_errors!(PresentationError, PlError, ChainError, DeltaError);

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        match e {
            CheckError::RouteDisagreement { .. } => Failure::Internal(e.to_string()),
            e => Failure::Data(e.to_string()),
        }
    }
}

type Res = Result<Outcome, Failure>;

fn presentation(text: &str) -> Result<Presentation, Failure> {
    Ok(text.parse::<Presentation>()?.reduce()?)
}

fn bracket(text: &str) -> Result<Bracket, Failure> {
    let p: Presentation = text.parse()?;
    if p.omega {
        return Err(Failure::Data(format!("a bracket has no K part: `{text}`")));
    }
    Ok(Bracket::new(p.i, p.j))
}

fn term(text: &str) -> Result<Term, Failure> {
    text.parse::<Term>()
        .map_err(|e| Failure::Data(format!("cannot parse term `{text}`: {e}")))
}

fn chain(text: &str) -> Result<ChainDescriptor, Failure> {
    Ok(text.trim().parse::<ChainDescriptor>()?)
}

fn algebra(text: &str) -> Result<ProductAlgebra<BigInt>, Failure> {
    Ok(ProductAlgebra::new(parse_descriptor_list(text.trim())?))
}

/// Inline text, or the non-blank, non-comment lines of `@file`.
fn items(arg: &str) -> Result<Vec<String>, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let body = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
            Ok(body
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(String::from)
                .collect())
        }
        None => Ok(vec![arg.to_string()]),
    }
}

fn show_assignment<E: fmt::Display>(a: &BTreeMap<String, E>) -> String {
    a.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
}

fn assignment_json<E: fmt::Display>(a: &BTreeMap<String, E>) -> Value {
    a.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect::<serde_json::Map<_, _>>().into()
}

/// Invalid beats unknown beats valid.
fn combine(codes: &[Code]) -> Code {
    if codes.contains(&Code::No) {
        Code::No
    } else if codes.contains(&Code::Unknown) {
        Code::Unknown
    } else {
        Code::Yes
    }
}

pub fn run(cmd: Command) -> Res {
    match cmd {
        Command::Eval { term: t, algebra: a, at } => eval(&t, &a, &at),
        Command::CheckId { equation, target } => check_id(&equation, &target),
        Command::CheckRule {
            clause,
            algebra: a,
            tabular,
        } => check_rule(&clause, a.as_deref(), tabular),
        Command::Comb { presentation: p } => comb(&p),
        Command::IsComb { function, presentation: p } => is_comb_cmd(&function, &p),
        Command::Reduce { presentation: p } => reduce(&p),
        Command::VarLeq { p, q } => {
            let (p, q) = (presentation(&p)?, presentation(&q)?);
            let yes = variety_leq(&p, &q);
            let text = format!("{} {} {}", p.label(), if yes { "<=" } else { "is not <=" }, q.label());
            Ok(Outcome::yes_no(yes, text, json!({ "p": p.to_string(), "q": q.to_string(), "leq": yes })))
        }
        Command::QuasiLeq { p, q } => {
            let (p, q) = (bracket(&p)?, bracket(&q)?);
            let yes = quasi_leq(&p, &q);
            let text = format!("{p} {} {q}", if yes { "<=" } else { "is not <=" });
            Ok(Outcome::yes_no(yes, text, json!({ "p": p.to_string(), "q": q.to_string(), "leq": yes })))
        }
        Command::Structural { presentation: p } => {
            let p = presentation(&p)?;
            let yes = is_structural_variety(&p);
            let reason = if yes {
                "J = ∅ or J = {1}"
            } else {
                "J ≠ ∅ and J ≠ {1}"
            };
            let text = format!("{}: {} ({reason})", p.label(), if yes { "structural" } else { "not structural" });
            Ok(Outcome::yes_no(
                yes,
                text,
                json!({ "presentation": p.to_string(), "structural": yes, "reason": reason }),
            ))
        }
        Command::Core { presentation: p } => {
            let p = presentation(&p)?;
            let core = structural_core(&p);
            let gens: Vec<String> = core.generators().iter().map(|g| g.to_string()).collect();
            let text = format!("{core}\ngenerators: {}", gens.join(", "));
            Ok(Outcome::new(
                Code::Yes,
                text,
                json!({ "presentation": p.to_string(), "core": core.to_string(), "generators": gens }),
            ))
        }
        Command::Primitive { presentation: p, bracket: b } => {
            let q = if b {
                QuasiDescriptor::Bracket(bracket(&p)?)
            } else {
                QuasiDescriptor::Generated(presentation(&p)?)
            };
            let verdict = primitivity(&q);
            let code = match verdict {
                Primitivity::Primitive(_) => Code::Yes,
                Primitivity::NotPrimitive(_) => Code::No,
                Primitivity::Unknown => Code::Unknown,
            };
            let text = format!("{q}: {verdict}");
            Ok(Outcome::new(code, text, json!({ "quasivariety": q.to_string(), "primitivity": verdict })))
        }
        Command::Lattice { presentation: p } => {
            let p = presentation(&p)?;
            let lattice = subvariety_lattice(&p)?;
            let labels: Vec<String> = lattice.nodes.iter().map(|n| n.label()).collect();
            let covers: Vec<(String, String)> = lattice
                .covers
                .iter()
                .map(|&(a, b)| (labels[a].clone(), labels[b].clone()))
                .collect();
            Ok(Outcome::new(
                Code::Yes,
                lattice.to_dot(),
                json!({ "presentation": p.to_string(), "nodes": labels, "covers": covers, "dot": lattice.to_dot() }),
            ))
        }
        Command::Bdelta {
            presentation: p,
            verify,
            index,
            depth,
        } => bdelta(&p, verify, index, depth),
        Command::Member { chain: c, presentation: p } => {
            let (c, p) = (chain(&c)?, presentation(&p)?);
            let yes = variety_member(c, &p);
            let text = format!("{c} {} {}", if yes { "is in" } else { "is not in" }, p.label());
            Ok(Outcome::yes_no(yes, text, json!({ "chain": c, "presentation": p.to_string(), "member": yes })))
        }
        Command::Embeds { src, dst } => {
            let (s, d) = (chain(&src)?, chain(&dst)?);
            let yes = embeds(s, d);
            let text = format!("{s} {} {d}", if yes { "embeds into" } else { "does not embed into" });
            Ok(Outcome::yes_no(yes, text, json!({ "src": s, "dst": d, "embeds": yes })))
        }
        Command::Rank { chain: c } => {
            let c = chain(&c)?;
            let (rank, div) = rank_and_div_index(c);
            Ok(Outcome::new(
                Code::Yes,
                format!("{c}: rank {rank}, divisibility index {div}"),
                json!({ "chain": c, "rank": rank.to_string(), "divisibility_index": div.to_string() }),
            ))
        }
        Command::Subalgebra {
            algebra: a,
            elements,
            budget,
        } => subalgebra(&a, &elements, budget),
        Command::Pl { term: t } => {
            let t = term(&t)?;
            let f = term_to_pl::<BigInt>(&t)?;
            Ok(Outcome::new(Code::Yes, f.to_string(), json!({ "term": t.to_string(), "function": f.to_string() })))
        }
        Command::Targets { presentation: p } => {
            let p = presentation(&p)?;
            let t = comb_targets::<BigInt>(&p)?;
            let show = |s: &BTreeSet<Rational>| s.iter().map(|q| q.to_string()).collect::<Vec<_>>();
            let (i, j) = (show(&t.script_i), show(&t.script_j));
            Ok(Outcome::new(
                Code::Yes,
                format!("value 1 at: {}\nlocally 1 at: {}", i.join(" "), j.join(" ")),
                json!({ "presentation": p.to_string(), "value_one": i, "locally_one": j }),
            ))
        }
        Command::Gkh { k, h } => {
            let g = g_kh::<BigInt>(k, h)?;
            let c = ChainDescriptor::Lex(k, h).chain::<BigInt>();
            let neg = c.neg(&g)?;
            Ok(Outcome::new(
                Code::Yes,
                format!("g = {g}, not g = {neg} in {}", c.descriptor()),
                json!({ "chain": c.descriptor(), "g": g.to_string(), "neg": neg.to_string() }),
            ))
        }
        Command::Enumerate { vars, depth, budget } => {
            let names: Vec<&str> = vars.iter().map(String::as_str).collect();
            let terms: Vec<String> = enumerate_terms(&names, depth, budget).map(|t| t.to_string()).collect();
            Ok(Outcome::new(Code::Yes, terms.join("\n"), json!({ "terms": terms })))
        }
        Command::CrossCheck {
            seed,
            count,
            depth,
            max,
        } => cross_check(seed, count, depth, max),
    }
}

fn eval(t: &str, a: &str, at: &[String]) -> Res {
    let t = term(t)?;
    let alg = algebra(a)?;
    let mut env = BTreeMap::new();
    for item in at {
        let (var, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("expected VAR=VALUE, got `{item}`")))?;
        env.insert(var.trim().to_string(), alg.parse_element(value)?);
    }
    let v = alg.eval(&t, &env)?;
    Ok(Outcome::new(
        Code::Yes,
        v.to_string(),
        json!({ "term": t.to_string(), "algebra": alg.name(), "at": assignment_json(&env), "value": v.to_string() }),
    ))
}

fn check_id(arg: &str, target: &Target) -> Res {
    let equations = items(arg)?
        .iter()
        .map(|s| s.parse::<Equation>())
        .collect::<Result<Vec<_>, _>>()?;
    let mut codes = Vec::new();
    let mut lines = Vec::new();
    let mut records = Vec::new();
    match (&target.algebra, &target.variety) {
        (Some(a), None) => {
            let alg = algebra(a)?;
            for e in &equations {
                let (code, line, rec) = match valid_identity_finite(e, &alg) {
                    Ok(Verdict::Valid) => (Code::Yes, format!("{e}: valid in {}", alg.name()), json!({ "valid": true })),
                    Ok(Verdict::Invalid(w)) => (
                        Code::No,
                        format!("{e}: invalid in {} at {}", alg.name(), show_assignment(&w)),
                        json!({ "valid": false, "witness": assignment_json(&w) }),
                    ),
                    Err(CheckError::NotFinite(name)) => (
                        Code::Unknown,
                        format!("{e}: unknown, {name} is infinite"),
                        json!({ "valid": Value::Null, "reason": "infinite algebra" }),
                    ),
                    Err(err) => return Err(err.into()),
                };
                codes.push(code);
                lines.push(line);
                records.push(json!({ "equation": e.to_string(), "algebra": alg.name(), "result": rec }));
            }
        }
        (None, Some(v)) => {
            let p = presentation(v)?;
            let lp = p.label();
            for e in &equations {
                let (code, line, rec) = match valid_identity_variety::<BigInt>(e, &p)? {
                    VarietyVerdict::Valid => (Code::Yes, format!("{e}: valid in {lp}"), json!({ "valid": true })),
                    VarietyVerdict::Invalid { witness, reason } => (
                        Code::No,
                        format!("{e}: invalid in {lp}, fails in {witness} ({reason})"),
                        json!({
                            "valid": false,
                            "chain": witness.chain,
                            "witness": assignment_json(&witness.assignment),
                            "reason": reason,
                        }),
                    ),
                    VarietyVerdict::Undecided => (
                        Code::Unknown,
                        format!("{e}: undecided over {lp} (several variables, not locally finite)"),
                        json!({ "valid": Value::Null }),
                    ),
                };
                codes.push(code);
                lines.push(line);
                records.push(json!({ "equation": e.to_string(), "presentation": p.to_string(), "result": rec }));
            }
        }
        _ => return Err(Failure::Usage("give exactly one of --in ALGEBRA or --variety PRESENTATION".into())),
    }
    Ok(Outcome::new(combine(&codes), lines.join("\n"), json!(records)))
}

fn stringify<E: fmt::Display>(v: Verdict<E>) -> Verdict<String> {
    match v {
        Verdict::Valid => Verdict::Valid,
        Verdict::Invalid(w) => Verdict::Invalid(w.into_iter().map(|(k, e)| (k, e.to_string())).collect()),
    }
}

fn check_rule(arg: &str, a: Option<&str>, tabular: Option<u64>) -> Res {
    let clauses = items(arg)?
        .iter()
        .map(|s| s.parse::<Clause>())
        .collect::<Result<Vec<_>, _>>()?;
    let mut codes = Vec::new();
    let mut lines = Vec::new();
    let mut records = Vec::new();
    for c in &clauses {
        let (name, verdict) = match (a, tabular) {
            (Some(a), None) => {
                let alg = algebra(a)?;
                let verdict = match valid_clause_finite(c, &alg) {
                    Ok(v) => stringify(v),
                    Err(CheckError::NotFinite(name)) => {
                        codes.push(Code::Unknown);
                        lines.push(format!("{c}: unknown, {name} is infinite"));
                        records.push(json!({ "rule": c.to_string(), "valid": Value::Null }));
                        continue;
                    }
                    Err(e) => return Err(e.into()),
                };
                (alg.name(), verdict)
            }
            (None, Some(n)) => (
                format!("L{n}"),
                stringify(derivable_rule_tabular::<BigInt>(c, n)?),
            ),
            _ => return Err(Failure::Usage("give exactly one of --in ALGEBRA or --tabular N".into())),
        };
        match verdict {
            Verdict::Valid => {
                codes.push(Code::Yes);
                let note = if tabular.is_some() { format!(" ({TABULAR_NOTE})") } else { String::new() };
                lines.push(format!("{c}: holds in {name}{note}"));
                records.push(json!({ "rule": c.to_string(), "algebra": name, "valid": true }));
            }
            Verdict::Invalid(w) => {
                codes.push(Code::No);
                lines.push(format!("{c}: fails in {name} at {}", show_assignment(&w)));
                records.push(json!({ "rule": c.to_string(), "algebra": name, "valid": false, "witness": assignment_json(&w) }));
            }
        }
    }
    Ok(Outcome::new(combine(&codes), lines.join("\n"), json!(records)))
}

fn comb(p: &str) -> Res {
    let p = presentation(p)?;
    let f = make_comb::<BigInt>(&p)?;
    let lp = p.label();
    match is_comb(&f, &p)? {
        Ok(()) => Ok(Outcome::new(
            Code::Yes,
            format!("{f}\nverified: comb for {lp}"),
            json!({ "presentation": p.to_string(), "comb": f.to_string(), "verified": true }),
        )),
        Err(v) => Err(Failure::Internal(format!("constructed function {f} is not a comb: {v}"))),
    }
}

fn is_comb_cmd(function: &str, p: &str) -> Res {
    let f: PlFunction = function.parse()?;
    let p = presentation(p)?;
    let lp = p.label();
    match is_comb(&f, &p)? {
        Ok(()) => Ok(Outcome::new(
            Code::Yes,
            format!("{f} is a comb for {lp}"),
            json!({ "function": f.to_string(), "presentation": p.to_string(), "comb": true }),
        )),
        Err(v) => Ok(Outcome::new(
            Code::No,
            format!("{f} is not a comb for {lp}: {v}"),
            json!({
                "function": f.to_string(),
                "presentation": p.to_string(),
                "comb": false,
                "condition": v.condition(),
                "reason": v.to_string(),
            }),
        )),
    }
}

fn reduce(text: &str) -> Res {
    let raw: Presentation = text.parse()?;
    let reduced = raw.reduce()?;
    let changed = raw != reduced;
    Ok(Outcome::new(
        Code::Yes,
        format!("{reduced}"),
        json!({ "input": raw.to_string(), "reduced": reduced.to_string(), "label": reduced.label(), "changed": changed }),
    ))
}

fn bdelta(p: &str, verify: Option<Theorem>, index: Option<u64>, depth: usize) -> Res {
    let p = presentation(p)?;
    let (delta, _, g) = canonical_generator::<BigInt>(&p)?;
    let Some(theorem) = verify else {
        let rows: Vec<Value> = delta
            .triples
            .iter()
            .zip(&g.0)
            .map(|(t, e)| json!({ "index": t.to_string(), "factor": t.factor(), "generator": e.to_string() }))
            .collect();
        let mut text = String::new();
        for (t, e) in delta.triples.iter().zip(&g.0) {
            text.push_str(&format!("{t}  {}  {e}\n", t.factor()));
        }
        return Ok(Outcome::new(
            Code::Yes,
            text,
            json!({ "presentation": p.to_string(), "coordinates": rows }),
        ));
    };
    let pick = |set: &BTreeSet<u64>, what: &str| -> Result<Vec<u64>, Failure> {
        match index {
            Some(n) if set.contains(&n) => Ok(vec![n]),
            Some(n) => Err(Failure::Data(format!("{n} is not in {what}"))),
            None if set.is_empty() => Err(Failure::Data(format!("{what} is empty"))),
            None => Ok(set.iter().copied().collect()),
        }
    };
    let records: Vec<VerificationRecord> = match theorem {
        Theorem::Embed1 => pick(&p.i, "I")?
            .into_iter()
            .map(|a| verify_embed_finite_chain::<BigInt>(&p, a))
            .collect::<Result<_, _>>()?,
        Theorem::Embed2 => vec![verify_embed_comega::<BigInt>(&p)?],
        Theorem::Embed3 => pick(&p.j, "J")?
            .into_iter()
            .map(|j| verify_embed_lj1::<BigInt>(&p, j, depth))
            .collect::<Result<_, _>>()?,
    };
    let codes: Vec<Code> = records
        .iter()
        .map(|r| match r.status {
            Status::Verified | Status::VerifiedBounded => Code::Yes,
            Status::Inconclusive => Code::Unknown,
            Status::Failed => Code::No,
        })
        .collect();
    let mut text = String::new();
    for r in &records {
        text.push_str(&format!("{} for {}: {:?}, {}\n", r.theorem, p.label(), r.status, r.detail));
        if let Some(w) = &r.witness {
            text.push_str(&format!("  witness {w}\n"));
        }
        for c in &r.coordinates {
            text.push_str(&format!("  {}  {}  {} -> {}\n", c.index, c.factor, c.generator, c.value));
        }
        if let Some(c) = &r.certificate {
            text.push_str(&format!("  certificate: {c}\n"));
        }
    }
    let json = serde_json::to_value(&records).map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(Outcome::new(combine(&codes), text, json))
}

fn subalgebra(a: &str, elements: &[String], budget: usize) -> Res {
    let alg = algebra(a)?;
    let gens = elements
        .iter()
        .map(|e| alg.parse_element(e))
        .collect::<Result<Vec<_>, _>>()?;
    let closure = generate_subalgebra(&alg, &gens, budget)?;
    let shown: Vec<String> = closure.elements().iter().map(|e| e.to_string()).collect();
    let (code, head) = match &closure {
        Closure::Finite(s) => (Code::Yes, format!("{} elements", s.len())),
        Closure::Exceeded(s) => (Code::Unknown, format!("budget exceeded after {} elements", s.len())),
    };
    Ok(Outcome::new(
        code,
        format!("{head}\n{}", shown.join("\n")),
        json!({ "algebra": alg.name(), "finite": closure.is_finite(), "elements": shown }),
    ))
}

/// Random one-variable pairs against every reduced presentation with entries
/// up to `max`: the checker's routes must agree with each other and with
/// equality at the canonical generator.
fn cross_check(seed: u64, count: usize, depth: usize, max: u64) -> Res {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(Term, Term)> = (0..count)
        .map(|_| (random_term(&mut rng, &["x"], depth), random_term(&mut rng, &["x"], depth)))
        .collect();
    let (mut valid, mut invalid, mut presentations) = (0usize, 0usize, 0usize);
    for p in enumerate_reduced(max).into_iter().filter(|p| !p.is_empty()) {
        presentations += 1;
        let lp = p.label();
        let (_, alg, g) = canonical_generator::<BigInt>(&p)?;
        for (s, t) in &pairs {
            let e = Equation::new(s.clone(), t.clone());
            let checker = match valid_identity_variety::<BigInt>(&e, &p)? {
                VarietyVerdict::Valid => true,
                VarietyVerdict::Invalid { .. } => false,
                VarietyVerdict::Undecided => {
                    return Err(Failure::Internal(format!("{e} undecided over {lp}")));
                }
            };
            let free = alg.eval_at(s, &g)? == alg.eval_at(t, &g)?;
            if free != checker {
                return Err(Failure::Internal(format!(
                    "{e} over {lp}: canonical generator says {free}, checker says {checker}"
                )));
            }
            if checker {
                valid += 1;
            } else {
                invalid += 1;
            }
        }
    }
    Ok(Outcome::new(
        Code::Yes,
        format!(
            "seed {seed}: {count} pairs over {presentations} presentations agree ({valid} valid, {invalid} invalid)"
        ),
        json!({
            "seed": seed,
            "pairs": count,
            "presentations": presentations,
            "valid": valid,
            "invalid": invalid,
            "agree": true,
        }),
    ))
}
