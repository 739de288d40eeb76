//! Command-line front end for the `wajsberg` library.
//!
//! Exit codes: 0 affirmative/valid, 1 negative/invalid, 2 unknown,
//! 64 usage, 65 malformed input or failed precondition, 70 internal
//! inconsistency (the two decision routes of the checker disagree).

mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(name = "wajsberg", version, about = "Exact computations with Wajsberg hoops and their varieties")]
struct Cli {
    /// Emit a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Target {
    /// A chain or a product of chains, e.g. `L3`, `L(2,1) x Comega`.
    #[arg(long = "in", value_name = "ALGEBRA", conflicts_with = "variety")]
    algebra: Option<String>,
    /// A presentation such as `I=2,3; J=5; K=omega`.
    #[arg(long, value_name = "PRESENTATION")]
    variety: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Theorem {
    Embed1,
    Embed2,
    Embed3,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a term in a chain or product.
    Eval {
        term: String,
        #[arg(long = "in", value_name = "ALGEBRA")]
        algebra: String,
        /// Variable assignment `x=VALUE`; repeat for several variables.
        #[arg(long = "at", value_name = "VAR=VALUE")]
        at: Vec<String>,
    },
    /// Decide equations `p ~ q` (inline, or one per line from `@file`).
    CheckId {
        equation: String,
        #[command(flatten)]
        target: Target,
    },
    /// Decide a rule `e1, e2 => f1 | f2` in a finite algebra, or its
    /// derivability in the logic of `L_n` with `--tabular n`.
    CheckRule {
        clause: String,
        #[arg(long = "in", value_name = "ALGEBRA", conflicts_with = "tabular")]
        algebra: Option<String>,
        #[arg(long, value_name = "N")]
        tabular: Option<u64>,
    },
    /// Build a comb for a presentation and verify it.
    Comb { presentation: String },
    /// Check the comb conditions for a function in `L(...)` notation.
    IsComb { function: String, presentation: String },
    /// Reduce a presentation.
    Reduce { presentation: String },
    /// `V(P) ⊆ V(Q)`.
    VarLeq { p: String, q: String },
    /// `Q[I,J] ⊆ Q[I',J']`, brackets written as `I=..; J=..`.
    QuasiLeq { p: String, q: String },
    /// Whether `V(P)` is structural.
    Structural { presentation: String },
    /// The structural core of `V(P)`.
    Core { presentation: String },
    /// Primitivity of `V(P)`, or of the bracket `Q[I,J]` with `--bracket`.
    Primitive {
        presentation: String,
        #[arg(long)]
        bracket: bool,
    },
    /// Subvariety lattice in DOT.
    Lattice { presentation: String },
    /// The index set, product and canonical generator; optionally verify an
    /// embedding theorem.
    Bdelta {
        presentation: String,
        #[arg(long, value_enum)]
        verify: Option<Theorem>,
        /// Restrict `embed1` to this `a ∈ I`, or `embed3` to this `j ∈ J`.
        #[arg(long, value_name = "N")]
        index: Option<u64>,
        #[arg(long, default_value_t = 5)]
        depth: usize,
    },
    /// Whether a chain lies in `V(P)`.
    Member { chain: String, presentation: String },
    /// Whether one chain embeds into another.
    Embeds { src: String, dst: String },
    /// Rank and divisibility index of a chain.
    Rank { chain: String },
    /// Subalgebra generated by elements of a chain or product.
    Subalgebra {
        #[arg(long = "in", value_name = "ALGEBRA")]
        algebra: String,
        elements: Vec<String>,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
    },
    /// The Wajsberg function of a one-variable term.
    Pl { term: String },
    /// Comb target points of a presentation.
    Targets { presentation: String },
    /// The generator `g_{k,h}` of `L(k,h)`.
    Gkh { k: u64, h: u64 },
    /// List terms up to a depth.
    Enumerate {
        #[arg(long, value_delimiter = ',', default_value = "x")]
        vars: Vec<String>,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, default_value_t = 100)]
        budget: usize,
    },
    /// Cross-check the checker's two routes and the free algebra on random
    /// terms over all reduced presentations with small entries.
    CrossCheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value_t = 4)]
        max: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    match commands::run(cli.command) {
        Ok(outcome) => {
            emit(&outcome, json);
            ExitCode::from(outcome.code as u8)
        }
        Err(failure) => {
            if json {
                println!("{}", serde_json::json!({ "error": failure.to_string(), "code": failure.code() }));
            } else {
                eprintln!("error: {failure}");
            }
            ExitCode::from(failure.code())
        }
    }
}

/// Write errors (a closed pipe, say) are ignored.
fn emit(outcome: &Outcome, json: bool) {
    let body = if json {
        serde_json::to_string_pretty(&outcome.json).expect("json value")
    } else {
        outcome.text.trim_end().to_string()
    };
    if !body.is_empty() {
        let _ = writeln!(std::io::stdout().lock(), "{body}");
    }
}
