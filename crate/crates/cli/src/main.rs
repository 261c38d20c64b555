use std::collections::BTreeSet;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use grothendieck::coeffs::{lr_coefficient, lr_witnesses, Route};
use grothendieck::groth::{groth_poly, Kind};
use grothendieck::hecke::{double_groth_dd, double_groth_gen, theorem_final_check};
use grothendieck::insertion::tableau_insert_traced;
use grothendieck::par::Execution;
use grothendieck::ring::{fmt_rational, Params, Poly, RandomSpec};
use grothendieck::shapes::{Partition, Permutation, SkewShape};
use grothendieck::tableaux::SetValuedTableau;
use grothendieck::verify::{Mode, Options, Suite};

/// Grothendieck polynomials, their expansion coefficients and the identities between them.
#[derive(Parser, Debug)]
#[command(name = "kgroth", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print G_θ(x), G_θ(x|a) or G_θ(x|b) in n variables.
    Groth(GrothArgs),
    /// Print the coefficient c^ν_{θμ} of G_ν(x) in G_θ(x)·G_μ(x).
    Coeff(CoeffArgs),
    /// Insert a set into a set-valued tableau.
    Insert(InsertArgs),
    /// Hecke algebra computations.
    Hecke {
        #[command(subcommand)]
        command: HeckeCommand,
    },
    /// Run a named verification suite, or `all`.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Seed for specialized-mode randomness.
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    #[arg(long, value_parser = parse_mode)]
    mode: Option<Mode>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct GrothArgs {
    #[arg(long)]
    shape: Partition,
    /// Inner shape, making θ = shape/skew.
    #[arg(long)]
    skew: Option<Partition>,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value = "ordinary", value_parser = ["ordinary", "factorial-a", "factorial-b"])]
    kind: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Comb,
    Expand,
    Recur,
    Chain,
    All,
}

#[derive(Args, Debug)]
struct CoeffArgs {
    #[arg(long)]
    theta: SkewShape,
    #[arg(long)]
    mu: Partition,
    #[arg(long)]
    nu: Partition,
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = RouteArg::Comb)]
    route: RouteArg,
    /// List the fitting tableaux with their chains.
    #[arg(long)]
    witness: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct InsertArgs {
    /// Comma-separated set, e.g. 1,2,3.
    #[arg(long, value_parser = parse_set)]
    set: BTreeSet<u32>,
    /// Tableau JSON: {"shape": "2,1", "n": 3, "cells": [{"r":1,"c":1,"set":[1]}, ...]}.
    #[arg(long)]
    tableau: String,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GwRoute {
    Dd,
    Gen,
    All,
}

#[derive(Subcommand, Debug)]
enum HeckeCommand {
    /// The double Grothendieck polynomial of a permutation in S_{n+1}.
    Gw {
        /// One-line notation, comma-separated.
        #[arg(long)]
        perm: Permutation,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GwRoute::Gen)]
        route: GwRoute,
        #[arg(long)]
        json: bool,
    },
    /// Compare the module coefficient, the factorial polynomial and the algebra coefficient for λ.
    Final {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name or `all`.
    suite: String,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    max_part: Option<u32>,
    /// Run without the thread pool.
    #[arg(long)]
    sequential: bool,
    #[command(flatten)]
    common: Common,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_set(s: &str) -> Result<BTreeSet<u32>, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim().parse::<u32>().ok().filter(|&v| v > 0).ok_or_else(|| format!("`{t}` is not a positive integer"))
        })
        .collect()
}

/// What a successful command prints and whether a verification failed.
struct Outcome {
    text: String,
    json: Value,
    passed: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, passed: true }
    }
}

fn specialized(common: &Common) -> bool {
    matches!(common.mode, Some(Mode::Specialized))
}

fn groth(args: &GrothArgs) -> Result<Outcome> {
    let inner = args.skew.clone().unwrap_or_else(Partition::empty);
    let theta = SkewShape::new(args.shape.clone(), inner).context("invalid --skew")?;
    let kind: Kind = args.kind.parse()?;
    let params = if specialized(&args.common) {
        Params::random(args.common.seed, RandomSpec { a: true, b: true })
    } else {
        Params::symbolic()
    };
    let p = groth_poly(&theta, args.n, kind, &params, Execution::default());
    let json = json!({
        "shape": theta.to_string(),
        "n": args.n,
        "kind": kind.to_string(),
        "mode": mode_name(&args.common),
        "seed": args.common.seed,
        "poly": p.to_json_value(),
    });
    Ok(Outcome::ok(p.to_string(), json))
}

fn mode_name(common: &Common) -> &'static str {
    if specialized(common) {
        "specialized"
    } else {
        "symbolic"
    }
}

fn coeff(args: &CoeffArgs) -> Result<Outcome> {
    if args.nu.len() > args.n as usize {
        bail!("--nu {} has more than --n {} parts", args.nu, args.n);
    }
    let routes: Vec<Route> = match args.route {
        RouteArg::Comb => vec![Route::Comb],
        RouteArg::Expand => vec![Route::Expand],
        RouteArg::Recur => vec![Route::Recur],
        RouteArg::Chain => vec![Route::Chain],
        RouteArg::All => Route::ALL.to_vec(),
    };
    let beta = specialized(&args.common)
        .then(|| Params::random(args.common.seed, RandomSpec { a: false, b: false }).beta)
        .flatten();
    let mut values: Vec<(Route, Poly)> = Vec::new();
    for r in routes {
        let v = lr_coefficient(r, &args.theta, &args.mu, &args.nu, args.n, beta.as_ref(), args.common.seed)
            .with_context(|| format!("route {r}"))?;
        values.push((r, v));
    }
    let query = format!("c^{}_{{{},{}}}, n={}", args.nu, args.theta, args.mu, args.n);
    let beta_text = beta.as_ref().map(fmt_rational);
    let mismatch = values.iter().find(|(_, v)| *v != values[0].1);

    let mut text = String::new();
    if values.len() == 1 {
        text.push_str(&values[0].1.to_string());
    } else {
        text.push_str(&values.iter().map(|(r, v)| format!("{r}: {v}")).collect::<Vec<_>>().join("\n"));
    }
    if let Some((r, v)) = mismatch {
        let (r0, v0) = &values[0];
        text.push_str(&format!("\nmismatch: {query}: {r0} = {v0}, {r} = {v}"));
        text.push_str(&format!(
            " under beta={}, seed={}",
            beta_text.as_deref().unwrap_or("symbolic"),
            args.common.seed
        ));
    }

    let mut json = json!({
        "theta": args.theta.to_string(),
        "mu": args.mu.to_string(),
        "nu": args.nu.to_string(),
        "n": args.n,
        "mode": mode_name(&args.common),
        "seed": args.common.seed,
        "beta": beta_text,
        "values": values.iter().map(|(r, v)| (r.to_string(), v.to_json_value())).collect::<serde_json::Map<_, _>>(),
    });
    if args.witness {
        let witnesses = lr_witnesses(&args.theta, &args.mu, &args.nu, args.n);
        text.push_str(&format!("\nwitnesses: {}", witnesses.len()));
        for (t, chain) in &witnesses {
            let chain: Vec<String> = chain.iter().map(|p| p.to_string()).collect();
            text.push_str(&format!("\n  {}  chain {}", t.to_json(), chain.join(" -> ")));
        }
        json["witnesses"] = witnesses
            .iter()
            .map(|(t, chain)| json!({ "tableau": t.to_json_value(), "chain": chain.iter().map(|p| p.to_string()).collect::<Vec<_>>() }))
            .collect();
    }
    Ok(Outcome { text, json, passed: mismatch.is_none() })
}

fn insert(args: &InsertArgs) -> Result<Outcome> {
    let t = SetValuedTableau::from_json(&args.tableau).context("invalid --tableau")?;
    if let Some(&v) = args.set.iter().find(|&&v| v > t.n()) {
        bail!("--set entry {v} exceeds the tableau's n = {}", t.n());
    }
    let (out, trace) = tableau_insert_traced(&args.set, &t).context("insertion rejected --tableau")?;
    let mut text = out.to_json();
    for s in &trace {
        text.push_str(&format!("\nrow {}: inserted {:?} ejected {:?}", s.row, s.inserted, s.ejected));
    }
    let json = json!({ "tableau": out.to_json_value(), "trace": serde_json::to_value(&trace)? });
    Ok(Outcome::ok(text, json))
}

fn hecke(cmd: &HeckeCommand) -> Result<Outcome> {
    match cmd {
        HeckeCommand::Gw { perm, n, route, .. } => {
            if perm.support() > n + 1 {
                bail!("--perm {perm} is not in S_{}", n + 1);
            }
            let mut values: Vec<(&str, Poly)> = Vec::new();
            if matches!(route, GwRoute::Dd | GwRoute::All) {
                values.push(("dd", double_groth_dd(perm, *n)?));
            }
            if matches!(route, GwRoute::Gen | GwRoute::All) {
                values.push(("gen", double_groth_gen(perm, *n)?));
            }
            let passed = values.iter().all(|(_, v)| *v == values[0].1);
            let mut text = if values.len() == 1 {
                values[0].1.to_string()
            } else {
                values.iter().map(|(r, v)| format!("{r}: {v}")).collect::<Vec<_>>().join("\n")
            };
            if !passed {
                text.push_str(&format!("\nmismatch: G_{perm}, n={n}: dd and gen differ"));
            }
            let json = json!({
                "perm": perm.to_string(),
                "n": n,
                "values": values.iter().map(|(r, v)| (r.to_string(), v.to_json_value())).collect::<serde_json::Map<_, _>>(),
            });
            Ok(Outcome { text, json, passed })
        }
        HeckeCommand::Final { lambda, p, k, n, .. } => {
            let r = theorem_final_check(lambda, *p, *k, *n).context("invalid --lambda/--p/--n combination")?;
            let passed = r.holds();
            let text = format!(
                "module coefficient: {}\nfactorial polynomial: {}\nalgebra coefficient: {}\n{}",
                r.module_coefficient,
                r.factorial,
                r.algebra_coefficient,
                if passed { "equal" } else { "mismatch" }
            );
            let json = json!({
                "lambda": lambda.to_string(),
                "p": p, "k": k, "n": n,
                "module_coefficient": r.module_coefficient.to_json_value(),
                "factorial": r.factorial.to_json_value(),
                "algebra_coefficient": r.algebra_coefficient.to_json_value(),
                "holds": passed,
            });
            Ok(Outcome { text, json, passed })
        }
    }
}

fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        let suite = args
            .suite
            .parse()
            .map_err(|_| anyhow!("unknown suite `{}`; expected one of {} or all", args.suite, names.join(", ")))?;
        vec![suite]
    };
    let opts = Options {
        seed: args.common.seed,
        n: args.n,
        max_part: args.max_part,
        mode: args.common.mode,
        exec: if args.sequential { Execution::Sequential } else { Execution::default() },
    };
    let reports: Vec<_> = suites.iter().map(|s| s.run(&opts)).collect();
    let passed = reports.iter().all(|r| r.passed());
    let text = reports.iter().map(|r| r.to_string()).collect::<String>().trim_end().to_string();
    Ok(Outcome { text, json: serde_json::to_value(&reports)?, passed })
}

fn wants_json(cmd: &Command) -> bool {
    match cmd {
        Command::Groth(a) => a.common.json,
        Command::Coeff(a) => a.common.json,
        Command::Insert(a) => a.json,
        Command::Hecke { command: HeckeCommand::Gw { json, .. } | HeckeCommand::Final { json, .. } } => *json,
        Command::Verify(a) => a.common.json,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Groth(a) => groth(a),
        Command::Coeff(a) => coeff(a),
        Command::Insert(a) => insert(a),
        Command::Hecke { command } => hecke(command),
        Command::Verify(a) => verify(a),
    };
    match outcome {
        Ok(o) => {
            if wants_json(&cli.command) {
                println!("{}", serde_json::to_string_pretty(&o.json).expect("json output"));
            } else {
                println!("{}", o.text);
            }
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
