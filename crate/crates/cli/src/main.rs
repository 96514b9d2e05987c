//! `resolvent`: completion of finitely presented algebras over GF(p) to
//! rewriting systems, Betti tables from two resolution engines, and the
//! identity-verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 inconclusive completion.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use resolvent_core::anick::AnickResolution;
use resolvent_core::cohom::CochainComplex;
use resolvent_core::freealg::{parse_poly, Alphabet, NcPoly};
use resolvent_core::presets;
use resolvent_core::report::SuiteCheck;
use resolvent_core::rewrite::{complete, CompleteError, Presentation, RewriteSystem};
use resolvent_core::suites;
use resolvent_core::ttp::{Ttp, TwistParams};

const EXIT_VERIFICATION_FAILURE: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser)]
#[command(
    name = "resolvent",
    version,
    about = "Exact resolutions and cohomology of finitely presented algebras over GF(p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    out: OutFormat,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Engine {
    Anick,
    Ttp,
}

#[derive(Subcommand)]
enum Command {
    /// Complete a presentation to a rewriting system and certify its
    /// dimension
    Groebner(InputArgs),
    /// Betti table (dimensions of the dualized resolution's cohomology)
    Betti(BettiArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Preset family: nichols | bosonization | H27 | trunc
    #[arg(long, conflicts_with = "file")]
    preset: Option<String>,

    /// Presentation file (JSON: characteristic, generators, parameters,
    /// relations)
    #[arg(long)]
    file: Option<PathBuf>,

    /// Characteristic for the nichols/bosonization/trunc presets
    #[arg(long, default_value_t = 3)]
    p: u64,

    /// Group order for the bosonization preset (default: p)
    #[arg(long)]
    q: Option<u64>,

    /// Lifting parameter eps in {0, 1}
    #[arg(long, default_value_t = 0)]
    eps: u64,

    /// Lifting parameter mu in GF(3)
    #[arg(long, default_value_t = 0)]
    mu: u64,

    /// Lifting parameter tau in GF(3)
    #[arg(long, default_value_t = 0)]
    tau: u64,

    /// Truncation exponents for the trunc preset, e.g. --exps 2,3,4
    #[arg(long, value_delimiter = ',')]
    exps: Option<Vec<usize>>,

    /// Degree bound: completion cap for `groebner`, top cohomological
    /// degree for `betti`, verification depth for `verify`. Clamped by
    /// RESOLVENT_MAX_DEGREE when that variable is set.
    #[arg(long)]
    max_degree: Option<usize>,
}

#[derive(Args)]
struct BettiArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Resolution engine; `ttp` applies to the nichols and bosonization
    /// presets only
    #[arg(long, value_enum, default_value_t = Engine::Anick)]
    engine: Engine,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: anick | ttp | h27 | all
    #[arg(long)]
    suite: String,

    #[command(flatten)]
    input: InputArgs,
}

#[derive(Deserialize)]
struct PresentationFile {
    characteristic: u64,
    generators: Vec<String>,
    #[serde(default)]
    parameters: BTreeMap<String, i64>,
    relations: Vec<String>,
}

#[derive(Serialize)]
struct Report {
    schema_version: u32,
    command: String,
    input: InputDesc,
    #[serde(skip_serializing_if = "Option::is_none")]
    engine: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tips: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis_max_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rule_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    betti: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<Vec<CheckOut>>,
}

#[derive(Serialize)]
struct InputDesc {
    source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    characteristic: Option<u64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    parameters: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    suite: Option<String>,
}

#[derive(Serialize)]
struct CheckOut {
    name: String,
    status: String,
    detail: String,
}

fn check_out(c: &SuiteCheck) -> CheckOut {
    CheckOut {
        name: c.name.clone(),
        status: if c.passed { "pass" } else { "fail" }.to_string(),
        detail: c.detail.clone(),
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ! {
    eprintln!("error: {}", msg);
    std::process::exit(EXIT_USAGE);
}

/// Hard cap from the environment, applied on top of any --max-degree.
fn effective_max_degree(requested: usize) -> usize {
    match std::env::var("RESOLVENT_MAX_DEGREE") {
        Ok(v) => match v.parse::<usize>() {
            Ok(cap) => requested.min(cap),
            Err(_) => usage_error(format!(
                "RESOLVENT_MAX_DEGREE must be an integer, got `{}`",
                v
            )),
        },
        Err(_) => requested,
    }
}

enum InputKind {
    Nichols,
    Bosonization,
    Lifting,
    Truncated,
    File,
}

struct ResolvedInput {
    kind: InputKind,
    source: String,
    presentation: Presentation,
    parameters: BTreeMap<String, u64>,
    p: u64,
    q: u64,
}

fn resolve_input(args: &InputArgs) -> ResolvedInput {
    if let Some(path) = &args.file {
        let text = std::fs::read_to_string(path)
            .unwrap_or_else(|e| usage_error(format!("cannot read {}: {}", path.display(), e)));
        let file: PresentationFile = serde_json::from_str(&text)
            .unwrap_or_else(|e| usage_error(format!("{}: {}", path.display(), e)));
        let field = resolvent_core::gfp::Fp::new(file.characteristic)
            .unwrap_or_else(|e| usage_error(e));
        let alphabet = Alphabet::new(file.generators.clone()).unwrap_or_else(|e| usage_error(e));
        let params: std::collections::HashMap<String, u64> = file
            .parameters
            .iter()
            .map(|(k, &v)| (k.clone(), field.reduce(v)))
            .collect();
        let relations: Vec<NcPoly> = file
            .relations
            .iter()
            .map(|r| {
                parse_poly(r, &alphabet, field, &params)
                    .unwrap_or_else(|e| usage_error(format!("relation `{}`: {}", r, e)))
            })
            .collect();
        let presentation = Presentation::new(alphabet, field, relations)
            .unwrap_or_else(|e| usage_error(e));
        return ResolvedInput {
            kind: InputKind::File,
            source: format!("file:{}", path.display()),
            presentation,
            parameters: params.into_iter().collect(),
            p: file.characteristic,
            q: file.characteristic,
        };
    }

    let preset = args.preset.as_deref().unwrap_or("nichols");
    let p = args.p;
    let q = args.q.unwrap_or(p);
    match preset.to_ascii_lowercase().as_str() {
        "nichols" => ResolvedInput {
            kind: InputKind::Nichols,
            source: "preset:nichols".to_string(),
            presentation: presets::nichols(p).unwrap_or_else(|e| usage_error(e)),
            parameters: BTreeMap::from([("p".to_string(), p)]),
            p,
            q,
        },
        "bosonization" => ResolvedInput {
            kind: InputKind::Bosonization,
            source: "preset:bosonization".to_string(),
            presentation: presets::bosonization(p, q).unwrap_or_else(|e| usage_error(e)),
            parameters: BTreeMap::from([("p".to_string(), p), ("q".to_string(), q)]),
            p,
            q,
        },
        "h27" => ResolvedInput {
            kind: InputKind::Lifting,
            source: "preset:H27".to_string(),
            presentation: presets::h27(args.eps, args.mu, args.tau)
                .unwrap_or_else(|e| usage_error(e)),
            parameters: BTreeMap::from([
                ("eps".to_string(), args.eps % 3),
                ("mu".to_string(), args.mu % 3),
                ("tau".to_string(), args.tau % 3),
            ]),
            p: 3,
            q: 3,
        },
        "trunc" => {
            let exps = match &args.exps {
                Some(v) if v.len() == 3 => [v[0], v[1], v[2]],
                None => [3, 3, 3],
                _ => usage_error("--exps takes exactly three values"),
            };
            ResolvedInput {
                kind: InputKind::Truncated,
                source: "preset:trunc".to_string(),
                presentation: presets::truncated(exps, p).unwrap_or_else(|e| usage_error(e)),
                parameters: BTreeMap::from([
                    ("p".to_string(), p),
                    ("m1".to_string(), exps[0] as u64),
                    ("m2".to_string(), exps[1] as u64),
                    ("m3".to_string(), exps[2] as u64),
                ]),
                p,
                q: p,
            }
        }
        other => usage_error(format!(
            "unknown preset `{}` (expected nichols, bosonization, H27, or trunc)",
            other
        )),
    }
}

fn complete_or_exit(input: &ResolvedInput, cap: usize) -> RewriteSystem {
    match complete(&input.presentation, cap) {
        Ok(rs) => rs,
        Err(e @ CompleteError::Inconclusive { .. }) => {
            eprintln!("error: {}", e);
            std::process::exit(EXIT_INCONCLUSIVE);
        }
    }
}

fn emit(out: OutFormat, report: &Report, text: String, started: Instant) {
    match out {
        OutFormat::Json => {
            println!("{}", serde_json::to_string_pretty(report).expect("serialize"));
        }
        OutFormat::Text => {
            print!("{}", text);
            println!("elapsed: {:.1?}", started.elapsed());
        }
    }
}

fn cmd_groebner(args: &InputArgs, out: OutFormat) {
    let started = Instant::now();
    let input = resolve_input(args);
    let default_cap = input.presentation.default_degree_cap();
    let cap = effective_max_degree(args.max_degree.unwrap_or(default_cap));
    let rs = complete_or_exit(&input, cap);

    let alphabet = rs.alphabet().clone();
    let tips: Vec<String> = rs.tips().iter().map(|t| t.display(&alphabet)).collect();
    let basis_max_degree = rs
        .normal_words()
        .iter()
        .map(|w| w.degree())
        .max()
        .unwrap_or(0);

    let mut text = String::new();
    text.push_str(&format!(
        "algebra: {} over GF({})\n",
        input.source, input.p
    ));
    text.push_str(&format!("tips ({}): {}\n", tips.len(), tips.join(", ")));
    text.push_str(&format!("dimension: {}\n", rs.dim()));
    text.push_str(&format!(
        "certificate: {} rules, normal words exhausted at degree {}, completion cap {}\n",
        rs.rules().len(),
        basis_max_degree,
        cap
    ));

    let report = Report {
        schema_version: 1,
        command: "groebner".to_string(),
        input: InputDesc {
            source: input.source.clone(),
            characteristic: Some(input.p),
            parameters: input.parameters.clone(),
            max_degree: Some(cap),
            suite: None,
        },
        engine: None,
        tips: Some(tips),
        dimension: Some(rs.dim()),
        basis_max_degree: Some(basis_max_degree),
        rule_count: Some(rs.rules().len()),
        betti: None,
        checks: None,
    };
    emit(out, &report, text, started);
}

fn cmd_betti(args: &BettiArgs, out: OutFormat) {
    let started = Instant::now();
    let input = resolve_input(&args.input);
    let top = effective_max_degree(args.input.max_degree.unwrap_or(6));

    let betti = match args.engine {
        Engine::Anick => {
            let cap = input.presentation.default_degree_cap();
            let rs = complete_or_exit(&input, cap);
            let mut res = AnickResolution::new(rs).unwrap_or_else(|e| usage_error(e));
            let cc = CochainComplex::from_anick(&mut res, top + 1)
                .unwrap_or_else(|e| usage_error(e));
            cc.betti_table(top)
        }
        Engine::Ttp => {
            let params = TwistParams::new(input.p, input.q).unwrap_or_else(|e| usage_error(e));
            let ttp = Ttp::new(params).unwrap_or_else(|e| usage_error(e));
            match input.kind {
                InputKind::Nichols => CochainComplex::from_k(&ttp, top + 1).betti_table(top),
                InputKind::Bosonization => CochainComplex::from_y(&ttp, top + 1).betti_table(top),
                _ => usage_error(
                    "--engine ttp applies to the nichols and bosonization presets only",
                ),
            }
        }
    };

    let mut text = String::new();
    text.push_str(&format!(
        "Betti table for {} over GF({}), engine {}\n",
        input.source,
        input.p,
        match args.engine {
            Engine::Anick => "anick",
            Engine::Ttp => "ttp",
        }
    ));
    text.push_str("  n   dim H^n\n");
    for (n, b) in betti.iter().enumerate() {
        text.push_str(&format!("{:>3}   {}\n", n, b));
    }

    let report = Report {
        schema_version: 1,
        command: "betti".to_string(),
        input: InputDesc {
            source: input.source.clone(),
            characteristic: Some(input.p),
            parameters: input.parameters.clone(),
            max_degree: Some(top),
            suite: None,
        },
        engine: Some(
            match args.engine {
                Engine::Anick => "anick",
                Engine::Ttp => "ttp",
            }
            .to_string(),
        ),
        tips: None,
        dimension: None,
        basis_max_degree: None,
        rule_count: None,
        betti: Some(betti),
        checks: None,
    };
    emit(out, &report, text, started);
}

fn cmd_verify(args: &VerifyArgs, out: OutFormat) {
    let started = Instant::now();
    let suite = args.suite.to_ascii_lowercase();
    let p = args.input.p;
    let q = args.input.q.unwrap_or(p);

    let checks: Vec<SuiteCheck> = match suite.as_str() {
        "anick" => {
            let exps = match &args.input.exps {
                Some(v) if v.len() == 3 => [v[0], v[1], v[2]],
                None => [3, 3, 3],
                _ => usage_error("--exps takes exactly three values"),
            };
            let depth = effective_max_degree(args.input.max_degree.unwrap_or(8));
            suites::anick_suite(p, exps, depth)
        }
        "ttp" => suites::ttp_identity_suite(p, q),
        "h27" => suites::lifting_suite(),
        "all" => suites::all_suites(),
        other => usage_error(format!(
            "unknown suite `{}` (expected anick, ttp, h27, or all)",
            other
        )),
    }
    .unwrap_or_else(|e| usage_error(e));

    let passed = checks.iter().filter(|c| c.passed).count();
    let mut text = String::new();
    text.push_str(&format!("verification suite: {}\n", suite));
    for c in &checks {
        text.push_str(&format!(
            "{} {}: {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    text.push_str(&format!("{}/{} checks passed\n", passed, checks.len()));

    let report = Report {
        schema_version: 1,
        command: "verify".to_string(),
        input: InputDesc {
            source: match suite.as_str() {
                "anick" => "preset:trunc".to_string(),
                "ttp" => "preset:bosonization".to_string(),
                "h27" => "preset:H27".to_string(),
                _ => "all presets".to_string(),
            },
            characteristic: if suite == "h27" || suite == "all" {
                Some(3)
            } else {
                Some(p)
            },
            parameters: BTreeMap::new(),
            max_degree: args.input.max_degree,
            suite: Some(suite.clone()),
        },
        engine: None,
        tips: None,
        dimension: None,
        basis_max_degree: None,
        rule_count: None,
        betti: None,
        checks: Some(checks.iter().map(check_out).collect()),
    };
    emit(out, &report, text, started);

    if passed != checks.len() {
        std::process::exit(EXIT_VERIFICATION_FAILURE);
    }
}

fn main() {
    let cli = Cli::parse();
    match &cli.command {
        Command::Groebner(args) => cmd_groebner(args, cli.out),
        Command::Betti(args) => cmd_betti(args, cli.out),
        Command::Verify(args) => cmd_verify(args, cli.out),
    }
}
