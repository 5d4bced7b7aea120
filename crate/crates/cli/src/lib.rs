//! `wed` subcommands and report formatting.
//!
//! Exit codes: 0 solved (or a passing check), 1 `verify` found a defect, 2 input
//! error, 3 no finite-weight efficient dominating set, 4 the input contains an
//! induced P6, 5 the solver left its supported graph class.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use wed_core::format::{parse_instance, write_instance};
use wed_core::generate::{gen_instance, GenKind, GenParams};
use wed_core::oracle::brute_force_wed;
use wed_core::recognition::find_induced_p6;
use wed_core::solver::solve_wed_with;
use wed_core::{
    verify_ed, ClassViolation, Instance, SolveError, SolverOptions, SolverReport, SolverStats,
    Verdict, VertexSet,
};

pub const EXIT_SOLVED: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NO_ED: i32 = 3;
pub const EXIT_NOT_P6_FREE: i32 = 4;
pub const EXIT_CLASS_VIOLATION: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "wed",
    version,
    about = "Minimum-weight efficient dominating sets on P6-free graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve an instance file.
    Solve(SolveArgs),
    /// Solve with the brute-force exact-cover oracle.
    Oracle(InputArgs),
    /// Check a candidate set.
    Verify(VerifyArgs),
    /// Search for an induced P6.
    CheckP6(InputArgs),
    /// Write a seeded random instance to stdout.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Instance file, or `-` for stdin.
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub io: InputArgs,
    /// Refuse inputs that contain an induced P6.
    #[arg(long)]
    pub check_p6: bool,
    /// Only check this comma-separated, 1-based vertex list.
    #[arg(long, value_name = "SET")]
    pub verify_only: Option<String>,
    /// Use the brute-force oracle instead of the reduction solver.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub io: InputArgs,
    /// Comma-separated, 1-based vertex list.
    #[arg(long, value_name = "SET")]
    pub set: String,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: GenKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, env = "WED_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub min_weight: u64,
    #[arg(long, default_value_t = 1)]
    pub max_weight: u64,
    /// Fraction of vertices given weight ∞.
    #[arg(long, default_value_t = 0.0)]
    pub inf_fraction: f64,
    /// Unipolar: size of the clique side.
    #[arg(long)]
    pub b_size: Option<usize>,
    /// Unipolar: size of every other clique.
    #[arg(long)]
    pub clique_size: Option<usize>,
    /// Unipolar: resample until P6-free.
    #[arg(long)]
    pub p6_free: bool,
    /// Cograph: make the result connected.
    #[arg(long)]
    pub connected: bool,
}

fn parse_kind(s: &str) -> Result<GenKind, String> {
    s.parse()
}

/// What a subcommand printed and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: Option<String>,
}

impl Output {
    fn input_error(msg: impl Into<String>) -> Self {
        Output {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: Some(msg.into()),
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct JsonStats {
    pub min_degree: usize,
    pub branches: usize,
    pub anchor_branches: usize,
    pub reductions: usize,
    pub wall_ms: u64,
}

/// One report; `status` is always the first JSON field.
#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Report {
    Solved {
        weight: u64,
        vertices: Vec<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        stats: Option<JsonStats>,
    },
    NoEd,
    Valid {
        weight: u64,
    },
    Invalid {
        witness: usize,
        count: usize,
    },
    #[serde(rename = "invalid")]
    InfiniteMember {
        witness: usize,
        infinite_weight: bool,
    },
    NotP6Free {
        witness: Vec<usize>,
    },
    P6Free,
    ClassViolation {
        reason: String,
    },
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self {
            Report::Solved { .. } | Report::Valid { .. } | Report::P6Free => EXIT_SOLVED,
            Report::NoEd => EXIT_NO_ED,
            Report::Invalid { .. } | Report::InfiniteMember { .. } => EXIT_INVALID,
            Report::NotP6Free { .. } => EXIT_NOT_P6_FREE,
            Report::ClassViolation { .. } => EXIT_CLASS_VIOLATION,
        }
    }

    pub fn from_solver(report: &SolverReport, wall_ms: u64) -> Self {
        match &report.solution {
            Some(s) => Report::Solved {
                weight: s.total_weight,
                vertices: one_based(&s.members),
                stats: Some(json_stats(&report.stats, wall_ms)),
            },
            None => Report::NoEd,
        }
    }

    pub fn from_verdict(v: &Verdict) -> Self {
        match *v {
            Verdict::Valid { weight } => Report::Valid { weight },
            Verdict::Miscounted { vertex, count } => Report::Invalid {
                witness: vertex + 1,
                count,
            },
            Verdict::InfiniteMember { vertex } => Report::InfiniteMember {
                witness: vertex + 1,
                infinite_weight: true,
            },
        }
    }
}

fn json_stats(s: &SolverStats, wall_ms: u64) -> JsonStats {
    JsonStats {
        min_degree: s.min_degree,
        branches: s.branches,
        anchor_branches: s.anchor_branches,
        reductions: s.reductions,
        wall_ms,
    }
}

fn one_based(s: &VertexSet) -> Vec<usize> {
    s.iter().map(|v| v + 1).collect()
}

fn join(vs: &[usize]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders `report` as one JSON line or as `key: value` text lines.
pub fn emit_report(report: &Report, json: bool) -> String {
    if json {
        return serde_json::to_string(report).expect("report serialises") + "\n";
    }
    let mut out = String::new();
    match report {
        Report::Solved {
            weight,
            vertices,
            stats,
        } => {
            writeln!(
                out,
                "status: solved\nweight: {weight}\nvertices: {}",
                join(vertices)
            )
            .unwrap();
            if let Some(s) = stats {
                writeln!(
                    out,
                    "min_degree: {}\nbranches: {}\nanchor_branches: {}\nreductions: {}\nwall_ms: {}",
                    s.min_degree, s.branches, s.anchor_branches, s.reductions, s.wall_ms
                )
                .unwrap();
            }
        }
        Report::NoEd => out.push_str("status: no_ed\n"),
        Report::Valid { weight } => writeln!(out, "status: valid\nweight: {weight}").unwrap(),
        Report::Invalid { witness, count } => {
            writeln!(out, "status: invalid\nwitness: {witness}\ncount: {count}").unwrap()
        }
        Report::InfiniteMember { witness, .. } => writeln!(
            out,
            "status: invalid\nwitness: {witness}\ninfinite_weight: true"
        )
        .unwrap(),
        Report::NotP6Free { witness } => {
            writeln!(out, "status: not_p6_free\nwitness: {}", join(witness)).unwrap()
        }
        Report::P6Free => out.push_str("status: p6_free\n"),
        Report::ClassViolation { reason } => {
            writeln!(out, "status: class_violation\nreason: {reason}").unwrap()
        }
    }
    out
}

fn load(path: &Path) -> Result<Instance, String> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).map_err(|e| format!("stdin: {e}"))?
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
    };
    parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Parses a comma-separated 1-based vertex list.
pub fn parse_vertex_list(s: &str, n: usize) -> Result<VertexSet, String> {
    let mut set = VertexSet::new(n);
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok
            .parse()
            .map_err(|_| format!("`{tok}` is not a vertex id"))?;
        if v == 0 || v > n {
            return Err(format!("vertex {v} out of range 1..={n}"));
        }
        set.insert(v - 1);
    }
    Ok(set)
}

fn finish(report: Report, json: bool) -> Output {
    Output {
        code: report.exit_code(),
        stdout: emit_report(&report, json),
        stderr: None,
    }
}

fn verify(inst: &Instance, list: &str, json: bool) -> Output {
    match parse_vertex_list(list, inst.n()) {
        Ok(d) => finish(Report::from_verdict(&verify_ed(inst, &d)), json),
        Err(e) => Output::input_error(e),
    }
}

fn oracle(inst: &Instance, json: bool) -> Output {
    let report = match brute_force_wed(inst) {
        Some(s) => Report::Solved {
            weight: s.total_weight,
            vertices: one_based(&s.members),
            stats: None,
        },
        None => Report::NoEd,
    };
    finish(report, json)
}

fn solve(args: &SolveArgs) -> Output {
    let json = args.io.json;
    let inst = match load(&args.io.input) {
        Ok(i) => i,
        Err(e) => return Output::input_error(e),
    };
    if let Some(list) = &args.verify_only {
        return verify(&inst, list, json);
    }
    if args.check_p6 {
        if let Some(p) = find_induced_p6(inst.graph()) {
            return finish(
                Report::NotP6Free {
                    witness: p.iter().map(|v| v + 1).collect(),
                },
                json,
            );
        }
    }
    if args.oracle {
        return oracle(&inst, json);
    }
    let start = Instant::now();
    let result = solve_wed_with(
        &inst,
        &SolverOptions {
            parallel: args.parallel,
        },
    );
    let wall_ms = start.elapsed().as_millis() as u64;
    match result {
        Ok(r) => finish(Report::from_solver(&r, wall_ms), json),
        Err(SolveError::ClassViolation(c)) => finish(
            Report::ClassViolation {
                reason: describe(&c),
            },
            json,
        ),
        Err(e) => Output::input_error(e.to_string()),
    }
}

/// [`ClassViolation`] text with 1-based vertex ids.
pub fn describe(c: &ClassViolation) -> String {
    match *c {
        ClassViolation::DistanceLevel {
            root,
            vertex,
            distance,
        } => ClassViolation::DistanceLevel {
            root: root + 1,
            vertex: vertex + 1,
            distance,
        },
        ClassViolation::IncomparableContacts { b1, b2 } => ClassViolation::IncomparableContacts {
            b1: b1 + 1,
            b2: b2 + 1,
        },
        ClassViolation::OvertakeCycle(b) => ClassViolation::OvertakeCycle(b + 1),
    }
    .to_string()
}

fn generate(args: &GenArgs) -> Output {
    let mut params = GenParams::new(args.kind, args.n, args.p, args.seed).weights(
        args.min_weight,
        args.max_weight,
        args.inf_fraction,
    );
    if args.min_weight > args.max_weight {
        return Output::input_error("--min-weight exceeds --max-weight");
    }
    params.b_size = args.b_size;
    params.clique_size = args.clique_size;
    params.p6_free = args.p6_free;
    params.connected = args.connected;
    match gen_instance(&params) {
        Ok(g) => Output {
            code: EXIT_SOLVED,
            stdout: format!(
                "c {} n={} p={} seed={}\n{}",
                args.kind,
                args.n,
                args.p,
                args.seed,
                write_instance(&g.instance)
            ),
            stderr: None,
        },
        Err(e) => Output::input_error(e.to_string()),
    }
}

pub fn run(cli: &Cli) -> Output {
    match &cli.command {
        Command::Solve(a) => solve(a),
        Command::Oracle(a) => match load(&a.input) {
            Ok(inst) => oracle(&inst, a.json),
            Err(e) => Output::input_error(e),
        },
        Command::Verify(a) => match load(&a.io.input) {
            Ok(inst) => verify(&inst, &a.set, a.io.json),
            Err(e) => Output::input_error(e),
        },
        Command::CheckP6(a) => match load(&a.input) {
            Ok(inst) => finish(
                match find_induced_p6(inst.graph()) {
                    Some(p) => Report::NotP6Free {
                        witness: p.iter().map(|v| v + 1).collect(),
                    },
                    None => Report::P6Free,
                },
                a.json,
            ),
            Err(e) => Output::input_error(e),
        },
        Command::Gen(a) => generate(a),
    }
}
