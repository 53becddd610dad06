//! The `treeweight` command line.
//!
//! ```text
//! treeweight weigh     --grammar G.rtg --algebra size|height|minterm|affine:C.costs
//!                      [--algorithm naive|liquid|lazy] [--trace T.json]
//!                      [--witness] [--stats] [--format table|structured]
//! treeweight prune     --grammar G.rtg --out OUT.rtg
//! treeweight enumerate --grammar G.rtg --algebra A --nonterminal N --count K
//! treeweight sat       --cnf F.cnf [--emit-grammar OUT.rtg] [--varsets]
//! ```
//!
//! Exit status is 0 on success, 1 for unreadable, malformed or invalid input
//! and 2 when a resource cap stops the run. Weights of empty languages print
//! as `INF`. Timing appears only in the `--stats` output on stderr.
//!
//! The `table` format prints `NAME = WEIGHT` per nonterminal, with the
//! witness term appended after a tab when `--witness` is given (`-` for an
//! empty language). The `structured` format prints a JSON object
//! `{"algorithm", "weights": [{"nonterminal", "weight", "witness"?}]}`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::algebra::{AffineAlgebra, HeightAlgebra, MinTermAlgebra, SizeAlgebra, WeightAlgebra};
use crate::grammar::Grammar;
use crate::kbest::{EnumerateError, Enumerator, DEFAULT_FRONTIER_CAP};
use crate::partial::{
    cnf_to_grammar, decide_sat_with, CnfFormula, PartialError, VarSetSolver, DEFAULT_ANTICHAIN_CAP,
};
use crate::solver::{
    extract_witnesses, prune_empty, trace_document, Algorithm, Solution, Solver, StopMode,
};

#[derive(Debug, Parser)]
#[command(
    name = "treeweight",
    version,
    about = "Minimal term weights for regular tree grammars"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimal weight of every nonterminal.
    Weigh(WeighArgs),
    /// Remove nonterminals with empty languages.
    Prune(PruneArgs),
    /// The lightest terms of one nonterminal, in weight order.
    Enumerate(EnumerateArgs),
    /// Decide a DIMACS CNF through the variable-set reduction.
    Sat(SatArgs),
}

#[derive(Debug, Args)]
struct WeighArgs {
    #[arg(long)]
    grammar: PathBuf,
    /// size, height, minterm, or affine:PATH
    #[arg(long)]
    algebra: String,
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Lazy)]
    algorithm: AlgorithmArg,
    /// Write the per-cycle trace document here.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    witness: bool,
    /// Print run statistics to stderr.
    #[arg(long)]
    stats: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Debug, Args)]
struct PruneArgs {
    #[arg(long)]
    grammar: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    grammar: PathBuf,
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    nonterminal: String,
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = DEFAULT_FRONTIER_CAP)]
    frontier_cap: usize,
}

#[derive(Debug, Args)]
struct SatArgs {
    #[arg(long)]
    cnf: PathBuf,
    /// Write the reduction grammar here.
    #[arg(long)]
    emit_grammar: Option<PathBuf>,
    /// Also print the start nonterminal's variable-set weight.
    #[arg(long)]
    varsets: bool,
    #[arg(long, default_value_t = DEFAULT_ANTICHAIN_CAP)]
    antichain_cap: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Naive,
    Liquid,
    Lazy,
}

impl AlgorithmArg {
    fn solver(self) -> Solver {
        match self {
            AlgorithmArg::Naive => Solver::naive(StopMode::EarlyStop),
            AlgorithmArg::Liquid => Solver::liquid_flow(),
            AlgorithmArg::Lazy => Solver::lazy(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Structured,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Resource(_) => 2,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

impl From<EnumerateError> for CliError {
    fn from(e: EnumerateError) -> Self {
        match e {
            EnumerateError::FrontierExceeded { .. } => CliError::Resource(e.to_string()),
            EnumerateError::Solver(_) => input(e),
        }
    }
}

impl From<PartialError> for CliError {
    fn from(e: PartialError) -> Self {
        match e {
            PartialError::AntichainTooLarge { .. } => CliError::Resource(e.to_string()),
            _ => input(e),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Weigh(a) => weigh(&a, out, err),
        Command::Prune(a) => prune(&a),
        Command::Enumerate(a) => enumerate(&a, out),
        Command::Sat(a) => sat(&a, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_grammar(path: &Path) -> Result<Grammar, CliError> {
    Grammar::parse(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Calls `$body` with `$alg` bound to the algebra named by `$spec`.
macro_rules! with_algebra {
    ($spec:expr, $g:expr, |$alg:ident| $body:expr) => {{
        let spec: &str = $spec;
        match spec {
            "size" => {
                let $alg = &SizeAlgebra;
                $body
            }
            "height" => {
                let $alg = &HeightAlgebra;
                $body
            }
            "minterm" => {
                let $alg = &MinTermAlgebra::for_signature($g.signature());
                $body
            }
            other => match other.strip_prefix("affine:") {
                Some(path) => {
                    let text = read(Path::new(path))?;
                    let a = AffineAlgebra::parse(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
                    let $alg = &a;
                    $body
                }
                None => Err(CliError::Input(format!(
                    "unknown algebra `{other}` (expected size, height, minterm or affine:PATH)"
                ))),
            },
        }
    }};
}

fn weigh(a: &WeighArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let g = load_grammar(&a.grammar)?;
    with_algebra!(&a.algebra, g, |alg| weigh_with(a, &g, alg, out, err))
}

fn weigh_with<A: WeightAlgebra>(
    a: &WeighArgs,
    g: &Grammar,
    alg: &A,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let start = Instant::now();
    let solution = a
        .algorithm
        .solver()
        .record_trace(a.trace.is_some())
        .solve(g, alg)
        .map_err(input)?;
    let elapsed = start.elapsed();

    if let Some(path) = &a.trace {
        let doc = trace_document(g, alg, &solution);
        write_file(
            path,
            &(serde_json::to_string_pretty(&doc).expect("json") + "\n"),
        )?;
    }

    let witnesses = if a.witness {
        // witnesses follow the lazy done order, whichever solver ran
        let lazy;
        let source: &Solution<A::Weight> = if solution.algorithm == Algorithm::Lazy {
            &solution
        } else {
            lazy = Solver::lazy()
                .record_trace(false)
                .solve(g, alg)
                .map_err(input)?;
            &lazy
        };
        Some(extract_witnesses(g, alg, source).map_err(input)?)
    } else {
        None
    };

    let mut text = String::new();
    match a.format {
        Format::Table => {
            for (n, w) in solution.weights.iter() {
                text.push_str(&format!("{} = {}", g.name(n), alg.render(w)));
                if let Some(ws) = &witnesses {
                    match ws.get(n) {
                        Some(t) => text.push_str(&format!("\t{t}")),
                        None => text.push_str("\t-"),
                    }
                }
                text.push('\n');
            }
        }
        Format::Structured => {
            let weights: Vec<_> = solution
                .weights
                .iter()
                .map(|(n, w)| {
                    let mut e = json!({ "nonterminal": g.name(n), "weight": alg.render(w) });
                    if let Some(ws) = &witnesses {
                        e["witness"] = ws.get(n).map(|t| t.to_string()).into();
                    }
                    e
                })
                .collect();
            let doc = json!({ "algorithm": solution.algorithm.to_string(), "weights": weights });
            text = serde_json::to_string_pretty(&doc).expect("json") + "\n";
        }
    }
    out.write_all(text.as_bytes()).map_err(input)?;

    if a.stats {
        let s = g.stats();
        let _ = writeln!(
            err,
            "algorithm={} nt={} al={} ar={} cycles={} evaluations={} heap_operations={} max_changes={} time_us={}",
            solution.algorithm,
            s.nt,
            s.al,
            s.ar,
            solution.stats.cycles,
            solution.stats.alternative_evaluations,
            solution.stats.heap_operations,
            solution.stats.value_changes.iter().max().copied().unwrap_or(0),
            elapsed.as_micros()
        );
    }
    Ok(())
}

fn prune(a: &PruneArgs) -> Result<(), CliError> {
    let g = load_grammar(&a.grammar)?;
    let solution = Solver::lazy()
        .record_trace(false)
        .solve(&g, &SizeAlgebra)
        .map_err(input)?;
    let pruned = prune_empty(&g, &SizeAlgebra, &solution.weights);
    write_file(&a.out, &pruned.to_string())
}

fn enumerate(a: &EnumerateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let g = load_grammar(&a.grammar)?;
    let n = g.nonterminal(&a.nonterminal).map_err(input)?;
    with_algebra!(&a.algebra, g, |alg| {
        let terms = Enumerator::new()
            .frontier_cap(a.frontier_cap)
            .run(&g, alg, n, a.count)?;
        let text: String = terms
            .iter()
            .map(|(t, w)| format!("{}\t{t}\n", alg.render(w)))
            .collect();
        out.write_all(text.as_bytes()).map_err(input)
    })
}

fn sat(a: &SatArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let text = read(&a.cnf)?;
    let cnf = CnfFormula::parse_dimacs(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", a.cnf.display())))?;
    if let Some(path) = &a.emit_grammar {
        write_file(path, &cnf_to_grammar(&cnf).to_string())?;
    }
    let outcome = decide_sat_with(&cnf, VarSetSolver::new().antichain_cap(a.antichain_cap))?;
    let mut text = String::new();
    match outcome.render_assignment() {
        Some(assignment) => {
            text.push_str("SATISFIABLE\n");
            text.push_str(&format!("v {assignment} 0\n"));
        }
        None => text.push_str("UNSATISFIABLE\n"),
    }
    if a.varsets {
        text.push_str(&outcome.variables.render(&outcome.start_weight));
    }
    out.write_all(text.as_bytes()).map_err(input)
}
