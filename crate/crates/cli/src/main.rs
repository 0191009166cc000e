//! Command-line driver: compute reduced motivic Poincaré series from graph
//! files or semigroup generators, run the structural check suite, derive
//! Heegaard-Floer tables for knots, and diff the engine against the
//! brute-force series oracle.
//!
//! Exit codes: 0 success, 1 failed check/diff/disagreement, 2 invalid input,
//! 3 internal assertion failure.

use std::ops::{Add, Sub};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use motivic::corpus;
use motivic::engine::{self, EngineError, SemigroupSpec};
use motivic::hfl;
use motivic::poly::{LaurentPoly, VarId, VarNames};
use motivic::resolution::{self, CurveInvariants, ResolutionData, ResolutionGraph};
use motivic::verify::{self, CheckReport};

#[derive(Parser)]
#[command(
    name = "motivic",
    version,
    about = "Reduced motivic Poincaré series of plane curve singularities"
)]
struct Cli {
    /// Size of the thread pool used for the parallel reduction (default: rayon's choice).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the reduced series P̄ of a graph file or a semigroup.
    Compute {
        /// Resolution graph JSON file.
        input: Option<PathBuf>,
        /// Comma-separated semigroup generators, e.g. --semigroup 2,3.
        #[arg(long)]
        semigroup: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Truncation degree of the unreduced series head (semigroup inputs).
        #[arg(long, default_value_t = 10)]
        truncate: i64,
    },
    /// Run the structural check suite on a graph's series.
    Check {
        input: PathBuf,
        /// Graph file of the sub-curve for the forgetting identity.
        #[arg(long, requires = "drop")]
        sub: Option<PathBuf>,
        /// Name of the t-variable to set to 1 (with --sub).
        #[arg(long)]
        drop: Option<String>,
        /// Test hook: corrupt the computed series before checking.
        #[arg(long, hide = true)]
        mutate: bool,
    },
    /// Derive the Heegaard-Floer polynomial of an irreducible curve two ways.
    Hfl {
        /// Resolution graph JSON file (must have exactly one arrow).
        input: Option<PathBuf>,
        #[arg(long)]
        semigroup: Option<String>,
        /// Print the closed-form A_{2n-1} link polynomial instead.
        #[arg(long)]
        a2n1: Option<u32>,
    },
    /// Diff the engine against the truncated brute-force series expansion.
    Oracle {
        input: PathBuf,
        /// Total t-degree of the comparison (default: the full degree Σ l_α).
        #[arg(long = "t-bound")]
        t_bound: Option<i64>,
    },
    /// List the bundled example graphs, or write them out as JSON files.
    Examples {
        #[arg(long)]
        write_dir: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    /// Invalid input: exit code 2.
    Input(String),
    /// Internal assertion failure: exit code 3.
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::BadGenerators => CliError::Input(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn load_graph(path: &Path) -> Result<ResolutionGraph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("cannot parse {}: {e}", path.display())))
}

fn validated(path: &Path) -> Result<(ResolutionData, CurveInvariants), CliError> {
    let graph = load_graph(path)?;
    let data = resolution::validate(&graph).map_err(|e| CliError::Input(e.to_string()))?;
    let inv = data
        .milnor_numbers()
        .map_err(|e| CliError::Input(e.to_string()))?;
    Ok((data, inv))
}

fn parse_semigroup(text: &str) -> Result<SemigroupSpec, CliError> {
    let generators: Result<Vec<u64>, _> = text.split(',').map(|p| p.trim().parse()).collect();
    let generators =
        generators.map_err(|e| CliError::Input(format!("invalid semigroup list: {e}")))?;
    Ok(SemigroupSpec::new(generators))
}

fn graph_names(graph: &ResolutionGraph) -> VarNames {
    VarNames::t_names(graph.arrow_names())
}

/// Serialise a polynomial in t-variables and q as a JSON term list
/// [{"coeff": "...", "q": n, "t": [...]}, ...] in canonical order.
fn poly_to_json(p: &LaurentPoly, r: usize) -> Result<serde_json::Value, CliError> {
    let mut terms = Vec::new();
    for (m, c) in p.iter() {
        let d = m.q_exp_doubled();
        if d % 2 != 0 {
            return Err(CliError::Internal(format!(
                "half-integer q power in output: {p}"
            )));
        }
        let t: Vec<i64> = (0..r).map(|a| m.exponent(VarId::T(a as u16))).collect();
        terms.push(serde_json::json!({
            "coeff": c.to_string(),
            "q": d / 2,
            "t": t,
        }));
    }
    Ok(serde_json::Value::Array(terms))
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Compute {
            input,
            semigroup,
            format,
            truncate,
        } => cmd_compute(input, semigroup, format, truncate),
        Command::Check {
            input,
            sub,
            drop,
            mutate,
        } => cmd_check(&input, sub, drop, mutate),
        Command::Hfl {
            input,
            semigroup,
            a2n1,
        } => cmd_hfl(input, semigroup, a2n1),
        Command::Oracle { input, t_bound } => cmd_oracle(&input, t_bound),
        Command::Examples { write_dir } => cmd_examples(write_dir),
    }
}

fn cmd_compute(
    input: Option<PathBuf>,
    semigroup: Option<String>,
    format: Format,
    truncate: i64,
) -> Result<u8, CliError> {
    match (input, semigroup) {
        (Some(path), None) => {
            let (data, inv) = validated(&path)?;
            let pbar = engine::assemble(&data, &inv)?;
            match format {
                Format::Text => println!("{}", pbar.render(&graph_names(&data.graph))),
                Format::Json => {
                    println!("{}", poly_to_json(&pbar, data.r())?)
                }
            }
            Ok(0)
        }
        (None, Some(text)) => {
            let spec = parse_semigroup(&text)?;
            let series = engine::semigroup_series(&spec, truncate)?;
            let names = VarNames::t_names(vec!["t".into()]);
            match format {
                Format::Text => {
                    println!("{}", series.pbar.render(&names));
                    println!(
                        "pg_head: {} + O(t^{})",
                        series.pg_head.render(&names),
                        truncate + 1
                    );
                    println!("conductor: {}", series.conductor);
                }
                Format::Json => {
                    let value = serde_json::json!({
                        "pbar": poly_to_json(&series.pbar, 1)?,
                        "pg_head": poly_to_json(&series.pg_head, 1)?,
                        "conductor": series.conductor,
                    });
                    println!("{value}");
                }
            }
            Ok(0)
        }
        _ => Err(CliError::Input(
            "exactly one input source required: a graph file or --semigroup".into(),
        )),
    }
}

fn print_report(report: &CheckReport, names: &VarNames) -> bool {
    if report.pass {
        println!("{}: PASS", report.name);
    } else {
        let witness = report
            .witness
            .as_ref()
            .map(|w| w.render(names))
            .unwrap_or_default();
        println!("{}: FAIL witness: {}", report.name, witness);
    }
    report.pass
}

fn cmd_check(
    input: &Path,
    sub: Option<PathBuf>,
    drop: Option<String>,
    mutate: bool,
) -> Result<u8, CliError> {
    let (data, inv) = validated(input)?;
    let mut pbar = engine::assemble(&data, &inv)?;
    if mutate {
        pbar = pbar.add(&LaurentPoly::q());
    }
    let names = graph_names(&data.graph);
    let mut all_pass = true;

    all_pass &= print_report(&verify::check_symmetry(&pbar, &inv), &names);
    let (delta, alex_report) = verify::check_alexander(&pbar, data.r());
    all_pass &= print_report(&alex_report, &names);
    if let Some(delta) = delta {
        println!("alexander_polynomial: {}", delta.render(&names));
    }
    all_pass &= print_report(&verify::check_degree(&pbar, &inv), &names);

    if data.r() == 1 {
        all_pass &= print_report(&verify::check_forget_unit(&pbar), &names);
    }
    if let (Some(sub_path), Some(drop_name)) = (sub, drop) {
        let dropped = data
            .graph
            .arrow_names()
            .iter()
            .position(|n| *n == drop_name)
            .ok_or_else(|| CliError::Input(format!("no arrow named {drop_name}")))?;
        let (sub_data, sub_inv) = validated(&sub_path)?;
        let sub_pbar = engine::assemble(&sub_data, &sub_inv)?;
        all_pass &= print_report(&verify::check_forget(&pbar, &sub_pbar, dropped), &names);
    }

    Ok(if all_pass { 0 } else { 1 })
}

fn cmd_hfl(
    input: Option<PathBuf>,
    semigroup: Option<String>,
    a2n1: Option<u32>,
) -> Result<u8, CliError> {
    let sources = input.is_some() as u8 + semigroup.is_some() as u8 + a2n1.is_some() as u8;
    if sources != 1 {
        return Err(CliError::Input(
            "exactly one of a graph file, --semigroup, or --a2n1 is required".into(),
        ));
    }
    if let Some(n) = a2n1 {
        if n == 0 {
            return Err(CliError::Input("--a2n1 takes n >= 1".into()));
        }
        println!("{}", hfl::hfl_a2n1_closed(n));
        return Ok(0);
    }
    let pbar = if let Some(text) = semigroup {
        engine::semigroup_series(&parse_semigroup(&text)?, 0)?.pbar
    } else {
        let (data, inv) = validated(&input.unwrap())?;
        if data.r() != 1 {
            return Err(CliError::Input(format!(
                "Heegaard-Floer derivation needs an irreducible curve; graph has {} branches",
                data.r()
            )));
        }
        engine::assemble(&data, &inv)?
    };
    let names = VarNames::knot();
    println!("pbar: {}", pbar.render(&names));
    let delta = pbar.evaluate_ones(&[VarId::Q]);
    println!("alexander: {}", delta.render(&names));
    let table = hfl::delta_sequence(&delta).map_err(|e| CliError::Internal(e.to_string()))?;
    let rows: Vec<String> = table
        .entries
        .iter()
        .map(|(n, d)| format!("({n}, {d})"))
        .collect();
    println!("table (alexander, maslov): {}", rows.join(" "));
    let via_staircase = table.to_poly();
    let via_transform = hfl::hfl_from_pbar(&pbar).map_err(|e| CliError::Internal(e.to_string()))?;
    println!("hfl (staircase): {}", via_staircase.render(&names));
    println!("hfl (transform): {}", via_transform.render(&names));
    if via_staircase == via_transform {
        println!("AGREE");
        Ok(0)
    } else {
        println!("DISAGREE");
        Ok(1)
    }
}

fn cmd_oracle(input: &Path, t_bound: Option<i64>) -> Result<u8, CliError> {
    let (data, inv) = validated(input)?;
    let full: i64 = inv.l_alpha.iter().sum();
    let bound = t_bound.unwrap_or(full);
    let names = graph_names(&data.graph);
    let assembled = engine::assemble(&data, &inv)?;
    let truncated = assembled.filtered(|m| {
        (0..data.r())
            .map(|a| m.exponent(VarId::T(a as u16)))
            .sum::<i64>()
            <= bound
    });
    let oracle = engine::oracle_series(&data, bound);
    println!("engine: {}", truncated.render(&names));
    println!("oracle: {}", oracle.render(&names));
    let diff = truncated.sub(&oracle);
    if diff.is_zero() {
        println!("diff: empty");
        Ok(0)
    } else {
        println!("diff: {}", diff.render(&names));
        Ok(1)
    }
}

fn cmd_examples(write_dir: Option<PathBuf>) -> Result<u8, CliError> {
    let graphs = corpus::all_graphs();
    match write_dir {
        None => {
            for (name, graph) in &graphs {
                println!("{name}: {} divisors, {} branches", graph.s(), graph.r());
            }
            println!("torus_3_5_semigroup: --semigroup 3,5");
        }
        Some(dir) => {
            std::fs::create_dir_all(&dir)
                .map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))?;
            for (name, graph) in &graphs {
                let path = dir.join(format!("{name}.json"));
                let text = serde_json::to_string_pretty(graph)
                    .map_err(|e| CliError::Internal(e.to_string()))?;
                std::fs::write(&path, text + "\n").map_err(|e| {
                    CliError::Input(format!("cannot write {}: {e}", path.display()))
                })?;
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(0)
}
