use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use grundy_forge::gw::{critical_parameter, curve_data, fixed_points, stability_profile, FamilyKind, Pgf};
use grundy_forge::report::curve_csv;
use grundy_forge::sampler::{empirical_distribution_with, DEFAULT_NODE_BUDGET};
use grundy_forge::{load_graph, product_graph, reduce_k, solve, sum_value, Error, GameGraph, SGValue};

#[derive(Parser)]
#[command(name = "grundy-forge", version, about = "Extended Sprague-Grundy values and Galton-Watson game trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a game graph.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Remove every position of value below K and re-solve.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// Also write the reduced graph to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Disjunctive sum of two games, solved on the product graph and by the value algebra.
    Sum {
        left: PathBuf,
        right: PathBuf,
        /// Root of the left game, instead of its declared root.
        #[arg(long)]
        root1: Option<String>,
        #[arg(long)]
        root2: Option<String>,
    },
    /// Galton-Watson tree analysis.
    #[command(subcommand)]
    Gw(Gw),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Gw {
    /// Fixed points of h and the P/N/D probabilities.
    Analyze(FamilyArgs),
    /// Draw-freeness of the reduction chain.
    Profile {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
    },
    /// Parameter at which draws first appear by the given level.
    Critical {
        #[arg(long)]
        family: FamilyKind,
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Tabulate h(s) - s for the level-L reduced law as CSV.
    Curve {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long, default_value_t = 201)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certified root values of sampled trees.
    Sample {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 1000)]
        trees: usize,
        #[arg(long, default_value_t = 40)]
        depth: u32,
        #[arg(long, env = "GRUNDY_FORGE_SEED", default_value_t = 1)]
        seed: u64,
        /// Worker threads; 0 uses every core. Output does not depend on it.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Search steps per tree and query.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, required_unless_present = "weights")]
    family: Option<FamilyKind>,
    #[arg(long, required_unless_present = "weights", allow_hyphen_values = true)]
    param: Option<f64>,
    /// Offspring law as comma-separated probabilities p0,p1,...
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["family", "param"])]
    weights: Option<Vec<f64>>,
}

impl FamilyArgs {
    fn pgf(&self) -> Result<Pgf, Error> {
        match (&self.weights, self.family, self.param) {
            (Some(w), _, _) => Pgf::weights(w.clone()),
            (None, Some(f), Some(p)) => f.pgf(p),
            _ => unreachable!("clap enforces the family flags"),
        }
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::UndeclaredTarget { .. }
            | Error::DuplicatePosition { .. }
            | Error::DuplicateArc { .. }
            | Error::EmptyGraph => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn read_graph(path: &Path) -> Result<GameGraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    load_graph(&text).map_err(|e| match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
        f => f,
    })
}

fn with_root(mut g: GameGraph, root: Option<&str>) -> Result<GameGraph, Failure> {
    if let Some(id) = root {
        let r = g.index_of(id).ok_or_else(|| Failure::Usage(format!("no position `{id}`")))?;
        g.set_root(r);
    }
    Ok(g)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct ReduceOutput<'a> {
    #[serde(flatten)]
    report: &'a grundy_forge::ReductionReport,
    graph: String,
    solution: grundy_forge::Solution,
}

#[derive(Serialize)]
struct SumOutput {
    left: SGValue,
    right: SGValue,
    product_positions: usize,
    product_root: SGValue,
    sum_value: SGValue,
    agree: bool,
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Solve { file, format } => {
            let s = solve(&read_graph(&file)?);
            Ok(match format {
                Format::Json => json(&s),
                Format::Table => s.to_table(),
            })
        }
        Command::Reduce { file, k, out } => {
            let report = reduce_k(&read_graph(&file)?, k)?;
            let graph = report.reduced.serialize();
            if let Some(path) = out {
                write_file(&path, &graph)?;
            }
            let solution = solve(&report.reduced);
            Ok(json(&ReduceOutput { report: &report, graph, solution }))
        }
        Command::Sum { left, right, root1, root2 } => {
            let v = with_root(read_graph(&left)?, root1.as_deref())?;
            let w = with_root(read_graph(&right)?, root2.as_deref())?;
            let (a, b) = (solve(&v), solve(&w));
            let (a, b) = (a.root_value().cloned(), b.root_value().cloned());
            let (Some(a), Some(b)) = (a, b) else {
                return Err(Failure::Usage("both games need a root".into()));
            };
            let product = product_graph(&v, &w)?;
            let solved = solve(&product).root_value().cloned().expect("product has a root");
            let algebra = sum_value(&a, &b);
            Ok(json(&SumOutput {
                agree: solved == algebra,
                left: a,
                right: b,
                product_positions: product.len(),
                product_root: solved,
                sum_value: algebra,
            }))
        }
        Command::Gw(gw) => run_gw(gw),
    }
}

fn run_gw(gw: Gw) -> Result<String, Failure> {
    match gw {
        Gw::Analyze(f) => Ok(json(&fixed_points(&f.pgf()?)?)),
        Gw::Profile { family, max_k } => Ok(json(&stability_profile(&family.pgf()?, max_k)?)),
        Gw::Critical { family, level, lo, hi, tol } => Ok(json(&critical_parameter(family, level, lo, hi, tol)?)),
        Gw::Curve { family, level, samples, out } => {
            let csv = curve_csv(&curve_data(&family.pgf()?, level, samples)?);
            match out {
                Some(path) => {
                    write_file(&path, &csv)?;
                    Ok(String::new())
                }
                None => Ok(csv),
            }
        }
        Gw::Sample { family, trees, depth, seed, jobs, budget } => {
            let phi = family.pgf()?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let dist = pool.install(|| empirical_distribution_with(&phi, depth, trees, seed, budget))?;
            Ok(json(&dist))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
