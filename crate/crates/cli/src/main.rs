//! `ovgap`: generate OV instances, compile CNF formulas, build gadget graphs,
//! measure their diameter and verify the diameter dichotomy.
//!
//! Exit status: 0 on success or a passing verdict, 2 on a failing verdict,
//! 1 on usage, input or size-cap errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ovgap::construction::{
    build, count_summary, predict_counts, BuildOptions, Flavor, GadgetGraph,
};
use ovgap::graph::{approx2_diameter, exact_diameter};
use ovgap::ov::{gen_no_instance, gen_planted_distinct, gen_random, NoInstanceMode, OvInstance};
use ovgap::sat::{formula_to_ov, parse_dimacs};
use ovgap::verify::{check_dichotomy, ObservationOptions, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "ovgap", version, about = "4-OV to diameter gap reductions")]
struct Cli {
    /// Worker threads for construction and distance sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an OV instance.
    Gen(GenArgs),
    /// Compile a DIMACS CNF formula into an OV instance.
    Sat2ov {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the gadget graph of an OV instance.
    Build {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FlavorArg::Weighted)]
        flavor: FlavorArg,
        #[command(flatten)]
        caps: Caps,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Diameter of a graph file.
    Diam {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        /// Start vertex for approx2.
        #[arg(long)]
        start: Option<u32>,
    },
    /// Check the diameter dichotomy on an OV instance.
    Verify(VerifyArgs),
    /// Vertex and edge counts of a graph file.
    Stats { input: PathBuf },
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("kind").required(true))]
struct GenArgs {
    /// Independent bits with probability --density.
    #[arg(long, group = "kind")]
    random: bool,
    /// An instance with no orthogonal 4-tuple, repetition included.
    #[arg(long, group = "kind")]
    no_instance: bool,
    /// Four planted pairwise-distinct orthogonal vectors plus filler.
    #[arg(long, group = "kind")]
    planted: bool,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    l: usize,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long, value_enum, default_value_t = Mode::ForcedOne)]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Flavors::Both)]
    flavors: Flavors,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Skip explicit path certification.
    #[arg(long)]
    no_certify: bool,
    /// Skip the neighbourhood inclusion checks.
    #[arg(long)]
    no_lemmas: bool,
    /// Skip the structural observations on the weighted gadget.
    #[arg(long)]
    no_observations: bool,
    /// Seed for sampled observation checks on larger gadgets.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    caps: Caps,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
struct Caps {
    /// Largest dimension accepted by the builder.
    #[arg(long, default_value_t = BuildOptions::default().max_dim)]
    max_dim: usize,
    /// Refuse builds whose predicted edge count exceeds this.
    #[arg(long, default_value_t = BuildOptions::default().max_edges)]
    max_edges: u64,
}

impl Caps {
    fn options(self) -> BuildOptions {
        BuildOptions {
            max_dim: self.max_dim,
            max_edges: self.max_edges,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FlavorArg {
    Weighted,
    Unweighted,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Weighted => Flavor::Weighted,
            FlavorArg::Unweighted => Flavor::Unweighted,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Flavors {
    Weighted,
    Unweighted,
    Both,
}

impl Flavors {
    fn list(self) -> Vec<Flavor> {
        match self {
            Flavors::Weighted => vec![Flavor::Weighted],
            Flavors::Unweighted => vec![Flavor::Unweighted],
            Flavors::Both => vec![Flavor::Weighted, Flavor::Unweighted],
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    ForcedOne,
    Rejection,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Method {
    Exact,
    Approx2,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: cannot configure {t} threads: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn read_instance(path: &Path) -> Result<OvInstance, String> {
    OvInstance::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_graph(path: &Path) -> Result<GadgetGraph, String> {
    GadgetGraph::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// Writes to `path`, or to stdout when absent.
fn emit(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Gen(a) => {
            let s = if a.random {
                gen_random(a.n, a.l, a.density, a.seed)
            } else if a.no_instance {
                let mode = match a.mode {
                    Mode::ForcedOne => NoInstanceMode::ForcedOne,
                    Mode::Rejection => NoInstanceMode::Rejection {
                        density: a.density,
                        max_attempts: 10_000,
                    },
                };
                gen_no_instance(a.n, a.l, mode, a.seed)
            } else {
                gen_planted_distinct(a.n, a.l, a.seed)
            }
            .map_err(|e| e.to_string())?;
            emit(a.output.as_deref(), &s.to_text())?;
        }
        Command::Sat2ov { input, output } => {
            let f =
                parse_dimacs(&read(&input)?).map_err(|e| format!("{}: {e}", input.display()))?;
            let s = formula_to_ov(&f).map_err(|e| e.to_string())?;
            emit(output.as_deref(), &s.to_text())?;
        }
        Command::Build {
            input,
            flavor,
            caps,
            output,
        } => {
            let s = read_instance(&input)?;
            let g = build(&s, flavor.into(), &caps.options()).map_err(|e| e.to_string())?;
            emit(output.as_deref(), &g.to_text())?;
        }
        Command::Diam {
            input,
            method,
            start,
        } => {
            let g = read_graph(&input)?;
            let text = match method {
                Method::Exact => {
                    let d = exact_diameter(g.csr()).map_err(|e| e.to_string())?;
                    let (u, v) = d.witness;
                    format!(
                        "diameter {}\nwitness {} / {}\n",
                        d.value,
                        g.label(u),
                        g.label(v)
                    )
                }
                Method::Approx2 => {
                    let a = approx2_diameter(g.csr(), start).map_err(|e| e.to_string())?;
                    format!(
                        "estimate {} from {}\ndiameter in [{}, {}]\n",
                        a.estimate,
                        g.label(a.start),
                        a.lower,
                        a.upper
                    )
                }
            };
            emit(None, &text)?;
        }
        Command::Verify(a) => {
            let s = read_instance(&a.input)?;
            // Refuse oversized builds before any of them starts.
            let flavors = a.flavors.list();
            if s.len() >= 3 {
                for &f in &flavors {
                    let predicted = predict_counts(&s, f).map_err(|e| e.to_string())?;
                    if predicted.total_edges > a.caps.max_edges {
                        return Err(format!(
                            "{f} gadget would have {} edges, above --max-edges {}",
                            predicted.total_edges, a.caps.max_edges
                        ));
                    }
                }
            }
            let opts = VerifyOptions {
                build: a.caps.options(),
                certify: !a.no_certify,
                lemmas: !a.no_lemmas,
                observations: (!a.no_observations).then_some(ObservationOptions {
                    seed: a.seed,
                    ..Default::default()
                }),
            };
            let report = check_dichotomy(&s, &flavors, &opts).map_err(|e| e.to_string())?;
            let text = match a.format {
                Format::Text => report.to_string(),
                Format::Json => serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?,
            };
            emit(a.output.as_deref(), &with_newline(text))?;
            if !report.verdict.is_pass() {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Stats { input } => {
            let g = read_graph(&input)?;
            emit(None, &with_newline(count_summary(&g).to_string()))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
