use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use rainbowpath::chromatic::chromatic_number;
use rainbowpath::constructive::{
    compute_bounds, guaranteed_length, lemma1_procedure_with, lemma1_report, theorem2_colorful_path_with,
    theorem2_report, Grading, Lemma1Options, Theorem2Options,
};
use rainbowpath::gen_io::{decode_graph6, encode_graph6, generate, GeneratorSpec};
use rainbowpath::harness::{check_graph, run_corpus, HarnessConfig};
use rainbowpath::oracle::{
    gallai_roy_rainbow_path, longest_induced_path, longest_induced_rainbow_path, max_colorful_induced_path_from,
    OnExceed, SearchBudget,
};
use rainbowpath::{ColoredGraph, Coloring, Error, Graph};

#[derive(Parser)]
#[command(name = "rainbowpath", version, about = "Induced rainbow paths in colored triangle-free graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print graph6 lines for a graph family
    Generate {
        #[command(subcommand)]
        family: Family,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Exact bound parameters r, w, c for path order s, or the guaranteed order for a chromatic number
    Bounds {
        #[arg(long, conflicts_with = "chi")]
        s: Option<u32>,
        /// Print every s from 3 up to this value
        #[arg(long, requires = "s")]
        s_max: Option<u32>,
        /// Chromatic number (decimal, arbitrary size)
        #[arg(long)]
        chi: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Colorful induced path from a start vertex, by the color-class recursion
    Construct {
        graph6: String,
        #[command(flatten)]
        coloring: ColoringArgs,
        #[arg(long, default_value_t = 0)]
        v: usize,
        /// Chromatic lower bound; defaults to the exact chromatic number
        #[arg(long)]
        chi_lb: Option<usize>,
        #[arg(long)]
        trace: bool,
        /// Recompute the chromatic number of every recursive subgraph
        #[arg(long)]
        strict: bool,
    },
    /// Run the grading procedure for path order s
    Lemma1 {
        graph6: String,
        #[command(flatten)]
        coloring: ColoringArgs,
        /// Grading file: one line of vertex ids per part, then one line of colors per part
        #[arg(long)]
        grading: PathBuf,
        #[arg(long, default_value_t = 3)]
        s: usize,
        /// Grading colorability; defaults to the largest part palette
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        trace: bool,
        /// Skip the whole-graph witness scan
        #[arg(long)]
        no_global_scan: bool,
    },
    /// Exact search results for a graph (and coloring)
    Oracle {
        graph6: String,
        #[command(flatten)]
        coloring: ColoringArgs,
        /// Start vertex for the most-colorful path search
        #[arg(long)]
        v: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Sweep colorings of one graph and report on the rainbow-path conjecture
    Check {
        graph6: String,
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep every graph of a graph6 corpus file, writing JSON Lines reports
    Corpus {
        file: PathBuf,
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (0 = all cores)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Abort on malformed lines instead of skipping them
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Subcommand)]
enum Family {
    Cycle {
        #[arg(long)]
        n: usize,
    },
    /// Mycielski graph with the given chromatic number
    Mycielski {
        #[arg(long)]
        chi: usize,
    },
    Kneser {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of graphs, using seeds seed, seed+1, ...
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
}

#[derive(Args)]
struct ColoringArgs {
    /// Whitespace-separated colors in vertex order
    #[arg(long, conflicts_with = "coloring_file")]
    coloring: Option<String>,
    #[arg(long)]
    coloring_file: Option<PathBuf>,
}

impl ColoringArgs {
    fn load(&self) -> Result<Option<Coloring>, Error> {
        match (&self.coloring, &self.coloring_file) {
            (Some(text), _) => Coloring::parse(text).map(Some),
            (None, Some(path)) => Coloring::parse(&read(path)?).map(Some),
            (None, None) => Ok(None),
        }
    }

    /// The given coloring, or an optimal one.
    fn colored(&self, g: &Graph) -> Result<ColoredGraph, Error> {
        let coloring = match self.load()? {
            Some(c) => c,
            None => chromatic_number(g)?.witness,
        };
        ColoredGraph::new(g.clone(), coloring)
    }
}

#[derive(Args)]
struct BudgetArgs {
    /// Search node cap
    #[arg(long, default_value_t = 100_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 25)]
    max_vertices: usize,
    /// Return flagged best-effort results instead of failing when the budget runs out
    #[arg(long)]
    best_effort: bool,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_vertices: self.max_vertices,
            max_nodes: self.budget,
            on_exceed: if self.best_effort { OnExceed::BestEffort } else { OnExceed::Error },
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Canonical colorings per graph
    #[arg(long, default_value_t = 1000)]
    cap: usize,
    /// Colors allowed beyond the chromatic number
    #[arg(long, default_value_t = 0)]
    delta: usize,
    /// Random colorings drawn once the cap truncates enumeration
    #[arg(long, default_value_t = 0)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run the colorful-path construction from every vertex
    #[arg(long)]
    thorough: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

impl SweepArgs {
    fn config(&self) -> HarnessConfig {
        HarnessConfig {
            max_colors_delta: self.delta,
            coloring_cap: self.cap,
            sample_count: self.samples,
            seed: self.seed,
            budget: self.budget.budget(),
            thorough: self.thorough,
            ..HarnessConfig::default()
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))
}

/// Exit status 2 signals a recorded conjecture violation.
fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Generate { family, out } => {
            let specs: Vec<GeneratorSpec> = match family {
                Family::Cycle { n } => vec![GeneratorSpec::Cycle { n }],
                Family::Mycielski { chi } => vec![GeneratorSpec::MycielskianIterate { chi }],
                Family::Kneser { n, k } => vec![GeneratorSpec::Kneser { n, k }],
                Family::Random { n, p, seed, count } => {
                    (0..count).map(|i| GeneratorSpec::RandomTriangleFree { n, p, seed: seed + i }).collect()
                }
            };
            let mut text = String::new();
            for spec in &specs {
                text.push_str(&encode_graph6(&generate(spec)?));
                text.push('\n');
            }
            emit(&out, &text)?;
        }
        Command::Bounds { s, s_max, chi, json } => {
            if let Some(chi) = chi {
                let value: BigUint =
                    chi.parse().map_err(|e| Error::Parse(format!("chromatic number {chi:?}: {e}")))?;
                println!("{}", guaranteed_length(&value));
            } else {
                let s = s.unwrap_or(3);
                let rows = (s..=s_max.unwrap_or(s)).map(compute_bounds).collect::<Result<Vec<_>, _>>()?;
                if json {
                    println!("{}", to_json(&rows)?);
                } else {
                    println!("s\tr\tw_1\tc");
                    for b in rows {
                        println!("{}\t{}\t{}\t{}", b.s, b.r, b.w1(), b.c);
                    }
                }
            }
        }
        Command::Construct { graph6, coloring, v, chi_lb, trace, strict } => {
            let g = decode_graph6(&graph6)?;
            let cg = coloring.colored(&g)?;
            let chi_lb = match chi_lb {
                Some(k) => k,
                None => chromatic_number(&g)?.chi,
            };
            let result = theorem2_colorful_path_with(&cg, v, chi_lb, Theorem2Options { strict })?;
            if trace {
                print!("{}", theorem2_report(&result));
            } else {
                println!("{} colors={}", result.path, result.color_count);
            }
        }
        Command::Lemma1 { graph6, coloring, grading, s, k, trace, no_global_scan } => {
            let g = decode_graph6(&graph6)?;
            let cg = coloring.colored(&g)?;
            let grading = Grading::parse(&g, &read(&grading)?, k)?;
            let options = Lemma1Options { global_witness_scan: !no_global_scan, ..Lemma1Options::default() };
            let outcome = lemma1_procedure_with(&cg, &grading, s, &options)?;
            if trace {
                print!("{}", lemma1_report(&outcome));
            } else {
                println!("{}", to_json(&outcome.variant)?);
            }
        }
        Command::Oracle { graph6, coloring, v, budget } => {
            let g = decode_graph6(&graph6)?;
            let budget = budget.budget();
            let chi = chromatic_number(&g)?;
            println!("n={} m={} chi={}", g.vertex_count(), g.edge_count(), chi.chi);
            let lip = longest_induced_path(&g, &budget)?;
            println!("longest induced path: {} (order {}, exact {})", lip.path, lip.path.order(), lip.exact);
            if let Some(c) = coloring.load()? {
                let cg = ColoredGraph::new(g.clone(), c)?;
                let rainbow = longest_induced_rainbow_path(&cg, &budget)?;
                println!(
                    "longest induced rainbow path: {} (order {}, exact {})",
                    rainbow.path,
                    rainbow.path.order(),
                    rainbow.exact
                );
                let gr = gallai_roy_rainbow_path(&cg)?;
                println!("color-orientation rainbow path: {} (order {})", gr, gr.order());
                if let Some(v) = v {
                    let best = max_colorful_induced_path_from(&cg, v, &budget)?;
                    println!(
                        "most colorful induced path from {v}: {} ({} colors, exact {})",
                        best.path,
                        cg.color_count(best.path.vertices()),
                        best.exact
                    );
                }
            }
        }
        Command::Check { graph6, sweep, out } => {
            let g = decode_graph6(&graph6)?;
            let report = check_graph(&g, &sweep.config(), "cli")?;
            let mut text = serde_json::to_string(&report).map_err(|e| Error::Io(e.to_string()))?;
            text.push('\n');
            emit(&out, &text)?;
            if !report.holds_for_all_checked {
                eprintln!("conjecture violation recorded for {graph6}");
                return Ok(2);
            }
        }
        Command::Corpus { file, sweep, out, jobs, strict } => {
            let cfg = HarnessConfig { parallelism: jobs, abort_on_malformed: strict, ..sweep.config() };
            let summary = run_corpus(&file, out.as_deref(), &cfg)?;
            println!("{summary}");
            if summary.violations > 0 {
                return Ok(2);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
