//! `betweenness`: compute, verify, generate and benchmark.

mod bench;
mod report;
mod table;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use betweenness::generators::{with_random_weights, GenSpec};
use betweenness::oracle::OracleCaps;
use betweenness::parallel::{pairwise_bc, parallel_forward, SampleConfig};
use betweenness::{compute, pool_width, with_threads, BcVector, ComputeOptions, Graph, Method};
use clap::{Args, Parser, Subcommand};

use report::{Failure, RunReport};

#[derive(Parser)]
#[command(name = "betweenness", version, about = "Exact betweenness centrality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score every vertex of an edge-list file.
    Compute(ComputeArgs),
    /// Run every applicable method and compare.
    Verify(VerifyArgs),
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
    /// Time methods over a corpus and print a tab-separated table.
    Bench(bench::BenchArgs),
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Worker-pool width.
    #[arg(long, env = "BC_THREADS")]
    threads: Option<usize>,
    /// Seed of the sampling generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Oversampling constant of the sampled forward pass.
    #[arg(long = "sample-c", default_value_t = 3.0)]
    sample_c: f64,
    /// Sampling rounds before giving up.
    #[arg(long, default_value_t = 64)]
    max_rounds: usize,
}

impl RunArgs {
    fn options(&self) -> ComputeOptions {
        ComputeOptions {
            threads: self.threads,
            sampling: SampleConfig { c: self.sample_c, seed: self.seed, max_rounds: self.max_rounds },
            normalize: true,
            oracle_caps: OracleCaps::default(),
        }
    }
}

#[derive(Args)]
struct ComputeArgs {
    file: PathBuf,
    #[arg(long, default_value = "brandes")]
    method: String,
    #[command(flatten)]
    run: RunArgs,
    /// Report raw ordered-pair sums for undirected graphs.
    #[arg(long)]
    no_normalize: bool,
    /// Write the table here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    #[command(flatten)]
    run: RunArgs,
    /// Leave the enumeration oracle out.
    #[arg(long)]
    skip_oracle: bool,
    /// Perturb path counts before the pairwise backward pass.
    #[arg(long, hide = true)]
    corrupt_lambda: bool,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: Family,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Replace unit weights by uniform weights in `1..=M`.
    #[arg(long, global = true)]
    max_weight: Option<u64>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy)]
enum Family {
    Cycle { n: usize },
    Path { n: usize },
    Star { n: usize },
    Complete { n: usize },
    Gnp { n: usize, p: f64 },
    BoundedDegree { n: usize, d: usize },
    TripartiteLb { n: usize },
    Lattice { layers: usize, width: usize },
}

impl Family {
    fn spec(self, seed: u64) -> GenSpec {
        match self {
            Family::Cycle { n } => GenSpec::Cycle { n },
            Family::Path { n } => GenSpec::Path { n },
            Family::Star { n } => GenSpec::Star { n },
            Family::Complete { n } => GenSpec::Complete { n },
            Family::Gnp { n, p } => GenSpec::Gnp { n, p, seed },
            Family::BoundedDegree { n, d } => GenSpec::BoundedDegree { n, d, seed },
            Family::TripartiteLb { n } => GenSpec::TripartiteLb { n },
            Family::Lattice { layers, width } => GenSpec::Lattice { layers, width },
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let mut report = RunReport::new("usage");
            report.record_failure(&Failure::Usage(e.kind().to_string()));
            report.emit();
            return ExitCode::from(report::EXIT_INPUT as u8);
        }
    };

    let start = Instant::now();
    let (mut report, result) = match cli.command {
        Command::Compute(args) => run_compute(args),
        Command::Verify(args) => run_verify(args),
        Command::Gen(args) => run_gen(args),
        Command::Bench(args) => bench::run(args),
    };
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    if let Err(failure) = &result {
        eprintln!("error: {failure}");
        report.record_failure(failure);
    }
    report.emit();
    ExitCode::from(report.exit_code as u8)
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(Graph::from_edge_list(&text)?)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn output_name(out: Option<&Path>) -> String {
    out.map_or_else(|| "-".to_string(), |p| p.display().to_string())
}

fn run_compute(args: ComputeArgs) -> (RunReport, Result<(), Failure>) {
    let mut report = RunReport::new("compute");
    report.method = Some(args.method.clone());
    report.threads = Some(pool_width(args.run.threads));
    report.output = Some(output_name(args.out.as_deref()));
    let result = (|| {
        let method: Method = args.method.parse()?;
        let graph = read_graph(&args.file)?;
        let opts = ComputeOptions { normalize: !args.no_normalize, ..args.run.options() };
        let outcome = compute(&graph, method, &opts)?;
        if matches!(method, Method::ParallelPairwise | Method::ParallelWavefront) {
            report.rounds = Some(outcome.counters.rounds);
        }
        write_output(args.out.as_deref(), &table::format_table(&outcome.scores))
    })();
    (report, result)
}

fn run_verify(args: VerifyArgs) -> (RunReport, Result<(), Failure>) {
    let mut report = RunReport::new("verify");
    report.threads = Some(pool_width(args.run.threads));
    report.output = Some("-".into());
    let result = (|| {
        let graph = read_graph(&args.file)?;
        let opts = args.run.options();
        let mut runs: Vec<(String, BcVector)> = Vec::new();
        for method in Method::ALL {
            if (args.skip_oracle && method == Method::Oracle) || !method.supports(&graph) {
                continue;
            }
            let scores = if args.corrupt_lambda && method == Method::ParallelPairwise {
                corrupted_pairwise(&graph, &opts)?
            } else {
                compute(&graph, method, &opts)?.scores
            };
            runs.push((method.name().to_string(), scores));
        }
        let (reference_name, reference) = &runs[0];
        let mut worst = 0.0f64;
        let mut agree = true;
        let mut lines = format!("method\tdeviation_from_{reference_name}\n");
        for (name, scores) in &runs {
            lines.push_str(&format!("{name}\t{:e}\n", scores.max_abs_diff(reference)));
            for (_, other) in &runs {
                worst = worst.max(scores.max_abs_diff(other));
                agree &= scores.approx_eq(other);
            }
        }
        lines.push_str(&format!("{}\t{worst:e}\n", if agree { "pass" } else { "fail" }));
        write_output(None, &lines)?;
        if agree {
            Ok(())
        } else {
            Err(Failure::Deviation(worst))
        }
    })();
    (report, result)
}

/// Pairwise scores after adding one to every count out of vertex 0 that is
/// not a plain arc, so any pair with an interior vertex is misweighted.
fn corrupted_pairwise(graph: &Graph, opts: &ComputeOptions) -> Result<BcVector, Failure> {
    let scores = with_threads(opts.threads, || -> betweenness::Result<BcVector> {
        let mut apsp = parallel_forward(graph, &opts.sampling)?;
        for t in 0..graph.n() {
            if apsp.dist[(0, t)].get().is_some_and(|d| d >= 2) {
                apsp.counts[(0, t)] += 1;
            }
        }
        Ok(pairwise_bc(&apsp, graph.is_directed()))
    })??;
    Ok(scores)
}

fn run_gen(args: GenArgs) -> (RunReport, Result<(), Failure>) {
    let mut report = RunReport::new("gen");
    report.output = Some(output_name(args.out.as_deref()));
    let result = (|| {
        let mut graph = args.family.spec(args.seed).generate()?;
        if let Some(m) = args.max_weight {
            graph = with_random_weights(&graph, m, args.seed)?;
        }
        write_output(args.out.as_deref(), &graph.to_edge_list())
    })();
    (report, result)
}
