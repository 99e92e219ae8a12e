//! `bench`: per-(graph, method, threads) timings and work counters.

use std::str::FromStr;
use std::time::Instant;

use betweenness::generators::GenSpec;
use betweenness::{compute, ComputeOptions, Error, Method};
use clap::Args;

use crate::report::{Failure, RunReport};
use crate::table::checksum;

#[derive(Args)]
pub struct BenchArgs {
    /// Graphs as `family:param:...`, e.g. `gnp:500:0.02:1` or `cycle:101`.
    #[arg(long, value_delimiter = ',', required = true)]
    corpus: Vec<CorpusEntry>,
    #[arg(long, value_delimiter = ',', default_value = "brandes")]
    methods: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    threads: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "sample-c", default_value_t = 3.0)]
    sample_c: f64,
}

#[derive(Clone, Debug)]
struct CorpusEntry {
    label: String,
    spec: GenSpec,
}

impl FromStr for CorpusEntry {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || format!("bad corpus entry {s:?}");
        let int = |i: usize| parts.get(i).ok_or_else(bad)?.parse::<usize>().map_err(|_| bad());
        let seed = || parts.get(3).map_or(Ok(0), |x| x.parse::<u64>().map_err(|_| bad()));
        let spec = match parts[0] {
            "cycle" => GenSpec::Cycle { n: int(1)? },
            "path" => GenSpec::Path { n: int(1)? },
            "star" => GenSpec::Star { n: int(1)? },
            "complete" => GenSpec::Complete { n: int(1)? },
            "tripartite-lb" => GenSpec::TripartiteLb { n: int(1)? },
            "lattice" => GenSpec::Lattice { layers: int(1)?, width: int(2)? },
            "bounded-degree" => GenSpec::BoundedDegree { n: int(1)?, d: int(2)?, seed: seed()? },
            "gnp" => {
                let p = parts.get(2).ok_or_else(bad)?.parse::<f64>().map_err(|_| bad())?;
                GenSpec::Gnp { n: int(1)?, p, seed: seed()? }
            }
            _ => return Err(bad()),
        };
        Ok(CorpusEntry { label: s.to_string(), spec })
    }
}

pub fn run(args: BenchArgs) -> (RunReport, Result<(), Failure>) {
    let mut report = RunReport::new("bench");
    report.output = Some("-".into());
    let result = (|| {
        let methods = args.methods.iter().map(|m| m.parse::<Method>()).collect::<Result<Vec<_>, Error>>()?;
        println!("graph\tmethod\tthreads\twall_ms\trelaxations\tproducts\tforward_iters\trounds\tchecksum");
        for entry in &args.corpus {
            let graph = entry.spec.generate()?;
            for &method in &methods {
                for &threads in &args.threads {
                    let mut opts = ComputeOptions { threads: Some(threads), ..Default::default() };
                    opts.sampling.seed = args.seed;
                    opts.sampling.c = args.sample_c;
                    let start = Instant::now();
                    let outcome = compute(&graph, method, &opts)?;
                    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
                    let c = outcome.counters;
                    println!(
                        "{}\t{method}\t{threads}\t{wall_ms:.3}\t{}\t{}\t{}\t{}\t{:016x}",
                        entry.label,
                        c.relaxations,
                        c.products,
                        c.forward_iterations,
                        c.rounds,
                        checksum(&outcome.scores)
                    );
                }
            }
        }
        Ok(())
    })();
    (report, result)
}
