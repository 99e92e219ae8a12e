//! One entry point over every method, with a fixed-width worker pool.

use std::fmt;
use std::str::FromStr;

use crate::algebraic::algebraic_bc_counted;
use crate::brandes::brandes_bc_counted;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{oracle_bc, OracleCaps};
use crate::parallel::{pairwise_bc, parallel_forward_counted, wavefront_dependencies, SampleConfig};
use crate::scores::BcVector;
use crate::stats::WorkCounters;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Brandes,
    Algebraic,
    ParallelPairwise,
    ParallelWavefront,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 5] =
        [Method::Brandes, Method::Algebraic, Method::ParallelPairwise, Method::ParallelWavefront, Method::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Method::Brandes => "brandes",
            Method::Algebraic => "algebraic",
            Method::ParallelPairwise => "parallel-pairwise",
            Method::ParallelWavefront => "parallel-wavefront",
            Method::Oracle => "oracle",
        }
    }

    /// Whether the method can run on `g` at all (ignoring size caps).
    pub fn supports(self, g: &Graph) -> bool {
        match self {
            Method::Brandes | Method::Oracle => true,
            Method::Algebraic => !g.is_directed() && g.is_connected(),
            Method::ParallelPairwise | Method::ParallelWavefront => g.is_connected(),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComputeOptions {
    /// Worker-pool width; `None` uses rayon's default.
    pub threads: Option<usize>,
    pub sampling: SampleConfig,
    /// Halve undirected scores (each path is seen from both ends).
    pub normalize: bool,
    pub oracle_caps: OracleCaps,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions {
            threads: None,
            sampling: SampleConfig::default(),
            normalize: true,
            oracle_caps: OracleCaps::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub scores: BcVector,
    pub counters: WorkCounters,
}

/// Runs `f` on a dedicated pool of `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Error::InvalidParameter("thread count must be positive".into())),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::InvalidParameter(format!("cannot start {t} workers: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Number of workers [`with_threads`] would run with.
pub fn pool_width(threads: Option<usize>) -> usize {
    threads.unwrap_or_else(rayon::current_num_threads)
}

/// Betweenness of every vertex of `g` by `method`.
pub fn compute(g: &Graph, method: Method, opts: &ComputeOptions) -> Result<Outcome> {
    with_threads(opts.threads, || compute_here(g, method, opts))?
}

fn compute_here(g: &Graph, method: Method, opts: &ComputeOptions) -> Result<Outcome> {
    let mut counters = WorkCounters::default();
    let scores = match method {
        Method::Brandes => {
            let (bc, relaxations) = brandes_bc_counted(g)?;
            counters.relaxations = relaxations;
            bc
        }
        Method::Algebraic => algebraic_bc_counted(g, &mut counters)?,
        Method::ParallelPairwise => {
            let apsp = parallel_forward_counted(g, &opts.sampling, &mut counters)?;
            pairwise_bc(&apsp, g.is_directed())
        }
        Method::ParallelWavefront => {
            let apsp = parallel_forward_counted(g, &opts.sampling, &mut counters)?;
            wavefront_dependencies(g, &apsp)?.betweenness(g.is_directed())
        }
        Method::Oracle => oracle_bc(g, opts.oracle_caps)?.rounded,
    };
    let scores = if opts.normalize || g.is_directed() {
        scores
    } else {
        BcVector(scores.0.into_iter().map(|x| x * 2.0).collect())
    };
    Ok(Outcome { scores, counters })
}
