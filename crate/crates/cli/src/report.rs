//! Exit codes and the structured run report written to standard error.

use std::fmt;

use betweenness::Error;
use serde::Serialize;

pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCOMPATIBLE: i32 = 2;
pub const EXIT_OVERFLOW: i32 = 3;
pub const EXIT_ORACLE_CAP: i32 = 4;
pub const EXIT_DEVIATION: i32 = 5;
pub const EXIT_ROUNDS: i32 = 6;

#[derive(Debug)]
pub enum Failure {
    Library(Error),
    Io(String),
    Usage(String),
    Deviation(f64),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Library(e) => match e {
                Error::Parse { .. } | Error::InvalidEdge { .. } | Error::InvalidParameter(_) => EXIT_INPUT,
                Error::DimensionMismatch { .. } => EXIT_INPUT,
                Error::Disconnected | Error::Unsupported(_) => EXIT_INCOMPATIBLE,
                Error::Overflow => EXIT_OVERFLOW,
                Error::OracleCap(_) => EXIT_ORACLE_CAP,
                Error::Inconsistent(_) | Error::DivisionByZero { .. } => EXIT_DEVIATION,
                Error::RoundsExhausted { .. } => EXIT_ROUNDS,
            },
            Failure::Io(_) | Failure::Usage(_) => EXIT_INPUT,
            Failure::Deviation(_) => EXIT_DEVIATION,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Library(e) => write!(f, "{e}"),
            Failure::Io(msg) | Failure::Usage(msg) => f.write_str(msg),
            Failure::Deviation(d) => write!(f, "methods disagree by {d:e}"),
        }
    }
}

/// One JSON line per invocation.
#[derive(Debug, Default, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub method: Option<String>,
    pub wall_ms: f64,
    pub threads: Option<usize>,
    pub rounds: Option<u64>,
    pub overflow: bool,
    pub infeasible: bool,
    pub output: Option<String>,
    pub exit_code: i32,
    pub error: Option<String>,
}

impl RunReport {
    pub fn new(command: &'static str) -> Self {
        RunReport { command, ..Default::default() }
    }

    pub fn record_failure(&mut self, failure: &Failure) {
        self.exit_code = failure.exit_code();
        self.overflow = self.exit_code == EXIT_OVERFLOW;
        self.infeasible = matches!(self.exit_code, EXIT_INCOMPATIBLE | EXIT_ORACLE_CAP | EXIT_ROUNDS);
        self.error = Some(failure.to_string());
    }

    pub fn emit(&self) {
        eprintln!("{}", serde_json::to_string(self).expect("report fields serialize"));
    }
}
