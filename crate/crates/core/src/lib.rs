//! Exact betweenness centrality by four independent routes.
//!
//! * [`brandes`]: one counting search per source plus reverse accumulation.
//! * [`algebraic`]: distances, path counts and dependencies from dense matrix
//!   products (undirected graphs).
//! * [`parallel`]: a sampled, certified parallel forward pass followed by a
//!   pairwise or wavefront backward pass.
//! * [`oracle`]: path enumeration with exact rational sums, for small graphs.
//!
//! All of them agree to within [`TOLERANCE`] on every graph they accept.
//!
//! ```
//! use betweenness::{generators, compute, ComputeOptions, Method};
//!
//! let c9 = generators::cycle(9)?;
//! let out = compute(&c9, Method::Algebraic, &ComputeOptions::default())?;
//! assert!(out.scores.iter().all(|&bc| (bc - 6.0).abs() < 1e-9));
//! # Ok::<(), betweenness::Error>(())
//! ```

pub mod algebraic;
pub mod brandes;
mod dist;
mod error;
pub mod generators;
pub mod graph;
pub mod matrix;
mod method;
pub mod oracle;
pub mod parallel;
mod scores;
mod stats;

pub use dist::Dist;
pub use error::{EdgeFault, Error, Result};
pub use graph::{Edge, Graph, Neighbor, VertexId};
pub use method::{compute, pool_width, with_threads, ComputeOptions, Method, Outcome};
pub use scores::{close, ApspResult, BcVector, DependencyResult, TOLERANCE};
pub use stats::WorkCounters;
