//! The chapters of `book/` as modules, so `cargo test --doc` runs every
//! listing against the current library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../../book/src/brandes.md")]
pub mod brandes {}
#[doc = include_str!("../../../book/src/algebraic.md")]
pub mod algebraic {}
#[doc = include_str!("../../../book/src/parallel.md")]
pub mod parallel {}
#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}
#[doc = include_str!("../../../book/src/closed-forms.md")]
pub mod closed_forms {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
