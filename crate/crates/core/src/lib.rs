//! Exact treewidth on graphs with at most 63 vertices.
//!
//! The crate provides the classical subset DP, polynomial-space divide and
//! conquer, a two-stage polynomial-space solver built on bag candidates and
//! connected-set enumeration, and versions of these algorithms executed under
//! a cost model in which minimum finding over `N` candidates is charged
//! `⌈√N⌉` oracle calls. The [`exponents`] module evaluates the entropy-based
//! running-time exponents of those algorithms.

pub mod enumeration;
pub mod error;
pub mod exponents;
pub mod fv;
pub mod graph;
pub mod io;
pub mod ordering;
pub mod quantum;
pub mod solve;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::Graph;
pub use vertex_set::VertexSet;
