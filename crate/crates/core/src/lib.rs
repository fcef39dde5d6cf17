//! Exact independence ratios of tensor (categorical) graph products.
//!
//! The crate computes the independence ratio `i(G)`, the expansion ratio
//! `a(G)` of independent sets and its capped variant `a*(G)`, decides whether
//! the limit of `i(G^k)` equals one through fractional perfect matchings,
//! builds certified independent sets in tensor powers, and runs the
//! experiments exposed by the `ucir` command line tool.
//!
//! Every ratio is an exact [`Rational`]; floating point only appears in the
//! spectral bound of [`bounds`].

pub mod bounds;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod independence;
pub mod limits;
pub mod matching;
pub mod powers;
pub mod ratio;

pub use error::{Error, Result};
pub use graph::{Family, FamilyTag, Graph, VertexSet};
pub use limits::Limits;
pub use ratio::Rational;
