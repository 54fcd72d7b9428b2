//! Exact computation of genus-0 Gopakumar-Vafa invariants of the multi-Banana
//! configurations `L_{1,w}` and `L_{2,2}`.
//!
//! The crate computes each partition function twice: once from closed-form
//! products of the weak Jacobi form `phi_{-2,1}` and the equivariant elliptic
//! genus of `C^2`, and once by brute-force enumeration of the admissible
//! multiplicity configurations along each branch of the support curve. The two
//! routes are compared term by term in [`gvpf::cross_check`].
//!
//! Module map:
//! - [`series`]: sparse truncated multivariate Laurent series over big integers.
//! - [`qseries`]: theta, eta, `phi_{-2,1}` and the elliptic genus as series.
//! - [`geometry`]: curve-class bases, hexagon relations and branch label tables.
//! - [`oracle`]: enumeration of branch partitions and the naive count.
//! - [`gvpf`]: closed-form partition functions and the cross-check engine.

pub mod error;
pub mod geometry;
pub mod gvpf;
pub mod oracle;
pub mod qseries;
pub mod series;

pub use error::{Error, Result};
pub use geometry::{BananaShape, BranchSpec, CurveClass};
pub use series::{ExponentVector, Order, PrefactorLedger, TruncatedSeries, VariableRegistry};
