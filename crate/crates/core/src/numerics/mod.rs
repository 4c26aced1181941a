//! Scalar analysis kernel shared by every bound evaluator.
//!
//! Everything here is a pure function of its inputs: bracketed root
//! finding, guarded unimodal maximization, the binary entropy family and
//! its inverse, and overflow-safe log-domain combinatorics.

mod entropy;
mod logdomain;
mod roots;

pub use entropy::{binary_entropy, cross_entropy, divergence, entropy_family, entropy_inverse, EntropyFamily};
pub use logdomain::{ln_binomial, ln_factorials, log2_binomial, log_sum, log_sum_pair, LogSum};
pub use roots::{maximize_unimodal, minimize_unimodal, solve_bracketed, RealInterval, SolverConfig};
