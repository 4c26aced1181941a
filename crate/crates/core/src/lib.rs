//! Error and erasure exponent bounds for margin decoding.
//!
//! A margin decoder outputs a codeword only when it beats every competitor
//! by a fixed distance margin and declares an erasure otherwise. This crate
//! evaluates the resulting undetected-error and erasure exponents for binary
//! linear codes on the BSC ([`binary`], bits) and spherical codes on the
//! AWGN channel ([`spherical`], nats), and checks them against exact
//! finite-length union bounds ([`finite`]) and seeded Monte Carlo
//! simulation ([`sim`]).
//!
//! ```
//! use erasure_exponents::binary::{tradeoff_bounds, BscChannel};
//!
//! let ch = BscChannel::new(0.07).unwrap();
//! let (m_plus, m_minus) = tradeoff_bounds(0.4, &ch, 0.03);
//! assert!(m_plus.value > m_minus.value);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod binary;
pub mod cli;
pub mod error;
pub mod finite;
pub mod numerics;
pub mod sim;
pub mod spherical;

pub use error::{Error, Result};

use serde::Serialize;

/// Which failure a margin bound controls: an undetected error (margin `+τ`)
/// or any failure to decode correctly, erasures included (margin `−τ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MarginKind {
    Error,
    Erasure,
}

impl MarginKind {
    pub fn sign(self) -> f64 {
        match self {
            MarginKind::Error => 1.0,
            MarginKind::Erasure => -1.0,
        }
    }

    /// The margin as it enters the formulas: `τ` or `−τ`.
    pub fn signed(self, tau: f64) -> f64 {
        self.sign() * tau
    }
}
