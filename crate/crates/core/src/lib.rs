//! Bit-error and block-error analysis of binary linear codes on the erasure channel.
//!
//! The crate is organised bottom-up:
//!
//! - [`gf2`]: packed GF(2) matrices and subspace enumeration.
//! - [`codes`]: linear codes, Reed–Muller codes, Wei subcodes and the
//!   minimum subcode support weights d_r.
//! - [`erasure`]: erasure patterns and the covered subcode S_C(x).
//! - [`analysis`]: exact and Monte Carlo threshold curves f_r(p).
//! - [`verify`]: checkers producing self-contained verification reports.

pub mod analysis;
pub mod budget;
pub mod codes;
pub mod erasure;
pub mod error;
pub mod exact;
pub mod gf2;
pub mod verify;

pub use budget::Budgets;
pub use codes::{LinearCode, RmParams};
pub use erasure::ErasurePattern;
pub use error::{Error, Result};
