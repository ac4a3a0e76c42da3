//! Quasi-complementary sequence sets (QCSS) built from the quaternary
//! Family A and an almost difference set in `Z_{4f}`.
//!
//! The crate is organised bottom-up:
//!
//! * [`binary`]: binary polynomials, primitivity and m-sequences.
//! * [`z4`]: the Graeffe lift to `Z4`, the `Z4` linear recurrence and Family A.
//! * [`diffset`]: difference sets, almost difference sets and exponential sums.
//! * [`phase`]: sequences of roots of unity and their periodic correlation.
//! * [`qcss`]: QCSS assembly, correlation sweeps, lower bound and tightness.
//! * [`analysis`]: parameter sets, asymptotic tightness tables and sweeps.
//! * [`export`]: JSON / CSV document formats.

pub mod analysis;
pub mod binary;
pub mod diffset;
mod error;
pub mod export;
pub mod gaussian;
pub mod phase;
pub mod qcss;
pub mod z4;

pub use error::{Error, Result};
