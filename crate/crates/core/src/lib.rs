//! Candidate-set analysis for sparsified RNA folding.
//!
//! * [`series`]: truncated power series over exact rationals, floats and
//!   polynomials.
//! * [`genusgf`], [`irrgf`]: generating functions of genus-filtered and
//!   irreducible structures, the loop-model series, growth estimates and
//!   expected candidate counts.
//! * [`oracle`]: exhaustive enumeration used as ground truth.
//! * [`fold`]: interval DP folding with candidate sparsification.
//! * [`expt`]: seeded sweeps and report files.

pub mod error;
pub mod expt;
pub mod fold;
pub mod genusgf;
pub mod irrgf;
pub mod oracle;
pub mod series;
pub mod table;

pub use error::{Error, Result};
