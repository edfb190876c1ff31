//! Exact and sampled simulation of `k`-copy quantum purity amplification.
//!
//! The purification channel acts on the outcome `(lambda, T)` of weak Schur
//! sampling, whose law on `n` copies of a state with spectrum `p` is the law
//! of the RSK image of a random word with i.i.d. letters drawn from `p`. The
//! channel's fidelity on each outcome has a closed combinatorial form, so the
//! whole algorithm reduces to tableau combinatorics:
//!
//! - [`tableaux`]: partitions, tableaux, RSK and insertion-free checks;
//! - [`spectrum`]: spectra, word sampling and copy-count formulas;
//! - [`fidelity`]: the per-outcome fidelity and its Clebsch-Gordan re-derivation;
//! - [`oracle`]: exact expectations by enumeration for small `n`;
//! - [`montecarlo`]: streaming RSK estimates for large `n`;
//! - [`cli`]: the `qpa` command-line front end.

pub mod cli;
pub mod error;
pub mod fidelity;
pub mod montecarlo;
pub mod oracle;
pub mod scalar;
pub mod spectrum;
pub mod tableaux;

pub use error::{QpaError, Result};
pub use scalar::{Rational, Scalar};
