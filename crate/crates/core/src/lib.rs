//! Exceptional Hermite polynomials built from Calogero-Moser pairs.
//!
//! * [`partition`]: partitions, Maya diagrams, index sets, Frobenius form.
//! * [`exactalg`]: exact polynomial and matrix arithmetic over ℚ.
//! * [`cmpair`]: the integer CM pair `(X, Z, a, b)` of a partition.
//! * [`xhp`]: the polynomials, `τ`, the generating series, bispectrality.
//! * [`spectral`]: eigenvalues, annihilating functionals, orthogonality.
//! * [`verify`]: sweeps over all partitions up to a weight.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod cmpair;
pub mod error;
pub mod exactalg;
pub mod par;
pub mod partition;
pub mod spectral;
pub mod verify;
pub mod xhp;

pub use error::{Error, Result};
pub use partition::Partition;
