//! Stable graded multiplicities of K-types in the harmonic polynomials of the
//! cyclic-quiver Vinberg pair `(GL_N, GL_{n_1} x ... x GL_{n_k})`.
//!
//! The main entry point is [`stable::stable_multiplicity`], which sums over
//! distinguished tableau tuples. Three independent checks live alongside it:
//!
//! - [`stable::stable_multiplicity_definition`] evaluates the defining sum of
//!   products of Littlewood-Richardson coefficients times the Euler factor,
//! - [`character`] decomposes explicit torus characters of `C[p]` for tiny
//!   quivers,
//! - [`character::hesselink_exponent`] gives the `k = 1` generalized exponents.

pub mod character;
pub mod cli;
pub mod combinatorics;
pub mod crystal;
pub mod error;
pub mod lr;
pub mod qseries;
pub mod stable;

pub use combinatorics::{Basis, Partition, WeightVector};
pub use crystal::Tableau;
pub use error::{Error, Result};
pub use qseries::QSeries;
pub use stable::{KType, LambdaProfile, TableauTuple};
