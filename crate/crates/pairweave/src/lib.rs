//! Exact-arithmetic calculus of weight functions on pair partitions and the
//! interpolated Brownian motions they generate: the q-interpolated weight
//! t_q built from crossing-connected components, its deformed Fock
//! representation, the associated moment/cumulant transforms and free
//! convolution identities, and the closed-form spectral measures for the
//! signed regime.

pub mod error;
pub mod fock;
pub mod freeprob;
pub mod linalg;
pub mod measures;
pub mod pairings;
pub mod scalar;
pub mod states;
pub mod weights;

pub use error::PairweaveError;
pub use scalar::{QPoly, Rational};
