//! Exact cyclotomic arithmetic and the finite-dimensional quantum clock.
//!
//! - [`exactcyc`]: the field `Q(ζ_N)` with canonical reduced representatives.
//! - [`numtheory`]: totient, Möbius, coprime residues, Ramanujan sums.
//! - [`linalg`]: dense matrices generic over exact or floating scalars.
//! - [`clock`]: pointer states, time and Hamiltonian operators, commutators.

pub mod clock;
pub mod exactcyc;
pub mod linalg;
pub mod numtheory;

pub use exactcyc::{cyclotomic_polynomial, CycloError, CyclotomicNumber};
pub use linalg::{LinalgError, OperatorMatrix, Scalar, StateVector};
