//! Anti-Jaynes-Cummings (AJC) qubit dynamics on a truncated atom-field space.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: dense complex matrices, Kronecker products, partial traces,
//!   a Jacobi Hermitian eigensolver and the unitary propagator built on it.
//! - [`model`]: ladder and spin operators, the Rabi / JC / AJC Hamiltonians,
//!   conserved excitation numbers and the dimensionless qubit parameters.
//! - [`dynamics`]: closed-form qubit evolution, Bloch trajectories and
//!   atomic populations, for the AJC process and its JC sibling.
//! - [`entanglement`]: density matrices, von Neumann entropy, mixedness
//!   diagnostics and the entanglement-degree time series.
//! - [`teleport`]: entanglement swapping with an AJC resource state, Bell
//!   measurement, Pauli corrections and teleportation fidelity.
//! - [`verify`]: a named, seeded invariant suite shared by the CLI and tests.
//!
//! Units: ħ = 1 and every Hamiltonian is stored in angular-frequency units.
//! Basis convention is described in [`model`].

pub mod dynamics;
pub mod entanglement;
mod error;
pub mod linalg;
pub mod model;
pub mod teleport;
pub mod tol;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, KetState, SubsystemDims};
pub use model::SystemParams;

pub use num_complex::Complex64 as C64;
