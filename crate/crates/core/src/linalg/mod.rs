//! Dense complex linear algebra used as the numerical substrate for every
//! closed-form result in the crate.

mod eig;
mod matrix;
mod state;

pub use eig::{hermitian_eig, unitary_exp, HermitianEig};
pub use matrix::{kron, partial_trace, ComplexMatrix, SubsystemDims};
pub use state::KetState;
