//! Numerical tolerances shared across the crate.

/// Default absolute tolerance for closed-form vs. oracle comparisons.
pub const ORACLE: f64 = 1e-10;
/// Algebraic identities (normalization, trace, c̄² + s̄² = 1, ...).
pub const ALGEBRAIC: f64 = 1e-12;
/// Exact-construction identities such as H_R = ½(H_JC + H_AJC).
pub const STRUCTURAL: f64 = 1e-14;
/// Off-diagonal Frobenius norm at which Jacobi sweeps stop, relative to max(1, ‖A‖_F).
pub const JACOBI_OFF: f64 = 1e-13;
/// Upper bound on Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Norm deviation tolerated when accepting a ket as normalized.
pub const NORM: f64 = 1e-8;
/// Negative eigenvalues above this are numerical noise and get clamped to 0.
pub const EIG_CLAMP: f64 = 1e-10;
/// Negative eigenvalues below this reject a density matrix.
pub const POSITIVITY: f64 = 1e-8;
/// Eigenvalues below this contribute 0 to x·log x.
pub const ENTROPY_ZERO: f64 = 1e-14;
/// Purity deviation tolerated for "pure" bipartite input.
pub const PURITY: f64 = 1e-8;
