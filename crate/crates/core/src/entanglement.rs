//! Density matrices, von Neumann entropy and the entanglement degree of the
//! evolving atom-field state.

use num_complex::Complex64 as C64;

use crate::dynamics;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, partial_trace, ComplexMatrix, KetState, SubsystemDims};
use crate::model::{ajc_params, SystemParams};
use crate::tol;

/// Hermitian, positive semidefinite, unit-trace operator tagged with subsystem dims.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dims: SubsystemDims,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(mat: ComplexMatrix, dims: SubsystemDims) -> Result<Self> {
        if !mat.is_square() || mat.rows() != dims.total() {
            return Err(Error::Dims(format!(
                "{}x{} matrix tagged with dims {:?}",
                mat.rows(),
                mat.cols(),
                dims.as_slice()
            )));
        }
        let herm = mat.hermiticity_error();
        if herm > tol::ALGEBRAIC {
            return Err(Error::Hermiticity(herm));
        }
        let tr = mat.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > tol::ALGEBRAIC {
            return Err(Error::Dims(format!("trace {tr} is not 1")));
        }
        let rho = Self { mat, dims };
        let lowest = rho.eigenvalues_raw()?.last().copied().unwrap_or(0.0);
        if lowest < -tol::POSITIVITY {
            return Err(Error::Positivity(lowest));
        }
        Ok(rho)
    }

    /// Single-subsystem density matrix.
    pub fn single(mat: ComplexMatrix) -> Result<Self> {
        let d = mat.rows();
        Self::new(mat, SubsystemDims::new(vec![d])?)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn purity(&self) -> f64 {
        self.mat.matmul(&self.mat).trace().re
    }

    /// Reduced state on the listed subsystems (in the listed order).
    pub fn reduce(&self, keep: &[usize]) -> Result<Self> {
        let mat = partial_trace(&self.mat, &self.dims, keep)?;
        Ok(Self { mat, dims: self.dims.select(keep) })
    }

    fn eigenvalues_raw(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eig(&self.mat)?.values)
    }

    /// Spectrum, descending, with noise in `[−1e-10, 0)` clamped to zero.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let vals = self.eigenvalues_raw()?;
        vals.into_iter()
            .map(|v| {
                if v < -tol::POSITIVITY {
                    Err(Error::Positivity(v))
                } else if (-tol::EIG_CLAMP..0.0).contains(&v) {
                    Ok(0.0)
                } else {
                    Ok(v)
                }
            })
            .collect()
    }

    /// Principal square root via the eigendecomposition, eigenvalues clamped at 0.
    pub fn sqrt(&self) -> Result<ComplexMatrix> {
        let eig = hermitian_eig(&self.mat)?;
        Ok(eig.map_values(|v| C64::new(v.max(0.0).sqrt(), 0.0)))
    }
}

/// Rank-one projector `|ψ⟩⟨ψ|`.
pub fn density_of(ket: &KetState) -> Result<DensityMatrix> {
    ket.check_norm()?;
    Ok(DensityMatrix { mat: ket.projector(), dims: ket.dims().clone() })
}

/// `S(ρ) = −Σ λᵢ log_b λᵢ`, with `0·log 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix, base: f64) -> Result<f64> {
    if !(base > 1.0 && base.is_finite()) {
        return Err(Error::Domain { value: base, domain: "log base > 1" });
    }
    Ok(shannon(&rho.eigenvalues()?, base))
}

/// `−Σ pᵢ log_b pᵢ` over a probability vector, treating tiny entries as 0.
pub fn shannon(probs: &[f64], base: f64) -> f64 {
    let ln_b = base.ln();
    let s: f64 = probs
        .iter()
        .filter(|&&x| x >= tol::ENTROPY_ZERO)
        .map(|&x| -x * x.ln() / ln_b)
        .sum();
    s.max(0.0)
}

/// Entropy of entanglement (base 2) of a pure bipartite state.
///
/// Both reduced entropies are computed; they agree to 1e-10 for any pure
/// input (Schmidt decomposition), which is asserted in debug builds.
pub fn entanglement_measure(rho_ab: &DensityMatrix) -> Result<f64> {
    if rho_ab.dims().len() != 2 {
        return Err(Error::Dims(format!("bipartite state expected, dims {:?}", rho_ab.dims().as_slice())));
    }
    let purity = rho_ab.purity();
    if (purity - 1.0).abs() > tol::PURITY {
        return Err(Error::Purity(purity));
    }
    let s_a = von_neumann_entropy(&rho_ab.reduce(&[0])?, 2.0)?;
    let s_b = von_neumann_entropy(&rho_ab.reduce(&[1])?, 2.0)?;
    debug_assert!((s_a - s_b).abs() <= tol::ORACLE, "S_A = {s_a}, S_B = {s_b}");
    Ok(s_a)
}

/// Purity tr(ρ²) and the z Bloch component tr(ρ σ_z) of a qubit state.
///
/// `σ_z = diag(1, −1)` in the `(e, g)` ordering (for a field qubit, `(0, 1)`
/// ordering), so a state weighted toward the second basis vector has
/// negative `r_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mixedness {
    pub purity: f64,
    pub r_z: f64,
}

pub fn mixedness_diagnostics(rho: &DensityMatrix) -> Result<Mixedness> {
    let m = rho.matrix();
    if m.rows() != 2 {
        return Err(Error::Dims(format!("qubit state expected, got {}x{}", m.rows(), m.cols())));
    }
    Ok(Mixedness { purity: rho.purity(), r_z: (m[(0, 0)] - m[(1, 1)]).re })
}

/// One point of the entanglement-degree time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementSample {
    /// Scaled time λt.
    pub tau: f64,
    pub entanglement: f64,
    pub p_g: f64,
    pub p_e: f64,
}

/// `E(τ) = −P_e log₂ P_e − P_g log₂ P_g` along the AJC evolution from `|g,n⟩`.
pub fn entanglement_series(p: &SystemParams, n: usize, taus: &[f64]) -> Result<Vec<EntanglementSample>> {
    ajc_params(p, n)?;
    taus.iter()
        .map(|&tau| {
            let t = tau / p.lambda();
            let (p_g, p_e) = dynamics::probabilities(p, n, t)?;
            Ok(EntanglementSample { tau, entanglement: shannon(&[p_g, p_e], 2.0), p_g, p_e })
        })
        .collect()
}

/// Interior grid points that are strict local maxima from the left and
/// non-strict from the right.
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    values
        .windows(3)
        .enumerate()
        .filter(|(_, w)| w[1] > w[0] && w[1] >= w[2])
        .map(|(i, _)| i + 1)
        .collect()
}
