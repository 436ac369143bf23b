use num_complex::Complex64 as C64;

use super::{kron, ComplexMatrix, SubsystemDims};
use crate::error::{Error, Result};
use crate::tol;

/// State vector over a composite space described by [`SubsystemDims`].
///
/// Amplitudes are indexed in mixed radix with the first subsystem most
/// significant, matching [`kron`] ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct KetState {
    amps: Vec<C64>,
    dims: SubsystemDims,
}

impl KetState {
    /// Wraps amplitudes without checking the norm.
    pub fn new(amps: Vec<C64>, dims: SubsystemDims) -> Result<Self> {
        if amps.len() != dims.total() {
            return Err(Error::Dims(format!(
                "{} amplitudes for dims {:?}",
                amps.len(),
                dims.as_slice()
            )));
        }
        Ok(Self { amps, dims })
    }

    /// Like [`new`](Self::new) but requires ‖ψ‖ = 1 within the norm tolerance.
    pub fn normalized(amps: Vec<C64>, dims: SubsystemDims) -> Result<Self> {
        let k = Self::new(amps, dims)?;
        k.check_norm()?;
        Ok(k)
    }

    /// Computational basis vector with the given per-subsystem digits.
    pub fn basis(dims: SubsystemDims, digits: &[usize]) -> Result<Self> {
        if digits.len() != dims.len() || digits.iter().zip(dims.as_slice()).any(|(&x, &d)| x >= d) {
            return Err(Error::Dims(format!("basis digits {digits:?} for dims {:?}", dims.as_slice())));
        }
        let mut amps = vec![C64::new(0.0, 0.0); dims.total()];
        amps[dims.flat(digits)] = C64::new(1.0, 0.0);
        Ok(Self { amps, dims })
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn amp(&self, digits: &[usize]) -> C64 {
        self.amps[self.dims.flat(digits)]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn check_norm(&self) -> Result<()> {
        let n = self.norm();
        if (n - 1.0).abs() > tol::NORM {
            return Err(Error::Norm(n));
        }
        Ok(())
    }

    /// Returns the state scaled to unit norm.
    pub fn renormalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::Norm(n));
        }
        Ok(Self { amps: self.amps.iter().map(|z| z / n).collect(), dims: self.dims.clone() })
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> C64 {
        assert_eq!(self.amps.len(), other.amps.len(), "inner product dimension mismatch");
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// |⟨self|other⟩|², the pure-state fidelity.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Largest amplitude deviation after removing the relative global phase.
    pub fn distance_up_to_phase(&self, other: &Self) -> f64 {
        let ov = self.inner(other);
        let phase = if ov.norm() > 0.0 { ov / ov.norm() } else { C64::new(1.0, 0.0) };
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a * phase - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, s: C64) -> Self {
        Self { amps: self.amps.iter().map(|z| z * s).collect(), dims: self.dims.clone() }
    }

    /// Tensor product, dims concatenated.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.dims.as_slice().to_vec();
        dims.extend_from_slice(other.dims.as_slice());
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Self { amps, dims: SubsystemDims::new(dims).expect("dims already validated") }
    }

    /// Applies an operator on the full space.
    pub fn apply(&self, op: &ComplexMatrix) -> Result<Self> {
        if op.cols() != self.amps.len() || op.rows() != self.amps.len() {
            return Err(Error::Dims(format!(
                "{}x{} operator on a {}-dimensional state",
                op.rows(),
                op.cols(),
                self.amps.len()
            )));
        }
        Ok(Self { amps: op.apply(&self.amps), dims: self.dims.clone() })
    }

    /// Applies `op` to a single subsystem, identity elsewhere.
    pub fn apply_local(&self, op: &ComplexMatrix, subsystem: usize) -> Result<Self> {
        let d = self.dims.as_slice();
        if subsystem >= d.len() || op.rows() != d[subsystem] || op.cols() != d[subsystem] {
            return Err(Error::Dims(format!("local operator on subsystem {subsystem} of {d:?}")));
        }
        let left: usize = d[..subsystem].iter().product();
        let right: usize = d[subsystem + 1..].iter().product();
        let full = kron(&kron(&ComplexMatrix::identity(left), op), &ComplexMatrix::identity(right));
        self.apply(&full)
    }

    /// Reorders subsystems: new subsystem `k` is old subsystem `order[k]`.
    pub fn permute(&self, order: &[usize]) -> Result<Self> {
        let n = self.dims.len();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&k| k >= n || std::mem::replace(&mut seen[k], true)) {
            return Err(Error::Dims(format!("invalid permutation {order:?}")));
        }
        let new_dims = self.dims.select(order);
        let mut amps = vec![C64::new(0.0, 0.0); self.amps.len()];
        for (idx, &a) in self.amps.iter().enumerate() {
            let old = self.dims.digits(idx);
            let new: Vec<usize> = order.iter().map(|&k| old[k]).collect();
            amps[new_dims.flat(&new)] = a;
        }
        Ok(Self { amps, dims: new_dims })
    }

    /// |ψ⟩⟨ψ| as a matrix.
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amps, &self.amps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(d: &[usize]) -> SubsystemDims {
        SubsystemDims::new(d.to_vec()).unwrap()
    }

    #[test]
    fn tensor_matches_kron_ordering() {
        let a = KetState::basis(dims(&[2]), &[1]).unwrap();
        let b = KetState::basis(dims(&[3]), &[2]).unwrap();
        let ab = a.tensor(&b);
        assert_eq!(ab.dims().as_slice(), &[2, 3]);
        assert_eq!(ab.amp(&[1, 2]), C64::new(1.0, 0.0));
        assert_eq!(ab.amps()[5], C64::new(1.0, 0.0));
    }

    #[test]
    fn permute_swaps_registers() {
        let k = KetState::basis(dims(&[2, 3, 2]), &[1, 2, 0]).unwrap();
        let p = k.permute(&[2, 0, 1]).unwrap();
        assert_eq!(p.dims().as_slice(), &[2, 2, 3]);
        assert_eq!(p.amp(&[0, 1, 2]), C64::new(1.0, 0.0));
        assert!(k.permute(&[0, 0, 1]).is_err());
    }

    #[test]
    fn norm_checks() {
        let bad = KetState::new(vec![C64::new(1.0, 0.0); 2], dims(&[2])).unwrap();
        assert!(matches!(bad.check_norm(), Err(Error::Norm(_))));
        assert!(KetState::normalized(vec![C64::new(1.0, 0.0); 2], dims(&[2])).is_err());
        assert!((bad.renormalized().unwrap().norm() - 1.0).abs() < 1e-15);
        assert!(KetState::new(vec![C64::new(1.0, 0.0); 3], dims(&[2])).is_err());
    }

    #[test]
    fn phase_insensitive_distance() {
        let k = KetState::new(vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)], dims(&[2])).unwrap();
        let rotated = k.scaled(C64::from_polar(1.0, 1.234));
        assert!(k.distance_up_to_phase(&rotated) < 1e-15);
        assert!((k.fidelity(&rotated) - 1.0).abs() < 1e-15);
    }
}
