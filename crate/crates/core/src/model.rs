//! Atom-field operators, the Rabi / JC / AJC Hamiltonians and the
//! dimensionless qubit parameters.
//!
//! # Basis convention
//!
//! Every composite operator in this crate acts on `atom ⊗ field` with the
//! atom index most significant. The atom basis is ordered `(|e⟩, |g⟩)`, so
//! `|g⟩⟨g| = diag(0, 1)` and `2·s_z = diag(1, −1)`. The field basis is the
//! photon-number basis `|0⟩ … |nmax⟩`. Hence `|a, n⟩` sits at flat index
//! `a·(nmax + 1) + n` with `a = 0` for `e` and `a = 1` for `g`.
//!
//! All Hamiltonians are divided by ħ (angular-frequency units).

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix, KetState, SubsystemDims};

/// Atom basis index of the excited state.
pub const EXCITED: usize = 0;
/// Atom basis index of the ground state.
pub const GROUND: usize = 1;

/// Two-level atom label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    Excited,
    Ground,
}

impl Atom {
    pub fn index(self) -> usize {
        match self {
            Atom::Excited => EXCITED,
            Atom::Ground => GROUND,
        }
    }

    pub fn label(self) -> char {
        match self {
            Atom::Excited => 'e',
            Atom::Ground => 'g',
        }
    }
}

/// Coupling and frequencies of the atom-field system plus the Fock cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    lambda: f64,
    omega: f64,
    omega0: f64,
    nmax: usize,
}

impl SystemParams {
    pub const DEFAULT_NMAX: usize = 8;

    pub fn new(lambda: f64, omega: f64, omega0: f64, nmax: usize) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParams(format!("coupling must be positive, got {lambda}")));
        }
        if !omega.is_finite() || !omega0.is_finite() {
            return Err(Error::InvalidParams("frequencies must be finite".into()));
        }
        if nmax < 1 {
            return Err(Error::InvalidParams("nmax must be at least 1".into()));
        }
        Ok(Self { lambda, omega, omega0, nmax })
    }

    /// Parameters in reduced units λ = 1, from field frequency and detuning δ = ω₀ − ω.
    pub fn from_detuning(omega: f64, delta: f64, nmax: usize) -> Result<Self> {
        Self::new(1.0, omega, omega + delta, nmax)
    }

    /// Parameters in reduced units λ = 1, from field frequency and sum frequency δ̄ = ω₀ + ω.
    pub fn from_sum_frequency(omega: f64, delta_bar: f64, nmax: usize) -> Result<Self> {
        Self::new(1.0, omega, delta_bar - omega, nmax)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    /// δ = ω₀ − ω.
    pub fn detuning(&self) -> f64 {
        self.omega0 - self.omega
    }

    /// δ̄ = ω₀ + ω.
    pub fn sum_frequency(&self) -> f64 {
        self.omega0 + self.omega
    }

    /// Dimension of the field register.
    pub fn field_dim(&self) -> usize {
        self.nmax + 1
    }

    /// Composite `[atom, field]` dims.
    pub fn dims(&self) -> SubsystemDims {
        SubsystemDims::new(vec![2, self.field_dim()]).expect("nmax >= 1")
    }

    pub fn index(&self, atom: Atom, photons: usize) -> usize {
        atom.index() * self.field_dim() + photons
    }

    /// |atom, photons⟩ in the composite basis.
    pub fn basis_ket(&self, atom: Atom, photons: usize) -> Result<KetState> {
        KetState::basis(self.dims(), &[atom.index(), photons])
    }

    /// Doublet `{|g,n⟩, |e,n+1⟩}` (or its JC sibling) must sit strictly below the cutoff.
    pub fn check_photon_index(&self, n: usize) -> Result<()> {
        if n + 2 > self.nmax {
            return Err(Error::Truncation { n, nmax: self.nmax });
        }
        Ok(())
    }

    pub fn with_nmax(&self, nmax: usize) -> Result<Self> {
        Self::new(self.lambda, self.omega, self.omega0, nmax)
    }
}

/// Human-readable label of a composite basis index, e.g. `g,0`.
pub fn basis_label(field_dim: usize, index: usize) -> String {
    let atom = if index / field_dim == EXCITED { 'e' } else { 'g' };
    format!("{atom},{}", index % field_dim)
}

/// Field annihilation and creation operators on `|0⟩ … |nmax⟩`.
pub fn mode_ops(nmax: usize) -> (ComplexMatrix, ComplexMatrix) {
    let d = nmax + 1;
    let a = ComplexMatrix::from_fn(d, d, |i, j| {
        if j == i + 1 {
            C64::new((j as f64).sqrt(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let adag = a.adjoint();
    (a, adag)
}

/// Atomic raising, lowering and `s_z` operators in the `(e, g)` basis.
pub fn atom_ops() -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let sp = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
    let sm = sp.adjoint();
    let sz = ComplexMatrix::diag_real(&[0.5, -0.5]);
    (sp, sm, sz)
}

/// Pauli matrices in the `(e, g)` basis, `σ_z = diag(1, −1)`.
pub fn pauli() -> [ComplexMatrix; 3] {
    let i = C64::new(0.0, 1.0);
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    [
        ComplexMatrix::from_vec(2, 2, vec![z, one, one, z]).unwrap(),
        ComplexMatrix::from_vec(2, 2, vec![z, -i, i, z]).unwrap(),
        ComplexMatrix::diag_real(&[1.0, -1.0]),
    ]
}

/// Operators lifted to the composite `atom ⊗ field` space.
struct Lifted {
    a: ComplexMatrix,
    adag: ComplexMatrix,
    sp: ComplexMatrix,
    sm: ComplexMatrix,
    sz: ComplexMatrix,
    id: ComplexMatrix,
}

impl Lifted {
    fn new(nmax: usize) -> Self {
        let (a, adag) = mode_ops(nmax);
        let (sp, sm, sz) = atom_ops();
        let i2 = ComplexMatrix::identity(2);
        let id_f = ComplexMatrix::identity(nmax + 1);
        Self {
            a: kron(&i2, &a),
            adag: kron(&i2, &adag),
            sp: kron(&sp, &id_f),
            sm: kron(&sm, &id_f),
            sz: kron(&sz, &id_f),
            id: ComplexMatrix::identity(2 * (nmax + 1)),
        }
    }
}

/// The three model Hamiltonians on `atom ⊗ field`.
#[derive(Debug, Clone)]
pub struct Hamiltonians {
    /// Quantum Rabi Hamiltonian, built directly from its free + dipole form.
    pub rabi: ComplexMatrix,
    /// Jaynes-Cummings (polariton) Hamiltonian `ωN + 2λA − ω/2`.
    pub jc: ComplexMatrix,
    /// Anti-Jaynes-Cummings (anti-polariton) Hamiltonian `ωN̄ + 2λĀ − ω/2`.
    pub ajc: ComplexMatrix,
}

pub fn build_hamiltonians(p: &SystemParams) -> Hamiltonians {
    let l = Lifted::new(p.nmax);
    let (w, w0, lam) = (p.omega, p.omega0, p.lambda);

    let free_field = &l.adag.matmul(&l.a) + &l.a.matmul(&l.adag);
    let field_sum = &l.a + &l.adag;
    let spin_sum = &l.sp + &l.sm;
    let rabi = &(&free_field.scale_real(0.5 * w) + &l.sz.scale_real(w0))
        + &field_sum.matmul(&spin_sum).scale_real(lam);

    let (n, nbar) = conserved_numbers(p);
    let jc = &(&n.scale_real(w) + &transition_op_jc(p).scale_real(2.0 * lam)) - &l.id.scale_real(0.5 * w);
    let ajc = &(&nbar.scale_real(w) + &transition_op_ajc(p).scale_real(2.0 * lam)) - &l.id.scale_real(0.5 * w);
    Hamiltonians { rabi, jc, ajc }
}

/// Excitation numbers `N = a†a + s₊s₋` and `N̄ = aa† + s₋s₊`.
pub fn conserved_numbers(p: &SystemParams) -> (ComplexMatrix, ComplexMatrix) {
    let l = Lifted::new(p.nmax);
    let n = &l.adag.matmul(&l.a) + &l.sp.matmul(&l.sm);
    let nbar = &l.a.matmul(&l.adag) + &l.sm.matmul(&l.sp);
    (n, nbar)
}

/// JC transition operator `A = α s_z + a s₊ + a† s₋`, `α = (ω₀ − ω)/2λ`.
pub fn transition_op_jc(p: &SystemParams) -> ComplexMatrix {
    let l = Lifted::new(p.nmax);
    let alpha = p.detuning() / (2.0 * p.lambda);
    &(&l.sz.scale_real(alpha) + &l.a.matmul(&l.sp)) + &l.adag.matmul(&l.sm)
}

/// AJC transition operator `Ā = ᾱ s_z + a s₋ + a† s₊`, `ᾱ = (ω₀ + ω)/2λ`.
pub fn transition_op_ajc(p: &SystemParams) -> ComplexMatrix {
    let l = Lifted::new(p.nmax);
    let alpha_bar = p.sum_frequency() / (2.0 * p.lambda);
    &(&l.sz.scale_real(alpha_bar) + &l.a.matmul(&l.sm)) + &l.adag.matmul(&l.sp)
}

/// Composite indices whose photon number is below the cutoff.
pub fn sub_truncation_indices(p: &SystemParams) -> Vec<usize> {
    (0..2 * p.field_dim()).filter(|i| i % p.field_dim() < p.nmax).collect()
}

/// Dimensionless parameters of the AJC doublet `{|g,n⟩, |e,n+1⟩}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AjcQubitParams {
    pub n: usize,
    /// c̄ = δ̄ / 2R̄
    pub cbar: f64,
    /// s̄ = 2λ√(n+1) / R̄
    pub sbar: f64,
    /// Rabi frequency R̄ = 2λĀ
    pub rabi: f64,
    /// Ā = √((n+1) + δ̄²/16λ²)
    pub abar: f64,
}

/// Dimensionless parameters of the JC doublet `{|e,n⟩, |g,n+1⟩}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JcQubitParams {
    pub n: usize,
    /// c = δ / 2R
    pub c: f64,
    /// s = 2λ√(n+1) / R
    pub s: f64,
    /// Rabi frequency R = ½√(16λ²(n+1) + δ²)
    pub rabi: f64,
}

pub fn ajc_params(p: &SystemParams, n: usize) -> Result<AjcQubitParams> {
    p.check_photon_index(n)?;
    let lam = p.lambda;
    let db = p.sum_frequency();
    let np1 = (n + 1) as f64;
    let abar = (np1 + db * db / (16.0 * lam * lam)).sqrt();
    let rabi = 2.0 * lam * abar;
    Ok(AjcQubitParams { n, cbar: db / (2.0 * rabi), sbar: 2.0 * lam * np1.sqrt() / rabi, rabi, abar })
}

pub fn jc_params(p: &SystemParams, n: usize) -> Result<JcQubitParams> {
    p.check_photon_index(n)?;
    let lam = p.lambda;
    let d = p.detuning();
    let np1 = (n + 1) as f64;
    let rabi = 0.5 * (16.0 * lam * lam * np1 + d * d).sqrt();
    Ok(JcQubitParams { n, c: d / (2.0 * rabi), s: 2.0 * lam * np1.sqrt() / rabi, rabi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ket(p: &SystemParams, atom: Atom, n: usize) -> Vec<C64> {
        p.basis_ket(atom, n).unwrap().amps().to_vec()
    }

    #[test]
    fn ladder_operators() {
        let (a, adag) = mode_ops(4);
        let vac = KetState::basis(SubsystemDims::new(vec![5]).unwrap(), &[0]).unwrap();
        assert!(a.apply(vac.amps()).iter().all(|z| z.norm() == 0.0));
        let one = adag.apply(vac.amps());
        assert_eq!(one[1], C64::new(1.0, 0.0));
        assert_eq!(one.iter().map(|z| z.norm()).sum::<f64>(), 1.0);
        assert_eq!(adag, a.adjoint());
    }

    #[test]
    fn truncated_commutator() {
        let nmax = 5;
        let (a, adag) = mode_ops(nmax);
        let comm = a.commutator(&adag);
        for i in 0..=nmax {
            let expected = if i < nmax { 1.0 } else { -(nmax as f64) };
            assert!((comm[(i, i)].re - expected).abs() < 1e-14);
        }
        let off: f64 = (0..=nmax)
            .flat_map(|i| (0..=nmax).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| comm[(i, j)].norm())
            .sum();
        assert_eq!(off, 0.0);
    }

    #[test]
    fn spin_operators() {
        let (sp, sm, sz) = atom_ops();
        let e = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        let g = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        assert!(sp.apply(&e).iter().all(|z| z.norm() == 0.0));
        assert_eq!(sp.apply(&g), e.to_vec());
        assert_eq!(sm.apply(&e), g.to_vec());
        assert_eq!(&sp.matmul(&sm) + &sm.matmul(&sp), ComplexMatrix::identity(2));
        assert_eq!(sz.scale_real(2.0), ComplexMatrix::diag_real(&[1.0, -1.0]));
    }

    #[test]
    fn basis_ordering_canary() {
        // |g⟩⟨g| = diag(0, 1): excited state first, atom index most significant
        let p = SystemParams::new(1.0, 2.0, 3.0, 3).unwrap();
        assert_eq!(p.index(Atom::Excited, 1), 1);
        assert_eq!(p.index(Atom::Ground, 0), 4);
        assert_eq!(basis_label(4, 4), "g,0");
        assert_eq!(basis_label(4, 1), "e,1");
        let g = KetState::basis(SubsystemDims::new(vec![2]).unwrap(), &[GROUND]).unwrap();
        assert_eq!(g.projector(), ComplexMatrix::diag_real(&[0.0, 1.0]));
    }

    #[test]
    fn decoupled_limit_is_diagonal() {
        let p = SystemParams::new(1e-300, 2.0, 1.5, 4).unwrap();
        let h = build_hamiltonians(&p);
        for m in [&h.jc, &h.ajc] {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    if i != j {
                        assert!(m[(i, j)].norm() < 1e-290);
                    }
                }
            }
        }
    }

    #[test]
    fn ajc_coupling_element() {
        let p = SystemParams::new(0.7, 2.0, 3.0, 4).unwrap();
        let h = build_hamiltonians(&p);
        let g0 = p.index(Atom::Ground, 0);
        let e1 = p.index(Atom::Excited, 1);
        assert!((h.ajc[(e1, g0)] - C64::new(2.0 * 0.7, 0.0)).norm() < 1e-14);
        assert!((h.ajc[(g0, e1)] - C64::new(2.0 * 0.7, 0.0)).norm() < 1e-14);
        // n = 2 doublet carries √3
        let g2 = p.index(Atom::Ground, 2);
        let e3 = p.index(Atom::Excited, 3);
        assert!((h.ajc[(e3, g2)].re - 2.0 * 0.7 * 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn rabi_is_half_sum() {
        let p = SystemParams::new(0.3, 1.7, 2.9, 6).unwrap();
        let h = build_hamiltonians(&p);
        let half = (&h.jc + &h.ajc).scale_real(0.5);
        assert!(half.max_abs_diff(&h.rabi) <= 1e-14);
        for m in [&h.rabi, &h.jc, &h.ajc] {
            assert!(m.is_hermitian(1e-14));
        }
    }

    #[test]
    fn excitation_numbers() {
        let p = SystemParams::new(1.0, 2.0, 2.0, 4).unwrap();
        let (n, nbar) = conserved_numbers(&p);
        assert_eq!(n.apply(&ket(&p, Atom::Excited, 0)), ket(&p, Atom::Excited, 0));
        // aa†|0⟩ = |0⟩ and s₋s₊|g⟩ = |g⟩, so N̄|g,0⟩ = 2|g,0⟩
        let g0 = ket(&p, Atom::Ground, 0);
        let out = nbar.apply(&g0);
        assert!(out.iter().zip(&g0).all(|(a, b)| (a - b * 2.0).norm() < 1e-15));
    }

    #[test]
    fn commutators_vanish_below_cutoff() {
        let p = SystemParams::new(0.8, 2.3, 1.1, 6).unwrap();
        let h = build_hamiltonians(&p);
        let (n, nbar) = conserved_numbers(&p);
        let idx = sub_truncation_indices(&p);
        assert!(h.ajc.commutator(&nbar).submatrix(&idx, &idx).max_abs() <= 1e-12);
        assert!(h.jc.commutator(&n).submatrix(&idx, &idx).max_abs() <= 1e-12);
        // the truncation edge itself breaks N̄ conservation
        assert!(h.ajc.commutator(&nbar).max_abs() > 1e-3);
    }

    #[test]
    fn reference_parameter_values() {
        let cases = [(1.0, 5.0, 4.0, 41.0), (3.0, 7.0, 4.0, 65.0), (0.0, 1.0, 1.0, 2.0)];
        for (delta, c_num, s_num, denom) in cases {
            let p = SystemParams::from_detuning(2.0, delta, 8).unwrap();
            let q = ajc_params(&p, 0).unwrap();
            assert!((q.cbar - c_num / f64::sqrt(denom)).abs() < 1e-12);
            assert!((q.sbar - s_num / f64::sqrt(denom)).abs() < 1e-12);
        }
    }

    #[test]
    fn truncation_error() {
        let p = SystemParams::new(1.0, 2.0, 2.0, 3).unwrap();
        assert!(ajc_params(&p, 1).is_ok());
        assert_eq!(ajc_params(&p, 2), Err(Error::Truncation { n: 2, nmax: 3 }));
        assert!(jc_params(&p, 2).is_err());
    }

    #[test]
    fn invalid_params() {
        assert!(SystemParams::new(0.0, 1.0, 1.0, 4).is_err());
        assert!(SystemParams::new(1.0, f64::NAN, 1.0, 4).is_err());
        assert!(SystemParams::new(1.0, 1.0, 1.0, 0).is_err());
    }

    #[test]
    fn transition_closure() {
        let p = SystemParams::new(0.9, 1.3, 2.2, 6).unwrap();
        let abar_op = transition_op_ajc(&p);
        for n in 0..=4 {
            let q = ajc_params(&p, n).unwrap();
            let psi = ket(&p, Atom::Ground, n);
            let mut phi = vec![C64::new(0.0, 0.0); psi.len()];
            phi[p.index(Atom::Ground, n)] = C64::new(-q.cbar, 0.0);
            phi[p.index(Atom::Excited, n + 1)] = C64::new(q.sbar, 0.0);
            let a_psi = abar_op.apply(&psi);
            let a_phi = abar_op.apply(&phi);
            for k in 0..psi.len() {
                assert!((a_psi[k] - phi[k] * q.abar).norm() < 1e-12);
                assert!((a_phi[k] - psi[k] * q.abar).norm() < 1e-12);
            }
            // ε̄² acts as the identity on the doublet
            let eps = abar_op.scale_real(1.0 / q.abar);
            let eps2 = eps.matmul(&eps);
            for v in [&psi, &phi] {
                let out = eps2.apply(v);
                assert!(out.iter().zip(v.iter()).all(|(a, b)| (a - b).norm() < 1e-12));
            }
        }
    }

    proptest! {
        #[test]
        fn doublet_parameters_are_consistent(
            lambda in 0.01f64..5.0,
            omega in -20.0f64..20.0,
            omega0 in -20.0f64..20.0,
            n in 0usize..6,
        ) {
            let p = SystemParams::new(lambda, omega, omega0, n + 2).unwrap();
            let q = ajc_params(&p, n).unwrap();
            prop_assert!((q.cbar * q.cbar + q.sbar * q.sbar - 1.0).abs() < 1e-12);
            prop_assert!((q.rabi - 2.0 * lambda * q.abar).abs() < 1e-12 * q.rabi.max(1.0));
            let db = p.sum_frequency();
            let closed = 0.5 * (16.0 * lambda * lambda * (n as f64 + 1.0) + db * db).sqrt();
            prop_assert!((q.rabi - closed).abs() < 1e-12 * closed.max(1.0));
            let j = jc_params(&p, n).unwrap();
            prop_assert!((j.c * j.c + j.s * j.s - 1.0).abs() < 1e-12);
        }
    }
}
