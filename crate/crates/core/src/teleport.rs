//! Entanglement swapping with an AJC resource state.
//!
//! Alice holds the two-atom singlet on registers (1, 2). Bob holds an atom-field
//! pair (3, x) prepared by the AJC interaction, with the field restricted to
//! the single-photon span `{|0⟩, |1⟩}`. Charlie performs a Bell measurement on
//! (1, x); Bob then corrects atom 3 with a Pauli gate so that (3, 2) carries
//! Alice's original state.
//!
//! Register order in the four-qubit state is `(1, 2, 3, x)`. Atom registers use
//! the `(e, g)` ordering, the field register the `(0, 1)` photon ordering.

use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64 as C64;

use crate::dynamics::basic_states;
use crate::entanglement::{density_of, DensityMatrix};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix, KetState, SubsystemDims};
use crate::model::{pauli, SystemParams, EXCITED, GROUND};
use crate::tol;

const REG1: usize = 0;
const REG2: usize = 1;
const REG3: usize = 2;
const REGX: usize = 3;

fn qubits(n: usize) -> SubsystemDims {
    SubsystemDims::new(vec![2; n]).expect("non-empty")
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Bell states on (atom 1, field x).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellIndex {
    /// `(|e,1⟩ + |g,0⟩)/√2`
    PsiPlus,
    /// `(|e,1⟩ − |g,0⟩)/√2`
    PsiMinus,
    /// `(|e,0⟩ − |g,1⟩)/√2`
    PhiMinus,
    /// `(|e,0⟩ + |g,1⟩)/√2`
    PhiPlus,
}

impl BellIndex {
    pub const ALL: [BellIndex; 4] = [BellIndex::PsiPlus, BellIndex::PsiMinus, BellIndex::PhiMinus, BellIndex::PhiPlus];

    pub fn name(self) -> &'static str {
        match self {
            BellIndex::PsiPlus => "Psi+",
            BellIndex::PsiMinus => "Psi-",
            BellIndex::PhiMinus => "Phi-",
            BellIndex::PhiPlus => "Phi+",
        }
    }

    /// Amplitudes on (atom, photon) digits.
    fn ket(self) -> KetState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let (photon_e, sign) = match self {
            BellIndex::PsiPlus => (1, 1.0),
            BellIndex::PsiMinus => (1, -1.0),
            BellIndex::PhiMinus => (0, -1.0),
            BellIndex::PhiPlus => (0, 1.0),
        };
        let dims = qubits(2);
        let mut amps = vec![c(0.0); 4];
        amps[dims.flat(&[EXCITED, photon_e])] = c(h);
        amps[dims.flat(&[GROUND, 1 - photon_e])] = c(sign * h);
        KetState::new(amps, dims).expect("4 amplitudes")
    }
}

impl fmt::Display for BellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The four Bell states on (atom 1, field x), in [`BellIndex::ALL`] order.
pub fn bell_basis_1x() -> [KetState; 4] {
    BellIndex::ALL.map(BellIndex::ket)
}

/// Signed single-qubit Pauli gate applied to atom 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliGate {
    I,
    X,
    NegX,
    /// `iσ_y`
    IY,
    /// `−iσ_y`
    NegIY,
    Z,
    NegZ,
}

impl PauliGate {
    /// Candidate gates searched when deriving corrections.
    pub const CANDIDATES: [PauliGate; 7] =
        [PauliGate::I, PauliGate::X, PauliGate::NegX, PauliGate::IY, PauliGate::NegIY, PauliGate::Z, PauliGate::NegZ];

    pub fn matrix(self) -> ComplexMatrix {
        let [x, y, z] = pauli();
        let i = C64::new(0.0, 1.0);
        match self {
            PauliGate::I => ComplexMatrix::identity(2),
            PauliGate::X => x,
            PauliGate::NegX => x.scale_real(-1.0),
            PauliGate::IY => y.scale(i),
            PauliGate::NegIY => y.scale(-i),
            PauliGate::Z => z,
            PauliGate::NegZ => z.scale_real(-1.0),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PauliGate::I => "I",
            PauliGate::X => "sigma_x",
            PauliGate::NegX => "-sigma_x",
            PauliGate::IY => "i*sigma_y",
            PauliGate::NegIY => "-i*sigma_y",
            PauliGate::Z => "sigma_z",
            PauliGate::NegZ => "-sigma_z",
        }
    }
}

impl fmt::Display for PauliGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Alice's singlet `(|e⟩₁|g⟩₂ − |g⟩₁|e⟩₂)/√2`; also the target on (3, 2).
pub fn singlet() -> KetState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let dims = qubits(2);
    let mut amps = vec![c(0.0); 4];
    amps[dims.flat(&[EXCITED, GROUND])] = c(h);
    amps[dims.flat(&[GROUND, EXCITED])] = c(-h);
    KetState::new(amps, dims).expect("4 amplitudes")
}

/// Restricts an atom-field ket to the field span `{|0⟩, |1⟩}`.
///
/// Fails unless the ket is normalized and all its weight sits on zero or one photon.
pub fn field_qubit(ket: &KetState) -> Result<KetState> {
    let d = ket.dims().as_slice();
    if d.len() != 2 || d[0] != 2 || d[1] < 2 {
        return Err(Error::Dims(format!("atom-field ket expected, dims {d:?}")));
    }
    ket.check_norm()?;
    let leak: f64 = (0..2)
        .flat_map(|a| (2..d[1]).map(move |n| (a, n)))
        .map(|(a, n)| ket.amp(&[a, n]).norm_sqr())
        .sum();
    if leak > tol::ALGEBRAIC {
        return Err(Error::Dims(format!("resource has weight {leak:e} outside the 0/1 photon span")));
    }
    let amps = (0..2).flat_map(|a| (0..2).map(move |n| (a, n))).map(|(a, n)| ket.amp(&[a, n])).collect();
    KetState::normalized(amps, qubits(2))
}

/// AJC transition state `|φ̄_g0⟩` used as Bob's resource.
pub fn ajc_resource(p: &SystemParams) -> Result<KetState> {
    field_qubit(&basic_states(p, 0)?.phi)
}

/// `|χ⟩ = |φ⟩₁₂ ⊗ |Φ⟩₃ₓ` on registers (1, 2, 3, x).
#[derive(Debug, Clone)]
pub struct FourQubitState {
    pub ket: KetState,
}

pub fn compose_system(alice: &KetState, bob: &KetState) -> Result<FourQubitState> {
    for (who, k) in [("alice", alice), ("bob", bob)] {
        if k.dims().as_slice() != [2, 2] {
            return Err(Error::Dims(format!("{who} state must be two qubits, dims {:?}", k.dims().as_slice())));
        }
        k.check_norm()?;
    }
    Ok(FourQubitState { ket: alice.tensor(bob) })
}

/// Unnormalized `(1,x)⟨B|χ⟩`, returned on registers (3, 2).
pub fn branch_state(chi: &FourQubitState, bell: BellIndex) -> KetState {
    let b = bell.ket();
    let dims = chi.ket.dims();
    let out_dims = qubits(2);
    let mut amps = vec![c(0.0); 4];
    for a3 in 0..2 {
        for a2 in 0..2 {
            let mut acc = c(0.0);
            for a1 in 0..2 {
                for x in 0..2 {
                    let mut digits = [0; 4];
                    digits[REG1] = a1;
                    digits[REG2] = a2;
                    digits[REG3] = a3;
                    digits[REGX] = x;
                    acc += b.amp(&[a1, x]).conj() * chi.ket.amps()[dims.flat(&digits)];
                }
            }
            amps[out_dims.flat(&[a3, a2])] = acc;
        }
    }
    KetState::new(amps, out_dims).expect("4 amplitudes")
}

/// Result of one Bell-measurement outcome.
#[derive(Debug, Clone)]
pub struct BsmOutcome {
    pub bell_index: BellIndex,
    pub probability: f64,
    /// Normalized residual on (3, 2), sign of the projection retained.
    pub post_state: KetState,
    pub correction: PauliGate,
}

/// Corrections on atom 3 that restore the singlet on (3, 2).
///
/// Derived once by [`derive_correction`] from the maximally entangled
/// resource; Bob applies this fixed table whatever resource was used.
pub fn correction_table() -> &'static [(BellIndex, PauliGate); 4] {
    static TABLE: OnceLock<[(BellIndex, PauliGate); 4]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let resonance = SystemParams::from_detuning(2.0, 0.0, SystemParams::DEFAULT_NMAX).expect("valid");
        let bob = ajc_resource(&resonance).expect("resonance resource");
        let chi = compose_system(&singlet(), &bob).expect("normalized inputs");
        BellIndex::ALL.map(|b| {
            let post = branch_state(&chi, b).renormalized().expect("nonzero branch");
            let (gate, _) = derive_correction(&post, &singlet());
            (b, gate)
        })
    })
}

pub fn correction_for(bell: BellIndex) -> PauliGate {
    correction_table().iter().find(|(b, _)| *b == bell).map(|(_, g)| *g).expect("all outcomes tabulated")
}

/// Brute-force search over signed Paulis on atom 3 for the gate whose output
/// has the largest overlap `Re⟨target|U·post⟩`; returns the gate and the
/// resulting fidelity `|⟨target|U·post⟩|²`.
pub fn derive_correction(post: &KetState, target: &KetState) -> (PauliGate, f64) {
    PauliGate::CANDIDATES
        .iter()
        .map(|&g| {
            let out = post.apply_local(&g.matrix(), 0).expect("qubit register");
            let ov = target.inner(&out);
            (g, ov.re, ov.norm_sqr())
        })
        .fold(None::<(PauliGate, f64, f64)>, |best, cur| match best {
            Some(b) if b.1 >= cur.1 - 1e-12 => Some(b),
            _ => Some(cur),
        })
        .map(|(g, _, f)| (g, f))
        .expect("non-empty candidate list")
}

pub fn bsm_project(chi: &FourQubitState, bell: BellIndex) -> Result<BsmOutcome> {
    let residual = branch_state(chi, bell);
    let probability = residual.norm().powi(2);
    let post_state = residual.renormalized()?;
    Ok(BsmOutcome { bell_index: bell, probability, post_state, correction: correction_for(bell) })
}

/// Bob's corrected two-qubit state on (3, 2).
pub fn apply_correction(outcome: &BsmOutcome) -> KetState {
    outcome
        .post_state
        .apply_local(&outcome.correction.matrix(), 0)
        .expect("post state is two qubits")
}

/// `f = {tr √(√ρ_exp · ρ_meas · √ρ_exp)}²`.
pub fn fully_entangled_fraction(expected: &DensityMatrix, measured: &DensityMatrix) -> Result<f64> {
    if expected.matrix().rows() != measured.matrix().rows() {
        return Err(Error::Dims("density matrices of different dimension".into()));
    }
    let root = expected.sqrt()?;
    let inner = root.matmul(measured.matrix()).matmul(&root);
    // symmetrize away rounding before the second square root
    let inner = (&inner + &inner.adjoint()).scale_real(0.5);
    let eig = hermitian_eig(&inner)?;
    if let Some(&low) = eig.values.last() {
        if low < -tol::POSITIVITY {
            return Err(Error::Positivity(low));
        }
    }
    let tr_sqrt: f64 = eig.values.iter().map(|&v| v.max(0.0).sqrt()).sum();
    Ok(tr_sqrt * tr_sqrt)
}

/// `⟨ψ|ρ_meas|ψ⟩` for a pure expected state; equals [`fully_entangled_fraction`] then.
pub fn pure_state_overlap(expected: &KetState, measured: &DensityMatrix) -> f64 {
    let m = measured.matrix();
    let v = m.apply(expected.amps());
    expected.amps().iter().zip(&v).map(|(a, b)| a.conj() * b).sum::<C64>().re
}

/// Maximal teleportation fidelity `F = (2f + 1)/3`.
pub fn teleport_fidelity(f: f64) -> Result<f64> {
    let eps = tol::ALGEBRAIC;
    if !(-eps..=1.0 + eps).contains(&f) {
        return Err(Error::Domain { value: f, domain: "[0, 1]" });
    }
    Ok((2.0 * f.clamp(0.0, 1.0) + 1.0) / 3.0)
}

/// Per-outcome record of a complete protocol run.
#[derive(Debug, Clone)]
pub struct BranchReport {
    pub outcome: BsmOutcome,
    pub corrected: KetState,
    pub entangled_fraction: f64,
    pub fidelity: f64,
}

#[derive(Debug, Clone)]
pub struct ProtocolReport {
    pub resource: KetState,
    pub branches: Vec<BranchReport>,
}

impl ProtocolReport {
    /// Outcome-probability-weighted fidelity.
    pub fn average_fidelity(&self) -> f64 {
        self.branches.iter().map(|b| b.outcome.probability * b.fidelity).sum()
    }

    pub fn min_fidelity(&self) -> f64 {
        self.branches.iter().map(|b| b.fidelity).fold(f64::INFINITY, f64::min)
    }
}

/// Full swap: compose, measure every outcome, correct, score against the singlet.
pub fn run_protocol(bob: &KetState) -> Result<ProtocolReport> {
    let alice = singlet();
    let chi = compose_system(&alice, bob)?;
    let expected = density_of(&alice)?;
    let branches = BellIndex::ALL
        .iter()
        .map(|&b| {
            let outcome = bsm_project(&chi, b)?;
            let corrected = apply_correction(&outcome);
            let measured = density_of(&corrected)?;
            let f = fully_entangled_fraction(&expected, &measured)?;
            Ok(BranchReport { fidelity: teleport_fidelity(f)?, entangled_fraction: f, corrected, outcome })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProtocolReport { resource: bob.clone(), branches })
}
