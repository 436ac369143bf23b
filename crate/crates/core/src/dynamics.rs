//! Closed-form qubit evolution in the AJC model and its JC sibling.
//!
//! Starting from `|g,n⟩` the AJC dynamics never leaves the doublet
//! `{|g,n⟩, |e,n+1⟩}`; the JC process started from `|e,n⟩` stays in
//! `{|e,n⟩, |g,n+1⟩}`. Within a doublet the Hamiltonian is
//! `ω(n+3/2)·I + R̄·ε̄` (AJC) or `ω(n+1/2)·I + R·ε` (JC) with `ε² = I`, so
//! evolution is a rotation at the Rabi frequency times a global phase.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::linalg::{unitary_exp, KetState};
use crate::model::{self, ajc_params, jc_params, AjcQubitParams, Atom, JcQubitParams, SystemParams};

/// Which half of the Rabi model drives the evolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Process {
    /// Anti-rotating coupling, initial state `|g,n⟩`.
    Ajc,
    /// Rotating coupling, initial state `|e,n⟩`.
    Jc,
}

impl Process {
    pub fn name(self) -> &'static str {
        match self {
            Process::Ajc => "ajc",
            Process::Jc => "jc",
        }
    }
}

/// Basic qubit states `|ψ_gn⟩ = |g,n⟩` and `|φ̄_gn⟩ = −c̄|g,n⟩ + s̄|e,n+1⟩`.
#[derive(Debug, Clone)]
pub struct QubitDoublet {
    pub psi: KetState,
    pub phi: KetState,
    pub params: AjcQubitParams,
}

/// JC doublet `|ψ_en⟩ = |e,n⟩`, `|φ_en⟩ = c|e,n⟩ + s|g,n+1⟩`.
#[derive(Debug, Clone)]
pub struct JcDoublet {
    pub psi: KetState,
    pub phi: KetState,
    pub params: JcQubitParams,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn length(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// State `global_phase · (amplitude_psi·|ψ⟩ + amplitude_phi·|φ⟩)` at time `t`.
#[derive(Debug, Clone)]
pub struct EvolvedState {
    pub t: f64,
    pub amplitude_psi: C64,
    pub amplitude_phi: C64,
    pub global_phase: C64,
    /// Fully assembled state in the composite basis, phase included.
    pub ket: KetState,
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn combine(p: &SystemParams, terms: &[(Atom, usize, C64)]) -> Result<KetState> {
    let mut amps = vec![C64::new(0.0, 0.0); 2 * p.field_dim()];
    for &(atom, n, a) in terms {
        amps[p.index(atom, n)] += a;
    }
    KetState::new(amps, p.dims())
}

pub fn basic_states(p: &SystemParams, n: usize) -> Result<QubitDoublet> {
    let params = ajc_params(p, n)?;
    let psi = p.basis_ket(Atom::Ground, n)?;
    let phi = combine(
        p,
        &[(Atom::Ground, n, real(-params.cbar)), (Atom::Excited, n + 1, real(params.sbar))],
    )?;
    Ok(QubitDoublet { psi, phi, params })
}

pub fn jc_basic_states(p: &SystemParams, n: usize) -> Result<JcDoublet> {
    let params = jc_params(p, n)?;
    let psi = p.basis_ket(Atom::Excited, n)?;
    let phi = combine(
        p,
        &[(Atom::Excited, n, real(params.c)), (Atom::Ground, n + 1, real(params.s))],
    )?;
    Ok(JcDoublet { psi, phi, params })
}

fn assemble(t: f64, rabi: f64, energy: f64, psi: &KetState, phi: &KetState) -> EvolvedState {
    let (s, c) = (rabi * t).sin_cos();
    let amplitude_psi = real(c);
    let amplitude_phi = C64::new(0.0, -s);
    let global_phase = C64::from_polar(1.0, -energy * t);
    let amps = psi
        .amps()
        .iter()
        .zip(phi.amps())
        .map(|(a, b)| global_phase * (amplitude_psi * a + amplitude_phi * b))
        .collect();
    let ket = KetState::new(amps, psi.dims().clone()).expect("same dims");
    EvolvedState { t, amplitude_psi, amplitude_phi, global_phase, ket }
}

/// `|Ψ̄_gn(t)⟩ = e^{−iωt(n+3/2)} {cos(R̄t)|ψ_gn⟩ − i sin(R̄t)|φ̄_gn⟩}`.
pub fn evolve_closed_form(p: &SystemParams, n: usize, t: f64) -> Result<EvolvedState> {
    let d = basic_states(p, n)?;
    let energy = p.omega() * (n as f64 + 1.5);
    Ok(assemble(t, d.params.rabi, energy, &d.psi, &d.phi))
}

/// JC sibling: `e^{−iωt(n+1/2)} {cos(Rt)|e,n⟩ − i sin(Rt)|φ_en⟩}`.
pub fn jc_evolve(p: &SystemParams, n: usize, t: f64) -> Result<EvolvedState> {
    let d = jc_basic_states(p, n)?;
    let energy = p.omega() * (n as f64 + 0.5);
    Ok(assemble(t, d.params.rabi, energy, &d.psi, &d.phi))
}

/// Reference evolution by exponentiating the full truncated Hamiltonian.
pub fn evolve_oracle(p: &SystemParams, process: Process, n: usize, t: f64) -> Result<KetState> {
    p.check_photon_index(n)?;
    let h = model::build_hamiltonians(p);
    let (gen, start) = match process {
        Process::Ajc => (h.ajc, p.basis_ket(Atom::Ground, n)?),
        Process::Jc => (h.jc, p.basis_ket(Atom::Excited, n)?),
    };
    start.apply(&unitary_exp(&gen, t)?)
}

pub fn rabi_frequency(p: &SystemParams, process: Process, n: usize) -> Result<f64> {
    Ok(match process {
        Process::Ajc => ajc_params(p, n)?.rabi,
        Process::Jc => jc_params(p, n)?.rabi,
    })
}

/// Period π/R of the Bloch vector and of the atomic populations.
pub fn bloch_period(p: &SystemParams, process: Process, n: usize) -> Result<f64> {
    Ok(PI / rabi_frequency(p, process, n)?)
}

/// Bloch vector `(0, −sin 2R̄t, cos 2R̄t)` of the 2×2 density matrix written
/// on the non-orthogonal pair `{|ψ⟩, |φ⟩}`. Identical in form for both
/// processes, with the corresponding Rabi frequency.
pub fn bloch_trajectory(p: &SystemParams, n: usize, times: &[f64]) -> Result<Vec<BlochPoint>> {
    subspace_bloch(p, Process::Ajc, n, times)
}

pub fn subspace_bloch(p: &SystemParams, process: Process, n: usize, times: &[f64]) -> Result<Vec<BlochPoint>> {
    let rabi = rabi_frequency(p, process, n)?;
    Ok(times
        .iter()
        .map(|&t| {
            let (s, c) = (2.0 * rabi * t).sin_cos();
            BlochPoint::new(0.0, -s, c)
        })
        .collect())
}

/// Pauli expectations of the evolving state in the orthonormal doublet frame.
///
/// "Up" is the doublet member with the atom excited: `|e,n+1⟩` for AJC,
/// `|e,n⟩` for JC. Down is the other member. The AJC trajectory therefore
/// starts at the south pole `(0,0,−1)` and the JC one at the north pole.
pub fn embedded_bloch_circle(p: &SystemParams, n: usize, times: &[f64]) -> Result<Vec<BlochPoint>> {
    embedded_bloch(p, Process::Ajc, n, times)
}

pub fn jc_bloch(p: &SystemParams, n: usize, times: &[f64]) -> Result<Vec<BlochPoint>> {
    embedded_bloch(p, Process::Jc, n, times)
}

pub fn embedded_bloch(p: &SystemParams, process: Process, n: usize, times: &[f64]) -> Result<Vec<BlochPoint>> {
    let (up, down) = match process {
        Process::Ajc => (p.index(Atom::Excited, n + 1), p.index(Atom::Ground, n)),
        Process::Jc => (p.index(Atom::Excited, n), p.index(Atom::Ground, n + 1)),
    };
    times
        .iter()
        .map(|&t| {
            let state = match process {
                Process::Ajc => evolve_closed_form(p, n, t)?,
                Process::Jc => jc_evolve(p, n, t)?,
            };
            let a_up = state.ket.amps()[up];
            let a_down = state.ket.amps()[down];
            let coherence = a_up * a_down.conj();
            Ok(BlochPoint::new(
                2.0 * coherence.re,
                -2.0 * coherence.im,
                a_up.norm_sqr() - a_down.norm_sqr(),
            ))
        })
        .collect()
}

/// Atomic populations `(P_g, P_e)` of the AJC evolution.
pub fn probabilities(p: &SystemParams, n: usize, t: f64) -> Result<(f64, f64)> {
    let q = ajc_params(p, n)?;
    let s2 = (q.rabi * t).sin().powi(2);
    let pe = q.sbar * q.sbar * s2;
    let pg = 1.0 - s2 + q.cbar * q.cbar * s2;
    Ok((pg, pe))
}

/// Atomic populations `(P_g, P_e)` of the JC evolution from `|e,n⟩`.
pub fn jc_probabilities(p: &SystemParams, n: usize, t: f64) -> Result<(f64, f64)> {
    let q = jc_params(p, n)?;
    let s2 = (q.rabi * t).sin().powi(2);
    let pg = q.s * q.s * s2;
    let pe = 1.0 - s2 + q.c * q.c * s2;
    Ok((pg, pe))
}

/// `count` evenly spaced samples on `[0, tmax]`, endpoints included.
pub fn time_grid(tmax: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..count).map(|k| tmax * k as f64 / (count - 1) as f64).collect(),
    }
}
