//! Physical inputs of the N-scheme atom and the interaction Hamiltonian.
//!
//! The ordered basis of the invariant subspace is
//! `{|1,n_a,n_b,n_c⟩, |2,n_a-1,n_b,n_c⟩, |3,n_a-1,n_b+1,n_c⟩, |4,n_a-1,n_b+1,n_c-1⟩}`,
//! abbreviated to the atomic label. Photon numbers refer to the atom in `|1⟩`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix4, ZERO};

/// Couplings, photon numbers, single-photon detunings and the phase of the
/// perturbing coupling. Angular-frequency units with ħ = 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub g_a: Complex64,
    pub g_b: Complex64,
    pub g_c: Complex64,
    pub n_a: u32,
    pub n_b: u32,
    pub n_c: u32,
    pub delta_a: f64,
    pub delta_b: f64,
    pub delta_c: f64,
    pub phi: f64,
}

impl SystemParams {
    /// Parameters realising the given Rabi frequencies with a single photon
    /// in modes a and c and the vacuum in mode b (`g = Ω / 2` for each mode).
    /// The lambda subsystem is placed on Raman resonance with `δ₁ = delta_1`.
    pub fn from_rabi(
        omega_a: Complex64,
        omega_b: Complex64,
        omega_c: Complex64,
        delta_1: f64,
        delta_3: f64,
    ) -> Self {
        Self {
            g_a: omega_a / 2.0,
            g_b: omega_b / 2.0,
            g_c: omega_c / 2.0,
            n_a: 1,
            n_b: 0,
            n_c: 1,
            delta_a: delta_1,
            delta_b: delta_1,
            delta_c: delta_3,
            phi: 0.0,
        }
    }

    /// Checks every construction invariant: Raman resonance, occupied probe
    /// modes and finite inputs.
    pub fn validate(&self) -> Result<()> {
        let reals = [
            ("g_a", self.g_a.re),
            ("g_a", self.g_a.im),
            ("g_b", self.g_b.re),
            ("g_b", self.g_b.im),
            ("g_c", self.g_c.re),
            ("g_c", self.g_c.im),
            ("delta_a", self.delta_a),
            ("delta_b", self.delta_b),
            ("delta_c", self.delta_c),
            ("phi", self.phi),
        ];
        if let Some((name, _)) = reals.iter().find(|(_, x)| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!("{name} must be finite")));
        }
        if self.n_a == 0 {
            return Err(Error::DegenerateSubspace { mode: 'a' });
        }
        if self.n_c == 0 {
            return Err(Error::DegenerateSubspace { mode: 'c' });
        }
        if self.delta_a != self.delta_b {
            return Err(Error::RamanResonanceViolated {
                delta_2: self.delta_a - self.delta_b,
            });
        }
        Ok(())
    }
}

/// Quantized Rabi frequencies of the three modes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RabiSet {
    pub omega_a: Complex64,
    pub omega_b: Complex64,
    pub omega_c: Complex64,
}

/// Multi-photon detunings. `delta_2` is zero under Raman resonance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Detunings {
    pub delta_1: f64,
    pub delta_2: f64,
    pub delta_3: f64,
}

/// `Ω_a = 2 g_a √n_a`, `Ω_b = 2 g_b √(n_b + 1)`, `Ω_c = 2 g_c √n_c`.
pub fn rabi_from_params(params: &SystemParams) -> Result<RabiSet> {
    params.validate()?;
    Ok(RabiSet {
        omega_a: params.g_a * (2.0 * f64::from(params.n_a).sqrt()),
        omega_b: params.g_b * (2.0 * f64::from(params.n_b + 1).sqrt()),
        omega_c: params.g_c * (2.0 * f64::from(params.n_c).sqrt()),
    })
}

pub fn detunings_from_params(params: &SystemParams) -> Result<Detunings> {
    params.validate()?;
    let delta_2 = params.delta_a - params.delta_b;
    Ok(Detunings {
        delta_1: params.delta_a,
        delta_2,
        delta_3: params.delta_c - params.delta_b + params.delta_a,
    })
}

/// The total Hamiltonian and its split `h = h0 + epsilon * v`.
///
/// `epsilon = |Ω_c| / 2` is real and non-negative; the phase of the c-coupling
/// lives in `v`, which is zero except for `v[2][3] = e^{-iφ}` and
/// `v[3][2] = e^{iφ}` (0-based indices). Here `φ = arg(Ω_c) + phi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hamiltonian4 {
    pub h: Matrix4,
    pub h0: Matrix4,
    pub v: Matrix4,
    pub epsilon: f64,
    /// Total phase `φ` of the perturbing coupling.
    pub phase: f64,
}

impl Hamiltonian4 {
    /// The effective c-coupling entering `h[3][2]`, `Ω_c = 2 ε e^{iφ}`.
    pub fn omega_c(&self) -> Complex64 {
        Complex64::from_polar(2.0 * self.epsilon, self.phase)
    }

    /// Same atom with the perturbation strength replaced by `epsilon`.
    pub fn with_epsilon(&self, epsilon: f64) -> Self {
        Self {
            h: linalg::add(&self.h0, &linalg::scale(&self.v, epsilon.into())),
            epsilon,
            ..*self
        }
    }
}

pub fn build_hamiltonian(params: &SystemParams) -> Result<Hamiltonian4> {
    let rabi = rabi_from_params(params)?;
    let det = detunings_from_params(params)?;
    Ok(hamiltonian_from_rabi(&rabi, &det, params.phi))
}

/// Assembles the Hamiltonian directly from Rabi frequencies and detunings.
/// `phi` is added to the phase of `rabi.omega_c`.
pub fn hamiltonian_from_rabi(rabi: &RabiSet, det: &Detunings, phi: f64) -> Hamiltonian4 {
    let mut h0 = linalg::zeros::<4>();
    h0[0][1] = rabi.omega_a.conj() / 2.0;
    h0[1][0] = rabi.omega_a / 2.0;
    h0[1][1] = det.delta_1.into();
    h0[1][2] = rabi.omega_b / 2.0;
    h0[2][1] = rabi.omega_b.conj() / 2.0;
    h0[2][2] = det.delta_2.into();
    h0[3][3] = det.delta_3.into();

    let epsilon = rabi.omega_c.norm() / 2.0;
    let phase = if rabi.omega_c == ZERO {
        phi
    } else {
        rabi.omega_c.arg() + phi
    };
    let mut v = linalg::zeros::<4>();
    v[2][3] = Complex64::from_polar(1.0, -phase);
    v[3][2] = Complex64::from_polar(1.0, phase);

    let h = linalg::add(&h0, &linalg::scale(&v, epsilon.into()));
    Hamiltonian4 {
        h,
        h0,
        v,
        epsilon,
        phase,
    }
}
