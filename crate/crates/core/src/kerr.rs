//! Cross-Kerr coupling of the probe modes a and c in the perturbed dark state.
//!
//! In the strong-control limit `|Ω_b| ≫ |Ω_a|, |Ω_c|` the dark-state energy
//! becomes `E₁ ≈ −|Ω_a|²|Ω_c|² / (4δ₃|Ω_b|²) = K n_a n_c` with
//!
//! ```text
//! K = −|g_a|²|g_c|² / (δ₃ |g_b|² (n_b + 1))
//! ```
//!
//! and a number state evolves as `exp(−i K n_a n_c t)`. Photon numbers are
//! used at their eigenvalues, so `K` is reported for the given `n_b`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambda_spectrum::{
    check_nondegenerate, dark_state, lambda_constants, unperturbed_energies, DEFAULT_GAP_TOLERANCE,
};
use crate::linalg::{self, Vector4};
use crate::model::{
    build_hamiltonian, detunings_from_params, rabi_from_params, Detunings, RabiSet, SystemParams,
};
use crate::oracle::eigh;

/// Ratios below this count as weak (`≫` read as one order of magnitude).
pub const VALIDITY_RATIO: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum KerrFlag {
    /// `min(|Ω_b|/|Ω_a|, |Ω_b|/|Ω_c|) < 10`.
    WeakControl,
    /// `|δ₃|/|Ω_c| < 10`.
    WeakDetuning,
    /// Two unperturbed energies closer than the gap tolerance.
    NearDegenerate,
}

impl KerrFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            KerrFlag::WeakControl => "WEAK_CONTROL",
            KerrFlag::WeakDetuning => "WEAK_DETUNING",
            KerrFlag::NearDegenerate => "NEAR_DEGENERATE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KerrReport {
    pub k_value: f64,
    /// Dark-state energy of the full Hamiltonian.
    pub dark_energy_exact: f64,
    /// `K n_a n_c`.
    pub dark_energy_kerr: f64,
    /// `|Ω_b|/|Ω_a|`; `None` when `Ω_a = 0`.
    pub ratio_b_over_a: Option<f64>,
    /// `|Ω_b|/|Ω_c|`; `None` when `Ω_c = 0`.
    pub ratio_b_over_c: Option<f64>,
    /// `|δ₃|/|Ω_c|`; `None` when `Ω_c = 0`.
    pub ratio_det: Option<f64>,
    pub flags: Vec<KerrFlag>,
}

impl KerrReport {
    pub fn relative_error(&self) -> f64 {
        ((self.dark_energy_kerr - self.dark_energy_exact) / self.dark_energy_exact).abs()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XpmEvolution {
    /// `K n_a n_c t`.
    pub phase: f64,
    pub t: f64,
    pub initial_state: Vector4,
    pub final_state: Vector4,
}

pub fn kerr_coupling(params: &SystemParams) -> Result<f64> {
    let det = detunings_from_params(params)?;
    if det.delta_3 == 0.0 {
        return Err(Error::Domain("K is undefined at delta_3 = 0".into()));
    }
    let gb_sq = params.g_b.norm_sqr();
    if gb_sq == 0.0 {
        return Err(Error::Domain("K is undefined for g_b = 0".into()));
    }
    let n_b = f64::from(params.n_b) + 1.0;
    Ok(-params.g_a.norm_sqr() * params.g_c.norm_sqr() / (det.delta_3 * gb_sq * n_b))
}

/// `K n_a n_c`, the dark-state energy in the strong-control limit.
pub fn kerr_energy(params: &SystemParams) -> Result<f64> {
    let k = kerr_coupling(params)?;
    Ok(k * f64::from(params.n_a) * f64::from(params.n_c))
}

/// Cross-phase evolution of the bare state `|1, n_a, n_b, n_c⟩`.
pub fn xpm_evolution(params: &SystemParams, t: f64) -> Result<XpmEvolution> {
    let phase = kerr_energy(params)? * t;
    let initial_state = linalg::basis_vector::<4>(0);
    let rotation = Complex64::from_polar(1.0, -phase);
    Ok(XpmEvolution {
        phase,
        t,
        initial_state,
        final_state: initial_state.map(|a| a * rotation),
    })
}

/// Flags for the strong-control, strong-detuning and nondegeneracy
/// conditions. A vanishing denominator counts as satisfied.
pub fn validity_flags(rabi: &RabiSet, det: &Detunings) -> Vec<KerrFlag> {
    let (a, b, c) = (
        rabi.omega_a.norm(),
        rabi.omega_b.norm(),
        rabi.omega_c.norm(),
    );
    let weak = |num: f64, den: f64| den > 0.0 && num / den < VALIDITY_RATIO;
    let mut flags = Vec::new();
    if weak(b, a) || weak(b, c) {
        flags.push(KerrFlag::WeakControl);
    }
    if weak(det.delta_3.abs(), c) {
        flags.push(KerrFlag::WeakDetuning);
    }
    let degenerate = lambda_constants(rabi, det).and_then(|consts| {
        check_nondegenerate(&unperturbed_energies(&consts, det), DEFAULT_GAP_TOLERANCE)
    });
    if degenerate.is_err() {
        flags.push(KerrFlag::NearDegenerate);
    }
    flags
}

pub fn validity_report(params: &SystemParams) -> Result<KerrReport> {
    let rabi = rabi_from_params(params)?;
    let det = detunings_from_params(params)?;
    let k_value = kerr_coupling(params)?;

    let (a, b, c) = (
        rabi.omega_a.norm(),
        rabi.omega_b.norm(),
        rabi.omega_c.norm(),
    );
    let ratio = |num: f64, den: f64| (den > 0.0).then(|| num / den);
    let ratio_b_over_a = ratio(b, a);
    let ratio_b_over_c = ratio(b, c);
    let ratio_det = ratio(det.delta_3.abs(), c);

    let flags = validity_flags(&rabi, &det);

    let ham = build_hamiltonian(params)?;
    let exact = eigh(&ham.h)?;
    let dark = dark_state(&rabi)?;
    let dark_energy_exact = exact.values[exact.closest_to(&dark.amplitudes)];

    Ok(KerrReport {
        k_value,
        dark_energy_exact,
        dark_energy_kerr: k_value * f64::from(params.n_a) * f64::from(params.n_c),
        ratio_b_over_a,
        ratio_b_over_c,
        ratio_det,
        flags,
    })
}
