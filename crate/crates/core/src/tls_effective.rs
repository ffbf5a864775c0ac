//! Two-level reduction: to second order in the c-coupling the dark state only
//! talks to `|4⟩`, through the composite field `Ω = −Ω_a Ω_c / G`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::Matrix2;
use crate::model::{Detunings, Hamiltonian4, RabiSet};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TlsModel {
    /// Composite Rabi frequency `Ω`.
    pub omega_eff: Complex64,
    pub delta_3: f64,
}

impl TlsModel {
    pub fn new(omega_eff: Complex64, delta_3: f64) -> Self {
        Self { omega_eff, delta_3 }
    }

    /// Builds the reduction for an assembled Hamiltonian, using the c-coupling
    /// with its full phase.
    pub fn from_hamiltonian(rabi: &RabiSet, det: &Detunings, ham: &Hamiltonian4) -> Result<Self> {
        let g_norm = (rabi.omega_a.norm_sqr() + rabi.omega_b.norm_sqr()).sqrt();
        if g_norm == 0.0 {
            return Err(crate::Error::DegenerateLambda);
        }
        Ok(Self::new(
            -rabi.omega_a * ham.omega_c() / g_norm,
            det.delta_3,
        ))
    }
}

/// `[[0, Ω*/2], [Ω/2, δ₃]]` in the basis `{φ₁, φ₄}`.
pub fn tls_hamiltonian(model: &TlsModel) -> Matrix2 {
    [
        [Complex64::new(0.0, 0.0), model.omega_eff.conj() / 2.0],
        [model.omega_eff / 2.0, Complex64::new(model.delta_3, 0.0)],
    ]
}

/// Energy of the branch that connects to `E = 0` as `Ω → 0`:
///
/// ```text
/// E = (δ₃/2) (1 − √(1 + |Ω|²/δ₃²))
/// ```
///
/// evaluated as `−|Ω|² / (2 (δ₃ + sgn(δ₃) √(δ₃² + |Ω|²)))` to avoid the
/// cancellation, and as `−|Ω|/2` at `δ₃ = 0`. For `δ₃ > 0` this is the lower
/// eigenvalue; for `δ₃ < 0` the connected branch is the upper one.
pub fn tls_ground_energy(model: &TlsModel) -> f64 {
    let coupling_sq = model.omega_eff.norm_sqr();
    let d = model.delta_3;
    if d == 0.0 {
        return -coupling_sq.sqrt() / 2.0;
    }
    if coupling_sq == 0.0 {
        return 0.0;
    }
    let root = d.hypot(coupling_sq.sqrt());
    -coupling_sq / (2.0 * (d + d.signum() * root))
}
