//! Dressed states of the unperturbed Hamiltonian `H₀`: the Raman-resonant
//! lambda scheme on levels 1–3 plus the uncoupled level 4.
//!
//! Eigenbasis (labels 1..=4):
//!
//! ```text
//! φ₁ = (Ω_b|1⟩ − Ω_a|3⟩) / G                        λ = 0      (dark state)
//! φ₂ = (Ω_a*|1⟩ + 2λ₋|2⟩ + Ω_b*|3⟩) / N₋            λ = λ₋
//! φ₃ = (Ω_a*|1⟩ + 2λ₊|2⟩ + Ω_b*|3⟩) / N₊            λ = λ₊
//! φ₄ = |4⟩                                          λ = δ₃
//! ```
//!
//! with `G² = |Ω_a|² + |Ω_b|²`, `λ± = (δ₁ ± √(δ₁² + G²)) / 2` and
//! `N±² = 2(G² + δ₁² ± δ₁√(δ₁² + G²))`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{basis_vector, Vector4, ZERO};
use crate::model::{Detunings, RabiSet};

/// Relative gap below which two unperturbed energies count as degenerate.
/// The absolute threshold is `DEFAULT_GAP_TOLERANCE * max(1, spread)`.
pub const DEFAULT_GAP_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaConstants {
    /// `G`.
    pub g_norm: f64,
    pub n_minus: f64,
    pub n_plus: f64,
    pub lambda_minus: f64,
    pub lambda_plus: f64,
}

/// One eigenpair in the bare basis `{|1⟩, |2⟩, |3⟩, |4⟩}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DressedState {
    pub amplitudes: Vector4,
    pub energy: f64,
    /// 1-based label in the order of the eigenbasis above.
    pub label: usize,
}

pub fn lambda_constants(rabi: &RabiSet, det: &Detunings) -> Result<LambdaConstants> {
    let g_sq = rabi.omega_a.norm_sqr() + rabi.omega_b.norm_sqr();
    if g_sq == 0.0 {
        return Err(Error::DegenerateLambda);
    }
    let g_norm = g_sq.sqrt();
    let delta_1 = det.delta_1;
    let root = delta_1.hypot(g_norm);

    // λ₊λ₋ = −G²/4; take the non-cancelling root first.
    let (lambda_minus, lambda_plus) = if delta_1 >= 0.0 {
        let plus = 0.5 * (delta_1 + root);
        (-g_sq / (4.0 * plus), plus)
    } else {
        let minus = 0.5 * (delta_1 - root);
        (minus, -g_sq / (4.0 * minus))
    };

    // N±² = G² + 4λ±², algebraically equal to the textbook form but free of
    // cancellation when |δ₁| ≫ G.
    let n_minus = (g_sq + 4.0 * lambda_minus * lambda_minus).sqrt();
    let n_plus = (g_sq + 4.0 * lambda_plus * lambda_plus).sqrt();

    Ok(LambdaConstants {
        g_norm,
        n_minus,
        n_plus,
        lambda_minus,
        lambda_plus,
    })
}

/// Unperturbed energies in label order: `[0, λ₋, λ₊, δ₃]`.
pub fn unperturbed_energies(consts: &LambdaConstants, det: &Detunings) -> [f64; 4] {
    [0.0, consts.lambda_minus, consts.lambda_plus, det.delta_3]
}

/// Absolute gap threshold for a set of energies.
pub fn gap_threshold(energies: &[f64], relative: f64) -> f64 {
    let lo = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = energies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    relative * (hi - lo).max(1.0)
}

/// The closest pair of energies as `(label_i, label_j, gap)`, labels 1-based.
pub fn closest_pair(energies: &[f64]) -> Option<(usize, usize, f64)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..energies.len() {
        for j in i + 1..energies.len() {
            let gap = (energies[i] - energies[j]).abs();
            if best.is_none_or(|(_, _, g)| gap < g) {
                best = Some((i + 1, j + 1, gap));
            }
        }
    }
    best
}

/// Fails with [`Error::NearDegenerate`] naming the colliding pair when any
/// two energies are closer than the threshold.
pub fn check_nondegenerate(energies: &[f64], relative: f64) -> Result<()> {
    let tolerance = gap_threshold(energies, relative);
    match closest_pair(energies) {
        Some((first, second, gap)) if gap <= tolerance => Err(Error::NearDegenerate {
            first,
            second,
            gap,
            tolerance,
        }),
        _ => Ok(()),
    }
}

/// `φ₁ = (Ω_b|1⟩ − Ω_a|3⟩) / G`. Needs only `G > 0`, no gap condition.
pub fn dark_state(rabi: &RabiSet) -> Result<DressedState> {
    let g_norm = (rabi.omega_a.norm_sqr() + rabi.omega_b.norm_sqr()).sqrt();
    if g_norm == 0.0 {
        return Err(Error::DegenerateLambda);
    }
    Ok(DressedState {
        amplitudes: [rabi.omega_b / g_norm, ZERO, -rabi.omega_a / g_norm, ZERO],
        energy: 0.0,
        label: 1,
    })
}

pub fn dressed_basis(rabi: &RabiSet, det: &Detunings) -> Result<[DressedState; 4]> {
    dressed_basis_with_tolerance(rabi, det, DEFAULT_GAP_TOLERANCE)
}

pub fn dressed_basis_with_tolerance(
    rabi: &RabiSet,
    det: &Detunings,
    relative_gap: f64,
) -> Result<[DressedState; 4]> {
    let consts = lambda_constants(rabi, det)?;
    check_nondegenerate(&unperturbed_energies(&consts, det), relative_gap)?;

    let bright = |lambda: f64, norm: f64, label: usize| DressedState {
        amplitudes: [
            rabi.omega_a.conj() / norm,
            Complex64::from(2.0 * lambda / norm),
            rabi.omega_b.conj() / norm,
            ZERO,
        ],
        energy: lambda,
        label,
    };

    Ok([
        dark_state(rabi)?,
        bright(consts.lambda_minus, consts.n_minus, 2),
        bright(consts.lambda_plus, consts.n_plus, 3),
        DressedState {
            amplitudes: basis_vector(3),
            energy: det.delta_3,
            label: 4,
        },
    ])
}
