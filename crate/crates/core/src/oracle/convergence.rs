use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambda_spectrum::dressed_basis;
use crate::model::{detunings_from_params, hamiltonian_from_rabi, rabi_from_params, SystemParams};
use crate::rs_perturbation::{
    perturbed_energy, perturbed_state, second_order_energies, PerturbationSplit,
};

use super::{eigh, match_by_overlap};

/// Residuals below `NOISE_FLOOR * max(1, spectral spread)` are treated as
/// rounding noise and excluded from the order fit.
pub const NOISE_FLOOR: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum OrderEstimate {
    Fitted(f64),
    /// Fewer than two residuals above the noise floor.
    Saturated,
}

impl OrderEstimate {
    pub fn value(self) -> Option<f64> {
        match self {
            OrderEstimate::Fitted(order) => Some(order),
            OrderEstimate::Saturated => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateConvergence {
    pub label: usize,
    /// `|E_exact(ε) − e0 − ε² e2|` per schedule point.
    pub residuals: Vec<f64>,
    /// Overlap of the first-order state with its matched exact eigenvector.
    pub overlaps: Vec<f64>,
    /// `ln(r_i / r_{i+1}) / ln(ε_i / ε_{i+1})` for consecutive points,
    /// `None` when either residual is below the noise floor.
    pub pairwise_orders: Vec<Option<f64>>,
    /// Least-squares slope of `ln r` against `ln ε`.
    pub order: OrderEstimate,
}

impl StateConvergence {
    /// Smallest consecutive-pair order, if any pair was usable.
    pub fn min_pairwise_order(&self) -> Option<f64> {
        self.pairwise_orders
            .iter()
            .flatten()
            .copied()
            .reduce(f64::min)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceScan {
    pub eps: Vec<f64>,
    pub noise_floor: f64,
    pub states: Vec<StateConvergence>,
}

/// Measures the empirical order of the second-order energy truncation.
///
/// The c-coupling strength of `params` is replaced by each `ε` in
/// `eps_schedule` (its phase is kept); the exact spectrum is matched to the
/// first-order states by overlap.
pub fn convergence_scan(params: &SystemParams, eps_schedule: &[f64]) -> Result<ConvergenceScan> {
    if eps_schedule.len() < 3 {
        return Err(Error::InvalidSchedule(format!(
            "need at least 3 points, got {}",
            eps_schedule.len()
        )));
    }
    if eps_schedule.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
        return Err(Error::InvalidSchedule(
            "epsilon values must be positive".into(),
        ));
    }
    if eps_schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidSchedule(
            "epsilon values must be strictly descending".into(),
        ));
    }

    let rabi = rabi_from_params(params)?;
    let det = detunings_from_params(params)?;
    let ham = hamiltonian_from_rabi(&rabi, &det, params.phi);
    let basis = dressed_basis(&rabi, &det)?;
    let result = second_order_energies(&PerturbationSplit::new(&ham, basis))?;

    let e0 = result.e0;
    let mut min_gap = f64::INFINITY;
    for i in 0..4 {
        for j in i + 1..4 {
            min_gap = min_gap.min((e0[i] - e0[j]).abs());
        }
    }
    if eps_schedule[0] >= min_gap {
        return Err(Error::InvalidSchedule(format!(
            "epsilon {} is not below the smallest unperturbed gap {min_gap}",
            eps_schedule[0]
        )));
    }
    let hi = e0.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = e0.iter().copied().fold(f64::INFINITY, f64::min);
    let noise_floor = NOISE_FLOOR * (hi - lo).max(1.0);

    let mut residuals: Vec<Vec<f64>> = (0..4)
        .map(|_| Vec::with_capacity(eps_schedule.len()))
        .collect();
    let mut overlaps: Vec<Vec<f64>> = (0..4)
        .map(|_| Vec::with_capacity(eps_schedule.len()))
        .collect();
    for &eps in eps_schedule {
        let exact = eigh(&ham.with_epsilon(eps).h)?;
        let approx = (1..=4)
            .map(|n| perturbed_state(&result, &basis, n, eps))
            .collect::<Result<Vec<_>>>()?;
        let pairing = match_by_overlap(&approx, &exact)?;
        for n in 0..4 {
            let predicted = perturbed_energy(&result, n + 1, eps)?;
            let exact_energy = exact.values[pairing.exact_index[n]];
            residuals[n].push((exact_energy - predicted).abs());
            overlaps[n].push(pairing.overlaps[n]);
        }
    }

    let states = residuals
        .into_iter()
        .zip(overlaps)
        .enumerate()
        .map(|(n, (residuals, overlaps))| {
            let usable: Vec<bool> = residuals.iter().map(|&r| r > noise_floor).collect();
            let pairwise_orders = (0..residuals.len() - 1)
                .map(|i| {
                    (usable[i] && usable[i + 1]).then(|| {
                        (residuals[i] / residuals[i + 1]).ln()
                            / (eps_schedule[i] / eps_schedule[i + 1]).ln()
                    })
                })
                .collect();
            let points: Vec<(f64, f64)> = eps_schedule
                .iter()
                .zip(&residuals)
                .zip(&usable)
                .filter(|(_, &ok)| ok)
                .map(|((&e, &r), _)| (e.ln(), r.ln()))
                .collect();
            let order = if points.len() < 2 {
                OrderEstimate::Saturated
            } else {
                OrderEstimate::Fitted(slope(&points))
            };
            StateConvergence {
                label: n + 1,
                residuals,
                overlaps,
                pairwise_orders,
                order,
            }
        })
        .collect();

    Ok(ConvergenceScan {
        eps: eps_schedule.to_vec(),
        noise_floor,
        states,
    })
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points
        .iter()
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mean_x).powi(2)).sum();
    sxy / sxx
}
