use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lambda_spectrum::DressedState;
use crate::linalg;

use super::EigenDecomposition;

/// Best and runner-up assignments closer than this are rejected.
pub const AMBIGUITY_MARGIN: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct Pairing {
    /// `exact_index[i]`: eigenvector matched to `approx[i]`.
    pub exact_index: Vec<usize>,
    /// `|⟨approx_i|exact_{exact_index[i]}⟩|`.
    pub overlaps: Vec<f64>,
}

/// Bijection between approximate states and exact eigenvectors maximizing
/// `Σ |overlap|²`, by exhaustive search over the (at most 24) assignments.
/// Phase-insensitive.
pub fn match_by_overlap(approx: &[DressedState], exact: &EigenDecomposition<4>) -> Result<Pairing> {
    let n = approx.len();
    let weights: Vec<Vec<f64>> = approx
        .iter()
        .map(|s| {
            exact
                .vectors
                .iter()
                .map(|v| linalg::inner(&s.amplitudes, v).norm_sqr())
                .collect()
        })
        .collect();

    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut runner_up = f64::NEG_INFINITY;
    for assignment in (0..4).permutations(n) {
        let score: f64 = assignment
            .iter()
            .enumerate()
            .map(|(i, &k)| weights[i][k])
            .sum();
        match &best {
            Some((top, _)) if score <= *top => runner_up = runner_up.max(score),
            _ => {
                if let Some((top, _)) = &best {
                    runner_up = runner_up.max(*top);
                }
                best = Some((score, assignment));
            }
        }
    }

    let (score, exact_index) = best.ok_or(Error::AmbiguousPairing {
        best: 0.0,
        runner_up: 0.0,
    })?;
    if score - runner_up < AMBIGUITY_MARGIN {
        return Err(Error::AmbiguousPairing {
            best: score,
            runner_up,
        });
    }
    let overlaps = exact_index
        .iter()
        .enumerate()
        .map(|(i, &k)| weights[i][k].sqrt())
        .collect();
    Ok(Pairing {
        exact_index,
        overlaps,
    })
}
