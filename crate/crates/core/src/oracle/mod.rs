//! Exact numerical ground truth.
//!
//! Small dense Hermitian matrices are diagonalized by cyclic Jacobi rotations;
//! approximate states are paired with exact eigenvectors by overlap; the
//! convergence scanner measures how fast perturbative residuals vanish with ε.

mod convergence;
mod jacobi;
mod pairing;

pub use convergence::{
    convergence_scan, ConvergenceScan, OrderEstimate, StateConvergence, NOISE_FLOOR,
};
pub use jacobi::{eigh, EigenDecomposition, MAX_SWEEPS};
pub use pairing::{match_by_overlap, Pairing, AMBIGUITY_MARGIN};
