use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `n_a = 0` or `n_c = 0`: the four-state invariant subspace does not exist.
    #[error("degenerate subspace: photon number n_{mode} must be at least 1")]
    DegenerateSubspace { mode: char },

    #[error(
        "Raman resonance violated: delta_2 = delta_a - delta_b = {delta_2} (require delta_2 = 0)"
    )]
    RamanResonanceViolated { delta_2: f64 },

    #[error("degenerate lambda system: G = 0 (both omega_a and omega_b vanish)")]
    DegenerateLambda,

    #[error("nondegenerate PT inapplicable: unperturbed states {first} and {second} are separated by {gap:e} (tolerance {tolerance:e})")]
    NearDegenerate {
        first: usize,
        second: usize,
        gap: f64,
        tolerance: f64,
    },

    #[error("small denominator between states {first} and {second}: gap {gap:e} below tolerance {tolerance:e}")]
    SmallDenominator {
        first: usize,
        second: usize,
        gap: f64,
        tolerance: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("state label {0} out of range 1..=4")]
    InvalidLabel(usize),

    #[error("matrix is not Hermitian: max |H - H^dagger| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error(
        "eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:e})"
    )]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error(
        "ambiguous overlap pairing (best {best}, runner-up {runner_up}); states look degenerate"
    )]
    AmbiguousPairing { best: f64, runner_up: f64 },

    #[error("invalid epsilon schedule: {0}")]
    InvalidSchedule(String),
}

impl Error {
    /// Short stable tag for tabular output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegenerateSubspace { .. } => "DEGENERATE_SUBSPACE",
            Error::RamanResonanceViolated { .. } => "RAMAN_VIOLATION",
            Error::DegenerateLambda => "DEGENERATE_LAMBDA",
            Error::NearDegenerate { .. } => "NEAR_DEGENERATE",
            Error::SmallDenominator { .. } => "SMALL_DENOMINATOR",
            Error::Domain(_) => "DOMAIN",
            Error::InvalidParameter(_) => "INVALID_PARAMETER",
            Error::InvalidLabel(_) => "INVALID_LABEL",
            Error::NotHermitian { .. } => "NOT_HERMITIAN",
            Error::NoConvergence { .. } => "NO_CONVERGENCE",
            Error::AmbiguousPairing { .. } => "AMBIGUOUS_PAIRING",
            Error::InvalidSchedule(_) => "INVALID_SCHEDULE",
        }
    }

    /// Errors raised by the physics guards (resonance, degeneracy, domain)
    /// as opposed to input-shape or solver failures.
    pub fn is_physics_guard(&self) -> bool {
        matches!(
            self,
            Error::DegenerateSubspace { .. }
                | Error::RamanResonanceViolated { .. }
                | Error::DegenerateLambda
                | Error::NearDegenerate { .. }
                | Error::SmallDenominator { .. }
                | Error::Domain(_)
                | Error::AmbiguousPairing { .. }
        )
    }
}
