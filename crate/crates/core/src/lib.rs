//! Spectral analysis of a four-level atom in the N-configuration.
//!
//! Three quantized field modes couple the bare levels in the chain
//! `|1⟩ –a– |2⟩ –b– |3⟩ –c– |4⟩`. With the lower levels of the lambda
//! subsystem held on Raman resonance, the c-coupling is treated as a
//! perturbation of the analytically solvable lambda scheme. The crate
//! provides:
//!
//! * [`model`]: parameters, Rabi frequencies, detunings and the 4×4 Hamiltonian;
//! * [`lambda_spectrum`]: closed-form dressed states of the unperturbed Hamiltonian;
//! * [`rs_perturbation`]: a generic second-order Rayleigh–Schrödinger engine
//!   together with the closed-form corrections it is checked against;
//! * [`tls_effective`]: the dark-state / level-4 two-level reduction;
//! * [`kerr`]: the cross-Kerr coupling, phase evolution and validity checks;
//! * [`oracle`]: an exact Hermitian eigensolver used as ground truth, plus an
//!   ε-scaling convergence scanner.
//!
//! Units: ħ = 1 throughout, every energy is an angular frequency.

pub mod error;
pub mod kerr;
pub mod lambda_spectrum;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod rs_perturbation;
pub mod tls_effective;

pub use error::{Error, Result};
pub use kerr::{
    kerr_coupling, kerr_energy, validity_flags, validity_report, xpm_evolution, KerrFlag,
    KerrReport, XpmEvolution,
};
pub use lambda_spectrum::{
    dark_state, dressed_basis, dressed_basis_with_tolerance, lambda_constants, DressedState,
    LambdaConstants, DEFAULT_GAP_TOLERANCE,
};
pub use model::{
    build_hamiltonian, detunings_from_params, hamiltonian_from_rabi, rabi_from_params, Detunings,
    Hamiltonian4, RabiSet, SystemParams,
};
pub use num_complex::Complex64;
pub use oracle::{
    convergence_scan, eigh, match_by_overlap, ConvergenceScan, EigenDecomposition, OrderEstimate,
    Pairing, StateConvergence,
};
pub use rs_perturbation::{
    closed_form_corrections, perturbed_energy, perturbed_state, second_order_energies,
    ClosedFormEntry, Consistency, PerturbationResult, PerturbationSplit,
};
pub use tls_effective::{tls_ground_energy, tls_hamiltonian, TlsModel};
