#![allow(dead_code)]

use kerr4ls_core::{Complex64, SystemParams};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_rabi(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(
        rng.gen_range(0.01..=10.0),
        rng.gen_range(0.0..std::f64::consts::TAU),
    )
}

/// Valid parameters with `|Ω| ∈ [0.01, 10]` and `δ ∈ [−10, 10]`; not yet
/// filtered by the gap guard.
pub fn random_params(rng: &mut ChaCha8Rng) -> SystemParams {
    let mut p = SystemParams::from_rabi(
        random_rabi(rng),
        random_rabi(rng),
        random_rabi(rng),
        rng.gen_range(-10.0..=10.0),
        rng.gen_range(-10.0..=10.0),
    );
    p.phi = rng.gen_range(-3.0..3.0);
    p
}
