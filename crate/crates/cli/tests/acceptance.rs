//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

use std::process::{Command as Process, ExitCode};
use std::time::Instant;

use kerr4ls::config::EvolveSpec;
use kerr4ls::{run_evolve, run_kerr, Cell, Command, ConfigFile, RunConfig};
use kerr4ls_core::linalg::eigen_residual;
use kerr4ls_core::{
    build_hamiltonian, closed_form_corrections, convergence_scan, detunings_from_params,
    dressed_basis, eigh, lambda_constants, perturbed_energy, rabi_from_params,
    second_order_energies, tls_ground_energy, validity_report, xpm_evolution, Complex64,
    Consistency, PerturbationSplit, SystemParams, TlsModel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DRAWS: usize = 1000;
const EPS_SCHEDULE: [f64; 3] = [5e-2, 2.5e-2, 1.25e-2];

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_rabi(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(
        rng.gen_range(0.01..=10.0),
        rng.gen_range(0.0..std::f64::consts::TAU),
    )
}

/// The shared draw set: valid parameters that pass the gap guard.
fn draw_set() -> Vec<SystemParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut draws = Vec::with_capacity(DRAWS);
    while draws.len() < DRAWS {
        let mut p = SystemParams::from_rabi(
            random_rabi(&mut rng),
            random_rabi(&mut rng),
            random_rabi(&mut rng),
            rng.gen_range(-10.0..=10.0),
            rng.gen_range(-10.0..=10.0),
        );
        p.phi = rng.gen_range(-3.0..3.0);
        if PerturbationSplit::from_params(&p).is_ok() {
            draws.push(p);
        }
    }
    draws
}

fn reference(omega_c: f64) -> SystemParams {
    SystemParams::from_rabi(0.2.into(), 2.0.into(), omega_c.into(), 0.5, 5.0)
}

fn spectrum_vs_oracle(draws: &[SystemParams]) -> Outcome {
    let (mut worst_value, mut worst_residual) = (0.0f64, 0.0f64);
    for p in draws {
        let rabi = rabi_from_params(p).map_err(|e| e.to_string())?;
        let det = detunings_from_params(p).map_err(|e| e.to_string())?;
        let basis = dressed_basis(&rabi, &det).map_err(|e| e.to_string())?;
        let ham = build_hamiltonian(p).map_err(|e| e.to_string())?;
        let exact = eigh(&ham.h0).map_err(|e| e.to_string())?;
        let mut analytic: Vec<f64> = basis.iter().map(|s| s.energy).collect();
        analytic.sort_by(f64::total_cmp);
        for (x, y) in analytic.iter().zip(exact.values) {
            worst_value = worst_value.max((x - y).abs());
        }
        for s in &basis {
            worst_residual = worst_residual.max(eigen_residual(&ham.h0, &s.amplitudes, s.energy));
        }
    }
    check(
        worst_value < 1e-10 && worst_residual < 1e-12,
        format!("max |ΔE| = {worst_value:.2e}, max residual = {worst_residual:.2e}"),
    )
}

fn sum_rule_and_closed_forms(draws: &[SystemParams]) -> Outcome {
    let (mut worst_e1, mut worst_sum) = (0.0f64, 0.0f64);
    let mut counts = [[0usize; 2]; 4];
    for p in draws {
        let split = PerturbationSplit::from_params(p).map_err(|e| e.to_string())?;
        let r = second_order_energies(&split).map_err(|e| e.to_string())?;
        worst_e1 = r.e1.iter().fold(worst_e1, |m, x| m.max(x.abs()));
        worst_sum = worst_sum.max(r.e2.iter().sum::<f64>().abs());

        let rabi = rabi_from_params(p).map_err(|e| e.to_string())?;
        let det = detunings_from_params(p).map_err(|e| e.to_string())?;
        let consts = lambda_constants(&rabi, &det).map_err(|e| e.to_string())?;
        let cf = closed_form_corrections(&consts, &rabi, &det).map_err(|e| e.to_string())?;
        for (n, entry) in cf.iter().enumerate() {
            counts[n][usize::from(entry.status == Consistency::Discrepant)] += 1;
        }
    }
    let expected = [
        Consistency::Consistent,
        Consistency::Discrepant,
        Consistency::Discrepant,
        Consistency::Consistent,
    ];
    let flags_ok = expected
        .iter()
        .zip(counts)
        .all(|(status, [c, d])| match status {
            Consistency::Consistent => d == 0,
            Consistency::Discrepant => c == 0,
        });
    check(
        worst_e1 < 1e-14 && worst_sum < 1e-12 && flags_ok,
        format!(
            "max |e1| = {worst_e1:.2e}, max |Σe2| = {worst_sum:.2e}, \
             closed forms [consistent, discrepant] per state = {counts:?}"
        ),
    )
}

fn convergence_order() -> Outcome {
    let scan = convergence_scan(&reference(0.1), &EPS_SCHEDULE).map_err(|e| e.to_string())?;
    let mut ok = true;
    let mut orders = Vec::new();
    for s in &scan.states {
        let order = s.min_pairwise_order().unwrap_or(f64::NAN);
        let threshold = if s.label == 1 { 3.5 } else { 2.7 };
        ok &= order >= threshold;
        orders.push(format!("{}: {order:.3}", s.label));
    }
    check(ok, format!("min pairwise orders {}", orders.join(", ")))
}

fn tls_residual(omega_c: f64) -> Result<f64, String> {
    let p = reference(omega_c);
    let rabi = rabi_from_params(&p).map_err(|e| e.to_string())?;
    let det = detunings_from_params(&p).map_err(|e| e.to_string())?;
    let ham = build_hamiltonian(&p).map_err(|e| e.to_string())?;
    let split = PerturbationSplit::from_params(&p).map_err(|e| e.to_string())?;
    let r = second_order_energies(&split).map_err(|e| e.to_string())?;
    let model = TlsModel::from_hamiltonian(&rabi, &det, &ham).map_err(|e| e.to_string())?;
    let pt = perturbed_energy(&r, 1, split.epsilon).map_err(|e| e.to_string())?;
    Ok((tls_ground_energy(&model) - pt).abs())
}

fn tls_agreement() -> Outcome {
    // |Ω_c| = 2ε
    let residuals = EPS_SCHEDULE
        .iter()
        .map(|eps| tls_residual(2.0 * eps))
        .collect::<Result<Vec<_>, _>>()?;
    let ratios: Vec<f64> = residuals.windows(2).map(|w| w[0] / w[1]).collect();

    let mut q = reference(0.1);
    q.delta_c = 0.0;
    let pt_errors = PerturbationSplit::from_params(&q).is_err();
    let rabi = rabi_from_params(&q).map_err(|e| e.to_string())?;
    let det = detunings_from_params(&q).map_err(|e| e.to_string())?;
    let ham = build_hamiltonian(&q).map_err(|e| e.to_string())?;
    let model = TlsModel::from_hamiltonian(&rabi, &det, &ham).map_err(|e| e.to_string())?;
    let resonant = (tls_ground_energy(&model) + model.omega_eff.norm() / 2.0).abs();
    check(
        ratios.iter().all(|&r| r >= 12.0) && pt_errors && resonant <= 1e-13,
        format!(
            "halving ratios {ratios:.2?}, δ₃ = 0: perturbative path errors = {pt_errors}, \
             |E_tls + |Ω|/2| = {resonant:.2e}"
        ),
    )
}

fn kerr_limit() -> Outcome {
    // |Ω_a| = |Ω_c| = 0.1, δ₃ = 5
    let params = |b_over_a: f64| {
        SystemParams::from_rabi(0.1.into(), (0.1 * b_over_a).into(), 0.1.into(), 0.5, 5.0)
    };
    let at_20 = validity_report(&params(20.0))
        .map_err(|e| e.to_string())?
        .relative_error();
    let errors = [5.0, 10.0, 20.0, 40.0]
        .iter()
        .map(|&r| validity_report(&params(r)).map(|rep| rep.relative_error()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let monotone = errors.windows(2).all(|w| w[1] < w[0]);
    let sweep: Vec<String> = errors.iter().map(|e| format!("{e:.3e}")).collect();
    check(
        at_20 < 0.01 && monotone,
        format!(
            "relative error at 20/20/50 = {at_20:.3e}, sweep [{}]",
            sweep.join(", ")
        ),
    )
}

fn ac_stark(draws: &[SystemParams]) -> Outcome {
    let mut worst = 0.0f64;
    for p in draws {
        let split = PerturbationSplit::from_params(p).map_err(|e| e.to_string())?;
        let r = second_order_energies(&split).map_err(|e| e.to_string())?;
        let rabi = rabi_from_params(p).map_err(|e| e.to_string())?;
        let det = detunings_from_params(p).map_err(|e| e.to_string())?;
        let a_sq = rabi.omega_a.norm_sqr();
        let g_sq = a_sq + rabi.omega_b.norm_sqr();
        let stark = (a_sq / g_sq) * (-rabi.omega_c.norm_sqr() / (4.0 * det.delta_3));
        let pt = split.epsilon * split.epsilon * r.e2[0];
        worst = worst.max(((stark - pt) / stark).abs());
    }
    check(
        worst <= 1e-12,
        format!("max relative deviation = {worst:.2e}"),
    )
}

fn evolution_contract() -> Outcome {
    let base = ConfigFile::from_json(
        r#"{"g_a_re": 0.3, "g_a_im": 0.1, "g_b_re": 2.0, "g_c_re": 0.2, "g_c_im": -0.05,
            "n_a": 2, "n_b": 3, "n_c": 5, "delta_a": 0.5, "delta_b": 0.5, "delta_c": 4.0,
            "evolve": {"t_start": 0.0, "t_stop": 2000.0, "count": 41}}"#,
    )
    .map_err(|e| e.to_string())?;
    let p = base.params();
    let phase = |q: &SystemParams, t: f64| {
        xpm_evolution(q, t)
            .map(|x| x.phase)
            .map_err(|e| e.to_string())
    };
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut worst_norm, mut additive, mut bilinear) = (0.0f64, true, true);
    for _ in 0..200 {
        let (t1, t2) = (rng.gen_range(0.0..1e4), rng.gen_range(0.0..1e4));
        let ev = xpm_evolution(&p, t1).map_err(|e| e.to_string())?;
        let norm = ev
            .final_state
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        worst_norm = worst_norm.max((norm - 1.0).abs());
        additive &= close(phase(&p, t1 + t2)?, phase(&p, t1)? + phase(&p, t2)?);

        let (k_a, k_c) = (rng.gen_range(1..6u32), rng.gen_range(1..6u32));
        let mut q = p;
        q.n_a *= k_a;
        q.n_c *= k_c;
        bilinear &= close(phase(&q, t1)?, f64::from(k_a * k_c) * phase(&p, t1)?);
    }

    let config = RunConfig::new(Command::Evolve, base.clone(), None);
    let table = run_evolve(&config).map_err(|e| e.to_string())?;
    let k = run_kerr(&RunConfig::new(Command::Kerr, base.clone(), None))
        .map_err(|e| e.to_string())?
        .k_value;
    let n = f64::from(p.n_a * p.n_c);
    let column = |name: &str| -> Vec<f64> {
        table
            .column(name)
            .unwrap_or_default()
            .into_iter()
            .map(|c| if let Cell::Float(x) = c { *x } else { f64::NAN })
            .collect()
    };
    let spec = base.evolve.unwrap_or(EvolveSpec {
        t_start: 0.0,
        t_stop: 0.0,
        count: 1,
    });
    let mut consistent = true;
    for (((t, ph), re), im) in spec
        .times()
        .into_iter()
        .zip(column("phase"))
        .zip(column("re_1"))
        .zip(column("im_1"))
    {
        consistent &= close(ph, k * n * t);
        let expected = Complex64::from_polar(1.0, -k * n * t);
        consistent &= (Complex64::new(re, im) - expected).norm() <= 1e-12;
    }
    worst_norm = column("norm")
        .iter()
        .fold(worst_norm, |m, x| m.max((x - 1.0).abs()));
    check(
        worst_norm <= 1e-13 && additive && bilinear && consistent,
        format!(
            "max |‖ψ‖ − 1| = {worst_norm:.1e}, additive = {additive}, bilinear = {bilinear}, \
             evolve/kerr consistent = {consistent}"
        ),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("config.json");
    std::fs::write(
        &path,
        r#"{"g_a_re": 0.1, "g_b_re": 1.0, "g_c_re": 0.05, "n_a": 1, "n_b": 0, "n_c": 1,
            "delta_a": 0.5, "delta_b": 0.5, "delta_c": 5.0,
            "sweep": {"parameter": "delta_c", "start": -2.0, "stop": 2.0, "count": 41},
            "evolve": {"t_start": 0.0, "t_stop": 1e6, "count": 21}}"#,
    )
    .map_err(|e| e.to_string())?;
    let run = |command: &str, format: &str| {
        Process::new(env!("CARGO_BIN_EXE_kerr4ls"))
            .args([
                command,
                "--config",
                path.to_str().unwrap_or_default(),
                "--format",
                format,
            ])
            .output()
            .map_err(|e| e.to_string())
    };
    let mut compared = 0;
    for command in ["spectrum", "sweep", "kerr", "evolve", "converge"] {
        for format in ["csv", "json"] {
            let (a, b) = (run(command, format)?, run(command, format)?);
            if !a.status.success() || a.stdout.is_empty() {
                return Err(format!(
                    "{command} --format {format} failed: {:?}",
                    a.status
                ));
            }
            if a.stdout != b.stdout || a.stderr != b.stderr || a.status != b.status {
                return Err(format!("{command} --format {format} differs between runs"));
            }
            compared += 1;
        }
    }
    check(
        true,
        format!("{compared} command/format pairs byte-identical"),
    )
}

fn main() -> ExitCode {
    let draws = draw_set();
    let criteria: [Criterion; 8] = [
        (
            "analytic spectrum vs oracle",
            Box::new(|| spectrum_vs_oracle(&draws)),
        ),
        (
            "first-order silence, sum rule, closed forms",
            Box::new(|| sum_rule_and_closed_forms(&draws)),
        ),
        ("dark-state convergence order", Box::new(convergence_order)),
        ("two-level agreement", Box::new(tls_agreement)),
        ("Kerr limit", Box::new(kerr_limit)),
        ("ac-Stark identity", Box::new(|| ac_stark(&draws))),
        ("evolution contract", Box::new(evolution_contract)),
        ("CLI determinism", Box::new(determinism)),
    ];
    let mut failures = 0;
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = criterion();
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} ({elapsed:.2}s)", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {} FAIL  {name}: {detail} ({elapsed:.2}s)", i + 1);
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
