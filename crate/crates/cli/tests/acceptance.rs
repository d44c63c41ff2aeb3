//! End-to-end acceptance checks. Runs as a plain binary (`harness = false`),
//! prints one PASS/FAIL line per criterion and exits non-zero if any fails.
//! The figure-level checks load the same config files the binary ships with.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use twotone_cli::config::Config;
use twotone_cli::experiments::{fig4_compute, fig5_compute, Fig4Params, Fig5Params};
use twotone_core::dynamics::{
    stroboscopic_times, GateParams, GateType, Integrator, PulseSchedule,
};
use twotone_core::effective::{
    calibrate, driven_oscillator, gate_comparison_table, ms_couplings, ms_propagator,
    ms_propagator_with_psi, ms_thermal_observables,
};
use twotone_core::hilbert::{
    collective_spin, dagger, displacement, hermitian_expm, identity, kron, max_abs_diff,
    max_nonunitarity, thermal_state, HilbertSpace, SpinKind,
};
use twotone_core::{C64, CMat, CVec};

fn estr<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn load_config(name: &str) -> Result<Config, String> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name);
    Config::from_file(&path).map_err(estr)
}

// ---------------------------------------------------------------------------
// 1. drive calibration

fn criterion_1() -> Result<String, String> {
    let cal = calibrate(GateType::Ms, 0.05, 0.04, 1.0, 1).map_err(estr)?;
    if (cal.omega_seed - 0.2).abs() > 1e-12 {
        return Err(format!("weak-limit seed {} is not 0.2000", cal.omega_seed));
    }
    if !(0.216..=0.226).contains(&cal.omega) {
        return Err(format!("converged drive {} outside [0.216, 0.226]", cal.omega));
    }
    Ok(format!(
        "seed 0.2000, converged {:.6} in {} iterations",
        cal.omega, cal.iterations
    ))
}

// ---------------------------------------------------------------------------
// 2. shaped-pulse robustness across the beat phase

fn criterion_2() -> Result<String, String> {
    let config = load_config("fig4.conf")?;
    let p = Fig4Params::from_config(&config).map_err(estr)?;
    let data = fig4_compute(&p).map_err(estr)?;

    let shaped_max = data.infidelity_shaped.iter().cloned().fold(0.0f64, f64::max);
    if shaped_max >= 1e-4 {
        return Err(format!(
            "shaped infidelity reaches {shaped_max:.2e}, expected < 1e-4 at every zeta"
        ));
    }
    let c_min = data.infidelity_constant.iter().cloned().fold(f64::INFINITY, f64::min);
    let c_max = data.infidelity_constant.iter().cloned().fold(0.0f64, f64::max);
    if c_min > 1e-3 {
        return Err(format!("constant-pulse best infidelity {c_min:.2e} > 1e-3"));
    }
    if c_max < 0.15 {
        return Err(format!("constant-pulse worst infidelity {c_max:.2e} < 0.15"));
    }
    Ok(format!(
        "shaped < {shaped_max:.1e} at all {} zeta points; constant spans [{c_min:.1e}, {c_max:.2}]",
        data.zetas.len()
    ))
}

// ---------------------------------------------------------------------------
// 3. accuracy of the analytic propagator

fn criterion_3() -> Result<String, String> {
    let config = load_config("fig5.conf")?;
    let p = Fig5Params::from_config(&config).map_err(estr)?;
    let data = fig5_compute(&p).map_err(estr)?;

    let model_max = data.d_model.iter().cloned().fold(0.0f64, f64::max);
    if model_max >= 1e-2 {
        return Err(format!("model distance reaches {model_max:.2e}, expected < 1e-2"));
    }
    for k in 0..data.zetas.len() {
        if data.d_ideal_psi[k] > data.d_ideal_y[k] + 1e-6 {
            return Err(format!(
                "tilted ideal gate worse than untilted at zeta = {:.3}: {:.3e} vs {:.3e}",
                data.zetas[k], data.d_ideal_psi[k], data.d_ideal_y[k]
            ));
        }
    }
    let quarter = data
        .zetas
        .iter()
        .position(|z| (z - PI / 2.0).abs() < 1e-12)
        .ok_or_else(|| "zeta grid does not contain pi/2".to_string())?;
    let ratio = data.d_ideal_y[quarter] / data.d_ideal_psi[quarter];
    if !(ratio >= 3.0) {
        return Err(format!(
            "at zeta = pi/2 the axis tilt only improves the distance {ratio:.2}x, expected >= 3x"
        ));
    }
    Ok(format!(
        "model distance < {model_max:.1e} everywhere; tilt never hurts and wins {ratio:.1}x at zeta = pi/2"
    ))
}

// ---------------------------------------------------------------------------
// 4. thermal time traces: closed form vs Lamb-Dicke integration

fn criterion_4() -> Result<String, String> {
    let params = GateParams::ms(0.1, 0.0885, 0.05, 1.0, 0.0, 0.0).map_err(estr)?;
    let n_bar = 2.0;
    let times = stroboscopic_times(params.delta, 38); // last one is 4π/ε
    let closed = ms_thermal_observables(&params, n_bar, &times).map_err(estr)?;

    let space = HilbertSpace::new(2, 60).map_err(estr)?;
    let n_fock = space.motion_dim();
    let mut cols = CMat::zeros((space.dim(), n_fock));
    for n in 0..n_fock {
        cols[[space.index(0, n), n]] = C64::new(1.0, 0.0);
    }
    let t_end = *times.last().unwrap();
    let integ = Integrator::new(
        space,
        params,
        PulseSchedule::constant(params.omega, t_end),
        128,
        true,
    )
    .map_err(estr)?;
    let sampled = integ.propagate_columns(&cols, 0.0, &times, &[]).map_err(estr)?;

    let ratio = n_bar / (n_bar + 1.0);
    let weights: Vec<f64> = (0..n_fock).map(|n| ratio.powi(n as i32)).collect();
    let total_w: f64 = weights.iter().sum();

    let mut max_dev = 0.0f64;
    for (k, mats) in sampled.iter().enumerate() {
        let m = &mats[0];
        let (mut p_dd, mut p_uu) = (0.0, 0.0);
        let mut coh = C64::new(0.0, 0.0);
        for (n, w) in weights.iter().enumerate() {
            let col = m.column(n);
            for fock in 0..n_fock {
                let a_dd = col[space.index(0, fock)];
                let a_uu = col[space.index(3, fock)];
                p_dd += w * a_dd.norm_sqr();
                p_uu += w * a_uu.norm_sqr();
                coh += a_dd * a_uu.conj() * C64::new(*w, 0.0);
            }
        }
        p_dd /= total_w;
        p_uu /= total_w;
        coh /= total_w;
        let c = &closed[k];
        max_dev = max_dev
            .max((p_dd - c.p_down_down).abs())
            .max((p_uu - c.p_up_up).abs())
            .max((coh.re - c.coherence.re).abs())
            .max((coh.im - c.coherence.im).abs());
    }
    if max_dev > 0.01 {
        return Err(format!(
            "closed form deviates from Lamb-Dicke integration by {max_dev:.3} (> 0.01)"
        ));
    }

    let peak = |zeta: f64| -> Result<f64, String> {
        let p = GateParams::ms(0.1, 0.0885, 0.05, 1.0, zeta, 0.0).map_err(estr)?;
        let ts: Vec<f64> = (0..=600).map(|i| 230.0 + 0.05 * i as f64).collect();
        Ok(ms_thermal_observables(&p, n_bar, &ts)
            .map_err(estr)?
            .iter()
            .map(|pt| pt.bell_fidelity)
            .fold(0.0, f64::max))
    };
    let peak_zero = peak(0.0)?;
    let peak_quarter = peak(PI / 2.0)?;
    if !(peak_zero > 0.95) {
        return Err(format!("peak fidelity {peak_zero:.4} at zeta = 0 does not exceed 0.95"));
    }
    if !(peak_quarter < peak_zero) {
        return Err(format!(
            "peak fidelity at zeta = pi/2 ({peak_quarter:.4}) not below the zeta = 0 peak ({peak_zero:.4})"
        ));
    }
    Ok(format!(
        "curves agree within {max_dev:.1e} at 38 stroboscopic times; peaks {peak_zero:.4} (zeta = 0) vs {peak_quarter:.4} (zeta = pi/2)"
    ))
}

// ---------------------------------------------------------------------------
// 5. saturation of the entangling phase

fn criterion_5() -> Result<String, String> {
    // exact geometric phase of the σz⊗σz gate at the critical drive
    let (eta, nu, n_t): (f64, f64, f64) = (0.1, 1.0, 100.0);
    let eps = nu / n_t;
    let delta = (nu - eps) / 2.0;
    let omega_c = (eps * delta / (8.0 * eta)).sqrt();
    let params = GateParams::zz(eta, omega_c, eps, nu, 0.0, 0.0).map_err(estr)?;
    let t_star = 2.0 * PI / eps;
    let space = HilbertSpace::new(2, 16).map_err(estr)?;
    let mut cols = CMat::zeros((space.dim(), 2));
    cols[[space.index(3, 0), 0]] = C64::new(1.0, 0.0); // |↑↑, 0⟩
    cols[[space.index(1, 0), 1]] = C64::new(1.0, 0.0); // |↓↑, 0⟩
    // Lamb-Dicke dynamics: the saturation under test is the Bessel-function
    // dependence of the carrier-modulated coupling; the full kernel adds
    // η²-order corrections on top that are not part of this prediction.
    let integ = Integrator::new(
        space,
        params,
        PulseSchedule::constant(omega_c, t_star),
        128,
        true,
    )
    .map_err(estr)?;
    let out = integ.propagate_columns(&cols, 0.0, &[t_star], &[]).map_err(estr)?;
    let m = &out[0][0];
    // the κ·(S_x² + S_{y}²) residual phases cancel in this difference
    let theta = (m[[space.index(3, 0), 0]].arg() - m[[space.index(1, 0), 1]].arg()) / 4.0;
    let reduction = 1.0 - theta / (PI / 8.0);
    if !(0.052..=0.082).contains(&reduction) {
        return Err(format!(
            "zz phase reduction {:.2}% outside 6.7% ± 1.5pp",
            100.0 * reduction
        ));
    }

    // σφ⊗σφ correction magnitudes at its critical drive, analytically
    let omega_ms = 1.0 / (4.0 * eta * n_t);
    let p_ms = GateParams::ms(eta, omega_ms, eps, nu, 0.0, 0.0).map_err(estr)?;
    let saturation = 1.0 / (4.0 * (eta * n_t).powi(2));
    if (saturation - 0.0025).abs() > 1e-15 {
        return Err(format!("MS saturation correction {saturation} is not 0.25%"));
    }
    let second_term = p_ms.epsilon / (2.0 * p_ms.delta);
    if (second_term - 0.005).abs() > 2e-4 {
        return Err(format!("MS counter-rotating weight {second_term} is not 0.5%"));
    }
    let c = ms_couplings(&p_ms).map_err(estr)?;
    let mu_over_lambda = (c.mu_rate / c.lambda_rate).abs();
    if !(mu_over_lambda < 1e-4) {
        return Err(format!("mu/lambda = {mu_over_lambda:.2e} not below 1e-4"));
    }
    Ok(format!(
        "zz phase {:.2}% below π/8; MS corrections {:.2}% and {:.2}%, mu/lambda = {mu_over_lambda:.1e}",
        100.0 * reduction,
        100.0 * saturation,
        100.0 * second_term
    ))
}

// ---------------------------------------------------------------------------
// 6. numerical property suite

fn criterion_6() -> Result<String, String> {
    // displacement composition D(α)D(β) = e^{i·Im(αβ̄)} D(α+β) on low-lying states
    let space = HilbertSpace::new(2, 40).map_err(estr)?;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut v = CVec::zeros(space.motion_dim());
    for n in 0..=8 {
        v[n] = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.mapv_inplace(|z| z / norm);
    let mut worst_bch = 0.0f64;
    for _ in 0..100 {
        let a = C64::new(rng.gen_range(-0.4..0.4), rng.gen_range(-0.4..0.4));
        let b = C64::new(rng.gen_range(-0.4..0.4), rng.gen_range(-0.4..0.4));
        let da = displacement(space, a).map_err(estr)?.matrix;
        let db = displacement(space, b).map_err(estr)?.matrix;
        let lhs = da.dot(&db.dot(&v));
        let phase = C64::from_polar(1.0, (a * b.conj()).im);
        let rhs = displacement(space, a + b)
            .map_err(estr)?
            .matrix
            .dot(&v)
            .mapv(|z| z * phase);
        let err = lhs
            .iter()
            .zip(rhs.iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        worst_bch = worst_bch.max(err);
    }
    if worst_bch > 1e-9 {
        return Err(format!("displacement composition error {worst_bch:.2e} > 1e-9"));
    }

    // unitarity and step-halving of a representative full-model integration
    let sp = HilbertSpace::new(2, 16).map_err(estr)?;
    let p = GateParams::ms(0.05, 0.15, 0.1, 1.0, 0.3, 0.0).map_err(estr)?;
    let t_gate = p.gate_time(1);
    let integ = Integrator::new(sp, p, PulseSchedule::constant(0.15, t_gate), 128, false)
        .map_err(estr)?;
    let u = integ.unitary(t_gate).map_err(estr)?;
    let nonunit = max_nonunitarity(&u.matrix);
    if nonunit > 1e-9 {
        return Err(format!("propagator non-unitarity {nonunit:.2e} > 1e-9"));
    }
    let halving = integ.check_step_convergence(t_gate, 1e-8).map_err(estr)?;

    // thermal displacement expectation: closed form vs brute Fock sum
    let tsp = HilbertSpace::new(2, 150).map_err(estr)?;
    let rho = thermal_state(tsp, 2.0).map_err(estr)?;
    let mut worst_thermal = 0.0f64;
    for &(re, im) in &[(0.3, 0.0), (0.0, 0.7), (0.9, -0.6), (1.2, 0.5)] {
        let alpha = C64::new(re, im);
        let d = displacement(tsp, alpha).map_err(estr)?.matrix;
        let brute: C64 = rho.matrix.dot(&d).diag().iter().sum();
        let exact = twotone_core::effective::thermal_displacement_expectation(alpha, 2.0);
        worst_thermal = worst_thermal.max((brute - C64::new(exact, 0.0)).norm());
    }
    if worst_thermal > 1e-6 {
        return Err(format!("thermal expectation deviates by {worst_thermal:.2e} > 1e-6"));
    }

    // stroboscopic loop closure of the driven oscillator
    let eps_d = 0.05;
    let t_loop = 2.0 * PI / eps_d;
    let nsamp = 4001;
    let gamma: Vec<C64> = (0..nsamp)
        .map(|k| {
            let t = t_loop * k as f64 / (nsamp - 1) as f64;
            C64::new(0.0, 0.01) * C64::from_polar(1.0, eps_d * t)
        })
        .collect();
    let osc = driven_oscillator(&gamma, t_loop).map_err(estr)?;
    if osc.alpha.norm() > 1e-12 {
        return Err(format!("loop-closure residual |alpha| = {:.2e} > 1e-12", osc.alpha.norm()));
    }

    // calibration fixed points land within the advertised residual
    let cal_ms = calibrate(GateType::Ms, 0.05, 0.04, 1.0, 1).map_err(estr)?;
    let cal_zz = calibrate(GateType::Zz, 0.1, 0.01, 1.0, 1).map_err(estr)?;
    let worst_residual = cal_ms.residual.max(cal_zz.residual);
    if worst_residual > 1e-10 {
        return Err(format!("calibration residual {worst_residual:.2e} > 1e-10"));
    }

    // ζ-covariance: a ζ ≠ 0 propagator is the ψ = 0 one conjugated by
    // exp(−i(ψ/2)S_x)
    let csp = HilbertSpace::new(2, 12).map_err(estr)?;
    let cp = GateParams::ms(0.05, 0.221, 0.04, 1.0, 0.7, 0.0).map_err(estr)?;
    let t_probe = 37.3;
    let u_full = ms_propagator(csp, &cp, t_probe).map_err(estr)?;
    let u_axis0 = ms_propagator_with_psi(csp, &cp, t_probe, 0.0).map_err(estr)?;
    let psi = 4.0 * cp.omega / cp.delta * cp.zeta.sin();
    let sx = collective_spin(csp, SpinKind::X, 0.0).matrix;
    let r = kron(&hermitian_expm(&sx, -psi / 2.0), &identity(csp.motion_dim()));
    let covariance = max_abs_diff(&u_full.matrix, &r.dot(&u_axis0.matrix).dot(&dagger(&r)));
    if covariance > 1e-10 {
        return Err(format!("zeta-covariance violated by {covariance:.2e} > 1e-10"));
    }

    Ok(format!(
        "composition {worst_bch:.1e}, unitarity {nonunit:.1e}, thermal {worst_thermal:.1e}, closure {:.1e}, residual {worst_residual:.1e}, covariance {covariance:.1e}, halving {halving:.1e}",
        osc.alpha.norm()
    ))
}

// ---------------------------------------------------------------------------
// 7. geometry comparison table

fn criterion_7() -> Result<String, String> {
    let (eta, n_t) = (0.1, 100.0);
    let table = gate_comparison_table(eta, n_t);
    let en = eta * n_t;
    let expected = [
        ("critical_drive_over_nu", 1.0 / (4.0 * en.sqrt()), 1.0 / (4.0 * en)),
        ("phase_saturation_deficit", 2.0 / (3.0 * en), 1.0 / (4.0 * en * en)),
        ("residual_to_gate_phase_ratio", 8.0 * eta / 3.0, 1.0 / (6.0 * en * en * n_t)),
    ];
    if table.len() != expected.len() {
        return Err(format!("expected {} rows, got {}", expected.len(), table.len()));
    }
    for (row, (name, zz, ms)) in table.iter().zip(expected.iter()) {
        if row.quantity != *name {
            return Err(format!("row `{}` where `{name}` was expected", row.quantity));
        }
        if (row.zz - zz).abs() > 1e-12 * zz.abs() || (row.ms - ms).abs() > 1e-12 * ms.abs() {
            return Err(format!(
                "row `{name}`: got ({}, {}), expected ({zz}, {ms})",
                row.zz, row.ms
            ));
        }
    }
    let drives = &table[0];
    Ok(format!(
        "all six entries exact; critical drives {:.6} (zz) and {:.6} (ms)",
        drives.zz, drives.ms
    ))
}

// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    let checks: [(u32, &str, fn() -> Result<String, String>); 7] = [
        (1, "drive calibration", criterion_1),
        (2, "shaped-pulse robustness", criterion_2),
        (3, "analytic-propagator accuracy", criterion_3),
        (4, "thermal time traces", criterion_4),
        (5, "saturation formulas", criterion_5),
        (6, "property suite", criterion_6),
        (7, "geometry comparison table", criterion_7),
    ];
    let mut failures = 0;
    for (n, name, check) in checks {
        let start = Instant::now();
        let elapsed = |s: Instant| s.elapsed().as_secs_f64();
        match check() {
            Ok(detail) => {
                println!("criterion {n} ({name}): PASS — {detail} [{:.1}s]", elapsed(start));
            }
            Err(detail) => {
                failures += 1;
                println!("criterion {n} ({name}): FAIL — {detail} [{:.1}s]", elapsed(start));
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criterion(s) failed");
        ExitCode::FAILURE
    }
}
