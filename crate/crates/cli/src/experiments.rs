//! The six shipped experiments. Each one parses its typed parameters from a
//! [`Config`], computes its dataset through the library, and reports a
//! one-line summary. The compute functions are public so integration tests
//! can drive them directly with the same configs the binary uses.

use std::f64::consts::PI;

use twotone_core::analysis::{
    channel_from_ground_columns, channel_from_qubit_unitary, channel_from_unitary,
    ideal_entangling_gate, process_distance,
};
use twotone_core::dynamics::{GateParams, GateType, Integrator, PulseSchedule};
use twotone_core::effective::{
    calibrate, ms_couplings, ms_propagator, ms_thermal_observables, gate_comparison_table,
    zz_couplings,
};
use twotone_core::hilbert::{collective_spin, rotated_spin, HilbertSpace, RotAxis, SpinKind};
use twotone_core::sequences::{shaped_envelope, two_pulse_sign_flip, SignFlip};
use twotone_core::{C64, CMat, Error};

use crate::config::Config;
use crate::output::{Dataset, Provenance};

pub const EXPERIMENTS: [&str; 6] = ["fig3", "fig4", "fig5", "table1", "sweep", "calibrate"];

pub struct RunOutput {
    pub dataset: Dataset,
    pub summary: String,
}

/// ζ grid with both endpoints of [0, 2π] included, so that for the usual
/// 33-point grid the quarter points 0, π/2, π, 3π/2 land exactly on it.
pub fn zeta_grid(points: usize) -> Result<Vec<f64>, Error> {
    if points < 2 {
        return Err(Error::InvalidParam("zeta grid needs at least 2 points".into()));
    }
    Ok((0..points)
        .map(|k| 2.0 * PI * k as f64 / (points - 1) as f64)
        .collect())
}

fn linspace(min: f64, max: f64, points: usize) -> Result<Vec<f64>, Error> {
    if points == 0 {
        return Err(Error::InvalidParam("grid needs at least one point".into()));
    }
    if max < min {
        return Err(Error::InvalidParam("grid must be monotone (max ≥ min)".into()));
    }
    if points == 1 {
        return Ok(vec![min]);
    }
    Ok((0..points)
        .map(|k| min + (max - min) * k as f64 / (points - 1) as f64)
        .collect())
}

fn parse_gate(config: &Config) -> Result<GateType, Error> {
    match config.get_str("gate")? {
        "ms" => Ok(GateType::Ms),
        "zz" => Ok(GateType::Zz),
        other => Err(Error::InvalidParam(format!(
            "gate must be `ms` or `zz`, got `{other}`"
        ))),
    }
}

// ---------------------------------------------------------------------------
// fig3: thermal-motion time traces of the σ_φ⊗σ_φ gate (closed form)

pub struct Fig3Params {
    pub eta: f64,
    pub omega: f64,
    pub epsilon: f64,
    pub nu: f64,
    pub zeta: f64,
    pub phi: f64,
    pub n_bar: f64,
    pub t_max: f64,
    pub t_points: usize,
}

impl Fig3Params {
    pub fn from_config(config: &Config) -> Result<Self, Error> {
        config.check_keys(&[
            "eta", "omega", "epsilon", "nu", "zeta", "phi", "n_bar", "t_max", "t_points", "out",
        ])?;
        Ok(Fig3Params {
            eta: config.get_f64("eta")?,
            omega: config.get_f64("omega")?,
            epsilon: config.get_f64("epsilon")?,
            nu: config.get_f64("nu")?,
            zeta: config.get_f64_or("zeta", 0.0)?,
            phi: config.get_f64_or("phi", 0.0)?,
            n_bar: config.get_f64("n_bar")?,
            t_max: config.get_f64("t_max")?,
            t_points: config.get_usize("t_points")?,
        })
    }
}

fn run_fig3(config: &Config) -> Result<RunOutput, Error> {
    let p = Fig3Params::from_config(config)?;
    let params = GateParams::ms(p.eta, p.omega, p.epsilon, p.nu, p.zeta, p.phi)?;
    let times = linspace(0.0, p.t_max, p.t_points)?;
    let points = ms_thermal_observables(&params, p.n_bar, &times)?;

    let mut rows = Vec::with_capacity(points.len());
    let mut peak = (0.0f64, 0.0f64);
    for pt in &points {
        if pt.bell_fidelity > peak.1 {
            peak = (pt.time, pt.bell_fidelity);
        }
        rows.push(vec![
            p.nu * pt.time,
            pt.p_down_down,
            pt.p_up_up,
            pt.coherence.re,
            pt.coherence.im,
            pt.bell_fidelity,
        ]);
    }
    Ok(RunOutput {
        dataset: Dataset {
            provenance: Provenance {
                experiment: "fig3",
                config_hash: config.hash(),
                n_max: 0,
                steps_per_cycle: 0,
            },
            columns: vec!["nu_t", "p_dd", "p_uu", "re_coh", "im_coh", "fidelity"],
            rows,
            row_labels: None,
        },
        summary: format!(
            "fig3: {} samples to nu*t = {:.3}; peak fidelity {:.6} at nu*t = {:.3}",
            p.t_points,
            p.nu * p.t_max,
            peak.1,
            p.nu * peak.0
        ),
    })
}

// ---------------------------------------------------------------------------
// fig4: ζ-robustness of the shaped two-pulse gate vs a constant pulse

pub struct Fig4Params {
    pub eta: f64,
    pub omega_shaped: f64,
    pub omega_constant: f64,
    pub epsilon: f64,
    pub nu: f64,
    pub total_cycles: f64,
    pub ramp_cycles: f64,
    pub zeta_points: usize,
    pub n_max: usize,
    pub steps_per_cycle: usize,
}

impl Fig4Params {
    pub fn from_config(config: &Config) -> Result<Self, Error> {
        config.check_keys(&[
            "eta",
            "omega_shaped",
            "omega_constant",
            "epsilon",
            "nu",
            "total_cycles",
            "ramp_cycles",
            "zeta_points",
            "n_max",
            "steps_per_cycle",
            "out",
        ])?;
        Ok(Fig4Params {
            eta: config.get_f64("eta")?,
            omega_shaped: config.get_f64("omega_shaped")?,
            omega_constant: config.get_f64("omega_constant")?,
            epsilon: config.get_f64("epsilon")?,
            nu: config.get_f64("nu")?,
            total_cycles: config.get_f64("total_cycles")?,
            ramp_cycles: config.get_f64("ramp_cycles")?,
            zeta_points: config.get_usize("zeta_points")?,
            n_max: config.get_usize_or("n_max", 24)?,
            steps_per_cycle: config.get_usize_or("steps_per_cycle", 256)?,
        })
    }
}

pub struct Fig4Data {
    pub zetas: Vec<f64>,
    pub infidelity_shaped: Vec<f64>,
    pub infidelity_constant: Vec<f64>,
}

/// Full-Hamiltonian infidelity of |↑↑,0⟩ → (|↑↑⟩ − i|↓↓⟩)/√2 ⊗ |0⟩ across a
/// ζ grid, for the cos²-shaped two-pulse gate and for a constant pulse of
/// the same total duration. All ζ values ride in one integrator bundle.
pub fn fig4_compute(p: &Fig4Params) -> Result<Fig4Data, Error> {
    let zetas = zeta_grid(p.zeta_points)?;
    let space = HilbertSpace::new(2, p.n_max)?;
    let total_time = 2.0 * PI * p.total_cycles / p.nu;

    let mut start = CMat::zeros((space.dim(), 1));
    start[[space.index(3, 0), 0]] = C64::new(1.0, 0.0);
    let idx_dd = space.index(0, 0);
    let idx_uu = space.index(3, 0);
    let overlap_target = |col: &CMat| -> f64 {
        // ⟨target| = (⟨↑↑| + i⟨↓↓|)/√2 on the motional ground state
        let ov = C64::new(0.0, 1.0 / 2f64.sqrt()) * col[[idx_dd, 0]]
            + C64::new(1.0 / 2f64.sqrt(), 0.0) * col[[idx_uu, 0]];
        1.0 - ov.norm_sqr()
    };

    let run = |omega: f64, schedule: PulseSchedule| -> Result<Vec<f64>, Error> {
        let params = GateParams::ms(p.eta, omega, p.epsilon, p.nu, 0.0, 0.0)?;
        let integ = Integrator::new(space, params, schedule, p.steps_per_cycle, false)?;
        let cols = integ.propagate_columns(&start, 0.0, &[total_time], &zetas)?;
        Ok(cols[0].iter().map(overlap_target).collect())
    };

    let pulse = shaped_envelope(p.omega_shaped, p.total_cycles / 2.0, p.ramp_cycles, p.nu)?;
    let shaped = two_pulse_sign_flip(&pulse, GateType::Ms, SignFlip::ZetaShift)?;
    let infidelity_shaped = run(p.omega_shaped, shaped)?;
    let constant = PulseSchedule::constant(p.omega_constant, total_time);
    let infidelity_constant = run(p.omega_constant, constant)?;

    Ok(Fig4Data { zetas, infidelity_shaped, infidelity_constant })
}

fn run_fig4(config: &Config) -> Result<RunOutput, Error> {
    let p = Fig4Params::from_config(config)?;
    let data = fig4_compute(&p)?;
    let bounds = |v: &[f64]| {
        (
            v.iter().cloned().fold(f64::INFINITY, f64::min),
            v.iter().cloned().fold(0.0f64, f64::max),
        )
    };
    let (s_min, s_max) = bounds(&data.infidelity_shaped);
    let (c_min, c_max) = bounds(&data.infidelity_constant);
    let rows = data
        .zetas
        .iter()
        .zip(&data.infidelity_shaped)
        .zip(&data.infidelity_constant)
        .map(|((&z, &s), &c)| vec![z, s, c])
        .collect();
    Ok(RunOutput {
        dataset: Dataset {
            provenance: Provenance {
                experiment: "fig4",
                config_hash: config.hash(),
                n_max: p.n_max,
                steps_per_cycle: p.steps_per_cycle,
            },
            columns: vec!["zeta", "infidelity_shaped", "infidelity_constant"],
            rows,
            row_labels: None,
        },
        summary: format!(
            "fig4: shaped infidelity in [{s_min:.2e}, {s_max:.2e}], constant in [{c_min:.2e}, {c_max:.2e}] over {} zeta points",
            p.zeta_points
        ),
    })
}

// ---------------------------------------------------------------------------
// fig5: process distance of the exact gate to the analytic propagators

pub struct Fig5Params {
    pub eta: f64,
    pub omega: f64,
    pub epsilon: f64,
    pub nu: f64,
    pub zeta_points: usize,
    pub n_max: usize,
    pub steps_per_cycle: usize,
}

impl Fig5Params {
    pub fn from_config(config: &Config) -> Result<Self, Error> {
        config.check_keys(&[
            "eta",
            "omega",
            "epsilon",
            "nu",
            "zeta_points",
            "n_max",
            "steps_per_cycle",
            "out",
        ])?;
        Ok(Fig5Params {
            eta: config.get_f64("eta")?,
            omega: config.get_f64("omega")?,
            epsilon: config.get_f64("epsilon")?,
            nu: config.get_f64("nu")?,
            zeta_points: config.get_usize("zeta_points")?,
            n_max: config.get_usize_or("n_max", 30)?,
            steps_per_cycle: config.get_usize_or("steps_per_cycle", 256)?,
        })
    }
}

pub struct Fig5Data {
    pub zetas: Vec<f64>,
    /// d(exact, analytic propagator with Bessel-saturated rates and tilt ψ).
    pub d_model: Vec<f64>,
    /// d(exact, exp(i(π/8)S_{y,ψ}²)) — ideal gate on the tilted axis.
    pub d_ideal_psi: Vec<f64>,
    /// d(exact, exp(i(π/8)S_y²)) — ideal gate ignoring the tilt.
    pub d_ideal_y: Vec<f64>,
    /// d(exact, exp(i·2π(ηΩ/ε)²·S_y²)) — weak-drive phase, no saturation.
    pub d_pert: Vec<f64>,
}

/// One-loop σ_φ⊗σ_φ gate at t* = 2π/|ε|, compared as a qubit channel
/// (motion starting and, ideally, ending in the ground state) against the
/// analytic propagator and three simpler references.
pub fn fig5_compute(p: &Fig5Params) -> Result<Fig5Data, Error> {
    let zetas = zeta_grid(p.zeta_points)?;
    let space = HilbertSpace::new(2, p.n_max)?;
    let t_star = 2.0 * PI / p.epsilon.abs();

    let mut ground = CMat::zeros((space.dim(), 4));
    for q in 0..4 {
        ground[[space.index(q, 0), q]] = C64::new(1.0, 0.0);
    }
    let base = GateParams::ms(p.eta, p.omega, p.epsilon, p.nu, 0.0, 0.0)?;
    let integ = Integrator::new(space, base, PulseSchedule::constant(p.omega, t_star), p.steps_per_cycle, false)?;
    let cols = integ.propagate_columns(&ground, 0.0, &[t_star], &zetas)?;

    let sy = collective_spin(space, SpinKind::Y, 0.0).matrix;
    let ch_ideal_y = channel_from_qubit_unitary(&ideal_entangling_gate(&sy));
    let weak_phase = 2.0 * PI * (p.eta * p.omega / p.epsilon).powi(2);
    let sy2 = sy.dot(&sy);
    let ch_pert =
        channel_from_qubit_unitary(&twotone_core::hilbert::hermitian_expm(&sy2, weak_phase));

    let mut data = Fig5Data {
        zetas: zetas.clone(),
        d_model: Vec::with_capacity(zetas.len()),
        d_ideal_psi: Vec::with_capacity(zetas.len()),
        d_ideal_y: Vec::with_capacity(zetas.len()),
        d_pert: Vec::with_capacity(zetas.len()),
    };
    for (k, zeta) in zetas.iter().enumerate() {
        let exact = channel_from_ground_columns(space, &cols[0][k])?;
        let params = GateParams::ms(p.eta, p.omega, p.epsilon, p.nu, *zeta, 0.0)?;
        let model = channel_from_unitary(&ms_propagator(space, &params, t_star)?)?;
        let psi = 4.0 * p.omega / params.delta * zeta.sin();
        let sy_psi = rotated_spin(space, RotAxis::Y, psi).matrix;
        let ch_ideal_psi = channel_from_qubit_unitary(&ideal_entangling_gate(&sy_psi));

        data.d_model.push(process_distance(&exact, &model)?);
        data.d_ideal_psi.push(process_distance(&exact, &ch_ideal_psi)?);
        data.d_ideal_y.push(process_distance(&exact, &ch_ideal_y)?);
        data.d_pert.push(process_distance(&exact, &ch_pert)?);
    }
    Ok(data)
}

fn run_fig5(config: &Config) -> Result<RunOutput, Error> {
    let p = Fig5Params::from_config(config)?;
    let data = fig5_compute(&p)?;
    let max = |v: &[f64]| v.iter().cloned().fold(0.0f64, f64::max);
    let rows = (0..data.zetas.len())
        .map(|k| {
            vec![
                data.zetas[k],
                data.d_model[k],
                data.d_ideal_psi[k],
                data.d_ideal_y[k],
                data.d_pert[k],
            ]
        })
        .collect();
    Ok(RunOutput {
        dataset: Dataset {
            provenance: Provenance {
                experiment: "fig5",
                config_hash: config.hash(),
                n_max: p.n_max,
                steps_per_cycle: p.steps_per_cycle,
            },
            columns: vec![
                "zeta",
                "d_exact_vs_eq27",
                "d_exact_vs_ideal_psi",
                "d_exact_vs_ideal_y",
                "d_exact_vs_pert",
            ],
            rows,
            row_labels: None,
        },
        summary: format!(
            "fig5: max distances — model {:.2e}, ideal(psi) {:.2e}, ideal(y) {:.2e}, perturbative {:.2e}",
            max(&data.d_model),
            max(&data.d_ideal_psi),
            max(&data.d_ideal_y),
            max(&data.d_pert)
        ),
    })
}

// ---------------------------------------------------------------------------
// table1: side-by-side figures of merit of the two gate geometries

fn run_table1(config: &Config) -> Result<RunOutput, Error> {
    config.check_keys(&["eta", "trap_cycles", "out"])?;
    let eta = config.get_f64("eta")?;
    let n_t = config.get_f64("trap_cycles")?;
    if !(eta > 0.0) || !(n_t > 0.0) {
        return Err(Error::InvalidParam("eta and trap_cycles must be positive".into()));
    }
    let table = gate_comparison_table(eta, n_t);
    let labels = table.iter().map(|r| r.quantity.to_string()).collect();
    let rows = table.iter().map(|r| vec![r.zz, r.ms]).collect();
    Ok(RunOutput {
        dataset: Dataset {
            provenance: Provenance {
                experiment: "table1",
                config_hash: config.hash(),
                n_max: 0,
                steps_per_cycle: 0,
            },
            columns: vec!["quantity", "zz", "ms"],
            rows,
            row_labels: Some(labels),
        },
        summary: format!("table1: {} quantities at eta = {eta}, trap_cycles = {n_t}", table.len()),
    })
}

// ---------------------------------------------------------------------------
// sweep: effective couplings across an Ω or ζ grid

fn run_sweep(config: &Config) -> Result<RunOutput, Error> {
    config.check_keys(&[
        "gate", "variable", "min", "max", "points", "eta", "epsilon", "nu", "omega", "zeta",
        "phi", "out",
    ])?;
    let gate = parse_gate(config)?;
    let variable = config.get_str("variable")?.to_string();
    let grid = linspace(
        config.get_f64("min")?,
        config.get_f64("max")?,
        config.get_usize("points")?,
    )?;
    let eta = config.get_f64("eta")?;
    let epsilon = config.get_f64("epsilon")?;
    let nu = config.get_f64("nu")?;
    let phi = config.get_f64_or("phi", 0.0)?;

    let var_column = match variable.as_str() {
        "omega" => "omega",
        "zeta" => "zeta",
        other => {
            return Err(Error::InvalidParam(format!(
                "variable must be `omega` or `zeta`, got `{other}`"
            )))
        }
    };

    let mut rows = Vec::with_capacity(grid.len());
    for &v in &grid {
        let (omega, zeta) = match var_column {
            "omega" => (v, config.get_f64_or("zeta", 0.0)?),
            _ => (config.get_f64("omega")?, v),
        };
        let params = match gate {
            GateType::Ms => GateParams::ms(eta, omega, epsilon, nu, zeta, phi)?,
            GateType::Zz => GateParams::zz(eta, omega, epsilon, nu, zeta, phi)?,
        };
        let c = match gate {
            GateType::Ms => ms_couplings(&params)?,
            GateType::Zz => zz_couplings(&params)?,
        };
        rows.push(vec![
            v,
            c.psi,
            c.bessel_argument,
            c.omega_m,
            c.omega_ms_residual,
            c.theta_rate,
            c.kappa_rate,
            c.ms_sideband,
            c.lambda_rate,
            c.chi,
            c.mu_rate,
        ]);
    }
    Ok(RunOutput {
        dataset: Dataset {
            provenance: Provenance {
                experiment: "sweep",
                config_hash: config.hash(),
                n_max: 0,
                steps_per_cycle: 0,
            },
            columns: vec![
                var_column,
                "psi",
                "bessel_argument",
                "omega_m",
                "omega_ms_residual",
                "theta_rate",
                "kappa_rate",
                "ms_sideband",
                "lambda_rate",
                "chi",
                "mu_rate",
            ],
            rows,
            row_labels: None,
        },
        summary: format!("sweep: couplings at {} {var_column} values", grid.len()),
    })
}

// ---------------------------------------------------------------------------
// calibrate: critical drive strength for a maximally entangling gate

fn run_calibrate(config: &Config) -> Result<RunOutput, Error> {
    config.check_keys(&["gate", "eta", "epsilon", "nu", "loops", "out"])?;
    let gate = parse_gate(config)?;
    let eta = config.get_f64("eta")?;
    let epsilon = config.get_f64("epsilon")?;
    let nu = config.get_f64("nu")?;
    let loops = config.get_usize("loops")?;
    let cal = calibrate(gate, eta, epsilon, nu, loops)?;
    let gate_label = config.get_str("gate")?.to_string();
    Ok(RunOutput {
        dataset: Dataset {
            provenance: Provenance {
                experiment: "calibrate",
                config_hash: config.hash(),
                n_max: 0,
                steps_per_cycle: 0,
            },
            columns: vec![
                "gate",
                "eta",
                "epsilon",
                "nu",
                "loops",
                "omega_seed",
                "omega_converged",
                "iterations",
                "residual",
            ],
            rows: vec![vec![
                eta,
                epsilon,
                nu,
                loops as f64,
                cal.omega_seed,
                cal.omega,
                cal.iterations as f64,
                cal.residual,
            ]],
            row_labels: Some(vec![gate_label.clone()]),
        },
        summary: format!(
            "calibrate {gate_label}: seed {:.4}, converged {:.6} in {} iterations (residual {:.1e})",
            cal.omega_seed, cal.omega, cal.iterations, cal.residual
        ),
    })
}

// ---------------------------------------------------------------------------

/// Dispatch an experiment by name. `steps_override`/`fock_override` come from
/// the command line and only apply to the integrating experiments; the
/// closed-form ones reject them rather than silently ignoring a knob.
pub fn run(
    experiment: &str,
    config: &mut Config,
    steps_override: Option<usize>,
    fock_override: Option<usize>,
) -> Result<RunOutput, Error> {
    let integrates = matches!(experiment, "fig4" | "fig5");
    if !integrates && (steps_override.is_some() || fock_override.is_some()) {
        return Err(Error::InvalidParam(format!(
            "experiment `{experiment}` is closed-form; --steps-per-cycle/--fock-cutoff do not apply"
        )));
    }
    if let Some(s) = steps_override {
        config.set("steps_per_cycle", s.to_string());
    }
    if let Some(n) = fock_override {
        config.set("n_max", n.to_string());
    }
    match experiment {
        "fig3" => run_fig3(config),
        "fig4" => run_fig4(config),
        "fig5" => run_fig5(config),
        "table1" => run_table1(config),
        "sweep" => run_sweep(config),
        "calibrate" => run_calibrate(config),
        other => Err(Error::InvalidParam(format!(
            "unknown experiment `{other}` (expected one of {})",
            EXPERIMENTS.join(", ")
        ))),
    }
}
