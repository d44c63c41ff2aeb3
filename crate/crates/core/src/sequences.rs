//! Robustness constructions compiled down to [`PulseSchedule`]s and
//! instantaneous qubit kicks: cos²-shaped envelopes, the two-pulse sign-flip
//! scheme, and spin-echo composites.
//!
//! The sign-flip scheme exploits that two equal pulses whose spin-dependent
//! force has opposite sign displace the motional state by opposite amounts,
//! so the displacement cancels for *any* pulse length while the geometric
//! phase doubles. Spin echoes instead conjugate the second half by qubit
//! π-pulses; choosing the rotation axes 90° apart on the two ions flips the
//! sign of the collective spin-flip residual (the S_x² + S_y² terms) while
//! leaving the σz⊗σz phase and the force direction unchanged, cancelling the
//! residual to first order.

use std::f64::consts::PI;

use crate::dynamics::{GateParams, GateType, Integrator, PulseSchedule, Segment, SegmentShape};
use crate::hilbert::{identity, kron, HilbertSpace};
use crate::{C64, CMat, Error, Result};

/// cos²-shaped envelope: rise over `ramp_cycles` trap periods, flat top at
/// `omega_max`, symmetric fall, `total_cycles` trap periods overall.
/// Ω(0) = Ω(T) = 0 and the profile is continuous.
pub fn shaped_envelope(
    omega_max: f64,
    total_cycles: f64,
    ramp_cycles: f64,
    nu: f64,
) -> Result<PulseSchedule> {
    if !(omega_max >= 0.0) || !(nu > 0.0) {
        return Err(Error::InvalidParam("envelope needs omega_max ≥ 0 and nu > 0".into()));
    }
    if !(ramp_cycles > 0.0) || 2.0 * ramp_cycles > total_cycles {
        return Err(Error::InvalidParam(format!(
            "ramps ({ramp_cycles} cycles each) must fit twice into {total_cycles} cycles"
        )));
    }
    let cycle = 2.0 * PI / nu;
    let ramp = ramp_cycles * cycle;
    let flat = (total_cycles - 2.0 * ramp_cycles) * cycle;
    let mut segments = vec![Segment {
        duration: ramp,
        shape: SegmentShape::RampUp,
        scale: 1.0,
        zeta_offset: 0.0,
        phi_offset: 0.0,
    }];
    if flat > 1e-12 * cycle {
        segments.push(Segment::flat(flat));
    }
    segments.push(Segment {
        duration: ramp,
        shape: SegmentShape::RampDown,
        scale: 1.0,
        zeta_offset: 0.0,
        phi_offset: 0.0,
    });
    Ok(PulseSchedule { omega_max, segments })
}

/// How the second pulse's coupling sign is flipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignFlip {
    /// Shift the beat phase ζ by π/2 (σz⊗σz gate) or π (σφ⊗σφ gate). The
    /// σz⊗σz coupling is second order in the drive and carries e^{−2iζ}, so
    /// a quarter period flips it; the σφ⊗σφ coupling is first order.
    ZetaShift,
    /// Negate the drive amplitude. For the first-order σφ⊗σφ coupling this
    /// is pointwise identical to the π beat-phase shift; the second-order
    /// σz⊗σz coupling is even in Ω and does not respond, so the σz⊗σz
    /// scheme must use [`SignFlip::ZetaShift`].
    OmegaNegation,
}

/// Concatenate `base` with a sign-flipped copy of itself. The base pulse
/// must start and end at zero amplitude (a shaped envelope), otherwise the
/// instantaneous sign reversal is unphysical.
pub fn two_pulse_sign_flip(
    base: &PulseSchedule,
    gate_type: GateType,
    mechanism: SignFlip,
) -> Result<PulseSchedule> {
    let total = base.total_duration();
    let edge_tol = 1e-9 * base.omega_max.max(1e-300);
    let (start, _, _) = base.envelope_at(0.0);
    let (end, _, _) = base.envelope_at(total);
    if base.omega_max > 0.0 && (start.abs() > edge_tol || end.abs() > edge_tol) {
        return Err(Error::InvalidParam(
            "two-pulse scheme needs a base pulse that starts and ends at zero amplitude".into(),
        ));
    }
    let mut segments = base.segments.clone();
    for seg in base.segments.iter() {
        let mut copy = *seg;
        match mechanism {
            SignFlip::ZetaShift => {
                copy.zeta_offset += match gate_type {
                    GateType::Zz => PI / 2.0,
                    GateType::Ms => PI,
                }
            }
            SignFlip::OmegaNegation => copy.scale = -copy.scale,
        }
        segments.push(copy);
    }
    Ok(PulseSchedule { omega_max: base.omega_max, segments })
}

/// Rotation axis of an instantaneous π-pulse on one ion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EchoAxis {
    X,
    Y,
}

/// π-pulse pair specification for a spin-echo composite. Differing axes
/// (x on ion 1, y on ion 2) flip the sign of the collective spin-flip
/// residual for the second gate half.
#[derive(Clone, Copy, Debug)]
pub struct EchoSpec {
    pub ion1: EchoAxis,
    pub ion2: EchoAxis,
}

fn pi_half_rotation(axis: EchoAxis) -> CMat {
    // exp(−i(π/2)σ_axis) = −iσ_axis; basis order (↓, ↑)
    let mut m = CMat::zeros((2, 2));
    match axis {
        EchoAxis::X => {
            m[[0, 1]] = C64::new(0.0, -1.0);
            m[[1, 0]] = C64::new(0.0, -1.0);
        }
        EchoAxis::Y => {
            // σ_y = [[0, i], [−i, 0]]
            m[[0, 1]] = C64::new(1.0, 0.0);
            m[[1, 0]] = C64::new(-1.0, 0.0);
        }
    }
    m
}

/// The simultaneous π-pulse pair exp(−i(π/2)σ_a)⊗exp(−i(π/2)σ_b) as a 4×4
/// qubit unitary.
pub fn pi_pulse_pair(spec: &EchoSpec) -> CMat {
    kron(&pi_half_rotation(spec.ion1), &pi_half_rotation(spec.ion2))
}

/// One element of a gate sequence: a driven pulse or an instantaneous qubit
/// unitary.
#[derive(Clone, Debug)]
pub enum SequenceStep {
    Pulse(PulseSchedule),
    Kick(CMat),
}

/// A pulse/kick sequence executed left to right on a common absolute time
/// axis (the beat phase δt + ζ never resets between pulses).
#[derive(Clone, Debug)]
pub struct GateSequence {
    pub steps: Vec<SequenceStep>,
}

/// Spin-echo composite for the σz⊗σz gate: [half gate, π-pulses, half gate,
/// π-pulses]. The trailing pair restores the populations exchanged by the
/// first one.
pub fn spin_echo_zz(gate_half: &PulseSchedule, echo: &EchoSpec) -> GateSequence {
    let kick = pi_pulse_pair(echo);
    GateSequence {
        steps: vec![
            SequenceStep::Pulse(gate_half.clone()),
            SequenceStep::Kick(kick.clone()),
            SequenceStep::Pulse(gate_half.clone()),
            SequenceStep::Kick(kick),
        ],
    }
}

/// Evolve `columns` through the sequence. Pulses are integrated on the
/// absolute time axis (pulse k starts where pulse k−1 ended); kicks act on
/// the qubits alone and take no time. Returns the final columns.
pub fn simulate_sequence(
    space: HilbertSpace,
    params: &GateParams,
    sequence: &GateSequence,
    steps_per_cycle: usize,
    lamb_dicke: bool,
    columns: &CMat,
) -> Result<CMat> {
    // one schedule spanning all pulses so any integrator sees the full
    // absolute-time envelope
    let mut segments = Vec::new();
    let mut omega_max: f64 = 0.0;
    for step in &sequence.steps {
        if let SequenceStep::Pulse(p) = step {
            if !segments.is_empty() && (p.omega_max - omega_max).abs() > 1e-12 * omega_max.abs() {
                return Err(Error::InvalidParam(
                    "sequence pulses must share one omega_max".into(),
                ));
            }
            omega_max = p.omega_max;
            segments.extend(p.segments.iter().cloned());
        }
    }
    let eye_motion = identity(space.motion_dim());
    let mut m = columns.clone();
    let mut t = 0.0;
    let integrator = if segments.is_empty() {
        None
    } else {
        Some(Integrator::new(
            space,
            params.clone(),
            PulseSchedule { omega_max, segments },
            steps_per_cycle,
            lamb_dicke,
        )?)
    };
    for step in &sequence.steps {
        match step {
            SequenceStep::Pulse(p) => {
                let t_end = t + p.total_duration();
                let integ = integrator.as_ref().expect("pulse implies an integrator");
                let out = integ.propagate_columns(&m, t, &[t_end], &[])?;
                m = out.into_iter().next().unwrap().into_iter().next().unwrap();
                t = t_end;
            }
            SequenceStep::Kick(k) => {
                if k.nrows() != space.qubit_dim() {
                    return Err(Error::Dimension(
                        "kick must be a qubit-sector unitary".into(),
                    ));
                }
                m = kron(k, &eye_motion).dot(&m);
            }
        }
    }
    Ok(m)
}
