//! Simulator and analytic models for entangling gates on trapped-ion qubits
//! driven by a bichromatic (amplitude-modulated) laser field.
//!
//! The crate is organized around a single centre-of-mass motional mode shared
//! by `m` ions. Units are fixed by ħ = 1 and the trap frequency ν = 1; all
//! rates and frequencies are dimensionless multiples of ν, all times are in
//! units of 1/ν (so one trap cycle lasts 2π).
//!
//! Modules:
//! - [`hilbert`]: dense operators on the (qubits ⊗ oscillator) Hilbert space —
//!   ladder/spin/displacement operators, thermal states, partial traces,
//!   Hermitian exponentials.
//! - [`dynamics`]: the time-dependent two-tone Hamiltonian and a unitary
//!   midpoint-exponential integrator.
//! - [`effective`]: closed-form effective couplings (Bessel-saturated), gate
//!   calibration, effective propagators and thermal-state expectation values.
//! - [`analysis`]: gate scoring — state fidelity, channel extraction with the
//!   ground-state-cooling convention, Choi matrices, process distance.
//! - [`sequences`]: shaped envelopes, two-pulse sign-flip composites and
//!   spin-echo sequences.

use thiserror::Error;

pub mod analysis;
pub mod dynamics;
pub mod effective;
pub mod hilbert;
pub mod sequences;

pub use num_complex::Complex64 as C64;

/// Crate version, recorded in dataset provenance headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Dense complex matrix, the working representation for every operator.
pub type CMat = ndarray::Array2<C64>;
/// Dense complex vector (state amplitudes).
pub type CVec = ndarray::Array1<C64>;

#[derive(Debug, Error)]
pub enum Error {
    /// State amplitude leaked past the Fock-space truncation.
    #[error("Fock cutoff exceeded in {context}: {leak:.3e} above limit {limit:.1e}")]
    Cutoff {
        context: &'static str,
        leak: f64,
        limit: f64,
    },
    /// A matrix that must be positive semidefinite has a clearly negative eigenvalue.
    #[error("matrix not positive semidefinite: eigenvalue {min_eig:.3e} below -{clamp:.1e}")]
    NonPsd { min_eig: f64, clamp: f64 },
    /// Parameters do not satisfy the detuning relation of the requested gate type.
    #[error("gate mode mismatch: {0}")]
    Mode(String),
    /// Iterative solver ran out of iterations.
    #[error("no convergence after {iters} iterations (residual {residual:.3e})")]
    NoConvergence { iters: usize, residual: f64 },
    /// Step-halving self-check failed.
    #[error("integrator not converged: step halving moved a matrix element by {change:.3e} (tolerance {tol:.1e})")]
    StepConvergence { change: f64, tol: f64 },
    /// Operands live on different Hilbert spaces.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// A parameter or schedule fails validation.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

pub type Result<T> = std::result::Result<T, Error>;
