//! Experiment runner around `twotone-core`: reads a flat key=value config,
//! runs one of the named experiments and writes a deterministic CSV dataset
//! plus a one-line summary on stdout.

pub mod config;
pub mod experiments;
pub mod output;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit code for a failed run: 2 for configuration/validation problems,
/// 3 when a numerical guard tripped (truncation leak, convergence failure).
pub fn exit_code(err: &twotone_core::Error) -> i32 {
    use twotone_core::Error::*;
    match err {
        InvalidParam(_) | Dimension(_) | Mode(_) => 2,
        Cutoff { .. } | NonPsd { .. } | NoConvergence { .. } | StepConvergence { .. } => 3,
    }
}
