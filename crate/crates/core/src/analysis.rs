//! State and process comparison: fidelities, motional-trace channels and the
//! Jamiolkowski process distance used to score gate implementations.

use crate::hilbert::{
    dagger, kron, matrix_sqrt_psd, partial_trace_motion, DensityMatrix, HilbertSpace, Operator,
    Sector, StateVector,
};
use crate::{C64, CMat, CVec, Error, Result};

/// Uhlmann fidelity F(ρ,σ) = [tr √(√ρ σ √ρ)]², the squared-overlap
/// convention: for a pure σ = |ψ⟩⟨ψ| this is ⟨ψ|ρ|ψ⟩.
pub fn state_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.matrix.dim() != sigma.matrix.dim() {
        return Err(Error::Dimension("fidelity needs equal-dimension states".into()));
    }
    let root = matrix_sqrt_psd(&rho.matrix)?;
    let inner = root.dot(&sigma.matrix).dot(&root);
    let overlap: f64 = matrix_sqrt_psd(&inner)?.diag().iter().map(|z| z.re).sum();
    Ok((overlap.max(0.0)).powi(2))
}

/// A two-qubit channel represented by its Jamiolkowski (Choi) state
/// C = (1/4) Σ_{ij} |i⟩⟨j| ⊗ E(|i⟩⟨j|), input factor first, trace one.
#[derive(Clone, Debug)]
pub struct QuantumProcess {
    pub choi: CMat,
}

impl QuantumProcess {
    /// Apply the channel: E(ρ) = 4 · Tr_in[(ρᵀ ⊗ 1) C].
    pub fn apply(&self, rho: &CMat) -> CMat {
        let n = rho.nrows();
        let mut out = CMat::zeros((n, n));
        for mu in 0..n {
            for nu in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for i in 0..n {
                    for j in 0..n {
                        // (ρᵀ)_{ji} picks the |i⟩⟨j| input block
                        acc += rho[[i, j]] * self.choi[[i * n + mu, j * n + nu]];
                    }
                }
                out[[mu, nu]] = acc * C64::new(n as f64, 0.0);
            }
        }
        out
    }

    pub fn trace(&self) -> f64 {
        self.choi.diag().iter().map(|z| z.re).sum()
    }
}

/// Channel of a full-space unitary acting on qubits ⊗ (motional ground
/// state), with the motion traced out afterwards:
/// E(ρ) = Tr_m[U (ρ ⊗ |0⟩⟨0|) U†]. Only the four ground-Fock columns of U
/// enter.
pub fn channel_from_unitary(u: &Operator) -> Result<QuantumProcess> {
    if u.sector != Sector::Full {
        return Err(Error::Dimension("channel extraction needs a full-space unitary".into()));
    }
    let space = u.space;
    let mut cols = CMat::zeros((space.dim(), space.qubit_dim()));
    for i in 0..space.qubit_dim() {
        cols.column_mut(i).assign(&u.matrix.column(space.index(i, 0)));
    }
    channel_from_ground_columns(space, &cols)
}

/// Same channel, built from the evolved ground-Fock columns alone: column i
/// of `columns` must be U|i, 0⟩. This is what sequence and sweep drivers
/// produce without ever forming the full propagator.
pub fn channel_from_ground_columns(space: HilbertSpace, columns: &CMat) -> Result<QuantumProcess> {
    let (nq, nf) = (space.qubit_dim(), space.motion_dim());
    if columns.nrows() != space.dim() || columns.ncols() != nq {
        return Err(Error::Dimension(format!(
            "expected {} ground-Fock columns of length {}",
            nq,
            space.dim()
        )));
    }
    // B_i = U|i, 0⟩ reshaped to (qubit, Fock); E(|i⟩⟨j|) = B_i B_j†
    let mut b: Vec<CMat> = Vec::with_capacity(nq);
    for i in 0..nq {
        let col = columns.column(i);
        let mut bi = CMat::zeros((nq, nf));
        for p in 0..nq {
            for n in 0..nf {
                bi[[p, n]] = col[space.index(p, n)];
            }
        }
        b.push(bi);
    }
    let mut choi = CMat::zeros((nq * nq, nq * nq));
    for i in 0..nq {
        for j in 0..nq {
            let block = b[i].dot(&dagger(&b[j]));
            for p in 0..nq {
                for q in 0..nq {
                    choi[[i * nq + p, j * nq + q]] = block[[p, q]] / C64::new(nq as f64, 0.0);
                }
            }
        }
    }
    Ok(QuantumProcess { choi })
}

/// Channel of a unitary acting on the qubits alone.
pub fn channel_from_qubit_unitary(u: &CMat) -> QuantumProcess {
    let nq = u.nrows();
    let mut choi = CMat::zeros((nq * nq, nq * nq));
    for i in 0..nq {
        for j in 0..nq {
            for p in 0..nq {
                for q in 0..nq {
                    choi[[i * nq + p, j * nq + q]] =
                        u[[p, i]] * u[[q, j]].conj() / C64::new(nq as f64, 0.0);
                }
            }
        }
    }
    QuantumProcess { choi }
}

/// Jamiolkowski process distance d(E₁,E₂) = 1 − tr √(√C₁ C₂ √C₁): zero for
/// identical channels, one for channels with orthogonal Choi states. For two
/// unitary channels this reduces to 1 − |tr(U†V)|/4.
pub fn process_distance(a: &QuantumProcess, b: &QuantumProcess) -> Result<f64> {
    if a.choi.dim() != b.choi.dim() {
        return Err(Error::Dimension("process distance needs equal channel dimensions".into()));
    }
    let root = matrix_sqrt_psd(&a.choi)?;
    let inner = root.dot(&b.choi).dot(&root);
    let overlap: f64 = matrix_sqrt_psd(&inner)?.diag().iter().map(|z| z.re).sum();
    Ok((1.0 - overlap).clamp(0.0, 1.0))
}

/// Bell state (|↓↓⟩ − i|↑↑⟩)/√2, the image of |↓↓⟩ under exp(i(π/8)S_y²)
/// up to a global phase.
pub fn bell_dd_minus_i_uu(space: HilbertSpace) -> StateVector {
    let mut amps = CVec::zeros(space.qubit_dim());
    amps[0] = C64::new(1.0 / 2f64.sqrt(), 0.0);
    amps[space.qubit_dim() - 1] = C64::new(0.0, -1.0 / 2f64.sqrt());
    StateVector { space, sector: Sector::Qubits, amplitudes: amps }
}

/// Bell state (|↑↑⟩ − i|↓↓⟩)/√2, the image of |↑↑⟩ under exp(i(π/8)S_y²)
/// up to a global phase; orthogonal to [`bell_dd_minus_i_uu`].
pub fn bell_uu_minus_i_dd(space: HilbertSpace) -> StateVector {
    let mut amps = CVec::zeros(space.qubit_dim());
    amps[0] = C64::new(0.0, -1.0 / 2f64.sqrt());
    amps[space.qubit_dim() - 1] = C64::new(1.0 / 2f64.sqrt(), 0.0);
    StateVector { space, sector: Sector::Qubits, amplitudes: amps }
}

/// Overlap ⟨ψ|ρ_q|ψ⟩ of a full-space pure state, reduced over the motion,
/// with a qubit-sector target.
pub fn reduced_overlap(full: &StateVector, target: &StateVector) -> Result<f64> {
    let rho = crate::hilbert::reduce_state_to_qubits(full)?;
    expectation(&rho, target)
}

/// ⟨ψ|ρ|ψ⟩ for a qubit-sector density matrix.
pub fn expectation(rho: &DensityMatrix, psi: &StateVector) -> Result<f64> {
    if rho.matrix.nrows() != psi.amplitudes.len() {
        return Err(Error::Dimension("state and density matrix dimensions differ".into()));
    }
    let mut acc = C64::new(0.0, 0.0);
    for (i, a) in psi.amplitudes.iter().enumerate() {
        for (j, b) in psi.amplitudes.iter().enumerate() {
            acc += a.conj() * rho.matrix[[i, j]] * b;
        }
    }
    Ok(acc.re)
}

/// Population of the qubit basis state `q` after tracing out the motion of a
/// full-space density matrix.
pub fn qubit_population(rho: &DensityMatrix, q: usize) -> Result<f64> {
    let reduced = partial_trace_motion(rho)?;
    Ok(reduced.matrix[[q, q]].re)
}

/// exp(i(π/8)S²) for a supplied collective-spin component S (4×4): the ideal
/// maximally entangling gate this family of drives aims at.
pub fn ideal_entangling_gate(s: &CMat) -> CMat {
    crate::hilbert::hermitian_expm(&s.dot(s), std::f64::consts::PI / 8.0)
}

/// Convenience: the channel of a qubit unitary tensored from a full-space
/// propagator comparison — builds both channels and returns their distance.
pub fn distance_to_qubit_unitary(u_full: &Operator, target: &CMat) -> Result<f64> {
    let left = channel_from_unitary(u_full)?;
    let right = channel_from_qubit_unitary(target);
    process_distance(&left, &right)
}

/// Distance between the channels of two full-space propagators (both with
/// ground-state motional input).
pub fn distance_between_unitaries(a: &Operator, b: &Operator) -> Result<f64> {
    let left = channel_from_unitary(a)?;
    let right = channel_from_unitary(b)?;
    process_distance(&left, &right)
}

/// Motional-ground-state kron helper for tests and experiment drivers:
/// |ψ_q⟩ ⊗ |0⟩ on the full space.
pub fn with_cold_motion(space: HilbertSpace, qubit_amps: &CVec) -> Result<StateVector> {
    if qubit_amps.len() != space.qubit_dim() {
        return Err(Error::Dimension("qubit amplitude count mismatch".into()));
    }
    let mut amps = CVec::zeros(space.dim());
    for (q, a) in qubit_amps.iter().enumerate() {
        amps[space.index(q, 0)] = *a;
    }
    StateVector::new(space, Sector::Full, amps)
}

/// Kron a qubit density matrix with a motional one (used to assemble thermal
/// inputs for the exact propagator).
pub fn compose_qubit_motion(
    space: HilbertSpace,
    qubit: &DensityMatrix,
    motion: &DensityMatrix,
) -> Result<DensityMatrix> {
    if qubit.sector != Sector::Qubits || motion.sector != Sector::Motion {
        return Err(Error::Dimension("expected qubit ⊗ motion factors".into()));
    }
    Ok(DensityMatrix {
        space,
        sector: Sector::Full,
        matrix: kron(&qubit.matrix, &motion.matrix),
        tail_mass: motion.tail_mass,
    })
}
