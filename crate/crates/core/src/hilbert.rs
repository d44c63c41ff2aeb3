//! Dense complex-matrix toolkit for the (qubits ⊗ oscillator) Hilbert space.
//!
//! Basis conventions, fixed once and for all:
//! - per ion, |↓⟩ ↦ index 0 and |↑⟩ ↦ index 1, so σ_z = diag(−1, +1);
//! - the full basis is ordered (ion 1 ⊗ … ⊗ ion m ⊗ oscillator), i.e. qubit
//!   indices are the slow ones and the Fock index n = 0..n_max is the fast one;
//! - for two ions the qubit order is (↓↓, ↓↑, ↑↓, ↑↑).
//!
//! With these choices σ₊ = |↑⟩⟨↓| = (σ_x + iσ_y)/2 requires
//! σ_y = [[0, i], [−i, 0]], which is the usual Pauli matrix written in the
//! (↓, ↑) ordering. All Lie-algebra relations ([S_x, S_y] = 2i S_z etc., with
//! the Pauli normalization, not spin-1/2) follow.

use ndarray as nd;
use ndarray_linalg::{Eigh, UPLO};

use crate::{C64, CMat, CVec, Error, Result};

/// Eigendecomposition of a Hermitian matrix with the eigenvectors of `h`
/// in the *columns* of the returned matrix: h = V · diag(vals) · V†.
///
/// LAPACK reads the array in Fortran layout, so a row-major complex array is
/// implicitly transposed — i.e. conjugated, for Hermitian input — and the raw
/// `eigh` output diagonalizes h̄ instead of h. We pin the layout to row-major
/// and conjugate the eigenvector matrix to undo that.
pub fn eigh_cols(h: &CMat) -> Result<(nd::Array1<f64>, CMat)> {
    let hc = h.as_standard_layout();
    let (vals, vecs) = hc
        .eigh(UPLO::Lower)
        .map_err(|e| Error::InvalidParam(format!("eigh failed: {e}")))?;
    Ok((vals, vecs.mapv(|z| z.conj())))
}

/// Tolerance below which a constructed-as-Hermitian matrix must match its adjoint.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Tolerance on max|U†U − I| for constructed-as-unitary matrices.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Eigenvalues in (−PSD_CLAMP, 0) are treated as numerical noise and clamped to 0.
pub const PSD_CLAMP: f64 = 1e-8;
/// Maximum tolerated thermal-population tail mass beyond the Fock cutoff.
pub const THERMAL_TAIL_LIMIT: f64 = 1e-6;

/// Which tensor factor(s) an operator or state lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    Qubits,
    Motion,
    Full,
}

/// m two-level ions sharing one truncated oscillator mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HilbertSpace {
    num_ions: usize,
    fock_cutoff: usize,
}

impl HilbertSpace {
    /// `fock_cutoff` is the highest retained number state, so the motional
    /// dimension is `fock_cutoff + 1`.
    pub fn new(num_ions: usize, fock_cutoff: usize) -> Result<Self> {
        if num_ions == 0 {
            return Err(Error::InvalidParam("need at least one ion".into()));
        }
        if fock_cutoff == 0 {
            return Err(Error::InvalidParam("fock_cutoff must be ≥ 1".into()));
        }
        Ok(Self { num_ions, fock_cutoff })
    }

    pub fn num_ions(&self) -> usize {
        self.num_ions
    }

    pub fn fock_cutoff(&self) -> usize {
        self.fock_cutoff
    }

    pub fn qubit_dim(&self) -> usize {
        1 << self.num_ions
    }

    pub fn motion_dim(&self) -> usize {
        self.fock_cutoff + 1
    }

    pub fn dim(&self) -> usize {
        self.qubit_dim() * self.motion_dim()
    }

    pub fn sector_dim(&self, sector: Sector) -> usize {
        match sector {
            Sector::Qubits => self.qubit_dim(),
            Sector::Motion => self.motion_dim(),
            Sector::Full => self.dim(),
        }
    }

    /// Full-space index of |qubit state q, Fock n⟩.
    pub fn index(&self, qubit: usize, n: usize) -> usize {
        debug_assert!(qubit < self.qubit_dim() && n <= self.fock_cutoff);
        qubit * self.motion_dim() + n
    }

    /// Basis ket |qubit state q, Fock n⟩ on the full space.
    pub fn basis_ket(&self, qubit: usize, n: usize) -> StateVector {
        let mut amps = CVec::zeros(self.dim());
        amps[self.index(qubit, n)] = C64::new(1.0, 0.0);
        StateVector { space: *self, sector: Sector::Full, amplitudes: amps }
    }
}

/// Dense operator tagged with the space and tensor factor it acts on.
#[derive(Clone, Debug)]
pub struct Operator {
    pub space: HilbertSpace,
    pub sector: Sector,
    pub matrix: CMat,
}

impl Operator {
    pub fn new(space: HilbertSpace, sector: Sector, matrix: CMat) -> Result<Self> {
        let d = space.sector_dim(sector);
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::Dimension(format!(
                "operator is {}×{}, sector dimension is {d}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { space, sector, matrix })
    }

    /// Like [`Operator::new`] but asserts Hermiticity to `HERMITICITY_TOL`.
    pub fn hermitian(space: HilbertSpace, sector: Sector, matrix: CMat) -> Result<Self> {
        let dev = max_nonhermiticity(&matrix);
        if dev > HERMITICITY_TOL {
            return Err(Error::InvalidParam(format!(
                "matrix constructed as Hermitian deviates from its adjoint by {dev:.3e}"
            )));
        }
        Self::new(space, sector, matrix)
    }

    /// Like [`Operator::new`] but asserts unitarity to `UNITARITY_TOL`.
    pub fn unitary(space: HilbertSpace, sector: Sector, matrix: CMat) -> Result<Self> {
        let dev = max_nonunitarity(&matrix);
        if dev > UNITARITY_TOL {
            return Err(Error::InvalidParam(format!(
                "matrix constructed as unitary deviates from U†U = I by {dev:.3e}"
            )));
        }
        Self::new(space, sector, matrix)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Tensor the operator up to the full space with identities on the other factor.
    pub fn embed(&self) -> Operator {
        let matrix = match self.sector {
            Sector::Full => self.matrix.clone(),
            Sector::Qubits => kron(&self.matrix, &identity(self.space.motion_dim())),
            Sector::Motion => kron(&identity(self.space.qubit_dim()), &self.matrix),
        };
        Operator { space: self.space, sector: Sector::Full, matrix }
    }

    pub fn dagger(&self) -> Operator {
        Operator { space: self.space, sector: self.sector, matrix: dagger(&self.matrix) }
    }

    /// U |ψ⟩. Errors if the sectors or dimensions differ.
    pub fn apply_state(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.sector != self.sector || psi.amplitudes.len() != self.dim() {
            return Err(Error::Dimension("operator and state live on different sectors".into()));
        }
        Ok(StateVector {
            space: psi.space,
            sector: psi.sector,
            amplitudes: self.matrix.dot(&psi.amplitudes),
        })
    }

    /// U ρ U†.
    pub fn apply_density(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.sector != self.sector || rho.matrix.nrows() != self.dim() {
            return Err(Error::Dimension("operator and density matrix sectors differ".into()));
        }
        let m = self.matrix.dot(&rho.matrix).dot(&dagger(&self.matrix));
        Ok(DensityMatrix { space: rho.space, sector: rho.sector, matrix: m, tail_mass: rho.tail_mass })
    }
}

/// Density matrix; `tail_mass` records population beyond the cutoff that was
/// discarded at construction (zero for exactly representable states).
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    pub space: HilbertSpace,
    pub sector: Sector,
    pub matrix: CMat,
    pub tail_mass: f64,
}

impl DensityMatrix {
    pub fn pure(psi: &StateVector) -> DensityMatrix {
        let n = psi.amplitudes.len();
        let mut m = CMat::zeros((n, n));
        for (i, a) in psi.amplitudes.iter().enumerate() {
            for (j, b) in psi.amplitudes.iter().enumerate() {
                m[[i, j]] = a * b.conj();
            }
        }
        DensityMatrix { space: psi.space, sector: psi.sector, matrix: m, tail_mass: 0.0 }
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diag().iter().map(|z| z.re).sum()
    }

    /// Checks Hermiticity (1e-12), unit trace (1e-8, after tail renormalization)
    /// and positivity down to the PSD clamp.
    pub fn validate(&self) -> Result<()> {
        let dev = max_nonhermiticity(&self.matrix);
        if dev > HERMITICITY_TOL {
            return Err(Error::InvalidParam(format!(
                "density matrix deviates from Hermitian by {dev:.3e}"
            )));
        }
        if (self.trace() - 1.0).abs() > 1e-8 {
            return Err(Error::InvalidParam(format!("density matrix trace {} ≠ 1", self.trace())));
        }
        let (vals, _) = eigh_cols(&self.matrix)?;
        let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -1e-10 {
            return Err(Error::NonPsd { min_eig: min, clamp: 1e-10 });
        }
        Ok(())
    }
}

/// Pure state amplitudes, kept normalized to 1e-10.
#[derive(Clone, Debug)]
pub struct StateVector {
    pub space: HilbertSpace,
    pub sector: Sector,
    pub amplitudes: CVec,
}

impl StateVector {
    pub fn new(space: HilbertSpace, sector: Sector, amplitudes: CVec) -> Result<Self> {
        if amplitudes.len() != space.sector_dim(sector) {
            return Err(Error::Dimension(format!(
                "state has {} amplitudes, sector dimension is {}",
                amplitudes.len(),
                space.sector_dim(sector)
            )));
        }
        let psi = Self { space, sector, amplitudes };
        let n = psi.norm();
        if (n - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidParam(format!("state norm {n} deviates from 1")));
        }
        Ok(psi)
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

// ---------------------------------------------------------------------------
// matrix helpers

pub fn identity(n: usize) -> CMat {
    CMat::eye(n)
}

pub fn dagger(m: &CMat) -> CMat {
    m.t().mapv(|z| z.conj())
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    let mut out = CMat::zeros((ra * rb, ca * cb));
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[[i, j]];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            let mut block = out.slice_mut(nd::s![i * rb..(i + 1) * rb, j * cb..(j + 1) * cb]);
            block.assign(&b.mapv(|z| z * aij));
        }
    }
    out
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    debug_assert_eq!(a.dim(), b.dim());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_nonhermiticity(m: &CMat) -> f64 {
    max_abs_diff(m, &dagger(m))
}

/// max|U†U − I|.
pub fn max_nonunitarity(u: &CMat) -> f64 {
    let p = dagger(u).dot(u);
    let mut dev: f64 = 0.0;
    for i in 0..p.nrows() {
        for j in 0..p.ncols() {
            let target = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
            dev = dev.max((p[[i, j]] - target).norm());
        }
    }
    dev
}

/// exp(i·s·H) for Hermitian H, by eigendecomposition. Unitary by construction.
pub fn hermitian_expm(h: &CMat, s: f64) -> CMat {
    let (vals, vecs) = eigh_cols(h).expect("eigh of Hermitian matrix");
    let phases: CVec = vals.mapv(|v| C64::from_polar(1.0, s * v));
    scaled_columns_product(&vecs, &phases)
}

/// V · diag(d) · V† without forming the diagonal matrix.
pub fn scaled_columns_product(v: &CMat, d: &CVec) -> CMat {
    let mut scaled = v.clone();
    for (mut col, &dk) in scaled.columns_mut().into_iter().zip(d.iter()) {
        col.mapv_inplace(|z| z * dk);
    }
    scaled.dot(&dagger(v))
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in (−PSD_CLAMP, 0) clamp to zero; below that is an error.
pub fn matrix_sqrt_psd(m: &CMat) -> Result<CMat> {
    let (vals, vecs) = eigh_cols(m)?;
    let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    if min < -PSD_CLAMP {
        return Err(Error::NonPsd { min_eig: min, clamp: PSD_CLAMP });
    }
    let roots: CVec = vals.mapv(|v| C64::new(v.max(0.0).sqrt(), 0.0));
    Ok(scaled_columns_product(&vecs, &roots))
}

// ---------------------------------------------------------------------------
// oscillator operators

/// Truncated ladder operators: a|n⟩ = √n |n−1⟩, a† its adjoint, n = a†a.
pub fn fock_ops(space: HilbertSpace) -> (Operator, Operator, Operator) {
    let d = space.motion_dim();
    let mut a = CMat::zeros((d, d));
    for n in 1..d {
        a[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
    }
    let adag = dagger(&a);
    let num = adag.dot(&a);
    let mk = |m| Operator { space, sector: Sector::Motion, matrix: m };
    (mk(a), mk(adag), mk(num))
}

/// Displacement operator D(α) = exp(αa† − α*a) on the motional factor,
/// computed as the exponential of the (anti-Hermitian) generator so the
/// result is unitary by construction. Errors if a column norm drifts from 1
/// beyond 1e-6 (displacement leaking past the truncation).
pub fn displacement(space: HilbertSpace, alpha: C64) -> Result<Operator> {
    let d = space.motion_dim();
    let mut gen = CMat::zeros((d, d));
    for n in 1..d {
        let root = (n as f64).sqrt();
        gen[[n, n - 1]] = alpha * root; // α a†
        gen[[n - 1, n]] = -alpha.conj() * root; // −α* a
    }
    // exp(gen) = exp(i·(−i·gen)) with −i·gen Hermitian
    let h = gen.mapv(|z| z * C64::new(0.0, -1.0));
    let dmat = hermitian_expm(&h, 1.0);
    for col in dmat.columns() {
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-6 {
            return Err(Error::Cutoff {
                context: "displacement operator",
                leak: (norm - 1.0).abs(),
                limit: 1e-6,
            });
        }
    }
    Operator::unitary(space, Sector::Motion, dmat)
}

/// Geometric thermal state with mean phonon number n̄, diagonal in the number
/// basis, renormalized after truncation. Errors if the discarded tail mass
/// exceeds `THERMAL_TAIL_LIMIT`.
pub fn thermal_state(space: HilbertSpace, n_bar: f64) -> Result<DensityMatrix> {
    if n_bar < 0.0 {
        return Err(Error::InvalidParam("mean phonon number must be ≥ 0".into()));
    }
    let d = space.motion_dim();
    let ratio = n_bar / (n_bar + 1.0);
    let tail = ratio.powi(d as i32);
    if tail > THERMAL_TAIL_LIMIT {
        return Err(Error::Cutoff {
            context: "thermal state tail",
            leak: tail,
            limit: THERMAL_TAIL_LIMIT,
        });
    }
    let mut m = CMat::zeros((d, d));
    let norm = 1.0 - tail; // retained mass of the geometric distribution
    for n in 0..d {
        let p = ratio.powi(n as i32) / (n_bar + 1.0);
        m[[n, n]] = C64::new(p / norm, 0.0);
    }
    Ok(DensityMatrix { space, sector: Sector::Motion, matrix: m, tail_mass: tail })
}

// ---------------------------------------------------------------------------
// spin operators

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinKind {
    X,
    Y,
    Z,
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RotAxis {
    Y,
    Z,
}

fn pauli(kind: SpinKind, phase: f64) -> CMat {
    let i = C64::new(0.0, 1.0);
    let e = C64::from_polar(1.0, phase);
    match kind {
        // σ_x^{(φ)} = σ_x cosφ + σ_y sinφ = e^{−iφ}σ₊ + e^{iφ}σ₋
        SpinKind::X => nd::array![
            [C64::new(0.0, 0.0), e],
            [e.conj(), C64::new(0.0, 0.0)]
        ],
        // σ_y^{(φ)} = σ_y cosφ − σ_x sinφ
        SpinKind::Y => nd::array![
            [C64::new(0.0, 0.0), i * e],
            [-i * e.conj(), C64::new(0.0, 0.0)]
        ],
        SpinKind::Z => nd::array![
            [C64::new(-1.0, 0.0), C64::new(0.0, 0.0)],
            [C64::new(0.0, 0.0), C64::new(1.0, 0.0)]
        ],
        // σ₊ = |↑⟩⟨↓|, rotated as e^{−iφ}σ₊
        SpinKind::Plus => nd::array![
            [C64::new(0.0, 0.0), C64::new(0.0, 0.0)],
            [e.conj(), C64::new(0.0, 0.0)]
        ],
        SpinKind::Minus => nd::array![
            [C64::new(0.0, 0.0), e],
            [C64::new(0.0, 0.0), C64::new(0.0, 0.0)]
        ],
    }
}

/// Collective spin operator S = Σ_i σ^{(i)} on the qubit factor, with the
/// optical-phase rotation S_x^{(φ)} = S_x cosφ + S_y sinφ (and the matching
/// rotations of the other kinds; φ is ignored for Z).
pub fn collective_spin(space: HilbertSpace, kind: SpinKind, phase: f64) -> Operator {
    let m = space.num_ions();
    let single = pauli(kind, phase);
    let mut total = CMat::zeros((space.qubit_dim(), space.qubit_dim()));
    for ion in 0..m {
        let mut term = identity(1);
        for k in 0..m {
            let factor = if k == ion { single.clone() } else { identity(2) };
            term = kron(&term, &factor);
        }
        total += &term;
    }
    Operator { space, sector: Sector::Qubits, matrix: total }
}

/// The drive-rotated spin operators of the effective models:
/// S_{y,ψ} = S_y cosψ + S_z sinψ and S_{z,ψ} = S_z cosψ − S_y sinψ.
pub fn rotated_spin(space: HilbertSpace, axis: RotAxis, psi: f64) -> Operator {
    let sy = collective_spin(space, SpinKind::Y, 0.0).matrix;
    let sz = collective_spin(space, SpinKind::Z, 0.0).matrix;
    let (c, s) = (psi.cos(), psi.sin());
    let matrix = match axis {
        RotAxis::Y => sy.mapv(|z| z * c) + sz.mapv(|z| z * s),
        RotAxis::Z => sz.mapv(|z| z * c) - sy.mapv(|z| z * s),
    };
    Operator { space, sector: Sector::Qubits, matrix }
}

// ---------------------------------------------------------------------------
// reductions

/// Trace out the motional factor of a full-space density matrix.
pub fn partial_trace_motion(rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.sector != Sector::Full {
        return Err(Error::Dimension("partial trace needs a full-space density matrix".into()));
    }
    let space = rho.space;
    let (q, f) = (space.qubit_dim(), space.motion_dim());
    let mut out = CMat::zeros((q, q));
    for p in 0..q {
        for r in 0..q {
            let mut acc = C64::new(0.0, 0.0);
            for n in 0..f {
                acc += rho.matrix[[p * f + n, r * f + n]];
            }
            out[[p, r]] = acc;
        }
    }
    Ok(DensityMatrix { space, sector: Sector::Qubits, matrix: out, tail_mass: rho.tail_mass })
}

/// Reduced qubit density matrix of a full-space pure state.
pub fn reduce_state_to_qubits(psi: &StateVector) -> Result<DensityMatrix> {
    if psi.sector != Sector::Full {
        return Err(Error::Dimension("expected a full-space state".into()));
    }
    let space = psi.space;
    let (q, f) = (space.qubit_dim(), space.motion_dim());
    let mut out = CMat::zeros((q, q));
    for p in 0..q {
        for r in 0..q {
            let mut acc = C64::new(0.0, 0.0);
            for n in 0..f {
                acc += psi.amplitudes[p * f + n] * psi.amplitudes[r * f + n].conj();
            }
            out[[p, r]] = acc;
        }
    }
    Ok(DensityMatrix { space, sector: Sector::Qubits, matrix: out, tail_mass: 0.0 })
}
