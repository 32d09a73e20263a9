//! Dense complex linear algebra used as ground truth.
//!
//! Basis index `b` of a `2^n`-dimensional vector stores qubit 0 in its most
//! significant bit, matching the Kronecker-product order `P_0 ⊗ … ⊗ P_{n-1}`.
//! The Pauli bit words of [`PauliOperator`] use the opposite order (qubit `j`
//! at bit `j`), so masks are bit-reversed on the way in.

mod jacobi;
mod search;

pub use jacobi::{hermitian_eigenvalues, symmetric_eigen};
pub use search::{minimize_entropy_sum, SearchConfig, SearchResult, SearchTarget};

use num_complex::Complex64;

use crate::entropy::ProbabilityDistribution;
use crate::error::{Error, Result};
use crate::graphstate::Graph;
use crate::pauli::PauliOperator;
use crate::stabgroup::{BasisLabel, StabilizerGroup};

/// Qubit limit for state vectors.
pub const MAX_VECTOR_QUBITS: usize = 10;
/// Qubit limit for density matrices.
pub const MAX_MATRIX_QUBITS: usize = 8;

const NORM_TOLERANCE: f64 = 1e-12;
const PSD_TOLERANCE: f64 = 1e-10;
const ORTHONORMAL_TOLERANCE: f64 = 1e-10;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Domain(
                "matrix rows must all have length equal to the row count".into(),
            ));
        }
        Ok(CMatrix {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        let d = self.dim;
        let mut out = CMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &CMatrix, scale: Complex64) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += scale * b;
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.dim)
            .all(|i| (0..self.dim).all(|j| (self[(i, j)] - self[(j, i)].conj()).norm() <= tol))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|a| a.norm() <= tol)
    }

    /// Outer product `|v⟩⟨v|`.
    pub fn projector(v: &[Complex64]) -> CMatrix {
        let d = v.len();
        let mut m = CMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m.data[i * d + j] = v[i] * v[j].conj();
            }
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// A pure or mixed state on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub enum DenseState {
    Pure(Vec<Complex64>),
    Mixed(CMatrix),
}

fn qubits_of(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::Domain(format!(
            "dimension {dim} is not 2^n with n ≥ 1"
        )));
    }
    Ok(dim.trailing_zeros() as usize)
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::ResourceLimit(format!(
            "{n} qubits exceeds oracle limit {limit}"
        )));
    }
    Ok(())
}

pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum()
}

impl DenseState {
    /// Validates a unit vector.
    pub fn pure(v: Vec<Complex64>) -> Result<Self> {
        let n = qubits_of(v.len())?;
        check_limit(n, MAX_VECTOR_QUBITS)?;
        let norm = norm_sqr(&v).sqrt();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Domain(format!("state norm {norm} differs from 1")));
        }
        Ok(DenseState::Pure(v))
    }

    /// Normalizes `v` first; errors on a zero vector.
    pub fn pure_normalized(mut v: Vec<Complex64>) -> Result<Self> {
        let norm = norm_sqr(&v).sqrt();
        if norm == 0.0 {
            return Err(Error::Domain("zero vector".into()));
        }
        v.iter_mut().for_each(|a| *a /= norm);
        Self::pure(v)
    }

    /// Validates a density matrix: Hermitian, unit trace, PSD.
    pub fn mixed(m: CMatrix) -> Result<Self> {
        let n = qubits_of(m.dim())?;
        check_limit(n, MAX_MATRIX_QUBITS)?;
        if !m.is_hermitian(NORM_TOLERANCE) {
            return Err(Error::Domain("density matrix is not Hermitian".into()));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > NORM_TOLERANCE || tr.im.abs() > NORM_TOLERANCE {
            return Err(Error::Domain(format!("density matrix trace {tr}")));
        }
        let min = hermitian_eigenvalues(&m)?[0];
        if min < -PSD_TOLERANCE {
            return Err(Error::Domain(format!(
                "density matrix has eigenvalue {min}"
            )));
        }
        Ok(DenseState::Mixed(m))
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        check_limit(n, MAX_MATRIX_QUBITS)?;
        let d = 1usize << n;
        let mut m = CMatrix::identity(d);
        m.data.iter_mut().for_each(|a| *a /= d as f64);
        Ok(DenseState::Mixed(m))
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_limit(n, MAX_VECTOR_QUBITS)?;
        let mut v = vec![Complex64::new(0.0, 0.0); 1 << n];
        *v.get_mut(index)
            .ok_or_else(|| Error::Domain(format!("basis index {index} out of range")))? =
            Complex64::new(1.0, 0.0);
        Ok(DenseState::Pure(v))
    }

    pub fn dim(&self) -> usize {
        match self {
            DenseState::Pure(v) => v.len(),
            DenseState::Mixed(m) => m.dim(),
        }
    }

    pub fn n(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn vector(&self) -> Option<&[Complex64]> {
        match self {
            DenseState::Pure(v) => Some(v),
            DenseState::Mixed(_) => None,
        }
    }

    pub fn density_matrix(&self) -> CMatrix {
        match self {
            DenseState::Pure(v) => CMatrix::projector(v),
            DenseState::Mixed(m) => m.clone(),
        }
    }

    /// `⟨φ|ρ|φ⟩` for a unit vector `φ`.
    pub fn probability_of(&self, phi: &[Complex64]) -> f64 {
        match self {
            DenseState::Pure(v) => inner(phi, v).norm_sqr(),
            DenseState::Mixed(m) => inner(phi, &m.apply(phi)).re,
        }
    }

    /// `|⟨φ|ψ⟩|` between two pure states; insensitive to global phase.
    pub fn fidelity_amplitude(&self, other: &DenseState) -> Option<f64> {
        Some(inner(self.vector()?, other.vector()?).norm())
    }
}

/// Reverses the low `n` bits: Pauli bit order to basis-index order.
pub fn qubit_mask_to_index(mask: u64, n: usize) -> usize {
    (mask.reverse_bits() >> (64 - n)) as usize
}

fn phase_unit(k: u8) -> Complex64 {
    match k & 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `P|b⟩ = i^phase (-1)^{z·b} |b ⊕ x⟩`, as `(target index, coefficient)`.
fn pauli_column(p: &PauliOperator, xm: usize, zm: usize, b: usize) -> (usize, Complex64) {
    let sign = if (zm & b).count_ones() % 2 == 1 { 2 } else { 0 };
    (b ^ xm, phase_unit(p.phase() + sign))
}

/// Kronecker-product matrix of `p`.
pub fn dense_pauli(p: &PauliOperator) -> Result<CMatrix> {
    let n = p.n();
    check_limit(n, MAX_VECTOR_QUBITS)?;
    let (xm, zm) = (qubit_mask_to_index(p.x(), n), qubit_mask_to_index(p.z(), n));
    let d = 1usize << n;
    let mut m = CMatrix::zeros(d);
    for b in 0..d {
        let (row, c) = pauli_column(p, xm, zm, b);
        m[(row, b)] = c;
    }
    Ok(m)
}

/// `P|ψ⟩` without forming the matrix.
pub fn apply_pauli(p: &PauliOperator, v: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = p.n();
    if v.len() != 1 << n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: qubits_of(v.len())?,
        });
    }
    let (xm, zm) = (qubit_mask_to_index(p.x(), n), qubit_mask_to_index(p.z(), n));
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for (b, &a) in v.iter().enumerate() {
        let (row, c) = pauli_column(p, xm, zm, b);
        out[row] = c * a;
    }
    Ok(out)
}

/// `tr(P ρ)` for a Hermitian Pauli.
pub fn pauli_expectation(p: &PauliOperator, state: &DenseState) -> Result<f64> {
    if !p.is_hermitian() {
        return Err(Error::NotHermitian(p.to_string()));
    }
    if state.dim() != 1 << p.n() {
        return Err(Error::DimensionMismatch {
            left: p.n(),
            right: state.n(),
        });
    }
    Ok(match state {
        DenseState::Pure(v) => inner(v, &apply_pauli(p, v)?).re,
        DenseState::Mixed(m) => {
            let n = p.n();
            let (xm, zm) = (qubit_mask_to_index(p.x(), n), qubit_mask_to_index(p.z(), n));
            (0..m.dim())
                .map(|c| {
                    let (row, coef) = pauli_column(p, xm, zm, c);
                    coef * m[(c, row)]
                })
                .sum::<Complex64>()
                .re
        }
    })
}

/// The stabilizer state of `g` from the projector `2^{-n} Σ_k g_k`.
///
/// The projector is applied to the computational basis vector with the largest
/// diagonal weight. The result is checked to be a `+1` eigenvector of every
/// generator and the projector to have unit trace (so rank one).
pub fn stabilizer_state_dense(g: &StabilizerGroup) -> Result<DenseState> {
    let n = g.n();
    check_limit(n, MAX_VECTOR_QUBITS)?;
    let d = 1usize << n;
    let elements = g.enumerate_elements()?;
    let scale = 1.0 / d as f64;

    // Diagonal of the projector: only elements without X part contribute.
    let mut diag = vec![0.0f64; d];
    for e in elements.iter().filter(|e| e.x() == 0) {
        let zm = qubit_mask_to_index(e.z(), n);
        let unit = phase_unit(e.phase());
        if unit.im != 0.0 {
            return Err(Error::Internal(format!("diagonal element {e} is not real")));
        }
        for (k, w) in diag.iter_mut().enumerate() {
            let s = if (zm & k).count_ones() % 2 == 1 {
                -unit.re
            } else {
                unit.re
            };
            *w += s * scale;
        }
    }
    let trace: f64 = diag.iter().sum();
    if (trace - 1.0).abs() > PSD_TOLERANCE {
        return Err(Error::Internal(format!(
            "projector trace {trace} (rank ≠ 1)"
        )));
    }
    let (k, &weight) = diag
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty");

    let mut psi = vec![Complex64::new(0.0, 0.0); d];
    for e in &elements {
        let (xm, zm) = (qubit_mask_to_index(e.x(), n), qubit_mask_to_index(e.z(), n));
        let (row, c) = pauli_column(e, xm, zm, k);
        psi[row] += c * scale;
    }
    let norm = weight.sqrt();
    psi.iter_mut().for_each(|a| *a /= norm);

    for gen in g.generators() {
        let moved = apply_pauli(gen, &psi)?;
        let err: f64 = moved
            .iter()
            .zip(&psi)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if err > PSD_TOLERANCE {
            return Err(Error::Internal(format!(
                "generator {gen} does not stabilize the state"
            )));
        }
    }
    DenseState::pure(psi)
}

/// All `2^n` basis states of `g`, ordered by label.
pub fn stabilizer_basis_dense(g: &StabilizerGroup) -> Result<Vec<DenseState>> {
    BasisLabel::all(g.n())
        .map(|l| stabilizer_state_dense(&g.basis_state_group(l)))
        .collect()
}

/// `|+⟩^{⊗n}` followed by `diag(1,1,1,-1)` on every edge.
pub fn graph_state_dense(g: &Graph) -> Result<DenseState> {
    let n = g.n();
    check_limit(n, MAX_VECTOR_QUBITS)?;
    let d = 1usize << n;
    let amp = (d as f64).sqrt().recip();
    let mut v = vec![Complex64::new(amp, 0.0); d];
    for (i, j) in g.edges() {
        let both = (1usize << (n - 1 - i)) | (1usize << (n - 1 - j));
        for (b, a) in v.iter_mut().enumerate() {
            if b & both == both {
                *a = -*a;
            }
        }
    }
    DenseState::pure(v)
}

/// Checks that `basis` is a complete orthonormal set of pure states.
pub fn check_orthonormal_basis(basis: &[DenseState]) -> Result<()> {
    let dim = basis
        .first()
        .map(|s| s.dim())
        .ok_or_else(|| Error::NotOrthonormal("empty basis".into()))?;
    if basis.len() != dim {
        return Err(Error::NotOrthonormal(format!(
            "{} vectors in dimension {dim}",
            basis.len()
        )));
    }
    let vecs: Vec<&[Complex64]> = basis
        .iter()
        .map(|s| {
            s.vector()
                .ok_or_else(|| Error::NotOrthonormal("basis element is mixed".into()))
        })
        .collect::<Result<_>>()?;
    if vecs.iter().any(|v| v.len() != dim) {
        return Err(Error::NotOrthonormal("inconsistent dimensions".into()));
    }
    for i in 0..dim {
        for j in i..dim {
            let g = inner(vecs[i], vecs[j]);
            let want = if i == j { 1.0 } else { 0.0 };
            if (g - Complex64::new(want, 0.0)).norm() > ORTHONORMAL_TOLERANCE {
                return Err(Error::NotOrthonormal(format!("⟨{i}|{j}⟩ = {g}")));
            }
        }
    }
    Ok(())
}

/// Outcome distribution `p_i = ⟨a_i|ρ|a_i⟩` of measuring in `basis`.
pub fn measure_distribution(
    basis: &[DenseState],
    state: &DenseState,
) -> Result<ProbabilityDistribution> {
    check_orthonormal_basis(basis)?;
    if basis[0].dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            left: basis[0].n(),
            right: state.n(),
        });
    }
    let probs = basis
        .iter()
        .map(|a| state.probability_of(a.vector().expect("checked pure")))
        .collect();
    ProbabilityDistribution::new(probs)
}
