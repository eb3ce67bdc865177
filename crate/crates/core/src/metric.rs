//! Entanglement distance and the entanglement metric.
//!
//! For local directions `v^ν` the restricted Fubini-Study metric is
//!
//! ```text
//! g_μν = ¼ (⟨(v^μ·σ^μ)(v^ν·σ^ν)⟩ − ⟨v^μ·σ^μ⟩⟨v^ν·σ^ν⟩),    g_μμ = ¼ (1 − ⟨v^μ·σ^μ⟩²)
//! ```
//!
//! Its trace depends on each direction only through `⟨v^ν·σ^ν⟩ = v^ν·b^ν`,
//! where `b^ν = (2 Re w₋, −2 Im w₋, w₃)` is built from the amplitude
//! bilinears
//!
//! ```text
//! w₋ = Σ_{k: n_ν=0} c*_{k+2^ν} c_k,   w₊ = Σ_{k: n_ν=1} c*_{k−2^ν} c_k,   w₃ = Σ_k (−1)^{n_ν} |c_k|²
//! ```
//!
//! so the trace is minimized qubit by qubit with `v^ν = b^ν/|b^ν|`, giving
//! `E = ¼ (M − Σ_ν |b^ν|²)`. Note `|b|² = w₃² + 4|w₋|²`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::SquareMatrix;
use crate::state::{Direction, StateVector};
use crate::sum::{CompensatedComplexSum, CompensatedSum};

/// Below this Bloch-vector length every direction minimizes the trace.
pub const DEGENERATE_TOL: f64 = 1e-12;

/// Default threshold for counting an eigenvalue as non-null.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Per-qubit amplitude bilinears `(w₋, w₊, w₃)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WVector {
    pub w_minus: Complex64,
    pub w_plus: Complex64,
    pub w_3: f64,
}

impl WVector {
    /// `(2 Re w₋, −2 Im w₋, w₃)`, the Bloch vector of the reduced qubit state.
    pub fn bloch(&self) -> [f64; 3] {
        [2.0 * self.w_minus.re, -2.0 * self.w_minus.im, self.w_3]
    }

    /// `w₃² + 4|w₋|²`.
    pub fn effective_norm_sqr(&self) -> f64 {
        self.w_3 * self.w_3 + 4.0 * self.w_minus.norm_sqr()
    }
}

/// Computes [`WVector`] for every qubit in `O(M · 2^M)`.
pub fn w_vectors(s: &StateVector) -> Vec<WVector> {
    let c = s.amplitudes();
    (0..s.num_qubits())
        .map(|qubit| {
            let bit = 1usize << qubit;
            let mut w_minus = CompensatedComplexSum::default();
            let mut w_plus = CompensatedComplexSum::default();
            let mut w_3 = CompensatedSum::default();
            for (k, &ck) in c.iter().enumerate() {
                if k & bit == 0 {
                    w_minus.add(c[k + bit].conj() * ck);
                    w_3.add(ck.norm_sqr());
                } else {
                    w_plus.add(c[k - bit].conj() * ck);
                    w_3.add(-ck.norm_sqr());
                }
            }
            let w = WVector { w_minus: w_minus.total(), w_plus: w_plus.total(), w_3: w_3.total() };
            debug_assert!((w.w_plus - w.w_minus.conj()).norm() < 1e-12);
            w
        })
        .collect()
}

/// Optimal direction for one qubit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocalMinimizer {
    pub direction: Direction,
    /// Set when the reduced state is maximally mixed and every direction is
    /// optimal; the direction is then `ẑ`.
    pub degenerate: bool,
}

/// Directions maximizing `(v·b^ν)²` per qubit, with the sign fixed so the
/// first component above rounding level is positive.
pub fn optimal_directions(w: &[WVector]) -> Vec<LocalMinimizer> {
    w.iter()
        .map(|w| {
            let b = w.bloch();
            let len = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
            match Direction::normalize(b) {
                Some(d) if len >= DEGENERATE_TOL => {
                    LocalMinimizer { direction: canonical_sign(d), degenerate: false }
                }
                _ => LocalMinimizer { direction: Direction::Z, degenerate: true },
            }
        })
        .collect()
}

fn canonical_sign(d: Direction) -> Direction {
    match d.components().into_iter().find(|x| x.abs() > DEGENERATE_TOL) {
        Some(x) if x < 0.0 => d.neg(),
        _ => d,
    }
}

/// `E(|s⟩) = ¼ Σ_ν (1 − |b^ν|²)`, in `[0, M/4]`.
pub fn entanglement_measure(s: &StateVector) -> f64 {
    measure_from_w(&w_vectors(s))
}

pub(crate) fn measure_from_w(w: &[WVector]) -> f64 {
    0.25 * w.iter().map(|w| (1.0 - w.effective_norm_sqr()).max(0.0)).sum::<f64>()
}

fn check_directions(s: &StateVector, dirs: &[Direction]) -> Result<()> {
    if dirs.len() != s.num_qubits() {
        return Err(Error::DirectionCount { expected: s.num_qubits(), got: dirs.len() });
    }
    Ok(())
}

/// The metric `g(v)` for an arbitrary direction field.
///
/// Off-diagonal entries cost one pass over the amplitudes per pair, so the
/// whole matrix is `O(M² · 2^M)` with two state-sized buffers.
pub fn metric_matrix(s: &StateVector, dirs: &[Direction]) -> Result<SquareMatrix> {
    check_directions(s, dirs)?;
    let m = s.num_qubits();
    let mut g = SquareMatrix::zeros(m);
    let mut expectations = Vec::with_capacity(m);
    for (mu, &v_mu) in dirs.iter().enumerate() {
        expectations.push(s.pauli_expectation(mu, v_mu)?);
    }
    for mu in 0..m {
        let e_mu = expectations[mu];
        g.set(mu, mu, (0.25 * (1.0 - e_mu * e_mu)).max(0.0));
        if mu + 1 == m {
            break;
        }
        let applied = s.apply_pauli_axis(mu, dirs[mu]);
        for nu in mu + 1..m {
            let corr = s.overlap_with_axis(&applied, nu, dirs[nu]);
            g.set_symmetric(mu, nu, 0.25 * (corr - e_mu * expectations[nu]));
        }
    }
    Ok(g)
}

/// `ds²/dr² = tr g(v)`. Never below [`entanglement_measure`].
pub fn distance_density(s: &StateVector, dirs: &[Direction]) -> Result<f64> {
    check_directions(s, dirs)?;
    let mut total = 0.0;
    for (qubit, &v) in dirs.iter().enumerate() {
        let e = s.pauli_expectation(qubit, v)?;
        total += (0.25 * (1.0 - e * e)).max(0.0);
    }
    Ok(total)
}

/// `g̃`, the metric at the optimal directions, with `E = tr g̃`.
#[derive(Clone, Debug, PartialEq)]
pub struct EntanglementMetric {
    pub size: usize,
    pub matrix: SquareMatrix,
    pub directions: Vec<Direction>,
    pub degenerate: Vec<bool>,
    pub measure: f64,
}

impl EntanglementMetric {
    pub fn spectrum(&self, rank_tol: f64) -> Result<Spectrum> {
        Ok(Spectrum { eigenvalues: self.matrix.symmetric_eigenvalues()?, rank_tol })
    }

    pub fn report(&self) -> Result<MetricReport> {
        Ok(MetricReport {
            m: self.size,
            matrix: self.matrix.rows(),
            directions: self.directions.iter().map(Direction::components).collect(),
            measure: self.measure,
            eigenvalues: self.spectrum(DEFAULT_RANK_TOL)?.eigenvalues,
        })
    }
}

pub fn entanglement_metric(s: &StateVector) -> EntanglementMetric {
    let w = w_vectors(s);
    let minimizers = optimal_directions(&w);
    let directions: Vec<Direction> = minimizers.iter().map(|m| m.direction).collect();
    let matrix = metric_matrix(s, &directions).expect("one direction per qubit");
    EntanglementMetric {
        size: s.num_qubits(),
        matrix,
        degenerate: minimizers.iter().map(|m| m.degenerate).collect(),
        directions,
        measure: measure_from_w(&w),
    }
}

/// Serialized form of an [`EntanglementMetric`].
#[derive(Clone, Debug, Serialize)]
pub struct MetricReport {
    pub m: usize,
    pub matrix: Vec<Vec<f64>>,
    pub directions: Vec<[f64; 3]>,
    pub measure: f64,
    pub eigenvalues: Vec<f64>,
}

/// Eigenvalues of `g̃`, descending.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub rank_tol: f64,
}

impl Spectrum {
    /// Number of eigenvalues above `rank_tol`.
    pub fn rank(&self) -> usize {
        self.eigenvalues.iter().filter(|&&x| x > self.rank_tol).count()
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

pub fn spectrum(em: &EntanglementMetric, rank_tol: f64) -> Result<Spectrum> {
    em.spectrum(rank_tol)
}
