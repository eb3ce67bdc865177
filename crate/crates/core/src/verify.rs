//! Independent oracles for the analytic minimizer.
//!
//! Nothing here goes through [`crate::metric::w_vectors`]: the numeric
//! optimizer reads single-qubit expectations from direct operator
//! application, and the Bloch oracle builds the reduced density matrix by an
//! explicit partial trace.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::metric::entanglement_measure;
use crate::state::{Direction, LocalUnitary, StateVector};

pub const DEFAULT_RESTARTS: usize = 8;
pub const DEFAULT_TOL: f64 = 1e-8;

const MAX_ITERATIONS: usize = 20_000;
const ARMIJO: f64 = 1e-4;

/// Result of [`minimize_trace_numeric`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimizerReport {
    /// Smallest `tr g(v)` found.
    pub value: f64,
    pub directions: Vec<Direction>,
    pub restarts_used: usize,
    /// Whether the best restart reached gradient norm below `tol`.
    pub converged: bool,
    /// Iterations taken by the best restart.
    pub iterations: usize,
}

/// Spherical-coordinate objective `Σ_ν ¼(1 − (v(θ_ν, φ_ν)·e^ν)²)`.
struct TraceObjective {
    axis_expectations: Vec<[f64; 3]>,
}

impl TraceObjective {
    fn new(s: &StateVector) -> Result<Self> {
        let axis_expectations = (0..s.num_qubits())
            .map(|q| {
                Ok([
                    s.pauli_expectation(q, Direction::X)?,
                    s.pauli_expectation(q, Direction::Y)?,
                    s.pauli_expectation(q, Direction::Z)?,
                ])
            })
            .collect::<Result<_>>()?;
        Ok(Self { axis_expectations })
    }

    /// Value and gradient at `x = (θ_0, φ_0, θ_1, φ_1, …)`.
    fn evaluate(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        let mut value = 0.0;
        for (q, e) in self.axis_expectations.iter().enumerate() {
            let (st, ct) = x[2 * q].sin_cos();
            let (sp, cp) = x[2 * q + 1].sin_cos();
            let proj = st * cp * e[0] + st * sp * e[1] + ct * e[2];
            let d_theta = ct * cp * e[0] + ct * sp * e[1] - st * e[2];
            let d_phi = -st * sp * e[0] + st * cp * e[1];
            value += 0.25 * (1.0 - proj * proj);
            grad[2 * q] = -0.5 * proj * d_theta;
            grad[2 * q + 1] = -0.5 * proj * d_phi;
        }
        value
    }
}

struct Descent {
    x: Vec<f64>,
    value: f64,
    converged: bool,
    iterations: usize,
}

/// Steepest descent with Armijo backtracking from `x`.
fn descend(objective: &TraceObjective, mut x: Vec<f64>, tol: f64) -> Descent {
    let n = x.len();
    let mut grad = vec![0.0; n];
    let mut trial_grad = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut value = objective.evaluate(&x, &mut grad);
    let mut step = 1.0f64;

    for iteration in 0..MAX_ITERATIONS {
        let grad_sqr: f64 = grad.iter().map(|g| g * g).sum();
        if grad_sqr.sqrt() < tol {
            return Descent { x, value, converged: true, iterations: iteration };
        }
        step = (step * 2.0).min(16.0);
        loop {
            for i in 0..n {
                trial[i] = x[i] - step * grad[i];
            }
            let trial_value = objective.evaluate(&trial, &mut trial_grad);
            if trial_value <= value - ARMIJO * step * grad_sqr {
                std::mem::swap(&mut x, &mut trial);
                std::mem::swap(&mut grad, &mut trial_grad);
                value = trial_value;
                break;
            }
            step *= 0.5;
            if step < 1e-16 {
                // no representable decrease left
                return Descent { x, value, converged: false, iterations: iteration };
            }
        }
    }
    Descent { x, value, converged: false, iterations: MAX_ITERATIONS }
}

/// Multi-start local minimization of `tr g(v)` over one direction per qubit.
///
/// Restarts draw `(cos θ, φ)` uniformly, so start points are uniform on each
/// sphere. The best restart wins; ties keep the earliest restart.
pub fn minimize_trace_numeric(s: &StateVector, restarts: usize, tol: f64, seed: u64) -> Result<OptimizerReport> {
    if restarts == 0 || !(tol > 0.0) {
        return Err(crate::Error::InvalidParameter("restarts must be ≥ 1 and tol > 0".into()));
    }
    let objective = TraceObjective::new(s)?;
    let m = s.num_qubits();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Descent> = None;
    for _ in 0..restarts {
        let start: Vec<f64> = (0..m)
            .flat_map(|_| {
                let cos_theta: f64 = rng.random_range(-1.0..1.0);
                let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                [cos_theta.acos(), phi]
            })
            .collect();
        let run = descend(&objective, start, tol);
        if best.as_ref().is_none_or(|b| run.value < b.value) {
            best = Some(run);
        }
    }
    let best = best.expect("at least one restart");
    Ok(OptimizerReport {
        value: best.value,
        directions: best.x.chunks(2).map(|p| Direction::from_spherical(p[0], p[1])).collect(),
        restarts_used: restarts,
        converged: best.converged,
        iterations: best.iterations,
    })
}

/// One-qubit reduced density matrix by explicit partial trace over the other
/// qubits: `ρ_ab = Σ_r c_{r,a} c*_{r,b}`.
pub fn reduced_density_matrix(s: &StateVector, qubit: usize) -> Result<[[Complex64; 2]; 2]> {
    s.check_qubit(qubit)?;
    let c = s.amplitudes();
    let low_mask = (1usize << qubit) - 1;
    let mut rho = [[Complex64::new(0.0, 0.0); 2]; 2];
    for rest in 0..s.dim() / 2 {
        // insert the traced-out qubit's bit at position `qubit`
        let k0 = ((rest & !low_mask) << 1) | (rest & low_mask);
        let k1 = k0 | (1 << qubit);
        let amps = [c[k0], c[k1]];
        for a in 0..2 {
            for b in 0..2 {
                rho[a][b] += amps[a] * amps[b].conj();
            }
        }
    }
    Ok(rho)
}

/// `(tr ρσ₁, tr ρσ₂, tr ρσ₃)` for the reduced state of `qubit`.
pub fn bloch_vector_oracle(s: &StateVector, qubit: usize) -> Result<[f64; 3]> {
    let rho = reduced_density_matrix(s, qubit)?;
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let paulis = [[[zero, one], [one, zero]], [[zero, -i], [i, zero]], [[one, zero], [zero, -one]]];
    Ok(paulis.map(|sigma| {
        let mut tr = zero;
        for a in 0..2 {
            for b in 0..2 {
                tr += rho[a][b] * sigma[b][a];
            }
        }
        tr.re
    }))
}

/// `tr ρ²` of a 2×2 density matrix.
pub fn purity(rho: &[[Complex64; 2]; 2]) -> f64 {
    let mut total = 0.0;
    for a in 0..2 {
        for b in 0..2 {
            total += (rho[a][b] * rho[b][a]).re;
        }
    }
    total
}

/// Largest `|E(U s) − E(s)|` over `trials` independent Haar dressings
/// `U = U_{M-1} ⊗ … ⊗ U_0`.
pub fn invariance_check(s: &StateVector, trials: usize, seed: u64) -> Result<f64> {
    let reference = entanglement_measure(s);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let dressing: Vec<LocalUnitary> = (0..s.num_qubits()).map(|_| LocalUnitary::haar_with(&mut rng)).collect();
        let dressed = s.apply_local_unitaries(&dressing)?;
        worst = worst.max((entanglement_measure(&dressed) - reference).abs());
    }
    Ok(worst)
}
