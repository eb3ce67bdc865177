//! Parametrized state families with known entanglement distance.
//!
//! - Briegel-Raussendorf states `|r, φ⟩_M = U₀(φ) |+⟩^⊗M`, where
//!   `U₀(φ) = exp(−iφ Σ_j Π^j_0 Π^{j+1}_1)` is diagonal with eigenvalue
//!   `e^{−iφ n(k)}` on `|k⟩` and `n(k)` counts neighbour pairs with qubit `j`
//!   in `|0⟩` and qubit `j+1` in `|1⟩`.
//! - GHZ-like states `cos θ |0…0⟩ + sin θ e^{iφ} |1…1⟩`.
//! - The three-qubit family
//!   `cos γ |0⟩(cos τ |00⟩ + sin τ |11⟩) + sin γ |1⟩(sin τ |00⟩ + cos τ |11⟩)`,
//!   with the leading ket on qubit 2.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{measure_from_w, w_vectors};
use crate::state::{StateVector, MAX_QUBITS};

/// Which family and at which parameters. Serialized with a `"family"` tag of
/// `"brs"`, `"ghzl"` or `"threeq"`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilySpec {
    Brs {
        m: usize,
        phi: f64,
    },
    Ghzl {
        m: usize,
        theta: f64,
        #[serde(default)]
        phase: f64,
    },
    #[serde(rename = "threeq")]
    ThreeQubit {
        gamma: f64,
        tau: f64,
    },
}

impl FamilySpec {
    pub fn num_qubits(&self) -> usize {
        match *self {
            FamilySpec::Brs { m, .. } | FamilySpec::Ghzl { m, .. } => m,
            FamilySpec::ThreeQubit { .. } => 3,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Brs { .. } => "brs",
            FamilySpec::Ghzl { .. } => "ghzl",
            FamilySpec::ThreeQubit { .. } => "threeq",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let angles: &[f64] = match self {
            FamilySpec::Brs { m, phi } => {
                check_family_qubits(*m)?;
                &[*phi]
            }
            FamilySpec::Ghzl { m, theta, phase } => {
                check_family_qubits(*m)?;
                &[*theta, *phase]
            }
            FamilySpec::ThreeQubit { gamma, tau } => &[*gamma, *tau],
        };
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite angle in {self:?}")));
        }
        Ok(())
    }

    pub fn state(&self) -> Result<StateVector> {
        self.validate()?;
        match *self {
            FamilySpec::Brs { m, phi } => brs_state(m, phi),
            FamilySpec::Ghzl { m, theta, phase } => ghzl_state(m, theta, phase),
            FamilySpec::ThreeQubit { gamma, tau } => three_qubit_state(gamma, tau),
        }
    }

    /// Closed-form entanglement distance for this member of the family.
    pub fn closed_form(&self) -> Result<ClosedForm> {
        self.validate()?;
        let form = match *self {
            FamilySpec::Brs { m: 2, phi } => {
                let s = (phi / 2.0).sin();
                ClosedForm { value: s * s / 2.0, source: "brs m=2: sin²(φ/2)/2" }
            }
            FamilySpec::Brs { m: 3, phi } => {
                let (s, c) = (phi / 2.0).sin_cos();
                ClosedForm { value: s * s / 4.0 * (3.0 + c * c), source: "brs m=3: sin²(φ/2)(3 + cos²(φ/2))/4" }
            }
            FamilySpec::Brs { m, phi } => ClosedForm {
                value: measure_from_w(&w_vectors(&brs_state(m, phi)?)),
                source: "brs general m: (M − Σ_ν |w^ν|²)/4",
            },
            FamilySpec::Ghzl { m, theta, .. } => ClosedForm {
                value: m as f64 / 4.0 * (2.0 * theta).sin().powi(2),
                source: "ghzl: (M/4) sin²(2θ)",
            },
            FamilySpec::ThreeQubit { gamma, tau } => {
                let (s2g, s2t, c2t) = ((2.0 * gamma).sin(), (2.0 * tau).sin(), (2.0 * tau).cos());
                ClosedForm {
                    value: 0.25 * (2.0 * s2t * s2t + 3.0 * s2g * s2g * c2t * c2t),
                    source: "threeq: (2 sin²(2τ) + 3 sin²(2γ) cos²(2τ))/4",
                }
            }
        };
        Ok(form)
    }
}

/// A closed-form value of `E` and the formula it came from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClosedForm {
    pub value: f64,
    pub source: &'static str,
}

fn check_family_qubits(m: usize) -> Result<()> {
    if !(2..=MAX_QUBITS).contains(&m) {
        return Err(Error::InvalidParameter(format!("family needs 2..={MAX_QUBITS} qubits, got {m}")));
    }
    Ok(())
}

/// Number of neighbour pairs `(j, j+1)` with `n_j = 0` and `n_{j+1} = 1`.
pub fn brs_n01(k: usize, m: usize) -> Result<u32> {
    if m == 0 || m > MAX_QUBITS {
        return Err(Error::QubitCount(m));
    }
    if k >= 1 << m {
        return Err(Error::BasisIndex { index: k, num_qubits: m });
    }
    let pairs_mask = (1usize << (m - 1)) - 1;
    Ok((!k & (k >> 1) & pairs_mask).count_ones())
}

/// `|r, φ⟩_M` with amplitudes `2^{−M/2} e^{−iφ n(k)}`.
pub fn brs_state(m: usize, phi: f64) -> Result<StateVector> {
    FamilySpec::Brs { m, phi }.validate()?;
    let scale = (0.5f64).powf(m as f64 / 2.0);
    // n(k) ≤ M/2, so tabulate the phases
    let phases: Vec<Complex64> = (0..=m / 2)
        .map(|n| Complex64::from_polar(scale, -phi * n as f64))
        .collect();
    let pairs_mask = (1usize << (m - 1)) - 1;
    let amplitudes = (0..1usize << m)
        .map(|k| phases[(!k & (k >> 1) & pairs_mask).count_ones() as usize])
        .collect();
    StateVector::new(amplitudes)
}

/// `cos θ |0…0⟩ + sin θ e^{i·phase} |1…1⟩`.
pub fn ghzl_state(m: usize, theta: f64, phase: f64) -> Result<StateVector> {
    FamilySpec::Ghzl { m, theta, phase }.validate()?;
    let dim = 1usize << m;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
    amplitudes[0] = Complex64::new(theta.cos(), 0.0);
    amplitudes[dim - 1] = Complex64::from_polar(theta.sin(), phase);
    StateVector::new(amplitudes)
}

/// The two-parameter three-qubit family; nonzero amplitudes at `k = 0, 3, 4, 7`.
pub fn three_qubit_state(gamma: f64, tau: f64) -> Result<StateVector> {
    FamilySpec::ThreeQubit { gamma, tau }.validate()?;
    let (sg, cg) = gamma.sin_cos();
    let (st, ct) = tau.sin_cos();
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 8];
    amplitudes[0b000] = Complex64::new(cg * ct, 0.0);
    amplitudes[0b011] = Complex64::new(cg * st, 0.0);
    amplitudes[0b100] = Complex64::new(sg * st, 0.0);
    amplitudes[0b111] = Complex64::new(sg * ct, 0.0);
    StateVector::new(amplitudes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{entanglement_measure, entanglement_metric, metric_matrix};
    use crate::state::Direction;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

    /// Diagonal of `Π_j (I + α Π^j_0 Π^{j+1}_1)` built factor by factor.
    fn u0_diagonal_oracle(m: usize, phi: f64) -> Vec<Complex64> {
        let alpha = Complex64::from_polar(1.0, -phi) - 1.0;
        (0..1usize << m)
            .map(|k| {
                let bits: Vec<usize> = (0..m).map(|j| (k >> j) & 1).collect();
                (0..m - 1).fold(Complex64::new(1.0, 0.0), |acc, j| {
                    let projector = if bits[j] == 0 && bits[j + 1] == 1 { 1.0 } else { 0.0 };
                    acc * (1.0 + alpha * projector)
                })
            })
            .collect()
    }

    /// `Σ_j C(n, j) α^j`.
    fn binomial_sum(n: u32, alpha: Complex64) -> Complex64 {
        let mut binom = 1.0;
        let mut total = Complex64::new(0.0, 0.0);
        for j in 0..=n {
            total += binom * alpha.powu(j);
            binom = binom * (n - j) as f64 / (j + 1) as f64;
        }
        total
    }

    #[test]
    fn n01_examples() {
        assert_eq!(brs_n01(0, 4).unwrap(), 0);
        assert_eq!(brs_n01(2, 2).unwrap(), 1);
        assert_eq!(brs_n01(10, 4).unwrap(), 2);
        assert_eq!(brs_n01(1, 2).unwrap(), 0);
        assert!(brs_n01(4, 2).is_err());
    }

    #[test]
    fn n01_matches_projector_oracle() {
        for m in 2..=8 {
            for phi in [0.4, 2.3] {
                let diag = u0_diagonal_oracle(m, phi);
                let alpha = Complex64::from_polar(1.0, -phi) - 1.0;
                for (k, d) in diag.iter().enumerate() {
                    let n = brs_n01(k, m).unwrap();
                    assert_abs_diff_eq!((binomial_sum(n, alpha) - d).norm(), 0.0, epsilon = 1e-12);
                    assert_abs_diff_eq!((Complex64::from_polar(1.0, -phi * n as f64) - d).norm(), 0.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn brs_state_matches_operator_construction() {
        for m in 2..=7 {
            let phi = 1.3;
            let diag = u0_diagonal_oracle(m, phi);
            let s = brs_state(m, phi).unwrap();
            let scale = (0.5f64).powf(m as f64 / 2.0);
            for (c, d) in s.amplitudes().iter().zip(&diag) {
                assert_abs_diff_eq!((c - d * scale).norm(), 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn brs_state_examples() {
        let s = brs_state(2, 0.0).unwrap();
        assert!(s.amplitudes().iter().all(|c| (c - 0.5).norm() < 1e-15));
        let s = brs_state(2, PI).unwrap();
        let expected = [0.5, 0.5, -0.5, 0.5];
        for (c, e) in s.amplitudes().iter().zip(expected) {
            assert_abs_diff_eq!((c - e).norm(), 0.0, epsilon = 1e-15);
        }
        let a = brs_state(4, 2.0 * PI).unwrap();
        let b = brs_state(4, 0.0).unwrap();
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            assert_abs_diff_eq!((x - y).norm(), 0.0, epsilon = 1e-12);
        }
        assert!(brs_state(1, 0.0).is_err());
    }

    #[test]
    fn brs_is_periodic_and_separable_at_multiples_of_two_pi() {
        for m in 2..=8 {
            for phi in [0.1, 1.7, 3.0, 5.5] {
                let a = brs_state(m, phi).unwrap();
                let b = brs_state(m, phi + 2.0 * PI).unwrap();
                for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
                    assert!((x - y).norm() < 1e-12);
                }
            }
            for k in -2..=2 {
                assert!(entanglement_measure(&brs_state(m, 2.0 * PI * k as f64).unwrap()) < 1e-12);
            }
        }
    }

    #[test]
    fn ghzl_examples() {
        let s = ghzl_state(3, 0.0, 1.1).unwrap();
        assert_eq!(s, StateVector::basis(3, 0).unwrap());
        let s = ghzl_state(3, FRAC_PI_4, 0.0).unwrap();
        assert_abs_diff_eq!(s.amplitudes()[0].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitudes()[7].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        let s = ghzl_state(2, FRAC_PI_2, PI / 3.0).unwrap();
        assert_abs_diff_eq!((s.amplitudes()[3] - Complex64::from_polar(1.0, PI / 3.0)).norm(), 0.0, epsilon = 1e-15);
        assert!(s.amplitudes()[..3].iter().all(|c| c.norm() < 1e-15));
        assert!(ghzl_state(1, 0.3, 0.0).is_err());
    }

    #[test]
    fn ghzl_measure_ignores_phase() {
        for phase in [0.0, 0.5, 2.0, -1.2] {
            let e = entanglement_measure(&ghzl_state(5, 0.37, phase).unwrap());
            let e0 = entanglement_measure(&ghzl_state(5, 0.37, 0.0).unwrap());
            assert_abs_diff_eq!(e, e0, epsilon = 1e-12);
        }
    }

    #[test]
    fn three_qubit_examples() {
        assert_eq!(three_qubit_state(0.0, 0.0).unwrap(), StateVector::basis(3, 0).unwrap());
        let s = three_qubit_state(FRAC_PI_4, 0.0).unwrap();
        assert_abs_diff_eq!(s.amplitudes()[0].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitudes()[7].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        // |0⟩ ⊗ (|00⟩ + |11⟩)/√2 on qubit 2 ⊗ (qubits 1, 0)
        let s = three_qubit_state(0.0, FRAC_PI_4).unwrap();
        assert_abs_diff_eq!(s.amplitudes()[0].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitudes()[3].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(s.pauli_expectation(2, Direction::Z).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn closed_form_examples() {
        let e = FamilySpec::Ghzl { m: 9, theta: PI / 8.0, phase: 0.0 }.closed_form().unwrap();
        assert_abs_diff_eq!(e.value, 9.0 / 8.0, epsilon = 1e-14);
        let e = FamilySpec::Brs { m: 3, phi: PI }.closed_form().unwrap();
        assert_abs_diff_eq!(e.value, 0.75, epsilon = 1e-15);
        for gamma in [0.0, 0.3, 1.2, 2.9] {
            let e = FamilySpec::ThreeQubit { gamma, tau: FRAC_PI_4 }.closed_form().unwrap();
            assert_abs_diff_eq!(e.value, 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn closed_forms_agree_with_measure() {
        for i in 0..=40 {
            let phi = 2.0 * PI * i as f64 / 40.0;
            for m in 2..=6 {
                let spec = FamilySpec::Brs { m, phi };
                let e = entanglement_measure(&spec.state().unwrap());
                assert_abs_diff_eq!(e, spec.closed_form().unwrap().value, epsilon = 1e-12);
                // general-M route agrees with the trace of g at the optimal axes
                assert_abs_diff_eq!(e, entanglement_metric(&spec.state().unwrap()).matrix.trace(), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn three_qubit_classification() {
        for gamma in [0.0, FRAC_PI_2] {
            for tau in [0.0, FRAC_PI_2] {
                assert!(entanglement_measure(&three_qubit_state(gamma, tau).unwrap()) < 1e-12);
            }
        }
        for i in 1..20 {
            let gamma = PI * i as f64 / 20.0;
            let e = entanglement_measure(&three_qubit_state(gamma, FRAC_PI_4).unwrap()) / 3.0;
            assert!(e > 0.0 && e < 0.25);
        }
        for tau in [0.0, FRAC_PI_2] {
            let e = entanglement_measure(&three_qubit_state(FRAC_PI_4, tau).unwrap());
            assert_abs_diff_eq!(e / 3.0, 0.25, epsilon = 1e-12);
        }
    }

    #[test]
    fn maximally_entangled_members_share_the_maximum() {
        for m in 2..=9 {
            let brs = entanglement_measure(&brs_state(m, PI).unwrap());
            let ghz = entanglement_measure(&ghzl_state(m, FRAC_PI_4, 0.0).unwrap());
            assert_abs_diff_eq!(brs, m as f64 / 4.0, epsilon = 1e-12);
            assert_abs_diff_eq!(ghz, m as f64 / 4.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn reading_pairs_in_the_other_order_is_a_qubit_reflection() {
        // counting (n_j, n_{j+1}) = (1, 0) instead of (0, 1) is the same state with
        // qubits relabelled j ↦ M−1−j
        for m in 2..=7 {
            let phi = 0.9;
            let scale = (0.5f64).powf(m as f64 / 2.0);
            let mask = (1usize << (m - 1)) - 1;
            let reflected_reading = StateVector::new(
                (0..1usize << m)
                    .map(|k| Complex64::from_polar(scale, -phi * (k & !(k >> 1) & mask).count_ones() as f64))
                    .collect(),
            )
            .unwrap();
            let ours = brs_state(m, phi).unwrap();
            let reversal: Vec<usize> = (0..m).rev().collect();
            assert_eq!(ours.permute_qubits(&reversal).unwrap(), reflected_reading);

            let a = entanglement_metric(&ours);
            let b = entanglement_metric(&reflected_reading);
            assert_abs_diff_eq!(a.measure, b.measure, epsilon = 1e-12);
            let (sa, sb) = (a.spectrum(1e-8).unwrap(), b.spectrum(1e-8).unwrap());
            for (x, y) in sa.eigenvalues.iter().zip(&sb.eigenvalues) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn two_qubit_brs_metric_against_printed_matrix() {
        // The printed axes ±(c, (−1)^{ν+1} s, 0) label qubits left to right, so axis ν = 0
        // lands on our qubit 1. The diagonal s²/4 holds for every φ; the printed constant
        // off-diagonal 1/4 only matches at φ = π.
        for phi in [0.0, 0.7, 2.0, PI] {
            let (s, c) = (phi / 2.0).sin_cos();
            let dirs = [Direction::new(c, s, 0.0).unwrap(), Direction::new(c, -s, 0.0).unwrap()];
            let g = metric_matrix(&brs_state(2, phi).unwrap(), &dirs).unwrap();
            assert_abs_diff_eq!(g.get(0, 0), s * s / 4.0, epsilon = 1e-12);
            assert_abs_diff_eq!(g.get(1, 1), s * s / 4.0, epsilon = 1e-12);
            assert_abs_diff_eq!(g.trace(), FamilySpec::Brs { m: 2, phi }.closed_form().unwrap().value, epsilon = 1e-12);
            let printed = 0.25;
            if phi == PI {
                assert_abs_diff_eq!(g.get(0, 1), printed, epsilon = 1e-12);
            } else {
                eprintln!("phi = {phi}: off-diagonal {} vs printed {printed}", g.get(0, 1));
            }
        }
    }

    #[test]
    fn three_qubit_brs_trace_against_printed_axes() {
        // printed minimizers (c, −s, 0), (1, 0, 0), (c, s, 0) for ν = 0, 1, 2, reflected
        for phi in [0.3f64, 1.1, 2.6] {
            let (s, c) = (phi / 2.0).sin_cos();
            let dirs = [Direction::new(c, s, 0.0).unwrap(), Direction::X, Direction::new(c, -s, 0.0).unwrap()];
            let state = brs_state(3, phi).unwrap();
            let g = metric_matrix(&state, &dirs).unwrap();
            assert_abs_diff_eq!(g.trace(), s * s / 4.0 * (3.0 + c * c), epsilon = 1e-12);
            assert_abs_diff_eq!(g.get(0, 0), s * s / 4.0, epsilon = 1e-12);
            assert_abs_diff_eq!(g.get(1, 1), s * s / 4.0 * (1.0 + c * c), epsilon = 1e-12);
            assert_abs_diff_eq!(g.get(2, 2), s * s / 4.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn spec_json_shapes() {
        let spec: FamilySpec = serde_json::from_str(r#"{"family": "ghzl", "m": 3, "theta": 0.5}"#).unwrap();
        assert_eq!(spec, FamilySpec::Ghzl { m: 3, theta: 0.5, phase: 0.0 });
        let spec: FamilySpec = serde_json::from_str(r#"{"family": "threeq", "gamma": 0.1, "tau": 0.2}"#).unwrap();
        assert_eq!(spec.num_qubits(), 3);
        let spec: FamilySpec = serde_json::from_str(r#"{"family": "brs", "m": 4, "phi": 1.0}"#).unwrap();
        assert_eq!(spec.name(), "brs");
        assert!(serde_json::from_str::<FamilySpec>(r#"{"family": "cluster", "m": 4}"#).is_err());
        assert!(FamilySpec::Brs { m: 4, phi: f64::NAN }.state().is_err());
    }
}
