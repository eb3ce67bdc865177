//! Entanglement distance for pure states of `M` qubits.
//!
//! The entanglement distance `E(|s⟩)` is the minimum, over one Pauli axis per
//! qubit, of the trace of the Fubini-Study metric restricted to local SU(2)
//! rotations. For a pure state the minimum is attained in closed form: the
//! optimal axis on qubit `ν` is the Bloch vector of that qubit's reduced
//! state, which gives `E = ¼ Σ_ν (1 − |b^ν|²)`. The metric evaluated on those
//! axes is the entanglement metric `g̃`, whose spectrum tells how robust the
//! entanglement is against variations along arbitrary directions.
//!
//! Modules:
//!
//! - [`state`]: dense state vectors, local unitaries and Pauli expectations.
//! - [`metric`]: w-vectors, optimal directions, `E`, `g̃` and its spectrum.
//! - [`families`]: the Briegel-Raussendorf, GHZ-like and two-parameter
//!   three-qubit state families with their closed-form `E`.
//! - [`verify`]: independent numerical oracles used to cross-check `metric`.
//! - [`linalg`]: small dense symmetric matrices and a cyclic Jacobi solver.
//!
//! Qubit `ν` always addresses bit `ν` of the basis index `k`, so qubit 0 is
//! the least significant (rightmost) bit of `|n_{M-1} … n_0⟩`.

pub mod error;
pub mod families;
pub mod linalg;
pub mod metric;
pub mod state;
pub mod verify;

mod sum;

pub use error::{Error, Result};
pub use families::{ClosedForm, FamilySpec};
pub use linalg::SquareMatrix;
pub use metric::{
    distance_density, entanglement_measure, entanglement_metric, metric_matrix,
    optimal_directions, w_vectors, EntanglementMetric, LocalMinimizer, MetricReport, Spectrum,
    WVector,
};
pub use state::{Direction, LocalUnitary, StateVector};
pub use verify::OptimizerReport;
