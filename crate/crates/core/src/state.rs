//! Dense pure states over the computational basis.
//!
//! A state of `M` qubits stores `2^M` amplitudes `c_k`. Qubit `ν` is bit `ν`
//! of `k`, counting from the right, so `|n_{M-1} … n_1 n_0⟩` has index
//! `k = Σ_ν n_ν 2^ν`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::{CompensatedComplexSum, CompensatedSum};

/// Largest supported register. 2^26 complex doubles is 1 GiB.
pub const MAX_QUBITS: usize = 26;

/// Allowed deviation of `Σ|c_k|²` from one.
pub const NORM_TOL: f64 = 1e-12;

/// Allowed deviation of `|v|²` from one for a [`Direction`].
pub const UNIT_TOL: f64 = 1e-12;

/// Allowed deviation of `U†U` from the identity for a [`LocalUnitary`].
pub const UNITARY_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Normalized state vector of `num_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps `amplitudes`, which must have power-of-two length and unit norm.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let num_qubits = qubits_for_len(amplitudes.len())?;
        let norm_sqr = norm_sqr(&amplitudes);
        if (norm_sqr - 1.0).abs() > NORM_TOL || !norm_sqr.is_finite() {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self { num_qubits, amplitudes })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let num_qubits = qubits_for_len(amplitudes.len())?;
        let norm_sqr = norm_sqr(&amplitudes);
        if !(norm_sqr > 0.0) || !norm_sqr.is_finite() {
            return Err(Error::NotNormalized(norm_sqr));
        }
        let scale = norm_sqr.sqrt().recip();
        amplitudes.iter_mut().for_each(|c| *c *= scale);
        Ok(Self { num_qubits, amplitudes })
    }

    /// Basis state `|k⟩` of `num_qubits` qubits.
    pub fn basis(num_qubits: usize, k: usize) -> Result<Self> {
        check_qubit_count(num_qubits)?;
        let dim = 1usize << num_qubits;
        if k >= dim {
            return Err(Error::BasisIndex { index: k, num_qubits });
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[k] = ONE;
        Ok(Self { num_qubits, amplitudes })
    }

    /// Tensor product of single-qubit states. `factors[ν]` is qubit `ν`.
    pub fn product(factors: &[[Complex64; 2]]) -> Result<Self> {
        check_qubit_count(factors.len())?;
        let mut amplitudes = vec![ONE];
        for factor in factors {
            // new qubit becomes the most significant bit
            let mut next = Vec::with_capacity(amplitudes.len() * 2);
            next.extend(amplitudes.iter().map(|&c| c * factor[0]));
            next.extend(amplitudes.iter().map(|&c| c * factor[1]));
            amplitudes = next;
        }
        Self::normalized(amplitudes)
    }

    /// Random state with i.i.d. complex Gaussian amplitudes, i.e. uniform on
    /// the unit sphere of `C^(2^M)`.
    pub fn random<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Result<Self> {
        check_qubit_count(num_qubits)?;
        let amplitudes = (0..1usize << num_qubits)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self::normalized(amplitudes)
    }

    /// Random product state, one Haar-random qubit per factor.
    pub fn random_product<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Result<Self> {
        let factors: Vec<[Complex64; 2]> = (0..num_qubits)
            .map(|_| {
                let u = LocalUnitary::haar_with(rng);
                [u.matrix[0][0], u.matrix[1][0]]
            })
            .collect();
        Self::product(&factors)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    pub(crate) fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitIndex { qubit, num_qubits: self.num_qubits });
        }
        Ok(())
    }

    /// Applies `u` to `qubit`, mixing each pair `(k, k + 2^qubit)`.
    pub fn apply_local_unitary(&self, qubit: usize, u: &LocalUnitary) -> Result<Self> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        let m = &u.matrix;
        let mut out = self.amplitudes.clone();
        for k0 in (0..self.dim()).filter(|k| k & bit == 0) {
            let k1 = k0 | bit;
            let (a0, a1) = (self.amplitudes[k0], self.amplitudes[k1]);
            out[k0] = m[0][0] * a0 + m[0][1] * a1;
            out[k1] = m[1][0] * a0 + m[1][1] * a1;
        }
        Ok(Self { num_qubits: self.num_qubits, amplitudes: out })
    }

    /// Applies `unitaries[ν]` to every qubit `ν`.
    pub fn apply_local_unitaries(&self, unitaries: &[LocalUnitary]) -> Result<Self> {
        if unitaries.len() != self.num_qubits {
            return Err(Error::InvalidParameter(format!(
                "expected {} local unitaries, got {}",
                self.num_qubits,
                unitaries.len()
            )));
        }
        let mut state = self.clone();
        for (qubit, u) in unitaries.iter().enumerate() {
            state = state.apply_local_unitary(qubit, u)?;
        }
        Ok(state)
    }

    /// `(v·σ) |s⟩` with the Pauli operator acting on `qubit`.
    pub(crate) fn apply_pauli_axis(&self, qubit: usize, v: Direction) -> Vec<Complex64> {
        let bit = 1usize << qubit;
        (0..self.dim()).map(|k| pauli_axis_entry(&self.amplitudes, bit, v, k)).collect()
    }

    /// `⟨s| v·σ^qubit |s⟩`.
    pub fn pauli_expectation(&self, qubit: usize, v: Direction) -> Result<f64> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        let mut acc = CompensatedSum::default();
        for (k, c) in self.amplitudes.iter().enumerate() {
            acc.add((c.conj() * pauli_axis_entry(&self.amplitudes, bit, v, k)).re);
        }
        Ok(acc.total())
    }

    /// `⟨s| (v_a·σ^a)(v_b·σ^b) |s⟩` for distinct qubits `a`, `b`.
    pub fn pauli_pair_correlation(
        &self,
        qubit_a: usize,
        v_a: Direction,
        qubit_b: usize,
        v_b: Direction,
    ) -> Result<f64> {
        self.check_qubit(qubit_a)?;
        self.check_qubit(qubit_b)?;
        if qubit_a == qubit_b {
            return Err(Error::SameQubit(qubit_a));
        }
        let applied_a = self.apply_pauli_axis(qubit_a, v_a);
        Ok(self.overlap_with_axis(&applied_a, qubit_b, v_b))
    }

    /// `Re ⟨φ| (v·σ^qubit) |s⟩`.
    pub(crate) fn overlap_with_axis(&self, bra: &[Complex64], qubit: usize, v: Direction) -> f64 {
        let bit = 1usize << qubit;
        let mut acc = CompensatedSum::default();
        for (k, b) in bra.iter().enumerate() {
            acc.add((b.conj() * pauli_axis_entry(&self.amplitudes, bit, v, k)).re);
        }
        acc.total()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::InvalidParameter(format!(
                "qubit count mismatch: {} vs {}",
                self.num_qubits, other.num_qubits
            )));
        }
        let mut acc = CompensatedComplexSum::default();
        for (a, b) in self.amplitudes.iter().zip(&other.amplitudes) {
            acc.add(a.conj() * b);
        }
        Ok(acc.total())
    }

    /// Relabels qubits: old qubit `q` becomes qubit `perm[q]`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        let m = self.num_qubits;
        let mut seen = vec![false; m];
        if perm.len() != m || perm.iter().any(|&p| p >= m || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidParameter(format!("{perm:?} is not a permutation of 0..{m}")));
        }
        let mut out = vec![ZERO; self.dim()];
        for (k, &c) in self.amplitudes.iter().enumerate() {
            let target = perm
                .iter()
                .enumerate()
                .fold(0usize, |acc, (q, &p)| acc | (((k >> q) & 1) << p));
            out[target] = c;
        }
        Ok(Self { num_qubits: m, amplitudes: out })
    }

    /// Reads the `{"m", "re", "im"}` state-file format.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: StateFile = serde_json::from_str(text)?;
        file.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&StateFile::from(self)).expect("state file serializes")
    }
}

/// On-disk layout of a state: `{"m": M, "re": [..], "im": [..]}` with both
/// arrays of length `2^M`, indexed by the basis integer `k`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub m: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl From<&StateVector> for StateFile {
    fn from(s: &StateVector) -> Self {
        StateFile {
            m: s.num_qubits,
            re: s.amplitudes.iter().map(|c| c.re).collect(),
            im: s.amplitudes.iter().map(|c| c.im).collect(),
        }
    }
}

impl TryFrom<StateFile> for StateVector {
    type Error = Error;

    fn try_from(file: StateFile) -> Result<Self> {
        check_qubit_count(file.m)?;
        let dim = 1usize << file.m;
        if file.re.len() != dim || file.im.len() != dim {
            return Err(Error::InvalidParameter(format!(
                "expected {dim} real and imaginary parts for m = {}, got {} and {}",
                file.m,
                file.re.len(),
                file.im.len()
            )));
        }
        let amplitudes = file.re.iter().zip(&file.im).map(|(&re, &im)| Complex64::new(re, im)).collect();
        StateVector::new(amplitudes)
    }
}

/// Real unit 3-vector selecting the local Pauli operator `v·σ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(into = "[f64; 3]")]
pub struct Direction([f64; 3]);

impl Direction {
    pub const X: Direction = Direction([1.0, 0.0, 0.0]);
    pub const Y: Direction = Direction([0.0, 1.0, 0.0]);
    pub const Z: Direction = Direction([0.0, 0.0, 1.0]);

    pub fn new(v1: f64, v2: f64, v3: f64) -> Result<Self> {
        let n2 = v1 * v1 + v2 * v2 + v3 * v3;
        if !((n2 - 1.0).abs() <= UNIT_TOL) {
            return Err(Error::NotUnit(v1, v2, v3));
        }
        Ok(Direction([v1, v2, v3]))
    }

    /// Normalizes `v`; `None` for the zero vector.
    pub fn normalize(v: [f64; 3]) -> Option<Self> {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        (n > 0.0 && n.is_finite()).then(|| Direction([v[0] / n, v[1] / n, v[2] / n]))
    }

    /// `(sin θ cos φ, sin θ sin φ, cos θ)`.
    pub fn from_spherical(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Direction([st * cp, st * sp, ct])
    }

    /// Uniform on the unit sphere.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let v = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
            if let Some(d) = Direction::normalize(v) {
                return d;
            }
        }
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn dot(&self, b: &[f64; 3]) -> f64 {
        self.0[0] * b[0] + self.0[1] * b[1] + self.0[2] * b[2]
    }

    pub fn neg(&self) -> Self {
        Direction([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl From<Direction> for [f64; 3] {
    fn from(d: Direction) -> Self {
        d.0
    }
}

impl<'de> Deserialize<'de> for Direction {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [v1, v2, v3] = <[f64; 3]>::deserialize(deserializer)?;
        Direction::new(v1, v2, v3).map_err(serde::de::Error::custom)
    }
}

/// 2×2 unitary acting on one qubit, in the `|0⟩, |1⟩` basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalUnitary {
    matrix: [[Complex64; 2]; 2],
}

impl LocalUnitary {
    pub fn new(matrix: [[Complex64; 2]; 2]) -> Result<Self> {
        let deviation = unitarity_deviation(&matrix);
        if !(deviation <= UNITARY_TOL) {
            return Err(Error::NotUnitary(deviation));
        }
        Ok(Self { matrix })
    }

    pub fn identity() -> Self {
        Self { matrix: [[ONE, ZERO], [ZERO, ONE]] }
    }

    pub fn pauli_x() -> Self {
        Self { matrix: [[ZERO, ONE], [ONE, ZERO]] }
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self { matrix: [[h, h], [h, -h]] }
    }

    /// `exp(-i angle (n·σ)/2)`.
    pub fn rotation(axis: Direction, angle: f64) -> Self {
        let [n1, n2, n3] = axis.components();
        let (s, c) = (angle / 2.0).sin_cos();
        let i = Complex64::i();
        Self {
            matrix: [
                [c - i * s * n3, -i * s * (n1 - i * n2)],
                [-i * s * (n1 + i * n2), c + i * s * n3],
            ],
        }
    }

    /// Haar-random element of SU(2), deterministic in `seed`.
    pub fn haar(seed: u64) -> Self {
        Self::haar_with(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// Haar-random element of SU(2) from a uniform point on the 3-sphere,
    /// read as the quaternion `(a, b, c, d) ↦ [[a+ib, c+id], [−c+id, a−ib]]`.
    pub fn haar_with<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let q = loop {
            let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
            let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-9 {
                break q.map(|x| x / n);
            }
        };
        let alpha = Complex64::new(q[0], q[1]);
        let beta = Complex64::new(q[2], q[3]);
        Self { matrix: [[alpha, beta], [-beta.conj(), alpha.conj()]] }
    }

    pub fn matrix(&self) -> &[[Complex64; 2]; 2] {
        &self.matrix
    }

    pub fn determinant(&self) -> Complex64 {
        let m = &self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Largest entry of `|U†U − I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        unitarity_deviation(&self.matrix)
    }
}

/// Haar-random local unitary for `seed`.
pub fn random_local_unitary(seed: u64) -> LocalUnitary {
    LocalUnitary::haar(seed)
}

fn unitarity_deviation(m: &[[Complex64; 2]; 2]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let entry = m[0][i].conj() * m[0][j] + m[1][i].conj() * m[1][j];
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((entry - target).norm());
        }
    }
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    worst.max((det.norm() - 1.0).abs())
}

/// Entry `k` of `(v·σ) x` on the qubit selected by `bit`.
#[inline]
fn pauli_axis_entry(x: &[Complex64], bit: usize, v: Direction, k: usize) -> Complex64 {
    let [v1, v2, v3] = v.0;
    let partner = x[k ^ bit];
    if k & bit == 0 {
        x[k] * v3 + partner * Complex64::new(v1, -v2)
    } else {
        partner * Complex64::new(v1, v2) - x[k] * v3
    }
}

fn norm_sqr(amplitudes: &[Complex64]) -> f64 {
    let mut acc = CompensatedSum::default();
    amplitudes.iter().for_each(|c| acc.add(c.norm_sqr()));
    acc.total()
}

fn check_qubit_count(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::QubitCount(num_qubits));
    }
    Ok(())
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if !len.is_power_of_two() {
        return Err(Error::AmplitudeCount(len));
    }
    let num_qubits = len.trailing_zeros() as usize;
    check_qubit_count(num_qubits)?;
    Ok(num_qubits)
}
