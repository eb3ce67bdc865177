//! Parameter sweeps over a state family and the three-qubit surface.

use std::f64::consts::{PI, TAU};

use clap::ValueEnum;
use entdist::metric::DEFAULT_RANK_TOL;
use entdist::{entanglement_measure, entanglement_metric, families, FamilySpec};
use rayon::prelude::*;
use serde::Serialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parameter {
    Phi,
    Theta,
    Phase,
    Gamma,
    Tau,
}

impl Parameter {
    pub fn name(self) -> &'static str {
        match self {
            Parameter::Phi => "phi",
            Parameter::Theta => "theta",
            Parameter::Phase => "phase",
            Parameter::Gamma => "gamma",
            Parameter::Tau => "tau",
        }
    }

    /// Default range: one full period for φ, a quarter turn for θ, half a
    /// turn for the three-qubit angles.
    pub fn default_range(self) -> (f64, f64) {
        match self {
            Parameter::Phi | Parameter::Phase => (0.0, TAU),
            Parameter::Theta => (0.0, PI / 2.0),
            Parameter::Gamma | Parameter::Tau => (0.0, PI),
        }
    }

    /// Plot abscissa: φ/2π for BRS, 2θ/π for GHZ-like, angle/π otherwise.
    pub fn abscissa(self, value: f64) -> f64 {
        match self {
            Parameter::Phi => value / TAU,
            Parameter::Theta => 2.0 * value / PI,
            Parameter::Phase | Parameter::Gamma | Parameter::Tau => value / PI,
        }
    }
}

/// A one-parameter sweep of a family template.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub family: FamilySpec,
    pub parameter: Parameter,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub x: f64,
    #[serde(rename = "E")]
    pub measure: f64,
    #[serde(rename = "E_over_M")]
    pub measure_over_m: f64,
    pub eigenvalues: Vec<f64>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.start < self.stop) || !self.start.is_finite() || !self.stop.is_finite() {
            return Err(CliError::Usage(format!("sweep needs start < stop, got {} and {}", self.start, self.stop)));
        }
        if self.points < 2 {
            return Err(CliError::Usage(format!("sweep needs at least 2 points, got {}", self.points)));
        }
        self.at(self.start)?;
        Ok(())
    }

    /// Family member at `value` of the swept parameter.
    pub fn at(&self, value: f64) -> Result<FamilySpec, CliError> {
        let mut spec = self.family;
        let slot = match (&mut spec, self.parameter) {
            (FamilySpec::Brs { phi, .. }, Parameter::Phi) => phi,
            (FamilySpec::Ghzl { theta, .. }, Parameter::Theta) => theta,
            (FamilySpec::Ghzl { phase, .. }, Parameter::Phase) => phase,
            (FamilySpec::ThreeQubit { gamma, .. }, Parameter::Gamma) => gamma,
            (FamilySpec::ThreeQubit { tau, .. }, Parameter::Tau) => tau,
            (spec, p) => {
                return Err(CliError::Usage(format!("family {} has no parameter {}", spec.name(), p.name())));
            }
        };
        *slot = value;
        Ok(spec)
    }

    pub fn value(&self, index: usize) -> f64 {
        grid_value(self.start, self.stop, self.points, index)
    }

    pub fn rows(&self) -> Result<Vec<SweepRow>, CliError> {
        self.validate()?;
        (0..self.points)
            .into_par_iter()
            .map(|i| {
                let value = self.value(i);
                let spec = self.at(value)?;
                let em = entanglement_metric(&spec.state()?);
                let spectrum = em.spectrum(DEFAULT_RANK_TOL)?;
                Ok(SweepRow {
                    x: self.parameter.abscissa(value),
                    measure: em.measure,
                    measure_over_m: em.measure / spec.num_qubits() as f64,
                    eigenvalues: spectrum.eigenvalues,
                })
            })
            .collect()
    }
}

pub fn sweep_csv(num_qubits: usize, rows: &[SweepRow]) -> String {
    let mut out = String::from("x,E,E_over_M");
    for i in 1..=num_qubits {
        out.push_str(&format!(",eig_{i}"));
    }
    out.push('\n');
    for row in rows {
        let mut fields = vec![fmt(row.x), fmt(row.measure), fmt(row.measure_over_m)];
        fields.extend(row.eigenvalues.iter().map(|&v| fmt(v)));
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Grid of the three-qubit family's `E/3`.
#[derive(Clone, Debug)]
pub struct SurfaceSpec {
    pub gamma: (f64, f64),
    pub tau: (f64, f64),
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub gamma: f64,
    pub tau: f64,
    #[serde(rename = "E_over_3")]
    pub measure_over_3: f64,
}

impl SurfaceSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        for (name, (lo, hi)) in [("gamma", self.gamma), ("tau", self.tau)] {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(CliError::Usage(format!("{name} range needs start < stop, got {lo} and {hi}")));
            }
        }
        if self.points < 2 {
            return Err(CliError::Usage(format!("surface needs at least 2 points, got {}", self.points)));
        }
        Ok(())
    }

    /// Row-major: γ outer, τ inner.
    pub fn points(&self) -> Result<Vec<SurfacePoint>, CliError> {
        self.validate()?;
        let n = self.points;
        (0..n * n)
            .into_par_iter()
            .map(|index| {
                let gamma = grid_value(self.gamma.0, self.gamma.1, n, index / n);
                let tau = grid_value(self.tau.0, self.tau.1, n, index % n);
                let e = entanglement_measure(&families::three_qubit_state(gamma, tau)?);
                Ok(SurfacePoint { gamma, tau, measure_over_3: e / 3.0 })
            })
            .collect()
    }
}

pub fn surface_csv(points: &[SurfacePoint]) -> String {
    let mut out = String::from("gamma,tau,E_over_3\n");
    for p in points {
        out.push_str(&format!("{},{},{}\n", fmt(p.gamma), fmt(p.tau), fmt(p.measure_over_3)));
    }
    out
}

/// `start + (stop − start)·i/(points − 1)`, exact at both ends.
pub fn grid_value(start: f64, stop: f64, points: usize, index: usize) -> f64 {
    if index + 1 == points {
        stop
    } else {
        start + (stop - start) * index as f64 / (points - 1) as f64
    }
}

/// Shortest representation that parses back to the same double.
pub fn fmt(x: f64) -> String {
    format!("{x:?}")
}
