use std::fs;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use entdist::{FamilySpec, StateVector};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Brs,
    Ghzl,
    Threeq,
}

/// Family parameters shared by every subcommand that builds a family member.
#[derive(Args, Clone, Debug, Default)]
pub struct FamilyArgs {
    /// Number of qubits (brs, ghzl).
    #[arg(long)]
    pub m: Option<usize>,
    /// BRS phase φ in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// GHZ-like mixing angle θ in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// GHZ-like relative phase in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub phase: Option<f64>,
    /// Three-qubit angle γ in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// Three-qubit angle τ in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<f64>,
}

/// Where the input state comes from: a family, a family-spec JSON file, or a
/// state file.
#[derive(Args, Clone, Debug)]
pub struct SourceArgs {
    #[arg(long, value_enum, conflicts_with_all = ["state_file", "spec_file"])]
    pub family: Option<Family>,
    #[command(flatten)]
    pub params: FamilyArgs,
    /// JSON state file `{"m", "re", "im"}`.
    #[arg(long, conflicts_with = "spec_file")]
    pub state_file: Option<PathBuf>,
    /// JSON family spec `{"family": "brs"|"ghzl"|"threeq", ...}`.
    #[arg(long)]
    pub spec_file: Option<PathBuf>,
}

impl SourceArgs {
    pub fn state(&self) -> Result<StateVector, CliError> {
        if let Some(path) = &self.state_file {
            let text = read(path)?;
            return Ok(StateVector::from_json(&text)?);
        }
        if let Some(path) = &self.spec_file {
            let text = read(path)?;
            let spec: FamilySpec = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            return Ok(spec.state()?);
        }
        match self.family {
            Some(family) => Ok(self.params.spec(family)?.state()?),
            None => Err(CliError::Usage("one of --family, --state-file or --spec-file is required".into())),
        }
    }
}

impl FamilyArgs {
    /// Builds a spec, requiring every parameter the family uses.
    pub fn spec(&self, family: Family) -> Result<FamilySpec, CliError> {
        self.spec_with_defaults(family, None)
    }

    /// Like [`FamilyArgs::spec`], but `swept` may be missing and is filled
    /// with zero.
    pub fn spec_with_defaults(&self, family: Family, swept: Option<&str>) -> Result<FamilySpec, CliError> {
        let need = |value: Option<f64>, name: &str| match value {
            Some(v) => Ok(v),
            None if swept == Some(name) => Ok(0.0),
            None => Err(CliError::Usage(format!("--{name} is required for this family"))),
        };
        let m = || self.m.ok_or_else(|| CliError::Usage("--m is required for this family".into()));
        let spec = match family {
            Family::Brs => FamilySpec::Brs { m: m()?, phi: need(self.phi, "phi")? },
            Family::Ghzl => FamilySpec::Ghzl {
                m: m()?,
                theta: need(self.theta, "theta")?,
                phase: self.phase.unwrap_or(0.0),
            },
            Family::Threeq => FamilySpec::ThreeQubit { gamma: need(self.gamma, "gamma")?, tau: need(self.tau, "tau")? },
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
