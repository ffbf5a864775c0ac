use std::str::FromStr;

use kerr4ls_core::{Complex64, SystemParams};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Kerr,
    Sweep,
    Evolve,
    Converge,
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "spectrum" => Ok(Command::Spectrum),
            "kerr" => Ok(Command::Kerr),
            "sweep" => Ok(Command::Sweep),
            "evolve" => Ok(Command::Evolve),
            "converge" => Ok(Command::Converge),
            other => Err(CliError::Config(format!("unknown command {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    /// One of the flat parameter keys, e.g. `delta_c` or `g_b_re`.
    pub parameter: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveSpec {
    pub t_start: f64,
    pub t_stop: f64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergeSpec {
    pub eps: Vec<f64>,
}

pub const DEFAULT_EPS_SCHEDULE: [f64; 3] = [5e-2, 2.5e-2, 1.25e-2];

/// The JSON document accepted by every command. Keys mirror
/// [`SystemParams`], with complex couplings split into `_re`/`_im`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub g_a_re: f64,
    #[serde(default)]
    pub g_a_im: f64,
    pub g_b_re: f64,
    #[serde(default)]
    pub g_b_im: f64,
    pub g_c_re: f64,
    #[serde(default)]
    pub g_c_im: f64,
    pub n_a: u32,
    pub n_b: u32,
    pub n_c: u32,
    pub delta_a: f64,
    pub delta_b: f64,
    pub delta_c: f64,
    #[serde(default)]
    pub phi: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evolve: Option<EvolveSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub converge: Option<ConvergeSpec>,
    /// Accepted for reproducibility bookkeeping; no command draws random numbers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ConfigFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn params(&self) -> SystemParams {
        SystemParams {
            g_a: Complex64::new(self.g_a_re, self.g_a_im),
            g_b: Complex64::new(self.g_b_re, self.g_b_im),
            g_c: Complex64::new(self.g_c_re, self.g_c_im),
            n_a: self.n_a,
            n_b: self.n_b,
            n_c: self.n_c,
            delta_a: self.delta_a,
            delta_b: self.delta_b,
            delta_c: self.delta_c,
            phi: self.phi,
        }
    }
}

pub const SWEEPABLE: [&str; 13] = [
    "g_a_re", "g_a_im", "g_b_re", "g_b_im", "g_c_re", "g_c_im", "n_a", "n_b", "n_c", "delta_a",
    "delta_b", "delta_c", "phi",
];

/// Returns `params` with one named field replaced. Photon numbers are rounded
/// to the nearest integer and must be non-negative.
pub fn with_parameter(
    params: &SystemParams,
    name: &str,
    value: f64,
) -> Result<SystemParams, CliError> {
    let mut p = *params;
    let photons = |v: f64| -> Result<u32, CliError> {
        let n = v.round();
        if !(0.0..=f64::from(u32::MAX)).contains(&n) {
            return Err(CliError::Config(format!(
                "{name} = {v} is not a valid photon number"
            )));
        }
        Ok(n as u32)
    };
    match name {
        "g_a_re" => p.g_a.re = value,
        "g_a_im" => p.g_a.im = value,
        "g_b_re" => p.g_b.re = value,
        "g_b_im" => p.g_b.im = value,
        "g_c_re" => p.g_c.re = value,
        "g_c_im" => p.g_c.im = value,
        "n_a" => p.n_a = photons(value)?,
        "n_b" => p.n_b = photons(value)?,
        "n_c" => p.n_c = photons(value)?,
        "delta_a" => p.delta_a = value,
        "delta_b" => p.delta_b = value,
        "delta_c" => p.delta_c = value,
        "phi" => p.phi = value,
        other => {
            return Err(CliError::Config(format!(
                "cannot sweep {other:?}; expected one of {}",
                SWEEPABLE.join(", ")
            )))
        }
    }
    Ok(p)
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if !SWEEPABLE.contains(&self.parameter.as_str()) {
            return Err(CliError::Config(format!(
                "cannot sweep {:?}; expected one of {}",
                self.parameter,
                SWEEPABLE.join(", ")
            )));
        }
        if self.count < 2 {
            return Err(CliError::Config("sweep count must be at least 2".into()));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(CliError::Config("sweep endpoints must be finite".into()));
        }
        if self.spacing == Spacing::Log && !(self.start > 0.0 && self.stop > 0.0) {
            return Err(CliError::Config(
                "log spacing requires positive endpoints".into(),
            ));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == self.count - 1 {
                    return self.stop;
                }
                let f = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + (self.stop - self.start) * f,
                    Spacing::Log => self.start * (self.stop / self.start).powf(f),
                }
            })
            .collect()
    }
}

impl EvolveSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.count < 2 {
            return Err(CliError::Config("evolve count must be at least 2".into()));
        }
        if !(self.t_start.is_finite() && self.t_stop.is_finite()) {
            return Err(CliError::Config("evolve times must be finite".into()));
        }
        Ok(())
    }

    pub fn times(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| self.t_start + (self.t_stop - self.t_start) * (i as f64 / last))
            .collect()
    }
}

/// A parsed configuration bound to a command and an output format.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub file: ConfigFile,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: Command, file: ConfigFile, format: Option<Format>) -> Self {
        let default = match command {
            Command::Kerr => Format::Json,
            _ => Format::Csv,
        };
        Self {
            command,
            file,
            format: format.unwrap_or(default),
        }
    }

    pub fn params(&self) -> SystemParams {
        self.file.params()
    }
}
