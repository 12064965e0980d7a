//! Flat `key = value` run configuration.
//!
//! ```text
//! # comment
//! u12 = 0.5
//! grid = 512
//! ```
//!
//! Keys are the [`ModelParams`] fields plus the run options `grid`, `seed`,
//! `gamma`, `omega_step` and `detuning`. Unknown keys and bad values are
//! errors naming the key and the line.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::ModelParams;
use crate::spectra::{DEFAULT_GAMMA, DEFAULT_OMEGA_STEP};

/// Largest accepted grid size.
pub const MAX_GRID: usize = 8192;

/// Options that steer a scenario rather than the model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunOptions {
    /// Mesh size l; each scenario has its own default when unset.
    pub grid: Option<usize>,
    pub seed: u64,
    pub gamma: f64,
    pub omega_step: f64,
    /// Laser detuning below the resonance; scenario default when unset.
    pub detuning: Option<f64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            grid: None,
            seed: 7,
            gamma: DEFAULT_GAMMA,
            omega_step: DEFAULT_OMEGA_STEP,
            detuning: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Config {
    pub params: ModelParams,
    pub options: RunOptions,
}

pub const KEYS: &[&str] = &[
    "u11", "u12", "u22", "eps21", "t1", "t2", "g_l", "g_c", "omega_l", "omega_c", "mu", "doping", "grid", "seed",
    "gamma", "omega_step", "detuning",
];

impl Config {
    /// Applies one assignment; `line` is 0 for command-line overrides.
    pub fn set(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        let err = |message: String| Error::Config {
            line,
            key: key.to_string(),
            message,
        };
        let value = value.trim();
        let number = || -> Result<f64> {
            let v: f64 = value
                .parse()
                .map_err(|_| err(format!("`{value}` is not a number")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(err(format!("`{value}` is not finite")))
            }
        };
        let non_negative = || -> Result<f64> {
            let v = number()?;
            if v < 0.0 {
                return Err(err(format!("{v} must be >= 0")));
            }
            Ok(v)
        };
        let positive = || -> Result<f64> {
            let v = number()?;
            if v <= 0.0 {
                return Err(err(format!("{v} must be > 0")));
            }
            Ok(v)
        };
        let p = &mut self.params;
        let o = &mut self.options;
        match key {
            "u11" => p.u11 = non_negative()?,
            "u12" => p.u12 = non_negative()?,
            "u22" => p.u22 = number()?,
            "eps21" => p.eps21 = number()?,
            "t1" => p.t1 = number()?,
            "t2" => p.t2 = number()?,
            "g_l" => p.g_l = number()?,
            "g_c" => p.g_c = number()?,
            "omega_l" => p.omega_l = number()?,
            "omega_c" => p.omega_c = number()?,
            "mu" => p.mu = number()?,
            "doping" => {
                let v = number()?;
                if !(0.0..1.0).contains(&v) {
                    return Err(err(format!("{v} must lie in [0, 1)")));
                }
                p.doping = v;
            }
            "grid" => {
                let l: usize = value
                    .parse()
                    .map_err(|_| err(format!("`{value}` is not a positive integer")))?;
                if l == 0 || l > MAX_GRID {
                    return Err(err(format!("{l} must lie in 1..={MAX_GRID}")));
                }
                o.grid = Some(l);
            }
            "seed" => {
                o.seed = value
                    .parse()
                    .map_err(|_| err(format!("`{value}` is not an unsigned integer")))?
            }
            "gamma" => o.gamma = positive()?,
            "omega_step" => o.omega_step = positive()?,
            "detuning" => o.detuning = Some(positive()?),
            _ => return Err(err(format!("unknown key; expected one of {}", KEYS.join(", ")))),
        }
        Ok(())
    }

    /// Parses and applies a `key=value` override.
    pub fn set_assignment(&mut self, assignment: &str) -> Result<()> {
        match assignment.split_once('=') {
            Some((k, v)) => self.set(k.trim(), v, 0),
            None => Err(Error::Config {
                line: 0,
                key: assignment.to_string(),
                message: "expected key=value".to_string(),
            }),
        }
    }
}

/// Parses configuration text on top of the defaults.
pub fn parse_config(text: &str) -> Result<Config> {
    let mut cfg = Config::default();
    apply_config(&mut cfg, text)?;
    Ok(cfg)
}

/// Applies configuration text to an existing configuration.
pub fn apply_config(cfg: &mut Config, text: &str) -> Result<()> {
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::Config {
            line,
            key: content.to_string(),
            message: "expected key = value".to_string(),
        })?;
        cfg.set(key.trim(), value, line)?;
    }
    Ok(())
}
