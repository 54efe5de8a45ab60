//! Line-oriented `key = value` sweep configuration.
//!
//! ```text
//! # Fig. 3 bundle
//! omega = 1.0
//! gamma = 0.1
//! lambda_cutoff = 50
//! temperature = 0
//! r = 0.1
//! ```

use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::sweep::SweepConfig;
use crate::model::SystemParams;

pub const KEYS: [&str; 9] = [
    "omega",
    "gamma",
    "lambda_cutoff",
    "temperature",
    "r",
    "t_start",
    "t_end",
    "steps",
    "quad_tol",
];

/// Partially specified configuration. Later layers override earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigValues {
    pub omega: Option<f64>,
    pub gamma: Option<f64>,
    pub lambda_cutoff: Option<f64>,
    pub temperature: Option<f64>,
    pub r: Option<f64>,
    pub t_start: Option<f64>,
    pub t_end: Option<f64>,
    pub steps: Option<usize>,
    pub quad_tol: Option<f64>,
}

fn parse_float(key: &str, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::config(key, format!("expected a finite number, got `{value}`")))
}

impl ConfigValues {
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config(
                    format!("line {}", lineno + 1),
                    format!("expected `key = value`, got `{line}`"),
                )
            })?;
            out.set(key.trim(), value.trim())?;
        }
        Ok(out)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "omega" => self.omega = Some(parse_float(key, value)?),
            "gamma" => self.gamma = Some(parse_float(key, value)?),
            "lambda_cutoff" => self.lambda_cutoff = Some(parse_float(key, value)?),
            "temperature" => self.temperature = Some(parse_float(key, value)?),
            "r" => self.r = Some(parse_float(key, value)?),
            "t_start" => self.t_start = Some(parse_float(key, value)?),
            "t_end" => self.t_end = Some(parse_float(key, value)?),
            "quad_tol" => self.quad_tol = Some(parse_float(key, value)?),
            "steps" => {
                self.steps = Some(value.parse::<usize>().map_err(|_| {
                    Error::config(
                        key,
                        format!("expected a non-negative integer, got `{value}`"),
                    )
                })?)
            }
            _ => {
                return Err(Error::config(
                    key,
                    format!("unknown key (expected one of {})", KEYS.join(", ")),
                ))
            }
        }
        Ok(())
    }

    /// Values set in `other` win.
    pub fn overlay(self, other: &Self) -> Self {
        Self {
            omega: other.omega.or(self.omega),
            gamma: other.gamma.or(self.gamma),
            lambda_cutoff: other.lambda_cutoff.or(self.lambda_cutoff),
            temperature: other.temperature.or(self.temperature),
            r: other.r.or(self.r),
            t_start: other.t_start.or(self.t_start),
            t_end: other.t_end.or(self.t_end),
            steps: other.steps.or(self.steps),
            quad_tol: other.quad_tol.or(self.quad_tol),
        }
    }

    /// Fills unset values from the Fig.-2/3 defaults
    /// (Ω = 1, γ = 0.1, Λ = 50, T = 0, r = 0, 200 points on [0, 1] ns).
    pub fn to_sweep_config(&self) -> Result<SweepConfig> {
        let params = SystemParams::new(
            self.omega.unwrap_or(1.0),
            self.gamma.unwrap_or(0.1),
            self.lambda_cutoff.unwrap_or(50.0),
            self.temperature.unwrap_or(0.0),
        )?;
        let mut config = SweepConfig::new(params, self.r.unwrap_or(0.0));
        if let Some(v) = self.t_start {
            config.t_start = v;
        }
        if let Some(v) = self.t_end {
            config.t_end = v;
        }
        if let Some(v) = self.steps {
            config.steps = v;
        }
        if let Some(v) = self.quad_tol {
            config.quad_tol = v;
        }
        config.validate()?;
        Ok(config)
    }
}
