use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::bath::sigma_matrix;
use crate::dynamics::evolution_matrix;
use crate::entanglement::{symplectic_invariants, EntanglementReport, SEPARABILITY_TOL};
use crate::error::{Error, Result};
use crate::model::{two_mode_squeezed_covariance, CovarianceMatrix, SystemParams};

/// Bisection steps used to refine the disentanglement time inside a grid cell.
pub const BISECTION_STEPS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OutputFormat {
    Csv,
    Svg,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub params: SystemParams,
    pub squeezing: f64,
    pub t_start: f64,
    pub t_end: f64,
    /// Number of grid points, endpoints included.
    pub steps: usize,
    pub quad_tol: f64,
    pub outputs: BTreeSet<OutputFormat>,
}

impl SweepConfig {
    pub fn new(params: SystemParams, squeezing: f64) -> Self {
        Self {
            params,
            squeezing,
            t_start: 0.0,
            t_end: 1.0,
            steps: 200,
            quad_tol: 1e-8,
            outputs: BTreeSet::from([OutputFormat::Csv]),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.squeezing.is_finite() {
            return Err(Error::invalid("r", "must be finite"));
        }
        if !(self.t_start.is_finite() && self.t_start >= 0.0) {
            return Err(Error::invalid(
                "t_start",
                format!("must be >= 0, got {}", self.t_start),
            ));
        }
        if !(self.t_end.is_finite() && self.t_end > self.t_start) {
            return Err(Error::invalid(
                "t_end",
                format!("must exceed t_start ({}), got {}", self.t_start, self.t_end),
            ));
        }
        if self.steps < 2 {
            return Err(Error::invalid(
                "steps",
                format!("must be >= 2, got {}", self.steps),
            ));
        }
        if !(self.quad_tol > 0.0 && self.quad_tol <= 1e-3) {
            return Err(Error::invalid(
                "quad_tol",
                format!("must lie in (0, 1e-3], got {}", self.quad_tol),
            ));
        }
        Ok(())
    }

    pub fn times(&self) -> Vec<f64> {
        let n = self.steps - 1;
        let span = self.t_end - self.t_start;
        (0..self.steps)
            .map(|k| {
                if k == n {
                    self.t_end
                } else {
                    self.t_start + span * k as f64 / n as f64
                }
            })
            .collect()
    }

    pub fn initial_state(&self) -> CovarianceMatrix {
        two_mode_squeezed_covariance(self.squeezing)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub reports: Vec<EntanglementReport>,
    /// First time λ₋ rises through 1/2, refined by bisection.
    pub t_de: Option<f64>,
}

impl SweepResult {
    /// Grid cells `(t_before, t_after)` in which the state turns separable.
    pub fn separability_onsets(&self) -> Vec<(f64, f64)> {
        self.reports
            .windows(2)
            .filter(|w| !w[0].separable && w[1].separable)
            .map(|w| (w[0].time, w[1].time))
            .collect()
    }

    /// First grid time at which the negativity has dropped to zero after
    /// being positive.
    pub fn negativity_vanishing_time(&self) -> Option<f64> {
        self.reports
            .windows(2)
            .find(|w| w[0].negativity > 0.0 && w[1].negativity == 0.0)
            .map(|w| w[1].time)
    }
}

/// `(ΔX)²(t) = 𝒞(t) (ΔX)²(0) 𝒞ᵀ(t) + Σ(t)`.
pub fn evolve_covariance(
    initial: &CovarianceMatrix,
    t: f64,
    params: &SystemParams,
    quad_tol: f64,
) -> Result<CovarianceMatrix> {
    let propagated = evolution_matrix(t, params).propagate(initial);
    let noise = sigma_matrix(t, params, quad_tol)?;
    let evolved = CovarianceMatrix::from_symmetrized(propagated + noise.matrix());
    CovarianceMatrix::new(*evolved.matrix())
}

fn report_at(
    config: &SweepConfig,
    initial: &CovarianceMatrix,
    t: f64,
) -> Result<EntanglementReport> {
    evolve_covariance(initial, t, &config.params, config.quad_tol)
        .and_then(|cov| EntanglementReport::analyze(t, &cov))
        .map_err(|e| e.at_time(t))
}

fn lambda_minus_at(config: &SweepConfig, initial: &CovarianceMatrix, t: f64) -> Result<f64> {
    evolve_covariance(initial, t, &config.params, config.quad_tol)
        .and_then(|cov| symplectic_invariants(&cov))
        .map(|inv| inv.lambda_minus)
        .map_err(|e| e.at_time(t))
}

/// Evaluates every grid point (in parallel, order preserved) and locates
/// the first entangled → separable transition.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let initial = config.initial_state();
    let reports = config
        .times()
        .into_par_iter()
        .map(|t| report_at(config, &initial, t))
        .collect::<Result<Vec<_>>>()?;

    let threshold = 0.5 - SEPARABILITY_TOL;
    let t_de = match reports
        .windows(2)
        .find(|w| !w[0].separable && w[1].separable)
    {
        None => None,
        Some(cell) => {
            let (mut lo, mut hi) = (cell[0].time, cell[1].time);
            for _ in 0..BISECTION_STEPS {
                let mid = 0.5 * (lo + hi);
                if lambda_minus_at(config, &initial, mid)? >= threshold {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Some(0.5 * (lo + hi))
        }
    };
    Ok(SweepResult { reports, t_de })
}
