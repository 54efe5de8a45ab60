//! Homogeneous (noise-free) dynamics of the two oscillators.
//!
//! The relative coordinate oscillates freely (`g0`), the center of mass is
//! damped (`g1`, `g2 = ġ1`). The 4×4 propagator in normalized coordinates is
//! assembled from these normal-mode functions.

use nalgebra::Matrix4;

use crate::model::{CovarianceMatrix, SystemParams};

/// Below this phase the trig ratios switch to their Taylor series.
const SERIES_THRESHOLD: f64 = 1e-4;

/// `sin(w t) / w`, accurate as `w t → 0`.
fn sin_over(w: f64, t: f64) -> f64 {
    let x = w * t;
    if x.abs() < SERIES_THRESHOLD {
        let x2 = x * x;
        t * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0))))
    } else {
        x.sin() / w
    }
}

/// `cos(x)` with the same small-argument series.
fn cos_series(x: f64) -> f64 {
    if x.abs() < SERIES_THRESHOLD {
        let x2 = x * x;
        1.0 - x2 / 2.0 * (1.0 - x2 / 12.0 * (1.0 - x2 / 30.0 * (1.0 - x2 / 56.0)))
    } else {
        x.cos()
    }
}

/// Normal-mode functions and the derivatives needed by the propagator,
/// evaluated at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeFunctions {
    pub g0: f64,
    pub g0_dot: f64,
    pub g1: f64,
    pub g2: f64,
    pub g2_dot: f64,
}

impl ModeFunctions {
    pub fn at(t: f64, params: &SystemParams) -> Self {
        let omega = params.omega();
        let gamma = params.gamma();
        let omega_r = params.damped_frequency();
        let decay = (-gamma * t).exp();
        let s_r = sin_over(omega_r, t);
        let g1 = decay * s_r;
        let g2 = decay * (cos_series(omega_r * t) - gamma * s_r);
        Self {
            g0: sin_over(omega, t),
            g0_dot: cos_series(omega * t),
            g1,
            g2,
            // g̈1 = −2γ ġ1 − Ω² g1
            g2_dot: -2.0 * gamma * g2 - omega * omega * g1,
        }
    }
}

/// Undamped relative-mode solution `sin(Ωt)/Ω`.
pub fn mode_g0(t: f64, params: &SystemParams) -> f64 {
    sin_over(params.omega(), t)
}

/// Damped center-of-mass solution `e^{−γt} sin(Ω_r t)/Ω_r`.
pub fn mode_g1(t: f64, params: &SystemParams) -> f64 {
    (-params.gamma() * t).exp() * sin_over(params.damped_frequency(), t)
}

/// `ġ1(t) = e^{−γt} [cos(Ω_r t) − (γ/Ω_r) sin(Ω_r t)]`.
pub fn mode_g2(t: f64, params: &SystemParams) -> f64 {
    let omega_r = params.damped_frequency();
    let gamma = params.gamma();
    (-gamma * t).exp() * (cos_series(omega_r * t) - gamma * sin_over(omega_r, t))
}

/// Propagator of the phase-space means in normalized coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionMatrix(Matrix4<f64>);

impl EvolutionMatrix {
    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// `C V Cᵀ`.
    pub fn propagate(&self, cov: &CovarianceMatrix) -> Matrix4<f64> {
        self.0 * cov.matrix() * self.0.transpose()
    }
}

/// Builds 𝒞(t).
///
/// With `h1 = (g1 + g0)/2`, `h3 = (g1 − g0)/2`, `h2 = ḣ1`, `h4 = ḣ3` and
/// `f_{2j−1} = h_{2j} + γ g1`, `f_{2j} = ḟ_{2j−1}` the physical-coordinate layout is
///
/// ```text
/// f1 h1 f3 h3
/// f2 h2 f4 h4
/// f3 h3 f1 h1
/// f4 h4 f2 h2
/// ```
///
/// Position-row/momentum-column entries are multiplied by Ω and
/// momentum-row/position-column entries divided by Ω to act on
/// `(√Ω R, P/√Ω)`.
pub fn evolution_matrix(t: f64, params: &SystemParams) -> EvolutionMatrix {
    let omega = params.omega();
    let gamma = params.gamma();
    let m = ModeFunctions::at(t, params);
    let g0_ddot = -omega * omega * m.g0;

    let h1 = 0.5 * (m.g1 + m.g0);
    let h3 = 0.5 * (m.g1 - m.g0);
    let h2 = 0.5 * (m.g2 + m.g0_dot);
    let h4 = 0.5 * (m.g2 - m.g0_dot);
    let h2_dot = 0.5 * (m.g2_dot + g0_ddot);
    let h4_dot = 0.5 * (m.g2_dot - g0_ddot);

    // ḣ2(0) = ḣ4(0) = −γ
    let f1 = h2 + gamma * m.g1;
    let f3 = h4 + gamma * m.g1;
    let f2 = h2_dot + gamma * m.g2;
    let f4 = h4_dot + gamma * m.g2;

    let (rp1, rp3) = (omega * h1, omega * h3);
    let (pr2, pr4) = (f2 / omega, f4 / omega);
    EvolutionMatrix(Matrix4::new(
        f1, rp1, f3, rp3, //
        pr2, h2, pr4, h4, //
        f3, rp3, f1, rp1, //
        pr4, h4, pr2, h2,
    ))
}
