//! Environment-induced fluctuations Σ(t) from the common field bath.
//!
//! ```text
//! Σ_jl(t) = λ²/(2π) ∫₀^∞ dω ω e^{−ω/Λ} coth(βω/2) ∬₀ᵗ g_j̃(t−s) cos ω(s−s′) g_l̃(t−s′) ds ds′
//! ```
//!
//! with `g_j̃ = g1` on position rows and `g2 = ġ1` on momentum rows. The inner
//! double integral equals `Re[F_a F_b*]` with `F_a(ω,t) = ∫₀ᵗ g_a(t−s) e^{iωs} ds`,
//! which has a closed form because `g1`, `g2` are sums of two complex
//! exponentials. That leaves one smooth ω integral per entry.
//!
//! Both oscillators see the same field, so Σ only depends on index parity
//! and annihilates the relative modes.

use std::f64::consts::PI;

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::dynamics::{mode_g1, mode_g2};
use crate::error::{Error, Result};
use crate::model::SystemParams;
use crate::quadrature::{self, Tolerance};

/// Default upper frequency in units of the cutoff Λ.
pub const DEFAULT_CUTOFF_MULTIPLE: f64 = 40.0;

/// Center-of-mass response function entering a row of Σ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResponseMode {
    /// `g1`, position response.
    Position = 1,
    /// `g2 = ġ1`, momentum response.
    Momentum = 2,
}

impl TryFrom<u8> for ResponseMode {
    type Error = Error;

    fn try_from(a: u8) -> Result<Self> {
        match a {
            1 => Ok(ResponseMode::Position),
            2 => Ok(ResponseMode::Momentum),
            _ => Err(Error::invalid("mode", format!("must be 1 or 2, got {a}"))),
        }
    }
}

/// Field spectral weight `ω e^{−ω/Λ} coth(ω/2T)` and the `λ²/2π` prefactor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralKernel {
    cutoff: f64,
    temperature: f64,
    prefactor: f64,
}

impl SpectralKernel {
    pub fn new(params: &SystemParams) -> Self {
        Self {
            cutoff: params.cutoff(),
            temperature: params.temperature(),
            prefactor: params.coupling().powi(2) / (2.0 * PI),
        }
    }

    pub fn prefactor(&self) -> f64 {
        self.prefactor
    }

    pub fn weight(&self, omega: f64) -> f64 {
        let damping = (-omega / self.cutoff).exp();
        if self.temperature == 0.0 {
            return omega * damping;
        }
        // ω coth(ω/2T) = 2T · x/tanh(x), x = ω/2T
        let x = omega / (2.0 * self.temperature);
        let x_coth = if x < 1e-4 {
            1.0 + x * x / 3.0
        } else {
            x / x.tanh()
        };
        2.0 * self.temperature * x_coth * damping
    }

    /// Upper bound on `∫_{ω_max}^∞ weight(ω) dω`, using `ω coth(ω/2T) ≤ ω + 2T`.
    pub fn tail_integral_bound(&self, omega_max: f64) -> f64 {
        let l = self.cutoff;
        (-omega_max / l).exp() * l * (2.0 * self.temperature + omega_max + l)
    }
}

/// `(e^{zt} − 1)/z`, series near `zt = 0`.
fn exp_ratio(z: Complex64, t: f64) -> Complex64 {
    let w = z * t;
    if w.norm() < 0.2 {
        // Σ_{n≥0} wⁿ/(n+1)!
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for n in 1..14 {
            term = term * w / (n as f64 + 1.0);
            sum += term;
        }
        sum * t
    } else {
        (w.exp() - 1.0) / z
    }
}

/// `G_a(ω,t) = ∫₀ᵗ g_a(u) e^{−iωu} du`; `F_a = e^{iωt} G_a`.
fn response_integral(mode: ResponseMode, omega: f64, t: f64, params: &SystemParams) -> Complex64 {
    let gamma = params.gamma();
    let omega_r = params.damped_frequency();
    let kp = Complex64::new(-gamma, omega_r);
    let km = Complex64::new(-gamma, -omega_r);
    let shift = Complex64::new(0.0, omega);
    let ep = exp_ratio(kp - shift, t);
    let em = exp_ratio(km - shift, t);
    let denom = kp - km;
    match mode {
        ResponseMode::Position => (ep - em) / denom,
        ResponseMode::Momentum => (kp * ep - km * em) / denom,
    }
}

/// `F_a(ω,t) = ∫₀ᵗ g_a(t−s) e^{iωs} ds` in closed form (`a` = 1 for `g1`, 2 for `g2`).
pub fn response_transform(a: u8, omega: f64, t: f64, params: &SystemParams) -> Result<Complex64> {
    let mode = ResponseMode::try_from(a)?;
    check_time(t)?;
    if !(omega >= 0.0 && omega.is_finite()) {
        return Err(Error::invalid(
            "omega",
            format!("must be finite and >= 0, got {omega}"),
        ));
    }
    let phase = Complex64::from_polar(1.0, omega * t);
    Ok(phase * response_integral(mode, omega, t, params))
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            "t",
            format!("must be finite and >= 0, got {t}"),
        ))
    }
}

/// Σ(t) in normalized coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseMatrix(Matrix4<f64>);

impl NoiseMatrix {
    pub fn zero() -> Self {
        Self(Matrix4::zeros())
    }

    /// Fills the parity pattern from the three independent entries
    /// (already normalized).
    pub fn from_independent(position: f64, momentum: f64, cross: f64) -> Self {
        Self(Matrix4::from_fn(|i, j| match (i % 2, j % 2) {
            (0, 0) => position,
            (1, 1) => momentum,
            _ => cross,
        }))
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// `(Σ11, Σ22, Σ12)`.
    pub fn independent(&self) -> [f64; 3] {
        [self.0[(0, 0)], self.0[(1, 1)], self.0[(0, 1)]]
    }
}

/// Normalizes raw `(RR, PP, RP)` integrals to `(√Ω R, P/√Ω)` coordinates.
fn normalized(raw: [f64; 3], params: &SystemParams) -> NoiseMatrix {
    let omega = params.omega();
    NoiseMatrix::from_independent(raw[0] * omega, raw[1] / omega, raw[2])
}

fn response_bound(t: f64, params: &SystemParams) -> f64 {
    let omega_r = params.damped_frequency();
    let g1_bound = t * t.min(1.0 / omega_r);
    let g2_bound = t * (1.0 + params.gamma() / omega_r);
    g1_bound.max(g2_bound)
}

fn frequency_breakpoints(t: f64, params: &SystemParams, omega_max: f64) -> Vec<f64> {
    let cutoff = params.cutoff();
    // Panels no wider than one oscillation period of |F|² in ω, nor than Ω.
    let width = (2.0 * PI / t).min(params.omega());
    let dense_end = (8.0 * cutoff).min(omega_max);
    let n = (dense_end / width).ceil().max(1.0) as usize;
    let mut points: Vec<f64> = (0..=n).map(|k| dense_end * k as f64 / n as f64).collect();
    let mut edge = dense_end;
    while edge < omega_max {
        edge = (2.0 * edge).min(omega_max);
        points.push(edge);
    }
    points
}

/// Σ(t) by adaptive Gauss–Kronrod quadrature of the reduced ω integral.
///
/// `tol` is relative to the largest independent entry. The frequency
/// range starts at 40Λ and is extended until the analytic tail bound drops
/// below the same tolerance.
pub fn sigma_matrix(t: f64, params: &SystemParams, tol: f64) -> Result<NoiseMatrix> {
    sigma_matrix_with_cutoff(t, params, tol).map(|(sigma, _)| sigma)
}

/// Like [`sigma_matrix`], also returning the frequency cutoff ω_max at
/// which the tail bound fell under `tol`.
pub fn sigma_matrix_with_cutoff(
    t: f64,
    params: &SystemParams,
    tol: f64,
) -> Result<(NoiseMatrix, f64)> {
    check_args(t, tol)?;
    if t == 0.0 {
        return Ok((NoiseMatrix::zero(), 0.0));
    }
    let kernel = SpectralKernel::new(params);
    let bound = response_bound(t, params).powi(2) * kernel.prefactor();
    let mut omega_max = DEFAULT_CUTOFF_MULTIPLE * params.cutoff();
    for _ in 0..8 {
        let raw = truncated_raw(t, params, tol, omega_max)?;
        let scale = raw.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if bound * kernel.tail_integral_bound(omega_max) <= tol * scale {
            return Ok((normalized(raw, params), omega_max));
        }
        omega_max *= 2.0;
    }
    Err(Error::QuadratureNotConverged {
        evaluations: 0,
        error: bound * kernel.tail_integral_bound(omega_max),
        target: tol,
    })
}

/// Σ(t) with the frequency integral cut at a caller-chosen `omega_max`
/// (no tail check).
pub fn sigma_matrix_truncated(
    t: f64,
    params: &SystemParams,
    tol: f64,
    omega_max: f64,
) -> Result<NoiseMatrix> {
    check_args(t, tol)?;
    if !(omega_max.is_finite() && omega_max > 0.0) {
        return Err(Error::invalid(
            "omega_max",
            format!("must be > 0, got {omega_max}"),
        ));
    }
    if t == 0.0 {
        return Ok(NoiseMatrix::zero());
    }
    truncated_raw(t, params, tol, omega_max).map(|raw| normalized(raw, params))
}

fn check_args(t: f64, tol: f64) -> Result<()> {
    check_time(t)?;
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(Error::invalid(
            "quad_tol",
            format!("must lie in (0, 1e-3], got {tol}"),
        ));
    }
    Ok(())
}

fn truncated_raw(t: f64, params: &SystemParams, tol: f64, omega_max: f64) -> Result<[f64; 3]> {
    let kernel = SpectralKernel::new(params);
    let integrand = |omega: f64| {
        let g1 = response_integral(ResponseMode::Position, omega, t, params);
        let g2 = response_integral(ResponseMode::Momentum, omega, t, params);
        let w = kernel.weight(omega);
        [
            w * g1.norm_sqr(),
            w * g2.norm_sqr(),
            w * (g1 * g2.conj()).re,
        ]
    };
    let est = quadrature::integrate(
        integrand,
        &frequency_breakpoints(t, params, omega_max),
        Tolerance::relative(tol),
    )?;
    Ok(est.value.map(|v| v * kernel.prefactor()))
}

/// Brute-force Σ(t) for validation.
///
/// Composite trapezoid over `s, s′` on `grid` intervals and over ω on a
/// dense grid (linear on `[0, Λ]`, logarithmic on `[Λ, 40Λ]`, `4·grid`
/// intervals each). The double time sum factorizes exactly into
/// `|Σ_k w_k g(t−s_k) e^{iωs_k}|²`, which keeps the cost linear in `grid`.
/// Converges as `O(grid⁻²)`.
pub fn sigma_oracle(t: f64, params: &SystemParams, grid: usize) -> Result<NoiseMatrix> {
    check_time(t)?;
    if grid < 100 {
        return Err(Error::invalid(
            "grid",
            format!("must be >= 100, got {grid}"),
        ));
    }
    if t == 0.0 {
        return Ok(NoiseMatrix::zero());
    }
    let kernel = SpectralKernel::new(params);
    let h = t / grid as f64;
    let samples: Vec<(f64, f64, f64)> = (0..=grid)
        .map(|k| {
            let s = k as f64 * h;
            let w = if k == 0 || k == grid { 0.5 * h } else { h };
            (w, w * mode_g1(t - s, params), w * mode_g2(t - s, params))
        })
        .collect();

    let time_integrals = |omega: f64| {
        let step = Complex64::from_polar(1.0, omega * h);
        let mut phase = Complex64::new(1.0, 0.0);
        let (mut a1, mut a2) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for (k, &(_, wg1, wg2)) in samples.iter().enumerate() {
            if k % 256 == 0 {
                // re-anchor the phase recurrence
                phase = Complex64::from_polar(1.0, omega * k as f64 * h);
            }
            a1 += phase * wg1;
            a2 += phase * wg2;
            phase *= step;
        }
        let w = kernel.weight(omega);
        [
            w * a1.norm_sqr(),
            w * a2.norm_sqr(),
            w * (a1 * a2.conj()).re,
        ]
    };

    let cutoff = params.cutoff();
    let n = 4 * grid;
    let mut nodes: Vec<f64> = (0..=n).map(|k| cutoff * k as f64 / n as f64).collect();
    let ratio = DEFAULT_CUTOFF_MULTIPLE.ln() / n as f64;
    nodes.extend((1..=n).map(|k| cutoff * (ratio * k as f64).exp()));

    let values: Vec<[f64; 3]> = nodes.iter().map(|&w| time_integrals(w)).collect();
    let mut raw = [0.0; 3];
    for i in 1..nodes.len() {
        let dw = nodes[i] - nodes[i - 1];
        for k in 0..3 {
            raw[k] += 0.5 * dw * (values[i][k] + values[i - 1][k]);
        }
    }
    Ok(normalized(raw.map(|v| v * kernel.prefactor()), params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn fig2(temperature: f64) -> SystemParams {
        SystemParams::new(1.0, 0.1, 50.0, temperature).unwrap()
    }

    #[test]
    fn kernel_limits() {
        let hot = SpectralKernel::new(&fig2(0.7));
        assert_relative_eq!(hot.weight(1e-9), 1.4, max_relative = 1e-8);
        let cold = SpectralKernel::new(&fig2(0.0));
        assert_eq!(cold.weight(0.0), 0.0);
        assert_relative_eq!(cold.weight(1e-6), 1e-6, max_relative = 1e-6);
        for k in 1..400 {
            let w = k as f64 * 0.37;
            assert!(hot.weight(w) <= (1.4 + w) * (-w / 50.0).exp() * (1.0 + 1e-15));
            assert!(hot.weight(w) >= cold.weight(w) * (1.0 - 1e-15));
        }
    }

    #[test]
    fn transform_at_zero_time() {
        let p = fig2(0.0);
        assert_eq!(
            response_transform(1, 3.0, 0.0, &p).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        assert_eq!(
            response_transform(2, 3.0, 0.0, &p).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn transform_static_undamped() {
        let p = SystemParams::new(1.0, 0.0, 50.0, 0.0).unwrap();
        for &t in &[0.3, 1.0, 2.5] {
            let f = response_transform(1, 0.0, t, &p).unwrap();
            assert_relative_eq!(f.re, 1.0 - t.cos(), max_relative = 1e-13);
            assert!(f.im.abs() < 1e-15);
        }
    }

    #[test]
    fn transform_matches_high_precision_quadrature() {
        // mpmath quad of ∫₀ᵗ g_a(t−s) e^{iωs} ds, ω=2, t=0.8, Ω=1, γ=0.1
        let p = fig2(0.0);
        let f1 = response_transform(1, 2.0, 0.8, &p).unwrap();
        assert_relative_eq!(f1.re, 0.228_529_696_629_578_979_383, epsilon = 1e-13);
        assert_relative_eq!(f1.im, 0.139_240_641_695_857_014_684, epsilon = 1e-13);
        let f2 = response_transform(2, 2.0, 0.8, &p).unwrap();
        assert_relative_eq!(f2.re, 0.384_460_541_346_908_278_952, epsilon = 1e-13);
        assert_relative_eq!(f2.im, 0.457_059_393_259_157_958_766, epsilon = 1e-13);
    }

    #[test]
    fn transform_near_resonance_without_damping() {
        // γ = 0, ω = Ω: one exponent vanishes and the series branch is taken.
        let p = SystemParams::new(1.0, 0.0, 50.0, 0.0).unwrap();
        let t = 2.0;
        let f = response_transform(1, 1.0, t, &p).unwrap();
        // ∫₀ᵗ sin(t−s) e^{is} ds = e^{it}∫₀ᵗ sin u e^{−iu} du
        let inner = Complex64::new(t.sin().powi(2) / 2.0, -(t / 2.0 - (2.0 * t).sin() / 4.0));
        let expected = Complex64::from_polar(1.0, t) * inner;
        assert_relative_eq!(f.re, expected.re, epsilon = 1e-14);
        assert_relative_eq!(f.im, expected.im, epsilon = 1e-14);
    }

    #[test]
    fn bad_mode_index() {
        assert!(response_transform(3, 1.0, 1.0, &fig2(0.0)).is_err());
        assert!(response_transform(1, -1.0, 1.0, &fig2(0.0)).is_err());
    }

    #[test]
    fn sigma_zero_time() {
        let p = fig2(0.0);
        assert_eq!(sigma_matrix(0.0, &p, 1e-8).unwrap(), NoiseMatrix::zero());
        assert_eq!(sigma_oracle(0.0, &p, 200).unwrap(), NoiseMatrix::zero());
    }

    #[test]
    fn sigma_argument_checks() {
        let p = fig2(0.0);
        assert!(sigma_matrix(0.5, &p, 0.0).is_err());
        assert!(sigma_matrix(0.5, &p, 1e-2).is_err());
        assert!(sigma_matrix(-0.5, &p, 1e-8).is_err());
        assert!(sigma_oracle(0.5, &p, 99).is_err());
    }

    #[test]
    fn sigma_structure() {
        let s = sigma_matrix(0.5, &fig2(0.0), 1e-10).unwrap();
        let m = s.matrix();
        assert!(m[(0, 0)] > 0.0);
        assert_eq!(m[(0, 0)], m[(2, 2)]);
        assert_eq!(m[(0, 0)], m[(0, 2)]);
        assert_eq!(m[(1, 1)], m[(3, 3)]);
        assert_eq!(m[(1, 1)], m[(1, 3)]);
        assert_eq!(m[(0, 1)], m[(0, 3)]);
        assert_eq!(m[(0, 1)], m[(2, 1)]);
        assert_eq!(m[(0, 1)], m[(2, 3)]);
        assert_eq!(*m, m.transpose());
        for v in [
            nalgebra::Vector4::new(1.0, 0.0, -1.0, 0.0),
            nalgebra::Vector4::new(0.0, 1.0, 0.0, -1.0),
        ] {
            assert!((v.transpose() * m * v)[(0, 0)].abs() < 1e-12);
        }
        assert!(m.symmetric_eigenvalues().min() >= -1e-10);
    }

    #[test]
    fn sigma_zero_temperature_against_oracle() {
        let p = fig2(0.0);
        let fast = sigma_matrix(0.5, &p, 1e-10).unwrap();
        let slow = sigma_oracle(0.5, &p, 1600).unwrap();
        for (f, s) in fast.independent().iter().zip(slow.independent()) {
            assert_relative_eq!(*f, s, max_relative = 1e-4);
        }
    }

    #[test]
    fn sigma_grows_with_temperature() {
        let cold = fig2(0.0);
        let hot = fig2(1.0);
        for k in 1..=10 {
            let t = k as f64 * 0.1;
            let c = sigma_matrix(t, &cold, 1e-8).unwrap().independent()[0];
            let h = sigma_matrix(t, &hot, 1e-8).unwrap().independent()[0];
            assert!(h >= c, "t={t}: hot {h} < cold {c}");
        }
    }
}
