//! Evolution matrix against a direct integration of the equations of motion
//!
//!     R̈ⱼ + Ω² Rⱼ + γ (Ṙ₁ + Ṙ₂) = 0,   Pⱼ = Ṙⱼ,
//!
//! and determinant checks against an independent LU factorisation.

use nalgebra::{Matrix4, Vector4};
use proptest::prelude::*;
use qbm_core::{
    evolution_matrix, evolve_covariance, two_mode_squeezed_covariance, SymplecticForm, SystemParams,
};

/// Classical RK4 on y = (R₁, P₁, R₂, P₂).
fn rk4(params: &SystemParams, y0: Vector4<f64>, t: f64, steps: usize) -> Vector4<f64> {
    let (w2, g) = (params.omega().powi(2), params.gamma());
    let f = |y: &Vector4<f64>| {
        let drag = g * (y[1] + y[3]);
        Vector4::new(y[1], -w2 * y[0] - drag, y[3], -w2 * y[2] - drag)
    };
    let h = t / steps as f64;
    let mut y = y0;
    for _ in 0..steps {
        let k1 = f(&y);
        let k2 = f(&(y + k1 * (h / 2.0)));
        let k3 = f(&(y + k2 * (h / 2.0)));
        let k4 = f(&(y + k3 * h));
        y += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
    y
}

/// Evolution matrix assembled column by column from RK4 runs, in the
/// normalised coordinates (√Ω R, P/√Ω).
fn ode_matrix(params: &SystemParams, t: f64) -> Matrix4<f64> {
    let s = params.omega().sqrt();
    let to_canonical = Vector4::new(1.0 / s, s, 1.0 / s, s);
    let to_normalized = Vector4::new(s, 1.0 / s, s, 1.0 / s);
    let mut m = Matrix4::zeros();
    for k in 0..4 {
        let mut x0 = Vector4::zeros();
        x0[k] = 1.0;
        let y = rk4(params, x0.component_mul(&to_canonical), t, 4000);
        m.set_column(k, &y.component_mul(&to_normalized));
    }
    m
}

#[test]
fn columns_match_ode_integration() {
    for &(omega, gamma) in &[(1.0, 0.1), (1.0, 0.0), (1.0, 0.01), (1.7, 0.5), (0.6, 0.3)] {
        let p = SystemParams::new(omega, gamma, 50.0, 0.0).unwrap();
        for &t in &[0.1, 0.3, 0.5, 1.0] {
            let diff = (evolution_matrix(t, &p).matrix() - ode_matrix(&p, t))
                .abs()
                .max();
            assert!(diff < 1e-8, "Ω={omega} γ={gamma} t={t}: {diff:e}");
        }
    }
}

#[test]
fn columns_satisfy_equations_of_motion() {
    let p = SystemParams::new(1.0, 0.1, 50.0, 0.0).unwrap();
    let (w, g) = (p.omega(), p.gamma());
    let h = 1e-4;
    // Positions in canonical units: row 0 and row 2 divided by √Ω.
    let position =
        |t: f64, col: usize, row: usize| evolution_matrix(t, &p).matrix()[(row, col)] / w.sqrt();
    for &t in &[0.1, 0.5, 1.0] {
        for col in 0..4 {
            let mut residual: f64 = 0.0;
            for (own, other) in [(0, 2), (2, 0)] {
                let x = |s: f64| position(s, col, own);
                let y = |s: f64| position(s, col, other);
                let acc = (x(t + h) - 2.0 * x(t) + x(t - h)) / (h * h);
                let vel = (x(t + h) - x(t - h)) / (2.0 * h);
                let vel_other = (y(t + h) - y(t - h)) / (2.0 * h);
                residual = residual.max((acc + w * w * x(t) + g * vel + g * vel_other).abs());
            }
            assert!(residual < 1e-6, "t={t} column {col}: {residual:e}");
        }
    }
}

#[test]
fn symplectic_without_damping() {
    let p = SystemParams::new(1.3, 0.0, 50.0, 0.0).unwrap();
    let gamma = SymplecticForm::matrix();
    for k in 0..=20 {
        let c = *evolution_matrix(0.05 * k as f64, &p).matrix();
        assert!((c.transpose() * gamma * c - gamma).abs().max() < 1e-10);
    }
}

/// Gaussian elimination with partial pivoting.
fn lu_determinant(mut m: Matrix4<f64>) -> f64 {
    let mut det = 1.0;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&a, &b| m[(a, col)].abs().total_cmp(&m[(b, col)].abs()))
            .unwrap();
        if pivot != col {
            m.swap_rows(pivot, col);
            det = -det;
        }
        let d = m[(col, col)];
        det *= d;
        for row in col + 1..4 {
            let factor = m[(row, col)] / d;
            for k in col..4 {
                m[(row, k)] -= factor * m[(col, k)];
            }
        }
    }
    det
}

#[test]
fn evolved_determinant_matches_lu() {
    let p = SystemParams::new(1.0, 0.1, 50.0, 0.0).unwrap();
    let cov = evolve_covariance(&two_mode_squeezed_covariance(0.1), 0.2, &p, 1e-8).unwrap();
    let lu = lu_determinant(*cov.matrix());
    assert!((cov.determinant() - lu).abs() < 1e-10);
    let b = qbm_core::block_determinants(&cov).unwrap();
    assert!((b.det_full - lu).abs() < 1e-10);
}

proptest! {
    #[test]
    fn determinant_decays_as_exp(t in 0.0..3.0f64, gamma in 0.0..0.9f64, omega in 0.95..3.0f64) {
        let p = SystemParams::new(omega, gamma, 50.0, 0.0).unwrap();
        let det = lu_determinant(*evolution_matrix(t, &p).matrix());
        prop_assert!((det - (-2.0 * gamma * t).exp()).abs() < 1e-9);
    }

    #[test]
    fn exchange_symmetric(t in 0.0..3.0f64, gamma in 0.0..0.5f64) {
        let p = SystemParams::new(1.0, gamma, 50.0, 0.0).unwrap();
        let c = *evolution_matrix(t, &p).matrix();
        let swap = Matrix4::new(
            0.0, 0.0, 1.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
            1.0, 0.0, 0.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
        );
        prop_assert!((swap * c * swap - c).abs().max() < 1e-14);
    }
}
