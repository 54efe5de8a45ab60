//! Physical parameters, phase-space conventions and Gaussian state types.
//!
//! Phase-space vectors are interleaved `(X1, X2, X3, X4) = (√Ω R1, P1/√Ω, √Ω R2, P2/√Ω)`.
//! Units are ħ = k_B = 1 with time in ns and all rates in 1/ns.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix4, Vector4};

use crate::error::{Error, Result};

/// Absolute tolerance on `|C - Cᵀ|` for a covariance matrix.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Smallest eigenvalue still accepted as positive semidefinite.
pub const PSD_FLOOR: f64 = -1e-10;

/// Constants of the two-oscillator + field-bath model.
///
/// Both oscillators are identical with unit mass and couple with equal
/// strength `λ = √(γ M)` to the field at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    omega: f64,
    gamma: f64,
    cutoff: f64,
    temperature: f64,
    mass: f64,
}

impl SystemParams {
    /// Validates an underdamped parameter set (`0 ≤ γ < Ω`).
    pub fn new(omega: f64, gamma: f64, cutoff: f64, temperature: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::invalid(
                "omega",
                format!("must be finite and > 0, got {omega}"),
            ));
        }
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::invalid(
                "gamma",
                format!("must be finite and >= 0, got {gamma}"),
            ));
        }
        if gamma >= omega {
            return Err(Error::invalid(
                "gamma",
                format!(
                    "must be below omega (underdamped regime), got gamma={gamma} omega={omega}"
                ),
            ));
        }
        if !(cutoff.is_finite() && cutoff > 0.0) {
            return Err(Error::invalid(
                "lambda_cutoff",
                format!("must be finite and > 0, got {cutoff}"),
            ));
        }
        if !(temperature.is_finite() && temperature >= 0.0) {
            return Err(Error::invalid(
                "temperature",
                format!("must be finite and >= 0, got {temperature}"),
            ));
        }
        Ok(Self {
            omega,
            gamma,
            cutoff,
            temperature,
            mass: 1.0,
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Field coupling λ with λ² = γ M.
    pub fn coupling(&self) -> f64 {
        (self.gamma * self.mass).sqrt()
    }

    /// Center-of-mass ringing frequency `Ω_r = √(Ω² − γ²)`.
    pub fn damped_frequency(&self) -> f64 {
        ((self.omega - self.gamma) * (self.omega + self.gamma)).sqrt()
    }

    pub fn with_temperature(&self, temperature: f64) -> Result<Self> {
        Self::new(self.omega, self.gamma, self.cutoff, temperature)
    }
}

/// A point `(X1, X2, X3, X4)` in normalized phase space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpaceVector(pub Vector4<f64>);

impl PhaseSpaceVector {
    pub fn new(x: [f64; 4]) -> Self {
        Self(Vector4::from(x))
    }

    /// Builds the normalized vector from physical positions and momenta.
    pub fn from_canonical(r1: f64, p1: f64, r2: f64, p2: f64, omega: f64) -> Self {
        let s = omega.sqrt();
        Self::new([s * r1, p1 / s, s * r2, p2 / s])
    }

    pub fn as_vector(&self) -> &Vector4<f64> {
        &self.0
    }
}

/// Symmetrized second moments `⟨{X_i, X_j}⟩` of a zero-mean Gaussian state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix(Matrix4<f64>);

impl CovarianceMatrix {
    /// Checks symmetry and positive semidefiniteness.
    pub fn new(entries: Matrix4<f64>) -> Result<Self> {
        let asym = (entries - entries.transpose()).abs().max();
        if !(asym <= SYMMETRY_TOL) {
            return Err(Error::invalid(
                "covariance",
                format!("not symmetric (max |C - Cᵀ| = {asym:e})"),
            ));
        }
        let min_eig = entries.symmetric_eigenvalues().min();
        if !(min_eig >= PSD_FLOOR) {
            return Err(Error::invalid(
                "covariance",
                format!("not positive semidefinite (smallest eigenvalue {min_eig:e})"),
            ));
        }
        Ok(Self(entries))
    }

    /// Symmetrizes `entries` without validating positivity. Used for
    /// matrices produced by the exact evolution, which are symmetric up to
    /// roundoff by construction.
    pub fn from_symmetrized(entries: Matrix4<f64>) -> Self {
        Self((entries + entries.transpose()) * 0.5)
    }

    pub fn from_rows(rows: [[f64; 4]; 4]) -> Result<Self> {
        Self::new(Matrix4::from_fn(|i, j| rows[i][j]))
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn to_rows(&self) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.0[(i, j)];
            }
        }
        out
    }

    /// Diagonal block `D` of oscillator 1.
    pub fn block_d(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 0).into_owned()
    }

    /// Diagonal block of oscillator 2.
    pub fn block_d2(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(2, 2).into_owned()
    }

    /// Cross-correlation block `A`.
    pub fn block_a(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.0.symmetric_eigenvalues().min()
    }
}

/// The commutator matrix Γ with `[X_i, X_j] = i Γ_ij`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SymplecticForm;

impl SymplecticForm {
    pub fn matrix() -> Matrix4<f64> {
        Matrix4::new(
            0.0, 1.0, 0.0, 0.0, //
            -1.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 1.0, //
            0.0, 0.0, -1.0, 0.0,
        )
    }
}

/// Partial mirror reflection `P2 → −P2`, η = diag(1, 1, 1, −1).
#[derive(Debug, Clone, Copy, Default)]
pub struct MirrorReflection;

impl MirrorReflection {
    pub fn matrix() -> Matrix4<f64> {
        Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, 1.0, -1.0))
    }
}

/// Covariance of the two-mode squeezed vacuum with squeezing `r`.
pub fn two_mode_squeezed_covariance(r: f64) -> CovarianceMatrix {
    let c = 0.5 * (2.0 * r).cosh();
    let s = 0.5 * (2.0 * r).sinh();
    CovarianceMatrix(Matrix4::new(
        c, 0.0, -s, 0.0, //
        0.0, c, 0.0, s, //
        -s, 0.0, c, 0.0, //
        0.0, s, 0.0, c,
    ))
}

/// `η C ηᵀ`: negates the off-diagonal entries of row and column 4.
pub fn apply_mirror(cov: &CovarianceMatrix) -> CovarianceMatrix {
    let mut m = cov.0;
    for k in 0..3 {
        m[(3, k)] = -m[(3, k)];
        m[(k, 3)] = -m[(k, 3)];
    }
    CovarianceMatrix(m)
}

/// Gaussian Wigner function `W(x) = (2π)⁻² det(C)^(-1/2) exp(−½ xᵀ C⁻¹ x)`.
pub fn wigner_density(cov: &CovarianceMatrix, point: &PhaseSpaceVector) -> Result<f64> {
    let det = cov.determinant();
    if !(det > 1e-300) {
        return Err(Error::SingularCovariance { det });
    }
    let chol = cov.0.cholesky().ok_or(Error::SingularCovariance { det })?;
    let x = point.0;
    let quad = x.dot(&chol.solve(&x));
    Ok((-0.5 * quad).exp() / ((2.0 * PI).powi(2) * det.sqrt()))
}
