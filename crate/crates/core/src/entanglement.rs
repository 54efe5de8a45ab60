//! Uncertainty and separability analytics for two-mode Gaussian states.
//!
//! Everything is expressed through the local symplectic invariants
//! `|D|`, `|A|` and `det V` of a covariance matrix with equal diagonal
//! blocks, `V = [[D, A], [Aᵀ, D]]`:
//!
//! ```text
//! ζ±² = |D| + |A| ± √((|D| + |A|)² − det V)     (uncertainty: ζ₋ ≥ 1/2)
//! λ±² = |D| − |A| ± √((|D| − |A|)² − det V)     (separability: λ₋ ≥ 1/2)
//! ```
//!
//! λ± are the symplectic eigenvalues of the partially mirror-reflected state.

use nalgebra::{Matrix2, Matrix4};

use crate::error::{Error, Result};
use crate::model::{CovarianceMatrix, SymplecticForm};

/// Allowed mismatch between the two diagonal blocks.
pub const BLOCK_SYMMETRY_TOL: f64 = 1e-8;
/// Discriminants down to this value are clamped to zero.
pub const DISCRIMINANT_FLOOR: f64 = -1e-12;
/// `λ₋ ≥ 1/2 − SEPARABILITY_TOL` counts as separable.
pub const SEPARABILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockDeterminants {
    pub det_d: f64,
    pub det_a: f64,
    pub det_full: f64,
}

/// Determinants of the diagonal block, the cross block and the full matrix.
pub fn block_determinants(cov: &CovarianceMatrix) -> Result<BlockDeterminants> {
    let deviation = (cov.block_d() - cov.block_d2()).abs().max();
    if !(deviation <= BLOCK_SYMMETRY_TOL) {
        return Err(Error::AsymmetricBlocks { deviation });
    }
    Ok(BlockDeterminants {
        det_d: cov.block_d().determinant(),
        det_a: cov.block_a().determinant(),
        det_full: cov.determinant(),
    })
}

/// Returns `(small, large)` roots of `x² − 2 s x + det = 0`, i.e.
/// `s ∓ √disc` with `disc = s² − det`.
fn invariant_pair(s: f64, discriminant: f64, det_full: f64) -> Result<(f64, f64)> {
    if discriminant < DISCRIMINANT_FLOOR {
        return Err(Error::NegativeDiscriminant { discriminant });
    }
    let large = s + discriminant.max(0.0).sqrt();
    // det/large avoids cancellation in s − √disc.
    let small = if large > 0.0 { det_full / large } else { 0.0 };
    Ok((small.max(0.0).sqrt(), large.max(0.0).sqrt()))
}

/// `D₁₁A₂₂ + D₂₂A₁₁ − D₁₂A₂₁ − D₂₁A₁₂`, so that `|D + A| = |D| + |A| + m`.
fn mixed_determinant(d: &Matrix2<f64>, a: &Matrix2<f64>) -> f64 {
    d[(0, 0)] * a[(1, 1)] + d[(1, 1)] * a[(0, 0)] - d[(0, 1)] * a[(1, 0)] - d[(1, 0)] * a[(0, 1)]
}

/// Discriminants `(s_ζ² − det V, s_λ² − det V)`.
///
/// With a symmetric cross block `det V = |D + A||D − A|`, so both reduce to
/// `m²` and `m² − 4|D||A|`. These stay accurate near pure states, where the
/// generic differences cancel to rounding noise and the square root
/// amplifies it to ~1e-9.
fn discriminants(cov: &CovarianceMatrix, b: &BlockDeterminants) -> (f64, f64) {
    let a = cov.block_a();
    if (a - a.transpose()).abs().max() <= BLOCK_SYMMETRY_TOL {
        let m = mixed_determinant(&cov.block_d(), &a);
        (m * m, m * m - 4.0 * b.det_d * b.det_a)
    } else {
        let sz = b.det_d + b.det_a;
        let sl = b.det_d - b.det_a;
        (sz * sz - b.det_full, sl * sl - b.det_full)
    }
}

/// Symplectic eigenvalues `(ζ₋, ζ₊)` of the state.
pub fn symplectic_spectrum(cov: &CovarianceMatrix) -> Result<(f64, f64)> {
    let inv = symplectic_invariants(cov)?;
    Ok((inv.zeta_minus, inv.zeta_plus))
}

/// Symplectic eigenvalues `(λ₋, λ₊)` of the partially mirror-reflected state.
pub fn ppt_spectrum(cov: &CovarianceMatrix) -> Result<(f64, f64)> {
    let inv = symplectic_invariants(cov)?;
    Ok((inv.lambda_minus, inv.lambda_plus))
}

/// Symplectic eigenvalues from the spectrum of `√V Γ V Γᵀ √V`, whose
/// eigenvalues are `ζ₋², ζ₋², ζ₊², ζ₊²`. Works for any positive
/// semidefinite covariance (no block-structure requirement).
pub fn symplectic_spectrum_by_construction(cov: &CovarianceMatrix) -> (f64, f64) {
    let eig = cov.matrix().symmetric_eigen();
    let root_eigs = eig.eigenvalues.map(|v| v.max(0.0).sqrt());
    let root = eig.eigenvectors * Matrix4::from_diagonal(&root_eigs) * eig.eigenvectors.transpose();
    let gamma = SymplecticForm::matrix();
    let m = root * gamma * cov.matrix() * gamma.transpose() * root;
    let sym = (m + m.transpose()) * 0.5;
    let mut values: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    let low = 0.5 * (values[0] + values[1]);
    let high = 0.5 * (values[2] + values[3]);
    (low.max(0.0).sqrt(), high.max(0.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticInvariants {
    pub det_a: f64,
    pub det_d: f64,
    pub det_full: f64,
    pub zeta_minus: f64,
    pub zeta_plus: f64,
    pub lambda_minus: f64,
    pub lambda_plus: f64,
}

pub fn symplectic_invariants(cov: &CovarianceMatrix) -> Result<SymplecticInvariants> {
    let b = block_determinants(cov)?;
    let (disc_zeta, disc_lambda) = discriminants(cov, &b);
    let (zeta_minus, zeta_plus) = invariant_pair(b.det_d + b.det_a, disc_zeta, b.det_full)?;
    let (lambda_minus, lambda_plus) = invariant_pair(b.det_d - b.det_a, disc_lambda, b.det_full)?;
    Ok(SymplecticInvariants {
        det_a: b.det_a,
        det_d: b.det_d,
        det_full: b.det_full,
        zeta_minus,
        zeta_plus,
        lambda_minus,
        lambda_plus,
    })
}

/// Peres–Horodecki–Simon test: separable iff `λ₋ ≥ 1/2 − tol`.
pub fn separability_test(cov: &CovarianceMatrix, tol: f64) -> Result<bool> {
    let (lambda_minus, _) = ppt_spectrum(cov)?;
    Ok(lambda_minus >= 0.5 - tol)
}

/// `(N, E_N)`: negativity and logarithmic negativity (bits) from λ₋.
pub fn negativity_measures(lambda_minus: f64) -> Result<(f64, f64)> {
    if !(lambda_minus > 0.0) {
        return Err(Error::invalid(
            "lambda_minus",
            format!("must be > 0, got {lambda_minus}"),
        ));
    }
    let negativity = ((1.0 - 2.0 * lambda_minus) / (4.0 * lambda_minus)).max(0.0);
    let log_negativity = (-(2.0 * lambda_minus).log2()).max(0.0);
    Ok((negativity, log_negativity))
}

/// Standard form `[[d,0,a,0],[0,d,0,b],[a,0,d,0],[0,b,0,d]]` reached by local
/// rotations and squeezes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalForm {
    pub d: f64,
    pub a: f64,
    pub b: f64,
}

impl CanonicalForm {
    pub fn matrix(&self) -> Matrix4<f64> {
        let Self { d, a, b } = *self;
        Matrix4::new(
            d, 0.0, a, 0.0, //
            0.0, d, 0.0, b, //
            a, 0.0, d, 0.0, //
            0.0, b, 0.0, d,
        )
    }

    /// `(ζ₋², ζ₊²)` from `(d ± a)(d ± b)`.
    pub fn zeta_squared(&self) -> (f64, f64) {
        let Self { d, a, b } = *self;
        let p = (d + a) * (d + b);
        let q = (d - a) * (d - b);
        (p.min(q), p.max(q))
    }

    /// `(λ₋², λ₊²)` from `(d ± a)(d ∓ b)`.
    pub fn lambda_squared(&self) -> (f64, f64) {
        let Self { d, a, b } = *self;
        let p = (d + a) * (d - b);
        let q = (d - a) * (d + b);
        (p.min(q), p.max(q))
    }

    /// Both `(d + a)(d + b) ≥ 1/4` and `(d − a)(d − b) ≥ 1/4`.
    pub fn satisfies_uncertainty(&self, tol: f64) -> bool {
        self.zeta_squared().0 >= 0.25 - tol
    }

    /// Both `(d + a)(d − b) ≥ 1/4` and `(d − a)(d + b) ≥ 1/4`.
    pub fn is_separable(&self, tol: f64) -> bool {
        self.lambda_squared().0 >= 0.25 - tol
    }
}

fn rotation(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, -s, s, c)
}

/// Makes a 2×2 orthogonal matrix proper by flipping its second column.
fn proper(mut u: Matrix2<f64>) -> (Matrix2<f64>, f64) {
    if u.determinant() < 0.0 {
        u.set_column(1, &(-u.column(1)));
        (u, -1.0)
    } else {
        (u, 1.0)
    }
}

/// Canonical form together with the block-diagonal local symplectic map
/// `L` satisfying `L V Lᵀ = canonical.matrix()`.
pub fn canonical_transform(cov: &CovarianceMatrix) -> Result<(CanonicalForm, Matrix4<f64>)> {
    block_determinants(cov)?;
    let d_block = cov.block_d();
    let d_block = (d_block + d_block.transpose()) * 0.5;

    // Local rotation diagonalizing D.
    let eig = d_block.symmetric_eigen();
    let (u, _) = proper(eig.eigenvectors);
    let (d1, d2) = (eig.eigenvalues[0], eig.eigenvalues[1]);
    if !(d1 > 0.0 && d2 > 0.0) {
        return Err(Error::invalid(
            "covariance",
            "diagonal block is not positive definite",
        ));
    }
    // Local squeeze equalizing the diagonal: S diag(d1, d2) S = d·1.
    let d = (d1 * d2).sqrt();
    let squeeze = Matrix2::new((d / d1).sqrt(), 0.0, 0.0, (d / d2).sqrt());
    let local = squeeze * u.transpose();
    let cross = local * cov.block_a() * local.transpose();

    // Rotations on each side bringing the cross block to diagonal form.
    let svd = cross.svd(true, true);
    let (left, sl) = proper(svd.u.expect("u requested"));
    let (right_t, sr) = proper(svd.v_t.expect("v_t requested").transpose());
    let (mut a, mut b) = (svd.singular_values[0], svd.singular_values[1] * sl * sr);
    let (mut left, mut right) = (left, right_t);

    // Among the equivalent labelings (a,b), (b,a), (−a,−b), (−b,−a) keep the
    // one closest to the rotated cross block's own diagonal.
    let quarter = rotation(std::f64::consts::FRAC_PI_2);
    let score = |a: f64, b: f64| a * cross[(0, 0)] + b * cross[(1, 1)];
    let mut best = (score(a, b), false, false);
    for (swap, negate) in [(true, false), (false, true), (true, true)] {
        let (mut x, mut y) = if swap { (b, a) } else { (a, b) };
        if negate {
            x = -x;
            y = -y;
        }
        let s = score(x, y);
        if s > best.0 + 1e-15 * (a.abs() + b.abs()) {
            best = (s, swap, negate);
        }
    }
    if best.1 {
        std::mem::swap(&mut a, &mut b);
        left *= quarter;
        right *= quarter;
    }
    if best.2 {
        a = -a;
        b = -b;
        left = -left;
    }

    let o1 = left.transpose() * local;
    let o2 = right.transpose() * local;
    let mut transform = Matrix4::zeros();
    transform.fixed_view_mut::<2, 2>(0, 0).copy_from(&o1);
    transform.fixed_view_mut::<2, 2>(2, 2).copy_from(&o2);
    Ok((CanonicalForm { d, a, b }, transform))
}

pub fn canonical_form(cov: &CovarianceMatrix) -> Result<CanonicalForm> {
    canonical_transform(cov).map(|(form, _)| form)
}

/// Per-time summary of a state's uncertainty and entanglement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    pub time: f64,
    pub zeta_minus: f64,
    pub lambda_minus: f64,
    pub negativity: f64,
    pub log_negativity: f64,
    pub separable: bool,
    pub uncertainty_ok: bool,
}

impl EntanglementReport {
    pub fn analyze(time: f64, cov: &CovarianceMatrix) -> Result<Self> {
        let inv = symplectic_invariants(cov)?;
        let separable = inv.lambda_minus >= 0.5 - SEPARABILITY_TOL;
        let (mut negativity, mut log_negativity) = negativity_measures(inv.lambda_minus)?;
        if separable {
            // Within tolerance of the boundary both measures are zero.
            negativity = 0.0;
            log_negativity = 0.0;
        }
        Ok(Self {
            time,
            zeta_minus: inv.zeta_minus,
            lambda_minus: inv.lambda_minus,
            negativity,
            log_negativity,
            separable,
            uncertainty_ok: inv.zeta_minus >= 0.5 - SEPARABILITY_TOL,
        })
    }
}
