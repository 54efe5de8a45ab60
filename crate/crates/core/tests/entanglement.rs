//! Invariants of the uncertainty and separability analytics on randomly
//! generated physical states with exchange symmetry.

use nalgebra::{Matrix2, Matrix4};
use proptest::prelude::*;
use qbm_core::entanglement::symplectic_spectrum_by_construction;
use qbm_core::{
    apply_mirror, canonical_form, negativity_measures, symplectic_invariants,
    two_mode_squeezed_covariance, CovarianceMatrix, EntanglementReport, NoiseMatrix,
};

/// Same 2×2 symplectic map on both oscillators.
fn local(theta: f64, squeeze: f64) -> Matrix4<f64> {
    let (s, c) = theta.sin_cos();
    let s2 = Matrix2::new(c, -s, s, c) * Matrix2::new(squeeze.exp(), 0.0, 0.0, (-squeeze).exp());
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&s2);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&s2);
    m
}

fn transform(cov: &CovarianceMatrix, s: &Matrix4<f64>) -> CovarianceMatrix {
    CovarianceMatrix::from_symmetrized(s * cov.matrix() * s.transpose())
}

prop_compose! {
    /// Squeezed vacuum plus correlated bath-like noise, seen through a
    /// random local frame.
    fn physical_state()(
        r in -1.0..1.0f64,
        pos in 0.0..0.3f64,
        mom in 0.0..0.3f64,
        corr in -1.0..1.0f64,
        thermal in 0.0..0.2f64,
        theta in 0.0..std::f64::consts::TAU,
        squeeze in -0.7..0.7f64,
    ) -> CovarianceMatrix {
        let noise = NoiseMatrix::from_independent(pos, mom, corr * (pos * mom).sqrt());
        let base = two_mode_squeezed_covariance(r).matrix() + noise.matrix() + Matrix4::identity() * thermal;
        transform(&CovarianceMatrix::new(base).unwrap(), &local(theta, squeeze))
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn invariant_under_identical_local_maps(
        cov in physical_state(),
        theta in 0.0..std::f64::consts::TAU,
        squeeze in -0.7..0.7f64,
    ) {
        let before = symplectic_invariants(&cov).unwrap();
        let after = symplectic_invariants(&transform(&cov, &local(theta, squeeze))).unwrap();
        prop_assert!(close(after.zeta_minus, before.zeta_minus, 1e-9));
        prop_assert!(close(after.zeta_plus, before.zeta_plus, 1e-9));
        prop_assert!(close(after.lambda_minus, before.lambda_minus, 1e-9));
        prop_assert!(close(after.lambda_plus, before.lambda_plus, 1e-9));
    }

    #[test]
    fn determinant_formulas_match_matrix_construction(cov in physical_state()) {
        let inv = symplectic_invariants(&cov).unwrap();
        let (zm, zp) = symplectic_spectrum_by_construction(&cov);
        prop_assert!(close(inv.zeta_minus, zm, 1e-9));
        prop_assert!(close(inv.zeta_plus, zp, 1e-9));
        let (lm, lp) = symplectic_spectrum_by_construction(&apply_mirror(&cov));
        prop_assert!(close(inv.lambda_minus, lm, 1e-9));
        prop_assert!(close(inv.lambda_plus, lp, 1e-9));
    }

    #[test]
    fn mirror_preserves_determinants(cov in physical_state()) {
        let mirrored = apply_mirror(&cov);
        prop_assert!(close(mirrored.determinant(), cov.determinant(), 1e-12));
        prop_assert!(close(mirrored.block_a().determinant(), -cov.block_a().determinant(), 1e-12));
        prop_assert!(close(mirrored.block_d().determinant(), cov.block_d().determinant(), 1e-12));
        prop_assert_eq!(apply_mirror(&mirrored), cov);
    }

    #[test]
    fn physical_states_obey_uncertainty(cov in physical_state()) {
        let inv = symplectic_invariants(&cov).unwrap();
        prop_assert!(inv.zeta_minus >= 0.5 - 1e-12);
        prop_assert!(inv.zeta_plus >= inv.zeta_minus);
        prop_assert!(inv.lambda_plus >= inv.lambda_minus);
        if inv.lambda_minus >= 0.5 {
            prop_assert!(inv.lambda_plus >= 0.5);
        }
        if inv.det_a < 0.0 {
            prop_assert!(inv.lambda_plus > inv.zeta_minus);
        }
        let det = inv.det_full;
        prop_assert!(close(inv.zeta_minus.powi(2) * inv.zeta_plus.powi(2), det, 1e-10));
        prop_assert!(close(inv.lambda_minus.powi(2) * inv.lambda_plus.powi(2), det, 1e-10));
    }

    #[test]
    fn canonical_form_reproduces_invariants(cov in physical_state()) {
        let form = canonical_form(&cov).unwrap();
        let inv = symplectic_invariants(&cov).unwrap();
        let (zm2, zp2) = form.zeta_squared();
        let (lm2, lp2) = form.lambda_squared();
        prop_assert!(form.d > 0.0);
        prop_assert!(close(zm2, inv.zeta_minus.powi(2), 1e-9));
        prop_assert!(close(zp2, inv.zeta_plus.powi(2), 1e-9));
        prop_assert!(close(lm2, inv.lambda_minus.powi(2), 1e-9));
        prop_assert!(close(lp2, inv.lambda_plus.powi(2), 1e-9));
        prop_assert!(form.satisfies_uncertainty(1e-9));
    }

    #[test]
    fn negativity_flags_entanglement(cov in physical_state()) {
        let report = EntanglementReport::analyze(0.0, &cov).unwrap();
        prop_assert_eq!(report.negativity > 0.0, !report.separable);
        prop_assert_eq!(report.log_negativity > 0.0, !report.separable);
        prop_assert_eq!(report.separable, report.lambda_minus >= 0.5 - 1e-9);
        prop_assert!(report.uncertainty_ok);
    }

    #[test]
    fn negativity_decreases_with_lambda(a in 1e-3..0.5f64, b in 1e-3..0.5f64) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (n_lo, e_lo) = negativity_measures(lo).unwrap();
        let (n_hi, e_hi) = negativity_measures(hi).unwrap();
        prop_assert!(n_lo >= n_hi);
        prop_assert!(e_lo >= e_hi);
    }
}

#[test]
fn negativity_reference_values() {
    assert_eq!(negativity_measures(0.5).unwrap(), (0.0, 0.0));
    assert_eq!(negativity_measures(0.25).unwrap(), (0.5, 1.0));
    let (n, e) = negativity_measures((-0.2f64).exp() / 2.0).unwrap();
    assert!((n - 0.110_701_379_080_084_97).abs() < 1e-15);
    assert!((e - 0.288_539_008_177_792_68).abs() < 1e-15);
}
