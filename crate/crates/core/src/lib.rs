//! Exact Gaussian dynamics of two identical quantum Brownian oscillators
//! coupled to a common one-dimensional field bath, with uncertainty and
//! entanglement diagnostics (symplectic invariants, PPT test, negativity).

// `!(x <= tol)` is used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Quadrature nodes and reference values keep their published digits.
#![allow(clippy::excessive_precision)]

pub mod bath;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod harness;
pub mod model;
pub mod quadrature;

pub use bath::{
    response_transform, sigma_matrix, sigma_matrix_truncated, sigma_matrix_with_cutoff,
    sigma_oracle, NoiseMatrix, SpectralKernel,
};
pub use dynamics::{evolution_matrix, mode_g0, mode_g1, mode_g2, EvolutionMatrix, ModeFunctions};
pub use entanglement::{
    block_determinants, canonical_form, negativity_measures, ppt_spectrum, separability_test,
    symplectic_invariants, symplectic_spectrum, CanonicalForm, EntanglementReport,
    SymplecticInvariants,
};
pub use error::{Error, Result};
pub use harness::{evolve_covariance, run_sweep, SweepConfig, SweepResult};
pub use model::{
    apply_mirror, two_mode_squeezed_covariance, wigner_density, CovarianceMatrix, MirrorReflection,
    PhaseSpaceVector, SymplecticForm, SystemParams,
};
