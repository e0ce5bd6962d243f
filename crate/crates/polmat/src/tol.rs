//! Numeric tolerances and step sizes used by the library and its test
//! suites. Centralized so that no check carries an ad-hoc magic number.

/// Relative accuracy target of `spherical_bessel_batch` for x <= 50.
pub const BESSEL_REL: f64 = 1e-12;

/// Bound on |j_{l-1} + j_{l+1} - (2l+1) j_l / x| relative to max(1, |j_l|).
pub const BESSEL_RECURRENCE: f64 = 1e-10;

/// Deviation of sum_l (2l+1) j_l^2(x) from 1 with a sufficient cutoff.
pub const BESSEL_COMPLETENESS: f64 = 1e-10;

/// Deviation of sum_m |Y_lm|^2 from (2l+1)/(4 pi) at a fixed direction.
pub const YLM_SUM: f64 = 1e-12;

/// Error allowed in quadrature checks of spherical-harmonic orthonormality.
pub const YLM_QUADRATURE: f64 = 1e-10;

/// Deviation from orthonormality of the spin-1 coupling coefficients.
pub const CG_ORTHONORMALITY: f64 = 1e-12;

/// Disagreement between the closed-form coupling coefficients and the
/// exact-arithmetic evaluation of the general formula.
pub const CG_CROSS_CHECK: f64 = 1e-13;

/// Round-trip error of the helicity <-> Cartesian transform.
pub const HELICITY_ROUNDTRIP: f64 = 1e-15;

/// Norm preservation of the helicity <-> Cartesian transform.
pub const HELICITY_NORM: f64 = 1e-14;

/// Residual of E.B and (|E|^2 - |B|^2)/(|E|^2 + |B|^2) for plane waves.
pub const PLANE_WAVE_NULL: f64 = 1e-14;

/// Deviation of |exp(i k.r)|^2 from 1.
pub const HOMOGENEITY: f64 = 1e-14;

/// Radial projection of E for magnetic multipoles (exact by construction).
pub const TRANSVERSALITY_EXACT: f64 = 1e-12;

/// Radial projection of B for electric multipoles (limited by the
/// finite-difference curl).
pub const TRANSVERSALITY_CURL: f64 = 1e-6;

/// Relative error of curl(curl A) against k^2 A.
pub const CURL_CURL_REL: f64 = 1e-6;

/// Step of the finite-difference curl, in units of the wavelength: the
/// actual step is `CURL_STEP_SCALE / k`.
pub const CURL_STEP_SCALE: f64 = 1e-4;

/// Agreement of mode functions evaluated at (k, r) and (2k, r/2).
pub const SCALE_INVARIANCE: f64 = 1e-15;

/// Entry-wise agreement of the quadratic-form block with P_E + P_B.
pub const BLOCK_EQUIVALENCE: f64 = 1e-12;

/// Agreement of the (0,0) entry of the quadratic form with |E|^2.
pub const ENERGY_ENTRY: f64 = 1e-14;

/// Hermiticity residual accepted in a polarization matrix.
pub const HERMITICITY: f64 = 1e-12;

/// Eigenvalue slack accepted in positive-semidefiniteness checks,
/// relative to the trace.
pub const PSD_EIGEN: f64 = 1e-12;

/// Deviation of the phase-difference wrap sum from a multiple of 2 pi.
pub const PHASE_WRAP: f64 = 1e-12;

/// Relative floor below which the phase of a field component is undefined.
pub const PHASE_FLOOR: f64 = 1e-12;

/// Off-block entries of the polarization matrices of an exact plane wave.
pub const REDUCTION_OFFBLOCK: f64 = 1e-14;

/// Fraction of the total trace allowed in the longitudinal entries of a
/// far-zone multipole evaluated in its local frame.
pub const FAR_ZONE_RESIDUAL: f64 = 0.01;

/// Direction independence and brute-force agreement of the zero-point
/// density Z.
pub const ZPO_ANGLE: f64 = 1e-10;

/// Deviation of the mode-complete zero-point density sum from 2.
pub const ZPO_COMPLETENESS: f64 = 1e-10;

/// Cross-module agreement of zero-point traces with the density Z.
pub const ZPO_TRACE: f64 = 1e-10;

/// Agreement of the sampled density near x = 0 with its analytic limit.
pub const PROFILE_ORIGIN: f64 = 1e-3;

/// Density bound in the far zone, x >= 15, for the electric dipole family.
pub const PROFILE_FAR_BOUND: f64 = 0.05;

// Coarse bounds must sit above the fine ones they relax.
const _: () = assert!(BESSEL_RECURRENCE > BESSEL_REL);
const _: () = assert!(TRANSVERSALITY_CURL > TRANSVERSALITY_EXACT);
const _: () = assert!(ZPO_ANGLE > HERMITICITY);
const _: () = assert!(FAR_ZONE_RESIDUAL > REDUCTION_OFFBLOCK);
