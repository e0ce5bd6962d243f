//! Cross-module validation suite with fixed seeds and independent oracles.
//!
//! Every check reports a numerical residual against a named tolerance from
//! [`crate::tol`]. The suite is deterministic: repeated runs produce
//! byte-identical reports. Two oracles are implemented here rather than in
//! the modules they check, so the fast paths are compared against slow but
//! independently derived references: an exact Clebsch-Gordan evaluator
//! (Racah's factorial sum over rationals) and Gauss-Legendre quadrature
//! for the spherical harmonic orthonormality integrals.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fieldsrc::{
    multipole_fields, multipole_potential, multipole_potential_vector, numerical_curl,
    plane_wave_fields, FieldSample, MultipoleKind, MultipoleMode, SpatialPoint,
};
use crate::gpmcore::{
    block_equivalence_residual, extract_blocks, gpm_electric, gpm_magnetic, gpm_total,
    hermiticity_residual, invariants_report, phase_differences, reduce_to_conventional, Axis,
    FieldStrengthTensor,
};
use crate::specfun::{
    cartesian_to_helicity, clebsch_gordan_spin1, helicity_to_cartesian, spherical_bessel_batch,
    spherical_harmonic, AngularPoint, HelicityIndex,
};
use crate::tol;
use crate::vec3::{Basis, ComplexVec3};
use crate::zpo::{
    completeness_total, plane_wave_homogeneity, radial_profile, zpo_density_bruteforce,
    zpo_density_dimensionless, zpo_energy_ratio, zpo_polarization_matrix, ModeFilter,
};

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Informational rows record an observation without gating the suite.
    pub informational: bool,
}

impl CheckResult {
    fn gate(name: &'static str, residual: f64, tolerance: f64) -> Self {
        Self {
            name,
            residual,
            tolerance,
            passed: residual <= tolerance,
            informational: false,
        }
    }

    fn info(name: &'static str, residual: f64, tolerance: f64) -> Self {
        Self {
            name,
            residual,
            tolerance,
            passed: true,
            informational: true,
        }
    }
}

/// Ordered collection of check results.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn checks(&self) -> &[CheckResult] {
        &self.checks
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|check| check.passed)
    }

    /// Names of the failing checks, in report order.
    pub fn failures(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|check| !check.passed)
            .map(|check| check.name)
            .collect()
    }

    /// Fixed-width table, one row per check, identical bytes on every run.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<34} {:>12} {:>12}  {}\n",
            "check", "residual", "tolerance", "status"
        ));
        for check in &self.checks {
            let status = if check.informational {
                "info"
            } else if check.passed {
                "pass"
            } else {
                "FAIL"
            };
            out.push_str(&format!(
                "{:<34} {:>12} {:>12}  {}\n",
                check.name,
                format!("{:.3e}", check.residual),
                format!("{:.3e}", check.tolerance),
                status
            ));
        }
        out
    }
}

/// Run every check in a fixed order with fixed seeds.
pub fn run_all() -> ValidationReport {
    run_suite(0.0)
}

/// Fault-injection hook: rerun the suite with the block-equivalence
/// residual inflated by `extra`, to exercise the failure path end to end.
pub fn run_with_block_fault(extra: f64) -> ValidationReport {
    run_suite(extra)
}

fn run_suite(block_fault: f64) -> ValidationReport {
    let checks = vec![
        check_bessel_recurrence(),
        check_bessel_reference(),
        check_bessel_completeness(),
        check_ylm_unsold(),
        check_ylm_conjugation(),
        check_ylm_quadrature(),
        check_cg_orthonormality(),
        check_cg_racah_cross(),
        check_helicity_roundtrip(),
        check_helicity_norm(),
        check_plane_wave_null_invariants(),
        check_plane_wave_homogeneity(),
        check_transversality_magnetic(),
        check_transversality_electric(),
        check_curl_curl(),
        check_origin_limit(),
        check_scale_invariance(),
        check_block_equivalence(block_fault),
        check_energy_density_match(),
        check_plane_reduction(),
        check_gpm_hermiticity_psd(),
        check_gpm_eigenstructure(),
        check_phase_wrap_sum(),
        check_zpo_angle_independence(),
        check_zpo_completeness(),
        check_zpo_energy_ratio(),
        check_zpo_trace_consistency(),
        check_zpo_profile_origin(),
        check_zpo_profile_crossing(),
        check_zpo_profile_far_zone(),
        check_zpo_profile_envelope(),
        check_zpo_element_angle_dependence(),
    ];
    ValidationReport { checks }
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_vec3(rng: &mut ChaCha8Rng, basis: Basis) -> ComplexVec3 {
    ComplexVec3::new(
        [
            random_complex(rng),
            random_complex(rng),
            random_complex(rng),
        ],
        basis,
    )
}

fn random_sample(rng: &mut ChaCha8Rng) -> FieldSample {
    FieldSample::new(
        random_vec3(rng, Basis::Cartesian),
        random_vec3(rng, Basis::Cartesian),
    )
}

fn random_angles(rng: &mut ChaCha8Rng) -> AngularPoint {
    AngularPoint::new(rng.gen_range(0.05..3.09), rng.gen_range(0.0..2.0 * PI))
        .expect("angles are in range")
}

fn random_unit3(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm > 0.3 {
            return [v[0] / norm, v[1] / norm, v[2] / norm];
        }
    }
}

/// Unit polarization orthogonal (unconjugated) to a real unit vector.
fn random_transverse_pol(rng: &mut ChaCha8Rng, k_hat: [f64; 3]) -> ComplexVec3 {
    loop {
        let v = random_vec3(rng, Basis::Cartesian);
        let k = ComplexVec3::from_real(k_hat);
        let pol = v - k.scale(v.dot(&k));
        let norm = pol.norm_sqr().sqrt();
        if norm > 0.1 {
            return pol.scale(Complex64::new(1.0 / norm, 0.0));
        }
    }
}

fn check_bessel_recurrence() -> CheckResult {
    let mut worst: f64 = 0.0;
    for x in [0.1, 0.7, 2.0, 5.0, 13.7, 42.0] {
        let l_max = 60;
        let b = spherical_bessel_batch(l_max, x).expect("valid arguments");
        for l in 1..l_max {
            let scale = b[l - 1].abs().max(b[l].abs()).max(b[l + 1].abs());
            if scale < 1e-280 {
                continue;
            }
            let lhs = b[l - 1] + b[l + 1];
            let rhs = (2 * l + 1) as f64 / x * b[l];
            worst = worst.max((lhs - rhs).abs() / scale);
        }
    }
    CheckResult::gate("bessel-recurrence", worst, tol::BESSEL_RECURRENCE)
}

fn check_bessel_reference() -> CheckResult {
    let mut worst: f64 = 0.0;
    let b1 = spherical_bessel_batch(1, 1.0).expect("valid arguments");
    let j1_closed = 1.0_f64.sin() - 1.0_f64.cos();
    worst = worst.max((b1[1] - j1_closed).abs() / j1_closed.abs());
    let b2 = spherical_bessel_batch(2, 2.0).expect("valid arguments");
    let j2_closed = (3.0 / 8.0 - 0.5) * 2.0_f64.sin() - 0.75 * 2.0_f64.cos();
    worst = worst.max((b2[2] - j2_closed).abs() / j2_closed.abs());
    CheckResult::gate("bessel-reference", worst, tol::BESSEL_REL)
}

fn check_bessel_completeness() -> CheckResult {
    let mut worst: f64 = 0.0;
    for x in [0.5, 3.0, 8.0] {
        let l_max = 60;
        let b = spherical_bessel_batch(l_max, x).expect("valid arguments");
        let sum: f64 = b
            .iter()
            .enumerate()
            .map(|(l, j)| (2 * l + 1) as f64 * j * j)
            .sum();
        worst = worst.max((sum - 1.0).abs());
    }
    CheckResult::gate("bessel-completeness", worst, tol::BESSEL_COMPLETENESS)
}

fn check_ylm_unsold() -> CheckResult {
    let directions = [
        AngularPoint::new(0.001, 0.3).expect("valid"),
        AngularPoint::new(1.0, 2.0).expect("valid"),
        AngularPoint::new(2.0, 4.4).expect("valid"),
        AngularPoint::new(3.1, 5.9).expect("valid"),
    ];
    let mut worst: f64 = 0.0;
    for l in 0..=10u32 {
        let expected = (2.0 * f64::from(l) + 1.0) / (4.0 * PI);
        for angles in &directions {
            let mut sum = 0.0;
            for m in -(l as i32)..=l as i32 {
                sum += spherical_harmonic(l, m, angles).expect("valid").norm_sqr();
            }
            worst = worst.max((sum - expected).abs() / expected);
        }
    }
    CheckResult::gate("ylm-unsold", worst, tol::YLM_SUM)
}

fn check_ylm_conjugation() -> CheckResult {
    let directions = [
        AngularPoint::new(0.7, 1.9).expect("valid"),
        AngularPoint::new(1.8, 0.2).expect("valid"),
        AngularPoint::new(2.6, 3.6).expect("valid"),
    ];
    let mut worst: f64 = 0.0;
    for l in 0..=8u32 {
        for m in 0..=l as i32 {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            for angles in &directions {
                let plus = spherical_harmonic(l, m, angles).expect("valid");
                let minus = spherical_harmonic(l, -m, angles).expect("valid");
                worst = worst.max((minus - sign * plus.conj()).norm());
            }
        }
    }
    CheckResult::gate("ylm-conjugation", worst, tol::YLM_SUM)
}

fn check_ylm_quadrature() -> CheckResult {
    let l_max = 4u32;
    let (nodes, weights) = gauss_legendre(24);
    let n_phi = 48usize;

    let mut labels = Vec::new();
    for l in 0..=l_max {
        for m in -(l as i32)..=l as i32 {
            labels.push((l, m));
        }
    }

    let mut table: Vec<Vec<Complex64>> = Vec::new();
    let mut measures = Vec::new();
    for (node, weight) in nodes.iter().zip(&weights) {
        let theta = node.acos();
        for p in 0..n_phi {
            let phi = 2.0 * PI * p as f64 / n_phi as f64;
            let angles = AngularPoint::new(theta, phi).expect("valid");
            let row = labels
                .iter()
                .map(|&(l, m)| spherical_harmonic(l, m, &angles).expect("valid"))
                .collect();
            table.push(row);
            measures.push(weight * 2.0 * PI / n_phi as f64);
        }
    }

    let mut worst: f64 = 0.0;
    for i in 0..labels.len() {
        for k in 0..labels.len() {
            let mut integral = Complex64::new(0.0, 0.0);
            for (row, measure) in table.iter().zip(&measures) {
                integral += measure * row[i].conj() * row[k];
            }
            let expected = if i == k { 1.0 } else { 0.0 };
            worst = worst.max((integral - expected).norm());
        }
    }
    CheckResult::gate("ylm-quadrature", worst, tol::YLM_QUADRATURE)
}

fn check_cg_orthonormality() -> CheckResult {
    let mut worst: f64 = 0.0;
    for l in 0..=6u32 {
        let couplings: Vec<u32> = if l == 0 {
            vec![1]
        } else {
            vec![l - 1, l, l + 1]
        };
        for &j_a in &couplings {
            for &j_b in &couplings {
                let m_cap = j_a.min(j_b) as i32;
                for m in -m_cap..=m_cap {
                    let mut sum = 0.0;
                    for mu in HelicityIndex::ALL {
                        sum += clebsch_gordan_spin1(l, m - mu.value(), mu, j_a, m)
                            * clebsch_gordan_spin1(l, m - mu.value(), mu, j_b, m);
                    }
                    let expected = if j_a == j_b { 1.0 } else { 0.0 };
                    worst = worst.max((sum - expected).abs());
                }
            }
        }
    }
    CheckResult::gate("cg-orthonormality", worst, tol::CG_ORTHONORMALITY)
}

fn check_cg_racah_cross() -> CheckResult {
    let mut worst: f64 = 0.0;
    for l in 0..=8u32 {
        for j in l.saturating_sub(1)..=l + 1 {
            for m in -(j as i32)..=j as i32 {
                for mu in HelicityIndex::ALL {
                    let m_l = m - mu.value();
                    let fast = clebsch_gordan_spin1(l, m_l, mu, j, m);
                    let exact = exact_clebsch_gordan(
                        i64::from(l),
                        i64::from(m_l),
                        1,
                        i64::from(mu.value()),
                        i64::from(j),
                        i64::from(m),
                    );
                    worst = worst.max((fast - exact).abs());
                }
            }
        }
    }
    CheckResult::gate("cg-racah-cross-check", worst, tol::CG_CROSS_CHECK)
}

fn check_helicity_roundtrip() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let hel = random_vec3(&mut rng, Basis::Helicity);
        let cart = helicity_to_cartesian(&hel).expect("tagged helicity");
        let back = cartesian_to_helicity(&cart).expect("tagged cartesian");
        worst = worst.max((back - hel).norm_sqr().sqrt());

        let cart0 = random_vec3(&mut rng, Basis::Cartesian);
        let hel0 = cartesian_to_helicity(&cart0).expect("tagged cartesian");
        let back0 = helicity_to_cartesian(&hel0).expect("tagged helicity");
        worst = worst.max((back0 - cart0).norm_sqr().sqrt());
    }
    CheckResult::gate("helicity-roundtrip", worst, tol::HELICITY_ROUNDTRIP)
}

fn check_helicity_norm() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let hel = random_vec3(&mut rng, Basis::Helicity);
        let cart = helicity_to_cartesian(&hel).expect("tagged helicity");
        worst = worst.max((cart.norm_sqr() - hel.norm_sqr()).abs() / hel.norm_sqr());
    }
    CheckResult::gate("helicity-norm", worst, tol::HELICITY_NORM)
}

fn check_plane_wave_null_invariants() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let k_hat = random_unit3(&mut rng);
        let k_mag = rng.gen_range(0.5..3.0);
        let k_vec = [k_hat[0] * k_mag, k_hat[1] * k_mag, k_hat[2] * k_mag];
        let pol = random_transverse_pol(&mut rng, k_hat);
        let point = SpatialPoint::new(rng.gen_range(0.1..5.0), random_angles(&mut rng))
            .expect("valid point");
        let amplitude = random_complex(&mut rng);
        let sample =
            plane_wave_fields(amplitude, k_vec, &pol, &point).expect("transverse unit pol");
        let inv = invariants_report(&sample);
        worst = worst.max(inv.e_dot_b.norm()).max(inv.e2_minus_b2.abs());
    }
    CheckResult::gate("plane-wave-null-invariants", worst, tol::PLANE_WAVE_NULL)
}

fn check_plane_wave_homogeneity() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let points: Vec<SpatialPoint> = (0..100)
        .map(|_| {
            SpatialPoint::new(rng.gen_range(0.1..8.0), random_angles(&mut rng))
                .expect("valid point")
        })
        .collect();
    let mut worst: f64 = 0.0;
    for k_vec in [[0.0, 0.0, 1.0], [0.3, -1.2, 0.8], [2.0, 0.1, 0.0]] {
        worst = worst.max(plane_wave_homogeneity(k_vec, &points).expect("valid scan"));
    }
    CheckResult::gate("plane-wave-homogeneity", worst, tol::HOMOGENEITY)
}

fn radial_fraction(v: &ComplexVec3, point: &SpatialPoint) -> f64 {
    let r_hat = ComplexVec3::from_real(point.radial_unit());
    v.dot(&r_hat).norm() / v.norm_sqr().sqrt()
}

fn check_transversality_magnetic() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let j = rng.gen_range(1..=3u32);
        let m = rng.gen_range(-(j as i32)..=j as i32);
        let mode = MultipoleMode::new(MultipoleKind::Magnetic, 1.0, j, m).expect("valid mode");
        let point = SpatialPoint::new(rng.gen_range(0.5..10.0), random_angles(&mut rng))
            .expect("valid point");
        let a = helicity_to_cartesian(&multipole_potential_vector(&mode, &point).expect("valid"))
            .expect("tagged helicity");
        if a.norm_sqr() == 0.0 {
            continue;
        }
        worst = worst.max(radial_fraction(&a, &point));
    }
    CheckResult::gate("multipole-transversality-m", worst, tol::TRANSVERSALITY_EXACT)
}

fn check_transversality_electric() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let j = rng.gen_range(1..=3u32);
        let m = rng.gen_range(-(j as i32)..=j as i32);
        let mode = MultipoleMode::new(MultipoleKind::Electric, 1.0, j, m).expect("valid mode");
        let point = SpatialPoint::new(rng.gen_range(0.5..10.0), random_angles(&mut rng))
            .expect("valid point");
        let sample = multipole_fields(&mode, &point).expect("valid fields");
        if sample.b_field.norm_sqr() == 0.0 {
            continue;
        }
        worst = worst.max(radial_fraction(&sample.b_field, &point));
    }
    CheckResult::gate("multipole-transversality-e", worst, tol::TRANSVERSALITY_CURL)
}

fn check_curl_curl() -> CheckResult {
    let mut worst: f64 = 0.0;
    let cases = [
        (MultipoleKind::Electric, 1u32, 0i32, 2.0, 1.0, 0.5),
        (MultipoleKind::Magnetic, 2, 1, 1.4, 0.8, 2.1),
    ];
    for (kind, j, m, r, theta, phi) in cases {
        let mode = MultipoleMode::new(kind, 1.0, j, m).expect("valid mode");
        let point = SpatialPoint::from_spherical(r, theta, phi).expect("valid point");
        let h = tol::CURL_STEP_SCALE / mode.k();
        let potential = |p: &SpatialPoint| {
            helicity_to_cartesian(&multipole_potential_vector(&mode, p)?)
        };
        let inner = |p: &SpatialPoint| numerical_curl(&potential, p, h);
        let curl_curl = numerical_curl(&inner, &point, h).expect("valid curl");
        let expected = potential(&point)
            .expect("valid potential")
            .scale(Complex64::new(mode.k() * mode.k(), 0.0));
        let err = (curl_curl - expected).norm_sqr().sqrt() / expected.norm_sqr().sqrt();
        worst = worst.max(err);
    }
    CheckResult::gate("multipole-curl-curl", worst, tol::CURL_CURL_REL)
}

fn check_origin_limit() -> CheckResult {
    let mode = MultipoleMode::new(MultipoleKind::Electric, 1.0, 1, 0).expect("valid mode");
    let angles = AngularPoint::new(1.2, 0.7).expect("valid");
    let origin = SpatialPoint::new(0.0, angles).expect("valid point");
    let near = SpatialPoint::new(1e-7, angles).expect("valid point");
    let reference = (2.0_f64 / 3.0).sqrt() / (4.0 * PI).sqrt();
    let at_origin = multipole_potential(&mode, HelicityIndex::Zero, &origin).expect("valid");
    let nearby = multipole_potential(&mode, HelicityIndex::Zero, &near).expect("valid");
    let worst = (at_origin.re - reference)
        .abs()
        .max(at_origin.im.abs())
        .max((nearby - at_origin).norm());
    CheckResult::gate("multipole-origin-limit", worst, tol::BESSEL_REL)
}

fn check_scale_invariance() -> CheckResult {
    let mut worst: f64 = 0.0;
    let angles = AngularPoint::new(0.9, 1.8).expect("valid");
    let r = 1.3;
    for (kind, j, m) in [
        (MultipoleKind::Electric, 2u32, 1i32),
        (MultipoleKind::Magnetic, 1, -1),
    ] {
        let base = MultipoleMode::new(kind, 1.0, j, m).expect("valid mode");
        let at = SpatialPoint::new(r, angles).expect("valid point");
        let v_base = multipole_potential_vector(&base, &at).expect("valid");
        for factor in [2.0, 0.5, 4.0] {
            let scaled = MultipoleMode::new(kind, factor, j, m).expect("valid mode");
            let at_scaled = SpatialPoint::new(r / factor, angles).expect("valid point");
            let v_scaled = multipole_potential_vector(&scaled, &at_scaled).expect("valid");
            let diff = (v_scaled - v_base).norm_sqr().sqrt();
            worst = worst.max(diff / v_base.norm_sqr().sqrt());
        }
    }
    CheckResult::gate("multipole-scale-invariance", worst, tol::SCALE_INVARIANCE)
}

fn check_block_equivalence(fault: f64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut worst: f64 = fault;
    for _ in 0..200 {
        let sample = random_sample(&mut rng);
        worst = worst.max(block_equivalence_residual(&sample, &gpm_total(&sample)));
    }
    CheckResult::gate("block-equivalence", worst, tol::BLOCK_EQUIVALENCE)
}

fn check_energy_density_match() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let sample = random_sample(&mut rng);
        let blocks = extract_blocks(&FieldStrengthTensor::new(&sample).bilinear_form())
            .expect("Hermitian by construction");
        let w_e = sample.w_e();
        let trace_expected = w_e + 2.0 * sample.w_b();
        worst = worst.max((blocks.w_e - w_e).abs() / w_e.max(1e-300));
        worst = worst
            .max((blocks.p_matrix.trace() - trace_expected).abs() / trace_expected.max(1e-300));
    }
    CheckResult::gate("energy-density-match", worst, tol::ENERGY_ENTRY)
}

fn check_plane_reduction() -> CheckResult {
    let mut worst: f64 = 0.0;
    let linear = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let circular = [
        Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2),
    ];
    let point = SpatialPoint::from_spherical(1.8, 0.9, 2.2).expect("valid point");
    for axis in [Axis::X, Axis::Y, Axis::Z] {
        let (t0, t1) = axis.transverse();
        let mut k_vec = [0.0; 3];
        k_vec[axis.longitudinal()] = 1.3;
        for weights in [linear, circular] {
            let mut components = [Complex64::new(0.0, 0.0); 3];
            components[t0] = weights[0];
            components[t1] = weights[1];
            let pol = ComplexVec3::new(components, Basis::Cartesian);
            let sample =
                plane_wave_fields(Complex64::new(1.0, 0.0), k_vec, &pol, &point).expect("valid");
            let reduction = reduce_to_conventional(&sample, axis);
            worst = worst.max(reduction.residual);

            let e = sample.e_field.components();
            let transverse = [e[t0], e[t1]];
            for a in 0..2 {
                for b in 0..2 {
                    let direct = transverse[a].conj() * transverse[b];
                    worst = worst.max((reduction.p2[a][b] - direct).norm());
                }
            }
        }
    }
    CheckResult::gate("plane-reduction", worst, tol::REDUCTION_OFFBLOCK)
}

fn check_gpm_hermiticity_psd() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let sample = random_sample(&mut rng);
        let total = gpm_total(&sample);
        let trace = total.trace();
        worst = worst.max(hermiticity_residual(total.entries()) / trace);
        let eigen = total.eigenvalues();
        worst = worst.max((-eigen[0] / trace).max(0.0));
    }
    CheckResult::gate("gpm-hermiticity-psd", worst, tol::PSD_EIGEN)
}

fn check_gpm_eigenstructure() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let e = random_vec3(&mut rng, Basis::Cartesian);
        let eigen = gpm_electric(&e).eigenvalues();
        let w_e = e.norm_sqr();
        worst = worst.max(eigen[0].abs() / w_e);
        worst = worst.max(eigen[1].abs() / w_e);
        worst = worst.max((eigen[2] - w_e).abs() / w_e);

        let b = random_vec3(&mut rng, Basis::Cartesian);
        let eigen = gpm_magnetic(&b).eigenvalues();
        let w_b = b.norm_sqr();
        worst = worst.max(eigen[0].abs() / w_b);
        worst = worst.max((eigen[1] - w_b).abs() / w_b);
        worst = worst.max((eigen[2] - w_b).abs() / w_b);
    }
    CheckResult::gate("gpm-eigenstructure", worst, tol::PSD_EIGEN)
}

fn check_phase_wrap_sum() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let e = ComplexVec3::cartesian(
            Complex64::from_polar(rng.gen_range(0.2..2.0), rng.gen_range(-PI..PI)),
            Complex64::from_polar(rng.gen_range(0.2..2.0), rng.gen_range(-PI..PI)),
            Complex64::from_polar(rng.gen_range(0.2..2.0), rng.gen_range(-PI..PI)),
        );
        let phases = phase_differences(&e).expect("all components sizable");
        for delta in [phases.delta_xy, phases.delta_yz, phases.delta_zx] {
            worst = worst.max((delta - PI).max(0.0));
            worst = worst.max((-PI - delta).max(0.0));
        }
        let sum = phases.delta_xy + phases.delta_yz + phases.delta_zx;
        let distance = sum.rem_euclid(2.0 * PI);
        worst = worst.max(distance.min(2.0 * PI - distance));
    }
    CheckResult::gate("phase-wrap-sum", worst, tol::PHASE_WRAP)
}

fn check_zpo_angle_independence() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut worst: f64 = 0.0;
    for kind in [MultipoleKind::Electric, MultipoleKind::Magnetic] {
        for j in 1..=6u32 {
            for x in [0.1, 0.7, 2.0, 5.0, 10.0] {
                let closed = zpo_density_dimensionless(kind, j, x).expect("valid");
                let values: Vec<f64> = (0..5)
                    .map(|_| {
                        zpo_density_bruteforce(kind, j, x, &random_angles(&mut rng))
                            .expect("valid")
                    })
                    .collect();
                for (i, a) in values.iter().enumerate() {
                    worst = worst.max((a - closed).abs());
                    for b in values.iter().skip(i + 1) {
                        worst = worst.max((a - b).abs());
                    }
                }
            }
        }
    }
    CheckResult::gate("zpo-angle-independence", worst, tol::ZPO_ANGLE)
}

fn check_zpo_completeness() -> CheckResult {
    let mut worst: f64 = 0.0;
    for x in [0.5, 1.0, 3.0, 8.0] {
        let total = completeness_total(x, 40).expect("valid");
        worst = worst.max((total.value - 2.0).abs());
    }
    CheckResult::gate("zpo-completeness", worst, tol::ZPO_COMPLETENESS)
}

fn check_zpo_energy_ratio() -> CheckResult {
    let e = MultipoleKind::Electric;
    let m = MultipoleKind::Magnetic;
    let cases = [
        (vec![(e, 1u32)], Rational64::new(3, 2)),
        (vec![(e, 1), (m, 1)], Rational64::new(3, 1)),
        (vec![(e, 1), (e, 2)], Rational64::new(4, 1)),
    ];
    let mut worst: f64 = 0.0;
    for (modes, expected) in cases {
        let filter = ModeFilter::new(modes, 1.0).expect("valid filter");
        if zpo_energy_ratio(&filter) != expected {
            worst = 1.0;
        }
    }
    CheckResult::gate("zpo-energy-ratio", worst, 0.0)
}

fn check_zpo_trace_consistency() -> CheckResult {
    let mut worst: f64 = 0.0;
    let point = SpatialPoint::from_spherical(1.5, 0.8, 1.1).expect("valid point");
    for (kind, j, k) in [
        (MultipoleKind::Electric, 1u32, 2.0),
        (MultipoleKind::Magnetic, 1, 1.3),
        (MultipoleKind::Electric, 3, 1.0),
    ] {
        let matrix = zpo_polarization_matrix(kind, j, k, &point).expect("valid");
        let z = zpo_density_dimensionless(kind, j, k * point.r()).expect("valid");
        let expected = k * k * z / (4.0 * PI);
        worst = worst.max((matrix.trace() - expected).abs() / expected.max(1e-300));
    }
    CheckResult::gate("zpo-trace-consistency", worst, tol::ZPO_TRACE)
}

fn profile_grid() -> Vec<f64> {
    (0..500)
        .map(|i| 0.01 + (20.0 - 0.01) * f64::from(i) / 499.0)
        .collect()
}

fn check_zpo_profile_origin() -> CheckResult {
    let profile =
        radial_profile(MultipoleKind::Electric, 1, &profile_grid()).expect("valid grid");
    CheckResult::gate(
        "zpo-profile-origin",
        (profile.z[0] - 2.0).abs(),
        tol::PROFILE_ORIGIN,
    )
}

fn check_zpo_profile_crossing() -> CheckResult {
    let profile =
        radial_profile(MultipoleKind::Electric, 1, &profile_grid()).expect("valid grid");
    let residual = match profile.crossing {
        Some(x) if x > 1.9 && x < 2.0 => 0.0,
        Some(x) => (x - 1.95).abs(),
        None => f64::INFINITY,
    };
    CheckResult::gate("zpo-profile-crossing", residual, 0.0)
}

fn check_zpo_profile_far_zone() -> CheckResult {
    let profile =
        radial_profile(MultipoleKind::Electric, 1, &profile_grid()).expect("valid grid");
    let mut worst: f64 = 0.0;
    for (x, z) in profile.x.iter().zip(&profile.z) {
        if *x >= 15.0 {
            worst = worst.max(*z);
        }
    }
    CheckResult::gate("zpo-profile-far-zone", worst, tol::PROFILE_FAR_BOUND)
}

fn check_zpo_profile_envelope() -> CheckResult {
    let profile =
        radial_profile(MultipoleKind::Electric, 1, &profile_grid()).expect("valid grid");
    let mut worst: f64 = 0.0;
    let mut past_peak: f64 = 0.0;
    for (x, z) in profile.x.iter().zip(&profile.z) {
        if *x >= 10.0 {
            worst = worst.max(x * x * z);
        }
        if *x >= 2.0 {
            past_peak = past_peak.max(*z);
        }
    }
    // The origin value 2 dominates everything beyond x = 2, and x^2 Z is
    // bounded in the far zone.
    worst = worst.max(if past_peak < 2.0 { 0.0 } else { f64::INFINITY });
    CheckResult::gate("zpo-profile-envelope", worst, 4.0)
}

fn check_zpo_element_angle_dependence() -> CheckResult {
    // The m, mu-summed density is isotropic but single matrix entries are
    // not. This records the observed entry variation between two
    // directions; it is expected to be large.
    let near_pole = SpatialPoint::from_spherical(1.0, 0.3, 0.0).expect("valid point");
    let near_equator = SpatialPoint::from_spherical(1.0, 1.4, 0.0).expect("valid point");
    let a = zpo_polarization_matrix(MultipoleKind::Magnetic, 1, 1.0, &near_pole).expect("valid");
    let b =
        zpo_polarization_matrix(MultipoleKind::Magnetic, 1, 1.0, &near_equator).expect("valid");
    let variation = (a.entry(1, 1).re - b.entry(1, 1).re).abs() / a.trace();
    CheckResult::info("zpo-element-angle-dependence", variation, tol::ZPO_ANGLE)
}

/// Nodes and weights of n-point Gauss-Legendre quadrature on [-1, 1],
/// found by Newton iteration on the Legendre recurrence (Handbook of
/// Mathematical Functions, 25.4.29).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let step = p / dp;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut previous = 1.0;
    let mut current = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * current - (kf - 1.0) * previous) / kf;
        previous = current;
        current = next;
    }
    let derivative = n as f64 * (x * current - previous) / (x * x - 1.0);
    (current, derivative)
}

/// Exact Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m> for integer
/// angular momenta, via Racah's factorial sum evaluated in exact rational
/// arithmetic (Edmonds, Angular Momentum in Quantum Mechanics, Eq. 3.6.11).
pub fn exact_clebsch_gordan(j1: i64, m1: i64, j2: i64, m2: i64, j: i64, m: i64) -> f64 {
    if m1 + m2 != m || m1.abs() > j1 || m2.abs() > j2 || m.abs() > j {
        return 0.0;
    }
    if j < (j1 - j2).abs() || j > j1 + j2 {
        return 0.0;
    }

    let fact = |n: i64| -> BigInt {
        debug_assert!(n >= 0);
        (1..=n).map(BigInt::from).product()
    };

    let delta_num = fact(j1 + j2 - j) * fact(j1 - j2 + j) * fact(-j1 + j2 + j);
    let delta_den = fact(j1 + j2 + j + 1);
    let weight = fact(j + m)
        * fact(j - m)
        * fact(j1 - m1)
        * fact(j1 + m1)
        * fact(j2 - m2)
        * fact(j2 + m2);
    let prefactor_sq = BigRational::new(BigInt::from(2 * j + 1) * delta_num * weight, delta_den);

    let k_min = 0.max(-(j - j2 + m1)).max(-(j - j1 - m2));
    let k_max = (j1 + j2 - j).min(j1 - m1).min(j2 + m2);
    let mut series = BigRational::zero();
    for k in k_min..=k_max {
        let denominator = fact(k)
            * fact(j1 + j2 - j - k)
            * fact(j1 - m1 - k)
            * fact(j2 + m2 - k)
            * fact(j - j2 + m1 + k)
            * fact(j - j1 - m2 + k);
        let term = BigRational::new(BigInt::from(1), denominator);
        if k % 2 == 0 {
            series += term;
        } else {
            series -= term;
        }
    }
    if series.is_zero() {
        return 0.0;
    }

    let sign = if series < BigRational::zero() { -1.0 } else { 1.0 };
    let magnitude_sq = prefactor_sq * series.clone() * series;
    sign * magnitude_sq.to_f64().expect("ratio fits in f64").sqrt()
}
