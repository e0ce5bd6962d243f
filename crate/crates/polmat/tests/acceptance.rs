//! Acceptance gate: one test per release criterion, each printing a single
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use std::time::Instant;

use assert_cmd::Command;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polmat::cli::{format_float, linspace, DEFAULT_PRECISION};
use polmat::fieldsrc::{
    multipole_fields, plane_wave_fields, FieldSample, MultipoleKind, MultipoleMode, SpatialPoint,
};
use polmat::gpmcore::{
    block_equivalence_residual, extract_blocks, gpm_electric, gpm_magnetic, gpm_total,
    hermiticity_residual, phase_differences, reduce_to_conventional, Axis, FieldStrengthTensor,
};
use polmat::specfun::AngularPoint;
use polmat::validate;
use polmat::zpo::{
    completeness_total, plane_wave_homogeneity, radial_profile, zpo_density_bruteforce,
    zpo_density_dimensionless, zpo_energy_ratio, ModeFilter,
};
use polmat::{Basis, ComplexVec3};

fn gate(name: &str, pass: bool, detail: &str) {
    println!("acceptance {name}: {}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "acceptance criterion {name} failed: {detail}");
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_vec3(rng: &mut ChaCha8Rng) -> ComplexVec3 {
    ComplexVec3::new(
        [
            random_complex(rng),
            random_complex(rng),
            random_complex(rng),
        ],
        Basis::Cartesian,
    )
}

fn random_sample(rng: &mut ChaCha8Rng) -> FieldSample {
    FieldSample::new(random_vec3(rng), random_vec3(rng))
}

fn polmat_cmd() -> Command {
    Command::cargo_bin("polmat").unwrap()
}

#[test]
fn c01_vacuum_energy_ratio_is_exactly_three_halves() {
    let start = Instant::now();
    let filter = ModeFilter::new(vec![(MultipoleKind::Electric, 1)], 1.0).unwrap();
    let ratio = zpo_energy_ratio(&filter);
    let exact = *ratio.numer() == 3 && *ratio.denom() == 2;

    let output = polmat_cmd()
        .args(["zpo-ratio", "--modes", "E1"])
        .output()
        .unwrap();
    let stdout = String::from_utf8(output.stdout).unwrap();
    let cli_ok = output.status.success() && stdout == "3/2 = 1.5\n";
    let fast = start.elapsed().as_secs_f64() < 1.0;

    gate(
        "vacuum-energy-ratio",
        exact && cli_ok && fast,
        &format!("ratio {ratio}, stdout {stdout:?}, elapsed {:?}", start.elapsed()),
    );
}

#[test]
fn c02_block_equivalence_on_seeded_samples() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst_block: f64 = 0.0;
    let mut worst_energy: f64 = 0.0;
    for _ in 0..200 {
        let sample = random_sample(&mut rng);
        worst_block = worst_block.max(block_equivalence_residual(&sample, &gpm_total(&sample)));
        let r = FieldStrengthTensor::new(&sample).bilinear_form();
        let energy = r.entry(0, 0);
        worst_energy = worst_energy
            .max((energy.re - sample.e_field.norm_sqr()).abs())
            .max(energy.im.abs());
    }
    let fast = start.elapsed().as_secs_f64() < 1.0;
    gate(
        "block-equivalence",
        worst_block <= 1e-12 && worst_energy <= 1e-14 && fast,
        &format!("block {worst_block:.3e}, energy {worst_energy:.3e}, elapsed {:?}", start.elapsed()),
    );
}

#[test]
fn c03_plane_wave_reduction_along_each_axis() {
    let mut worst_off: f64 = 0.0;
    let mut worst_p2: f64 = 0.0;
    let mut worst_pb: f64 = 0.0;
    for axis in [Axis::X, Axis::Y, Axis::Z] {
        let longitudinal = axis.longitudinal();
        let (t0, t1) = axis.transverse();
        let mut k_vec = [0.0; 3];
        k_vec[longitudinal] = 1.3;

        let mut linear = [Complex64::new(0.0, 0.0); 3];
        linear[t0] = Complex64::new(1.0, 0.0);
        let mut circular = [Complex64::new(0.0, 0.0); 3];
        circular[t0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        circular[t1] = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);

        for components in [linear, circular] {
            let pol = ComplexVec3::new(components, Basis::Cartesian);
            let point = SpatialPoint::from_spherical(0.7, 1.1, 0.4).unwrap();
            let sample =
                plane_wave_fields(Complex64::new(1.0, 0.0), k_vec, &pol, &point).unwrap();

            let reduction = reduce_to_conventional(&sample, axis);
            worst_off = worst_off.max(reduction.residual);

            let e = sample.e_field.components();
            for (row, &src_row) in [t0, t1].iter().enumerate() {
                for (col, &src_col) in [t0, t1].iter().enumerate() {
                    let direct = e[src_row].conj() * e[src_col];
                    worst_p2 = worst_p2.max((reduction.p2[row][col] - direct).norm());
                }
            }

            // The magnetic part carries the same transverse block and the
            // electric energy in the longitudinal corner.
            let p_b = gpm_magnetic(&sample.b_field);
            for src_row in [t0, t1] {
                for src_col in [t0, t1] {
                    let direct = e[src_row].conj() * e[src_col];
                    worst_pb = worst_pb.max((p_b.entry(src_row, src_col) - direct).norm());
                }
            }
            worst_pb = worst_pb
                .max((p_b.entry(longitudinal, longitudinal).re - sample.w_e()).abs());
        }
    }
    gate(
        "plane-wave-reduction",
        worst_off <= 1e-14 && worst_p2 <= 1e-14 && worst_pb <= 1e-14,
        &format!("off {worst_off:.3e}, p2 {worst_p2:.3e}, pb {worst_pb:.3e}"),
    );
}

#[test]
fn c04_zero_point_density_is_angle_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut worst_spread: f64 = 0.0;
    let mut worst_closed: f64 = 0.0;
    for kind in [MultipoleKind::Electric, MultipoleKind::Magnetic] {
        for j in 1..=6 {
            for x in [0.1, 0.7, 2.0, 5.0, 10.0] {
                let closed = zpo_density_dimensionless(kind, j, x).unwrap();
                let mut values = Vec::with_capacity(5);
                for _ in 0..5 {
                    let angles = AngularPoint::new(
                        rng.gen_range(0.05..3.09),
                        rng.gen_range(0.0..std::f64::consts::TAU),
                    )
                    .unwrap();
                    values.push(zpo_density_bruteforce(kind, j, x, &angles).unwrap());
                }
                for a in &values {
                    for b in &values {
                        worst_spread = worst_spread.max((a - b).abs());
                    }
                    worst_closed = worst_closed.max((a - closed).abs());
                }
            }
        }
    }
    gate(
        "zpo-angle-independence",
        worst_spread <= 1e-10 && worst_closed <= 1e-10,
        &format!("spread {worst_spread:.3e}, closed-form {worst_closed:.3e}"),
    );
}

#[test]
fn c05_radial_profile_reproduces_the_dipole_shape() {
    let start = Instant::now();
    let grid = linspace(0.01, 20.0, 500);
    let profile = radial_profile(MultipoleKind::Electric, 1, &grid).unwrap();

    let origin_ok = (profile.z[0] - 2.0).abs() <= 1e-3;
    let crossing_ok = matches!(profile.crossing, Some(x) if x > 1.9 && x < 2.0);
    let far_ok = profile
        .x
        .iter()
        .zip(&profile.z)
        .filter(|(x, _)| **x >= 15.0)
        .all(|(_, z)| *z < 0.05);
    let fast = start.elapsed().as_secs_f64() < 5.0;

    gate(
        "radial-profile-shape",
        origin_ok && crossing_ok && far_ok && fast,
        &format!(
            "z(0.01) {}, crossing {:?}, far-zone ok {far_ok}, elapsed {:?}",
            profile.z[0],
            profile.crossing,
            start.elapsed()
        ),
    );
}

#[test]
fn c06_completeness_and_homogeneity() {
    let mut worst_sum: f64 = 0.0;
    for x in [0.5, 1.0, 3.0, 8.0] {
        let completeness = completeness_total(x, 40).unwrap();
        assert!(!completeness.truncated, "j_max 40 covers x <= 8");
        worst_sum = worst_sum.max((completeness.value - 2.0).abs());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let points: Vec<SpatialPoint> = (0..100)
        .map(|_| {
            SpatialPoint::from_spherical(
                rng.gen_range(0.0..10.0),
                rng.gen_range(0.0..std::f64::consts::PI),
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
            .unwrap()
        })
        .collect();
    let deviation = plane_wave_homogeneity([0.4, -0.3, 1.1], &points).unwrap();

    gate(
        "completeness-homogeneity",
        worst_sum <= 1e-10 && deviation <= 1e-14,
        &format!("sum residual {worst_sum:.3e}, homogeneity {deviation:.3e}"),
    );
}

#[test]
fn c07_multipole_transversality() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut worst_electric: f64 = 0.0;
    let mut worst_magnetic: f64 = 0.0;
    let electric = [(1, 0), (2, 1), (3, -2), (5, 4)];
    let magnetic = [(1, 0), (2, -1), (4, 2), (6, 5)];

    for index in 0..50 {
        let point = SpatialPoint::from_spherical(
            rng.gen_range(0.5..10.0),
            rng.gen_range(0.05..3.09),
            rng.gen_range(0.0..std::f64::consts::TAU),
        )
        .unwrap();
        let radial = ComplexVec3::from_real(point.radial_unit());

        let (j, m) = electric[index % electric.len()];
        let mode = MultipoleMode::new(MultipoleKind::Electric, 1.0, j, m).unwrap();
        let sample = multipole_fields(&mode, &point).unwrap();
        let b_norm = sample.b_field.norm_sqr().sqrt();
        if b_norm > 0.0 {
            worst_electric =
                worst_electric.max(sample.b_field.dot(&radial).norm() / b_norm);
        }

        let (j, m) = magnetic[index % magnetic.len()];
        let mode = MultipoleMode::new(MultipoleKind::Magnetic, 1.0, j, m).unwrap();
        let sample = multipole_fields(&mode, &point).unwrap();
        let e_norm = sample.e_field.norm_sqr().sqrt();
        if e_norm > 0.0 {
            worst_magnetic =
                worst_magnetic.max(sample.e_field.dot(&radial).norm() / e_norm);
        }
    }

    gate(
        "multipole-transversality",
        worst_electric <= 1e-6 && worst_magnetic <= 1e-12,
        &format!("E-family B residual {worst_electric:.3e}, M-family E residual {worst_magnetic:.3e}"),
    );
}

#[test]
fn c08_matrix_structure_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut worst_hermitian: f64 = 0.0;
    let mut worst_psd: f64 = 0.0;
    let mut worst_rank: f64 = 0.0;
    let mut worst_magnetic: f64 = 0.0;
    let mut worst_phase: f64 = 0.0;

    for _ in 0..200 {
        let sample = random_sample(&mut rng);
        let total = gpm_total(&sample);
        worst_hermitian = worst_hermitian.max(hermiticity_residual(total.entries()));

        let trace = total.trace();
        let eigenvalues = total.eigenvalues();
        worst_psd = worst_psd.max((-eigenvalues[0] / trace.max(f64::MIN_POSITIVE)).max(0.0));

        let electric = gpm_electric(&sample.e_field).eigenvalues();
        worst_rank = worst_rank.max(electric[0].abs()).max(electric[1].abs());

        let w_b = sample.w_b();
        let magnetic = gpm_magnetic(&sample.b_field).eigenvalues();
        worst_magnetic = worst_magnetic
            .max(magnetic[0].abs())
            .max((magnetic[1] - w_b).abs())
            .max((magnetic[2] - w_b).abs());

        let e = ComplexVec3::new(
            [
                Complex64::from_polar(rng.gen_range(0.1..2.0), rng.gen_range(-3.0..3.0)),
                Complex64::from_polar(rng.gen_range(0.1..2.0), rng.gen_range(-3.0..3.0)),
                Complex64::from_polar(rng.gen_range(0.1..2.0), rng.gen_range(-3.0..3.0)),
            ],
            Basis::Cartesian,
        );
        let phases = phase_differences(&e).unwrap();
        let deltas = [phases.delta_xy, phases.delta_yz, phases.delta_zx];
        let wrapped = deltas
            .iter()
            .all(|d| *d > -std::f64::consts::PI && *d <= std::f64::consts::PI);
        assert!(wrapped, "phase differences leave (-pi, pi]");
        let turns = deltas.iter().sum::<f64>() / std::f64::consts::TAU;
        worst_phase = worst_phase.max((turns - turns.round()).abs() * std::f64::consts::TAU);
    }

    gate(
        "matrix-structure",
        worst_hermitian <= 1e-12
            && worst_psd <= 1e-12
            && worst_rank <= 1e-12
            && worst_magnetic <= 1e-12
            && worst_phase <= 1e-12,
        &format!(
            "hermitian {worst_hermitian:.3e}, psd {worst_psd:.3e}, rank {worst_rank:.3e}, \
             magnetic {worst_magnetic:.3e}, phase {worst_phase:.3e}"
        ),
    );
}

#[test]
fn c09_special_function_suite() {
    let report = validate::run_all();
    let wanted = [
        "bessel-recurrence",
        "bessel-reference",
        "bessel-completeness",
        "ylm-unsold",
        "ylm-conjugation",
        "ylm-quadrature",
        "cg-orthonormality",
        "cg-racah-cross-check",
    ];
    let mut missing = Vec::new();
    let mut failed = Vec::new();
    for name in wanted {
        match report.checks().iter().find(|check| check.name == name) {
            Some(check) if check.passed => {}
            Some(_) => failed.push(name),
            None => missing.push(name),
        }
    }
    gate(
        "special-function-suite",
        missing.is_empty() && failed.is_empty(),
        &format!("missing {missing:?}, failed {failed:?}"),
    );
}

#[test]
fn c10_cli_contract() {
    let validate_ok = polmat_cmd().arg("validate").output().unwrap().status.success();

    // Three-point file: header plus exactly three data rows, and the kr = 2
    // row must reproduce direct library calls at the emitted precision.
    let dir = env!("CARGO_TARGET_TMPDIR");
    let points_path = format!("{dir}/acceptance_points.csv");
    std::fs::write(&points_path, "# acceptance points\n2,1,0\n3,0.7,1.2\n5,2.2,4.0\n").unwrap();

    let args = [
        "gpm",
        "--source",
        "multipole",
        "--lambda",
        "E",
        "--j",
        "1",
        "--m",
        "0",
        "--points",
        points_path.as_str(),
    ];
    let first = polmat_cmd().args(args).output().unwrap();
    let second = polmat_cmd().args(args).output().unwrap();
    let deterministic = first.stdout == second.stdout && first.status.success();

    let text = String::from_utf8(first.stdout.clone()).unwrap();
    let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    let counts_ok = lines.len() == 4;

    let header: Vec<&str> = lines[0].split(',').collect();
    let row: Vec<&str> = lines[1].split(',').collect();
    let cell = |name: &str| row[header.iter().position(|h| *h == name).unwrap()];

    let mode = MultipoleMode::new(MultipoleKind::Electric, 1.0, 1, 0).unwrap();
    let point = SpatialPoint::from_spherical(2.0, 1.0, 0.0).unwrap();
    let sample = multipole_fields(&mode, &point).unwrap();
    let blocks = extract_blocks(&FieldStrengthTensor::new(&sample).bilinear_form()).unwrap();
    let p = DEFAULT_PRECISION;
    let spot_ok = cell("w_e") == format_float(blocks.w_e, p)
        && cell("p_xx_re") == format_float(blocks.p_matrix.entry(0, 0).re, p)
        && cell("p_zz_re") == format_float(blocks.p_matrix.entry(2, 2).re, p)
        && cell("s_x_re") == format_float(blocks.s_vec.components()[0].re, p);

    // Plane-wave spot values: the reference diag(2, 0, 1) matrix.
    let plane = polmat_cmd()
        .args(["gpm", "--source", "plane", "--points", "1,0.3,0.2"])
        .output()
        .unwrap();
    let plane_text = String::from_utf8(plane.stdout).unwrap();
    let plane_lines: Vec<&str> = plane_text.lines().filter(|l| !l.starts_with('#')).collect();
    let plane_header: Vec<&str> = plane_lines[0].split(',').collect();
    let plane_row: Vec<&str> = plane_lines[1].split(',').collect();
    let plane_cell =
        |name: &str| plane_row[plane_header.iter().position(|h| *h == name).unwrap()];
    let plane_ok = plane_cell("w_e") == "1"
        && plane_cell("p_xx_re") == "2"
        && plane_cell("p_yy_re") == "0"
        && plane_cell("p_zz_re") == "1"
        && plane_cell("s_z_re") == "1"
        && plane_cell("delta_xy") == "undefined";

    let profile_args = ["zpo-profile", "--lambda", "E", "--j", "1", "--x-min", "0.01"];
    let profile_first = polmat_cmd().args(profile_args).output().unwrap();
    let profile_second = polmat_cmd().args(profile_args).output().unwrap();
    let profile_ok =
        profile_first.status.success() && profile_first.stdout == profile_second.stdout;

    gate(
        "cli-contract",
        validate_ok && deterministic && counts_ok && spot_ok && plane_ok && profile_ok,
        &format!(
            "validate {validate_ok}, deterministic {deterministic}, rows {}, spot {spot_ok}, \
             plane {plane_ok}, profile {profile_ok}",
            lines.len()
        ),
    );
}
