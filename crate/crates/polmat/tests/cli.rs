//! Command-line behavior: exit codes, artifact shapes and byte-for-byte
//! determinism.

use assert_cmd::Command;

fn cmd() -> Command {
    Command::cargo_bin("polmat").unwrap()
}

fn tmp_path(name: &str) -> String {
    format!("{}/{name}", env!("CARGO_TARGET_TMPDIR"))
}

#[test]
fn validate_passes_and_is_deterministic() {
    let first = cmd().arg("validate").output().unwrap();
    assert!(first.status.success());
    let text = String::from_utf8(first.stdout.clone()).unwrap();
    assert!(text.contains("block-equivalence"));
    assert!(text.contains("all checks passed"));
    assert!(!text.contains("FAIL"));

    let second = cmd().arg("validate").output().unwrap();
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn ratio_lines_are_exact() {
    cmd()
        .args(["zpo-ratio", "--modes", "E1"])
        .assert()
        .success()
        .stdout("3/2 = 1.5\n");
    cmd()
        .args(["zpo-ratio", "--modes", "E1,M1"])
        .assert()
        .success()
        .stdout("3/1 = 3.0\n");
    cmd()
        .args(["zpo-ratio", "--modes", "E1,E2"])
        .assert()
        .success()
        .stdout("4/1 = 4.0\n");
}

#[test]
fn bad_configuration_exits_two() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["zpo-ratio", "--modes", ""],
        vec!["zpo-ratio", "--modes", "X1"],
        vec!["zpo-profile", "--lambda", "Q", "--j", "1"],
        vec!["zpo-profile", "--lambda", "E", "--j", "1", "--samples", "1"],
        vec!["zpo-profile", "--lambda", "E", "--j", "0"],
        vec!["gpm", "--source", "plane", "--points", "1,2,3,4"],
        vec!["gpm", "--source", "plane", "--j", "1", "--points", "1,1,1"],
        vec!["gpm", "--source", "multipole", "--lambda", "E", "--j", "1", "--points", "1,1,1"],
        vec![
            "gpm", "--source", "multipole", "--lambda", "E", "--j", "1", "--m", "5", "--points",
            "1,1,1",
        ],
        vec!["gpm", "--source", "plane", "--points", "1,1,1", "--precision", "18"],
        vec!["gpm", "--source", "plane", "--points", "1,1,1", "--precision", "5"],
        vec!["gpm", "--source", "plane", "--k", "-1", "--points", "1,1,1"],
        // Magnetic multipoles vanish at the origin, so the matrix is undefined there.
        vec![
            "gpm", "--source", "multipole", "--lambda", "M", "--j", "1", "--m", "0", "--points",
            "0,0,0",
        ],
    ];
    for args in cases {
        let output = cmd().args(&args).output().unwrap();
        assert_eq!(output.status.code(), Some(2), "args {args:?}");
    }
    // Unknown flags follow the same convention through the parser.
    let output = cmd().args(["gpm", "--bogus"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn io_failures_exit_three() {
    let output = cmd()
        .args(["gpm", "--source", "plane", "--points", "missing_points.csv"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));

    let bad = tmp_path("bad_points.csv");
    std::fs::write(&bad, "# ok\n1,0.5,0.5\n1,2\n").unwrap();
    let output = cmd()
        .args(["gpm", "--source", "plane", "--points", &bad])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains(":3:"), "line number in {stderr:?}");

    let output = cmd()
        .args([
            "gpm",
            "--source",
            "plane",
            "--points",
            "1,1,1",
            "--out",
            "/nonexistent_dir/out.csv",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn points_files_skip_comments_and_blanks() {
    let path = tmp_path("commented_points.csv");
    std::fs::write(&path, "# two points\n\n1,0.5,0.0\n# interior comment\n2,1.0,3.0\n").unwrap();
    let output = cmd()
        .args(["gpm", "--source", "plane", "--points", &path])
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let data_rows = text.lines().filter(|l| !l.starts_with('#')).count() - 1;
    assert_eq!(data_rows, 2);
}

#[test]
fn csv_leads_with_schema_and_marks_undefined_phases() {
    let output = cmd()
        .args(["gpm", "--source", "plane", "--points", "1,0.3,0.2"])
        .output()
        .unwrap();
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.starts_with("# schema=gpm version=1\nr,theta,phi,w_e,"));
    // Linear x-polarization leaves the y and z phases undefined.
    assert!(text.contains(",undefined,undefined,undefined,"));
    assert!(!text.contains("NaN"));
}

#[test]
fn json_mirrors_the_csv_records() {
    let output = cmd()
        .args(["gpm", "--source", "plane", "--points", "1,0.3,0.2", "--format", "json"])
        .output()
        .unwrap();
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.starts_with("{\"schema\":\"gpm\",\"version\":1,\"records\":[{\"r\":1,"));
    assert!(text.contains("\"delta_xy\":\"undefined\""));
    assert!(text.contains("\"p_xx_re\":2"));
    assert!(text.ends_with("}\n"));
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let args = ["zpo-profile", "--lambda", "M", "--j", "2", "--samples", "50"];
    let stdout = cmd().args(args).output().unwrap().stdout;

    let path = tmp_path("profile_out.csv");
    cmd().args(args).args(["--out", &path]).assert().success();
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}

#[test]
fn profile_emits_requested_grid_with_footer() {
    let output = cmd()
        .args(["zpo-profile", "--lambda", "E", "--j", "1", "--x-min", "0.01", "--samples", "500"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let data_rows = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("x,"))
        .count();
    assert_eq!(data_rows, 500);
    assert!(text.contains("# lambda=E\n"));
    assert!(text.contains("# j=1\n"));
    assert!(text.contains("# baseline="));
    assert!(text.contains("# crossing=1.9"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "gpm", "--source", "multipole", "--lambda", "M", "--j", "2", "--m", "1", "--points",
        "2,1,0.5", "--format", "json",
    ];
    let first = cmd().args(args).output().unwrap();
    let second = cmd().args(args).output().unwrap();
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn precision_flag_bounds_emitted_digits() {
    let args = |precision: &'static str| {
        [
            "gpm", "--source", "multipole", "--lambda", "E", "--j", "1", "--m", "0", "--points",
            "2,1,0", "--precision", precision,
        ]
    };
    let coarse = String::from_utf8(cmd().args(args("6")).output().unwrap().stdout).unwrap();
    let fine = String::from_utf8(cmd().args(args("17")).output().unwrap().stdout).unwrap();
    assert_ne!(coarse, fine);

    let row = coarse.lines().nth(2).unwrap();
    for cell in row.split(',').filter(|cell| *cell != "undefined") {
        let mantissa: String = cell
            .split(['e', 'E'])
            .next()
            .unwrap()
            .chars()
            .filter(|c| c.is_ascii_digit())
            .collect();
        let digits = mantissa.trim_start_matches('0').len().max(1);
        assert!(digits <= 6, "cell {cell} exceeds 6 significant digits");
    }
}

#[test]
fn matrix_subcommand_tabulates_helicity_entries() {
    let output = cmd()
        .args(["zpo-matrix", "--lambda", "E", "--j", "1", "--points", "2,1,0"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.starts_with("# schema=zpo_matrix version=1\nr,theta,phi,trace,p0_pp_re,"));
    assert!(text.contains("# lambda=E\n"));

    // The origin is only defined for the electric dipole.
    cmd()
        .args(["zpo-matrix", "--lambda", "E", "--j", "1", "--points", "0,0,0"])
        .assert()
        .success();
    let output = cmd()
        .args(["zpo-matrix", "--lambda", "E", "--j", "2", "--points", "0,0,0"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn ratio_out_writes_an_artifact_next_to_the_line() {
    let path = tmp_path("ratio.json");
    cmd()
        .args(["zpo-ratio", "--modes", "M2,E1", "--out", &path, "--format", "json"])
        .assert()
        .success()
        .stdout("4/1 = 4.0\n");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"modes\":\"E1;M2\""));
    assert!(text.contains("\"numerator\":4"));
}
