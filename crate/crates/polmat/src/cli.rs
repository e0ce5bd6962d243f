//! Support code behind the `polmat` binary: run configurations,
//! deterministic number formatting, point-list parsing and CSV/JSON table
//! emission.
//!
//! Artifacts are byte-identical across runs: rows are emitted in input
//! order, floating-point values are printed as the shortest round-trip
//! decimal clamped to the configured precision, and tables carry a
//! versioned schema comment.

use std::fs;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fieldsrc::{
    multipole_fields, plane_wave_fields, FieldSample, MultipoleKind, MultipoleMode, SpatialPoint,
};
use crate::gpmcore::{
    extract_blocks, invariants_report, phase_differences, FieldStrengthTensor,
};
use crate::vec3::ComplexVec3;
use crate::zpo::{
    radial_profile, zpo_energy_ratio, zpo_polarization_matrix, ModeFilter, RadialProfile,
};

pub const DEFAULT_PRECISION: usize = 12;
pub const MIN_PRECISION: usize = 6;
pub const MAX_PRECISION: usize = 17;
pub const DEFAULT_BASELINE: f64 = 2.0 / 3.0;

/// Failure classes of the command-line front end, mapped to exit codes:
/// configuration errors exit 2, input/output errors exit 3.
#[derive(Debug, Clone, PartialEq)]
pub enum CliFailure {
    Config(String),
    Io(String),
}

impl CliFailure {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliFailure::Config(_) => 2,
            CliFailure::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliFailure::Config(message) => write!(f, "{message}"),
            CliFailure::Io(message) => write!(f, "{message}"),
        }
    }
}

fn config_error(error: Error) -> CliFailure {
    CliFailure::Config(error.to_string())
}

/// Output format of emitted artifacts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Shortest decimal that round-trips to `value`, re-rendered in scientific
/// notation when it needs more significant digits than `precision`.
pub fn format_float(value: f64, precision: usize) -> String {
    let shortest = format!("{value}");
    if significant_digits(&shortest) <= precision {
        shortest
    } else {
        format!("{value:.prec$e}", prec = precision - 1)
    }
}

fn significant_digits(rendered: &str) -> usize {
    let mantissa = rendered.split(['e', 'E']).next().unwrap_or(rendered);
    let digits: Vec<u8> = mantissa
        .bytes()
        .filter(|byte| byte.is_ascii_digit())
        .collect();
    let leading_zeros = digits.iter().take_while(|&&byte| byte == b'0').count();
    (digits.len() - leading_zeros).max(1)
}

/// One table cell: a pre-formatted number or literal text (the
/// "undefined" phase sentinel and mode labels).
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(String),
    Text(String),
}

impl Cell {
    fn csv(&self) -> &str {
        match self {
            Cell::Num(value) => value,
            Cell::Text(value) => value,
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Num(value) => value.clone(),
            Cell::Text(value) => format!("\"{}\"", json_escape(value)),
        }
    }
}

fn num(value: f64, precision: usize) -> Cell {
    Cell::Num(format_float(value, precision))
}

fn json_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Columnar artifact with a versioned schema, rendered to CSV or JSON.
/// CSV starts with a `# schema=<name> version=1` comment followed by the
/// header row; metadata entries become `# key=value` footer comments. The
/// JSON rendering mirrors the rows as an array of flat objects.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    schema: &'static str,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    meta: Vec<(&'static str, String)>,
}

impl Table {
    pub fn new(schema: &'static str, columns: Vec<&'static str>) -> Self {
        Self {
            schema,
            columns,
            rows: Vec::new(),
            meta: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width matches header");
        self.rows.push(row);
    }

    pub fn push_meta(&mut self, key: &'static str, value: String) {
        self.meta.push((key, value));
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = format!("# schema={} version=1\n", self.schema);
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<&str> = row.iter().map(Cell::csv).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        for (key, value) in &self.meta {
            out.push_str(&format!("# {key}={value}\n"));
        }
        out
    }

    fn to_json(&self) -> String {
        let mut out = format!("{{\"schema\":\"{}\",\"version\":1,\"records\":[", self.schema);
        for (index, row) in self.rows.iter().enumerate() {
            if index > 0 {
                out.push(',');
            }
            out.push('{');
            for (col, (name, cell)) in self.columns.iter().zip(row).enumerate() {
                if col > 0 {
                    out.push(',');
                }
                out.push_str(&format!("\"{}\":{}", name, cell.json()));
            }
            out.push('}');
        }
        out.push(']');
        if !self.meta.is_empty() {
            out.push_str(",\"meta\":{");
            for (index, (key, value)) in self.meta.iter().enumerate() {
                if index > 0 {
                    out.push(',');
                }
                out.push_str(&format!("\"{}\":\"{}\"", key, json_escape(value)));
            }
            out.push('}');
        }
        out.push_str("}\n");
        out
    }
}

/// Parse "r,theta,phi" into finite components.
pub fn parse_point_components(text: &str) -> Option<[f64; 3]> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return None;
    }
    let mut triple = [0.0; 3];
    for (slot, part) in triple.iter_mut().zip(&parts) {
        let value: f64 = part.parse().ok()?;
        if !value.is_finite() {
            return None;
        }
        *slot = value;
    }
    Some(triple)
}

/// Parse a points file: one "r,theta,phi" triple per line, blank lines and
/// '#' comments skipped. Errors carry the offending line number.
pub fn parse_points_file(content: &str) -> std::result::Result<Vec<[f64; 3]>, (usize, String)> {
    let mut points = Vec::new();
    for (index, line) in content.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match parse_point_components(trimmed) {
            Some(triple) => points.push(triple),
            None => {
                return Err((index + 1, format!("expected \"r,theta,phi\", got \"{trimmed}\"")))
            }
        }
    }
    Ok(points)
}

/// Resolve --points: an inline "r,theta,phi" triple when the value
/// contains a comma, otherwise a file of triples.
pub fn load_points(value: &str) -> std::result::Result<Vec<[f64; 3]>, CliFailure> {
    if value.contains(',') {
        let triple = parse_point_components(value).ok_or_else(|| {
            CliFailure::Config(format!("--points value \"{value}\" is not a valid r,theta,phi triple"))
        })?;
        return Ok(vec![triple]);
    }
    let content = fs::read_to_string(value)
        .map_err(|error| CliFailure::Io(format!("cannot read points file {value}: {error}")))?;
    let points = parse_points_file(&content)
        .map_err(|(line, message)| CliFailure::Io(format!("{value}:{line}: {message}")))?;
    if points.is_empty() {
        return Err(CliFailure::Config(format!(
            "points file {value} contains no data rows"
        )));
    }
    Ok(points)
}

/// Parse a comma-separated mode list such as "E1,M1,E2".
pub fn parse_mode_list(text: &str) -> std::result::Result<Vec<(MultipoleKind, u32)>, CliFailure> {
    let mut modes = Vec::new();
    for raw in text.split(',') {
        let token = raw.trim();
        let mut chars = token.chars();
        let head = chars.next().ok_or_else(|| {
            CliFailure::Config(format!("empty mode token in \"{text}\""))
        })?;
        let kind = MultipoleKind::from_char(head).map_err(|_| {
            CliFailure::Config(format!("mode token \"{token}\" must start with E or M"))
        })?;
        let order: u32 = chars.as_str().parse().map_err(|_| {
            CliFailure::Config(format!("mode token \"{token}\": expected an integer order"))
        })?;
        if order == 0 {
            return Err(CliFailure::Config(format!(
                "mode token \"{token}\": the order starts at 1"
            )));
        }
        modes.push((kind, order));
    }
    Ok(modes)
}

/// Inclusive linear grid from `min` to `max`.
pub fn linspace(min: f64, max: f64, samples: usize) -> Vec<f64> {
    let span = max - min;
    (0..samples)
        .map(|i| min + span * i as f64 / (samples - 1) as f64)
        .collect()
}

/// Field source selected on the command line. The plane wave propagates
/// along z with unit amplitude and linear polarization along x; multipole
/// fields carry unit amplitude.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldSource {
    Plane { k: f64 },
    Multipole { mode: MultipoleMode },
}

impl FieldSource {
    pub fn k(&self) -> f64 {
        match self {
            FieldSource::Plane { k } => *k,
            FieldSource::Multipole { mode } => mode.k(),
        }
    }

    pub fn sample(&self, point: &SpatialPoint) -> Result<FieldSample> {
        match self {
            FieldSource::Plane { k } => {
                let pol = ComplexVec3::from_real([1.0, 0.0, 0.0]);
                plane_wave_fields(Complex64::new(1.0, 0.0), [0.0, 0.0, *k], &pol, point)
            }
            FieldSource::Multipole { mode } => multipole_fields(mode, point),
        }
    }
}

/// Point radii arrive in units of 1/k, so the physical radius is r / k.
fn physical_point(triple: [f64; 3], k: f64) -> std::result::Result<SpatialPoint, CliFailure> {
    SpatialPoint::from_spherical(triple[0] / k, triple[1], triple[2]).map_err(config_error)
}

pub struct GpmConfig {
    pub source: FieldSource,
    pub points: Vec<[f64; 3]>,
    pub precision: usize,
}

const GPM_COLUMNS: [&str; 34] = [
    "r", "theta", "phi", "w_e", "s_x_re", "s_x_im", "s_y_re", "s_y_im", "s_z_re", "s_z_im",
    "p_xx_re", "p_xx_im", "p_xy_re", "p_xy_im", "p_xz_re", "p_xz_im", "p_yx_re", "p_yx_im",
    "p_yy_re", "p_yy_im", "p_yz_re", "p_yz_im", "p_zx_re", "p_zx_im", "p_zy_re", "p_zy_im",
    "p_zz_re", "p_zz_im", "delta_xy", "delta_yz", "delta_zx", "e_dot_b_re", "e_dot_b_im",
    "e2_minus_b2",
];

/// Tabulate the polarization blocks at every input point: the electric
/// energy density, the flux conj(E) x B, the nine matrix entries, the
/// pairwise phase differences (or the "undefined" sentinel) and the
/// normalized invariants.
pub fn run_gpm(config: &GpmConfig) -> std::result::Result<Table, CliFailure> {
    let mut table = Table::new("gpm", GPM_COLUMNS.to_vec());
    for &triple in &config.points {
        let point = physical_point(triple, config.source.k())?;
        let sample = config.source.sample(&point).map_err(config_error)?;
        let blocks = extract_blocks(&FieldStrengthTensor::new(&sample).bilinear_form())
            .map_err(config_error)?;

        let p = config.precision;
        let mut row = vec![num(triple[0], p), num(triple[1], p), num(triple[2], p)];
        row.push(num(blocks.w_e, p));
        for component in blocks.s_vec.components() {
            row.push(num(component.re, p));
            row.push(num(component.im, p));
        }
        for i in 0..3 {
            for j in 0..3 {
                let entry = blocks.p_matrix.entry(i, j);
                row.push(num(entry.re, p));
                row.push(num(entry.im, p));
            }
        }
        match phase_differences(&sample.e_field) {
            Ok(phases) => {
                row.push(num(phases.delta_xy, p));
                row.push(num(phases.delta_yz, p));
                row.push(num(phases.delta_zx, p));
            }
            Err(Error::UndefinedPhase { .. }) => {
                for _ in 0..3 {
                    row.push(Cell::Text("undefined".into()));
                }
            }
            Err(other) => return Err(config_error(other)),
        }
        let invariants = invariants_report(&sample);
        row.push(num(invariants.e_dot_b.re, p));
        row.push(num(invariants.e_dot_b.im, p));
        row.push(num(invariants.e2_minus_b2, p));
        table.push_row(row);
    }
    Ok(table)
}

pub struct ProfileConfig {
    pub kind: MultipoleKind,
    pub j: u32,
    pub x_min: f64,
    pub x_max: f64,
    pub samples: usize,
    pub baseline: f64,
    pub precision: usize,
}

/// Tabulate Z along a linear radial grid next to the constant plane-wave
/// reference level. The baseline is a display convention, not a derived
/// quantity; the footer records it together with the quarter-level
/// crossing.
pub fn run_zpo_profile(config: &ProfileConfig) -> std::result::Result<Table, CliFailure> {
    if config.samples < 2 {
        return Err(CliFailure::Config(format!(
            "--samples must be at least 2, got {}",
            config.samples
        )));
    }
    if !config.x_min.is_finite() || !config.x_max.is_finite() || config.x_min < 0.0 {
        return Err(CliFailure::Config(
            "--x-min and --x-max must be finite and non-negative".into(),
        ));
    }
    if config.x_min >= config.x_max {
        return Err(CliFailure::Config(format!(
            "--x-min {} must be below --x-max {}",
            config.x_min, config.x_max
        )));
    }
    if !config.baseline.is_finite() {
        return Err(CliFailure::Config("--baseline must be finite".into()));
    }

    let grid = linspace(config.x_min, config.x_max, config.samples);
    let profile = radial_profile(config.kind, config.j, &grid).map_err(config_error)?;
    Ok(profile_table(config, &profile))
}

fn profile_table(config: &ProfileConfig, profile: &RadialProfile) -> Table {
    let p = config.precision;
    let mut table = Table::new("zpo_profile", vec!["x", "z", "baseline"]);
    for (x, z) in profile.x.iter().zip(&profile.z) {
        table.push_row(vec![num(*x, p), num(*z, p), num(config.baseline, p)]);
    }
    table.push_meta("lambda", config.kind.as_char().to_string());
    table.push_meta("j", config.j.to_string());
    table.push_meta("baseline", format_float(config.baseline, p));
    table.push_meta(
        "baseline_convention",
        "constant display reference, default 2/3".into(),
    );
    table.push_meta(
        "crossing",
        match profile.crossing {
            Some(x) => format_float(x, p),
            None => "none".into(),
        },
    );
    table.push_meta("z_origin", format_float(profile.z_origin, p));
    table
}

/// Exact zero-point energy ratio of the selected modes, as a display line
/// ("3/2 = 1.5") plus a one-row table. The values are exact integers, so
/// the precision setting does not apply.
pub fn run_zpo_ratio(
    modes: &[(MultipoleKind, u32)],
) -> std::result::Result<(Table, String), CliFailure> {
    let filter = ModeFilter::new(modes.to_vec(), 1.0).map_err(config_error)?;
    let ratio = zpo_energy_ratio(&filter);
    let decimal = *ratio.numer() as f64 / *ratio.denom() as f64;
    let line = format!("{}/{} = {:.1}", ratio.numer(), ratio.denom(), decimal);

    let labels: Vec<String> = filter
        .modes()
        .iter()
        .map(|(kind, j)| format!("{}{}", kind.as_char(), j))
        .collect();
    let mut table = Table::new(
        "zpo_ratio",
        vec!["modes", "numerator", "denominator", "decimal"],
    );
    table.push_row(vec![
        Cell::Text(labels.join(";")),
        Cell::Num(ratio.numer().to_string()),
        Cell::Num(ratio.denom().to_string()),
        Cell::Num(format!("{decimal:.1}")),
    ]);
    Ok((table, line))
}

pub struct MatrixConfig {
    pub kind: MultipoleKind,
    pub j: u32,
    pub k: f64,
    pub points: Vec<[f64; 3]>,
    pub precision: usize,
}

const MATRIX_COLUMNS: [&str; 22] = [
    "r", "theta", "phi", "trace", "p0_pp_re", "p0_pp_im", "p0_pz_re", "p0_pz_im", "p0_pm_re",
    "p0_pm_im", "p0_zp_re", "p0_zp_im", "p0_zz_re", "p0_zz_im", "p0_zm_re", "p0_zm_im",
    "p0_mp_re", "p0_mp_im", "p0_mz_re", "p0_mz_im", "p0_mm_re", "p0_mm_im",
];

/// Tabulate the zero-point polarization matrix of one multipole family in
/// the helicity basis (entries labeled p/z/m for the +1, 0, -1
/// components).
pub fn run_zpo_matrix(config: &MatrixConfig) -> std::result::Result<Table, CliFailure> {
    let mut table = Table::new("zpo_matrix", MATRIX_COLUMNS.to_vec());
    for &triple in &config.points {
        let point = physical_point(triple, config.k)?;
        let matrix = zpo_polarization_matrix(config.kind, config.j, config.k, &point)
            .map_err(config_error)?;
        let p = config.precision;
        let mut row = vec![
            num(triple[0], p),
            num(triple[1], p),
            num(triple[2], p),
            num(matrix.trace(), p),
        ];
        for i in 0..3 {
            for j in 0..3 {
                let entry = matrix.entry(i, j);
                row.push(num(entry.re, p));
                row.push(num(entry.im, p));
            }
        }
        table.push_row(row);
    }
    table.push_meta("lambda", config.kind.as_char().to_string());
    table.push_meta("j", config.j.to_string());
    table.push_meta("k", format_float(config.k, config.precision));
    Ok(table)
}
