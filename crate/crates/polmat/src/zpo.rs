//! Zero-point oscillation quantities summed over multipole modes.
//!
//! Summing |V_mu|^2 of one multipole family over all projections m and
//! helicities gives an angle-independent radial density. In the
//! dimensionless variable x = k r,
//!
//! ```text
//! Z_{E,j}(x) = (j + 1) j_{j-1}(x)^2 + j j_{j+1}(x)^2
//! Z_{M,j}(x) = (2 j + 1) j_j(x)^2
//! ```
//!
//! normalized so the mode sum over all j and both families equals 2
//! everywhere. Only the electric dipole survives at the origin, with
//! Z_{E,1}(0) = 2.

use num_complex::Complex64;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::fieldsrc::{
    multipole_fields, multipole_potential_vector, plane_wave_fields, MultipoleKind, MultipoleMode,
    SpatialPoint,
};
use crate::gpmcore::{gpm_total, HermitianMat3};
use crate::specfun::{spherical_bessel_batch, AngularPoint, HelicityIndex};
use crate::vec3::{norm3, Basis, ComplexVec3};

/// Selection of multipole families (kind, j) sharing one wavenumber.
/// Duplicates are merged and the list is kept sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeFilter {
    modes: Vec<(MultipoleKind, u32)>,
    k: f64,
}

impl ModeFilter {
    pub fn new(mut modes: Vec<(MultipoleKind, u32)>, k: f64) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::Domain("mode filter needs at least one mode".into()));
        }
        if !k.is_finite() || k <= 0.0 {
            return Err(Error::Domain(format!(
                "wavenumber k = {k} must be finite and positive"
            )));
        }
        if let Some((kind, j)) = modes.iter().find(|(_, j)| *j == 0) {
            return Err(Error::Domain(format!(
                "mode ({}, {j}) is invalid; j starts at 1",
                kind.as_char()
            )));
        }
        modes.sort();
        modes.dedup();
        Ok(Self { modes, k })
    }

    pub fn modes(&self) -> &[(MultipoleKind, u32)] {
        &self.modes
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

/// Zero-point energy of the selected modes in units of the single-mode
/// ground state energy: each family contributes its 2 j + 1 projections,
/// each worth one half.
pub fn zpo_energy_ratio(filter: &ModeFilter) -> Rational64 {
    let projections: i64 = filter.modes().iter().map(|&(_, j)| 2 * i64::from(j) + 1).sum();
    Rational64::new(projections, 2)
}

/// Closed-form dimensionless zero-point density Z of one family at x = k r.
pub fn zpo_density_dimensionless(kind: MultipoleKind, j: u32, x: f64) -> Result<f64> {
    if j == 0 {
        return Err(Error::Domain("multipole order j starts at 1".into()));
    }
    let bessel = spherical_bessel_batch(j as usize + 1, x)?;
    let jf = f64::from(j);
    Ok(match kind {
        MultipoleKind::Electric => {
            let lower = bessel[j as usize - 1];
            let upper = bessel[j as usize + 1];
            (jf + 1.0) * lower * lower + jf * upper * upper
        }
        MultipoleKind::Magnetic => {
            let mid = bessel[j as usize];
            (2.0 * jf + 1.0) * mid * mid
        }
    })
}

/// The same density assembled mode by mode: 4 pi times the sum of
/// |V_mu|^2 over all projections m and helicities, evaluated at the given
/// direction with k = 1 and r = x. Agreement with the closed form at every
/// direction is the angle-independence statement.
pub fn zpo_density_bruteforce(
    kind: MultipoleKind,
    j: u32,
    x: f64,
    angles: &AngularPoint,
) -> Result<f64> {
    let point = SpatialPoint::new(x, *angles)?;
    let mut sum = 0.0;
    for m in -(j as i32)..=j as i32 {
        let mode = MultipoleMode::new(kind, 1.0, j, m)?;
        let v = multipole_potential_vector(&mode, &point)?;
        sum += v.norm_sqr();
    }
    Ok(4.0 * std::f64::consts::PI * sum)
}

/// Zero-point polarization matrix of one family in the helicity basis,
/// k^2 sum_m V_mu conj(V_mu'). Its trace is k^2 Z / (4 pi); the individual
/// entries retain a direction dependence that cancels only in the trace.
pub fn zpo_polarization_matrix(
    kind: MultipoleKind,
    j: u32,
    k: f64,
    point: &SpatialPoint,
) -> Result<HermitianMat3> {
    if point.r() == 0.0 && !(kind == MultipoleKind::Electric && j == 1) {
        return Err(Error::Domain(
            "the zero-point matrix at r = 0 is defined only for the electric dipole".into(),
        ));
    }
    let mut entries = [[Complex64::new(0.0, 0.0); 3]; 3];
    for m in -(j as i32)..=j as i32 {
        let mode = MultipoleMode::new(kind, k, j, m)?;
        let v = multipole_potential_vector(&mode, point)?.components();
        for mu in HelicityIndex::ALL {
            for nu in HelicityIndex::ALL {
                entries[mu.slot()][nu.slot()] += v[mu.slot()] * v[nu.slot()].conj();
            }
        }
    }
    for row in entries.iter_mut() {
        for entry in row.iter_mut() {
            *entry *= k * k;
        }
    }
    HermitianMat3::new(entries)
}

/// Zero-point analogues of the blocks of the bilinear form, summed over
/// all projections of the selected families: the electric energy density,
/// the flux asymmetry conj(E) x B - conj(conj(E) x B) and the total
/// polarization matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ZpoBlocks {
    pub scalar: f64,
    pub vector: ComplexVec3,
    pub p0: HermitianMat3,
}

pub fn zpo_block_matrix(filter: &ModeFilter, point: &SpatialPoint) -> Result<ZpoBlocks> {
    let mut scalar = 0.0;
    let mut vector = ComplexVec3::zero(Basis::Cartesian);
    let mut p0 = HermitianMat3::zero();
    for &(kind, j) in filter.modes() {
        for m in -(j as i32)..=j as i32 {
            let mode = MultipoleMode::new(kind, filter.k(), j, m)?;
            let sample = multipole_fields(&mode, point)?;
            scalar += sample.w_e();
            let flux = sample.e_field.conj().cross(&sample.b_field);
            vector = vector + (flux - flux.conj());
            p0 = &p0 + &gpm_total(&sample);
        }
    }
    Ok(ZpoBlocks { scalar, vector, p0 })
}

/// Mode sum of Z over both families up to j_max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Completeness {
    pub value: f64,
    /// Set when j_max is too small for the tail beyond it to be
    /// negligible at this x.
    pub truncated: bool,
}

/// Sum of Z_{E,j} + Z_{M,j} for j = 1..=j_max. Converges to 2 for every x
/// once j_max comfortably exceeds x.
pub fn completeness_total(x: f64, j_max: u32) -> Result<Completeness> {
    if j_max == 0 {
        return Err(Error::Domain("completeness sum needs j_max >= 1".into()));
    }
    let bessel = spherical_bessel_batch(j_max as usize + 1, x)?;
    let mut value = 0.0;
    for j in 1..=j_max as usize {
        let jf = j as f64;
        let lower = bessel[j - 1];
        let mid = bessel[j];
        let upper = bessel[j + 1];
        value += (jf + 1.0) * lower * lower + jf * upper * upper;
        value += (2.0 * jf + 1.0) * mid * mid;
    }
    Ok(Completeness {
        value,
        truncated: f64::from(j_max) < x + 30.0,
    })
}

/// Z along a strictly increasing radial grid, with the first grid point
/// where Z drops below a quarter of its origin value.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    pub x: Vec<f64>,
    pub z: Vec<f64>,
    pub crossing: Option<f64>,
    pub z_origin: f64,
}

pub fn radial_profile(kind: MultipoleKind, j: u32, grid: &[f64]) -> Result<RadialProfile> {
    if grid.is_empty() {
        return Err(Error::Domain("radial grid must not be empty".into()));
    }
    for window in grid.windows(2) {
        if window[1].partial_cmp(&window[0]) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::Domain("radial grid must be strictly increasing".into()));
        }
    }
    if !grid[0].is_finite() || grid[0] < 0.0 || !grid[grid.len() - 1].is_finite() {
        return Err(Error::Domain("radial grid must be finite and non-negative".into()));
    }

    let z_origin = zpo_density_dimensionless(kind, j, 0.0)?;
    let threshold = 0.25 * z_origin;
    let mut z = Vec::with_capacity(grid.len());
    let mut crossing = None;
    for &x in grid {
        let value = zpo_density_dimensionless(kind, j, x)?;
        if crossing.is_none() && threshold > 0.0 && value < threshold {
            crossing = Some(x);
        }
        z.push(value);
    }
    Ok(RadialProfile {
        x: grid.to_vec(),
        z,
        crossing,
        z_origin,
    })
}

/// Largest deviation of the plane-wave intensity |E|^2 from its value for
/// a unit amplitude, over the given points. Zero up to rounding: a single
/// plane wave has a homogeneous energy density, unlike any single
/// multipole mode.
pub fn plane_wave_homogeneity(k_vec: [f64; 3], points: &[SpatialPoint]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::Domain("homogeneity scan needs at least one point".into()));
    }
    let k_norm = norm3(k_vec);
    if !k_norm.is_finite() || k_norm == 0.0 {
        return Err(Error::Domain("plane-wave k_vec must be nonzero and finite".into()));
    }
    let k_hat = [k_vec[0] / k_norm, k_vec[1] / k_norm, k_vec[2] / k_norm];
    let seed = if k_hat[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let along = crate::vec3::dot3(seed, k_hat);
    let mut pol = [
        seed[0] - along * k_hat[0],
        seed[1] - along * k_hat[1],
        seed[2] - along * k_hat[2],
    ];
    let pol_norm = norm3(pol);
    for component in pol.iter_mut() {
        *component /= pol_norm;
    }
    let pol = ComplexVec3::from_real(pol);

    let mut worst: f64 = 0.0;
    for point in points {
        let sample = plane_wave_fields(Complex64::new(1.0, 0.0), k_vec, &pol, point)?;
        worst = worst.max((sample.w_e() - 1.0).abs());
    }
    Ok(worst)
}
