//! C interface to the polarization-matrix library.
//!
//! Every fallible entry point returns a [`PolmatStatus`] and writes its
//! results through out pointers. Matrices travel row-major as nine complex
//! entries. Radial profiles are heap-backed opaque handles released with
//! [`polmat_profile_free`]. Panics never cross the boundary; they surface
//! as [`PolmatStatus::InternalError`].

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use num_complex::Complex64;

use polmat::cli::{linspace, parse_mode_list};
use polmat::fieldsrc::{multipole_fields, FieldSample, MultipoleKind, MultipoleMode, SpatialPoint};
use polmat::gpmcore::{extract_blocks, gpm_total, FieldStrengthTensor, HermitianMat3};
use polmat::zpo::{radial_profile, zpo_density_dimensionless, zpo_energy_ratio, ModeFilter, RadialProfile};
use polmat::{Basis, ComplexVec3, Error};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolmatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The requested quantity does not exist for this input (undefined
    /// phase, missing crossing).
    UndefinedValue = 3,
    NonFinite = 4,
    /// An internal invariant failed; results must not be trusted.
    InternalError = 5,
}

/// Complex number crossing the boundary as two doubles.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolmatComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for PolmatComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// Opaque handle to a tabulated zero-point radial profile.
pub struct PolmatProfile {
    inner: RadialProfile,
}

fn status_of(error: &Error) -> PolmatStatus {
    match error {
        Error::Domain(_) => PolmatStatus::InvalidArgument,
        Error::UndefinedPhase { .. } => PolmatStatus::UndefinedValue,
        Error::NonFinite(_) => PolmatStatus::NonFinite,
        Error::Contract(_) => PolmatStatus::InternalError,
    }
}

fn guarded(body: impl FnOnce() -> PolmatStatus) -> PolmatStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(PolmatStatus::InternalError)
}

fn kind_of(kind: c_char) -> Result<MultipoleKind, PolmatStatus> {
    MultipoleKind::from_char(kind as u8 as char).map_err(|_| PolmatStatus::InvalidArgument)
}

fn write_matrix(matrix: &HermitianMat3, out: *mut PolmatComplex) {
    let out = unsafe { slice::from_raw_parts_mut(out, 9) };
    for i in 0..3 {
        for j in 0..3 {
            out[3 * i + j] = matrix.entry(i, j).into();
        }
    }
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn polmat_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Polarization matrix P_E + P_B of one explicit field sample.
///
/// `e` and `b` hold three complex Cartesian components each; `out`
/// receives the nine row-major matrix entries.
///
/// # Safety
///
/// `e` and `b` must point to arrays of three `PolmatComplex`, `out` to an
/// array of nine.
#[no_mangle]
pub unsafe extern "C" fn polmat_gpm_total(
    e: *const PolmatComplex,
    b: *const PolmatComplex,
    out: *mut PolmatComplex,
) -> PolmatStatus {
    if e.is_null() || b.is_null() || out.is_null() {
        return PolmatStatus::NullPointer;
    }
    let read = |ptr: *const PolmatComplex| {
        let raw = slice::from_raw_parts(ptr, 3);
        ComplexVec3::new(
            [
                Complex64::new(raw[0].re, raw[0].im),
                Complex64::new(raw[1].re, raw[1].im),
                Complex64::new(raw[2].re, raw[2].im),
            ],
            Basis::Cartesian,
        )
    };
    let e = read(e);
    let b = read(b);
    guarded(move || {
        if !e.is_finite() || !b.is_finite() {
            return PolmatStatus::NonFinite;
        }
        write_matrix(&gpm_total(&FieldSample::new(e, b)), out);
        PolmatStatus::Ok
    })
}

/// Multipole polarization blocks at one spherical point.
///
/// Writes the electric energy density, the three-component flux vector
/// conj(E) x B and the nine row-major matrix entries. `kind` is 'E' or
/// 'M'; angles are radians.
///
/// # Safety
///
/// `out_w_e` must point to one double, `out_flux` to three
/// `PolmatComplex`, `out_matrix` to nine.
#[no_mangle]
pub unsafe extern "C" fn polmat_multipole_gpm(
    kind: c_char,
    k: f64,
    j: u32,
    m: i32,
    r: f64,
    theta: f64,
    phi: f64,
    out_w_e: *mut f64,
    out_flux: *mut PolmatComplex,
    out_matrix: *mut PolmatComplex,
) -> PolmatStatus {
    if out_w_e.is_null() || out_flux.is_null() || out_matrix.is_null() {
        return PolmatStatus::NullPointer;
    }
    guarded(|| {
        let kind = match kind_of(kind) {
            Ok(kind) => kind,
            Err(status) => return status,
        };
        let result = MultipoleMode::new(kind, k, j, m)
            .and_then(|mode| {
                let point = SpatialPoint::from_spherical(r, theta, phi)?;
                multipole_fields(&mode, &point)
            })
            .and_then(|sample| {
                extract_blocks(&FieldStrengthTensor::new(&sample).bilinear_form())
            });
        match result {
            Ok(blocks) => {
                *out_w_e = blocks.w_e;
                let flux = slice::from_raw_parts_mut(out_flux, 3);
                for (slot, component) in flux.iter_mut().zip(blocks.s_vec.components()) {
                    *slot = component.into();
                }
                write_matrix(&blocks.p_matrix, out_matrix);
                PolmatStatus::Ok
            }
            Err(error) => status_of(&error),
        }
    })
}

/// Dimensionless zero-point density Z of one mode family at x = kr.
///
/// # Safety
///
/// `out` must point to one double.
#[no_mangle]
pub unsafe extern "C" fn polmat_zpo_density(
    kind: c_char,
    j: u32,
    x: f64,
    out: *mut f64,
) -> PolmatStatus {
    if out.is_null() {
        return PolmatStatus::NullPointer;
    }
    guarded(|| {
        let kind = match kind_of(kind) {
            Ok(kind) => kind,
            Err(status) => return status,
        };
        match zpo_density_dimensionless(kind, j, x) {
            Ok(value) => {
                *out = value;
                PolmatStatus::Ok
            }
            Err(error) => status_of(&error),
        }
    })
}

/// Exact vacuum-energy ratio of a comma-separated mode list ("E1,M1")
/// relative to two plane-wave polarizations.
///
/// # Safety
///
/// `modes` must be a NUL-terminated string; `out_numerator` and
/// `out_denominator` must each point to one i64.
#[no_mangle]
pub unsafe extern "C" fn polmat_zpo_ratio(
    modes: *const c_char,
    out_numerator: *mut i64,
    out_denominator: *mut i64,
) -> PolmatStatus {
    if modes.is_null() || out_numerator.is_null() || out_denominator.is_null() {
        return PolmatStatus::NullPointer;
    }
    let text = match CStr::from_ptr(modes).to_str() {
        Ok(text) => text,
        Err(_) => return PolmatStatus::InvalidArgument,
    };
    guarded(|| {
        let modes = match parse_mode_list(text) {
            Ok(modes) => modes,
            Err(_) => return PolmatStatus::InvalidArgument,
        };
        match ModeFilter::new(modes, 1.0) {
            Ok(filter) => {
                let ratio = zpo_energy_ratio(&filter);
                *out_numerator = *ratio.numer();
                *out_denominator = *ratio.denom();
                PolmatStatus::Ok
            }
            Err(error) => status_of(&error),
        }
    })
}

/// Tabulate Z of one mode family over a uniform grid of `samples` points
/// from `x_min` to `x_max` and return an owned handle through `out`.
///
/// # Safety
///
/// `out` must point to one handle pointer. The handle must be released
/// with `polmat_profile_free`.
#[no_mangle]
pub unsafe extern "C" fn polmat_profile_new(
    kind: c_char,
    j: u32,
    x_min: f64,
    x_max: f64,
    samples: usize,
    out: *mut *mut PolmatProfile,
) -> PolmatStatus {
    if out.is_null() {
        return PolmatStatus::NullPointer;
    }
    guarded(|| {
        let kind = match kind_of(kind) {
            Ok(kind) => kind,
            Err(status) => return status,
        };
        if samples < 2 {
            return PolmatStatus::InvalidArgument;
        }
        match radial_profile(kind, j, &linspace(x_min, x_max, samples)) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(PolmatProfile { inner }));
                PolmatStatus::Ok
            }
            Err(error) => status_of(&error),
        }
    })
}

/// Number of grid points held by a profile; zero for a null handle.
///
/// # Safety
///
/// `profile` must be null or a live handle from `polmat_profile_new`.
#[no_mangle]
pub unsafe extern "C" fn polmat_profile_len(profile: *const PolmatProfile) -> usize {
    if profile.is_null() {
        return 0;
    }
    (*profile).inner.x.len()
}

/// Grid point `index` of a profile.
///
/// # Safety
///
/// `profile` must be a live handle; `out_x` and `out_z` must each point
/// to one double.
#[no_mangle]
pub unsafe extern "C" fn polmat_profile_point(
    profile: *const PolmatProfile,
    index: usize,
    out_x: *mut f64,
    out_z: *mut f64,
) -> PolmatStatus {
    if profile.is_null() || out_x.is_null() || out_z.is_null() {
        return PolmatStatus::NullPointer;
    }
    let inner = &(*profile).inner;
    if index >= inner.x.len() {
        return PolmatStatus::InvalidArgument;
    }
    *out_x = inner.x[index];
    *out_z = inner.z[index];
    PolmatStatus::Ok
}

/// First grid abscissa where Z drops below a quarter of its origin value;
/// `UndefinedValue` when the profile never crosses.
///
/// # Safety
///
/// `profile` must be a live handle; `out` must point to one double.
#[no_mangle]
pub unsafe extern "C" fn polmat_profile_crossing(
    profile: *const PolmatProfile,
    out: *mut f64,
) -> PolmatStatus {
    if profile.is_null() || out.is_null() {
        return PolmatStatus::NullPointer;
    }
    match (*profile).inner.crossing {
        Some(x) => {
            *out = x;
            PolmatStatus::Ok
        }
        None => PolmatStatus::UndefinedValue,
    }
}

/// Release a profile handle; a null handle is a no-op.
///
/// # Safety
///
/// `profile` must be null or a handle from `polmat_profile_new` that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn polmat_profile_free(profile: *mut PolmatProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// Run the numerical self-check suite; returns the number of failed
/// checks, or `u32::MAX` if the suite itself panicked.
#[no_mangle]
pub extern "C" fn polmat_validate() -> u32 {
    catch_unwind(|| polmat::validate::run_all().failures().len() as u32).unwrap_or(u32::MAX)
}
