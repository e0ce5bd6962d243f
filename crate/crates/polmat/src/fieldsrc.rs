//! Field sources: monochromatic plane waves and electric or magnetic
//! multipole modes of the free field.
//!
//! Multipole vector potentials are assembled from spherical Bessel
//! functions, spin-1 coupling coefficients and spherical harmonics in the
//! helicity basis,
//!
//! ```text
//! magnetic:  V_mu = j_j(kr) <j, m-mu; 1, mu | j m> Y_{j, m-mu}
//! electric:  V_mu = sqrt((j+1)/(2j+1)) j_{j-1}(kr) <j-1, m-mu; 1, mu | j m> Y_{j-1, m-mu}
//!                 - sqrt(j/(2j+1))   j_{j+1}(kr) <j+1, m-mu; 1, mu | j m> Y_{j+1, m-mu}
//! ```
//!
//! so that the fields of one mode with unit amplitude are E = -i k A and
//! B = curl A, the latter taken by a finite-difference curl.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{
    clebsch_gordan_spin1, helicity_to_cartesian, spherical_bessel_batch, spherical_harmonic,
    AngularPoint, HelicityIndex,
};
use crate::tol;
use crate::vec3::{dot3, norm3, Basis, ComplexVec3};

/// Electric or magnetic multipole family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MultipoleKind {
    Electric,
    Magnetic,
}

impl MultipoleKind {
    pub fn as_char(self) -> char {
        match self {
            MultipoleKind::Electric => 'E',
            MultipoleKind::Magnetic => 'M',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'E' | 'e' => Ok(MultipoleKind::Electric),
            'M' | 'm' => Ok(MultipoleKind::Magnetic),
            _ => Err(Error::Domain(format!("unknown multipole kind '{c}'"))),
        }
    }
}

/// One multipole mode (kind, wavenumber k, total momentum j, projection m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultipoleMode {
    kind: MultipoleKind,
    k: f64,
    j: u32,
    m: i32,
}

impl MultipoleMode {
    pub fn new(kind: MultipoleKind, k: f64, j: u32, m: i32) -> Result<Self> {
        if !k.is_finite() || k <= 0.0 {
            return Err(Error::Domain(format!(
                "wavenumber k = {k} must be finite and positive"
            )));
        }
        if j == 0 {
            return Err(Error::Domain(
                "multipole order j must be at least 1; the free field has no j = 0 mode".into(),
            ));
        }
        if m.unsigned_abs() > j {
            return Err(Error::Domain(format!(
                "projection m = {m} exceeds the multipole order j = {j}"
            )));
        }
        Ok(Self { kind, k, j, m })
    }

    pub fn kind(&self) -> MultipoleKind {
        self.kind
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn m(&self) -> i32 {
        self.m
    }
}

/// Position given by radius and direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialPoint {
    r: f64,
    angles: AngularPoint,
}

impl SpatialPoint {
    pub fn new(r: f64, angles: AngularPoint) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::Domain(format!(
                "radius {r} must be finite and non-negative"
            )));
        }
        Ok(Self { r, angles })
    }

    pub fn from_spherical(r: f64, theta: f64, phi: f64) -> Result<Self> {
        Self::new(r, AngularPoint::new(theta, phi)?)
    }

    pub fn from_cartesian(v: [f64; 3]) -> Result<Self> {
        let r = norm3(v);
        if !r.is_finite() {
            return Err(Error::Domain("non-finite Cartesian position".into()));
        }
        if r == 0.0 {
            return Self::from_spherical(0.0, 0.0, 0.0);
        }
        let theta = (v[2] / r).clamp(-1.0, 1.0).acos();
        let phi = v[1].atan2(v[0]);
        Self::from_spherical(r, theta, phi)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn angles(&self) -> AngularPoint {
        self.angles
    }

    pub fn to_cartesian(&self) -> [f64; 3] {
        let (st, ct) = (self.angles.theta().sin(), self.angles.theta().cos());
        let (sp, cp) = (self.angles.phi().sin(), self.angles.phi().cos());
        [self.r * st * cp, self.r * st * sp, self.r * ct]
    }

    /// Unit vector along the position direction, defined by the stored
    /// angles even at r = 0.
    pub fn radial_unit(&self) -> [f64; 3] {
        let (st, ct) = (self.angles.theta().sin(), self.angles.theta().cos());
        let (sp, cp) = (self.angles.phi().sin(), self.angles.phi().cos());
        [st * cp, st * sp, ct]
    }
}

/// Complex field amplitudes at one point, in Cartesian components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub e_field: ComplexVec3,
    pub b_field: ComplexVec3,
}

impl FieldSample {
    pub fn new(e_field: ComplexVec3, b_field: ComplexVec3) -> Self {
        assert_eq!(e_field.basis(), Basis::Cartesian, "field samples are Cartesian");
        assert_eq!(b_field.basis(), Basis::Cartesian, "field samples are Cartesian");
        Self { e_field, b_field }
    }

    /// Electric energy-like scalar |E|^2.
    pub fn w_e(&self) -> f64 {
        self.e_field.norm_sqr()
    }

    /// Magnetic energy-like scalar |B|^2.
    pub fn w_b(&self) -> f64 {
        self.b_field.norm_sqr()
    }
}

/// Fields of a monochromatic plane wave amplitude * pol * exp(i k.r) with
/// B = k_hat x E.
///
/// The polarization must be a unit vector transverse to `k_vec`
/// (unconjugated product, since `k_vec` is real).
pub fn plane_wave_fields(
    amplitude: Complex64,
    k_vec: [f64; 3],
    pol: &ComplexVec3,
    point: &SpatialPoint,
) -> Result<FieldSample> {
    if pol.basis() != Basis::Cartesian {
        return Err(Error::Contract(
            "plane-wave polarization must be given in Cartesian components".into(),
        ));
    }
    let k_norm = norm3(k_vec);
    if !k_norm.is_finite() || k_norm == 0.0 {
        return Err(Error::Domain("plane-wave k_vec must be nonzero and finite".into()));
    }
    let pol_norm = pol.norm_sqr().sqrt();
    if (pol_norm - 1.0).abs() > tol::PHASE_FLOOR {
        return Err(Error::Domain(format!(
            "plane-wave polarization must be a unit vector, |pol| = {pol_norm}"
        )));
    }
    let k_hat = [k_vec[0] / k_norm, k_vec[1] / k_norm, k_vec[2] / k_norm];
    let k_hat_c = ComplexVec3::from_real(k_hat);
    let longitudinal = k_hat_c.dot(pol).norm();
    if longitudinal > tol::PHASE_FLOOR {
        return Err(Error::Domain(format!(
            "plane-wave polarization is not transverse: |pol . k_hat| = {longitudinal:.3e}"
        )));
    }

    let x = point.to_cartesian();
    let phase = Complex64::from_polar(1.0, dot3(k_vec, x));
    let e = pol.scale(amplitude * phase);
    let b = k_hat_c.cross(&e);
    Ok(FieldSample::new(e, b))
}

/// One helicity component of the vector potential of a multipole mode with
/// unit amplitude. Depends on position only through x = k r and the
/// direction, so modes with equal k r coincide.
pub fn multipole_potential(
    mode: &MultipoleMode,
    mu: HelicityIndex,
    point: &SpatialPoint,
) -> Result<Complex64> {
    let x = mode.k * point.r();
    let j = mode.j;
    let bessel = spherical_bessel_batch(j as usize + 1, x)?;
    let angles = point.angles();

    let term = |l: u32, radial: f64| -> Result<Complex64> {
        let coupling = clebsch_gordan_spin1(l, mode.m - mu.value(), mu, j, mode.m);
        if coupling == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let harmonic = spherical_harmonic(l, mode.m - mu.value(), &angles)?;
        Ok(radial * coupling * harmonic)
    };

    match mode.kind {
        MultipoleKind::Magnetic => term(j, bessel[j as usize]),
        MultipoleKind::Electric => {
            let jf = f64::from(j);
            let weight_lower = ((jf + 1.0) / (2.0 * jf + 1.0)).sqrt();
            let weight_upper = (jf / (2.0 * jf + 1.0)).sqrt();
            let lower = term(j - 1, bessel[j as usize - 1])?;
            let upper = term(j + 1, bessel[j as usize + 1])?;
            Ok(weight_lower * lower - weight_upper * upper)
        }
    }
}

/// All three helicity components of the mode's vector potential.
pub fn multipole_potential_vector(mode: &MultipoleMode, point: &SpatialPoint) -> Result<ComplexVec3> {
    Ok(ComplexVec3::helicity(
        multipole_potential(mode, HelicityIndex::Plus, point)?,
        multipole_potential(mode, HelicityIndex::Zero, point)?,
        multipole_potential(mode, HelicityIndex::Minus, point)?,
    ))
}

/// E and B of a multipole mode with unit amplitude: E = -i k A in Cartesian
/// components and B = curl A by the finite-difference curl with step
/// `tol::CURL_STEP_SCALE / k`.
///
/// At the origin only the electric dipole carries finite fields; all other
/// modes are rejected there because the curl stencil cannot separate the
/// vanishing numerator from the vanishing radius.
pub fn multipole_fields(mode: &MultipoleMode, point: &SpatialPoint) -> Result<FieldSample> {
    if point.r() == 0.0 && !(mode.kind == MultipoleKind::Electric && mode.j == 1) {
        return Err(Error::Domain(
            "fields at r = 0 are defined only for the electric dipole mode".into(),
        ));
    }
    let potential = |p: &SpatialPoint| -> Result<ComplexVec3> {
        helicity_to_cartesian(&multipole_potential_vector(mode, p)?)
    };
    let a = potential(point)?;
    let e = a.scale(Complex64::new(0.0, -mode.k));
    let b = numerical_curl(&potential, point, tol::CURL_STEP_SCALE / mode.k)?;
    Ok(FieldSample::new(e, b))
}

/// Curl of a complex Cartesian vector field by central differences with one
/// Richardson extrapolation step (five-point stencil accuracy, O(h^4)).
pub fn numerical_curl<F>(field: &F, point: &SpatialPoint, h: f64) -> Result<ComplexVec3>
where
    F: Fn(&SpatialPoint) -> Result<ComplexVec3>,
{
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::Domain(format!("curl step h = {h} must be positive")));
    }
    let base = point.to_cartesian();
    let eval = |coords: [f64; 3]| -> Result<[Complex64; 3]> {
        let sample = field(&SpatialPoint::from_cartesian(coords)?)?;
        if sample.basis() != Basis::Cartesian {
            return Err(Error::Contract(
                "numerical_curl expects a Cartesian-valued field".into(),
            ));
        }
        if !sample.is_finite() {
            return Err(Error::NonFinite("numerical_curl field sample"));
        }
        Ok(sample.components())
    };

    // grad[a][c] = d F_c / d x_a.
    let mut grad = [[Complex64::new(0.0, 0.0); 3]; 3];
    for axis in 0..3 {
        let offset = |step: f64| {
            let mut coords = base;
            coords[axis] += step;
            coords
        };
        let full_plus = eval(offset(h))?;
        let full_minus = eval(offset(-h))?;
        let half_plus = eval(offset(0.5 * h))?;
        let half_minus = eval(offset(-0.5 * h))?;
        for c in 0..3 {
            let coarse = (full_plus[c] - full_minus[c]) / (2.0 * h);
            let fine = (half_plus[c] - half_minus[c]) / h;
            grad[axis][c] = (4.0 * fine - coarse) / 3.0;
        }
    }

    Ok(ComplexVec3::cartesian(
        grad[1][2] - grad[2][1],
        grad[2][0] - grad[0][2],
        grad[0][1] - grad[1][0],
    ))
}
