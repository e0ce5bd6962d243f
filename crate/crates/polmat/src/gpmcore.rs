//! General polarization matrix of the radiation field.
//!
//! The complex field strength tensor F built from (E, B) yields the
//! Hermitian form R = F^dagger F whose blocks carry the energy density,
//! the energy flux and a 3 x 3 polarization matrix
//!
//! ```text
//! P = P^E + P^B,   P^E_{mn} = conj(E_m) E_n,   P^B_{mn} = |B|^2 d_{mn} - B_m conj(B_n).
//! ```
//!
//! For a transverse plane wave P reduces to the conventional 2 x 2
//! polarization matrix on the components orthogonal to the propagation
//! axis; the remaining entries vanish.

use std::f64::consts::PI;
use std::ops::Add;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fieldsrc::FieldSample;
use crate::linalg::{self, CMat3, CMat4};
use crate::specfun::AngularPoint;
use crate::tol;
use crate::vec3::{Basis, ComplexVec3};

/// Antisymmetric 4 x 4 field strength tensor with complex field amplitudes:
/// the first row holds (0, E_x, E_y, E_z) and the spatial block holds
/// F_{mn} = -eps_{mnk} B_k.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldStrengthTensor {
    entries: CMat4,
}

impl FieldStrengthTensor {
    pub fn new(sample: &FieldSample) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let [ex, ey, ez] = sample.e_field.components();
        let [bx, by, bz] = sample.b_field.components();
        let entries = [
            [zero, ex, ey, ez],
            [-ex, zero, -bz, by],
            [-ey, bz, zero, -bx],
            [-ez, -by, bx, zero],
        ];
        Self { entries }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn entries(&self) -> &[[Complex64; 4]; 4] {
        &self.entries
    }

    /// The Hermitian form R = F^dagger F.
    pub fn bilinear_form(&self) -> ComplexMat4 {
        let adjoint = linalg::adjoint4(&self.entries);
        ComplexMat4 {
            entries: linalg::mul4(&adjoint, &self.entries),
        }
    }
}

/// Dense complex 4 x 4 matrix, the carrier of the bilinear form.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMat4 {
    entries: CMat4,
}

impl ComplexMat4 {
    pub fn from_entries(entries: [[Complex64; 4]; 4]) -> Self {
        Self { entries }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn entries(&self) -> &[[Complex64; 4]; 4] {
        &self.entries
    }
}

/// Physical blocks of R = F^dagger F: the electric energy density, the
/// energy flux conj(E) x B and the 3 x 3 polarization matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RBlocks {
    pub w_e: f64,
    pub s_vec: ComplexVec3,
    pub p_matrix: HermitianMat3,
}

/// Split the bilinear form into its named blocks. Fails with a contract
/// error when the matrix is not Hermitian to within `tol::HERMITICITY`
/// relative to its largest entry.
pub fn extract_blocks(r: &ComplexMat4) -> Result<RBlocks> {
    let mut scale: f64 = 0.0;
    let mut residual: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            scale = scale.max(r.entries[i][j].norm());
            residual = residual.max((r.entries[i][j] - r.entries[j][i].conj()).norm());
        }
    }
    if residual > tol::HERMITICITY * scale {
        return Err(Error::Contract(format!(
            "bilinear form is not Hermitian: residual {residual:.3e} exceeds {:.3e}",
            tol::HERMITICITY * scale
        )));
    }

    let w_e = r.entries[0][0].re;
    let s_vec = ComplexVec3::cartesian(-r.entries[0][1], -r.entries[0][2], -r.entries[0][3]);
    let mut block = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (i, row) in block.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = r.entries[i + 1][j + 1];
        }
    }
    Ok(RBlocks {
        w_e,
        s_vec,
        p_matrix: HermitianMat3::new(block)?,
    })
}

/// Hermitian 3 x 3 matrix stored in exactly Hermitian form.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMat3 {
    entries: CMat3,
}

impl HermitianMat3 {
    /// Accepts entries Hermitian to within `tol::HERMITICITY` relative to
    /// the largest entry and stores the symmetrized matrix (A + A^dagger)/2.
    pub fn new(entries: [[Complex64; 3]; 3]) -> Result<Self> {
        let residual = hermiticity_residual(&entries);
        let scale = entries
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0_f64, f64::max);
        if residual > tol::HERMITICITY * scale {
            return Err(Error::Contract(format!(
                "matrix is not Hermitian: residual {residual:.3e} exceeds {:.3e}",
                tol::HERMITICITY * scale
            )));
        }
        let mut stored = [[Complex64::new(0.0, 0.0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                stored[i][j] = 0.5 * (entries[i][j] + entries[j][i].conj());
            }
        }
        Ok(Self { entries: stored })
    }

    pub fn zero() -> Self {
        Self {
            entries: [[Complex64::new(0.0, 0.0); 3]; 3],
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn entries(&self) -> &[[Complex64; 3]; 3] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries[0][0].re + self.entries[1][1].re + self.entries[2][2].re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 3] {
        linalg::hermitian_eigenvalues3(&self.entries)
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut entries = self.entries;
        for row in entries.iter_mut() {
            for entry in row.iter_mut() {
                *entry *= factor;
            }
        }
        Self { entries }
    }
}

impl Add for &HermitianMat3 {
    type Output = HermitianMat3;

    fn add(self, other: &HermitianMat3) -> HermitianMat3 {
        let mut entries = self.entries;
        for (row, other_row) in entries.iter_mut().zip(&other.entries) {
            for (entry, other_entry) in row.iter_mut().zip(other_row) {
                *entry += *other_entry;
            }
        }
        HermitianMat3 { entries }
    }
}

/// Largest deviation |A_{ij} - conj(A_{ji})| of a 3 x 3 matrix from
/// Hermiticity.
pub fn hermiticity_residual(entries: &[[Complex64; 3]; 3]) -> f64 {
    let mut residual: f64 = 0.0;
    for (i, row) in entries.iter().enumerate() {
        for (j, value) in row.iter().enumerate() {
            residual = residual.max((value - entries[j][i].conj()).norm());
        }
    }
    residual
}

/// Electric part of the polarization matrix, conj(E_m) E_n. Rank one with
/// eigenvalues (|E|^2, 0, 0).
pub fn gpm_electric(e_field: &ComplexVec3) -> HermitianMat3 {
    assert_eq!(e_field.basis(), Basis::Cartesian, "polarization matrices are Cartesian");
    let e = e_field.components();
    let mut entries = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            entries[i][j] = e[i].conj() * e[j];
        }
    }
    HermitianMat3 { entries }
}

/// Magnetic part of the polarization matrix, |B|^2 d_{mn} - B_m conj(B_n).
/// Eigenvalues (0, |B|^2, |B|^2).
pub fn gpm_magnetic(b_field: &ComplexVec3) -> HermitianMat3 {
    assert_eq!(b_field.basis(), Basis::Cartesian, "polarization matrices are Cartesian");
    let b = b_field.components();
    let w_b = b_field.norm_sqr();
    let mut entries = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            entries[i][j] = -b[i] * b[j].conj();
        }
        entries[i][i] += w_b;
    }
    HermitianMat3 { entries }
}

/// Full polarization matrix P = P^E + P^B with trace |E|^2 + 2 |B|^2.
pub fn gpm_total(sample: &FieldSample) -> HermitianMat3 {
    &gpm_electric(&sample.e_field) + &gpm_magnetic(&sample.b_field)
}

/// Largest entry of the difference between the polarization matrix read
/// off the bilinear form of the field strength tensor and a candidate
/// matrix. With `gpm_total` as the candidate this is a round-trip residual
/// of the two constructions.
pub fn block_equivalence_residual(sample: &FieldSample, candidate: &HermitianMat3) -> f64 {
    let tensor = FieldStrengthTensor::new(sample);
    let blocks = extract_blocks(&tensor.bilinear_form())
        .expect("bilinear form of a field strength tensor is Hermitian");
    let mut residual: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            residual =
                residual.max((blocks.p_matrix.entry(i, j) - candidate.entry(i, j)).norm());
        }
    }
    residual
}

/// Pairwise phase differences of the electric field components, each
/// wrapped to (-pi, pi]. Their sum vanishes modulo 2 pi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseDifferences {
    pub delta_xy: f64,
    pub delta_yz: f64,
    pub delta_zx: f64,
}

/// Wrap an angle to (-pi, pi].
pub fn wrap_phase(angle: f64) -> f64 {
    let wrapped = angle.rem_euclid(2.0 * PI);
    if wrapped > PI {
        wrapped - 2.0 * PI
    } else {
        wrapped
    }
}

/// Phase differences arg E_y - arg E_x and cyclic. A component smaller
/// than `tol::PHASE_FLOOR` times the field magnitude has no well-defined
/// phase and is reported as an error.
pub fn phase_differences(e_field: &ComplexVec3) -> Result<PhaseDifferences> {
    assert_eq!(e_field.basis(), Basis::Cartesian, "phases refer to Cartesian components");
    let e = e_field.components();
    let magnitude = e_field.norm_sqr().sqrt();
    let floor = tol::PHASE_FLOOR * magnitude;
    for (component, label) in e.iter().zip(['x', 'y', 'z']) {
        if component.norm() <= floor {
            return Err(Error::UndefinedPhase {
                component: label,
                magnitude: component.norm(),
            });
        }
    }
    let (px, py, pz) = (e[0].arg(), e[1].arg(), e[2].arg());
    Ok(PhaseDifferences {
        delta_xy: wrap_phase(py - px),
        delta_yz: wrap_phase(pz - py),
        delta_zx: wrap_phase(px - pz),
    })
}

/// Propagation axis for the reduction to the conventional 2 x 2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn longitudinal(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    /// Transverse component indices in cyclic order, e.g. (x, y) for
    /// propagation along z.
    pub fn transverse(self) -> (usize, usize) {
        match self {
            Axis::X => (1, 2),
            Axis::Y => (2, 0),
            Axis::Z => (0, 1),
        }
    }
}

/// Conventional 2 x 2 polarization matrix on the transverse components
/// together with the largest entry that the reduction requires to vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct ConventionalReduction {
    pub p2: [[Complex64; 2]; 2],
    pub residual: f64,
}

/// Reduce the polarization matrices of a transverse plane wave to the
/// conventional 2 x 2 matrix conj(E_s) E_s' on the transverse components.
///
/// The residual collects the entries that vanish for an exact transverse
/// wave: the longitudinal row and column of P^E (the longitudinal diagonal
/// entry included) and the mixed transverse-longitudinal entries of P^B.
pub fn reduce_to_conventional(sample: &FieldSample, axis: Axis) -> ConventionalReduction {
    let p_electric = gpm_electric(&sample.e_field);
    let p_magnetic = gpm_magnetic(&sample.b_field);
    let l = axis.longitudinal();
    let (t0, t1) = axis.transverse();
    let p2 = [
        [p_electric.entry(t0, t0), p_electric.entry(t0, t1)],
        [p_electric.entry(t1, t0), p_electric.entry(t1, t1)],
    ];
    let mut residual: f64 = p_electric.entry(l, l).norm();
    for t in [t0, t1] {
        residual = residual.max(p_electric.entry(l, t).norm());
        residual = residual.max(p_electric.entry(t, l).norm());
        residual = residual.max(p_magnetic.entry(l, t).norm());
        residual = residual.max(p_magnetic.entry(t, l).norm());
    }
    ConventionalReduction { p2, residual }
}

/// Scalar invariants of the field pair, normalized by the total energy
/// density |E|^2 + |B|^2: the unconjugated product E . B and the
/// difference |E|^2 - |B|^2. Zero fields report (0, 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantsReport {
    pub e_dot_b: Complex64,
    pub e2_minus_b2: f64,
}

pub fn invariants_report(sample: &FieldSample) -> InvariantsReport {
    let total = sample.w_e() + sample.w_b();
    if total == 0.0 {
        return InvariantsReport {
            e_dot_b: Complex64::new(0.0, 0.0),
            e2_minus_b2: 0.0,
        };
    }
    InvariantsReport {
        e_dot_b: sample.e_field.dot(&sample.b_field) / total,
        e2_minus_b2: (sample.w_e() - sample.w_b()) / total,
    }
}

/// Re-express a field sample in the local spherical frame at the given
/// direction: first component along theta_hat, second along phi_hat, third
/// along the outward radial direction.
pub fn local_frame_sample(sample: &FieldSample, angles: &AngularPoint) -> FieldSample {
    let (st, ct) = (angles.theta().sin(), angles.theta().cos());
    let (sp, cp) = (angles.phi().sin(), angles.phi().cos());
    let frame = [
        [ct * cp, ct * sp, -st],
        [-sp, cp, 0.0],
        [st * cp, st * sp, ct],
    ];
    let rotate = |v: &ComplexVec3| {
        let c = v.components();
        let project = |row: [f64; 3]| c[0] * row[0] + c[1] * row[1] + c[2] * row[2];
        ComplexVec3::cartesian(project(frame[0]), project(frame[1]), project(frame[2]))
    };
    FieldSample::new(rotate(&sample.e_field), rotate(&sample.b_field))
}
