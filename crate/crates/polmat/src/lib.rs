//! Polarization structure of electromagnetic radiation fields.
//!
//! The crate evaluates the 3x3 Hermitian polarization matrix of an
//! electromagnetic field from its complex amplitudes `E` and `B`, both for
//! classical sources (plane waves, electric and magnetic multipoles) and for
//! the zero-point contribution obtained by summing over the members of a
//! multipole family. The matrix generalizes the usual 2x2 coherence matrix
//! of transverse optics to fields with three independent components, such as
//! multipole radiation in the near and intermediate zones.
//!
//! Modules:
//! - [`specfun`]: spherical Bessel functions, spherical harmonics, spin-1
//!   vector-coupling coefficients, helicity basis transforms.
//! - [`fieldsrc`]: plane-wave and multipole field evaluation.
//! - [`gpmcore`]: field-strength tensor, its quadratic form and the
//!   polarization matrices extracted from it.
//! - [`zpo`]: zero-point (vacuum) mode sums, radial density profiles and
//!   energy ratios.
//! - [`validate`]: self-contained numerical checks used by the test suite
//!   and the `polmat validate` subcommand.
//! - [`cli`]: record formatting and command execution for the `polmat`
//!   binary.

pub mod cli;
pub mod error;
pub mod fieldsrc;
pub mod gpmcore;
pub mod specfun;
pub mod tol;
pub mod validate;
pub mod vec3;
pub mod zpo;

mod linalg;

pub use error::{Error, Result};
pub use vec3::{Basis, ComplexVec3};
