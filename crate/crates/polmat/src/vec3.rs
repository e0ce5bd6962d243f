//! Complex three-vectors tagged with the basis they are expressed in.

use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;

/// Basis tag of a [`ComplexVec3`].
///
/// Cartesian components are ordered (x, y, z); helicity components are
/// ordered (+1, 0, -1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Cartesian,
    Helicity,
}

/// A complex three-vector together with the basis its components refer to.
///
/// Mixing bases in binary operations is a programming error and panics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexVec3 {
    components: [Complex64; 3],
    basis: Basis,
}

impl ComplexVec3 {
    pub fn new(components: [Complex64; 3], basis: Basis) -> Self {
        Self { components, basis }
    }

    /// Vector with Cartesian components (x, y, z).
    pub fn cartesian(x: Complex64, y: Complex64, z: Complex64) -> Self {
        Self::new([x, y, z], Basis::Cartesian)
    }

    /// Vector with helicity components (mu = +1, 0, -1).
    pub fn helicity(plus: Complex64, zero: Complex64, minus: Complex64) -> Self {
        Self::new([plus, zero, minus], Basis::Helicity)
    }

    /// Cartesian vector with real components.
    pub fn from_real(v: [f64; 3]) -> Self {
        Self::cartesian(v[0].into(), v[1].into(), v[2].into())
    }

    pub fn zero(basis: Basis) -> Self {
        Self::new([Complex64::new(0.0, 0.0); 3], basis)
    }

    pub fn components(&self) -> [Complex64; 3] {
        self.components
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Sum of |v_i|^2 over the components. Basis independent, since the
    /// two bases are related by a unitary transform.
    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Unconjugated scalar product sum_i v_i w_i.
    pub fn dot(&self, other: &Self) -> Complex64 {
        assert_eq!(self.basis, other.basis, "dot product across bases");
        self.components
            .iter()
            .zip(other.components.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Conjugated scalar product sum_i conj(v_i) w_i.
    pub fn hdot(&self, other: &Self) -> Complex64 {
        assert_eq!(self.basis, other.basis, "scalar product across bases");
        self.components
            .iter()
            .zip(other.components.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Cross product, defined for Cartesian components only.
    pub fn cross(&self, other: &Self) -> Self {
        assert_eq!(self.basis, Basis::Cartesian, "cross product needs Cartesian components");
        assert_eq!(other.basis, Basis::Cartesian, "cross product needs Cartesian components");
        let a = &self.components;
        let b = &other.components;
        Self::cartesian(
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        )
    }

    pub fn conj(&self) -> Self {
        Self::new(
            [
                self.components[0].conj(),
                self.components[1].conj(),
                self.components[2].conj(),
            ],
            self.basis,
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(
            [
                self.components[0] * s,
                self.components[1] * s,
                self.components[2] * s,
            ],
            self.basis,
        )
    }

    pub fn is_finite(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl Add for ComplexVec3 {
    type Output = ComplexVec3;

    fn add(self, rhs: ComplexVec3) -> ComplexVec3 {
        assert_eq!(self.basis, rhs.basis, "vector sum across bases");
        ComplexVec3::new(
            [
                self.components[0] + rhs.components[0],
                self.components[1] + rhs.components[1],
                self.components[2] + rhs.components[2],
            ],
            self.basis,
        )
    }
}

impl Sub for ComplexVec3 {
    type Output = ComplexVec3;

    fn sub(self, rhs: ComplexVec3) -> ComplexVec3 {
        self + (-rhs)
    }
}

impl Neg for ComplexVec3 {
    type Output = ComplexVec3;

    fn neg(self) -> ComplexVec3 {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

/// Dot product of real three-vectors.
pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Euclidean norm of a real three-vector.
pub(crate) fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cross_matches_hand_expansion() {
        let a = ComplexVec3::cartesian(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let b = ComplexVec3::cartesian(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let v = a.cross(&b);
        assert_eq!(v.components(), [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn self_cross_vanishes_for_complex_vectors() {
        let a = ComplexVec3::cartesian(c(1.0, 2.0), c(-0.5, 0.3), c(0.2, -0.8));
        let v = a.cross(&a);
        assert!(v.norm_sqr() == 0.0);
    }

    #[test]
    fn hdot_of_self_is_norm() {
        let a = ComplexVec3::cartesian(c(1.0, 2.0), c(-0.5, 0.3), c(0.2, -0.8));
        assert!((a.hdot(&a).re - a.norm_sqr()).abs() < 1e-15);
        assert!(a.hdot(&a).im.abs() < 1e-15);
    }

    #[test]
    #[should_panic(expected = "across bases")]
    fn mixing_bases_panics() {
        let a = ComplexVec3::cartesian(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let b = ComplexVec3::helicity(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let _ = a.dot(&b);
    }
}
