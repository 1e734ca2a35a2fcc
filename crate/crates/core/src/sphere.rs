//! Unit vectors, the Riemann sphere and z-y-z Euler rotations.
//!
//! Points on the sphere are related to the extended complex plane by
//! stereographic projection from the south pole, `ζ = exp(iφ) tan(θ/2)`, so the
//! north pole maps to `0` and the south pole to the point at infinity.

use std::f64::consts::{PI, TAU};
use std::ops::Neg;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Shared tolerance record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute tolerance for pure geometry (normalization, angle snapping).
    pub geometry: f64,
    /// Relative magnitude below which a leading polynomial coefficient counts as zero.
    pub deficiency: f64,
    /// Chordal residual accepted when pairing antipodal roots.
    pub pairing: f64,
    /// Minimum chordal separation of numerically found roots before a cluster warning.
    pub cluster_warning: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            geometry: 1e-12,
            deficiency: 1e-13,
            pairing: 1e-8,
            cluster_warning: 1e-4,
        }
    }
}

/// A point of the unit sphere in 3-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector {
    x: f64,
    y: f64,
    z: f64,
}

impl UnitVector {
    pub const PLUS_X: UnitVector = UnitVector { x: 1.0, y: 0.0, z: 0.0 };
    pub const PLUS_Y: UnitVector = UnitVector { x: 0.0, y: 1.0, z: 0.0 };
    pub const PLUS_Z: UnitVector = UnitVector { x: 0.0, y: 0.0, z: 1.0 };

    /// Normalizes `(x, y, z)`; fails on zero or non-finite input.
    /// Vectors already unit to within a few ulps are kept bit for bit.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::InvalidInput(format!(
                "cannot normalize vector ({x}, {y}, {z})"
            )));
        }
        if (norm - 1.0).abs() <= 4.0 * f64::EPSILON {
            return Ok(UnitVector { x, y, z });
        }
        Ok(UnitVector {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        UnitVector {
            x: st * cp,
            y: st * sp,
            z: ct,
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &UnitVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Polar angle in `[0, π]` and azimuth in `[0, 2π)`; azimuth is 0 at the poles.
    pub fn angles(&self) -> (f64, f64) {
        let rho = self.x.hypot(self.y);
        let theta = rho.atan2(self.z);
        let phi = if rho == 0.0 {
            0.0
        } else {
            normalize_azimuth(self.y.atan2(self.x))
        };
        (theta, phi)
    }

    /// Euclidean distance in 3-space.
    pub fn distance(&self, other: &UnitVector) -> f64 {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    /// Angle between the two vectors, accurate for nearly parallel inputs.
    pub fn angle_to(&self, other: &UnitVector) -> f64 {
        let d = self.distance(other);
        2.0 * (0.5 * d).min(1.0).asin()
    }
}

impl Neg for UnitVector {
    type Output = UnitVector;

    fn neg(self) -> UnitVector {
        UnitVector {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

fn normalize_azimuth(phi: f64) -> f64 {
    let mut phi = phi % TAU;
    if phi < 0.0 {
        phi += TAU;
    }
    if phi >= TAU {
        phi -= TAU;
    }
    // folds -0.0 into +0.0
    phi + 0.0
}

/// A point of the extended complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StereoPoint {
    Finite(Complex64),
    Infinity,
}

impl StereoPoint {
    pub const ZERO: StereoPoint = StereoPoint::Finite(Complex64::new(0.0, 0.0));

    pub fn finite(re: f64, im: f64) -> Self {
        StereoPoint::Finite(Complex64::new(re, im))
    }

    /// `exp(iφ) tan(θ/2)`, snapping to infinity within `1e-12` of the south pole.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self::from_angles_with_tolerance(theta, phi, Tolerances::default().geometry)
    }

    pub fn from_angles_with_tolerance(theta: f64, phi: f64, tol: f64) -> Self {
        if (theta - PI).abs() <= tol {
            StereoPoint::Infinity
        } else {
            StereoPoint::Finite(Complex64::from_polar((0.5 * theta).tan(), phi))
        }
    }

    /// Inverse of [`StereoPoint::from_angles`]; infinity maps to `(π, 0)`.
    pub fn angles(&self) -> (f64, f64) {
        match *self {
            StereoPoint::Infinity => (PI, 0.0),
            StereoPoint::Finite(z) => {
                let r = z.norm();
                let phi = if r == 0.0 {
                    0.0
                } else {
                    normalize_azimuth(z.arg())
                };
                (2.0 * r.atan(), phi)
            }
        }
    }

    pub fn from_unit_vector(u: &UnitVector) -> Self {
        if u.z >= 0.0 {
            StereoPoint::Finite(Complex64::new(u.x, u.y) / (1.0 + u.z))
        } else {
            let w = Complex64::new(u.x, -u.y);
            if w.norm() == 0.0 {
                StereoPoint::Infinity
            } else {
                StereoPoint::Finite(Complex64::new(1.0 - u.z, 0.0) / w)
            }
        }
    }

    pub fn to_unit_vector(&self) -> UnitVector {
        match *self {
            StereoPoint::Infinity => UnitVector {
                x: 0.0,
                y: 0.0,
                z: -1.0,
            },
            StereoPoint::Finite(z) => {
                let r = z.norm();
                if r <= 1.0 {
                    let d = 1.0 + r * r;
                    UnitVector {
                        x: 2.0 * z.re / d,
                        y: 2.0 * z.im / d,
                        z: (1.0 - r * r) / d,
                    }
                } else {
                    // south chart, w = 1/ζ
                    let w = z.inv();
                    let s = w.norm_sqr();
                    let d = 1.0 + s;
                    UnitVector {
                        x: 2.0 * w.re / d,
                        y: -2.0 * w.im / d,
                        z: (s - 1.0) / d,
                    }
                }
            }
        }
    }

    /// The antipodal point `-1/ζ*`; `0` and infinity are exchanged.
    pub fn antipode(&self) -> Self {
        match *self {
            StereoPoint::Infinity => StereoPoint::ZERO,
            StereoPoint::Finite(z) if z.re == 0.0 && z.im == 0.0 => StereoPoint::Infinity,
            StereoPoint::Finite(z) => StereoPoint::Finite(-z.conj().inv()),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, StereoPoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match *self {
            StereoPoint::Finite(z) => Some(z),
            StereoPoint::Infinity => None,
        }
    }
}

/// Chordal metric on the Riemann sphere, equal to the 3-space distance between
/// the corresponding unit vectors. Range `[0, 2]`.
pub fn chordal_distance(p: &StereoPoint, q: &StereoPoint) -> f64 {
    match (*p, *q) {
        (StereoPoint::Infinity, StereoPoint::Infinity) => 0.0,
        (StereoPoint::Finite(a), StereoPoint::Infinity)
        | (StereoPoint::Infinity, StereoPoint::Finite(a)) => 2.0 / 1f64.hypot(a.norm()),
        (StereoPoint::Finite(a), StereoPoint::Finite(b)) => {
            let d = 2.0 * (a - b).norm() / (1f64.hypot(a.norm()) * 1f64.hypot(b.norm()));
            d.min(2.0)
        }
    }
}

/// `ζ(θ, φ) = exp(iφ) tan(θ/2)`.
pub fn stereo_from_angles(theta: f64, phi: f64) -> StereoPoint {
    StereoPoint::from_angles(theta, phi)
}

pub fn angles_from_stereo(p: &StereoPoint) -> (f64, f64) {
    p.angles()
}

pub fn antipode(p: &StereoPoint) -> StereoPoint {
    p.antipode()
}

pub type Matrix3 = [[f64; 3]; 3];

/// Active rotation `Rz(α) Ry(β) Rz(γ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerRotation {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl EulerRotation {
    pub const IDENTITY: EulerRotation = EulerRotation {
        alpha: 0.0,
        beta: 0.0,
        gamma: 0.0,
    };

    pub const fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        EulerRotation { alpha, beta, gamma }
    }

    /// The rotation `Rz(φ) Ry(θ)` carrying `+z` to `u(θ, φ)`.
    pub const fn to_direction(theta: f64, phi: f64) -> Self {
        EulerRotation {
            alpha: phi,
            beta: theta,
            gamma: 0.0,
        }
    }

    pub fn inverse(&self) -> Self {
        EulerRotation {
            alpha: -self.gamma,
            beta: -self.beta,
            gamma: -self.alpha,
        }
    }

    pub fn matrix(&self) -> Matrix3 {
        matmul(
            &matmul(&rot_z(self.alpha), &rot_y(self.beta)),
            &rot_z(self.gamma),
        )
    }

    /// Euler angles of a proper rotation matrix.
    pub fn from_matrix(m: &Matrix3) -> Self {
        let sin_beta = m[0][2].hypot(m[1][2]);
        let beta = sin_beta.atan2(m[2][2]);
        if sin_beta > 1e-12 {
            EulerRotation {
                alpha: m[1][2].atan2(m[0][2]),
                beta,
                gamma: m[2][1].atan2(-m[2][0]),
            }
        } else if m[2][2] > 0.0 {
            EulerRotation {
                alpha: m[1][0].atan2(m[0][0]),
                beta: 0.0,
                gamma: 0.0,
            }
        } else {
            EulerRotation {
                alpha: (-m[0][1]).atan2(-m[0][0]),
                beta: PI,
                gamma: 0.0,
            }
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &EulerRotation) -> Self {
        EulerRotation::from_matrix(&matmul(&self.matrix(), &other.matrix()))
    }

    pub fn rotate_vector(&self, u: &UnitVector) -> UnitVector {
        let v = apply(&self.matrix(), &u.to_array());
        UnitVector::new(v[0], v[1], v[2]).unwrap_or(*u)
    }

    pub fn rotate_point(&self, p: &StereoPoint) -> StereoPoint {
        StereoPoint::from_unit_vector(&self.rotate_vector(&p.to_unit_vector()))
    }
}

impl Default for EulerRotation {
    fn default() -> Self {
        EulerRotation::IDENTITY
    }
}

pub fn rotate_vector(r: &EulerRotation, u: &UnitVector) -> UnitVector {
    r.rotate_vector(u)
}

fn rot_z(a: f64) -> Matrix3 {
    let (s, c) = a.sin_cos();
    [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
}

fn rot_y(b: f64) -> Matrix3 {
    let (s, c) = b.sin_cos();
    [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]]
}

pub(crate) fn matmul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = [[0.0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub(crate) fn apply(m: &Matrix3, v: &[f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (i, o) in out.iter_mut().enumerate() {
        *o = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn stereo_examples() {
        assert_eq!(stereo_from_angles(0.0, 1.3), StereoPoint::ZERO);
        let p = stereo_from_angles(FRAC_PI_2, 0.0).as_finite().unwrap();
        assert!(close(p, Complex64::new(1.0, 0.0), 1e-15));
        let p = stereo_from_angles(FRAC_PI_2, FRAC_PI_2).as_finite().unwrap();
        assert!(close(p, Complex64::new(0.0, 1.0), 1e-15));
        assert_eq!(stereo_from_angles(PI, 0.4), StereoPoint::Infinity);
        assert_eq!(stereo_from_angles(PI - 1e-13, 0.4), StereoPoint::Infinity);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(StereoPoint::ZERO.angles(), (0.0, 0.0));
        assert_eq!(StereoPoint::Infinity.angles(), (PI, 0.0));
        let (t, p) = StereoPoint::finite(1.0, 0.0).angles();
        assert!((t - FRAC_PI_2).abs() < 1e-15 && p == 0.0);
    }

    #[test]
    fn antipode_examples() {
        let a = StereoPoint::finite(1.0, 0.0).antipode().as_finite().unwrap();
        assert!(close(a, Complex64::new(-1.0, 0.0), 1e-15));
        let z = Complex64::new(0.0, 2.0);
        let oracle = -Complex64::new(1.0, 0.0) / z.conj();
        let a = StereoPoint::Finite(z).antipode().as_finite().unwrap();
        assert!(close(a, oracle, 1e-15));
        assert!(close(a, Complex64::new(0.0, -0.5), 1e-15));
        assert_eq!(StereoPoint::ZERO.antipode(), StereoPoint::Infinity);
        assert_eq!(StereoPoint::Infinity.antipode(), StereoPoint::ZERO);
    }

    #[test]
    fn chordal_examples() {
        assert_eq!(chordal_distance(&StereoPoint::ZERO, &StereoPoint::Infinity), 2.0);
        let p = StereoPoint::finite(0.3, -0.7);
        assert_eq!(chordal_distance(&p, &p), 0.0);
        let d = chordal_distance(&StereoPoint::ZERO, &StereoPoint::finite(1.0, 0.0));
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(chordal_distance(&StereoPoint::Infinity, &StereoPoint::Infinity), 0.0);
    }

    #[test]
    fn rotation_examples() {
        let id = EulerRotation::IDENTITY;
        assert_eq!(id.rotate_vector(&UnitVector::PLUS_Z), UnitVector::PLUS_Z);
        let ry = EulerRotation::new(0.0, FRAC_PI_2, 0.0);
        let v = ry.rotate_vector(&UnitVector::PLUS_Z);
        assert!(v.distance(&UnitVector::PLUS_X) < 1e-15);
        let r = EulerRotation::new(FRAC_PI_2, FRAC_PI_2, 0.0);
        let v = r.rotate_vector(&UnitVector::PLUS_Z);
        // oracle: explicit product Rz(π/2)·Ry(π/2)·ẑ
        let oracle = apply(&rot_z(FRAC_PI_2), &apply(&rot_y(FRAC_PI_2), &[0.0, 0.0, 1.0]));
        assert!((v.x() - oracle[0]).abs() < 1e-15);
        assert!(v.distance(&UnitVector::PLUS_Y) < 1e-15);
    }

    #[test]
    fn matrix_angles_roundtrip_at_gimbal_lock() {
        for r in [
            EulerRotation::new(0.3, 0.0, 0.4),
            EulerRotation::new(0.3, PI, 0.0),
            EulerRotation::new(-1.0, 2.0, 0.5),
        ] {
            let back = EulerRotation::from_matrix(&r.matrix()).matrix();
            let m = r.matrix();
            for i in 0..3 {
                for j in 0..3 {
                    assert!((back[i][j] - m[i][j]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn pole_azimuth_is_zero() {
        assert_eq!(UnitVector::PLUS_Z.angles(), (0.0, 0.0));
        assert_eq!((-UnitVector::PLUS_Z).angles(), (PI, 0.0));
    }

    #[test]
    fn zero_vector_is_rejected() {
        assert!(UnitVector::new(0.0, 0.0, 0.0).is_err());
        assert!(UnitVector::new(f64::NAN, 0.0, 1.0).is_err());
    }
}
