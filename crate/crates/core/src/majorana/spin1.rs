//! Spin 1 in cartesian form: closed-form roots, the spherical-to-cartesian
//! unitary map and nilpotent vectors.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::harmonics::SpinState;
use crate::sphere::{EulerRotation, StereoPoint, Tolerances, UnitVector};
use crate::wigner::rotate_state;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn require_spin_one(s: &SpinState) -> Result<()> {
    if s.degree() != Degree::integer(1) {
        return Err(Error::InvalidInput(format!(
            "operation needs j = 1, got j = {}",
            s.degree()
        )));
    }
    Ok(())
}

/// A complex cartesian 3-vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartesianSpin1 {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl CartesianSpin1 {
    pub fn new(x: Complex64, y: Complex64, z: Complex64) -> Self {
        CartesianSpin1 { x, y, z }
    }

    pub fn to_array(&self) -> [Complex64; 3] {
        [self.x, self.y, self.z]
    }

    /// Unconjugated `v · w`.
    pub fn dot(&self, other: &CartesianSpin1) -> Complex64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// `v* · v`.
    pub fn norm_sqr(&self) -> f64 {
        self.x.norm_sqr() + self.y.norm_sqr() + self.z.norm_sqr()
    }

    pub fn conj(&self) -> CartesianSpin1 {
        CartesianSpin1::new(self.x.conj(), self.y.conj(), self.z.conj())
    }

    pub fn cross(&self, o: &CartesianSpin1) -> CartesianSpin1 {
        CartesianSpin1::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    /// Largest imaginary part, relative to the norm.
    pub fn imaginary_residual(&self) -> f64 {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return 0.0;
        }
        self.to_array().iter().map(|c| c.im.abs()).fold(0.0, f64::max) / n
    }
}

/// `v = U ψ` with `U` acting on `(ψ_{+1}, ψ_0, ψ_{-1})`:
///
/// ```text
///       1  [ -1   0   1 ]
/// U = ---- [ -i   0  -i ]
///      √2  [  0  √2   0 ]
/// ```
pub fn spherical_to_cartesian(s: &SpinState) -> Result<CartesianSpin1> {
    require_spin_one(s)?;
    let c = s.coeffs();
    let (m1, p0, p1) = (c[0], c[1], c[2]);
    Ok(CartesianSpin1::new(
        (m1 - p1) / SQRT_2,
        -I * (p1 + m1) / SQRT_2,
        p0,
    ))
}

/// Inverse of [`spherical_to_cartesian`] (the conjugate transpose of `U`).
pub fn cartesian_to_spherical(v: &CartesianSpin1) -> SpinState {
    let p1 = (-v.x + I * v.y) / SQRT_2;
    let m1 = (v.x + I * v.y) / SQRT_2;
    SpinState::new(Degree::integer(1), vec![m1, v.z, p1]).expect("three coefficients")
}

/// A complex vector with `ν · ν = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NilpotentVector(CartesianSpin1);

impl NilpotentVector {
    pub fn vector(&self) -> &CartesianSpin1 {
        &self.0
    }

    pub fn dot_self(&self) -> Complex64 {
        self.0.dot(&self.0)
    }

    /// Unconjugated dot product with a real direction.
    pub fn dot_real(&self, u: &UnitVector) -> Complex64 {
        self.0.x * u.x() + self.0.y * u.y() + self.0.z * u.z()
    }

    /// The real vector `i ν* × ν`. For `ν = ν(ζ)` it lies along the line of
    /// `u(ζ)`, pointing towards `-u(ζ)` with the map above.
    pub fn real_axis(&self) -> [f64; 3] {
        let w = self.0.conj().cross(&self.0);
        [(I * w.x).re, (I * w.y).re, (I * w.z).re]
    }
}

/// Cartesian image of `|+1, 1; ζ⟩`, the basis ket `|+1⟩` rotated to the direction of `ζ`.
pub fn nilpotent_of(zeta: &StereoPoint) -> NilpotentVector {
    let (theta, phi) = zeta.angles();
    let up = SpinState::basis(Degree::integer(1), 2).expect("valid sublevel");
    let rotated = rotate_state(&up, &EulerRotation::to_direction(theta, phi));
    NilpotentVector(spherical_to_cartesian(&rotated).expect("spin one"))
}

/// The two roots `ζ±` of the spin-1 Majorana polynomial from the quadratic formula.
///
/// A vanishing `ψ_{+1}` lowers the degree and sends `ζ+` to infinity; if `ψ_0`
/// also vanishes both roots are at infinity.
pub fn spin1_roots_closed_form(s: &SpinState) -> Result<(StereoPoint, StereoPoint)> {
    require_spin_one(s)?;
    let c = s.coeffs();
    let (m1, p0, p1) = (c[0], c[1], c[2]);
    let norm = s.norm();
    if norm == 0.0 {
        return Err(Error::NullState);
    }
    let tiny = Tolerances::default().deficiency * norm;
    if p1.norm() <= tiny {
        if p0.norm() <= tiny {
            return Ok((StereoPoint::Infinity, StereoPoint::Infinity));
        }
        return Ok((StereoPoint::Infinity, StereoPoint::Finite(m1 / (SQRT_2 * p0))));
    }
    let disc = (p0 * p0 - 2.0 * p1 * m1).sqrt();
    let plus = p0 + disc;
    let minus = p0 - disc;
    let denom = SQRT_2 * p1;
    // larger-magnitude numerator directly, the other root from the product m1/p1
    let (big, plus_is_big) = if plus.norm() >= minus.norm() {
        (plus, true)
    } else {
        (minus, false)
    };
    if big.norm() == 0.0 {
        return Ok((StereoPoint::ZERO, StereoPoint::ZERO));
    }
    let big_root = big / denom;
    let other = (m1 / p1) / big_root;
    let (zp, zm) = if plus_is_big {
        (big_root, other)
    } else {
        (other, big_root)
    };
    Ok((StereoPoint::Finite(zp), StereoPoint::Finite(zm)))
}
