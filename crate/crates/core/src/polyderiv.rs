//! Exact differentiation of sums of `P(x,y,z) / r^k`.
//!
//! `P` is a homogeneous polynomial with rational coefficients. The class is
//! closed under directional derivatives and the Laplacian, and starting from
//! `1/r` it contains every multipole potential `D_{u_1}⋯D_{u_j}(1/r)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::harmonics::{SphereGrid, SphereSamples};
use crate::sphere::UnitVector;

type Exponent = (u32, u32, u32);

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Homogeneous polynomial in `x, y, z` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousPoly {
    degree: u32,
    terms: BTreeMap<Exponent, BigRational>,
}

impl HomogeneousPoly {
    pub fn zero(degree: u32) -> Self {
        HomogeneousPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero(0);
        p.add_term((0, 0, 0), c);
        p
    }

    /// `x² + y² + z²`.
    pub fn r_squared() -> Self {
        let mut p = Self::zero(2);
        for e in [(2, 0, 0), (0, 2, 0), (0, 0, 2)] {
            p.add_term(e, BigRational::one());
        }
        p
    }

    /// `a x + b y + c z`.
    pub fn linear(v: &RationalVector) -> Self {
        let mut p = Self::zero(1);
        p.add_term((1, 0, 0), v.0[0].clone());
        p.add_term((0, 1, 0), v.0[1].clone());
        p.add_term((0, 0, 1), v.0[2].clone());
        p
    }

    pub fn from_terms(degree: u32, terms: Vec<(Exponent, BigRational)>) -> Result<Self> {
        let mut p = Self::zero(degree);
        for (e, c) in terms {
            if e.0 + e.1 + e.2 != degree {
                return Err(Error::InvalidInput(format!(
                    "monomial {e:?} does not have degree {degree}"
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, e: Exponent) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        debug_assert_eq!(e.0 + e.1 + e.2, self.degree);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &HomogeneousPoly) -> HomogeneousPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "adding polynomials of different degree");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> HomogeneousPoly {
        let mut out = Self::zero(self.degree);
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    pub fn mul(&self, other: &HomogeneousPoly) -> HomogeneousPoly {
        let mut out = Self::zero(self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term((a.0 + b.0, a.1 + b.1, a.2 + b.2), ca * cb);
            }
        }
        out
    }

    /// `∂/∂x_axis`, axis 0, 1, 2 for x, y, z.
    pub fn partial(&self, axis: usize) -> HomogeneousPoly {
        let mut out = Self::zero(self.degree.saturating_sub(1));
        for (&(p, q, s), c) in &self.terms {
            let (n, e) = match axis {
                0 => (p, (p.wrapping_sub(1), q, s)),
                1 => (q, (p, q.wrapping_sub(1), s)),
                _ => (s, (p, q, s.wrapping_sub(1))),
            };
            if n > 0 {
                out.add_term(e, c * rat(n as i64));
            }
        }
        out
    }

    pub fn laplacian(&self) -> HomogeneousPoly {
        let mut out = Self::zero(self.degree.saturating_sub(2));
        for axis in 0..3 {
            out = out.add(&self.partial(axis).partial(axis));
        }
        out
    }

    pub fn eval(&self, x: f64, y: f64, z: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(p, q, s), c)| {
                c.to_f64().unwrap_or(f64::NAN) * x.powi(p as i32) * y.powi(q as i32) * z.powi(s as i32)
            })
            .sum()
    }
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(p, q, s), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            write!(f, "{}", c.abs())?;
            for (v, n) in [("x", p), ("y", q), ("z", s)] {
                match n {
                    0 => {}
                    1 => write!(f, "{v}")?,
                    _ => write!(f, "{v}^{n}")?,
                }
            }
        }
        Ok(())
    }
}

/// A direction with exact rational components (not necessarily unit length).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalVector([BigRational; 3]);

impl RationalVector {
    pub fn new(x: BigRational, y: BigRational, z: BigRational) -> Self {
        RationalVector([x, y, z])
    }

    pub fn from_integers(x: i64, y: i64, z: i64) -> Self {
        RationalVector([rat(x), rat(y), rat(z)])
    }

    /// Exact image of the float components; the result is unit length only to
    /// within rounding of the input.
    pub fn from_unit_vector(u: &UnitVector) -> Self {
        let exact = |v: f64| BigRational::from_float(v).expect("unit vector components are finite");
        RationalVector([exact(u.x()), exact(u.y()), exact(u.z())])
    }

    /// Unit vector `(2a, 2b, 1 - a² - b²) / (1 + a² + b²)`, exact for rational `a, b`.
    pub fn unit_from_stereo(a: BigRational, b: BigRational) -> Self {
        let s = &a * &a + &b * &b;
        let den = BigRational::one() + &s;
        let two = rat(2);
        RationalVector([
            &two * &a / &den,
            &two * &b / &den,
            (BigRational::one() - &s) / &den,
        ])
    }

    pub fn components(&self) -> &[BigRational; 3] {
        &self.0
    }

    pub fn norm_sqr(&self) -> BigRational {
        self.0.iter().map(|c| c * c).fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn to_unit_vector(&self) -> Result<UnitVector> {
        let f = |c: &BigRational| c.to_f64().unwrap_or(f64::NAN);
        UnitVector::new(f(&self.0[0]), f(&self.0[1]), f(&self.0[2]))
    }
}

/// `Σ_i P_i / r^{k_i}`, merged so each `(deg P, k)` appears once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalRadialFunction {
    terms: BTreeMap<(u32, u32), HomogeneousPoly>,
}

impl RationalRadialFunction {
    pub fn zero() -> Self {
        RationalRadialFunction {
            terms: BTreeMap::new(),
        }
    }

    /// `1/r`.
    pub fn inverse_r() -> Self {
        Self::term(HomogeneousPoly::constant(BigRational::one()), 1)
    }

    /// `P / r^k`.
    pub fn term(p: HomogeneousPoly, k: u32) -> Self {
        let mut f = Self::zero();
        f.add_term(p, k);
        f
    }

    fn add_term(&mut self, p: HomogeneousPoly, k: u32) {
        if p.is_zero() {
            return;
        }
        let key = (p.degree(), k);
        let merged = match self.terms.remove(&key) {
            Some(existing) => existing.add(&p),
            None => p,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    /// Terms keyed by `(polynomial degree, radial exponent)`.
    pub fn terms(&self) -> &BTreeMap<(u32, u32), HomogeneousPoly> {
        &self.terms
    }

    pub fn add(&self, other: &RationalRadialFunction) -> RationalRadialFunction {
        let mut out = self.clone();
        for (&(_, k), p) in &other.terms {
            out.add_term(p.clone(), k);
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> RationalRadialFunction {
        let mut out = Self::zero();
        for (&(_, k), p) in &self.terms {
            out.add_term(p.scale(c), k);
        }
        out
    }

    pub fn negate(&self) -> RationalRadialFunction {
        self.scale(&rat(-1))
    }

    pub fn max_radial_exponent(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, k)| k).max()
    }

    pub fn max_poly_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(d, _)| d).max()
    }

    /// Rewrites every group of terms with the same homogeneity and radial
    /// parity over the largest power of `r` in the group, multiplying the
    /// other numerators by powers of `r²`. Two functions are equal iff their
    /// canonical forms are identical.
    pub fn canonical(&self) -> RationalRadialFunction {
        let mut groups: BTreeMap<(i64, u32), Vec<(u32, &HomogeneousPoly)>> = BTreeMap::new();
        for (&(d, k), p) in &self.terms {
            groups
                .entry((d as i64 - k as i64, k % 2))
                .or_default()
                .push((k, p));
        }
        let r2 = HomogeneousPoly::r_squared();
        let mut out = Self::zero();
        for members in groups.values() {
            let top = members.iter().map(|(k, _)| *k).max().unwrap_or(0);
            let mut sum: Option<HomogeneousPoly> = None;
            for (k, p) in members {
                let mut lifted = (*p).clone();
                for _ in 0..(top - k) / 2 {
                    lifted = lifted.mul(&r2);
                }
                sum = Some(match sum {
                    Some(s) => s.add(&lifted),
                    None => lifted,
                });
            }
            if let Some(s) = sum {
                out.add_term(s, top);
            }
        }
        out
    }

    /// Exact test for the zero function away from the origin.
    pub fn is_zero(&self) -> bool {
        self.canonical().terms.is_empty()
    }

    pub fn equals(&self, other: &RationalRadialFunction) -> bool {
        self.add(&other.negate()).is_zero()
    }

    pub fn eval(&self, x: f64, y: f64, z: f64) -> f64 {
        let r = (x * x + y * y + z * z).sqrt();
        self.terms
            .iter()
            .map(|(&(_, k), p)| p.eval(x, y, z) / r.powi(k as i32))
            .sum()
    }
}

impl fmt::Display for RationalRadialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(_, k), p)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p})/r^{k}")?;
        }
        Ok(())
    }
}

/// `u·∇ f`, using `∂(P/r^k) = ∂P/r^k - k x_i P / r^{k+2}`.
pub fn directional_derivative(
    f: &RationalRadialFunction,
    u: &RationalVector,
) -> RationalRadialFunction {
    let lin = HomogeneousPoly::linear(u);
    let mut out = RationalRadialFunction::zero();
    for (&(_, k), p) in f.terms() {
        let mut grad = HomogeneousPoly::zero(p.degree().saturating_sub(1));
        for (axis, c) in u.components().iter().enumerate() {
            grad = grad.add(&p.partial(axis).scale(c));
        }
        out.add_term(grad, k);
        out.add_term(lin.mul(p).scale(&rat(-(k as i64))), k + 2);
    }
    out
}

/// `D_{u_1}⋯D_{u_j}(1/r)`.
pub fn multipole_derivative(directions: &[RationalVector]) -> RationalRadialFunction {
    directions
        .iter()
        .fold(RationalRadialFunction::inverse_r(), |f, u| {
            directional_derivative(&f, u)
        })
}

/// `Δ(P/r^k) = ΔP/r^k + (k(k-1) - 2k deg P) P/r^{k+2}`.
pub fn laplacian(f: &RationalRadialFunction) -> RationalRadialFunction {
    let mut out = RationalRadialFunction::zero();
    for (&(d, k), p) in f.terms() {
        out.add_term(p.laplacian(), k);
        let (k, d) = (k as i64, d as i64);
        out.add_term(p.scale(&rat(k * (k - 1) - 2 * k * d)), (k + 2) as u32);
    }
    out
}

/// Values at `r = 1` on the grid nodes.
pub fn restrict_to_sphere(f: &RationalRadialFunction, grid: &SphereGrid) -> SphereSamples {
    grid.sample(|t, p| {
        let u = UnitVector::from_angles(t, p);
        Complex64::new(f.eval(u.x(), u.y(), u.z()), 0.0)
    })
}
