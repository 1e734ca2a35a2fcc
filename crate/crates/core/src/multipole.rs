//! Maxwell multipoles of real band-limited functions.
//!
//! A real degree-`j` function on the sphere is, up to a term divisible by
//! `r² = 1`, a constant times `Π_n u·u_n`. The `u_n` are one representative from
//! each antipodal pair of Majorana roots. This module extracts them, rebuilds
//! the function, and evaluates the integral kernels that convert between the
//! harmonic and Majorana pictures.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::harmonics::{
    eval_all_ylm, eval_function, pairwise_sum, project_onto_degree, SphereGrid, SpinState,
};
use crate::majorana::{
    coherent_amplitudes, constellation_of, majorana_factors, majorana_prefactor,
    nilpotent_of, pair_antipodal, MajoranaPolynomial,
};
use crate::sphere::{StereoPoint, Tolerances, UnitVector};

const CANONICAL_EPS: f64 = 1e-12;

/// Amplitude and `j` directions of a Maxwell multipole expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct MultipoleSet {
    degree: u32,
    directions: Vec<UnitVector>,
    amplitude: f64,
}

impl MultipoleSet {
    pub fn new(degree: u32, directions: Vec<UnitVector>, amplitude: f64) -> Result<Self> {
        if directions.len() != degree as usize {
            return Err(Error::InvalidInput(format!(
                "degree {degree} needs {degree} directions, got {}",
                directions.len()
            )));
        }
        if !amplitude.is_finite() {
            return Err(Error::InvalidInput("amplitude is not finite".into()));
        }
        Ok(MultipoleSet {
            degree,
            directions,
            amplitude,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn directions(&self) -> &[UnitVector] {
        &self.directions
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// Replaces one direction by its antipode and compensates in the amplitude.
    pub fn flip(&mut self, index: usize) {
        self.directions[index] = -self.directions[index];
        self.amplitude = -self.amplitude;
    }

    /// Moves every direction to its canonical representative.
    pub fn canonicalize(&mut self) {
        for i in 0..self.directions.len() {
            if !is_canonical(&self.directions[i]) {
                self.flip(i);
            }
        }
    }

    /// `C Π_n u·u_n` at a point of the unit sphere.
    pub fn product_at(&self, u: &UnitVector) -> f64 {
        self.directions
            .iter()
            .fold(self.amplitude, |acc, d| acc * d.dot(u))
    }
}

/// `z > 0`, then `x > 0`, then `y > 0` for directions on the equator.
pub fn is_canonical(u: &UnitVector) -> bool {
    for c in [u.z(), u.x(), u.y()] {
        if c > CANONICAL_EPS {
            return true;
        }
        if c < -CANONICAL_EPS {
            return false;
        }
    }
    true
}

pub fn canonical_representative(u: &UnitVector) -> UnitVector {
    if is_canonical(u) {
        *u
    } else {
        -*u
    }
}

fn unit_product_state(directions: &[UnitVector], grid: &SphereGrid) -> Result<SpinState> {
    let j = Degree::integer(directions.len() as u32);
    let samples = grid.sample(|t, p| {
        let u = UnitVector::from_angles(t, p);
        Complex64::new(directions.iter().map(|d| d.dot(&u)).product(), 0.0)
    });
    project_onto_degree(&samples, j)
}

/// Multipole directions and amplitude of a real state.
///
/// Directions are canonical representatives of the antipodal root pairs. The
/// amplitude is the least-squares ratio of the state to the degree-`j`
/// projection of the unit product.
pub fn extract_multipoles(s: &SpinState, tol: f64) -> Result<MultipoleSet> {
    let j = s.degree().integer_value()?;
    let residual = s.reality_residual();
    if !(residual <= tol) {
        return Err(Error::NotRealState { residual });
    }
    if j == 0 {
        return MultipoleSet::new(0, Vec::new(), s.coeffs()[0].re);
    }
    let constellation = constellation_of(s)?;
    // reality is settled by the coefficient test above; repeated roots are only
    // located to about the square root of machine precision, so the pairing
    // itself runs at the cluster threshold
    let pair_tol = tol.max(Tolerances::default().cluster_warning);
    let pairing = match pair_antipodal(&constellation, pair_tol) {
        Ok(p) => p,
        Err(Error::PairingFailure { worst }) => {
            return Err(Error::NotRealState {
                residual: residual.max(worst),
            })
        }
        Err(e) => return Err(e),
    };
    let directions = pairing
        .pairs
        .iter()
        .map(|(a, b)| {
            let (ua, ub) = (a.to_unit_vector(), b.to_unit_vector());
            let d = UnitVector::new(
                0.5 * (ua.x() - ub.x()),
                0.5 * (ua.y() - ub.y()),
                0.5 * (ua.z() - ub.z()),
            )?;
            Ok(canonical_representative(&d))
        })
        .collect::<Result<Vec<_>>>()?;
    let basis = unit_product_state(&directions, &SphereGrid::auto(j))?;
    let num: Complex64 = basis
        .coeffs()
        .iter()
        .zip(s.coeffs())
        .map(|(p, f)| p.conj() * f)
        .sum();
    let den = basis.norm().powi(2);
    if den == 0.0 {
        return Err(Error::InvalidInput("degenerate multipole product".into()));
    }
    MultipoleSet::new(j, directions, num.re / den)
}

/// Degree-`j` projection of `C Π_n u·u_n` sampled on `grid`.
pub fn reconstruct(mp: &MultipoleSet, grid: &SphereGrid) -> Result<SpinState> {
    grid.check_exact_for(mp.degree())?;
    let samples = grid.sample(|t, p| {
        Complex64::new(mp.product_at(&UnitVector::from_angles(t, p)), 0.0)
    });
    project_onto_degree(&samples, Degree::integer(mp.degree()))
}

/// One value of an integral kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSample {
    pub zeta: StereoPoint,
    pub theta: f64,
    pub phi: f64,
    pub value: Complex64,
}

/// `K(ζ|θ,φ) = √((2j+1)/4π) · exp(-ij arg ζ)/(1+|ζ|²)^j · Σ_m Y_j^m*(θ,φ) μ_m ζ^{j+m}`.
///
/// At `ζ = ∞` the value is fixed by `K(∞|θ,φ) = (-1)^j K(0|θ,φ)*`, the
/// antipodal relation satisfied by every real function's Majorana function.
pub fn extending_kernel(zeta: &StereoPoint, theta: f64, phi: f64, j: u32) -> Complex64 {
    match zeta {
        StereoPoint::Finite(z) => kernel_finite(*z, &eval_all_ylm(j, theta, phi), j),
        StereoPoint::Infinity => {
            let at_zero = kernel_finite(Complex64::new(0.0, 0.0), &eval_all_ylm(j, theta, phi), j);
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            at_zero.conj() * sign
        }
    }
}

pub fn kernel_sample(zeta: StereoPoint, theta: f64, phi: f64, j: u32) -> KernelSample {
    KernelSample {
        zeta,
        theta,
        phi,
        value: extending_kernel(&zeta, theta, phi, j),
    }
}

fn kernel_finite(z: Complex64, ylm: &[Complex64], j: u32) -> Complex64 {
    let deg = Degree::integer(j);
    let norm = ((2 * j + 1) as f64 / (4.0 * PI)).sqrt();
    // coherent amplitudes already carry the prefactor and μ_m ζ^{j+m}
    let sum: Complex64 = coherent_amplitudes(deg, z)
        .iter()
        .zip(ylm)
        .map(|(c, y)| c * y.conj())
        .sum();
    norm * sum
}

/// Majorana function of `s` at `ζ` from the kernel integral `∫ ψ K(ζ|·) dΩ`.
pub fn extend_via_kernel(
    s: &SpinState,
    probes: &[StereoPoint],
    grid: &SphereGrid,
) -> Result<Vec<Complex64>> {
    let j = s.degree().integer_value()?;
    grid.check_exact_for(j)?;
    let nodes: Vec<(f64, f64)> = grid.nodes().collect();
    let psi: Vec<Complex64> = nodes
        .iter()
        .map(|&(t, p)| eval_function(s, t, p))
        .collect::<Result<_>>()?;
    let ylm: Vec<Vec<Complex64>> = nodes.iter().map(|&(t, p)| eval_all_ylm(j, t, p)).collect();
    let np = grid.n_phi();
    let out = probes
        .iter()
        .map(|zeta| {
            let values: Vec<Complex64> = nodes
                .iter()
                .enumerate()
                .map(|(i, &(t, p))| {
                    let k = match zeta {
                        StereoPoint::Finite(z) => kernel_finite(*z, &ylm[i], j),
                        StereoPoint::Infinity => extending_kernel(zeta, t, p, j),
                    };
                    psi[i] * k
                })
                .collect();
            integrate_rows(&values, np, grid)
        })
        .collect();
    Ok(out)
}

fn integrate_rows(values: &[Complex64], np: usize, grid: &SphereGrid) -> Complex64 {
    let rows: Vec<Complex64> = values
        .chunks(np)
        .zip(grid.theta_weights())
        .map(|(row, w)| pairwise_sum(row) * *w)
        .collect();
    pairwise_sum(&rows) * grid.phi_weight()
}

/// Function values at `(θ, φ)` probes from the folding integral
/// `∫ p_ψ(ζ) K(ζ|θ,φ)* dΩ(ζ)`, with the ζ-plane measure carried to the sphere
/// as `dΩ = 4 d²ζ / (1+|ζ|²)²`.
pub fn fold_via_kernel(
    p: &MajoranaPolynomial,
    probes: &[(f64, f64)],
    grid: &SphereGrid,
) -> Result<Vec<Complex64>> {
    let j = p.degree().integer_value()?;
    grid.check_exact_for(j)?;
    let nodes: Vec<(f64, f64)> = grid.nodes().collect();
    let zetas: Vec<StereoPoint> = nodes
        .iter()
        .map(|&(t, ph)| StereoPoint::from_angles(t, ph))
        .collect();
    let deg = p.degree();
    let majorana: Vec<Complex64> = zetas
        .iter()
        .map(|z| match z {
            StereoPoint::Finite(z) => p.majorana_function(*z),
            StereoPoint::Infinity => {
                // limit along the chart of the grid node: only the top term survives
                let (_, phi) = z.angles();
                let top = p.coeffs()[p.coeffs().len() - 1];
                top * Complex64::from_polar(1.0, deg.as_f64() * phi)
            }
        })
        .collect();
    let np = grid.n_phi();
    let out = probes
        .iter()
        .map(|&(theta, phi)| {
            let ylm = eval_all_ylm(j, theta, phi);
            let values: Vec<Complex64> = zetas
                .iter()
                .zip(&majorana)
                .map(|(z, m)| {
                    let k = match z {
                        StereoPoint::Finite(z) => kernel_finite(*z, &ylm, j),
                        StereoPoint::Infinity => extending_kernel(z, theta, phi, j),
                    };
                    m * k.conj()
                })
                .collect();
            integrate_rows(&values, np, grid)
        })
        .collect();
    Ok(out)
}

/// Smallest `|K| / max |K|` at which [`kernel_ratio`] is still evaluated.
pub const KERNEL_RATIO_FLOOR: f64 = 1e-6;

/// `K(ζ|θ,φ) / (u(θ,φ)·ν(ζ))^j`.
///
/// `|u·ν|` peaks at `1/√2`, so the kernel is `(√2 |u·ν|)^j` of its largest
/// magnitude. Below [`KERNEL_RATIO_FLOOR`] of that the quotient is dominated by
/// rounding in the sum and `None` is returned.
pub fn kernel_ratio(zeta: &StereoPoint, theta: f64, phi: f64, j: u32) -> Option<Complex64> {
    let u = UnitVector::from_angles(theta, phi);
    let dot = nilpotent_of(zeta).dot_real(&u);
    if (std::f64::consts::SQRT_2 * dot.norm()).powi(j as i32) < KERNEL_RATIO_FLOOR {
        return None;
    }
    Some(extending_kernel(zeta, theta, phi, j) / dot.powu(j))
}

/// The factors `μ_m` as used by the kernels, exposed for diagnostics.
pub fn kernel_factors(j: u32) -> Vec<f64> {
    majorana_factors(Degree::integer(j))
}

/// `exp(-ij arg ζ)/(1+|ζ|²)^j` for integer `j`.
pub fn kernel_prefactor(j: u32, zeta: Complex64) -> Complex64 {
    majorana_prefactor(Degree::integer(j), zeta)
}
