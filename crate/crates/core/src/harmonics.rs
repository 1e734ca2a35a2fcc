//! Spherical harmonics, spin-state coefficient vectors and exact spherical quadrature.
//!
//! `Y_j^m` carries the Condon–Shortley phase and is orthonormal on the unit
//! sphere. A [`SpinState`] of integer degree is identified with the function
//!
//! ```text
//! f(θ, φ) = √(4π/(2j+1)) Σ_m a_m Y_j^m(θ, φ)
//! ```
//!
//! which is real exactly when `a_m* = (-1)^m a_{-m}`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::degree::Degree;
use crate::error::{Error, Result};

/// Complex coefficient vector of a spin-`j` state, ascending in `m = -j..=j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinState {
    degree: Degree,
    coeffs: Vec<Complex64>,
}

impl SpinState {
    pub fn new(degree: Degree, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != degree.dim() {
            return Err(Error::InvalidInput(format!(
                "degree {degree} needs {} coefficients, got {}",
                degree.dim(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite coefficient".into()));
        }
        Ok(SpinState { degree, coeffs })
    }

    pub fn zeros(degree: Degree) -> Self {
        SpinState {
            degree,
            coeffs: vec![Complex64::new(0.0, 0.0); degree.dim()],
        }
    }

    /// The basis ket `|m⟩`, with `m` given doubled.
    pub fn basis(degree: Degree, two_m: i32) -> Result<Self> {
        let idx = index_of(degree, two_m)?;
        let mut s = SpinState::zeros(degree);
        s.coeffs[idx] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `|m⟩`, `m` given doubled.
    pub fn component(&self, two_m: i32) -> Option<Complex64> {
        index_of(self.degree, two_m).ok().map(|i| self.coeffs[i])
    }

    pub fn set_component(&mut self, two_m: i32, value: Complex64) -> Result<()> {
        let idx = index_of(self.degree, two_m)?;
        self.coeffs[idx] = value;
        Ok(())
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        self.scaled(Complex64::new(1.0 / n, 0.0))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        SpinState {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Largest violation of `a_m* = (-1)^m a_{-m}`, relative to the state norm.
    /// Infinite for half-integer degree.
    pub fn reality_residual(&self) -> f64 {
        let Ok(j) = self.degree.integer_value() else {
            return f64::INFINITY;
        };
        let j = j as i64;
        let norm = self.norm();
        if norm == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0f64;
        for m in 0..=j {
            let a_plus = self.coeffs[(j + m) as usize];
            let a_minus = self.coeffs[(j - m) as usize];
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            worst = worst.max((a_plus.conj() - a_minus * sign).norm());
        }
        worst / norm
    }

    pub fn is_real_state(&self, tol: f64) -> bool {
        self.reality_residual() <= tol
    }

    /// Relative distance `‖a - b‖ / ‖b‖`.
    pub fn relative_distance(&self, reference: &SpinState) -> f64 {
        let diff: f64 = self
            .coeffs
            .iter()
            .zip(&reference.coeffs)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let scale = reference.norm();
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }
}

fn index_of(degree: Degree, two_m: i32) -> Result<usize> {
    let two_j = degree.two_j() as i32;
    if two_m.abs() > two_j || (two_j - two_m) % 2 != 0 {
        return Err(Error::InvalidIndex(format!(
            "m = {two_m}/2 is not a sublevel of j = {degree}"
        )));
    }
    Ok(((two_j + two_m) / 2) as usize)
}

/// Orthonormalized associated Legendre values `P̄_l^m(cos θ)` for `l = m..=l_max`,
/// Condon–Shortley phase included, so that `Y_l^m = P̄_l^m(cos θ) e^{imφ}` for `m ≥ 0`.
pub fn normalized_legendre(l_max: u32, m: u32, theta: f64) -> Vec<f64> {
    if m > l_max {
        return Vec::new();
    }
    let (sin_t, x) = theta.sin_cos();
    let mut seed = 1.0 / (4.0 * PI).sqrt();
    for k in 1..=m {
        let k = k as f64;
        seed *= -((2.0 * k + 1.0) / (2.0 * k)).sqrt() * sin_t;
    }
    let mut out = Vec::with_capacity((l_max - m + 1) as usize);
    out.push(seed);
    if l_max == m {
        return out;
    }
    let mf = m as f64;
    out.push(x * (2.0 * mf + 3.0).sqrt() * seed);
    for l in (m + 2)..=l_max {
        let lf = l as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let lp = lf - 1.0;
        let b = ((lp * lp - mf * mf) / (4.0 * lp * lp - 1.0)).sqrt();
        let n = out.len();
        let next = a * (x * out[n - 1] - b * out[n - 2]);
        out.push(next);
    }
    out
}

/// `Y_j^m(θ, φ)` with Condon–Shortley phase. Requires integer `j` and `|m| ≤ j`.
pub fn eval_yjm(j: Degree, m: i32, theta: f64, phi: f64) -> Result<Complex64> {
    let l = j.integer_value()?;
    if m.unsigned_abs() > l {
        return Err(Error::InvalidIndex(format!("|m| = {} exceeds j = {l}", m.abs())));
    }
    Ok(ylm_unchecked(l, m, theta, phi))
}

fn ylm_unchecked(l: u32, m: i32, theta: f64, phi: f64) -> Complex64 {
    let am = m.unsigned_abs();
    let p = *normalized_legendre(l, am, theta).last().unwrap_or(&0.0);
    let val = Complex64::from_polar(p, am as f64 * phi);
    if m >= 0 {
        val
    } else if am % 2 == 0 {
        val.conj()
    } else {
        -val.conj()
    }
}

/// All `Y_l^m(θ, φ)` for `m = -l..=l`, ascending.
pub fn eval_all_ylm(l: u32, theta: f64, phi: f64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * l as usize + 1];
    for am in 0..=l {
        let p = *normalized_legendre(l, am, theta).last().unwrap_or(&0.0);
        let val = Complex64::from_polar(p, am as f64 * phi);
        out[(l + am) as usize] = val;
        if am > 0 {
            let sign = if am % 2 == 0 { 1.0 } else { -1.0 };
            out[(l - am) as usize] = val.conj() * sign;
        }
    }
    out
}

/// `√(4π/(2j+1)) Σ_m a_m Y_j^m(θ, φ)`.
pub fn eval_function(s: &SpinState, theta: f64, phi: f64) -> Result<Complex64> {
    let l = s.degree().integer_value()?;
    let ys = eval_all_ylm(l, theta, phi);
    let sum: Complex64 = s.coeffs().iter().zip(&ys).map(|(a, y)| a * y).sum();
    Ok(sum * (4.0 * PI / (2 * l + 1) as f64).sqrt())
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes descending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// Tensor-product quadrature on the sphere: Gauss–Legendre in `cos θ`, uniform in `φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereGrid {
    theta: Vec<f64>,
    weights: Vec<f64>,
    phi: Vec<f64>,
}

impl SphereGrid {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta == 0 || n_phi == 0 {
            return Err(Error::InvalidInput(format!(
                "grid dimensions must be positive, got {n_theta}x{n_phi}"
            )));
        }
        let (x, w) = gauss_legendre(n_theta);
        let theta = x.iter().map(|c| c.clamp(-1.0, 1.0).acos()).collect();
        let phi = (0..n_phi).map(|k| TAU * k as f64 / n_phi as f64).collect();
        Ok(SphereGrid {
            theta,
            weights: w,
            phi,
        })
    }

    /// Smallest grid on which products of two degree-`j` functions integrate exactly.
    pub fn exact_for(j: u32) -> Self {
        let (nt, np) = minimum_resolution(j);
        // dimensions are positive
        SphereGrid::new(nt, np).expect("positive grid")
    }

    /// Default grid, one step above the exactness bound.
    pub fn auto(j: u32) -> Self {
        let j = j as usize;
        SphereGrid::new(2 * j + 2, 4 * j + 2).expect("positive grid")
    }

    pub fn n_theta(&self) -> usize {
        self.theta.len()
    }

    pub fn n_phi(&self) -> usize {
        self.phi.len()
    }

    pub fn thetas(&self) -> &[f64] {
        &self.theta
    }

    pub fn phis(&self) -> &[f64] {
        &self.phi
    }

    /// Gauss–Legendre weights in `cos θ`; multiply by `2π / N_φ` for the solid-angle weight.
    pub fn theta_weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn phi_weight(&self) -> f64 {
        TAU / self.phi.len() as f64
    }

    pub fn len(&self) -> usize {
        self.theta.len() * self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major node list `(θ, φ)`, θ outer.
    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.theta
            .iter()
            .flat_map(move |&t| self.phi.iter().map(move |&p| (t, p)))
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum::<f64>() * self.phi_weight() * self.phi.len() as f64
    }

    pub fn sample<F>(&self, mut f: F) -> SphereSamples
    where
        F: FnMut(f64, f64) -> Complex64,
    {
        let values = self.nodes().map(|(t, p)| f(t, p)).collect();
        SphereSamples {
            grid: self.clone(),
            values,
        }
    }

    /// Returns an error when the grid cannot integrate degree-`j` products exactly.
    pub fn check_exact_for(&self, j: u32) -> Result<()> {
        let (min_theta, min_phi) = minimum_resolution(j);
        if self.n_theta() < min_theta || self.n_phi() < min_phi {
            return Err(Error::GridTooSmall {
                degree: j,
                n_theta: self.n_theta(),
                n_phi: self.n_phi(),
                min_theta,
                min_phi,
            });
        }
        Ok(())
    }
}

pub fn make_grid(n_theta: usize, n_phi: usize) -> Result<SphereGrid> {
    SphereGrid::new(n_theta, n_phi)
}

/// `(N_θ, N_φ) = (2j+1, 4j+1)`.
pub fn minimum_resolution(j: u32) -> (usize, usize) {
    let j = j as usize;
    (2 * j + 1, 4 * j + 1)
}

/// Complex values sampled at the nodes of a [`SphereGrid`], row-major θ then φ.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereSamples {
    grid: SphereGrid,
    values: Vec<Complex64>,
}

impl SphereSamples {
    pub fn new(grid: SphereGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(SphereSamples { grid, values })
    }

    pub fn grid(&self) -> &SphereGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `∫ f dΩ` by the grid's quadrature rule.
    pub fn integrate(&self) -> Complex64 {
        let np = self.grid.n_phi();
        let rows: Vec<Complex64> = self
            .values
            .chunks(np)
            .zip(self.grid.theta_weights())
            .map(|(row, w)| pairwise_sum(row) * *w)
            .collect();
        pairwise_sum(&rows) * self.grid.phi_weight()
    }
}

/// Deterministic pairwise summation.
pub(crate) fn pairwise_sum(xs: &[Complex64]) -> Complex64 {
    match xs.len() {
        0 => Complex64::new(0.0, 0.0),
        1..=8 => xs.iter().sum(),
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// Degree-`j` component of sampled data:
/// `a_m = √((2j+1)/4π) ∫ f Y_j^m* dΩ`, so that [`eval_function`] reproduces it.
pub fn project_onto_degree(samples: &SphereSamples, j: Degree) -> Result<SpinState> {
    let l = j.integer_value()?;
    let grid = samples.grid();
    grid.check_exact_for(l)?;
    let np = grid.n_phi();
    let dim = 2 * l as usize + 1;
    let mut acc = vec![Vec::with_capacity(grid.n_theta()); dim];
    for (i, &theta) in grid.thetas().iter().enumerate() {
        let row = &samples.values()[i * np..(i + 1) * np];
        let w = grid.theta_weights()[i];
        for am in 0..=l {
            let p = *normalized_legendre(l, am, theta).last().unwrap_or(&0.0);
            // Σ_k f(θ_i, φ_k) e^{∓i|m|φ_k}
            let terms_pos: Vec<Complex64> = row
                .iter()
                .zip(grid.phis())
                .map(|(f, &phi)| f * Complex64::from_polar(1.0, -(am as f64) * phi))
                .collect();
            acc[(l + am) as usize].push(pairwise_sum(&terms_pos) * (w * p));
            if am > 0 {
                let sign = if am % 2 == 0 { 1.0 } else { -1.0 };
                let terms_neg: Vec<Complex64> = row
                    .iter()
                    .zip(grid.phis())
                    .map(|(f, &phi)| f * Complex64::from_polar(1.0, am as f64 * phi))
                    .collect();
                acc[(l - am) as usize].push(pairwise_sum(&terms_neg) * (w * p * sign));
            }
        }
    }
    let scale = grid.phi_weight() * ((2 * l + 1) as f64 / (4.0 * PI)).sqrt();
    let coeffs = acc.iter().map(|col| pairwise_sum(col) * scale).collect();
    SpinState::new(j, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ylm_closed_forms() {
        let j0 = Degree::integer(0);
        let j1 = Degree::integer(1);
        let y = eval_yjm(j0, 0, 0.3, 2.0).unwrap();
        assert!((y - c(1.0 / (4.0 * PI).sqrt(), 0.0)).norm() < 1e-15);
        for &t in &[0.0, 0.4, 1.7, PI] {
            let y = eval_yjm(j1, 0, t, 0.9).unwrap();
            assert!((y.re - (3.0 / (4.0 * PI)).sqrt() * t.cos()).abs() < 1e-15);
            assert!(y.im.abs() < 1e-15);
        }
        let y = eval_yjm(j1, 1, FRAC_PI_2, 0.0).unwrap();
        assert!((y - c(-(3.0 / (8.0 * PI)).sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn half_integer_degree_is_rejected() {
        let half = Degree::from_doubled(3);
        assert_eq!(
            eval_yjm(half, 1, 0.1, 0.2),
            Err(Error::NonIntegerDegree { two_j: 3 })
        );
        let s = SpinState::zeros(half);
        assert!(eval_function(&s, 0.1, 0.2).is_err());
        assert!(eval_yjm(Degree::integer(2), 3, 0.1, 0.1).is_err());
    }

    #[test]
    fn function_examples() {
        let s0 = SpinState::new(Degree::integer(0), vec![c(1.0, 0.0)]).unwrap();
        assert!((eval_function(&s0, 1.0, 2.0).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let s1 = SpinState::basis(Degree::integer(1), 0).unwrap();
        assert!((eval_function(&s1, 0.0, 0.0).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let s2 = SpinState::basis(Degree::integer(2), 0).unwrap();
        assert!((eval_function(&s2, FRAC_PI_2, 0.3).unwrap() - c(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn conjugation_symmetry() {
        for l in 0..=12u32 {
            for m in -(l as i32)..=(l as i32) {
                for &(t, p) in &[(0.3, 0.1), (1.2, 4.0), (2.9, 5.5)] {
                    let a = eval_yjm(Degree::integer(l), m, t, p).unwrap().conj();
                    let b = eval_yjm(Degree::integer(l), -m, t, p).unwrap();
                    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                    assert!((a - b * sign).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn orthonormality_on_exact_grid() {
        let grid = SphereGrid::new(22, 42).unwrap();
        let mut funcs = Vec::new();
        for l in 0..=10u32 {
            for m in -(l as i32)..=(l as i32) {
                funcs.push((l, m));
            }
        }
        let values: Vec<Vec<Complex64>> = funcs
            .iter()
            .map(|&(l, m)| grid.nodes().map(|(t, p)| ylm_unchecked(l, m, t, p)).collect())
            .collect();
        for a in 0..funcs.len() {
            for b in a..funcs.len() {
                let prod: Vec<Complex64> = values[a]
                    .iter()
                    .zip(&values[b])
                    .map(|(x, y)| x * y.conj())
                    .collect();
                let s = SphereSamples::new(grid.clone(), prod).unwrap().integrate();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((s - c(expect, 0.0)).norm() < 1e-10, "{:?} {:?}", funcs[a], funcs[b]);
            }
        }
    }

    #[test]
    fn grid_examples() {
        let g = make_grid(1, 1).unwrap();
        assert!((g.total_weight() - 4.0 * PI).abs() < 1e-12);
        let g = make_grid(17, 5).unwrap();
        assert!((g.total_weight() - 4.0 * PI).abs() < 1e-10);
        let g = make_grid(3, 5).unwrap();
        let s = g.sample(|t, p| ylm_unchecked(2, 0, t, p));
        assert!(s.integrate().norm() < 1e-12);
        assert!(make_grid(0, 3).is_err());
    }

    /// Adaptive Simpson on `[a, b]`.
    fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let whole = (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let left = (m - a) / 6.0 * (f(a) + 4.0 * f(lm) + f(m));
        let right = (b - m) / 6.0 * (f(m) + 4.0 * f(rm) + f(b));
        if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            adaptive_simpson(f, a, m, tol / 2.0, depth - 1)
                + adaptive_simpson(f, m, b, tol / 2.0, depth - 1)
        }
    }

    #[test]
    fn norm_of_y32_against_adaptive_quadrature() {
        // oracle: |Y_3^2|² is φ-independent, integrate 2π |Y|² sin θ dθ adaptively
        let oracle = adaptive_simpson(
            &|t: f64| TAU * ylm_unchecked(3, 2, t, 0.0).norm_sqr() * t.sin(),
            0.0,
            PI,
            1e-14,
            50,
        );
        assert!((oracle - 1.0).abs() < 1e-10);
        let g = make_grid(7, 13).unwrap();
        let s = g.sample(|t, p| c(ylm_unchecked(3, 2, t, p).norm_sqr(), 0.0));
        assert!((s.integrate().re - oracle).abs() < 1e-10);
    }

    #[test]
    fn projection_examples() {
        let j = Degree::integer(2);
        let grid = SphereGrid::exact_for(2);
        let s = SpinState::new(j, vec![c(0.3, -0.2), c(0.1, 0.5), c(-1.0, 0.0), c(0.0, 0.7), c(2.0, 1.0)])
            .unwrap();
        let samples = grid.sample(|t, p| eval_function(&s, t, p).unwrap());
        let back = project_onto_degree(&samples, j).unwrap();
        for (a, b) in back.coeffs().iter().zip(s.coeffs()) {
            assert!((a - b).norm() < 1e-10);
        }
        let constant = grid.sample(|_, _| c(1.0, 0.0));
        assert!(project_onto_degree(&constant, j).unwrap().norm() < 1e-12);
        // cos²θ = (2 P_2 + 1)/3: only a_0 survives
        let zsq = grid.sample(|t, _| c(t.cos().powi(2), 0.0));
        let a = project_onto_degree(&zsq, j).unwrap();
        assert!((a.coeffs()[2].norm() / a.norm() - 1.0).abs() < 1e-12);
        assert!((a.coeffs()[2].re - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn projection_rejects_coarse_grid() {
        let grid = SphereGrid::new(4, 9).unwrap();
        let samples = grid.sample(|_, _| c(1.0, 0.0));
        assert!(matches!(
            project_onto_degree(&samples, Degree::integer(2)),
            Err(Error::GridTooSmall { min_theta: 5, min_phi: 9, .. })
        ));
        assert!(project_onto_degree(&samples, Degree::from_doubled(1)).is_err());
    }

    #[test]
    fn reality_flag() {
        let j = Degree::integer(1);
        // a_1 = 1+i, a_{-1} = -(1-i), a_0 real
        let real = SpinState::new(j, vec![c(-1.0, 1.0), c(0.4, 0.0), c(1.0, 1.0)]).unwrap();
        assert!(real.is_real_state(1e-14));
        let not_real = SpinState::new(j, vec![c(1.0, 1.0), c(0.4, 0.0), c(1.0, 1.0)]).unwrap();
        assert!(!not_real.is_real_state(1e-3));
        assert!(SpinState::zeros(Degree::from_doubled(1)).reality_residual().is_infinite());
    }

    #[test]
    fn state_rejects_bad_length() {
        assert!(SpinState::new(Degree::integer(1), vec![c(1.0, 0.0)]).is_err());
        assert!(SpinState::basis(Degree::integer(1), 1).is_err());
        assert!(SpinState::basis(Degree::from_doubled(1), 1).is_ok());
    }
}
