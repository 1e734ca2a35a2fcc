//! Wigner rotation matrices for integer and half-integer `j`.
//!
//! Matrix elements follow the active convention
//!
//! ```text
//! D^j_{m,m'}(α, β, γ) = ⟨m| Rz(α) Ry(β) Rz(γ) |m'⟩ = e^{-imα} d^j_{m,m'}(β) e^{-im'γ}
//! ```
//!
//! with the little-d function evaluated from the explicit factorial sum. Terms
//! are accumulated as `exp(log-magnitude)` with separately tracked signs.

use num_complex::Complex64;

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::harmonics::SpinState;
use crate::special::ln_factorial_table;
use crate::sphere::EulerRotation;

/// Dense `(2j+1) × (2j+1)` rotation matrix, rows and columns ascending in `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerD {
    degree: Degree,
    entries: Vec<Complex64>,
}

impl WignerD {
    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.degree.dim()
    }

    /// Entry by row/column index (`0` is `m = -j`).
    pub fn at(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    /// Entry `D_{m,m'}` with both indices given doubled.
    pub fn get(&self, two_m: i32, two_mp: i32) -> Option<Complex64> {
        let two_j = self.degree.two_j() as i32;
        let valid = |x: i32| x.abs() <= two_j && (two_j - x) % 2 == 0;
        if !valid(two_m) || !valid(two_mp) {
            return None;
        }
        let r = ((two_j + two_m) / 2) as usize;
        let c = ((two_j + two_mp) / 2) as usize;
        Some(self.at(r, c))
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.dim()).map(|r| self.at(r, col)).collect()
    }

    pub fn mul(&self, other: &WignerD) -> WignerD {
        let n = self.dim();
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                for j in 0..n {
                    entries[i * n + j] += a * other.at(k, j);
                }
            }
        }
        WignerD {
            degree: self.degree,
            entries,
        }
    }

    /// `max |(D D†)_{ik} - δ_{ik}|`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for k in 0..n {
                let s: Complex64 = (0..n).map(|j| self.at(i, j) * self.at(k, j).conj()).sum();
                let target = if i == k { 1.0 } else { 0.0 };
                worst = worst.max((s - target).norm());
            }
        }
        worst
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j) * v[j]).sum())
            .collect()
    }
}

fn check_index(j: Degree, two_m: i32) -> Result<()> {
    let two_j = j.two_j() as i32;
    if two_m.abs() > two_j || (two_j - two_m) % 2 != 0 {
        return Err(Error::InvalidIndex(format!(
            "m = {two_m}/2 is not a sublevel of j = {j}"
        )));
    }
    Ok(())
}

/// Little-d element `d^j_{m,m'}(θ)`; `m` and `m'` are given doubled.
pub fn wigner_d_element(j: Degree, two_m: i32, two_mp: i32, theta: f64) -> Result<f64> {
    check_index(j, two_m)?;
    check_index(j, two_mp)?;
    let lnf = ln_factorial_table(j.two_j() + 1);
    Ok(little_d(&lnf, j.two_j(), two_m, two_mp, theta))
}

fn little_d(lnf: &[f64], two_j: u32, two_m: i32, two_mp: i32, theta: f64) -> f64 {
    if theta == 0.0 {
        return if two_m == two_mp { 1.0 } else { 0.0 };
    }
    // Jacobi form, written for ⟨m'|exp(-iθJ_y)|m⟩ with (m', m) = (row, column)
    let tj = two_j as i32;
    let (row, col) = (two_m, two_mp);
    let jpm = (tj + col) / 2;
    let jmm = (tj - col) / 2;
    let jpr = (tj + row) / 2;
    let jmr = (tj - row) / 2;
    let k = jpm.min(jmm).min(jpr).min(jmr);
    let diff = (row - col) / 2;
    let (a, lambda) = if k == jpm {
        (diff, diff)
    } else if k == jmm || k == jpr {
        (-diff, 0)
    } else {
        (diff, diff)
    };
    let b = tj - 2 * k - a;
    let ln_ratio = lnf[(tj - k) as usize] - lnf[(k + a) as usize] - lnf[(tj - 2 * k - a) as usize]
        - (lnf[(k + b) as usize] - lnf[b as usize] - lnf[k as usize]);
    let (s, c) = (0.5 * theta).sin_cos();
    let sign = if lambda.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    sign * (0.5 * ln_ratio).exp()
        * s.powi(a)
        * c.powi(b)
        * jacobi(k as u32, a as f64, b as f64, theta.cos())
}

/// Jacobi polynomial `P_n^{(α,β)}(x)` by the three-term recurrence.
fn jacobi(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = (alpha + 1.0) + 0.5 * (alpha + beta + 2.0) * (x - 1.0);
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + alpha + beta;
        let a1 = 2.0 * k * (k + alpha + beta) * (s - 2.0);
        let a2 = (s - 1.0) * (s * (s - 2.0) * x + alpha * alpha - beta * beta);
        let a3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s;
        let next = (a2 * cur - a3 * prev) / a1;
        prev = cur;
        cur = next;
    }
    cur
}

/// Full little-d matrix at angle `θ`, row-major ascending.
pub fn little_d_matrix(j: Degree, theta: f64) -> Vec<f64> {
    let two_j = j.two_j();
    let lnf = ln_factorial_table(two_j + 1);
    let n = j.dim();
    let mut out = Vec::with_capacity(n * n);
    for r in 0..n {
        let two_m = 2 * r as i32 - two_j as i32;
        for c in 0..n {
            let two_mp = 2 * c as i32 - two_j as i32;
            out.push(little_d(&lnf, two_j, two_m, two_mp, theta));
        }
    }
    out
}

/// `D^j(α, β, γ)` for a z-y-z rotation.
pub fn wigner_big_d(j: Degree, r: &EulerRotation) -> WignerD {
    let n = j.dim();
    let two_j = j.two_j() as f64;
    let small = little_d_matrix(j, r.beta);
    let mut entries = Vec::with_capacity(n * n);
    for row in 0..n {
        let m = row as f64 - 0.5 * two_j;
        for col in 0..n {
            let mp = col as f64 - 0.5 * two_j;
            let phase = -(m * r.alpha + mp * r.gamma);
            entries.push(Complex64::from_polar(small[row * n + col], phase));
        }
    }
    WignerD { degree: j, entries }
}

/// `ψ'_m = Σ_{m'} D_{m,m'}(R) ψ_{m'}`.
pub fn rotate_state(s: &SpinState, r: &EulerRotation) -> SpinState {
    let d = wigner_big_d(s.degree(), r);
    let coeffs = d.apply(s.coeffs());
    // length matches the degree by construction
    SpinState::new(s.degree(), coeffs).expect("rotation preserves dimension")
}
