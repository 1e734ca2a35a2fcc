//! Roots of complex polynomials from the eigenvalues of the balanced companion matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

const NEWTON_STEPS: usize = 3;
const SCHUR_ITERATIONS: usize = 2000;
const ABERTH_ITERATIONS: usize = 500;

/// Roots closer than this (chordal) are treated as one cluster: they are left
/// unpolished, since Newton steps inside a multiple root's noise disk wander.
pub(crate) const CLUSTER_RADIUS: f64 = 1e-3;

/// All roots of `Σ c_k z^k`. Requires a nonzero leading and constant coefficient.
///
/// Polynomials in `z^g` are solved in `w = z^g` first, and the `g`-th roots of
/// each `w` are spread evenly around the circle.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    if coeffs[n].norm() == 0.0 || coeffs[0].norm() == 0.0 {
        return Err(Error::InvalidInput(
            "root finder needs nonzero leading and constant coefficients".into(),
        ));
    }
    let g = (1..=n)
        .filter(|&k| coeffs[k].norm() != 0.0)
        .fold(0, gcd);
    if g > 1 {
        let reduced: Vec<Complex64> = coeffs.iter().step_by(g).copied().collect();
        let mut out = Vec::with_capacity(n);
        for w in polynomial_roots(&reduced)? {
            let base = w.powf(1.0 / g as f64);
            for k in 0..g {
                let z = base * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / g as f64);
                out.push(z);
            }
        }
        return Ok(polish_isolated(coeffs, out));
    }
    let raw = match companion_eigenvalues(coeffs) {
        Some(r) => r,
        None => {
            log::debug!("companion Schur iteration stalled; using Aberth iteration");
            aberth(coeffs)
        }
    };
    Ok(polish_isolated(coeffs, raw))
}

fn chordal(a: Complex64, b: Complex64) -> f64 {
    2.0 * (a - b).norm() / ((1.0 + a.norm_sqr()).sqrt() * (1.0 + b.norm_sqr()).sqrt())
}

fn polish_isolated(coeffs: &[Complex64], roots: Vec<Complex64>) -> Vec<Complex64> {
    (0..roots.len())
        .map(|i| {
            let crowded = roots
                .iter()
                .enumerate()
                .any(|(k, &r)| k != i && chordal(r, roots[i]) < CLUSTER_RADIUS);
            if crowded {
                roots[i]
            } else {
                polish(coeffs, roots[i])
            }
        })
        .collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn companion_eigenvalues(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    if n == 1 {
        return Some(vec![-coeffs[0] / coeffs[1]]);
    }
    let mut companion = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        companion[(i, n - 1)] = -coeffs[i] / lead;
    }
    balance(&mut companion);
    let schur = nalgebra::linalg::Schur::try_new(companion, f64::EPSILON, SCHUR_ITERATIONS)?;
    let (_, t) = schur.unpack();
    Some((0..n).map(|i| t[(i, i)]).collect())
}

/// Aberth–Ehrlich simultaneous iteration from points on a circle.
fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].norm();
    // geometric mean of the root moduli as the starting radius
    let radius = (coeffs[0].norm() / lead).powf(1.0 / n as f64);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, (2.0 * std::f64::consts::PI * k as f64 + 0.4) / n as f64))
        .collect();
    for _ in 0..ABERTH_ITERATIONS {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&k| k != i)
                .map(|k| (z[i] - z[k]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Parlett–Reinsch balancing with radix 2 (exact scalings).
fn balance(a: &mut DMatrix<Complex64>) {
    let n = a.nrows();
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].norm();
                    r += a[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / 2.0;
            while c < g {
                f *= 2.0;
                c *= 4.0;
            }
            g = r * 2.0;
            while c >= g {
                f /= 2.0;
                c /= 4.0;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= inv;
                    a[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// Horner evaluation of the value and derivative.
pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Backward-error scale `Σ |c_k| |z|^k`.
pub(crate) fn magnitude_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// Newton polish in the chart where the root is bounded: `z` itself when
/// `|z| ≤ 1`, otherwise `w = 1/z` on the reversed polynomial. Steps are
/// accepted only while the relative residual decreases.
fn polish(coeffs: &[Complex64], z0: Complex64) -> Complex64 {
    if z0.norm() <= 1.0 {
        newton(coeffs, z0)
    } else {
        let reversed: Vec<Complex64> = coeffs.iter().rev().copied().collect();
        newton(&reversed, z0.inv()).inv()
    }
}

fn newton(coeffs: &[Complex64], z0: Complex64) -> Complex64 {
    let residual = |z: Complex64| {
        let (p, _) = horner(coeffs, z);
        let scale = magnitude_scale(coeffs, z);
        if scale == 0.0 {
            0.0
        } else {
            p.norm() / scale
        }
    };
    let mut z = z0;
    let mut best = residual(z);
    for _ in 0..NEWTON_STEPS {
        if best == 0.0 {
            break;
        }
        let (p, dp) = horner(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let candidate = z - p / dp;
        let r = residual(candidate);
        if !(r < best) || !candidate.re.is_finite() || !candidate.im.is_finite() {
            break;
        }
        z = candidate;
        best = r;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_roots(roots: &[Complex64], lead: Complex64) -> Vec<Complex64> {
        let mut coeffs = vec![lead];
        for r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            coeffs = next;
        }
        coeffs
    }

    fn worst_match(found: &[Complex64], expected: &[Complex64]) -> f64 {
        let mut used = vec![false; expected.len()];
        let mut worst = 0.0f64;
        for f in found {
            let (k, d) = expected
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, e)| (k, (e - f).norm() / (1.0 + e.norm())))
                .fold((usize::MAX, f64::MAX), |a, b| if b.1 < a.1 { b } else { a });
            used[k] = true;
            worst = worst.max(d);
        }
        worst
    }

    #[test]
    fn recovers_known_roots() {
        let roots: Vec<Complex64> = (0..12)
            .map(|k| Complex64::from_polar(0.2 + 0.3 * k as f64, 1.1 * k as f64))
            .collect();
        let coeffs = from_roots(&roots, Complex64::new(0.5, -2.0));
        let found = polynomial_roots(&coeffs).unwrap();
        assert_eq!(found.len(), roots.len());
        assert!(worst_match(&found, &roots) < 1e-12);
    }

    #[test]
    fn wide_dynamic_range() {
        let roots: Vec<Complex64> = [1e-4, 0.01, 1.0, 100.0, 1e4]
            .iter()
            .enumerate()
            .map(|(k, &r)| Complex64::from_polar(r, k as f64))
            .collect();
        let coeffs = from_roots(&roots, Complex64::new(1.0, 0.0));
        let found = polynomial_roots(&coeffs).unwrap();
        assert!(worst_match(&found, &roots) < 1e-12);
    }

    #[test]
    fn sparse_polynomial_gives_regular_polygon() {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let found = polynomial_roots(&[one, z, z, z, one]).unwrap();
        let expect: Vec<Complex64> = (0..4)
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::PI * (2 * k + 1) as f64 / 4.0))
            .collect();
        assert!(worst_match(&found, &expect) < 1e-15);
    }

    #[test]
    fn aberth_agrees_with_companion() {
        let roots: Vec<Complex64> = (0..9)
            .map(|k| Complex64::from_polar(0.5 + 0.2 * k as f64, 0.7 * k as f64 + 0.1))
            .collect();
        let coeffs = from_roots(&roots, Complex64::new(1.0, 1.0));
        let found: Vec<Complex64> = aberth(&coeffs).into_iter().map(|z| polish(&coeffs, z)).collect();
        assert!(worst_match(&found, &roots) < 1e-12);
    }

    #[test]
    fn rejects_degenerate_input() {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        assert!(polynomial_roots(&[z, one]).is_err());
        assert!(polynomial_roots(&[one, z]).is_err());
        assert!(polynomial_roots(&[one]).unwrap().is_empty());
    }
}
