//! Majorana polynomials and constellations.
//!
//! A spin-`j` state `ψ` is mapped to the polynomial
//!
//! ```text
//! P_ψ(ζ) = Σ_m ψ_m μ_m ζ^{j+m},   μ_m = (-1)^{j+m} √C(2j, j+m)
//! ```
//!
//! whose `2j` roots on the Riemann sphere (the constellation) determine the state
//! up to normalization and phase. Missing top-degree terms put roots at infinity.
//! The full Majorana function multiplies `P_ψ` by the nonvanishing factor
//! `exp(-ij arg ζ) / (1+|ζ|²)^j`, which never affects the roots.

mod roots;
pub mod spin1;

use num_complex::Complex64;

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::harmonics::SpinState;
use crate::special::binomial;
use crate::sphere::{chordal_distance, EulerRotation, StereoPoint, Tolerances};

pub use roots::polynomial_roots;
pub use spin1::{
    cartesian_to_spherical, nilpotent_of, spherical_to_cartesian, spin1_roots_closed_form,
    CartesianSpin1, NilpotentVector,
};

/// The factors `μ_m`, ascending in `m`.
pub fn majorana_factors(j: Degree) -> Vec<f64> {
    let n = j.two_j();
    (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(n, k).sqrt()
        })
        .collect()
}

/// Spin coherent state amplitudes `⟨-j; ζ | m⟩` for finite `ζ`, ascending in `m`.
pub fn coherent_amplitudes(j: Degree, zeta: Complex64) -> Vec<Complex64> {
    let prefactor = majorana_prefactor(j, zeta);
    let mut power = Complex64::new(1.0, 0.0);
    majorana_factors(j)
        .into_iter()
        .map(|mu| {
            let v = prefactor * mu * power;
            power *= zeta;
            v
        })
        .collect()
}

/// `exp(-ij arg ζ) / (1+|ζ|²)^j`.
pub fn majorana_prefactor(j: Degree, zeta: Complex64) -> Complex64 {
    let jf = j.as_f64();
    let arg = if zeta.norm() == 0.0 { 0.0 } else { zeta.arg() };
    Complex64::from_polar((1.0 + zeta.norm_sqr()).powf(-jf), -jf * arg)
}

/// Coefficients `c_k` of `ζ^k`, `k = 0..=2j`.
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaPolynomial {
    degree: Degree,
    coeffs: Vec<Complex64>,
}

impl MajoranaPolynomial {
    pub fn from_state(s: &SpinState) -> Self {
        Self::from_state_with_factors(s, &majorana_factors(s.degree()))
    }

    /// Polynomial built with an explicit factor table. Used to exercise the
    /// verification suite against deliberately wrong factors.
    pub fn from_state_with_factors(s: &SpinState, factors: &[f64]) -> Self {
        let coeffs = s.coeffs().iter().zip(factors).map(|(c, mu)| c * mu).collect();
        MajoranaPolynomial {
            degree: s.degree(),
            coeffs,
        }
    }

    pub fn from_coeffs(degree: Degree, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != degree.dim() {
            return Err(Error::InvalidInput(format!(
                "degree {degree} needs {} polynomial coefficients, got {}",
                degree.dim(),
                coeffs.len()
            )));
        }
        Ok(MajoranaPolynomial { degree, coeffs })
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Inverse of [`MajoranaPolynomial::from_state`].
    pub fn to_state(&self) -> SpinState {
        let coeffs = self
            .coeffs
            .iter()
            .zip(majorana_factors(self.degree))
            .map(|(c, mu)| c / mu)
            .collect();
        SpinState::new(self.degree, coeffs).expect("length preserved")
    }

    pub fn eval(&self, zeta: Complex64) -> Complex64 {
        roots::horner(&self.coeffs, zeta).0
    }

    /// The Majorana function: polynomial times the nonanalytic prefactor.
    pub fn majorana_function(&self, zeta: Complex64) -> Complex64 {
        majorana_prefactor(self.degree, zeta) * self.eval(zeta)
    }

    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

pub fn build_polynomial(s: &SpinState) -> MajoranaPolynomial {
    MajoranaPolynomial::from_state(s)
}

/// The `2j` roots of a Majorana polynomial together with its leading coefficient.
///
/// `leading` is the coefficient of the highest power actually present, so the
/// polynomial equals `leading · Π (ζ - ζ_n)` over the finite roots.
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaConstellation {
    degree: Degree,
    roots: Vec<StereoPoint>,
    leading: Complex64,
}

impl MajoranaConstellation {
    pub fn new(degree: Degree, roots: Vec<StereoPoint>, leading: Complex64) -> Result<Self> {
        if roots.len() != degree.two_j() as usize {
            return Err(Error::InvalidInput(format!(
                "degree {degree} needs {} roots, got {}",
                degree.two_j(),
                roots.len()
            )));
        }
        Ok(MajoranaConstellation {
            degree,
            roots,
            leading,
        })
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn roots(&self) -> &[StereoPoint] {
        &self.roots
    }

    pub fn leading(&self) -> Complex64 {
        self.leading
    }

    pub fn infinite_count(&self) -> usize {
        self.roots.iter().filter(|r| r.is_infinite()).count()
    }

    /// Expands `leading · Π (ζ - ζ_n)` back into polynomial coefficients.
    pub fn to_polynomial(&self) -> MajoranaPolynomial {
        let mut coeffs = vec![self.leading];
        for z in self.roots.iter().filter_map(StereoPoint::as_finite) {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * z;
            }
            coeffs = next;
        }
        coeffs.resize(self.degree.dim(), Complex64::new(0.0, 0.0));
        MajoranaPolynomial {
            degree: self.degree,
            coeffs,
        }
    }

    /// Root directions carried by a rotation.
    pub fn rotated_roots(&self, r: &EulerRotation) -> Vec<StereoPoint> {
        self.roots.iter().map(|p| r.rotate_point(p)).collect()
    }

    /// Smallest chordal distance between two distinct roots.
    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.roots.iter().enumerate() {
            for b in &self.roots[i + 1..] {
                best = best.min(chordal_distance(a, b));
            }
        }
        best
    }
}

/// Roots of the Majorana polynomial with the default tolerances.
pub fn find_roots(p: &MajoranaPolynomial) -> Result<MajoranaConstellation> {
    find_roots_with(p, &Tolerances::default())
}

pub fn find_roots_with(p: &MajoranaPolynomial, tol: &Tolerances) -> Result<MajoranaConstellation> {
    let coeffs = p.coeffs();
    let norm = p.coeff_norm();
    if norm == 0.0 {
        return Err(Error::NullState);
    }
    let top = coeffs
        .iter()
        .rposition(|c| c.norm() > tol.deficiency * norm)
        .ok_or(Error::NullState)?;
    let bottom = coeffs
        .iter()
        .position(|c| c.norm() != 0.0)
        .ok_or(Error::NullState)?;
    let two_j = p.degree().two_j() as usize;
    let mut out = Vec::with_capacity(two_j);
    out.extend(std::iter::repeat_n(StereoPoint::ZERO, bottom));
    if top > bottom {
        let core = &coeffs[bottom..=top];
        let found = merge_multiple_roots(core, polynomial_roots(core)?);
        let found: Vec<StereoPoint> = found.into_iter().map(StereoPoint::Finite).collect();
        warn_on_clusters(&found, tol.cluster_warning);
        out.extend(found);
    }
    out.extend(std::iter::repeat_n(StereoPoint::Infinity, two_j - top));
    MajoranaConstellation::new(p.degree(), out, coeffs[top])
}

/// A `k`-fold root comes back as `k` points spread over about `ε^{1/k}`,
/// while their centroid is accurate to about `ε`. Each tight cluster is
/// replaced by `k` copies of its centroid when the expanded product fits the
/// coefficients no worse than the raw roots did.
fn merge_multiple_roots(coeffs: &[Complex64], roots: Vec<Complex64>) -> Vec<Complex64> {
    let n = roots.len();
    if n < 2 {
        return roots;
    }
    let points: Vec<StereoPoint> = roots.iter().map(|z| StereoPoint::Finite(*z)).collect();
    // single-linkage clusters
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for k in (i + 1)..n {
            if chordal_distance(&points[i], &points[k]) < roots::CLUSTER_RADIUS {
                let (a, b) = (label[i], label[k]);
                if a != b {
                    label.iter_mut().filter(|l| **l == b).for_each(|l| *l = a);
                }
            }
        }
    }
    let leading = coeffs[coeffs.len() - 1];
    let mut current = roots;
    let mut residual = expansion_residual(coeffs, leading, &current);
    let mut groups: Vec<usize> = label.clone();
    groups.sort_unstable();
    groups.dedup();
    for g in groups {
        let members: Vec<usize> = (0..n).filter(|&i| label[i] == g).collect();
        if members.len() < 2 {
            continue;
        }
        let centroid = chart_centroid(members.iter().map(|&i| current[i]));
        let mut trial = current.clone();
        for &i in &members {
            trial[i] = centroid;
        }
        let r = expansion_residual(coeffs, leading, &trial);
        if r <= residual.max(f64::EPSILON) * 4.0 {
            current = trial;
            residual = r;
        }
    }
    current
}

/// Mean in the bounded chart: `z` near the origin, `1/z` beyond the unit circle.
fn chart_centroid(points: impl Iterator<Item = Complex64>) -> Complex64 {
    let pts: Vec<Complex64> = points.collect();
    let k = pts.len() as f64;
    let mean: Complex64 = pts.iter().sum::<Complex64>() / k;
    if mean.norm() <= 1.0 {
        mean
    } else {
        let inv: Complex64 = pts.iter().map(|z| z.inv()).sum::<Complex64>() / k;
        inv.inv()
    }
}

/// `‖coeffs - leading·Π(ζ - r)‖ / ‖coeffs‖`.
fn expansion_residual(coeffs: &[Complex64], leading: Complex64, roots: &[Complex64]) -> f64 {
    let mut poly = vec![leading];
    for z in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * z;
        }
        poly = next;
    }
    let diff: f64 = poly.iter().zip(coeffs).map(|(a, b)| (a - b).norm_sqr()).sum();
    let norm: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    (diff / norm).sqrt()
}

fn warn_on_clusters(roots: &[StereoPoint], threshold: f64) {
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            let d = chordal_distance(a, b);
            if d < threshold {
                log::warn!(
                    "Majorana roots {a:?} and {b:?} are {d:.2e} apart; root accuracy degrades in clusters"
                );
                return;
            }
        }
    }
}

/// Constellation of a state.
pub fn constellation_of(s: &SpinState) -> Result<MajoranaConstellation> {
    find_roots(&MajoranaPolynomial::from_state(s))
}

/// Greedy matching of two point multisets under the chordal metric; returns the
/// worst matched distance. Multisets of different size are infinitely far apart.
pub fn multiset_distance(a: &[StereoPoint], b: &[StereoPoint]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut costs = Vec::with_capacity(a.len() * b.len());
    for (i, p) in a.iter().enumerate() {
        for (k, q) in b.iter().enumerate() {
            costs.push((chordal_distance(p, q), i, k));
        }
    }
    costs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut worst = 0.0f64;
    let mut matched = 0;
    for (d, i, k) in costs {
        if used_a[i] || used_b[k] {
            continue;
        }
        used_a[i] = true;
        used_b[k] = true;
        worst = worst.max(d);
        matched += 1;
        if matched == a.len() {
            break;
        }
    }
    worst
}

/// Antipodal pairs of a constellation and the worst pairing residual.
#[derive(Debug, Clone, PartialEq)]
pub struct AntipodalPairing {
    pub pairs: Vec<(StereoPoint, StereoPoint)>,
    pub worst_residual: f64,
}

/// Matches every root with the root nearest its antipode, greedily by
/// `chordal_distance(a, antipode(b))`. Fails when any matched pair misses by
/// `tol` or more, which means the state violates the reality condition.
pub fn pair_antipodal(c: &MajoranaConstellation, tol: f64) -> Result<AntipodalPairing> {
    let roots = c.roots();
    if roots.len() % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "cannot pair an odd number ({}) of roots",
            roots.len()
        )));
    }
    let antipodes: Vec<StereoPoint> = roots.iter().map(StereoPoint::antipode).collect();
    let mut costs = Vec::new();
    for i in 0..roots.len() {
        for k in (i + 1)..roots.len() {
            costs.push((chordal_distance(&roots[i], &antipodes[k]), i, k));
        }
    }
    costs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut used = vec![false; roots.len()];
    let mut pairs = Vec::with_capacity(roots.len() / 2);
    let mut worst = 0.0f64;
    for (d, i, k) in costs {
        if used[i] || used[k] {
            continue;
        }
        used[i] = true;
        used[k] = true;
        worst = worst.max(d);
        pairs.push((roots[i], roots[k]));
        if pairs.len() == roots.len() / 2 {
            break;
        }
    }
    if worst >= tol {
        return Err(Error::PairingFailure { worst });
    }
    Ok(AntipodalPairing {
        pairs,
        worst_residual: worst,
    })
}

/// Largest deviation between the coefficient form and the root-product form of
/// the Majorana polynomial at the probe points, relative to `Σ |c_k| |ζ|^k`.
/// Infinite probes are skipped.
pub fn verify_factorization(
    s: &SpinState,
    c: &MajoranaConstellation,
    probes: &[StereoPoint],
) -> f64 {
    let p = MajoranaPolynomial::from_state(s);
    let finite: Vec<Complex64> = c.roots().iter().filter_map(StereoPoint::as_finite).collect();
    let mut worst = 0.0f64;
    for z in probes.iter().filter_map(StereoPoint::as_finite) {
        let direct = p.eval(z);
        let product = finite
            .iter()
            .fold(c.leading(), |acc, root| acc * (z - root));
        let scale = roots::magnitude_scale(p.coeffs(), z);
        if scale > 0.0 {
            worst = worst.max((direct - product).norm() / scale);
        }
    }
    worst
}

/// Time reversal of a state: `ψ'_m = (-1)^{j-m} ψ*_{-m}`.
pub fn time_reverse_state(s: &SpinState) -> SpinState {
    let n = s.coeffs().len();
    let two_j = s.degree().two_j() as usize;
    let coeffs = (0..n)
        .map(|k| {
            // k = j+m, so j-m = 2j-k and ψ_{-m} sits at index 2j-k
            let sign = if (two_j - k) % 2 == 0 { 1.0 } else { -1.0 };
            s.coeffs()[two_j - k].conj() * sign
        })
        .collect();
    SpinState::new(s.degree(), coeffs).expect("length preserved")
}

/// Time reversal on a constellation: every root goes to its antipode and the
/// leading coefficient is that of the time-reversed state's polynomial.
pub fn time_reverse(c: &MajoranaConstellation) -> MajoranaConstellation {
    let zero_roots = c
        .roots()
        .iter()
        .filter(|r| matches!(r, StereoPoint::Finite(z) if z.norm() == 0.0))
        .count();
    // lowest nonzero coefficient of the original polynomial
    let lowest = c
        .roots()
        .iter()
        .filter_map(StereoPoint::as_finite)
        .filter(|z| z.norm() != 0.0)
        .fold(c.leading(), |acc, z| acc * (-z));
    // c'_k = (-1)^k c*_{2j-k}; the new top index is 2j - zero_roots
    let top = c.degree().two_j() as usize - zero_roots;
    let sign = if top % 2 == 0 { 1.0 } else { -1.0 };
    MajoranaConstellation {
        degree: c.degree(),
        roots: c.roots().iter().map(StereoPoint::antipode).collect(),
        leading: lowest.conj() * sign,
    }
}
