//! Seeded random states and the property suite behind `sylvester verify`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde_json::{Map, Value};

use crate::degree::Degree;
use crate::error::Result;
use crate::harmonics::{SphereGrid, SpinState};
use crate::io::number;
use crate::majorana::{
    find_roots, majorana_factors, multiset_distance, pair_antipodal, verify_factorization,
    MajoranaConstellation, MajoranaPolynomial,
};
use crate::multipole::{extract_multipoles, kernel_ratio, reconstruct, MultipoleSet};
use crate::sphere::{EulerRotation, StereoPoint};
use crate::wigner::rotate_state;

/// Largest degree the suite accepts.
pub const MAX_VERIFY_DEGREE: u32 = 32;

pub const ROTATION_TOL: f64 = 1e-7;
pub const PAIRING_TOL: f64 = 1e-8;
pub const PERTURBATION: f64 = 1e-3;
pub const ROUNDTRIP_TOL: f64 = 1e-8;
pub const FACTORIZATION_TOL: f64 = 1e-8;
pub const KERNEL_RATIO_TOL: f64 = 1e-8;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

/// Normalized state with independent complex normal coefficients.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, j: Degree) -> SpinState {
    let coeffs = (0..j.dim())
        .map(|_| Complex64::new(normal(rng), normal(rng)))
        .collect();
    SpinState::new(j, coeffs).expect("length matches").normalized()
}

/// Normalized real state: `a_m` normal for `m > 0`, `a_{-m} = (-1)^m a_m*`, `a_0` real.
pub fn random_real_state<R: Rng + ?Sized>(rng: &mut R, j: u32) -> SpinState {
    let deg = Degree::integer(j);
    let mut s = SpinState::zeros(deg);
    s.set_component(0, Complex64::new(normal(rng), 0.0)).expect("m = 0 exists");
    for m in 1..=j as i32 {
        let a = Complex64::new(normal(rng), normal(rng));
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        s.set_component(2 * m, a).expect("valid m");
        s.set_component(-2 * m, a.conj() * sign).expect("valid m");
    }
    s.normalized()
}

/// Rotation drawn uniformly from SO(3).
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> EulerRotation {
    let alpha = rng.random::<f64>() * 2.0 * PI;
    let beta = (2.0 * rng.random::<f64>() - 1.0).acos();
    let gamma = rng.random::<f64>() * 2.0 * PI;
    EulerRotation::new(alpha, beta, gamma)
}

/// Point on the Riemann sphere drawn uniformly by area.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R) -> StereoPoint {
    let theta = (2.0 * rng.random::<f64>() - 1.0).acos();
    StereoPoint::from_angles(theta, rng.random::<f64>() * 2.0 * PI)
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub degree: Degree,
    pub trials: usize,
    pub seed: u64,
    /// Factors used to build Majorana polynomials; `None` for the correct ones.
    pub factors: Option<Vec<f64>>,
}

impl VerifyConfig {
    pub fn new(degree: Degree, trials: usize, seed: u64) -> Self {
        VerifyConfig {
            degree,
            trials,
            seed,
            factors: None,
        }
    }

    /// Same suite with one Majorana factor negated: the middle one for
    /// integer `j`, the one next to the top otherwise.
    pub fn with_corrupted_factor(mut self) -> Self {
        let mut mu = majorana_factors(self.degree);
        let k = if self.degree.is_integer() {
            mu.len() / 2
        } else {
            mu.len().saturating_sub(2)
        };
        mu[k] = -mu[k];
        self.factors = Some(mu);
        self
    }
}

/// Outcome of one property over all trials.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub name: &'static str,
    pub tolerance: f64,
    pub checked: usize,
    pub failures: usize,
    pub worst: f64,
}

impl PropertyReport {
    fn new(name: &'static str, tolerance: f64) -> Self {
        PropertyReport {
            name,
            tolerance,
            checked: 0,
            failures: 0,
            worst: 0.0,
        }
    }

    /// Records a residual that must stay below the tolerance.
    fn record(&mut self, residual: f64) {
        self.checked += 1;
        if residual.is_nan() || residual >= self.tolerance {
            self.failures += 1;
        }
        if residual.is_nan() || residual > self.worst {
            self.worst = residual;
        }
    }

    fn record_failure(&mut self) {
        self.checked += 1;
        self.failures += 1;
        self.worst = f64::INFINITY;
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub degree: Degree,
    pub trials: usize,
    pub seed: u64,
    pub properties: Vec<PropertyReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyReport::passed)
    }

    pub fn to_json(&self) -> Value {
        let props = self
            .properties
            .iter()
            .map(|p| {
                let mut m = Map::new();
                m.insert("name".into(), Value::from(p.name));
                m.insert("checked".into(), Value::from(p.checked));
                m.insert("failures".into(), Value::from(p.failures));
                m.insert("worst".into(), number(p.worst));
                m.insert("tolerance".into(), number(p.tolerance));
                m.insert("passed".into(), Value::from(p.passed()));
                Value::Object(m)
            })
            .collect();
        let mut m = Map::new();
        m.insert("degree".into(), Value::from(self.degree.to_string()));
        m.insert("trials".into(), Value::from(self.trials));
        m.insert("seed".into(), Value::from(self.seed));
        m.insert("properties".into(), Value::Array(props));
        m.insert("passed".into(), Value::from(self.passed()));
        Value::Object(m)
    }
}

fn constellation(s: &SpinState, factors: &Option<Vec<f64>>) -> Result<Vec<StereoPoint>> {
    let p = match factors {
        Some(mu) => MajoranaPolynomial::from_state_with_factors(s, mu),
        None => MajoranaPolynomial::from_state(s),
    };
    Ok(find_roots(&p)?.roots().to_vec())
}

/// Runs every property that applies to the configured degree.
pub fn run_suite(cfg: &VerifyConfig) -> VerifyReport {
    let j = cfg.degree;
    let mut rng = rng_from_seed(cfg.seed);
    let mut rotation = PropertyReport::new("rotation_equivariance", ROTATION_TOL);
    let mut factorization = PropertyReport::new("factorization", FACTORIZATION_TOL);
    let mut real_pairs = PropertyReport::new("real_states_pair", PAIRING_TOL);
    let mut perturbed = PropertyReport::new("perturbed_states_fail_pairing", 0.5);
    let mut roundtrip = PropertyReport::new("multipole_roundtrip", ROUNDTRIP_TOL);
    let mut kernel = PropertyReport::new("kernel_ratio", KERNEL_RATIO_TOL);
    let integer = j.integer_value().ok();

    for _ in 0..cfg.trials {
        let s = random_state(&mut rng, j);
        let r = random_rotation(&mut rng);
        match (constellation(&s, &cfg.factors), constellation(&rotate_state(&s, &r), &cfg.factors)) {
            (Ok(a), Ok(b)) => {
                let moved: Vec<StereoPoint> = a.iter().map(|p| r.rotate_point(p)).collect();
                rotation.record(multiset_distance(&moved, &b));
            }
            _ => rotation.record_failure(),
        }

        let probes: Vec<StereoPoint> = (0..4).map(|_| random_point(&mut rng)).collect();
        match find_roots(&MajoranaPolynomial::from_state(&s)) {
            Ok(c) => factorization.record(verify_factorization(&s, &c, &probes)),
            Err(_) => factorization.record_failure(),
        }

        let Some(l) = integer else { continue };
        let real = random_real_state(&mut rng, l);
        if l > 0 {
            let pairing = constellation(&real, &cfg.factors).and_then(|roots| {
                let c = MajoranaConstellation::new(j, roots, Complex64::new(1.0, 0.0))?;
                pair_antipodal(&c, PAIRING_TOL)
            });
            match pairing {
                Ok(p) => real_pairs.record(p.worst_residual),
                Err(_) => real_pairs.record_failure(),
            }

            // an imaginary kick breaks the reality condition for every m, including m = 0
            let mut bad = real.clone();
            let k = rng.random_range(0..bad.coeffs().len());
            let two_m = 2 * k as i32 - j.two_j() as i32;
            let v = bad.coeffs()[k] + Complex64::new(0.0, PERTURBATION);
            bad.set_component(two_m, v).expect("valid index");
            let fails = constellation(&bad, &cfg.factors)
                .and_then(|roots| {
                    let c = MajoranaConstellation::new(j, roots, Complex64::new(1.0, 0.0))?;
                    pair_antipodal(&c, PAIRING_TOL)
                })
                .is_err();
            perturbed.record(if fails { 0.0 } else { 1.0 });
        }

        let grid = SphereGrid::auto(l);
        match extract_multipoles_with(&real, &cfg.factors)
            .and_then(|mp| reconstruct(&mp, &grid))
        {
            Ok(back) => roundtrip.record(back.relative_distance(&real)),
            Err(_) => roundtrip.record_failure(),
        }

        // ζ = 0 on the equator is where |u·ν| peaks
        let reference = kernel_ratio(&StereoPoint::ZERO, PI / 2.0, 0.0, l);
        let zeta = random_point(&mut rng);
        let u = random_point(&mut rng);
        let (t, p) = u.angles();
        if let (Some(a), Some(b)) = (reference, kernel_ratio(&zeta, t, p, l)) {
            kernel.record((a - b).norm() / a.norm());
        }
    }

    let mut properties = vec![rotation, factorization];
    if let Some(l) = integer {
        if l > 0 {
            properties.push(real_pairs);
            properties.push(perturbed);
        }
        properties.push(roundtrip);
        properties.push(kernel);
    }
    VerifyReport {
        degree: j,
        trials: cfg.trials,
        seed: cfg.seed,
        properties,
    }
}

/// Multipole extraction; with replaced factors the reconstruction uses the
/// directions of the corrupted polynomial.
fn extract_multipoles_with(
    s: &SpinState,
    factors: &Option<Vec<f64>>,
) -> Result<MultipoleSet> {
    match factors {
        None => extract_multipoles(s, PAIRING_TOL),
        Some(mu) => {
            let p = MajoranaPolynomial::from_state_with_factors(s, mu);
            extract_multipoles(&p.to_state(), PAIRING_TOL)
        }
    }
}
