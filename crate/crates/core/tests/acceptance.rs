//! The ten acceptance criteria, each with its tolerance and time budget.
//!
//! Runs without the libtest harness so every criterion prints exactly one
//! `PASS`/`FAIL` line under `cargo test`. Exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use sylvester::degree::Degree;
use sylvester::harmonics::{eval_function, eval_yjm, project_onto_degree, SphereGrid, SpinState};
use sylvester::majorana::spin1::{
    cartesian_to_spherical, nilpotent_of, spherical_to_cartesian, spin1_roots_closed_form,
};
use sylvester::majorana::{
    constellation_of, multiset_distance, pair_antipodal, verify_factorization, MajoranaPolynomial,
};
use sylvester::multipole::{
    extend_via_kernel, extract_multipoles, fold_via_kernel, kernel_ratio, reconstruct, MultipoleSet,
};
use sylvester::polyderiv::{laplacian, multipole_derivative, restrict_to_sphere, RationalVector};
use sylvester::sphere::{EulerRotation, StereoPoint, UnitVector};
use sylvester::verify::{random_point, random_real_state, random_rotation, random_state, rng_from_seed};
use sylvester::wigner::{rotate_state, wigner_big_d};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `Re Y_j^m` for `m ≥ 0` as a coefficient vector.
fn real_harmonic(j: u32, m: u32) -> SpinState {
    let mut s = SpinState::zeros(Degree::integer(j));
    let m = m as i32;
    if m == 0 {
        s.set_component(0, c(1.0, 0.0)).unwrap();
    } else {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        s.set_component(2 * m, c(0.5, 0.0)).unwrap();
        s.set_component(-2 * m, c(0.5 * sign, 0.0)).unwrap();
    }
    s
}

/// Angle between the lines spanned by two unit vectors.
fn line_angle(a: &UnitVector, b: &UnitVector) -> f64 {
    a.angle_to(b).min(a.angle_to(&-*b))
}

fn criterion_1() -> Outcome {
    let mut worst = 0.0f64;
    for j in 1..=8 {
        let mp = match extract_multipoles(&real_harmonic(j, 0), 1e-8) {
            Ok(mp) => mp,
            Err(e) => return outcome(false, format!("j={j}: {e}")),
        };
        if mp.directions().len() != j as usize {
            return outcome(false, format!("j={j}: {} directions", mp.directions().len()));
        }
        for d in mp.directions() {
            worst = worst.max(line_angle(d, &UnitVector::PLUS_Z));
        }
    }
    outcome(worst < 1e-8, format!("worst angle to z axis {worst:.3e} rad"))
}

fn criterion_2() -> Outcome {
    let mut worst_gap = 0.0f64;
    let mut worst_axis = 0.0f64;
    for (j, m) in [(2u32, 2u32), (3, 2), (4, 3), (5, 2)] {
        let mp = match extract_multipoles(&real_harmonic(j, m), 1e-8) {
            Ok(mp) => mp,
            Err(e) => return outcome(false, format!("(j,m)=({j},{m}): {e}")),
        };
        let (equatorial, polar): (Vec<&UnitVector>, Vec<&UnitVector>) =
            mp.directions().iter().partition(|d| d.z().abs() < 0.5);
        if equatorial.len() != m as usize || polar.len() != (j - m) as usize {
            return outcome(
                false,
                format!("(j,m)=({j},{m}): {} equatorial, {} polar", equatorial.len(), polar.len()),
            );
        }
        for d in &polar {
            worst_axis = worst_axis.max(line_angle(d, &UnitVector::PLUS_Z));
        }
        for d in &equatorial {
            worst_axis = worst_axis.max(d.z().abs().asin());
        }
        let mut azimuths: Vec<f64> = equatorial
            .iter()
            .flat_map(|d| {
                let a = d.y().atan2(d.x()).rem_euclid(2.0 * PI);
                [a, (a + PI).rem_euclid(2.0 * PI)]
            })
            .collect();
        azimuths.sort_by(f64::total_cmp);
        let n = azimuths.len();
        let gaps: Vec<f64> = (0..n)
            .map(|i| (azimuths[(i + 1) % n] - azimuths[i]).rem_euclid(2.0 * PI))
            .collect();
        let expected = PI / m as f64;
        for g in gaps {
            worst_gap = worst_gap.max((g - expected).abs());
        }
    }
    outcome(
        worst_gap < 1e-7 && worst_axis < 1e-7,
        format!("worst gap error {worst_gap:.3e} rad, worst axis/plane error {worst_axis:.3e} rad"),
    )
}

fn criterion_3() -> Outcome {
    let mut rng = rng_from_seed(3);
    let mut worst = 0.0f64;
    for j in 1..=12 {
        let grid = SphereGrid::auto(j);
        for trial in 0..50 {
            let s = random_real_state(&mut rng, j);
            let back = extract_multipoles(&s, 1e-8).and_then(|mp| reconstruct(&mp, &grid));
            match back {
                Ok(b) => worst = worst.max(b.relative_distance(&s)),
                Err(e) => return outcome(false, format!("j={j} trial {trial}: {e}")),
            }
        }
    }
    outcome(worst < 1e-8, format!("600 states, worst relative error {worst:.3e}"))
}

fn criterion_4() -> Outcome {
    let mut rng = rng_from_seed(4);
    let mut worst = 0.0f64;
    for trial in 0..100u32 {
        let deg = Degree::from_doubled(1 + trial % 30);
        let s = random_state(&mut rng, deg);
        let r = random_rotation(&mut rng);
        let before = match constellation_of(&s) {
            Ok(c) => c,
            Err(e) => return outcome(false, format!("trial {trial}: {e}")),
        };
        let after = match constellation_of(&rotate_state(&s, &r)) {
            Ok(c) => c,
            Err(e) => return outcome(false, format!("trial {trial}: {e}")),
        };
        worst = worst.max(multiset_distance(after.roots(), &before.rotated_roots(&r)));
    }
    outcome(worst < 1e-7, format!("100 pairs j<=15, worst chordal {worst:.3e}"))
}

fn criterion_5() -> Outcome {
    let mut rng = rng_from_seed(5);
    let mut worst_real = 0.0f64;
    let mut best_perturbed = f64::INFINITY;
    for trial in 0..200u32 {
        let j = 1 + trial % 10;
        let s = random_real_state(&mut rng, j);
        match constellation_of(&s).and_then(|c| pair_antipodal(&c, 1e-8)) {
            Ok(p) => worst_real = worst_real.max(p.worst_residual),
            Err(e) => return outcome(false, format!("real trial {trial}: {e}")),
        }
        let mut kicked = s.clone();
        let two_m = 2 * rng.random_range(-(j as i32)..=j as i32);
        let old = kicked.component(two_m).unwrap();
        kicked.set_component(two_m, old + c(0.0, 1e-3)).unwrap();
        let c = match constellation_of(&kicked) {
            Ok(c) => c,
            Err(e) => return outcome(false, format!("perturbed trial {trial}: {e}")),
        };
        match pair_antipodal(&c, 1e-8) {
            Ok(p) => {
                return outcome(
                    false,
                    format!("perturbed trial {trial} still paired (residual {:.3e})", p.worst_residual),
                )
            }
            Err(sylvester::error::Error::PairingFailure { worst }) => {
                best_perturbed = best_perturbed.min(worst)
            }
            Err(e) => return outcome(false, format!("perturbed trial {trial}: {e}")),
        }
    }
    outcome(
        true,
        format!("real worst {worst_real:.3e}, perturbed smallest {best_perturbed:.3e}"),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = rng_from_seed(6);
    let mut worst = 0.0f64;
    for trial in 0..100u32 {
        let deg = Degree::from_doubled(1 + trial % 20);
        let s = random_state(&mut rng, deg);
        let c = match constellation_of(&s) {
            Ok(c) => c,
            Err(e) => return outcome(false, format!("trial {trial}: {e}")),
        };
        let probes: Vec<StereoPoint> = (0..10).map(|_| random_point(&mut rng)).collect();
        worst = worst.max(verify_factorization(&s, &c, &probes));
    }
    outcome(worst < 1e-8, format!("100 states j<=10, worst residual {worst:.3e}"))
}

fn max_relative(got: &[Complex64], want: &[Complex64]) -> f64 {
    let scale = want.iter().map(|w| w.norm()).fold(0.0, f64::max);
    let err = got
        .iter()
        .zip(want)
        .map(|(g, w)| (g - w).norm())
        .fold(0.0, f64::max);
    if scale > 0.0 {
        err / scale
    } else {
        err
    }
}

fn criterion_7() -> Outcome {
    let mut rng = rng_from_seed(7);
    let mut worst_extend = 0.0f64;
    let mut worst_fold = 0.0f64;
    for j in 0..=6 {
        let grid = SphereGrid::auto(j);
        let s = random_state(&mut rng, Degree::integer(j));
        let p = MajoranaPolynomial::from_state(&s);
        let zetas: Vec<StereoPoint> = (0..10).map(|_| random_point(&mut rng)).collect();
        let direct: Vec<Complex64> = zetas
            .iter()
            .map(|z| p.majorana_function(z.as_finite().unwrap()))
            .collect();
        match extend_via_kernel(&s, &zetas, &grid) {
            Ok(v) => worst_extend = worst_extend.max(max_relative(&v, &direct)),
            Err(e) => return outcome(false, format!("extend j={j}: {e}")),
        }
        let angles: Vec<(f64, f64)> = (0..10)
            .map(|_| random_point(&mut rng).angles())
            .collect();
        let want: Vec<Complex64> = angles
            .iter()
            .map(|&(t, ph)| eval_function(&s, t, ph).unwrap())
            .collect();
        match fold_via_kernel(&p, &angles, &grid) {
            Ok(v) => worst_fold = worst_fold.max(max_relative(&v, &want)),
            Err(e) => return outcome(false, format!("fold j={j}: {e}")),
        }
    }
    let mut worst_ratio = 0.0f64;
    for j in 0..=8 {
        let mut ratios = Vec::new();
        while ratios.len() < 100 {
            let z = random_point(&mut rng);
            let (t, ph) = random_point(&mut rng).angles();
            if let Some(r) = kernel_ratio(&z, t, ph, j) {
                ratios.push(r);
            }
        }
        let r0 = ratios[0];
        for r in &ratios {
            worst_ratio = worst_ratio.max((r - r0).norm() / r0.norm());
        }
    }
    outcome(
        worst_extend < 1e-6 && worst_fold < 1e-6 && worst_ratio < 1e-8,
        format!("extend {worst_extend:.3e}, fold {worst_fold:.3e}, ratio spread {worst_ratio:.3e}"),
    )
}

fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(
        BigInt::from(rng.random_range(-9i64..=9)),
        BigInt::from(rng.random_range(1i64..=7)),
    )
}

fn double_factorial(n: i64) -> f64 {
    (1..=n).rev().step_by(2).map(|k| k as f64).product()
}

fn criterion_8() -> Outcome {
    let mut rng = rng_from_seed(8);
    let mut worst_dir = 0.0f64;
    let mut worst_const = 0.0f64;
    let mut worst_fit = 0.0f64;
    for trial in 0..20u32 {
        let j = 1 + trial % 5;
        let exact: Vec<RationalVector> = (0..j)
            .map(|_| RationalVector::unit_from_stereo(small_rational(&mut rng), small_rational(&mut rng)))
            .collect();
        let f = multipole_derivative(&exact);
        if !laplacian(&f).is_zero() {
            return outcome(false, format!("trial {trial}: laplacian is not zero"));
        }
        let grid = SphereGrid::auto(j);
        let s = match project_onto_degree(&restrict_to_sphere(&f, &grid), Degree::integer(j)) {
            Ok(s) => s,
            Err(e) => return outcome(false, format!("trial {trial}: {e}")),
        };
        let dirs: Vec<UnitVector> = exact.iter().map(|v| v.to_unit_vector().unwrap()).collect();
        let mp = match extract_multipoles(&s, 1e-8) {
            Ok(mp) => mp,
            Err(e) => return outcome(false, format!("trial {trial}: {e}")),
        };
        let as_points = |v: &[UnitVector]| -> Vec<StereoPoint> {
            v.iter()
                .flat_map(|u| {
                    let p = StereoPoint::from_unit_vector(u);
                    [p, p.antipode()]
                })
                .collect()
        };
        worst_dir = worst_dir.max(multiset_distance(&as_points(mp.directions()), &as_points(&dirs)));

        let product = reconstruct(&MultipoleSet::new(j, dirs, 1.0).unwrap(), &grid).unwrap();
        let num: Complex64 = product
            .coeffs()
            .iter()
            .zip(s.coeffs())
            .map(|(p, v)| p.conj() * v)
            .sum();
        let ratio = num.re / product.norm().powi(2);
        worst_fit = worst_fit.max(s.relative_distance(&product.scaled(c(ratio, 0.0))));
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let expected = sign * double_factorial(2 * j as i64 - 1);
        worst_const = worst_const.max((ratio - expected).abs() / expected.abs());
    }
    outcome(
        worst_dir < 1e-7 && worst_const < 1e-8 && worst_fit < 1e-8,
        format!(
            "worst chordal {worst_dir:.3e}, constant spread {worst_const:.3e}, proportionality {worst_fit:.3e}, all laplacians exactly zero"
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = rng_from_seed(9);
    let mut worst_unitary = 0.0f64;
    for two_j in 0..=40 {
        let r = random_rotation(&mut rng);
        worst_unitary = worst_unitary.max(wigner_big_d(Degree::from_doubled(two_j), &r).unitarity_residual());
    }
    let mut worst_ylm = 0.0f64;
    let mut worst_row = 0.0f64;
    for two_j in 0..=20u32 {
        let deg = Degree::from_doubled(two_j);
        let jf = deg.as_f64();
        for _ in 0..5 {
            let (theta, phi) = random_point(&mut rng).angles();
            let d = wigner_big_d(deg, &EulerRotation::new(phi, theta, 0.0));
            if deg.is_integer() {
                let j = deg.integer_value().unwrap();
                let norm = (4.0 * PI / (2 * j + 1) as f64).sqrt();
                for m in -(j as i32)..=j as i32 {
                    let y = eval_yjm(deg, m, theta, phi).unwrap();
                    let dm0 = d.get(2 * m, 0).unwrap();
                    worst_ylm = worst_ylm.max((dm0.conj() - norm * y).norm());
                }
            }
            // ⟨-j; ζ|m⟩ = (-1)^{j+m} √C(2j, j+m) cos^{j-m}(θ/2) sin^{j+m}(θ/2) e^{imφ}
            let (ch, sh) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            for k in 0..=two_j {
                let m = k as f64 - jf;
                let binom: f64 = (0..k).map(|i| (two_j - i) as f64 / (i + 1) as f64).product();
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let closed = Complex64::from_polar(
                    sign * binom.sqrt() * ch.powf(jf - m) * sh.powf(jf + m),
                    m * phi,
                );
                let row = d.get(2 * k as i32 - two_j as i32, -(two_j as i32)).unwrap().conj();
                worst_row = worst_row.max((row - closed).norm());
            }
        }
    }
    outcome(
        worst_unitary < 1e-10 && worst_ylm < 1e-10 && worst_row < 1e-10,
        format!("unitarity {worst_unitary:.3e}, D_m0 vs Y {worst_ylm:.3e}, coherent row {worst_row:.3e}"),
    )
}

fn criterion_10() -> Outcome {
    let mut rng = rng_from_seed(10);
    let one = Degree::integer(1);
    let basis: Vec<[Complex64; 3]> = (0..3)
        .map(|k| {
            let s = SpinState::basis(one, 2 * k - 2).unwrap();
            spherical_to_cartesian(&s).unwrap().to_array()
        })
        .collect();
    let mut worst_unitary = 0.0f64;
    for a in 0..3 {
        for b in 0..3 {
            let g: Complex64 = (0..3).map(|i| basis[a][i].conj() * basis[b][i]).sum();
            let want = if a == b { 1.0 } else { 0.0 };
            worst_unitary = worst_unitary.max((g - want).norm());
        }
    }
    let mut worst_roots = 0.0f64;
    let mut worst_nil = 0.0f64;
    let mut worst_axis = 0.0f64;
    for trial in 0..500 {
        let s = random_state(&mut rng, one);
        let v = spherical_to_cartesian(&s).unwrap();
        worst_unitary = worst_unitary.max((v.norm_sqr().sqrt() - s.norm()).abs());
        worst_unitary = worst_unitary.max(cartesian_to_spherical(&v).relative_distance(&s));
        let (zp, zm) = match spin1_roots_closed_form(&s) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("trial {trial}: {e}")),
        };
        let general = match constellation_of(&s) {
            Ok(c) => c,
            Err(e) => return outcome(false, format!("trial {trial}: {e}")),
        };
        worst_roots = worst_roots.max(multiset_distance(general.roots(), &[zp, zm]));

        let zeta = random_point(&mut rng);
        let nu = nilpotent_of(&zeta);
        worst_nil = worst_nil.max(nu.dot_self().norm());
        let [x, y, z] = nu.real_axis();
        let axis = match UnitVector::new(x, y, z) {
            Ok(a) => a,
            Err(e) => return outcome(false, format!("trial {trial}: {e}")),
        };
        worst_axis = worst_axis.max(line_angle(&axis, &zeta.to_unit_vector()));
    }
    outcome(
        worst_roots < 1e-8 && worst_nil < 1e-10 && worst_axis < 1e-8 && worst_unitary < 1e-12,
        format!(
            "roots {worst_roots:.3e}, nu.nu {worst_nil:.3e}, axis {worst_axis:.3e} rad, unitarity {worst_unitary:.3e}"
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("1 zonal multipoles", criterion_1, Duration::from_secs(1)),
        ("2 tesseral multipoles", criterion_2, Duration::from_secs(1)),
        ("3 sylvester roundtrip", criterion_3, Duration::from_secs(30)),
        ("4 rotation rigidity", criterion_4, Duration::from_secs(10)),
        ("5 reality and antipodality", criterion_5, Duration::from_secs(5)),
        ("6 majorana factorization", criterion_6, Duration::from_secs(5)),
        ("7 kernel identities", criterion_7, Duration::from_secs(20)),
        ("8 derivative and product forms", criterion_8, Duration::from_secs(30)),
        ("9 wigner consistency", criterion_9, Duration::from_secs(10)),
        ("10 spin-1 suite", criterion_10, Duration::from_secs(5)),
    ];
    let mut failures = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let ok = result.passed && in_time;
        if !ok {
            failures += 1;
        }
        println!(
            "criterion {name}: {} ({:.3} s of {} s; {})",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            result.detail
        );
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
