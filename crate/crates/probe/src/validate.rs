//! Built-in oracle suite behind the `validate` subcommand.
//!
//! Each check compares the kernels against an independent route to the same
//! number. Random inputs come from a seeded generator, so a given seed always
//! produces the same report.

use std::f64::consts::{PI, TAU};

use bec_probe_core::bogoliubov::{angular_geometry, IntegrandKind};
use bec_probe_core::dynamics::{find_negative_interval, gamma_factor, DecoherenceKernel, RateModel, ScanSpec};
use bec_probe_core::quadrature::{lattice_sum_oracle, Estimate};
use bec_probe_core::units::{from_reduced, to_reduced, BOHR_RADIUS};
use bec_probe_core::{Dimension, PhysicalConfig, ReducedParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{RunConfig, SystemConfig};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

/// Random valid configurations around `system`: every dimension, 0-200 nK,
/// `a_B` from 0 to 5 `a_ref`, attractive and repulsive `a_AB`, and a spread
/// of widths, separations, densities and confinements.
pub fn corpus(seed: u64, n: usize, system: &SystemConfig) -> Vec<PhysicalConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let dim = Dimension::ALL[rng.gen_range(0..3)];
            let temperature = if rng.gen_bool(0.1) { 0.0 } else { rng.gen_range(0.0..200e-9) };
            let a_boson = if rng.gen_bool(0.1) { 0.0 } else { rng.gen_range(0.0..5.0) * system.a_reference };
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let a_impurity = sign * rng.gen_range(5.0..150.0) * BOHR_RADIUS;
            let tau = rng.gen_range(50e-9..150e-9);
            let separation = rng.gen_range(3.0..15.0) * tau;
            let n3 = 1e20 * 10f64.powf(rng.gen_range(-0.5..0.5));
            let l = rng.gen_range(60e-9..200e-9);
            let density = match dim {
                Dimension::D1 => n3 * PI * l * l,
                Dimension::D2 => n3 * PI.sqrt() * l,
                Dimension::D3 => n3,
            };
            PhysicalConfig {
                m_impurity: system.m_impurity,
                m_boson: system.m_boson,
                a_boson,
                a_impurity,
                density,
                tau,
                separation,
                temperature,
                dim,
                transverse_1d: Some(l),
                transverse_2d: Some(l),
            }
        })
        .collect()
}

fn check(name: &'static str, worst: f64, limit: f64, what: &str) -> Check {
    Check { name, passed: worst < limit, detail: format!("worst {what} {worst:.3e} (limit {limit:.0e})") }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / b).abs()
    }
}

pub fn unit_round_trip(corpus: &[PhysicalConfig]) -> Check {
    let mut worst: f64 = 0.0;
    for c in corpus {
        let back = match to_reduced(c) {
            Ok(p) => from_reduced(&p),
            Err(e) => return Check { name: "unit round trip", passed: false, detail: e.to_string() },
        };
        for (x, y) in [
            (back.m_impurity, c.m_impurity),
            (back.m_boson, c.m_boson),
            (back.a_boson, c.a_boson),
            (back.a_impurity, c.a_impurity),
            (back.density, c.density),
            (back.tau, c.tau),
            (back.separation, c.separation),
            (back.temperature, c.temperature),
        ] {
            worst = worst.max(rel(x, y));
        }
    }
    check("unit round trip", worst, 1e-12, "relative change")
}

/// Compares `γ` with a five-point difference of `Γ` on the same nodes.
pub fn finite_difference(corpus: &[PhysicalConfig], times: usize, horizon: f64) -> Check {
    let h = 5e-3;
    let mut worst: f64 = 0.0;
    for c in corpus {
        let kernel = match to_reduced(c).and_then(|p| DecoherenceKernel::new(&p, &Default::default(), horizon)) {
            Ok(k) => k,
            Err(e) => return Check { name: "finite-difference rate", passed: false, detail: e.to_string() },
        };
        let g = |s: f64| kernel.tabulated(s, IntegrandKind::GammaFactor).0.value;
        for i in 1..=times {
            let t = horizon * i as f64 / times as f64 - 2.0 * h;
            let fd = (8.0 * (g(t + h) - g(t - h)) - (g(t + 2.0 * h) - g(t - 2.0 * h))) / (12.0 * h);
            let (rate, magnitude) = kernel.tabulated(t, IntegrandKind::DecayRate);
            worst = worst.max((fd - rate.value).abs() / rate.value.abs().max(1e-3 * magnitude));
        }
    }
    check("finite-difference rate", worst, 1e-6, "relative error")
}

/// Mean and standard error of `sin²(k ℓ cos θ)` over uniform directions.
pub fn direction_average(k: f64, ell: f64, dim: Dimension, samples: usize, rng: &mut ChaCha8Rng) -> (f64, f64) {
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..samples {
        let cos_theta = match dim {
            Dimension::D1 => 1.0,
            Dimension::D2 => rng.gen_range(0.0..TAU).cos(),
            Dimension::D3 => rng.gen_range(-1.0..1.0),
        };
        let s = (k * ell * cos_theta).sin().powi(2);
        sum += s;
        sum_sq += s * s;
    }
    let n = samples as f64;
    let mean = sum / n;
    (mean, ((sum_sq / n - mean * mean).max(0.0) / (n - 1.0).max(1.0)).sqrt())
}

pub fn angular_averages(seed: u64, samples: usize, ell: f64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for i in 1..=10 {
        let k = 0.03 * i as f64;
        let d1 = angular_geometry(k, ell, Dimension::D1);
        if (d1 - (k * ell).sin().powi(2)).abs() > 1e-15 {
            return Check { name: "Monte Carlo angular averages", passed: false, detail: format!("1D mismatch at k = {k}") };
        }
        for dim in [Dimension::D2, Dimension::D3] {
            let (mean, se) = direction_average(k, ell, dim, samples, &mut rng);
            worst = worst.max((mean - angular_geometry(k, ell, dim)).abs() / se);
        }
    }
    check("Monte Carlo angular averages", worst, 3.0, "deviation in standard errors")
}

/// Box size for the lattice check in each dimension.
pub fn lattice_box(dim: Dimension) -> f64 {
    match dim {
        Dimension::D1 => 200.0,
        Dimension::D2 => 100.0,
        Dimension::D3 => 40.0,
    }
}

pub fn lattice_sum(params: &[ReducedParams], times: &[f64]) -> Check {
    let spec = Default::default();
    let mut worst: f64 = 0.0;
    for p in params {
        for &t in times {
            let exact = match gamma_factor(t, p, &spec) {
                Ok(e) => e.value,
                Err(e) => return Check { name: "lattice sum vs continuum", passed: false, detail: e.to_string() },
            };
            let sum = lattice_sum_oracle(p, t, lattice_box(p.dim), IntegrandKind::GammaFactor, spec.k_max());
            worst = worst.max(rel(sum, exact));
        }
    }
    check("lattice sum vs continuum", worst, 1e-3, "relative difference")
}

pub fn zero_temperature(params: &[ReducedParams], times: &[f64]) -> Check {
    let spec = Default::default();
    let mut worst: f64 = 0.0;
    for p in params {
        let exact = ReducedParams { beta: f64::INFINITY, ..p.clone() };
        let cold = ReducedParams { beta: 1e6, ..p.clone() };
        for &t in times {
            match (gamma_factor(t, &exact, &spec), gamma_factor(t, &cold, &spec)) {
                (Ok(a), Ok(b)) => worst = worst.max(rel(b.value, a.value)),
                (Err(e), _) | (_, Err(e)) => {
                    return Check { name: "zero-temperature limit", passed: false, detail: e.to_string() }
                }
            }
        }
    }
    check("zero-temperature limit", worst, 1e-6, "relative difference")
}

pub fn gamma_sign(corpus: &[PhysicalConfig], times: usize, horizon: f64) -> Check {
    let mut worst: f64 = 0.0;
    for c in corpus {
        let kernel = match to_reduced(c).and_then(|p| DecoherenceKernel::new(&p, &Default::default(), horizon)) {
            Ok(k) => k,
            Err(e) => return Check { name: "decoherence factor sign", passed: false, detail: e.to_string() },
        };
        for i in 0..times {
            let t = horizon * i as f64 / (times - 1) as f64;
            match kernel.gamma_factor(t) {
                Ok(g) if i == 0 && g.value != 0.0 => {
                    return Check { name: "decoherence factor sign", passed: false, detail: format!("Γ(0) = {:e}", g.value) }
                }
                Ok(g) => worst = worst.max(-(g.value + g.error)),
                Err(e) => return Check { name: "decoherence factor sign", passed: false, detail: e.to_string() },
            }
        }
    }
    Check {
        name: "decoherence factor sign",
        passed: worst <= 0.0,
        detail: format!("Γ(0) = 0; largest Γ + error below zero {:.3e}", worst.max(0.0)),
    }
}

/// `Γ = t + 0.8 sin 2t`; its rate is negative where `cos 2t < -1/1.6`.
pub struct Wobble;

impl RateModel for Wobble {
    fn gamma_factor(&self, t: f64) -> bec_probe_core::Result<Estimate> {
        Ok(Estimate { value: t + 0.8 * (2.0 * t).sin(), error: 0.0 })
    }
    fn decay_rate(&self, t: f64) -> bec_probe_core::Result<Estimate> {
        Ok(Estimate { value: 1.0 + 1.6 * (2.0 * t).cos(), error: 0.0 })
    }
}

pub fn interval_finder() -> Check {
    let a = 0.5 * (-1.0f64 / 1.6).acos();
    let b = PI - a;
    match find_negative_interval(&Wobble, 3.0, &ScanSpec::default()) {
        Ok(s) => match s.interval {
            Some(iv) => check("synthetic interval finder", (iv.a - a).abs().max((iv.b - b).abs()), 1e-6, "endpoint error"),
            None => Check { name: "synthetic interval finder", passed: false, detail: "no interval found".into() },
        },
        Err(e) => Check { name: "synthetic interval finder", passed: false, detail: e.to_string() },
    }
}

/// Runs every check with the sizes used by the command line.
pub fn run_all(config: &RunConfig) -> Vec<Check> {
    let seed = config.run.seed;
    let corpus = corpus(seed, 24, &config.system);
    let companion: Vec<ReducedParams> = Dimension::ALL
        .iter()
        .filter_map(|&d| config.physical(d).ok().and_then(|c| to_reduced(&c).ok()))
        .collect();
    let ell = companion.first().map_or(12.0, |p| p.ell);
    vec![
        unit_round_trip(&corpus),
        finite_difference(&corpus, 10, 150.0),
        angular_averages(seed, config.run.mc_samples, ell),
        lattice_sum(&companion, &[0.5, 2.0, 5.0]),
        zero_temperature(&companion, &[0.5, 5.0, 50.0, 200.0]),
        gamma_sign(&corpus, 20, 150.0),
        interval_finder(),
    ]
}
