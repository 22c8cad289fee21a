mod common;

use bec_probe_core::bogoliubov::IntegrandKind;
use bec_probe_core::dynamics::{gamma_factor, DecoherenceKernel, RateModel};
use bec_probe_core::quadrature::{lattice_sum_oracle, QuadratureSpec};
use bec_probe_core::units::to_reduced;
use bec_probe_core::{Dimension, ReducedParams};
use proptest::prelude::*;

fn params(dim: Dimension, temperature: f64, a_rel: f64) -> ReducedParams {
    to_reduced(&common::at(dim, temperature, a_rel * common::A_RB)).unwrap()
}

/// Denominator for comparisons of `γ`: its own size, or a fixed fraction of
/// `∫|integrand|` where `γ` crosses zero and only absolute accuracy exists.
fn rate_scale(rate: f64, magnitude: f64) -> f64 {
    rate.abs().max(1e-3 * magnitude)
}

#[test]
fn rate_matches_central_difference_of_gamma() {
    // Five-point stencil; a larger step keeps the rounding of `Γ` out of the
    // difference.
    let h = 5e-3;
    for dim in Dimension::ALL {
        for (temperature, a_rel) in [(0.0, 1.0), (20e-9, 0.0), (200e-9, 5.0)] {
            let p = params(dim, temperature, a_rel);
            let kernel = DecoherenceKernel::new(&p, &QuadratureSpec::default(), 200.0).unwrap();
            for i in 1..=20 {
                let t = 200.0 * (i as f64 / 20.0).powi(2);
                let g = |s: f64| kernel.tabulated(s, IntegrandKind::GammaFactor).0.value;
                let fd = (8.0 * (g(t + h) - g(t - h)) - (g(t + 2.0 * h) - g(t - 2.0 * h))) / (12.0 * h);
                let (rate, magnitude) = kernel.tabulated(t, IntegrandKind::DecayRate);
                let rel = (fd - rate.value).abs() / rate_scale(rate.value, magnitude);
                assert!(rel < 1e-6, "{dim} T={temperature} t={t}: fd {fd:e} vs {:e}", rate.value);
            }
        }
    }
}

#[test]
fn zero_temperature_limit_is_continuous() {
    let spec = QuadratureSpec::default();
    for dim in Dimension::ALL {
        let exact = params(dim, 0.0, 1.0);
        let cold = ReducedParams { beta: 1e6, ..exact.clone() };
        assert!(exact.is_zero_temperature());
        for t in [0.5, 3.0, 20.0, 90.0, 200.0] {
            let a = gamma_factor(t, &exact, &spec).unwrap().value;
            let b = gamma_factor(t, &cold, &spec).unwrap().value;
            assert!(((a - b) / a).abs() < 1e-6, "{dim} t={t}: {a:e} vs {b:e}");
        }
    }
}

#[test]
fn lattice_sum_converges_to_continuum() {
    let spec = QuadratureSpec::default();
    for (dim, boxes) in [(Dimension::D1, [50.0, 100.0, 200.0]), (Dimension::D2, [25.0, 50.0, 100.0])] {
        let p = params(dim, 10e-9, 1.0);
        for t in [0.5, 2.0, 5.0] {
            let exact = gamma_factor(t, &p, &spec).unwrap().value;
            let errors: Vec<f64> = boxes
                .iter()
                .map(|&b| {
                    let sum = lattice_sum_oracle(&p, t, b, IntegrandKind::GammaFactor, spec.k_max());
                    ((sum - exact) / exact).abs()
                })
                .collect();
            assert!(errors[2] < 1e-3, "{dim} t={t}: {errors:?}");
            assert!(errors[2] <= errors[0], "{dim} t={t}: {errors:?}");
        }
    }
}

#[test]
fn tighter_tolerance_agrees_within_the_looser_one() {
    let loose = QuadratureSpec::default();
    let tight = QuadratureSpec { rel_tol: 1e-11, abs_tol: 1e-15, ..loose };
    for dim in Dimension::ALL {
        let p = params(dim, 50e-9, 2.0);
        for t in [1.0, 40.0, 250.0] {
            let a = gamma_factor(t, &p, &loose).unwrap();
            let b = gamma_factor(t, &p, &tight).unwrap();
            assert!((a.value - b.value).abs() <= loose.rel_tol * b.value.abs(), "{dim} t={t}");
            assert!(b.error <= a.error.max(tight.tolerance(b.value) * p.prefactor));
        }
    }
}

#[test]
fn kernel_fallback_beyond_horizon_matches_adaptive() {
    let p = params(Dimension::D3, 0.0, 1.0);
    let spec = QuadratureSpec::default();
    let kernel = DecoherenceKernel::new(&p, &spec, 50.0).unwrap();
    let beyond = kernel.gamma_factor(80.0).unwrap().value;
    assert_eq!(beyond, gamma_factor(80.0, &p, &spec).unwrap().value);
    assert!(kernel.fallbacks() >= 1);
}

fn arb_params() -> impl Strategy<Value = ReducedParams> {
    (0usize..3, 0.0..200e-9, 0.0..5.0, -120.0..120.0f64, 2.0..20.0f64).prop_map(
        |(d, temperature, a_rel, a_ab, ell)| {
            let dim = Dimension::ALL[d];
            let mut config = common::at(dim, temperature, a_rel * common::A_RB);
            config.a_impurity = a_ab * bec_probe_core::units::BOHR_RADIUS;
            config.separation = ell * config.tau;
            to_reduced(&config).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gamma_is_nonnegative(p in arb_params(), t in 0.0..300.0f64) {
        let g = gamma_factor(t, &p, &QuadratureSpec::default()).unwrap();
        prop_assert!(g.value >= -g.error);
        prop_assert!(g.value.is_finite());
    }
}
