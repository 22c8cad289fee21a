use bec_probe::config::from_sidecar;
use bec_probe::output::Sidecar;
use bec_probe::{parse_config, Error, COMPANION_CONFIG};
use bec_probe_core::units::BOHR_RADIUS;
use bec_probe_core::Dimension;

#[test]
fn companion_file_parses_with_expected_values() {
    let c = parse_config(COMPANION_CONFIG).unwrap();
    assert_eq!(c.system.a_reference, 100.4 * BOHR_RADIUS);
    assert_eq!(c.system.a_boson, c.system.a_reference);
    assert_eq!(c.measure.horizon, 600.0);
    assert_eq!(c.sweep.dims, Dimension::ALL.to_vec());
    assert_eq!(c.sweep.scattering.values().len(), 26);
    let t_max = *c.sweep.temperature.values().last().unwrap();
    assert!((t_max / 200e-9 - 1.0).abs() < 1e-15);
}

#[test]
fn reduced_densities_follow_from_the_confinement() {
    let c = parse_config(COMPANION_CONFIG).unwrap();
    let (n3, l) = (120e18, 100e-9);
    let close = |a: f64, b: f64| ((a - b) / b).abs() < 1e-14;
    assert!(close(c.system.density(Dimension::D1).unwrap(), n3 * std::f64::consts::PI * l * l));
    assert!(close(c.system.density(Dimension::D2).unwrap(), n3 * std::f64::consts::PI.sqrt() * l));
}

#[test]
fn sidecar_round_trip_is_bitwise() {
    let c = parse_config(COMPANION_CONFIG).unwrap();
    let json = serde_json::to_string(&Sidecar::new("measure", &c, vec![], ())).unwrap();
    assert_eq!(from_sidecar(&json).unwrap(), c);
}

#[test]
fn unknown_key_is_a_config_error() {
    let text = COMPANION_CONFIG.replace("horizon = 600", "horizn = 600");
    let err = parse_config(&text).unwrap_err();
    assert!(matches!(err, Error::UnknownKey { .. }), "{err}");
    assert!(err.to_string().contains("horizon"), "{err}");
    assert_eq!(err.exit_code(), 2);
}
