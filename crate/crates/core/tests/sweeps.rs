mod common;

use bec_probe_core::dynamics::ScanSpec;
use bec_probe_core::sweeps::{evaluate_row, run_sweep, Axis, MeasureSettings};
use bec_probe_core::Dimension;

fn settings() -> MeasureSettings {
    MeasureSettings { horizon: 120.0, scan: ScanSpec { points: 120, ..Default::default() }, ..Default::default() }
}

#[test]
fn free_gas_rows_are_markovian_in_every_dimension() {
    for dim in Dimension::ALL {
        let base = common::at(dim, 5e-9, 0.0);
        let rows = run_sweep(&base, Axis::ScatteringLength, &[0.0], &settings()).unwrap();
        let m = rows[0].result.as_ref().unwrap();
        assert_eq!(m.n, 0.0, "{dim}");
        assert!(m.interval.is_none());
    }
}

#[test]
fn rows_are_reproducible_in_isolation() {
    let base = common::companion(Dimension::D3);
    let values = [1e-9, 20e-9];
    let rows = run_sweep(&base, Axis::Temperature, &values, &settings()).unwrap();
    for row in &rows {
        let alone = evaluate_row(&base, Axis::Temperature, row.value, &settings());
        assert_eq!(alone, *row);
        assert_eq!(row.dim, Dimension::D3);
    }
    let n0 = rows[0].result.as_ref().unwrap().n;
    assert!(n0 > 0.0 && n0 <= 1.0);
}
