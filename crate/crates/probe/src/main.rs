use std::path::PathBuf;
use std::process::ExitCode;

use bec_probe::config::{parse_quantity, Quantity};
use bec_probe::output::{self, Sidecar};
use bec_probe::run::Runner;
use bec_probe::{validate, Error, Result, RunConfig};
use bec_probe_core::sweeps::Axis;
use bec_probe_core::Dimension;
use clap::{Args, Parser, Subcommand};

/// Dephasing of an impurity qubit in a thermal Bose-Einstein condensate.
#[derive(Parser)]
#[command(name = "bec-probe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Γ(t), γ(t) and the coherence on a time grid.
    Trace(Common),
    /// Negative-rate interval and non-Markovianity measure.
    Measure(Common),
    /// Measure over the configured temperature range.
    SweepTemperature(Common),
    /// Measure over the configured boson scattering-length range.
    SweepScattering(Common),
    /// Scattering length where the dynamics turns non-Markovian.
    CriticalScattering(Common),
    /// Temperature where the dynamics turns Markovian.
    CriticalTemperature(Common),
    /// Run the built-in oracle suite.
    Validate(Common),
}

#[derive(Args)]
struct Common {
    /// Configuration file, or a JSON sidecar of an earlier run.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dimension(s) to run; repeatable.
    #[arg(long, value_parser = parse_dim)]
    dim: Vec<Dimension>,
    /// Temperature with unit, e.g. `6.5nK`.
    #[arg(long)]
    temperature: Option<String>,
    /// Boson scattering length with unit, e.g. `1.5a_Rb` or `5nm`.
    #[arg(long = "a-b")]
    a_b: Option<String>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Search window for negative rates, in units of ħ/E_τ.
    #[arg(long)]
    horizon: Option<f64>,
    /// Relative quadrature tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write one two-column file per curve.
    #[arg(long)]
    plot_data: bool,
}

fn parse_dim(s: &str) -> std::result::Result<Dimension, String> {
    s.trim_end_matches(['D', 'd'])
        .parse::<u32>()
        .ok()
        .and_then(Dimension::from_u32)
        .ok_or_else(|| format!("`{s}` is not 1, 2 or 3"))
}

impl Common {
    fn config(&self, required: bool) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(path) => bec_probe::load(path)?,
            None if required => return Err(Error::Usage("--config <path> is required".into())),
            None => bec_probe::parse_config(bec_probe::COMPANION_CONFIG)?,
        };
        let a_ref = c.system.a_reference;
        if let Some(t) = &self.temperature {
            c.system.temperature =
                parse_quantity(t, Quantity::Temperature, a_ref).map_err(|m| Error::Usage(format!("--temperature: {m}")))?;
        }
        if let Some(a) = &self.a_b {
            c.system.a_boson =
                parse_quantity(a, Quantity::ScatteringLength, a_ref).map_err(|m| Error::Usage(format!("--a-b: {m}")))?;
        }
        if let Some(w) = self.workers {
            if w == 0 {
                return Err(Error::Usage("--workers must be ≥ 1".into()));
            }
            c.run.workers = w;
        }
        if let Some(s) = self.seed {
            c.run.seed = s;
        }
        if let Some(h) = self.horizon {
            if !(h > 0.0 && h.is_finite()) {
                return Err(Error::Usage("--horizon must be a positive number".into()));
            }
            c.measure.horizon = h;
        }
        if let Some(t) = self.tol {
            c.measure.quadrature.rel_tol = t;
            c.measure.quadrature.check()?;
        }
        if let Some(o) = &self.out {
            c.run.output = o.clone();
        }
        c.run.plot_data |= self.plot_data;
        Ok(c)
    }

    fn dims(&self, fallback: &[Dimension]) -> Vec<Dimension> {
        if self.dim.is_empty() {
            fallback.to_vec()
        } else {
            self.dim.clone()
        }
    }
}

fn trace(args: &Common) -> Result<u8> {
    let config = args.config(true)?;
    let runner = Runner::new(config.run.workers)?;
    let dir = &config.run.output;
    output::ensure_dir(dir)?;
    for dim in args.dims(&[config.system.dim]) {
        let tr = runner.trace(&config, dim)?;
        let stem = format!("trace_{dim}");
        let (csv, json) = output::paths(dir, &stem);
        output::write_trace(&csv, &tr)?;
        output::write_json(&json, &Sidecar::new("trace", &config, vec![tr.params.clone()], ()))?;
        if config.run.plot_data {
            output::write_trace_plot_data(dir, &stem, &tr)?;
        }
        println!("{dim}: {} points -> {}", tr.points.len(), csv.display());
    }
    Ok(0)
}

fn measure(args: &Common) -> Result<u8> {
    let config = args.config(true)?;
    let runner = Runner::new(config.run.workers)?;
    let dir = &config.run.output;
    output::ensure_dir(dir)?;
    for dim in args.dims(&[config.system.dim]) {
        let params = runner.params(&config, dim)?;
        let m = runner.measure(&config, dim)?;
        let (a, b) = m.interval.map_or((f64::NAN, f64::NAN), |i| (i.a, i.b));
        println!("{dim} N = {} a = {} b = {}", output::num(m.n), output::num(a), output::num(b));
        if m.diagnostics.open_at_horizon {
            eprintln!("{dim}: negative rate persists to the horizon; b is the horizon");
        }
        let (_, json) = output::paths(dir, &format!("measure_{dim}"));
        output::write_json(&json, &Sidecar::new("measure", &config, vec![params], &m))?;
    }
    Ok(0)
}

fn sweep(args: &Common, axis: Axis) -> Result<u8> {
    let config = args.config(true)?;
    let runner = Runner::new(config.run.workers)?;
    let dims = args.dims(&config.sweep.dims);
    let rows = runner.sweep(&config, axis, &dims)?;
    let dir = &config.run.output;
    output::ensure_dir(dir)?;
    let stem = format!("sweep_{}", axis.name());
    let (csv, json) = output::paths(dir, &stem);
    output::write_sweep(&csv, axis, &rows)?;
    let params = dims.iter().map(|&d| runner.params(&config, d)).collect::<Result<Vec<_>>>()?;
    let command = format!("sweep-{}", axis.name());
    output::write_json(&json, &Sidecar::new(&command, &config, params, output::row_diagnostics(&rows)))?;
    if config.run.plot_data {
        output::write_sweep_plot_data(dir, &stem, axis, &rows)?;
    }
    let failed = rows.iter().filter(|r| r.result.is_err()).count();
    for r in rows.iter().filter(|r| r.result.is_err()) {
        if let Err(e) = &r.result {
            eprintln!("{} {} = {:e}: {e}", r.dim, axis.name(), r.value);
        }
    }
    println!("{} rows ({} failed) -> {}", rows.len(), failed, csv.display());
    Ok(0)
}

fn critical(args: &Common, axis: Axis) -> Result<u8> {
    let config = args.config(true)?;
    let runner = Runner::new(config.run.workers)?;
    let dims = args.dims(&config.sweep.dims);
    let results = runner.critical(&config, axis, &dims)?;
    let dir = &config.run.output;
    output::ensure_dir(dir)?;
    let (csv, json) = output::paths(dir, &format!("critical_{}", axis.name()));
    output::write_critical(&csv, axis, &results)?;
    let params = dims.iter().map(|&d| runner.params(&config, d)).collect::<Result<Vec<_>>>()?;
    let summary: Vec<_> = results
        .iter()
        .map(|(d, r)| (d, r.as_ref().ok(), r.as_ref().err().map(|e| e.to_string())))
        .collect();
    let command = format!("critical-{}", axis.name());
    output::write_json(&json, &Sidecar::new(&command, &config, params, summary))?;
    let mut code = 0;
    for (dim, r) in &results {
        match r {
            Ok(c) => println!("{dim} {} = {}", axis.name(), output::num(c.estimate())),
            Err(e) => {
                eprintln!("{dim}: {e}");
                code = 1;
            }
        }
    }
    Ok(code)
}

fn validate(args: &Common) -> Result<u8> {
    let config = args.config(false)?;
    let checks = validate::run_all(&config);
    for c in &checks {
        println!("{c}");
    }
    Ok(if checks.iter().all(|c| c.passed) { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Trace(a) => trace(a),
        Command::Measure(a) => measure(a),
        Command::SweepTemperature(a) => sweep(a, Axis::Temperature),
        Command::SweepScattering(a) => sweep(a, Axis::ScatteringLength),
        Command::CriticalScattering(a) => critical(a, Axis::ScatteringLength),
        Command::CriticalTemperature(a) => critical(a, Axis::Temperature),
        Command::Validate(a) => validate(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
