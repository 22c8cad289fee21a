//! Run configuration: a flat `key = value unit` format with `[section]`
//! headers and `#` comments.
//!
//! Every dimensional quantity carries an explicit unit. Scattering lengths
//! may also be given relative to the reference length `a_ref` with the unit
//! `a_Rb`. Times (`horizon`, `t_end`) are in the reduced unit `ħ/E_τ` and take
//! no unit.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;

use bec_probe_core::dynamics::ScanSpec;
use bec_probe_core::quadrature::QuadratureSpec;
use bec_probe_core::sweeps::{CrossoverSpec, MeasureSettings};
use bec_probe_core::units::{ATOMIC_MASS_UNIT, BOHR_RADIUS};
use bec_probe_core::{Dimension, PhysicalConfig};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scattering length of Rb-87 used when `a_ref` is not set.
pub const DEFAULT_A_REF: f64 = 100.4 * BOHR_RADIUS;

/// Physical quantity a key holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Length,
    /// A length that also accepts `a_Rb`.
    ScatteringLength,
    Mass,
    Temperature,
    Density(u32),
}

impl Quantity {
    fn describe(self) -> &'static str {
        match self {
            Quantity::Length => "a length (m, um, nm, a0)",
            Quantity::ScatteringLength => "a length (m, um, nm, a0, a_Rb)",
            Quantity::Mass => "a mass (kg, u)",
            Quantity::Temperature => "a temperature (K, uK, nK)",
            Quantity::Density(3) => "a 3D density (per_m3, per_um3)",
            Quantity::Density(2) => "a 2D density (per_m2, per_um2)",
            Quantity::Density(_) => "a 1D density (per_m, per_um)",
        }
    }

    /// SI factor of `unit`, or `None` if the unit does not measure this
    /// quantity. `a_Rb` is handled by the caller.
    fn factor(self, unit: &str) -> Option<f64> {
        let f = match (self, unit) {
            (Quantity::Length | Quantity::ScatteringLength, "m") => 1.0,
            (Quantity::Length | Quantity::ScatteringLength, "um") => 1e-6,
            (Quantity::Length | Quantity::ScatteringLength, "nm") => 1e-9,
            (Quantity::Length | Quantity::ScatteringLength, "a0") => BOHR_RADIUS,
            (Quantity::Mass, "kg") => 1.0,
            (Quantity::Mass, "u") => ATOMIC_MASS_UNIT,
            (Quantity::Temperature, "K") => 1.0,
            (Quantity::Temperature, "uK") => 1e-6,
            (Quantity::Temperature, "nK") => 1e-9,
            (Quantity::Density(3), "per_m3") => 1.0,
            (Quantity::Density(3), "per_um3") => 1e18,
            (Quantity::Density(2), "per_m2") => 1.0,
            (Quantity::Density(2), "per_um2") => 1e12,
            (Quantity::Density(1), "per_m") => 1.0,
            (Quantity::Density(1), "per_um") => 1e6,
            _ => return None,
        };
        Some(f)
    }
}

/// Splits `"6.5 nK"` or `"6.5nK"` into the number and the unit.
fn split_value(text: &str) -> Option<(f64, &str)> {
    let text = text.trim();
    let bytes = text.as_bytes();
    let mut end = 0;
    while end < bytes.len() {
        let c = bytes[end] as char;
        let exponent = (c == 'e' || c == 'E')
            && bytes.get(end + 1).is_some_and(|&n| (n as char).is_ascii_digit() || n == b'-' || n == b'+');
        if c.is_ascii_digit() || c == '.' || c == '-' || c == '+' || exponent {
            end += 1;
        } else {
            break;
        }
    }
    let number: f64 = text[..end].parse().ok()?;
    Some((number, text[end..].trim()))
}

/// Parses a dimensional value such as `"6.5 nK"` into SI units.
///
/// `a_ref` resolves the relative unit `a_Rb`. Used by the config parser and
/// for command-line overrides.
pub fn parse_quantity(text: &str, quantity: Quantity, a_ref: f64) -> std::result::Result<f64, String> {
    let (number, unit) = split_value(text).ok_or_else(|| format!("`{}` is not a number with a unit", text.trim()))?;
    if unit.is_empty() {
        return Err(format!("`{}` needs a unit; expected {}", text.trim(), quantity.describe()));
    }
    if quantity == Quantity::ScatteringLength && unit == "a_Rb" {
        return Ok(number * a_ref);
    }
    quantity
        .factor(unit)
        .map(|f| number * f)
        .ok_or_else(|| format!("unit `{unit}` is not {}", quantity.describe()))
}

/// Sample grid `min..=max` with `points` values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        if self.points <= 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| if i + 1 == self.points { self.max } else { self.min + i as f64 * step })
            .collect()
    }
}

/// Condensate, impurity and double-well parameters in SI units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    pub m_impurity: f64,
    pub m_boson: f64,
    /// Reference scattering length behind the `a_Rb` unit.
    pub a_reference: f64,
    pub a_boson: f64,
    pub a_impurity: f64,
    pub tau: f64,
    pub separation: f64,
    pub temperature: f64,
    pub dim: Dimension,
    /// Bulk 3D density (m^-3).
    pub density_3d: f64,
    /// Column densities; derived from `density_3d` and the confinement when
    /// absent.
    pub density_2d: Option<f64>,
    pub density_1d: Option<f64>,
    /// Transverse harmonic length of the quasi-1D gas.
    pub l_perp: Option<f64>,
    /// Axial harmonic length of the quasi-2D gas.
    pub l_z: Option<f64>,
}

impl SystemConfig {
    /// Density in m^-D for `dim`. A quasi-1D gas in a Gaussian transverse
    /// ground state has `n1 = n3 π l⊥²`, a quasi-2D one `n2 = n3 √π l_z`.
    pub fn density(&self, dim: Dimension) -> Result<f64> {
        let missing = |key| Error::MissingKey { section: "system", key };
        Ok(match dim {
            Dimension::D3 => self.density_3d,
            Dimension::D2 => match self.density_2d {
                Some(n) => n,
                None => self.density_3d * PI.sqrt() * self.l_z.ok_or(missing("l_z"))?,
            },
            Dimension::D1 => match self.density_1d {
                Some(n) => n,
                None => {
                    let l = self.l_perp.ok_or(missing("l_perp"))?;
                    self.density_3d * PI * l * l
                }
            },
        })
    }

    pub fn physical(&self, dim: Dimension) -> Result<PhysicalConfig> {
        Ok(PhysicalConfig {
            m_impurity: self.m_impurity,
            m_boson: self.m_boson,
            a_boson: self.a_boson,
            a_impurity: self.a_impurity,
            density: self.density(dim)?,
            tau: self.tau,
            separation: self.separation,
            temperature: self.temperature,
            dim,
            transverse_1d: self.l_perp,
            transverse_2d: self.l_z,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceConfig {
    /// Last time of the trace (units of `ħ/E_τ`).
    pub t_end: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Temperatures (K).
    pub temperature: Range,
    /// Boson scattering lengths (m).
    pub scattering: Range,
    pub dims: Vec<Dimension>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalConfig {
    /// Temperature bracket (K).
    pub temperature: (f64, f64),
    /// Scattering-length bracket (m).
    pub scattering: (f64, f64),
    pub crossover: CrossoverSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOptions {
    pub output: PathBuf,
    pub workers: usize,
    /// Seed of the Monte Carlo and corpus checks of `validate`.
    pub seed: u64,
    pub plot_data: bool,
    /// Directions per Monte Carlo angular average.
    pub mc_samples: usize,
}

/// Everything a run needs; also the `config` field of every JSON sidecar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub system: SystemConfig,
    pub measure: MeasureSettings,
    pub trace: TraceConfig,
    pub sweep: SweepConfig,
    pub critical: CriticalConfig,
    pub run: RunOptions,
}

impl RunConfig {
    pub fn physical(&self, dim: Dimension) -> Result<PhysicalConfig> {
        self.system.physical(dim)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Quantity(Quantity),
    Number,
    Integer,
    Dims,
    Text,
    Flag,
}

const KEYS: &[(&str, &[(&str, Kind)])] = &[
    (
        "system",
        &[
            ("m_impurity", Kind::Quantity(Quantity::Mass)),
            ("m_boson", Kind::Quantity(Quantity::Mass)),
            ("a_ref", Kind::Quantity(Quantity::Length)),
            ("a_B", Kind::Quantity(Quantity::ScatteringLength)),
            ("a_AB", Kind::Quantity(Quantity::ScatteringLength)),
            ("tau", Kind::Quantity(Quantity::Length)),
            ("L", Kind::Quantity(Quantity::Length)),
            ("temperature", Kind::Quantity(Quantity::Temperature)),
            ("dim", Kind::Integer),
            ("density_3d", Kind::Quantity(Quantity::Density(3))),
            ("density_2d", Kind::Quantity(Quantity::Density(2))),
            ("density_1d", Kind::Quantity(Quantity::Density(1))),
            ("l_perp", Kind::Quantity(Quantity::Length)),
            ("l_z", Kind::Quantity(Quantity::Length)),
        ],
    ),
    (
        "quadrature",
        &[
            ("rel_tol", Kind::Number),
            ("abs_tol", Kind::Number),
            ("k_max_sigma", Kind::Number),
            ("max_panels", Kind::Integer),
            ("oscillation_guard", Kind::Integer),
        ],
    ),
    (
        "measure",
        &[
            ("horizon", Kind::Number),
            ("scan_points", Kind::Integer),
            ("max_refined_minima", Kind::Integer),
            ("golden_iterations", Kind::Integer),
            ("root_rel_tol", Kind::Number),
        ],
    ),
    ("trace", &[("t_end", Kind::Number), ("n_points", Kind::Integer)]),
    (
        "sweep",
        &[
            ("t_min", Kind::Quantity(Quantity::Temperature)),
            ("t_max", Kind::Quantity(Quantity::Temperature)),
            ("t_points", Kind::Integer),
            ("a_min", Kind::Quantity(Quantity::ScatteringLength)),
            ("a_max", Kind::Quantity(Quantity::ScatteringLength)),
            ("a_points", Kind::Integer),
            ("dims", Kind::Dims),
        ],
    ),
    (
        "critical",
        &[
            ("t_lo", Kind::Quantity(Quantity::Temperature)),
            ("t_hi", Kind::Quantity(Quantity::Temperature)),
            ("a_lo", Kind::Quantity(Quantity::ScatteringLength)),
            ("a_hi", Kind::Quantity(Quantity::ScatteringLength)),
            ("threshold", Kind::Number),
            ("rel_width", Kind::Number),
            ("max_steps", Kind::Integer),
        ],
    ),
    (
        "run",
        &[
            ("output", Kind::Text),
            ("workers", Kind::Integer),
            ("seed", Kind::Integer),
            ("plot_data", Kind::Flag),
            ("mc_samples", Kind::Integer),
        ],
    ),
];

fn lookup(section: &str, key: &str) -> Option<Kind> {
    KEYS.iter()
        .find(|(s, _)| *s == section)
        .and_then(|(_, keys)| keys.iter().find(|(k, _)| *k == key))
        .map(|(_, kind)| *kind)
}

fn nearest_key(key: &str) -> Option<String> {
    KEYS.iter()
        .flat_map(|(_, keys)| keys.iter().map(|(k, _)| *k))
        .map(|k| (strsim::levenshtein(key, k), k))
        .filter(|(d, k)| *d <= 2.max(k.len() / 3))
        .min()
        .map(|(_, k)| k.to_string())
}

fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

struct Entry {
    line: usize,
    text: String,
}

/// The raw `key = value` pairs of one file, by section.
struct Entries {
    map: BTreeMap<(&'static str, &'static str), Entry>,
}

impl Entries {
    fn parse(text: &str) -> Result<Entries> {
        let mut map = BTreeMap::new();
        let mut section: Option<&'static str> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = strip_comment(raw).trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| Error::Syntax { line, message: format!("unterminated section header `{content}`") })?
                    .trim();
                let known = KEYS.iter().find(|(s, _)| *s == name).ok_or_else(|| Error::Syntax {
                    line,
                    message: format!("unknown section [{name}]"),
                })?;
                section = Some(known.0);
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| Error::Syntax { line, message: format!("expected `key = value`, found `{content}`") })?;
            let (key, value) = (key.trim(), value.trim());
            let section = section.ok_or_else(|| Error::Syntax {
                line,
                message: format!("`{key}` appears before any [section] header"),
            })?;
            let known = KEYS
                .iter()
                .find(|(s, _)| *s == section)
                .and_then(|(_, keys)| keys.iter().find(|(k, _)| *k == key))
                .map(|(k, _)| *k)
                .ok_or_else(|| Error::UnknownKey {
                    line,
                    section: section.to_string(),
                    key: key.to_string(),
                    suggestion: nearest_key(key),
                })?;
            if value.is_empty() {
                return Err(Error::Syntax { line, message: format!("`{key}` has no value") });
            }
            if let Some(prev) = map.insert((section, known), Entry { line, text: value.to_string() }) {
                return Err(Error::Syntax { line, message: format!("`{key}` already set on line {}", prev.line) });
            }
        }
        Ok(Entries { map })
    }

    fn get(&self, section: &'static str, key: &'static str) -> Option<&Entry> {
        self.map.get(&(section, key))
    }

    fn quantity(&self, section: &'static str, key: &'static str, a_ref: f64) -> Result<Option<f64>> {
        let Some(Kind::Quantity(q)) = lookup(section, key) else { unreachable!("{key} is not a quantity") };
        let Some(e) = self.get(section, key) else { return Ok(None) };
        match split_value(&e.text) {
            Some((_, unit)) if unit.is_empty() || !(q.factor(unit).is_some() || (q == Quantity::ScatteringLength && unit == "a_Rb")) => {
                Err(Error::UnitMismatch {
                    line: e.line,
                    key: key.to_string(),
                    expected: q.describe(),
                    found: if unit.is_empty() { "no unit".to_string() } else { unit.to_string() },
                })
            }
            _ => parse_quantity(&e.text, q, a_ref)
                .map(Some)
                .map_err(|message| Error::Syntax { line: e.line, message: format!("`{key}`: {message}") }),
        }
    }

    fn number(&self, section: &'static str, key: &'static str) -> Result<Option<f64>> {
        let Some(e) = self.get(section, key) else { return Ok(None) };
        match split_value(&e.text) {
            Some((x, "")) => Ok(Some(x)),
            Some((_, unit)) => Err(Error::UnitMismatch {
                line: e.line,
                key: key.to_string(),
                expected: "a plain number",
                found: unit.to_string(),
            }),
            None => Err(Error::Syntax { line: e.line, message: format!("`{key}`: `{}` is not a number", e.text) }),
        }
    }

    fn integer(&self, section: &'static str, key: &'static str) -> Result<Option<u64>> {
        let Some(e) = self.get(section, key) else { return Ok(None) };
        e.text.parse::<u64>().map(Some).map_err(|_| Error::Syntax {
            line: e.line,
            message: format!("`{key}` must be a non-negative integer, found `{}`", e.text),
        })
    }

    fn required(&self, section: &'static str, key: &'static str, a_ref: f64) -> Result<f64> {
        self.quantity(section, key, a_ref)?.ok_or(Error::MissingKey { section, key })
    }
}

fn parse_dim(line: usize, text: &str) -> Result<Dimension> {
    text.trim()
        .trim_end_matches(['D', 'd'])
        .parse::<u32>()
        .ok()
        .and_then(Dimension::from_u32)
        .ok_or_else(|| Error::Syntax { line, message: format!("`{text}` is not a dimension (1, 2 or 3)") })
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Parses the text of a configuration file; missing optional keys take
/// their defaults.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let e = Entries::parse(text)?;
    let a_ref = e.quantity("system", "a_ref", DEFAULT_A_REF)?.unwrap_or(DEFAULT_A_REF);

    let dim = match e.get("system", "dim") {
        Some(entry) => parse_dim(entry.line, &entry.text)?,
        None => Dimension::D3,
    };
    let system = SystemConfig {
        m_impurity: e.required("system", "m_impurity", a_ref)?,
        m_boson: e.required("system", "m_boson", a_ref)?,
        a_reference: a_ref,
        a_boson: e.required("system", "a_B", a_ref)?,
        a_impurity: e.required("system", "a_AB", a_ref)?,
        tau: e.required("system", "tau", a_ref)?,
        separation: e.required("system", "L", a_ref)?,
        temperature: e.quantity("system", "temperature", a_ref)?.unwrap_or(0.0),
        dim,
        density_3d: e.required("system", "density_3d", a_ref)?,
        density_2d: e.quantity("system", "density_2d", a_ref)?,
        density_1d: e.quantity("system", "density_1d", a_ref)?,
        l_perp: e.quantity("system", "l_perp", a_ref)?,
        l_z: e.quantity("system", "l_z", a_ref)?,
    };

    let qd = QuadratureSpec::default();
    let quadrature = QuadratureSpec {
        rel_tol: e.number("quadrature", "rel_tol")?.unwrap_or(qd.rel_tol),
        abs_tol: e.number("quadrature", "abs_tol")?.unwrap_or(qd.abs_tol),
        k_max_sigma: e.number("quadrature", "k_max_sigma")?.unwrap_or(qd.k_max_sigma),
        max_panels: e.integer("quadrature", "max_panels")?.map_or(qd.max_panels, |v| v as usize),
        oscillation_guard: e.integer("quadrature", "oscillation_guard")?.map_or(qd.oscillation_guard, |v| v as usize),
    };
    let sd = ScanSpec::default();
    let scan = ScanSpec {
        points: e.integer("measure", "scan_points")?.map_or(sd.points, |v| v as usize),
        max_refined_minima: e.integer("measure", "max_refined_minima")?.map_or(sd.max_refined_minima, |v| v as usize),
        golden_iterations: e.integer("measure", "golden_iterations")?.map_or(sd.golden_iterations, |v| v as usize),
        root_rel_tol: e.number("measure", "root_rel_tol")?.unwrap_or(sd.root_rel_tol),
    };
    let measure = MeasureSettings {
        horizon: e.number("measure", "horizon")?.unwrap_or(MeasureSettings::default().horizon),
        scan,
        quadrature,
    };

    let trace = TraceConfig {
        t_end: e.number("trace", "t_end")?.unwrap_or(200.0),
        n_points: e.integer("trace", "n_points")?.map_or(401, |v| v as usize),
    };

    let dims = match e.get("sweep", "dims") {
        Some(entry) => entry
            .text
            .split([',', ' '])
            .filter(|s| !s.trim().is_empty())
            .map(|s| parse_dim(entry.line, s))
            .collect::<Result<Vec<_>>>()?,
        None => Dimension::ALL.to_vec(),
    };
    let sweep = SweepConfig {
        temperature: Range {
            min: e.quantity("sweep", "t_min", a_ref)?.unwrap_or(0.0),
            max: e.quantity("sweep", "t_max", a_ref)?.unwrap_or(200e-9),
            points: e.integer("sweep", "t_points")?.map_or(41, |v| v as usize),
        },
        scattering: Range {
            min: e.quantity("sweep", "a_min", a_ref)?.unwrap_or(0.0),
            max: e.quantity("sweep", "a_max", a_ref)?.unwrap_or(5.0 * a_ref),
            points: e.integer("sweep", "a_points")?.map_or(26, |v| v as usize),
        },
        dims,
    };

    let cd = CrossoverSpec::default();
    let critical = CriticalConfig {
        temperature: (
            e.quantity("critical", "t_lo", a_ref)?.unwrap_or(1e-9),
            e.quantity("critical", "t_hi", a_ref)?.unwrap_or(20e-9),
        ),
        scattering: (
            e.quantity("critical", "a_lo", a_ref)?.unwrap_or(0.0),
            e.quantity("critical", "a_hi", a_ref)?.unwrap_or(5.0 * a_ref),
        ),
        crossover: CrossoverSpec {
            threshold: e.number("critical", "threshold")?.unwrap_or(cd.threshold),
            rel_width: e.number("critical", "rel_width")?.unwrap_or(cd.rel_width),
            max_steps: e.integer("critical", "max_steps")?.map_or(cd.max_steps, |v| v as usize),
        },
    };

    let plot_data = match e.get("run", "plot_data") {
        Some(entry) => match entry.text.as_str() {
            "true" => true,
            "false" => false,
            other => {
                return Err(Error::Syntax { line: entry.line, message: format!("`plot_data` must be true or false, found `{other}`") })
            }
        },
        None => false,
    };
    let run = RunOptions {
        output: e.get("run", "output").map_or_else(|| PathBuf::from("out"), |x| PathBuf::from(x.text.trim_matches('"'))),
        workers: e.integer("run", "workers")?.map_or_else(default_workers, |v| v as usize),
        seed: e.integer("run", "seed")?.unwrap_or(42),
        plot_data,
        mc_samples: e.integer("run", "mc_samples")?.map_or(1_000_000, |v| v as usize),
    };

    let config = RunConfig { system, measure, trace, sweep, critical, run };
    check(&config)?;
    Ok(config)
}

fn check(config: &RunConfig) -> Result<()> {
    config.measure.quadrature.check()?;
    let usage = |m: &str| Err(Error::Usage(m.to_string()));
    if !(config.measure.horizon > 0.0 && config.measure.horizon.is_finite()) {
        return usage("horizon must be a positive number");
    }
    if config.trace.n_points < 2 || !(config.trace.t_end > 0.0) {
        return usage("trace needs t_end > 0 and n_points ≥ 2");
    }
    if config.run.workers == 0 {
        return usage("workers must be ≥ 1");
    }
    for (name, r) in [("temperature", config.sweep.temperature), ("scattering", config.sweep.scattering)] {
        if r.points == 0 || (r.points > 1 && !(r.max > r.min)) {
            return usage(&format!("{name} sweep range must have points ≥ 1 and max > min"));
        }
    }
    if config.sweep.dims.is_empty() {
        return usage("sweep dims must not be empty");
    }
    Ok(())
}

/// Reads a configuration file, or the `config` object of a JSON sidecar
/// written by a previous run.
pub fn load(path: &std::path::Path) -> Result<RunConfig> {
    let text =
        std::fs::read_to_string(path).map_err(|source| Error::ReadConfig { path: path.to_path_buf(), source })?;
    if text.trim_start().starts_with('{') {
        from_sidecar(&text)
    } else {
        parse_config(&text)
    }
}

/// The run configuration embedded in a JSON sidecar.
pub fn from_sidecar(text: &str) -> Result<RunConfig> {
    #[derive(Deserialize)]
    struct Sidecar {
        config: RunConfig,
    }
    let sidecar: Sidecar = serde_json::from_str(text)
        .map_err(|e| Error::Syntax { line: e.line(), message: format!("sidecar: {e}") })?;
    check(&sidecar.config)?;
    Ok(sidecar.config)
}
