//! Line-oriented `key = value` experiment configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::point_processes::{BoundaryMode, Lattice, PatternGenerator, ReplicaLaw, Window};
use crate::shot_noise::{Attenuation, SinrParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    Fig1Patterns,
    Fig2GilbertScan,
    SinrGammaScan,
    DiagnosticsSuite,
    BoundsTable,
}

impl Experiment {
    pub const ALL: [Experiment; 5] = [
        Experiment::Fig1Patterns,
        Experiment::Fig2GilbertScan,
        Experiment::SinrGammaScan,
        Experiment::DiagnosticsSuite,
        Experiment::BoundsTable,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Fig1Patterns => "fig1_patterns",
            Experiment::Fig2GilbertScan => "fig2_gilbert_scan",
            Experiment::SinrGammaScan => "sinr_gamma_scan",
            Experiment::DiagnosticsSuite => "diagnostics_suite",
            Experiment::BoundsTable => "bounds_table",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s.trim())
            .ok_or_else(|| Error::param(format!("unknown experiment {s:?}")))
    }
}

/// Pattern family named in a config file.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GeneratorSpec {
    /// The unperturbed lattice.
    Lattice,
    /// Poisson with the lattice intensity.
    Poisson,
    Perturbed(ReplicaLaw),
}

impl GeneratorSpec {
    pub fn slug(&self) -> String {
        match self {
            GeneratorSpec::Lattice => "lattice".into(),
            GeneratorSpec::Poisson => "poisson".into(),
            GeneratorSpec::Perturbed(law) => law.slug(),
        }
    }

    pub fn build(&self, lattice: Lattice<f64>, window: Window<f64>) -> PatternGenerator<f64> {
        match *self {
            GeneratorSpec::Lattice => PatternGenerator::Lattice { lattice, window },
            GeneratorSpec::Poisson => PatternGenerator::Poisson {
                intensity: lattice.intensity(),
                window,
            },
            GeneratorSpec::Perturbed(law) => PatternGenerator::Perturbed { lattice, law, window },
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Lattice => f.write_str("lattice"),
            GeneratorSpec::Poisson => f.write_str("poisson"),
            GeneratorSpec::Perturbed(law) => write!(f, "{law}"),
        }
    }
}

impl Serialize for GeneratorSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GeneratorSpec::Perturbed(law) => s.serialize_str(&law.config_form()),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lattice" => Ok(GeneratorSpec::Lattice),
            "poisson" => Ok(GeneratorSpec::Poisson),
            other => other.parse().map(GeneratorSpec::Perturbed),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WindowSettings {
    pub columns: usize,
    pub rows: usize,
    pub spacing: f64,
    pub boundary: BoundaryMode,
}

impl WindowSettings {
    pub fn lattice_and_window(&self) -> Result<(Lattice<f64>, Window<f64>)> {
        Lattice::fitted(self.columns, self.rows, self.spacing, self.boundary)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanSettings {
    pub target_fraction: f64,
    pub tolerance: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub replications: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InterfererSetting {
    Independent,
    Backbone,
    BackboneAndIndependent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionSetting {
    Fraction,
    Crossing,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SinrSettings {
    pub power: f64,
    pub noise: f64,
    pub threshold: f64,
    #[serde(serialize_with = "display")]
    pub attenuation: Attenuation<f64>,
    pub backbone: GeneratorSpec,
    pub interferers: InterfererSetting,
    pub interferer_intensity: f64,
    pub gamma_hi: f64,
    pub gamma_tolerance: f64,
    pub criterion: CriterionSetting,
    pub crossing_margin: f64,
    pub grid_cells: usize,
}

impl SinrSettings {
    pub fn params(&self) -> Result<SinrParams<f64>> {
        SinrParams::new(self.power, self.noise, self.threshold, 0.0, self.attenuation)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagnosticsSettings {
    pub replications: usize,
    pub void_radius: f64,
    pub ripley_radius: f64,
    pub laplace_s: Vec<f64>,
    pub laplace_probes: Vec<usize>,
    pub chi_square_seeds: usize,
    pub chi_square_level: f64,
    pub fading_rate: f64,
    pub capacity_f0: f64,
    pub capacity_threshold: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsSettings {
    pub intensities: Vec<f64>,
    pub dimension: u32,
    pub radii: Vec<f64>,
    pub path_lengths: Vec<u32>,
    pub empirical_rho: Vec<f64>,
}

/// Fully resolved configuration; every key has a default.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: Option<Experiment>,
    pub master_seed: u64,
    pub output: Option<PathBuf>,
    pub window: WindowSettings,
    pub generators: Option<Vec<GeneratorSpec>>,
    pub scan: ScanSettings,
    pub sinr: SinrSettings,
    pub diagnostics: DiagnosticsSettings,
    pub bounds: BoundsSettings,
}

fn display<S: serde::Serializer, D: fmt::Display>(v: &D, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let lambda = 2.0 / 3f64.sqrt();
        Self {
            experiment: None,
            master_seed: 1,
            output: None,
            window: WindowSettings {
                columns: 40,
                rows: 46,
                spacing: 1.0,
                boundary: BoundaryMode::Free,
            },
            generators: None,
            scan: ScanSettings {
                target_fraction: 0.6,
                tolerance: 0.01,
                bracket_lo: 0.8,
                bracket_hi: 1.5,
                replications: 100,
            },
            sinr: SinrSettings {
                power: 1.0,
                noise: 2.2f64.powi(-4),
                threshold: 1.0,
                attenuation: Attenuation::InversePoly { alpha: 4.0 },
                backbone: GeneratorSpec::Poisson,
                interferers: InterfererSetting::Independent,
                interferer_intensity: lambda,
                gamma_hi: 0.1,
                gamma_tolerance: 0.001,
                criterion: CriterionSetting::Fraction,
                crossing_margin: 1.2,
                grid_cells: 80,
            },
            diagnostics: DiagnosticsSettings {
                replications: 10000,
                void_radius: 1.0,
                ripley_radius: 0.5,
                laplace_s: vec![-1.0, -0.5, 0.5],
                laplace_probes: vec![1, 2, 4],
                chi_square_seeds: 100,
                chi_square_level: 0.01,
                fading_rate: 1.0,
                capacity_f0: 1.0,
                capacity_threshold: 1.0,
            },
            bounds: BoundsSettings {
                intensities: vec![0.5, 1.0, lambda, 2.0, 4.0],
                dimension: 2,
                radii: vec![0.05, 0.1, 0.15],
                path_lengths: vec![1, 2, 5, 10],
                empirical_rho: vec![1.04, 1.07, 1.09, 1.12],
            },
        }
    }
}

/// Splits on commas outside parentheses.
fn split_list(value: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in value.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(value[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(value[start..].trim());
    out.retain(|s| !s.is_empty());
    out
}

struct Entries {
    map: BTreeMap<String, (usize, String)>,
}

impl Entries {
    fn take<V: FromStr>(&mut self, key: &str, slot: &mut V) -> Result<()>
    where
        V::Err: fmt::Display,
    {
        if let Some((line, raw)) = self.map.remove(key) {
            *slot = raw
                .parse()
                .map_err(|e| Error::config(line, format!("{key}: cannot parse {raw:?}: {e}")))?;
        }
        Ok(())
    }

    fn take_with<V>(&mut self, key: &str, slot: &mut V, parse: impl Fn(&str) -> Result<V>) -> Result<()> {
        if let Some((line, raw)) = self.map.remove(key) {
            *slot = parse(&raw).map_err(|e| match e {
                Error::Config { .. } => e,
                other => Error::config(line, format!("{key}: {other}")),
            })?;
        }
        Ok(())
    }

    fn take_list<V: FromStr>(&mut self, key: &str, slot: &mut Vec<V>) -> Result<()>
    where
        V::Err: fmt::Display,
    {
        if let Some((line, raw)) = self.map.remove(key) {
            *slot = split_list(&raw)
                .into_iter()
                .map(|item| {
                    item.parse()
                        .map_err(|e| Error::config(line, format!("{key}: cannot parse {item:?}: {e}")))
                })
                .collect::<Result<_>>()?;
        }
        Ok(())
    }
}

fn parse_float(raw: &str) -> Result<f64> {
    let t = raw.trim();
    // `2/sqrt(3)` style values are common for lattice intensities
    if let Some((num, den)) = t.split_once('/') {
        let value = |s: &str| -> Result<f64> {
            let s = s.trim();
            if let Some(inner) = s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
                return Ok(parse_float(inner)?.sqrt());
            }
            s.parse::<f64>().map_err(|e| Error::param(format!("{s:?}: {e}")))
        };
        return Ok(value(num)? / value(den)?);
    }
    if let Some(inner) = t.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        return Ok(parse_float(inner)?.sqrt());
    }
    t.parse::<f64>().map_err(|e| Error::param(format!("{t:?}: {e}")))
}

#[derive(Clone, Copy)]
struct Real(f64);

impl FromStr for Real {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_float(s).map(Real)
    }
}

impl ExperimentConfig {
    /// Parses the whole text before any value is used; unknown keys,
    /// duplicates and malformed lines are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| Error::config(line, format!("expected key = value, got {content:?}")))?;
            let key = key.trim().to_string();
            if key.is_empty() {
                return Err(Error::config(line, "empty key"));
            }
            if let Some((first, _)) = map.insert(key.clone(), (line, value.trim().to_string())) {
                return Err(Error::config(line, format!("duplicate key {key} (first on line {first})")));
            }
        }
        let mut e = Entries { map };
        let mut c = Self::default();
        let real = |raw: &str| parse_float(raw);
        e.take_with("experiment", &mut c.experiment, |raw| raw.parse().map(Some))?;
        e.take("seed", &mut c.master_seed)?;
        e.take_with("output", &mut c.output, |raw| Ok(Some(PathBuf::from(raw))))?;

        e.take("window.columns", &mut c.window.columns)?;
        e.take("window.rows", &mut c.window.rows)?;
        e.take_with("window.spacing", &mut c.window.spacing, real)?;
        e.take("window.boundary", &mut c.window.boundary)?;
        e.take_with("generators", &mut c.generators, |raw| {
            split_list(raw).into_iter().map(str::parse).collect::<Result<Vec<_>>>().map(Some)
        })?;

        let s = &mut c.scan;
        e.take_with("scan.target_fraction", &mut s.target_fraction, real)?;
        e.take_with("scan.tolerance", &mut s.tolerance, real)?;
        e.take_with("scan.bracket_lo", &mut s.bracket_lo, real)?;
        e.take_with("scan.bracket_hi", &mut s.bracket_hi, real)?;
        e.take("scan.replications", &mut s.replications)?;

        let q = &mut c.sinr;
        e.take_with("sinr.power", &mut q.power, real)?;
        e.take_with("sinr.noise", &mut q.noise, real)?;
        e.take_with("sinr.threshold", &mut q.threshold, real)?;
        e.take("sinr.attenuation", &mut q.attenuation)?;
        e.take("sinr.backbone", &mut q.backbone)?;
        e.take_with("sinr.interferers", &mut q.interferers, |raw| match raw {
            "independent" => Ok(InterfererSetting::Independent),
            "backbone" => Ok(InterfererSetting::Backbone),
            "backbone_and_independent" => Ok(InterfererSetting::BackboneAndIndependent),
            other => Err(Error::param(format!("unknown interferer mode {other:?}"))),
        })?;
        e.take_with("sinr.interferer_intensity", &mut q.interferer_intensity, real)?;
        e.take_with("sinr.gamma_hi", &mut q.gamma_hi, real)?;
        e.take_with("sinr.gamma_tolerance", &mut q.gamma_tolerance, real)?;
        e.take_with("sinr.criterion", &mut q.criterion, |raw| match raw {
            "fraction" => Ok(CriterionSetting::Fraction),
            "crossing" => Ok(CriterionSetting::Crossing),
            other => Err(Error::param(format!("unknown criterion {other:?}"))),
        })?;
        e.take_with("sinr.crossing_margin", &mut q.crossing_margin, real)?;
        e.take("sinr.grid_cells", &mut q.grid_cells)?;

        let d = &mut c.diagnostics;
        e.take("diagnostics.replications", &mut d.replications)?;
        e.take_with("diagnostics.void_radius", &mut d.void_radius, real)?;
        e.take_with("diagnostics.ripley_radius", &mut d.ripley_radius, real)?;
        let mut laplace_s: Vec<Real> = d.laplace_s.iter().map(|&v| Real(v)).collect();
        e.take_list("diagnostics.laplace_s", &mut laplace_s)?;
        d.laplace_s = laplace_s.into_iter().map(|r| r.0).collect();
        e.take_list("diagnostics.laplace_probes", &mut d.laplace_probes)?;
        e.take("diagnostics.chi_square_seeds", &mut d.chi_square_seeds)?;
        e.take_with("diagnostics.chi_square_level", &mut d.chi_square_level, real)?;
        e.take_with("diagnostics.fading_rate", &mut d.fading_rate, real)?;
        e.take_with("diagnostics.capacity_f0", &mut d.capacity_f0, real)?;
        e.take_with("diagnostics.capacity_threshold", &mut d.capacity_threshold, real)?;

        let b = &mut c.bounds;
        let mut reals: Vec<Real> = b.intensities.iter().map(|&v| Real(v)).collect();
        e.take_list("bounds.intensities", &mut reals)?;
        b.intensities = reals.into_iter().map(|r| r.0).collect();
        e.take("bounds.dimension", &mut b.dimension)?;
        let mut reals: Vec<Real> = b.radii.iter().map(|&v| Real(v)).collect();
        e.take_list("bounds.radii", &mut reals)?;
        b.radii = reals.into_iter().map(|r| r.0).collect();
        e.take_list("bounds.path_lengths", &mut b.path_lengths)?;
        let mut reals: Vec<Real> = b.empirical_rho.iter().map(|&v| Real(v)).collect();
        e.take_list("bounds.empirical_rho", &mut reals)?;
        b.empirical_rho = reals.into_iter().map(|r| r.0).collect();

        if let Some((key, (line, _))) = e.map.into_iter().next() {
            return Err(Error::config(line, format!("unknown key {key}")));
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }
}
