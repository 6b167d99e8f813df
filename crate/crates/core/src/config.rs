//! Run configuration: defaults, optional config file, command-line flags.
//!
//! Flags override the file, the file overrides defaults. Every problem found
//! is collected into a single [`ConfigError::Invalid`]. The resolved
//! configuration can be echoed back as a file that reproduces the run.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::entry::{PhaseConvention, PopulationModel};
use crate::model::{parse_energy, parse_length, Angle, ChannelShape, CrystalChannel, LevelStructure};
use crate::radiation::{AngularWeight, MAX_RATIO_HARMONIC};
use crate::scans::{AngleGrid, Estimator, MAX_SCAN_FRACTION, MIN_TABLE_ENERGY};

pub const SCHEMA: &str = "chanrad/1";

/// Environment variable naming a directory that relative output paths are
/// resolved against.
pub const OUTPUT_DIR_ENV: &str = "CHANRAD_OUTPUT_DIR";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error(transparent)]
    Cli(#[from] clap::Error),

    #[error("cannot read config file {}: {source}", path.display())]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid configuration:{}", .0.iter().map(|p| format!("\n  - {p}")).collect::<String>())]
    Invalid(Vec<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Command {
    /// Level structure and 𝒢₁ per beam energy.
    Table,
    /// Level populations against entrance angle.
    Populations,
    /// First-principles line shapes.
    Spectrum,
    /// 𝒢 against entrance angle.
    Gscan,
    /// 𝒢 averaged over beam divergence.
    Beamavg,
    /// Positron vs electron level ladders.
    ElectronCompare,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Table => "table",
            Command::Populations => "populations",
            Command::Spectrum => "spectrum",
            Command::Gscan => "gscan",
            Command::Beamavg => "beamavg",
            Command::ElectronCompare => "electron-compare",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMode {
    Coherent,
    Incoherent,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// V₀, eV.
    pub well_depth: f64,
    /// d, Å.
    pub spacing: f64,
    pub shape: ChannelShape,
    /// cosh⁻² width for the electron comparison, Å.
    pub width: Option<f64>,
    /// Beam energies, eV.
    pub energies: Vec<f64>,
    pub theta_in: Angle,
    pub sigma: Angle,
    pub grid: AngleGrid,
    pub harmonic: usize,
    pub j_max: usize,
    pub model: PopulationModel,
    pub phase: PhaseConvention,
    pub weight: AngularWeight,
    pub mode: SpectrumMode,
    pub grid_size: usize,
    pub quadrature_points: usize,
    pub estimator: Estimator,
    /// Measured first-harmonic peaks, eV, one per energy.
    pub omega_exp: Option<Vec<f64>>,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    /// Significant digits in emitted numbers.
    pub precision: usize,
}

impl RunConfig {
    pub fn channel(&self) -> CrystalChannel {
        CrystalChannel {
            name: "channel".into(),
            well_depth: self.well_depth,
            spacing: self.spacing,
            shape: self.shape,
        }
    }

    /// Configuration as a flat object that [`parse_config`] accepts back.
    pub fn echo(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command.name()));
        m.insert("v0".into(), json!(format!("{}eV", self.well_depth)));
        m.insert("spacing".into(), json!(format!("{}A", self.spacing)));
        m.insert("shape".into(), json!(self.shape.name()));
        if let Some(w) = self.width {
            m.insert("width".into(), json!(format!("{w}A")));
        }
        let energies: Vec<String> = self.energies.iter().map(|e| format!("{e}eV")).collect();
        m.insert("energy".into(), json!(energies.join(",")));
        m.insert("theta_in".into(), json!(self.theta_in.to_string()));
        m.insert("sigma".into(), json!(self.sigma.to_string()));
        m.insert(
            "grid".into(),
            json!(format!("{}:{}:{}", self.grid.start, self.grid.stop, self.grid.count)),
        );
        m.insert("harmonic".into(), json!(self.harmonic));
        m.insert("j_max".into(), json!(self.j_max));
        m.insert("model".into(), json!(model_name(self.model)));
        m.insert("phase".into(), json!(phase_name(self.phase)));
        m.insert("weight".into(), json!(weight_name(self.weight)));
        m.insert("mode".into(), json!(mode_name(self.mode)));
        m.insert("grid_size".into(), json!(self.grid_size));
        m.insert("quadrature_points".into(), json!(self.quadrature_points));
        m.insert("estimator".into(), json!(estimator_name(self.estimator)));
        if let Some(exp) = &self.omega_exp {
            let v: Vec<String> = exp.iter().map(|e| format!("{e}eV")).collect();
            m.insert("omega_exp".into(), json!(v.join(",")));
        }
        m.insert(
            "format".into(),
            json!(match self.format {
                OutputFormat::Csv => "csv",
                OutputFormat::Json => "json",
            }),
        );
        if let Some(p) = &self.output {
            m.insert("output".into(), json!(p.display().to_string()));
        }
        m.insert("precision".into(), json!(self.precision));
        Value::Object(m)
    }

    /// Per-energy absolute angles: θ_L, θ_in and the grid end points, rad.
    pub fn resolved_angles(&self) -> Value {
        let channel = self.channel();
        let rows: Vec<Value> = self
            .energies
            .iter()
            .filter_map(|&e| LevelStructure::new(&channel, e).ok())
            .map(|ls| {
                json!({
                    "energy_eV": ls.energy,
                    "theta_L_rad": ls.theta_l,
                    "theta_in_rad": self.theta_in.resolve(ls.theta_l),
                    "sigma_rad": self.sigma.resolve(ls.theta_l),
                    "grid_start_rad": self.grid.start.resolve(ls.theta_l),
                    "grid_stop_rad": self.grid.stop.resolve(ls.theta_l),
                })
            })
            .collect();
        Value::Array(rows)
    }
}

pub fn model_name(m: PopulationModel) -> &'static str {
    match m {
        PopulationModel::Hermite => "hermite",
        PopulationModel::Glauber => "glauber",
    }
}

pub fn phase_name(p: PhaseConvention) -> &'static str {
    match p {
        PhaseConvention::LiteralInPhase => "literal",
        PhaseConvention::MagnitudeAligned => "aligned",
    }
}

pub fn weight_name(w: AngularWeight) -> &'static str {
    match w {
        AngularWeight::Flat => "flat",
        AngularWeight::DipolePlanar => "dipole-planar",
    }
}

pub fn mode_name(m: SpectrumMode) -> &'static str {
    match m {
        SpectrumMode::Coherent => "coherent",
        SpectrumMode::Incoherent => "incoherent",
        SpectrumMode::Both => "both",
    }
}

pub fn estimator_name(e: Estimator) -> &'static str {
    match e {
        Estimator::Eq7 => "eq7",
        Estimator::N0 => "n0",
    }
}

/// Command line. Every value is taken as text and validated afterwards so
/// that all problems are reported together.
#[derive(Debug, Parser)]
#[command(
    name = "chanrad",
    version,
    about = "Coherent positron channeling radiation in a parabolic planar channel"
)]
pub struct CliArgs {
    /// What to compute.
    #[arg(value_enum)]
    pub command: Command,

    /// Config file (TOML, or JSON as echoed in output metadata).
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Well depth V₀ (e.g. 23eV).
    #[arg(long, allow_hyphen_values = true)]
    pub v0: Option<String>,
    /// Interplanar spacing d (e.g. 1.26A).
    #[arg(long, allow_hyphen_values = true)]
    pub spacing: Option<String>,
    /// Channel shape: parabolic.
    #[arg(long)]
    pub shape: Option<String>,
    /// cosh⁻² width b for the electron comparison (default d/4).
    #[arg(long, allow_hyphen_values = true)]
    pub width: Option<String>,
    /// Beam energies, comma separated (e.g. 4GeV,10GeV).
    #[arg(long, allow_hyphen_values = true)]
    pub energy: Option<String>,
    /// Entrance angle (e.g. 31urad or 0.5L).
    #[arg(long, allow_hyphen_values = true)]
    pub theta_in: Option<String>,
    /// Beam divergence σ (e.g. 10urad).
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    /// Angle grid start:stop:count (e.g. 0:0.85L:100).
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Harmonic order j.
    #[arg(long, allow_hyphen_values = true)]
    pub harmonic: Option<String>,
    /// Highest harmonic in the ratio summary.
    #[arg(long, allow_hyphen_values = true)]
    pub j_max: Option<String>,
    /// Population model: glauber | hermite.
    #[arg(long)]
    pub model: Option<String>,
    /// Phase convention: aligned | literal.
    #[arg(long)]
    pub phase: Option<String>,
    /// Angular weight: flat | dipole-planar.
    #[arg(long)]
    pub weight: Option<String>,
    /// Spectrum mode: coherent | incoherent | both.
    #[arg(long)]
    pub mode: Option<String>,
    /// Spectrum grid size.
    #[arg(long, allow_hyphen_values = true)]
    pub grid_size: Option<String>,
    /// Beam-average quadrature points.
    #[arg(long, allow_hyphen_values = true)]
    pub quadrature_points: Option<String>,
    /// Beam-average estimator: n0 | eq7.
    #[arg(long)]
    pub estimator: Option<String>,
    /// Measured first-harmonic peaks, one per energy (e.g. 23MeV,42MeV).
    #[arg(long, allow_hyphen_values = true)]
    pub omega_exp: Option<String>,
    /// Output format: csv | json.
    #[arg(long)]
    pub format: Option<String>,
    /// Output file (default: standard output).
    #[arg(long, short)]
    pub output: Option<String>,
    /// Significant digits.
    #[arg(long, allow_hyphen_values = true)]
    pub precision: Option<String>,
}

/// A config-file scalar; numbers and lists are accepted where text is.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Setting {
    Int(i64),
    Float(f64),
    Text(String),
    List(Vec<Setting>),
}

impl Setting {
    fn into_text(self) -> String {
        match self {
            Setting::Int(i) => i.to_string(),
            Setting::Float(f) => f.to_string(),
            Setting::Text(s) => s,
            Setting::List(v) => v.into_iter().map(Setting::into_text).collect::<Vec<_>>().join(","),
        }
    }
}

#[derive(Debug, Default, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub command: Option<Setting>,
    pub v0: Option<Setting>,
    pub spacing: Option<Setting>,
    pub shape: Option<Setting>,
    pub width: Option<Setting>,
    pub energy: Option<Setting>,
    pub theta_in: Option<Setting>,
    pub sigma: Option<Setting>,
    pub grid: Option<Setting>,
    pub harmonic: Option<Setting>,
    pub j_max: Option<Setting>,
    pub model: Option<Setting>,
    pub phase: Option<Setting>,
    pub weight: Option<Setting>,
    pub mode: Option<Setting>,
    pub grid_size: Option<Setting>,
    pub quadrature_points: Option<Setting>,
    pub estimator: Option<Setting>,
    pub omega_exp: Option<Setting>,
    pub format: Option<Setting>,
    pub output: Option<Setting>,
    pub precision: Option<Setting>,
}

impl ConfigFile {
    /// JSON when the text starts with `{`, TOML otherwise.
    pub fn parse(text: &str) -> Result<Self, String> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| e.to_string())
        } else {
            toml::from_str(text).map_err(|e| e.to_string())
        }
    }
}

/// Default beam energies, eV.
pub const DEFAULT_ENERGIES: [f64; 4] = [4e9, 6e9, 10e9, 14e9];
/// Measured first-harmonic peak energies at [`DEFAULT_ENERGIES`], eV.
pub const DEFAULT_OMEGA_EXP: [f64; 4] = [23e6, 42e6, 90e6, 120e6];

/// Builds a [`RunConfig`] from command-line arguments (program name first)
/// and optional config-file text. When `file` is `None` and `--config` is
/// given, that file is read.
pub fn parse_config<I, T>(args: I, file: Option<&str>) -> Result<RunConfig, ConfigError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = CliArgs::try_parse_from(args)?;
    let file_text = match (file, &cli.config) {
        (Some(t), _) => Some(t.to_string()),
        (None, Some(path)) => Some(std::fs::read_to_string(path).map_err(|source| ConfigError::File {
            path: path.clone(),
            source,
        })?),
        (None, None) => None,
    };
    let mut problems = Vec::new();
    let file = match file_text.map(|t| ConfigFile::parse(&t)) {
        Some(Ok(f)) => f,
        Some(Err(e)) => {
            problems.push(format!("config file: {e}"));
            ConfigFile::default()
        }
        None => ConfigFile::default(),
    };
    let cfg = resolve(cli, file, &mut problems);
    if problems.is_empty() {
        Ok(cfg.expect("resolved without problems"))
    } else {
        Err(ConfigError::Invalid(problems))
    }
}

fn pick(flag: Option<String>, file: Option<Setting>) -> Option<String> {
    flag.or_else(|| file.map(Setting::into_text))
}

fn field<T>(
    problems: &mut Vec<String>,
    name: &str,
    raw: Option<String>,
    default: T,
    parse: impl FnOnce(&str) -> Result<T, String>,
) -> T {
    match raw {
        None => default,
        Some(s) => parse(&s).unwrap_or_else(|e| {
            problems.push(format!("{name}: {e}"));
            default
        }),
    }
}

fn parse_count(s: &str) -> Result<usize, String> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| format!("`{s}` is not a nonnegative integer"))
}

fn parse_list<T>(s: &str, item: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(item).collect()
}

fn parse_grid(s: &str) -> Result<AngleGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts[..] else {
        return Err(format!("`{s}` is not start:stop:count"));
    };
    Ok(AngleGrid {
        start: start.parse()?,
        stop: stop.parse()?,
        count: parse_count(count)?,
    })
}

fn choose<T: Copy>(s: &str, options: &[(&str, T)]) -> Result<T, String> {
    let key = s.trim().to_ascii_lowercase();
    options
        .iter()
        .find(|(name, _)| *name == key)
        .map(|&(_, v)| v)
        .ok_or_else(|| {
            let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
            format!("`{s}` is not one of {}", names.join(", "))
        })
}

fn resolve(cli: CliArgs, file: ConfigFile, problems: &mut Vec<String>) -> Option<RunConfig> {
    let command = cli.command;
    if let Some(fc) = file.command.map(Setting::into_text) {
        if fc != command.name() {
            problems.push(format!("command: config file is for `{fc}`, invoked as `{command}`"));
        }
    }

    let well_depth = field(problems, "v0", pick(cli.v0, file.v0), 23.0, parse_energy);
    let spacing = field(problems, "spacing", pick(cli.spacing, file.spacing), 1.26, parse_length);
    let shape_name = field(problems, "shape", pick(cli.shape, file.shape), "parabolic", |s| {
        choose(s, &[("parabolic", "parabolic"), ("poschl-teller", "poschl-teller")])
    });
    let width = field(problems, "width", pick(cli.width, file.width), None, |s| {
        parse_length(s).map(Some)
    });

    let energy_raw = pick(cli.energy, file.energy);
    let energy_given = energy_raw.is_some();
    let default_energies = match command {
        Command::Populations => vec![10e9],
        _ => DEFAULT_ENERGIES.to_vec(),
    };
    let energies = field(problems, "energy", energy_raw, default_energies, |s| {
        parse_list(s, parse_energy)
    });
    let theta_in = field(
        problems,
        "theta_in",
        pick(cli.theta_in, file.theta_in),
        Angle::Radians(31e-6),
        |s| s.parse(),
    );
    let sigma = field(
        problems,
        "sigma",
        pick(cli.sigma, file.sigma),
        Angle::Radians(10e-6),
        |s| s.parse(),
    );
    let default_grid = AngleGrid {
        start: Angle::Lindhard(0.0),
        stop: Angle::Lindhard(0.85),
        count: 100,
    };
    let grid = field(problems, "grid", pick(cli.grid, file.grid), default_grid, parse_grid);
    let harmonic = field(problems, "harmonic", pick(cli.harmonic, file.harmonic), 1, parse_count);
    let j_max = field(problems, "j_max", pick(cli.j_max, file.j_max), 3, parse_count);
    let model = field(
        problems,
        "model",
        pick(cli.model, file.model),
        PopulationModel::Glauber,
        |s| {
            choose(
                s,
                &[
                    ("glauber", PopulationModel::Glauber),
                    ("hermite", PopulationModel::Hermite),
                ],
            )
        },
    );
    let phase = field(
        problems,
        "phase",
        pick(cli.phase, file.phase),
        PhaseConvention::MagnitudeAligned,
        |s| {
            choose(
                s,
                &[
                    ("aligned", PhaseConvention::MagnitudeAligned),
                    ("magnitude-aligned", PhaseConvention::MagnitudeAligned),
                    ("literal", PhaseConvention::LiteralInPhase),
                    ("literal-in-phase", PhaseConvention::LiteralInPhase),
                ],
            )
        },
    );
    let weight = field(
        problems,
        "weight",
        pick(cli.weight, file.weight),
        AngularWeight::Flat,
        |s| {
            choose(
                s,
                &[
                    ("flat", AngularWeight::Flat),
                    ("dipole-planar", AngularWeight::DipolePlanar),
                ],
            )
        },
    );
    let mode = field(problems, "mode", pick(cli.mode, file.mode), SpectrumMode::Both, |s| {
        choose(
            s,
            &[
                ("coherent", SpectrumMode::Coherent),
                ("incoherent", SpectrumMode::Incoherent),
                ("both", SpectrumMode::Both),
            ],
        )
    });
    let grid_size = field(
        problems,
        "grid_size",
        pick(cli.grid_size, file.grid_size),
        256,
        parse_count,
    );
    let quadrature_points = field(
        problems,
        "quadrature_points",
        pick(cli.quadrature_points, file.quadrature_points),
        64,
        parse_count,
    );
    let estimator = field(
        problems,
        "estimator",
        pick(cli.estimator, file.estimator),
        Estimator::N0,
        |s| choose(s, &[("n0", Estimator::N0), ("eq7", Estimator::Eq7)]),
    );
    let omega_exp_raw = pick(cli.omega_exp, file.omega_exp);
    let default_exp = (!energy_given && command == Command::Table).then(|| DEFAULT_OMEGA_EXP.to_vec());
    let omega_exp = field(problems, "omega_exp", omega_exp_raw, default_exp, |s| {
        parse_list(s, parse_energy).map(Some)
    });
    let format = field(
        problems,
        "format",
        pick(cli.format, file.format),
        OutputFormat::Csv,
        |s| choose(s, &[("csv", OutputFormat::Csv), ("json", OutputFormat::Json)]),
    );
    let output = pick(cli.output, file.output).map(PathBuf::from);
    let precision = field(
        problems,
        "precision",
        pick(cli.precision, file.precision),
        9,
        parse_count,
    );

    // physics ranges
    if !(well_depth > 0.0) {
        problems.push(format!("v0: well depth must be > 0 eV, got {well_depth}"));
    }
    if !(spacing > 0.0) {
        problems.push(format!("spacing: must be > 0 Å, got {spacing}"));
    }
    if let Some(w) = width {
        if !(w > 0.0) {
            problems.push(format!("width: must be > 0 Å, got {w}"));
        }
    }
    if shape_name != "parabolic" && command != Command::ElectronCompare {
        problems.push(format!(
            "shape: `{command}` models the positron channel and needs a parabolic shape (use --width for the electron well)"
        ));
    }
    if energies.is_empty() {
        problems.push("energy: at least one energy is required".into());
    }
    let min_energy = match command {
        Command::Table => MIN_TABLE_ENERGY,
        _ => crate::model::MIN_BEAM_ENERGY,
    };
    for &e in &energies {
        if !(e >= min_energy) {
            problems.push(format!("energy: {e} eV is below the minimum {min_energy:e} eV"));
        }
    }
    if theta_in_value(theta_in) < 0.0 {
        problems.push(format!("theta_in: must be >= 0, got {theta_in}"));
    }
    if !(theta_in_value(sigma) > 0.0) {
        problems.push(format!("sigma: must be > 0, got {sigma}"));
    }
    if grid.count == 0 {
        problems.push("grid: count must be >= 1".into());
    }
    if harmonic < 1 {
        problems.push("harmonic: must be >= 1".into());
    }
    if !(1..=MAX_RATIO_HARMONIC).contains(&j_max) {
        problems.push(format!("j_max: must be in 1..={MAX_RATIO_HARMONIC}, got {j_max}"));
    }
    if grid_size < 16 {
        problems.push(format!("grid_size: must be >= 16, got {grid_size}"));
    }
    if quadrature_points < 32 {
        problems.push(format!("quadrature_points: must be >= 32, got {quadrature_points}"));
    }
    if !(1..=17).contains(&precision) {
        problems.push(format!("precision: must be in 1..=17, got {precision}"));
    }
    if let Some(exp) = &omega_exp {
        if exp.len() != energies.len() {
            problems.push(format!(
                "omega_exp: {} values for {} energies",
                exp.len(),
                energies.len()
            ));
        }
        if let Some(bad) = exp.iter().find(|&&x| !(x > 0.0)) {
            problems.push(format!("omega_exp: peak energies must be > 0, got {bad}"));
        }
    }

    // per-energy checks that need the level structure
    if problems.is_empty() {
        let channel = CrystalChannel::new("channel", well_depth, spacing, ChannelShape::Parabolic);
        match channel {
            Err(e) => problems.push(format!("channel: {e}")),
            Ok(channel) => {
                for &e in &energies {
                    match LevelStructure::new(&channel, e) {
                        Err(err) => problems.push(format!("energy: {e} eV: {err}")),
                        Ok(ls) => check_energy_dependent(command, &ls, &grid, harmonic, problems),
                    }
                }
            }
        }
    }

    problems.is_empty().then_some(RunConfig {
        command,
        well_depth,
        spacing,
        shape: ChannelShape::Parabolic,
        width,
        energies,
        theta_in,
        sigma,
        grid,
        harmonic,
        j_max,
        model,
        phase,
        weight,
        mode,
        grid_size,
        quadrature_points,
        estimator,
        omega_exp,
        format,
        output,
        precision,
    })
}

fn theta_in_value(a: Angle) -> f64 {
    match a {
        Angle::Radians(v) | Angle::Lindhard(v) => v,
    }
}

fn check_energy_dependent(
    command: Command,
    ls: &LevelStructure,
    grid: &AngleGrid,
    harmonic: usize,
    problems: &mut Vec<String>,
) {
    let e = ls.energy;
    if matches!(command, Command::Gscan | Command::Populations) {
        let thetas = grid.resolve(ls.theta_l);
        let limit = MAX_SCAN_FRACTION * ls.theta_l;
        if thetas.windows(2).any(|w| !(w[1] > w[0])) {
            problems.push(format!("grid: not strictly increasing at E = {e} eV"));
        }
        if thetas.first().is_some_and(|&t| t < 0.0) || thetas.last().is_some_and(|&t| t > limit * (1.0 + 1e-12)) {
            problems.push(format!(
                "grid: must lie within [0, {MAX_SCAN_FRACTION} θ_L] = [0, {limit:e}] rad at E = {e} eV"
            ));
        }
    }
    if matches!(command, Command::Gscan | Command::Spectrum) && harmonic > ls.n_max {
        problems.push(format!(
            "harmonic: {harmonic} exceeds n_max = {} at E = {e} eV",
            ls.n_max
        ));
    }
}

/// Resolves a relative output path against [`OUTPUT_DIR_ENV`] when set.
pub fn output_path(cfg: &RunConfig) -> Option<PathBuf> {
    let p = cfg.output.as_ref()?;
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if p.is_relative() => Some(Path::new(&dir).join(p)),
        _ => Some(p.clone()),
    }
}
