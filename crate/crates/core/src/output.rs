//! Tabular scan products and their CSV / JSON serialization.
//!
//! CSV: `#`-prefixed metadata preamble (schema, command, config echo,
//! resolved angles, summary), one header row, LF line endings, numbers in
//! scientific notation with the configured significant digits.
//!
//! JSON: `{schema, config, resolved, summary, columns, data}` where `data`
//! holds one object per row, numbers rounded to the same digits.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Number, Value};

use crate::config::{model_name, OutputFormat, RunConfig, SCHEMA};
use crate::error::{Error, Result};
use crate::radiation::SpectrumSeries;
use crate::scans::{BeamAverage, ElectronComparison, EnergyTable, PopulationGrid, ScalingReport, ThetaScan};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanKind {
    EnergyTable,
    ThetaScan,
    PopulationGrid,
    BeamAverage,
    Spectrum,
    ElectronCompare,
}

impl ScanKind {
    pub fn name(self) -> &'static str {
        match self {
            ScanKind::EnergyTable => "energy_table",
            ScanKind::ThetaScan => "theta_scan",
            ScanKind::PopulationGrid => "population_grid",
            ScanKind::BeamAverage => "beam_average",
            ScanKind::Spectrum => "spectrum",
            ScanKind::ElectronCompare => "electron_compare",
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            ScanKind::EnergyTable => &[
                "energy_eV",
                "omega_eV",
                "n_max",
                "theta_L_rad",
                "gamma",
                "theta_in_rad",
                "omega1_dipole_eV",
                "G1",
                "omega1_exp_eV",
                "dipole_over_exp",
            ],
            ScanKind::ThetaScan => &[
                "energy_eV",
                "theta_rad",
                "theta_over_thetaL",
                "G_eq7",
                "G_n0_estimate",
                "G_sqrt_estimate",
            ],
            ScanKind::PopulationGrid => &["energy_eV", "theta_rad", "theta_over_thetaL", "n", "P_n"],
            ScanKind::BeamAverage => &[
                "energy_eV",
                "sigma_rad",
                "estimator",
                "G_avg",
                "quadrature_points",
                "relative_change",
                "converged",
            ],
            ScanKind::Spectrum => &["energy_eV", "j", "omega_eV", "x", "coherent", "incoherent", "ratio"],
            ScanKind::ElectronCompare => &[
                "energy_eV",
                "positron_levels",
                "positron_deviation",
                "positron_spacing_eV",
                "electron_levels",
                "electron_deviation",
                "electron_spacing_first_eV",
                "electron_spacing_last_eV",
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

/// Rows of one scan product, ready for emission. Concatenating per-energy
/// series of the same kind gives the multi-energy output.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanSeries {
    pub kind: ScanKind,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Cell)>,
}

impl ScanSeries {
    pub fn new(kind: ScanKind) -> Self {
        Self {
            kind,
            columns: kind.columns().to_vec(),
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    /// Appends the rows and summary of `other`, which must be the same kind
    /// with the same columns.
    pub fn extend(&mut self, other: ScanSeries) {
        assert_eq!(self.kind, other.kind, "cannot merge different scan kinds");
        assert_eq!(self.columns, other.columns, "cannot merge different column sets");
        self.rows.extend(other.rows);
        self.summary.extend(other.summary);
    }

    /// Keeps only the named columns, in their current order.
    pub fn select(mut self, keep: &[&str]) -> Self {
        let idx: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .filter(|(_, c)| keep.contains(c))
            .map(|(i, _)| i)
            .collect();
        self.columns = idx.iter().map(|&i| self.columns[i]).collect();
        self.rows = self
            .rows
            .into_iter()
            .map(|row| idx.iter().map(|&i| row[i].clone()).collect())
            .collect();
        self
    }
}

impl From<&EnergyTable> for ScanSeries {
    fn from(t: &EnergyTable) -> Self {
        let mut s = ScanSeries::new(ScanKind::EnergyTable);
        s.rows = t
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.energy.into(),
                    r.omega.into(),
                    r.n_max.into(),
                    r.theta_l.into(),
                    r.gamma.into(),
                    r.theta_in.into(),
                    r.omega1_dipole.into(),
                    r.g1.into(),
                    r.omega1_exp.into(),
                    r.dipole_over_exp.into(),
                ]
            })
            .collect();
        s
    }
}

impl From<&ThetaScan> for ScanSeries {
    fn from(t: &ThetaScan) -> Self {
        let mut s = ScanSeries::new(ScanKind::ThetaScan);
        s.rows = t
            .points
            .iter()
            .map(|p| {
                vec![
                    t.energy.into(),
                    p.theta.into(),
                    p.theta_over_l.into(),
                    p.g.into(),
                    p.g_n0_estimate.into(),
                    p.g_sqrt_estimate.into(),
                ]
            })
            .collect();
        let tag = energy_tag(t.energy);
        s.summary
            .push((format!("small_angle_slope[{tag}]"), t.small_angle_slope.into()));
        s
    }
}

impl ScanSeries {
    /// Adds the fitted exponents of a [`ScalingReport`] to the summary.
    pub fn with_scaling(mut self, energy: f64, report: &ScalingReport) -> Self {
        let tag = energy_tag(energy);
        let entries: [(&str, Cell); 9] = [
            ("points_used", report.points_used.into()),
            ("g_exponent", report.g_exponent.into()),
            ("g_exponent_claimed", report.claimed_g_exponent.into()),
            ("g_agrees", Cell::Bool(report.g_agrees)),
            ("coherent_exponent", report.coherent_exponent.into()),
            ("coherent_exponent_claimed", report.claimed_coherent_exponent.into()),
            ("coherent_agrees", Cell::Bool(report.coherent_agrees)),
            ("incoherent_exponent", report.incoherent_exponent.into()),
            ("incoherent_agrees", Cell::Bool(report.incoherent_agrees)),
        ];
        for (k, v) in entries {
            self.summary.push((format!("{k}[{tag}]"), v));
        }
        self
    }
}

impl From<&PopulationGrid> for ScanSeries {
    fn from(g: &PopulationGrid) -> Self {
        let mut s = ScanSeries::new(ScanKind::PopulationGrid);
        for (theta, col) in g.thetas.iter().zip(&g.columns) {
            for (n, &p) in col.iter().enumerate() {
                s.rows.push(vec![
                    g.energy.into(),
                    (*theta).into(),
                    (theta / g.theta_l).into(),
                    n.into(),
                    p.into(),
                ]);
            }
        }
        let tag = energy_tag(g.energy);
        s.summary
            .push((format!("model[{tag}]"), Cell::Text(model_name(g.model).into())));
        s.summary.push((format!("n_max[{tag}]"), g.n_max.into()));
        s
    }
}

impl From<&BeamAverage> for ScanSeries {
    fn from(b: &BeamAverage) -> Self {
        let mut s = ScanSeries::new(ScanKind::BeamAverage);
        s.rows.push(vec![
            b.energy.into(),
            b.sigma.into(),
            Cell::Text(crate::config::estimator_name(b.estimator).into()),
            b.value.into(),
            b.quadrature_points.into(),
            b.relative_change.into(),
            Cell::Bool(b.converged),
        ]);
        s
    }
}

impl From<&ElectronComparison> for ScanSeries {
    fn from(c: &ElectronComparison) -> Self {
        let mut s = ScanSeries::new(ScanKind::ElectronCompare);
        s.rows.push(vec![
            c.energy.into(),
            c.positron_levels.into(),
            c.positron_deviation.into(),
            c.positron_spacing.into(),
            c.electron_levels.into(),
            c.electron_deviation.into(),
            c.electron_spacing_first.into(),
            c.electron_spacing_last.into(),
        ]);
        s
    }
}

/// Pairs a coherent and an incoherent line shape computed on the same grid.
/// Either may be absent; the ratio column is filled only when both exist.
pub fn spectrum_series(
    energy: f64,
    coherent: Option<&SpectrumSeries>,
    incoherent: Option<&SpectrumSeries>,
) -> ScanSeries {
    let mut s = ScanSeries::new(ScanKind::Spectrum);
    let Some(base) = coherent.or(incoherent) else {
        return s;
    };
    for (k, p) in base.points.iter().enumerate() {
        let c = coherent.map(|c| c.points[k].intensity);
        let i = incoherent.map(|i| i.points[k].intensity);
        let ratio = match (c, i) {
            (Some(c), Some(i)) if i > 0.0 => Some(c / i),
            _ => None,
        };
        s.rows.push(vec![
            energy.into(),
            base.j.into(),
            p.omega.into(),
            (p.omega / base.omega_cutoff).into(),
            c.into(),
            i.into(),
            ratio.into(),
        ]);
    }
    let tag = energy_tag(energy);
    s.summary
        .push((format!("omega_cutoff_eV[{tag}]"), base.omega_cutoff.into()));
    let columns: Vec<&str> = match (coherent.is_some(), incoherent.is_some()) {
        (true, true) => ScanKind::Spectrum.columns().to_vec(),
        (true, false) => vec!["energy_eV", "j", "omega_eV", "x", "coherent"],
        (false, _) => vec!["energy_eV", "j", "omega_eV", "x", "incoherent"],
    };
    s.select(&columns)
}

fn energy_tag(energy: f64) -> String {
    format!("{energy:e}eV")
}

/// Rounds to `digits` significant figures and renders in scientific form.
pub fn format_float(v: f64, digits: usize) -> String {
    if v.is_finite() {
        format!("{:.*e}", digits.saturating_sub(1), v)
    } else {
        "nan".into()
    }
}

fn rounded(v: f64, digits: usize) -> f64 {
    format_float(v, digits).parse().unwrap_or(f64::NAN)
}

fn csv_cell(c: &Cell, digits: usize) -> String {
    match c {
        Cell::Float(v) => format_float(*v, digits),
        Cell::Int(i) => i.to_string(),
        Cell::Text(t) => t.clone(),
        Cell::Bool(b) => b.to_string(),
        Cell::Empty => String::new(),
    }
}

fn json_cell(c: &Cell, digits: usize) -> Value {
    match c {
        Cell::Float(v) => Number::from_f64(rounded(*v, digits)).map_or(Value::Null, Value::Number),
        Cell::Int(i) => json!(i),
        Cell::Text(t) => json!(t),
        Cell::Bool(b) => json!(b),
        Cell::Empty => Value::Null,
    }
}

/// Serializes `series` with the metadata of `cfg` in the configured format.
pub fn emit(series: &ScanSeries, cfg: &RunConfig) -> Vec<u8> {
    let digits = cfg.precision;
    match cfg.format {
        OutputFormat::Csv => {
            let mut out = String::new();
            out.push_str(&format!("# schema: {SCHEMA}\n"));
            out.push_str(&format!("# kind: {}\n", series.kind.name()));
            out.push_str(&format!("# config: {}\n", cfg.echo()));
            out.push_str(&format!("# resolved: {}\n", cfg.resolved_angles()));
            for (k, v) in &series.summary {
                out.push_str(&format!("# summary: {k} = {}\n", csv_cell(v, digits)));
            }
            out.push_str(&series.columns.join(","));
            out.push('\n');
            for row in &series.rows {
                let cells: Vec<String> = row.iter().map(|c| csv_cell(c, digits)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out.into_bytes()
        }
        OutputFormat::Json => {
            let summary: Map<String, Value> = series
                .summary
                .iter()
                .map(|(k, v)| (k.clone(), json_cell(v, digits)))
                .collect();
            let data: Vec<Value> = series
                .rows
                .iter()
                .map(|row| {
                    Value::Object(
                        series
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(c, v)| (c.to_string(), json_cell(v, digits)))
                            .collect(),
                    )
                })
                .collect();
            let doc = json!({
                "schema": SCHEMA,
                "kind": series.kind.name(),
                "config": cfg.echo(),
                "resolved": cfg.resolved_angles(),
                "summary": summary,
                "columns": series.columns,
                "data": data,
            });
            let mut bytes = serde_json::to_vec_pretty(&doc).expect("JSON values serialize");
            bytes.push(b'\n');
            bytes
        }
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory
/// and an atomic rename; nothing is left behind on failure.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.flush().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}
