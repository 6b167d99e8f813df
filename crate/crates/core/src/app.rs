//! Runs a resolved [`RunConfig`] and collects the result as a [`ScanSeries`].

use crate::config::{Command, RunConfig, SpectrumMode};
use crate::entry::entry_amplitudes;
use crate::error::Result;
use crate::model::LevelStructure;
use crate::output::{spectrum_series, ScanKind, ScanSeries};
use crate::radiation::{harmonic_ratio_table, spectrum, EmissionModel};
use crate::scans::{
    beam_average, electron_compare, energy_table, population_grid, scaling_report, theta_scan, ScanOptions,
};

pub fn run(cfg: &RunConfig) -> Result<ScanSeries> {
    let channel = cfg.channel();
    let per_energy = |kind: ScanKind, f: &dyn Fn(f64) -> Result<ScanSeries>| -> Result<ScanSeries> {
        let mut all = ScanSeries::new(kind);
        let mut first = true;
        for &e in &cfg.energies {
            let s = f(e)?;
            if first {
                // spectrum may have narrowed its column set
                all.columns = s.columns.clone();
                first = false;
            }
            all.extend(s);
        }
        Ok(all)
    };
    match cfg.command {
        Command::Table => {
            let table = energy_table(&channel, &cfg.energies, cfg.theta_in, cfg.omega_exp.as_deref())?;
            Ok(ScanSeries::from(&table))
        }
        Command::Gscan => per_energy(ScanKind::ThetaScan, &|e| {
            let ls = LevelStructure::new(&channel, e)?;
            let thetas = cfg.grid.resolve(ls.theta_l);
            let opts = ScanOptions {
                model: cfg.model,
                phase: cfg.phase,
            };
            let scan = theta_scan(&channel, e, &thetas, cfg.harmonic, opts)?;
            let series = ScanSeries::from(&scan);
            Ok(match scaling_report(&scan) {
                Ok(report) => series.with_scaling(e, &report),
                Err(_) => series,
            })
        }),
        Command::Populations => per_energy(ScanKind::PopulationGrid, &|e| {
            let ls = LevelStructure::new(&channel, e)?;
            let grid = population_grid(&channel, e, &cfg.grid.resolve(ls.theta_l), cfg.model)?;
            Ok(ScanSeries::from(&grid))
        }),
        Command::Spectrum => per_energy(ScanKind::Spectrum, &|e| {
            let ls = LevelStructure::new(&channel, e)?;
            let es =
                entry_amplitudes(&ls, cfg.theta_in.resolve(ls.theta_l), cfg.model)?.with_phase_convention(cfg.phase);
            let make = |model| spectrum(&ls, &es, cfg.harmonic, model, cfg.weight, cfg.grid_size);
            let coherent = match cfg.mode {
                SpectrumMode::Incoherent => None,
                _ => Some(make(EmissionModel::Coherent)?),
            };
            let incoherent = match cfg.mode {
                SpectrumMode::Coherent => None,
                _ => Some(make(EmissionModel::Incoherent)?),
            };
            let mut s = spectrum_series(e, coherent.as_ref(), incoherent.as_ref());
            if let Ok(ratios) = harmonic_ratio_table(&ls, &es, cfg.j_max.min(ls.n_max)) {
                for (j, r) in ratios {
                    s.summary.push((format!("G{j}_over_G1[{e:e}eV]"), r.into()));
                }
            }
            Ok(s)
        }),
        Command::Beamavg => per_energy(ScanKind::BeamAverage, &|e| {
            let ls = LevelStructure::new(&channel, e)?;
            let sigma = cfg.sigma.resolve(ls.theta_l);
            let avg = beam_average(&channel, e, sigma, cfg.estimator, cfg.quadrature_points)?;
            Ok(ScanSeries::from(&avg))
        }),
        Command::ElectronCompare => per_energy(ScanKind::ElectronCompare, &|e| {
            Ok(ScanSeries::from(&electron_compare(&channel, e, cfg.width)?))
        }),
    }
}
