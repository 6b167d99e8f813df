//! Parameter sweeps: per-energy tables, entrance-angle scans, population
//! maps, beam-divergence averages and the electron/positron ladder
//! comparison.
//!
//! Grid points are independent. They are evaluated with rayon and collected
//! in index order, so the output does not depend on the thread count.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use rayon::prelude::*;

use crate::entry::{entry_amplitudes, PhaseConvention, PopulationModel};
use crate::error::{Error, Result};
use crate::model::{
    doppler_frequency, equidistance_deviation, level_energy, poschl_teller_levels, Angle, CrystalChannel,
    LevelStructure,
};
use crate::radiation::{enhancement_factor, matrix_elements};

/// √(8π): 𝒢₁ ≈ √(8π n₀) for the aligned Poisson sum at moderate n₀.
pub const SQRT_ESTIMATE_COEFF: f64 = 5.013;

/// Largest scan angle accepted by [`theta_scan`] and [`population_grid`], in θ_L.
pub const MAX_SCAN_FRACTION: f64 = 0.9;

/// Minimum energy for [`energy_table`] rows, eV.
pub const MIN_TABLE_ENERGY: f64 = 1e9;

/// Relative change on doubling the node count above which a beam average is
/// flagged as not converged.
pub const BEAM_AVERAGE_TOLERANCE: f64 = 1e-6;

/// Exponent agreement window used by [`scaling_report`].
pub const EXPONENT_TOLERANCE: f64 = 0.1;

/// Population model and phase convention used when evaluating 𝒢.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub model: PopulationModel,
    pub phase: PhaseConvention,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            model: PopulationModel::Glauber,
            phase: PhaseConvention::MagnitudeAligned,
        }
    }
}

/// `count` evenly spaced angles from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleGrid {
    pub start: Angle,
    pub stop: Angle,
    pub count: usize,
}

impl AngleGrid {
    pub fn resolve(&self, theta_l: f64) -> Vec<f64> {
        let a = self.start.resolve(theta_l);
        let b = self.stop.resolve(theta_l);
        match self.count {
            0 => Vec::new(),
            1 => vec![a],
            n => {
                let step = (b - a) / (n - 1) as f64;
                (0..n)
                    .map(|k| if k == n - 1 { b } else { a + step * k as f64 })
                    .collect()
            }
        }
    }
}

fn validate_grid(thetas: &[f64], theta_l: f64) -> Result<()> {
    if thetas.is_empty() {
        return Err(Error::InvalidInput("angle grid is empty".into()));
    }
    if let Some(w) = thetas.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidInput(format!(
            "angle grid must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }
    let limit = MAX_SCAN_FRACTION * theta_l;
    if !(thetas[0] >= 0.0) || thetas[thetas.len() - 1] > limit * (1.0 + 1e-12) {
        return Err(Error::InvalidInput(format!(
            "angle grid must lie within [0, {MAX_SCAN_FRACTION} θ_L] = [0, {limit:e}] rad"
        )));
    }
    Ok(())
}

/// 𝒢ⱼ at one entrance angle; 1 when no level n ≥ j is populated.
fn enhancement_at(ls: &LevelStructure, theta: f64, j: usize, opts: ScanOptions) -> Result<f64> {
    let es = entry_amplitudes(ls, theta, opts.model)?.with_phase_convention(opts.phase);
    let me = matrix_elements(ls, j)?;
    match enhancement_factor(&es, &me) {
        Err(Error::EmptyPopulation { .. }) => Ok(1.0),
        other => other,
    }
}

// ---------------------------------------------------------------- table

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyRow {
    pub energy: f64,
    pub omega: f64,
    pub n_max: usize,
    pub theta_l: f64,
    pub gamma: f64,
    pub theta_in: f64,
    /// 2γ²Ω, eV.
    pub omega1_dipole: f64,
    pub g1: f64,
    pub omega1_exp: Option<f64>,
    pub dipole_over_exp: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyTable {
    pub theta_in: Angle,
    pub rows: Vec<EnergyRow>,
}

/// One row per energy, in input order. 𝒢₁ uses the Glauber model with
/// aligned phases. `omega1_exp`, when given, must match `energies` in length.
pub fn energy_table(
    channel: &CrystalChannel,
    energies: &[f64],
    theta_in: Angle,
    omega1_exp: Option<&[f64]>,
) -> Result<EnergyTable> {
    if energies.is_empty() {
        return Err(Error::InvalidInput("energy list is empty".into()));
    }
    if let Some(e) = energies.iter().find(|&&e| !(e >= MIN_TABLE_ENERGY)) {
        return Err(Error::InvalidInput(format!(
            "table energies must be >= {MIN_TABLE_ENERGY:e} eV, got {e}"
        )));
    }
    if let Some(exp) = omega1_exp {
        if exp.len() != energies.len() {
            return Err(Error::InvalidInput(format!(
                "{} experimental peak energies for {} beam energies",
                exp.len(),
                energies.len()
            )));
        }
    }
    let rows = energies
        .par_iter()
        .enumerate()
        .map(|(i, &energy)| {
            let ls = LevelStructure::new(channel, energy)?;
            let theta = theta_in.resolve(ls.theta_l);
            let omega1_dipole = doppler_frequency(&ls, 1, 0.0)?;
            let g1 = enhancement_at(&ls, theta, 1, ScanOptions::default())?;
            let omega1_exp = omega1_exp.map(|e| e[i]);
            Ok(EnergyRow {
                energy,
                omega: ls.omega,
                n_max: ls.n_max,
                theta_l: ls.theta_l,
                gamma: ls.gamma,
                theta_in: theta,
                omega1_dipole,
                g1,
                omega1_exp,
                dipole_over_exp: omega1_exp.map(|e| omega1_dipole / e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnergyTable { theta_in, rows })
}

// ---------------------------------------------------------------- θ scan

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaPoint {
    pub theta: f64,
    pub theta_over_l: f64,
    /// 𝒢ⱼ from the amplitude sums.
    pub g: f64,
    /// n₀(θ)
    pub g_n0_estimate: f64,
    /// 5.013·√n₀(θ)
    pub g_sqrt_estimate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThetaScan {
    pub energy: f64,
    pub theta_l: f64,
    pub j: usize,
    pub options: ScanOptions,
    pub points: Vec<ThetaPoint>,
    /// log-log slope of 𝒢 over the first decade of θ where 𝒢 > 1.05.
    pub small_angle_slope: Option<f64>,
}

pub fn theta_scan(
    channel: &CrystalChannel,
    energy: f64,
    thetas: &[f64],
    j: usize,
    opts: ScanOptions,
) -> Result<ThetaScan> {
    let ls = LevelStructure::new(channel, energy)?;
    validate_grid(thetas, ls.theta_l)?;
    let points = thetas
        .par_iter()
        .map(|&theta| {
            let n0 = ls.mean_level(theta);
            Ok(ThetaPoint {
                theta,
                theta_over_l: theta / ls.theta_l,
                g: enhancement_at(&ls, theta, j, opts)?,
                g_n0_estimate: n0,
                g_sqrt_estimate: SQRT_ESTIMATE_COEFF * n0.sqrt(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let small_angle_slope = first_decade_slope(&points);
    Ok(ThetaScan {
        energy,
        theta_l: ls.theta_l,
        j,
        options: opts,
        points,
        small_angle_slope,
    })
}

fn first_decade_slope(points: &[ThetaPoint]) -> Option<f64> {
    let start = points.iter().find(|p| p.g > 1.05 && p.theta > 0.0)?.theta;
    let (xs, ys): (Vec<f64>, Vec<f64>) = points
        .iter()
        .filter(|p| p.theta >= start && p.theta <= 10.0 * start)
        .map(|p| (p.theta.ln(), p.g.ln()))
        .unzip();
    least_squares_slope(&xs, &ys)
}

pub(crate) fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Fitted small-angle exponents set against the claimed ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingReport {
    pub points_used: usize,
    /// Fitted exponent of 𝒢(θ).
    pub g_exponent: f64,
    /// Fitted exponent of I_coh ∝ 𝒢·n₀.
    pub coherent_exponent: f64,
    /// Fitted exponent of I_incoh ∝ n₀.
    pub incoherent_exponent: f64,
    pub claimed_g_exponent: f64,
    pub claimed_coherent_exponent: f64,
    pub claimed_incoherent_exponent: f64,
    pub g_agrees: bool,
    pub coherent_agrees: bool,
    pub incoherent_agrees: bool,
}

/// Minimum number of scan points in (0, 0.3 θ_L] for [`scaling_report`].
pub const SCALING_MIN_POINTS: usize = 10;

pub fn scaling_report(scan: &ThetaScan) -> Result<ScalingReport> {
    let used: Vec<&ThetaPoint> = scan
        .points
        .iter()
        .filter(|p| p.theta > 0.0 && p.theta_over_l <= 0.3)
        .collect();
    if used.len() < SCALING_MIN_POINTS {
        return Err(Error::InsufficientData {
            needed: SCALING_MIN_POINTS,
            got: used.len(),
        });
    }
    let xs: Vec<f64> = used.iter().map(|p| p.theta.ln()).collect();
    let fit =
        |ys: Vec<f64>| least_squares_slope(&xs, &ys).ok_or_else(|| Error::InvalidInput("degenerate angle grid".into()));
    let g_exponent = fit(used.iter().map(|p| p.g.ln()).collect())?;
    let incoherent_exponent = fit(used.iter().map(|p| p.g_n0_estimate.ln()).collect())?;
    let coherent_exponent = fit(used.iter().map(|p| (p.g * p.g_n0_estimate).ln()).collect())?;
    let agrees = |a: f64, b: f64| (a - b).abs() <= EXPONENT_TOLERANCE;
    Ok(ScalingReport {
        points_used: used.len(),
        g_exponent,
        coherent_exponent,
        incoherent_exponent,
        claimed_g_exponent: 2.0,
        claimed_coherent_exponent: 4.0,
        claimed_incoherent_exponent: 2.0,
        g_agrees: agrees(g_exponent, 2.0),
        coherent_agrees: agrees(coherent_exponent, 4.0),
        incoherent_agrees: agrees(incoherent_exponent, 2.0),
    })
}

// ---------------------------------------------------------------- populations

#[derive(Debug, Clone, PartialEq)]
pub struct PopulationGrid {
    pub energy: f64,
    pub theta_l: f64,
    pub n_max: usize,
    pub model: PopulationModel,
    pub thetas: Vec<f64>,
    /// `columns[i][n]` = Pₙ at `thetas[i]`.
    pub columns: Vec<Vec<f64>>,
}

impl PopulationGrid {
    /// Most populated level per column (lowest n on ties).
    pub fn argmax(&self) -> Vec<usize> {
        self.columns
            .iter()
            .map(|col| {
                col.iter()
                    .enumerate()
                    .fold(
                        (0, f64::NEG_INFINITY),
                        |best, (n, &p)| if p > best.1 { (n, p) } else { best },
                    )
                    .0
            })
            .collect()
    }
}

pub fn population_grid(
    channel: &CrystalChannel,
    energy: f64,
    thetas: &[f64],
    model: PopulationModel,
) -> Result<PopulationGrid> {
    let ls = LevelStructure::new(channel, energy)?;
    validate_grid(thetas, ls.theta_l)?;
    let columns = thetas
        .par_iter()
        .map(|&theta| Ok(entry_amplitudes(&ls, theta, model)?.populations()))
        .collect::<Result<Vec<_>>>()?;
    Ok(PopulationGrid {
        energy,
        theta_l: ls.theta_l,
        n_max: ls.n_max,
        model,
        thetas: thetas.to_vec(),
        columns,
    })
}

// ---------------------------------------------------------------- beam average

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Estimator {
    /// 𝒢₁ from the amplitude sums at each node (Glauber, aligned).
    Eq7,
    /// 𝒢 ≈ max(1, n₀(θ)).
    N0,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamAverage {
    pub energy: f64,
    pub sigma: f64,
    pub estimator: Estimator,
    pub quadrature_points: usize,
    pub value: f64,
    /// |avg(2N) − avg(N)| / avg(N)
    pub relative_change: f64,
    pub converged: bool,
}

/// Gaussian extent integrated, in units of σ.
const BEAM_EXTENT_SIGMAS: f64 = 10.0;
const BEAM_PANEL_SIGMAS: f64 = 2.0;

/// ⟨𝒢⟩ over a zero-mean Gaussian angular profile of standard deviation
/// `sigma`.
///
/// The integrand is even in θ and has a cusp at θ = 0 (and, for the n₀
/// estimator, a kink where n₀ = 1), so the half-line [0, 10σ] is split at
/// those points into Gauss–Legendre panels. Non-convergence on doubling the
/// node count is reported, not raised.
pub fn beam_average(
    channel: &CrystalChannel,
    energy: f64,
    sigma: f64,
    estimator: Estimator,
    quadrature_points: usize,
) -> Result<BeamAverage> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidInput(format!("beam divergence must be > 0, got {sigma}")));
    }
    if quadrature_points < 32 {
        return Err(Error::InvalidInput(format!(
            "beam average needs >= 32 quadrature points, got {quadrature_points}"
        )));
    }
    let ls = LevelStructure::new(channel, energy)?;
    let me = matrix_elements(&ls, 1)?;
    let g = |theta: f64| -> f64 {
        match estimator {
            Estimator::N0 => ls.mean_level(theta).max(1.0),
            Estimator::Eq7 => {
                let es = entry_amplitudes(&ls, theta, PopulationModel::Glauber)
                    .expect("nonnegative finite angle")
                    .with_phase_convention(PhaseConvention::MagnitudeAligned);
                enhancement_factor(&es, &me).unwrap_or(1.0)
            }
        }
    };

    let mut breaks: Vec<f64> = (0..)
        .map(|k| k as f64 * BEAM_PANEL_SIGMAS * sigma)
        .take_while(|&t| t < BEAM_EXTENT_SIGMAS * sigma)
        .collect();
    breaks.push(BEAM_EXTENT_SIGMAS * sigma);
    if estimator == Estimator::N0 {
        let kink = std::f64::consts::SQRT_2 / ls.xi_scale;
        if kink > 0.0 && kink < BEAM_EXTENT_SIGMAS * sigma && !breaks.contains(&kink) {
            breaks.push(kink);
            breaks.sort_by(f64::total_cmp);
        }
    }

    let average = |points: usize| -> f64 {
        let per_panel = points.div_ceil(breaks.len() - 1).max(2);
        let rule = GaussLegendre::new(NonZeroUsize::new(per_panel).expect("nonzero"));
        let weight = |t: f64| (-0.5 * (t / sigma).powi(2)).exp();
        let (mut num, mut den) = (0.0, 0.0);
        for w in breaks.windows(2) {
            num += rule.integrate(w[0], w[1], |t| g(t) * weight(t));
            den += rule.integrate(w[0], w[1], weight);
        }
        num / den
    };

    let value = average(quadrature_points);
    let refined = average(2 * quadrature_points);
    let relative_change = ((refined - value) / value).abs();
    Ok(BeamAverage {
        energy,
        sigma,
        estimator,
        quadrature_points,
        value,
        relative_change,
        converged: relative_change <= BEAM_AVERAGE_TOLERANCE,
    })
}

// ---------------------------------------------------------------- electrons

#[derive(Debug, Clone, PartialEq)]
pub struct ElectronComparison {
    pub energy: f64,
    pub positron_levels: usize,
    pub positron_deviation: f64,
    /// Ω, eV.
    pub positron_spacing: f64,
    pub electron_levels: usize,
    pub electron_deviation: f64,
    /// ε₁ − ε₀, eV.
    pub electron_spacing_first: f64,
    /// Spacing of the two shallowest levels, eV.
    pub electron_spacing_last: f64,
}

/// Contrasts the positron ladder with the cosh⁻² ladder an electron sees in
/// the same planes. `width` is the cosh⁻² width in Å (default d/4).
pub fn electron_compare(channel: &CrystalChannel, energy: f64, width: Option<f64>) -> Result<ElectronComparison> {
    let ls = LevelStructure::new(channel, energy)?;
    let positron: Vec<f64> = (0..=ls.n_max).map(|n| level_energy(&ls, n)).collect::<Result<_>>()?;
    let electron_channel = channel.electron_counterpart(width)?;
    let electron = poschl_teller_levels(&electron_channel, energy)?;
    let electron_deviation = equidistance_deviation(&electron)?;
    let k = electron.len();
    Ok(ElectronComparison {
        energy,
        positron_levels: positron.len(),
        positron_deviation: equidistance_deviation(&positron)?,
        positron_spacing: ls.omega,
        electron_levels: k,
        electron_deviation,
        electron_spacing_first: electron[1] - electron[0],
        electron_spacing_last: electron[k - 1] - electron[k - 2],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> CrystalChannel {
        CrystalChannel::diamond_110()
    }

    #[test]
    fn grid_resolution() {
        let g = AngleGrid {
            start: Angle::Radians(0.0),
            stop: Angle::Lindhard(0.85),
            count: 5,
        };
        let t = g.resolve(68e-6);
        assert_eq!(t.len(), 5);
        assert_eq!(t[0], 0.0);
        assert_eq!(t[4], 0.85 * 68e-6);
    }

    #[test]
    fn grid_validation() {
        let ls = LevelStructure::new(&diamond(), 10e9).unwrap();
        assert!(validate_grid(&[], ls.theta_l).is_err());
        assert!(validate_grid(&[1e-6, 1e-6], ls.theta_l).is_err());
        assert!(validate_grid(&[2e-6, 1e-6], ls.theta_l).is_err());
        assert!(validate_grid(&[0.0, 0.95 * ls.theta_l], ls.theta_l).is_err());
        assert!(validate_grid(&[0.0, 0.9 * ls.theta_l], ls.theta_l).is_ok());
        assert!(theta_scan(&diamond(), 10e9, &[], 1, ScanOptions::default()).is_err());
    }

    #[test]
    fn table_rows() {
        let t = energy_table(&diamond(), &[6e9, 10e9, 4e9], Angle::Radians(31e-6), None).unwrap();
        let e: Vec<f64> = t.rows.iter().map(|r| r.energy).collect();
        assert_eq!(e, vec![6e9, 10e9, 4e9]);
        let r6 = &t.rows[0];
        assert!(((r6.omega - 0.268) / 0.268).abs() < 0.03);
        assert!(((r6.theta_l - 88e-6) / 88e-6).abs() < 0.01);
        assert!(((r6.g1 - 16.4) / 16.4).abs() < 0.05);
        assert!(t.rows[1].n_max.abs_diff(107) <= 3);
        assert!(r6.omega1_exp.is_none() && r6.dipole_over_exp.is_none());
        assert!(energy_table(&diamond(), &[5e8], Angle::Radians(31e-6), None).is_err());
        assert!(energy_table(&diamond(), &[4e9], Angle::Radians(31e-6), Some(&[1.0, 2.0])).is_err());
    }

    #[test]
    fn scan_limits() {
        let ls = LevelStructure::new(&diamond(), 10e9).unwrap();
        let thetas = AngleGrid {
            start: Angle::Radians(0.0),
            stop: Angle::Lindhard(0.85),
            count: 50,
        }
        .resolve(ls.theta_l);
        let s = theta_scan(&diamond(), 10e9, &thetas, 1, ScanOptions::default()).unwrap();
        assert_eq!(s.points[0].g, 1.0);
        assert!((s.points[1].g - 1.0) / 1.0 < 0.5);
        assert!(s.points.windows(2).all(|w| w[1].g >= w[0].g));
        assert!(s.small_angle_slope.is_some());

        let tiny = theta_scan(&diamond(), 10e9, &[1e-9], 1, ScanOptions::default()).unwrap();
        assert!((tiny.points[0].g - 1.0).abs() < 0.02);
        let at31 = theta_scan(&diamond(), 10e9, &[31e-6], 1, ScanOptions::default()).unwrap();
        assert!(((at31.points[0].g - 24.2) / 24.2).abs() < 0.05);
    }

    #[test]
    fn slope_fit_exact_power() {
        let xs: Vec<f64> = (1..10).map(|k| (k as f64).ln()).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x + 0.25).collect();
        assert!((least_squares_slope(&xs, &ys).unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(least_squares_slope(&xs[..1], &ys[..1]), None);
    }

    #[test]
    fn scaling_needs_points() {
        let s = theta_scan(&diamond(), 10e9, &[1e-6, 2e-6, 3e-6], 1, ScanOptions::default()).unwrap();
        assert!(matches!(scaling_report(&s), Err(Error::InsufficientData { .. })));
    }

    #[test]
    fn populations_columns() {
        let ls = LevelStructure::new(&diamond(), 10e9).unwrap();
        let thetas = AngleGrid {
            start: Angle::Radians(0.0),
            stop: Angle::Lindhard(0.85),
            count: 30,
        }
        .resolve(ls.theta_l);
        let grid = population_grid(&diamond(), 10e9, &thetas, PopulationModel::Glauber).unwrap();
        assert_eq!(grid.columns[0][0], 1.0);
        for col in &grid.columns {
            assert_eq!(col.len(), ls.n_max + 1);
            assert!((col.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(col.iter().all(|&p| p >= 0.0));
        }
        let am = grid.argmax();
        assert!(am.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn beam_average_limits() {
        for est in [Estimator::N0, Estimator::Eq7] {
            let b = beam_average(&diamond(), 10e9, 1e-9, est, 32).unwrap();
            assert!((b.value - 1.0).abs() < 1e-3, "{est:?}: {}", b.value);
        }
        assert!(beam_average(&diamond(), 10e9, 0.0, Estimator::N0, 32).is_err());
        assert!(beam_average(&diamond(), 10e9, 1e-5, Estimator::N0, 16).is_err());
    }

    #[test]
    fn beam_average_n0_closed_form() {
        // ⟨max(1, kθ²)⟩ for θ ~ N(0, σ²): with c = θ_c/σ,
        // P(|θ| < θ_c) + kσ²·[1 − erf(c/√2) + √(2/π)·c·e^(−c²/2)].
        let ch = diamond();
        let e = 14e9;
        let sigma = 10e-6;
        let ls = LevelStructure::new(&ch, e).unwrap();
        let k = 0.5 * ls.xi_scale * ls.xi_scale;
        let c = (1.0 / k).sqrt() / sigma;
        let inside = erf(c / 2f64.sqrt());
        let tail = k * sigma * sigma * (1.0 - inside + (2.0 / std::f64::consts::PI).sqrt() * c * (-0.5 * c * c).exp());
        let want = inside + tail;
        let b = beam_average(&ch, e, sigma, Estimator::N0, 64).unwrap();
        assert!(((b.value - want) / want).abs() < 1e-9, "{} vs {want}", b.value);
        assert!(b.converged);
    }

    // Taylor series below 3, erfc continued fraction above.
    fn erf(x: f64) -> f64 {
        if x < 3.0 {
            let mut term = x;
            let mut sum = x;
            let mut k = 0.0;
            loop {
                k += 1.0;
                term *= -x * x / k;
                let add = term / (2.0 * k + 1.0);
                sum += add;
                if add.abs() < 1e-18 * sum.abs() {
                    break;
                }
            }
            2.0 / std::f64::consts::PI.sqrt() * sum
        } else {
            // erfc continued fraction
            let mut f = 0.0;
            for k in (1..60).rev() {
                f = k as f64 / 2.0 / (x + f);
            }
            1.0 - (-x * x).exp() / std::f64::consts::PI.sqrt() / (x + f)
        }
    }

    #[test]
    fn electrons_are_anharmonic() {
        let c = electron_compare(&diamond(), 10e9, None).unwrap();
        assert!(c.positron_deviation < 1e-12);
        assert!(c.electron_deviation > 1e-3);
        assert!(c.electron_spacing_first > c.electron_spacing_last);
        assert_eq!(c.positron_levels, 108);
    }
}
