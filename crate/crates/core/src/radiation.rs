//! Transition matrix elements, the coherent amplitude Aⱼ, the enhancement
//! factor 𝒢ⱼ and first-principles line shapes.
//!
//! Because the parabolic ladder is equidistant, every n → n−j transition
//! emits at the same Doppler-shifted frequency. The coherent model sums the
//! amplitudes cₙ·mₙ before squaring; the incoherent model sums Pₙ·mₙ².

use num_complex::Complex64;

use crate::entry::{EntryState, PhaseConvention};
use crate::error::{Error, Result};
use crate::model::{doppler_frequency, LevelStructure, FINE_STRUCTURE};
use crate::special::ln_factorials;

/// Highest harmonic accepted by [`harmonic_ratio_table`].
pub const MAX_RATIO_HARMONIC: usize = 6;

/// Dimensionless matrix elements mₙ = ⟨n−j|…|n⟩ for n = j..=n_max, in
/// oscillator length units.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixElementSet {
    j: usize,
    n_max: usize,
    values: Vec<f64>,
}

impl MatrixElementSet {
    pub fn j(&self) -> usize {
        self.j
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Values for n = j..=n_max.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// mₙ, or `None` below the harmonic order or above n_max.
    pub fn get(&self, n: usize) -> Option<f64> {
        n.checked_sub(self.j).and_then(|i| self.values.get(i)).copied()
    }

    /// Every element multiplied by `factor` (> 0).
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * factor).collect(),
            ..self.clone()
        }
    }
}

/// j = 1: mₙ = √(n/2). j ≥ 2: leading multipole 2^(−j/2)·√(n!/(n−j)!).
pub fn matrix_elements(ls: &LevelStructure, j: usize) -> Result<MatrixElementSet> {
    if j < 1 || j > ls.n_max {
        return Err(Error::InvalidHarmonic { j, max: ls.n_max });
    }
    let values = if j == 1 {
        (1..=ls.n_max).map(|n| (0.5 * n as f64).sqrt()).collect()
    } else {
        let lf = ln_factorials(ls.n_max);
        let half_ln2 = 0.5 * j as f64 * std::f64::consts::LN_2;
        (j..=ls.n_max)
            .map(|n| (0.5 * (lf[n] - lf[n - j]) - half_ln2).exp())
            .collect()
    };
    Ok(MatrixElementSet {
        j,
        n_max: ls.n_max,
        values,
    })
}

fn check_dims(es: &EntryState, me: &MatrixElementSet) -> Result<()> {
    if es.n_max() != me.n_max {
        return Err(Error::DimensionMismatch {
            entry: es.n_max(),
            matrix: me.n_max,
        });
    }
    Ok(())
}

/// Aⱼ = Σ_{n≥j} cₙ·mₙ, with the terms phased according to the state's
/// [`PhaseConvention`].
pub fn coherent_amplitude(es: &EntryState, me: &MatrixElementSet) -> Result<Complex64> {
    check_dims(es, me)?;
    let terms = es.amplitudes()[me.j..].iter().zip(&me.values);
    Ok(match es.phase_convention() {
        PhaseConvention::LiteralInPhase => terms.map(|(c, m)| c * m).sum(),
        PhaseConvention::MagnitudeAligned => Complex64::new(terms.map(|(c, m)| c.norm() * m).sum(), 0.0),
    })
}

/// Σ_{n≥j} Pₙ·mₙ²
pub fn incoherent_strength(es: &EntryState, me: &MatrixElementSet) -> Result<f64> {
    check_dims(es, me)?;
    Ok(es.amplitudes()[me.j..]
        .iter()
        .zip(&me.values)
        .map(|(c, m)| c.norm_sqr() * m * m)
        .sum())
}

/// 𝒢ⱼ = |Σ cₙmₙ|² / Σ |cₙ|²mₙ².
pub fn enhancement_factor(es: &EntryState, me: &MatrixElementSet) -> Result<f64> {
    let denom = incoherent_strength(es, me)?;
    if denom == 0.0 {
        return Err(Error::EmptyPopulation { j: me.j });
    }
    Ok(coherent_amplitude(es, me)?.norm_sqr() / denom)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EmissionModel {
    Coherent,
    Incoherent,
}

/// Angular factor applied along the δ-line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AngularWeight {
    /// No angular factor.
    #[default]
    Flat,
    /// Classical planar-dipole factor 3(1 − 2x + 2x²)/2, x = ω/ωⱼ(0).
    DipolePlanar,
}

impl AngularWeight {
    /// Weight at x = ω/ωⱼ(0). Integrates to 1 over [0, 1] for both kinds.
    pub fn at(self, x: f64) -> f64 {
        match self {
            AngularWeight::Flat => 1.0,
            AngularWeight::DipolePlanar => 1.5 * (1.0 - 2.0 * x + 2.0 * x * x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    /// Photon energy, eV.
    pub omega: f64,
    /// dI/dω
    pub intensity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSeries {
    pub j: usize,
    pub model: EmissionModel,
    pub angular_weight: AngularWeight,
    /// ωⱼ(0), eV.
    pub omega_cutoff: f64,
    pub points: Vec<SpectrumPoint>,
}

/// dI/dω for harmonic `j` on `grid_size` uniform points spanning
/// [0, ωⱼ(0)].
///
/// The δ(ω − ωⱼ(θ)) line is integrated over the emission cone analytically:
/// with dΩ = 2πθ dθ and θ|dθ/dω| = jΩ/ω², the ω² prefactor cancels and
/// dI/dω = e²·j·Ω·W(ω/ωⱼ(0))·S, where S is |Aⱼ|² (coherent) or Σ Pₙmₙ²
/// (incoherent). The ω = 0 endpoint is the θ → ∞ limit.
pub fn spectrum(
    ls: &LevelStructure,
    es: &EntryState,
    j: usize,
    model: EmissionModel,
    angular_weight: AngularWeight,
    grid_size: usize,
) -> Result<SpectrumSeries> {
    if grid_size < 16 {
        return Err(Error::InvalidInput(format!(
            "spectrum grid needs >= 16 points, got {grid_size}"
        )));
    }
    let me = matrix_elements(ls, j)?;
    let strength = match model {
        EmissionModel::Coherent => coherent_amplitude(es, &me)?.norm_sqr(),
        EmissionModel::Incoherent => incoherent_strength(es, &me)?,
    };
    let omega_cutoff = doppler_frequency(ls, j, 0.0)?;
    let scale = FINE_STRUCTURE * j as f64 * ls.omega * strength;
    let last = (grid_size - 1) as f64;
    let points = (0..grid_size)
        .map(|k| {
            let x = k as f64 / last;
            SpectrumPoint {
                omega: if k == grid_size - 1 {
                    omega_cutoff
                } else {
                    x * omega_cutoff
                },
                intensity: scale * angular_weight.at(x),
            }
        })
        .collect();
    Ok(SpectrumSeries {
        j,
        model,
        angular_weight,
        omega_cutoff,
        points,
    })
}

/// 𝒢ⱼ/𝒢₁ for j = 1..=j_max, evaluated in the magnitude-aligned convention.
pub fn harmonic_ratio_table(ls: &LevelStructure, es: &EntryState, j_max: usize) -> Result<Vec<(usize, f64)>> {
    if !(1..=MAX_RATIO_HARMONIC).contains(&j_max) {
        return Err(Error::InvalidHarmonic {
            j: j_max,
            max: MAX_RATIO_HARMONIC,
        });
    }
    let aligned = es.clone().with_phase_convention(PhaseConvention::MagnitudeAligned);
    let g1 = enhancement_factor(&aligned, &matrix_elements(ls, 1)?)?;
    (1..=j_max)
        .map(|j| {
            let g = enhancement_factor(&aligned, &matrix_elements(ls, j)?)?;
            Ok((j, g / g1))
        })
        .collect()
}
