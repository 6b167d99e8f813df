//! Level amplitudes of a positron entering the channel.
//!
//! The incoming transverse state is projected onto the oscillator levels at
//! the crystal surface (sudden approximation). Two models are offered: the
//! direct projection onto Hermite functions, and the displaced-ground-state
//! (Glauber) form whose populations are Poisson with mean n₀ = ξ₀²/2.
//! Both are renormalized over the bound levels 0..=n_max.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::LevelStructure;
use crate::special::{hermite_functions, ln_factorials};

/// Amplitudes below this magnitude are stored as exact zeros.
pub const AMPLITUDE_FLOOR: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PopulationModel {
    Hermite,
    Glauber,
}

/// How the coherent sum treats the iⁿ ladder carried by the amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PhaseConvention {
    /// Sum cₙ·mₙ with the phases exactly as stored.
    LiteralInPhase,
    /// Sum |cₙ|·mₙ, every term in phase.
    #[default]
    MagnitudeAligned,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntryState {
    model: PopulationModel,
    xi0: f64,
    amplitudes: Vec<Complex64>,
    phase_convention: PhaseConvention,
}

impl EntryState {
    /// Builds a state from explicit amplitudes, renormalized to unit norm.
    pub fn from_amplitudes(
        model: PopulationModel,
        xi0: f64,
        amplitudes: Vec<Complex64>,
        phase_convention: PhaseConvention,
    ) -> Result<Self> {
        let norm = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidInput("amplitudes have zero or non-finite norm".into()));
        }
        Ok(Self {
            model,
            xi0,
            amplitudes: amplitudes.into_iter().map(|c| c / norm).collect(),
            phase_convention,
        })
    }

    pub fn with_phase_convention(mut self, phase_convention: PhaseConvention) -> Self {
        self.phase_convention = phase_convention;
        self
    }

    pub fn model(&self) -> PopulationModel {
        self.model
    }

    pub fn phase_convention(&self) -> PhaseConvention {
        self.phase_convention
    }

    /// ξ₀ = θ_in·√(E/Ω)
    pub fn xi0(&self) -> f64 {
        self.xi0
    }

    /// n₀ = ξ₀²/2
    pub fn n0(&self) -> f64 {
        0.5 * self.xi0 * self.xi0
    }

    /// Coherent-state label α = ξ₀/√2.
    pub fn alpha(&self) -> f64 {
        self.xi0 / std::f64::consts::SQRT_2
    }

    pub fn n_max(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn populations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|c| c.norm_sqr()).collect()
    }
}

/// iⁿ, exactly.
pub(crate) fn i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

pub fn entry_amplitudes(ls: &LevelStructure, theta_in: f64, model: PopulationModel) -> Result<EntryState> {
    if !(theta_in >= 0.0 && theta_in.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "entrance angle must be >= 0, got {theta_in}"
        )));
    }
    if ls.n_max < 1 {
        return Err(Error::DegenerateWell { n_max: ls.n_max as i64 });
    }
    let xi0 = theta_in * ls.xi_scale;
    let magnitudes = match model {
        PopulationModel::Hermite => hermite_functions(ls.n_max, xi0),
        PopulationModel::Glauber => glauber_magnitudes(ls.n_max, xi0),
    };
    let mut magnitudes = normalized(magnitudes);
    let mut floored = false;
    for m in magnitudes.iter_mut() {
        if m.abs() < AMPLITUDE_FLOOR {
            floored |= *m != 0.0;
            *m = 0.0;
        }
    }
    if floored {
        magnitudes = normalized(magnitudes);
    }
    let amplitudes = magnitudes.into_iter().enumerate().map(|(n, m)| i_pow(n) * m).collect();
    Ok(EntryState {
        model,
        xi0,
        amplitudes,
        phase_convention: PhaseConvention::default(),
    })
}

/// αⁿ/√(n!) up to a common factor, via logarithms.
fn glauber_magnitudes(n_max: usize, xi0: f64) -> Vec<f64> {
    if xi0 == 0.0 {
        let mut v = vec![0.0; n_max + 1];
        v[0] = 1.0;
        return v;
    }
    let ln_alpha = (xi0 / std::f64::consts::SQRT_2).ln();
    let lf = ln_factorials(n_max);
    let logs: Vec<f64> = (0..=n_max).map(|n| n as f64 * ln_alpha - 0.5 * lf[n]).collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    logs.into_iter().map(|l| (l - top).exp()).collect()
}

fn normalized(mut v: Vec<f64>) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v.iter_mut() {
        *x /= norm;
    }
    v
}

/// (n, Pₙ) for n = 0..=n_max.
pub fn population_distribution(es: &EntryState) -> Vec<(usize, f64)> {
    es.populations().into_iter().enumerate().collect()
}

/// Σ n·Pₙ
pub fn mean_occupancy(es: &EntryState) -> f64 {
    es.amplitudes
        .iter()
        .enumerate()
        .map(|(n, c)| n as f64 * c.norm_sqr())
        .sum()
}
