//! Channel and beam parameterization and the closed-form level structure of
//! the planar channel.
//!
//! Everything here is in natural units (ħ = c = 1): energies in eV, angles in
//! radians. Lengths enter in Å and are converted with [`HBAR_C`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// ħc in eV·Å.
pub const HBAR_C: f64 = 1973.27;
/// Electron (positron) rest energy in eV, three significant figures.
pub const ELECTRON_MASS: f64 = 0.511e6;
/// e² in natural units.
pub const FINE_STRUCTURE: f64 = 1.0 / 137.036;

/// Lowest beam energy accepted by [`Beam::new`], eV.
pub const MIN_BEAM_ENERGY: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysConstants {
    /// eV·Å
    pub hbar_c: f64,
    /// eV
    pub electron_mass: f64,
    pub fine_structure: f64,
}

impl PhysConstants {
    pub const STANDARD: PhysConstants = PhysConstants {
        hbar_c: HBAR_C,
        electron_mass: ELECTRON_MASS,
        fine_structure: FINE_STRUCTURE,
    };
}

impl Default for PhysConstants {
    fn default() -> Self {
        Self::STANDARD
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelShape {
    /// V(x) = V₀(2x/d)²
    Parabolic,
    /// V(x) = −V₀ cosh⁻²(x/b), width b in Å.
    PoschlTeller { width: f64 },
}

impl ChannelShape {
    pub fn name(&self) -> &'static str {
        match self {
            ChannelShape::Parabolic => "parabolic",
            ChannelShape::PoschlTeller { .. } => "poschl-teller",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrystalChannel {
    pub name: String,
    /// V₀ in eV.
    pub well_depth: f64,
    /// Interplanar spacing d in Å.
    pub spacing: f64,
    pub shape: ChannelShape,
}

impl CrystalChannel {
    pub fn new(name: impl Into<String>, well_depth: f64, spacing: f64, shape: ChannelShape) -> Result<Self> {
        if !(well_depth > 0.0 && well_depth.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "well depth must be > 0 eV, got {well_depth}"
            )));
        }
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "interplanar spacing must be > 0 Å, got {spacing}"
            )));
        }
        if let ChannelShape::PoschlTeller { width } = shape {
            if !(width > 0.0 && width.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "Pöschl–Teller width must be > 0 Å, got {width}"
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            well_depth,
            spacing,
            shape,
        })
    }

    /// Positron channel between diamond (110) planes: V₀ = 23 eV, d = 1.26 Å.
    pub fn diamond_110() -> Self {
        Self {
            name: "diamond(110)".into(),
            well_depth: 23.0,
            spacing: 1.26,
            shape: ChannelShape::Parabolic,
        }
    }

    /// The same planes seen by an electron: a cosh⁻² well of equal depth.
    /// `width` defaults to d/4.
    pub fn electron_counterpart(&self, width: Option<f64>) -> Result<Self> {
        let width = width.unwrap_or(self.spacing / 4.0);
        Self::new(
            format!("{} electron", self.name),
            self.well_depth,
            self.spacing,
            ChannelShape::PoschlTeller { width },
        )
    }

    fn require_parabolic(&self) -> Result<()> {
        match self.shape {
            ChannelShape::Parabolic => Ok(()),
            other => Err(Error::UnsupportedShape { shape: other.name() }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beam {
    /// eV
    pub energy: f64,
    /// rad
    pub theta_in: f64,
    /// rad
    pub sigma_theta: Option<f64>,
}

impl Beam {
    pub fn new(energy: f64, theta_in: f64, sigma_theta: Option<f64>) -> Result<Self> {
        check_energy(energy)?;
        if !(theta_in >= 0.0 && theta_in.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "entrance angle must be >= 0, got {theta_in}"
            )));
        }
        if let Some(s) = sigma_theta {
            if !(s >= 0.0 && s.is_finite()) {
                return Err(Error::InvalidInput(format!("beam divergence must be >= 0, got {s}")));
            }
        }
        Ok(Self {
            energy,
            theta_in,
            sigma_theta,
        })
    }
}

pub(crate) fn check_energy(energy: f64) -> Result<()> {
    if energy >= MIN_BEAM_ENERGY && energy.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "beam energy must be >= {MIN_BEAM_ENERGY:e} eV, got {energy}"
        )))
    }
}

/// Per-energy quantities of the parabolic channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelStructure {
    /// Beam energy E, eV.
    pub energy: f64,
    /// V₀, eV.
    pub well_depth: f64,
    /// Oscillator quantum Ω, eV.
    pub omega: f64,
    /// Highest bound level index.
    pub n_max: usize,
    /// Lindhard angle, rad.
    pub theta_l: f64,
    /// Lorentz factor E/mₑ.
    pub gamma: f64,
    /// √(E/Ω): multiplies an entrance angle to give the displacement ξ₀.
    pub xi_scale: f64,
}

impl LevelStructure {
    pub fn new(channel: &CrystalChannel, energy: f64) -> Result<Self> {
        check_energy(energy)?;
        let omega = oscillator_frequency(channel, energy)?;
        let n_max = max_bound_level(channel, energy)?;
        Ok(Self {
            energy,
            well_depth: channel.well_depth,
            omega,
            n_max,
            theta_l: lindhard_angle(channel, energy),
            gamma: energy / ELECTRON_MASS,
            xi_scale: (energy / omega).sqrt(),
        })
    }

    /// Mean level occupation n₀ = ξ₀²/2 of the coherent entry state.
    pub fn mean_level(&self, theta_in: f64) -> f64 {
        let xi0 = theta_in * self.xi_scale;
        0.5 * xi0 * xi0
    }
}

/// Ω = (2/d)·√(2V₀/E).
pub fn oscillator_frequency(channel: &CrystalChannel, energy: f64) -> Result<f64> {
    channel.require_parabolic()?;
    if !(energy > 0.0) {
        return Err(Error::InvalidInput(format!("energy must be > 0, got {energy}")));
    }
    let d = channel.spacing / HBAR_C;
    Ok(2.0 / d * (2.0 * channel.well_depth / energy).sqrt())
}

pub fn level_energy(ls: &LevelStructure, n: usize) -> Result<f64> {
    if n > ls.n_max {
        return Err(Error::LevelIndex { n, n_max: ls.n_max });
    }
    Ok(ls.omega * (n as f64 + 0.5))
}

/// ⌊V₀/Ω − ½⌋
pub fn max_bound_level(channel: &CrystalChannel, energy: f64) -> Result<usize> {
    let omega = oscillator_frequency(channel, energy)?;
    let n_max = (channel.well_depth / omega - 0.5).floor();
    if n_max < 1.0 {
        return Err(Error::DegenerateWell { n_max: n_max as i64 });
    }
    Ok(n_max as usize)
}

/// θ_L = √(2V₀/E)
pub fn lindhard_angle(channel: &CrystalChannel, energy: f64) -> f64 {
    (2.0 * channel.well_depth / energy).sqrt()
}

/// Photon energy of harmonic `j` seen at angle `theta_obs`:
/// ωⱼ(θ) = 2γ²jΩ / (1 + γ²θ²).
pub fn doppler_frequency(ls: &LevelStructure, j: usize, theta_obs: f64) -> Result<f64> {
    if j < 1 {
        return Err(Error::InvalidHarmonic { j, max: ls.n_max });
    }
    if !(theta_obs >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "observation angle must be >= 0, got {theta_obs}"
        )));
    }
    let g2 = ls.gamma * ls.gamma;
    Ok(2.0 * g2 * j as f64 * ls.omega / (1.0 + g2 * theta_obs * theta_obs))
}

/// Bound levels of the −V₀cosh⁻²(x/b) well, deepest first:
/// εₙ = −(s − n)²/(2Eb²), s(s + 1) = 2EV₀b².
pub fn poschl_teller_levels(channel: &CrystalChannel, energy: f64) -> Result<Vec<f64>> {
    let ChannelShape::PoschlTeller { width } = channel.shape else {
        return Err(Error::UnsupportedShape {
            shape: channel.shape.name(),
        });
    };
    if !(energy > 0.0) {
        return Err(Error::InvalidInput(format!("energy must be > 0, got {energy}")));
    }
    let b = width / HBAR_C;
    let two_e_b2 = 2.0 * energy * b * b;
    let s = 0.5 * (-1.0 + (1.0 + 4.0 * two_e_b2 * channel.well_depth).sqrt());
    if s <= 0.0 {
        return Ok(Vec::new());
    }
    Ok((0..)
        .map(|n| n as f64)
        .take_while(|&n| n < s)
        .map(|n| -(s - n).powi(2) / two_e_b2)
        .collect())
}

/// max |Δₙ₊₁ − Δₙ| / mean(Δ) over the level spacings Δₙ = εₙ₊₁ − εₙ.
pub fn equidistance_deviation(levels: &[f64]) -> Result<f64> {
    if levels.len() < 3 {
        return Err(Error::InsufficientData {
            needed: 3,
            got: levels.len(),
        });
    }
    let spacings: Vec<f64> = levels.windows(2).map(|w| w[1] - w[0]).collect();
    let mean = spacings.iter().sum::<f64>() / spacings.len() as f64;
    let worst = spacings.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max);
    Ok(worst / mean.abs())
}

/// An entrance angle either in radians or as a fraction of θ_L, resolved
/// once the beam energy is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    Radians(f64),
    Lindhard(f64),
}

impl Angle {
    pub fn resolve(self, theta_l: f64) -> f64 {
        match self {
            Angle::Radians(r) => r,
            Angle::Lindhard(f) => f * theta_l,
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Radians(r) => write!(f, "{r}rad"),
            Angle::Lindhard(l) => write!(f, "{l}L"),
        }
    }
}

impl FromStr for Angle {
    type Err = String;

    /// Accepts `rad`, `mrad`, `urad`/`µrad`, `nrad` suffixes, `L` for
    /// fractions of θ_L, and bare numbers as radians.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(v) = s.strip_suffix('L') {
            return parse_number(v).map(Angle::Lindhard);
        }
        const UNITS: [(&str, i32); 5] = [("mrad", -3), ("urad", -6), ("µrad", -6), ("nrad", -9), ("rad", 0)];
        let (v, exp) = split_unit(s, &UNITS);
        parse_number(v).map(|x| Angle::Radians(scale(x, exp)))
    }
}

/// Parse an energy with an optional `eV`, `keV`, `MeV`, `GeV`, `TeV` suffix;
/// bare numbers are eV.
pub fn parse_energy(s: &str) -> std::result::Result<f64, String> {
    const UNITS: [(&str, i32); 5] = [("keV", 3), ("MeV", 6), ("GeV", 9), ("TeV", 12), ("eV", 0)];
    let (v, exp) = split_unit(s.trim(), &UNITS);
    parse_number(v).map(|x| scale(x, exp))
}

/// Parse a length with an optional `A` (Å) or `nm` suffix; bare numbers are Å.
pub fn parse_length(s: &str) -> std::result::Result<f64, String> {
    const UNITS: [(&str, i32); 3] = [("nm", 1), ("Å", 0), ("A", 0)];
    let (v, exp) = split_unit(s.trim(), &UNITS);
    parse_number(v).map(|x| scale(x, exp))
}

/// x·10^exp, dividing for negative exponents so that e.g. 25 µrad is the
/// double nearest 2.5e-5.
fn scale(x: f64, exp: i32) -> f64 {
    if exp >= 0 {
        x * 10f64.powi(exp)
    } else {
        x / 10f64.powi(-exp)
    }
}

fn split_unit<'a>(s: &'a str, units: &[(&str, i32)]) -> (&'a str, i32) {
    units
        .iter()
        .find_map(|&(suffix, exp)| s.strip_suffix(suffix).map(|v| (v, exp)))
        .unwrap_or((s, 0))
}

fn parse_number(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a finite number")),
    }
}
