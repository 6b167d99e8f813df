//! Quantum-coherent positron channeling radiation in a parabolic planar
//! channel.
//!
//! The transverse motion of a positron between crystal planes is a harmonic
//! oscillator with an equidistant ladder, so every n → n−j transition emits
//! at the same frequency and the radiation amplitudes from different levels
//! add coherently. This crate computes the level structure, the entry-state
//! amplitudes, the coherent and incoherent spectra and the enhancement
//! factor 𝒢ⱼ, and sweeps them over energy, entrance angle and beam
//! divergence.
//!
//! Modules:
//! - [`model`]: constants, channel and beam parameters, level structure.
//! - [`entry`]: level amplitudes and populations at the crystal surface.
//! - [`radiation`]: matrix elements, coherent amplitude, 𝒢ⱼ, line shapes.
//! - [`scans`]: tables and sweeps.
//! - [`config`], [`output`], [`app`]: the `chanrad` command line.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod app;
pub mod config;
pub mod entry;
pub mod error;
pub mod model;
pub mod output;
pub mod radiation;
pub mod scans;
pub mod special;

pub use entry::{
    entry_amplitudes, mean_occupancy, population_distribution, EntryState, PhaseConvention, PopulationModel,
};
pub use error::{Error, Result};
pub use model::{Angle, Beam, ChannelShape, CrystalChannel, LevelStructure, PhysConstants};
pub use radiation::{
    coherent_amplitude, enhancement_factor, matrix_elements, spectrum, AngularWeight, EmissionModel, MatrixElementSet,
    SpectrumSeries,
};
pub use special::hermite_function;
