//! Design tool for suppressing cascading contamination in fifth-order 2D
//! Raman spectroscopy with a Fabry-Perot microcavity.
//!
//! The fifth-order (chi5) Raman signal of a molecular sample is easily
//! swamped by cascades: pairs of third-order processes on different
//! molecules that exchange a photon and phase-match into the same detection
//! direction. Inside a microcavity the exchanged photon is restricted to
//! quantized standing-wave modes, so the cascade strength becomes a
//! geometric function of mirror spacing and beam angles. This crate computes
//! those geometric prefactors, turns them into suppression ratios, derives
//! the closed-form angle windows, scans and optimizes the geometry, and
//! assembles illustrative 2D time-domain surfaces.
//!
//! The modules follow the physics:
//!
//! * [`cavity`] - quantized mode frequencies and the resonance window that
//!   picks the contributing modes;
//! * [`pulse`] - beam geometry, signal directions and longitudinal phase
//!   mismatches;
//! * [`kernel`] - per-mode cascade prefactors, mode-sum totals, suppression
//!   ratios and the 50%/95% angle rules;
//! * [`response`] - pluggable 2D response functions and signal assembly;
//! * [`scan`] - deterministic parallel parameter sweeps and grid-refinement
//!   optimization;
//! * [`config`] / [`output`] - user-unit configuration and plot-ready
//!   CSV/JSON emission for the thin CLI.
//!
//! Start with `examples/suppression_report.rs` for the headline numbers, or
//! run the CLI: `cavity-cascade suppress --config run.cfg`.

pub mod cavity;
pub mod config;
pub mod error;
pub mod kernel;
pub mod output;
pub mod pulse;
pub mod response;
pub mod scan;

pub use cavity::{
    cascade_mode_frequency, contributing_modes, mode_frequency, CavityGeometry, ResonanceWindow,
    SPEED_OF_LIGHT,
};
pub use config::RunConfig;
pub use error::{Error, Result};
pub use kernel::{
    angle_window_50, angle_window_95, cascade_prefactor_m, cascade_prefactor_total,
    cascade_to_direct_scale, regime_mode_count, suppress, suppression_ratio, AngleWindow,
    BranchPolicy, CascadeConfig, DenominatorConvention, ModeSelection, ModeTerm,
    ReferenceConvention, SampleConfig, SuppressionCone, SuppressionReport,
};
pub use pulse::{longitudinal_mismatch, sinc, Branch, CascadeKind, Pulse, PulseSequence};
pub use response::{
    assemble_signal, default_response, direct_prefactor, AssembleOptions, ResponseFunction,
    SignalSurfaces, Surface2D, SurfaceLabel, TimeGrid, VibronicModel,
};
pub use scan::{
    optimize, run_scan, sensitivity, OptimumResult, ScanAxis, ScanBase, ScanSpec, ScanTable,
    SweptParam,
};
