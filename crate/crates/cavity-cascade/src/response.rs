//! Pluggable 2D time-domain response functions and signal assembly.
//!
//! The cavity controls cascading entirely through the geometric prefactors;
//! the material response only multiplies them. A damped vibrational
//! coherence model stands in for the exact response functions here, and the
//! [`ResponseFunction`] trait lets a faithful implementation drop in without
//! touching the kernels.

use serde::{Deserialize, Serialize};

use crate::cavity::CavityGeometry;
use crate::error::{Error, Result};
use crate::kernel::{
    cascade_to_direct_scale, suppress, CascadeConfig, ModeSelection, SampleConfig,
    SuppressionReport,
};
use crate::pulse::{sinc, CascadeKind, PulseSequence};

/// Relative amplitude of the parallel cascade against the sequential one:
/// opposite sign and twice the constant prefactor.
pub const PARALLEL_RELATIVE_AMPLITUDE: f64 = -2.0;

/// Vibronic level structure feeding the placeholder response.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VibronicModel {
    /// Ground-state vibrational coherence frequencies (rad/s), all >= 0.
    pub ground_frequencies: Vec<f64>,
    /// Excited-state vibrational frequencies (rad/s); carried by the model
    /// for completeness, unused by the ground-coherence placeholder.
    pub excited_frequencies: Vec<f64>,
    /// Coherence damping rate gamma (1/s), > 0.
    pub damping: f64,
    /// Scalar dipole scale, > 0.
    pub dipole_scale: f64,
}

impl VibronicModel {
    pub fn new(
        ground_frequencies: Vec<f64>,
        excited_frequencies: Vec<f64>,
        damping: f64,
        dipole_scale: f64,
    ) -> Result<Self> {
        if ground_frequencies.is_empty() || excited_frequencies.is_empty() {
            return Err(Error::domain(
                "vibrational manifolds must hold at least one frequency".to_string(),
            ));
        }
        if ground_frequencies
            .iter()
            .chain(excited_frequencies.iter())
            .any(|w| !w.is_finite() || *w < 0.0)
        {
            return Err(Error::domain(
                "vibrational frequencies must be non-negative".to_string(),
            ));
        }
        if !damping.is_finite() || damping <= 0.0 {
            return Err(Error::domain(format!(
                "damping rate must be positive, got {damping}"
            )));
        }
        if !dipole_scale.is_finite() || dipole_scale <= 0.0 {
            return Err(Error::domain(format!(
                "dipole scale must be positive, got {dipole_scale}"
            )));
        }
        Ok(VibronicModel {
            ground_frequencies,
            excited_frequencies,
            damping,
            dipole_scale,
        })
    }

    /// Single ground mode at `omega` with damping `gamma`.
    pub fn single_mode(omega: f64, gamma: f64) -> Result<Self> {
        VibronicModel::new(vec![omega], vec![omega], gamma, 1.0)
    }
}

/// A 2D time-domain response R(T2, T4). Implementations must be pure in
/// their arguments.
pub trait ResponseFunction: Sync {
    /// Evaluate at non-negative delays.
    fn evaluate(&self, t2: f64, t4: f64) -> f64;
}

impl ResponseFunction for VibronicModel {
    fn evaluate(&self, t2: f64, t4: f64) -> f64 {
        let mut sum = 0.0;
        for &wa in &self.ground_frequencies {
            for &wb in &self.ground_frequencies {
                sum += (wa * t2).sin() * (wb * t4).sin();
            }
        }
        sum * (-self.damping * (t2 + t4)).exp()
    }
}

impl<F> ResponseFunction for F
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    fn evaluate(&self, t2: f64, t4: f64) -> f64 {
        self(t2, t4)
    }
}

/// Placeholder response: a sum over ground-coherence pairs (a, b) of
/// `sin(w_a T2) sin(w_b T4) exp(-gamma (T2 + T4))`.
///
/// Vanishes at T2 = 0 or T4 = 0 by construction of the sine factors.
pub fn default_response(model: &VibronicModel, t2: f64, t4: f64) -> Result<f64> {
    if t2 < 0.0 || t4 < 0.0 {
        return Err(Error::domain(format!(
            "delays must be non-negative, got T2 = {t2}, T4 = {t4}"
        )));
    }
    Ok(model.evaluate(t2, t4))
}

/// Uniform delay grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    /// First delay (s), >= 0.
    pub start: f64,
    /// Last delay (s), > start for more than one point.
    pub stop: f64,
    /// Number of samples, >= 1.
    pub points: usize,
}

impl TimeGrid {
    pub fn new(start: f64, stop: f64, points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::domain(
                "time grid needs at least one point".to_string(),
            ));
        }
        if start < 0.0 {
            return Err(Error::domain(format!(
                "delays must be non-negative, got start = {start}"
            )));
        }
        if points > 1 && (!stop.is_finite() || stop <= start) {
            return Err(Error::domain(
                "time grid stop must exceed start".to_string(),
            ));
        }
        Ok(TimeGrid {
            start,
            stop,
            points,
        })
    }

    /// Strictly increasing axis values.
    pub fn axis(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| self.start + step * i as f64)
            .collect()
    }
}

/// Which physical pathway a surface belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceLabel {
    Direct,
    Sequential,
    Parallel,
    Total,
}

/// Real amplitudes over a (T2, T4) grid, stored row-major in T2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Surface2D {
    pub label: SurfaceLabel,
    pub t2_axis: Vec<f64>,
    pub t4_axis: Vec<f64>,
    pub values: Vec<f64>,
}

impl Surface2D {
    pub fn value(&self, i2: usize, i4: usize) -> f64 {
        self.values[i2 * self.t4_axis.len() + i4]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }
}

/// Direct fifth-order geometric prefactor: magnitude `L |sinc(dk_z L / 2)|`
/// and phase `dk_z L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectPrefactor {
    pub magnitude: f64,
    pub phase: f64,
}

pub fn direct_prefactor(seq: &PulseSequence, cavity: &CavityGeometry) -> DirectPrefactor {
    let dkl = seq.direct_mismatch() * cavity.length;
    DirectPrefactor {
        magnitude: cavity.length * sinc(0.5 * dkl).abs(),
        phase: dkl,
    }
}

/// Assembly options.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AssembleOptions {
    /// When false the cascade pathways are skipped entirely and their
    /// surfaces are identically zero.
    pub include_cascades: bool,
    /// Extra multiplier on both cascade amplitudes (1 = physical; 0 forces
    /// the prefactors to zero through the same code path).
    pub cascade_amplitude_scale: f64,
}

impl Default for AssembleOptions {
    fn default() -> Self {
        AssembleOptions {
            include_cascades: true,
            cascade_amplitude_scale: 1.0,
        }
    }
}

/// The three pathway surfaces plus their sum, with the scalar amplitudes
/// that multiplied the shared response.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignalSurfaces {
    pub direct: Surface2D,
    pub sequential: Surface2D,
    pub parallel: Surface2D,
    pub total: Surface2D,
    pub direct_amplitude: f64,
    pub sequential_amplitude: f64,
    pub parallel_amplitude: f64,
    pub sequential_report: Option<SuppressionReport>,
    pub parallel_report: Option<SuppressionReport>,
}

/// Build the direct, sequential-cascade and parallel-cascade surfaces over
/// the delay grids, all sharing one response function.
///
/// Amplitudes follow the prefactor structure: the shared scale `mu N/Omega`
/// multiplies the direct factor `L sinc`, while each cascade additionally
/// carries the cascade-to-direct number-density scale and its geometric
/// total. The parallel pathway enters with [`PARALLEL_RELATIVE_AMPLITUDE`].
#[allow(clippy::too_many_arguments)]
pub fn assemble_signal(
    seq: &PulseSequence,
    cavity: &CavityGeometry,
    sample: &SampleConfig,
    response: &dyn ResponseFunction,
    t2_grid: &TimeGrid,
    t4_grid: &TimeGrid,
    selection: &ModeSelection,
    config: &CascadeConfig,
    options: &AssembleOptions,
) -> Result<SignalSurfaces> {
    let t2_axis = t2_grid.axis();
    let t4_axis = t4_grid.axis();

    let shared_scale = sample.dipole_scale * sample.molecule_count as f64 / sample.cavity_volume;
    let direct_amplitude = shared_scale * direct_prefactor(seq, cavity).magnitude;

    let (sequential_amplitude, parallel_amplitude, seq_report, par_report) =
        if options.include_cascades {
            let ctd = cascade_to_direct_scale(sample);
            let seq_cfg = CascadeConfig {
                kind: CascadeKind::Sequential,
                ..*config
            };
            let par_cfg = CascadeConfig {
                kind: CascadeKind::Parallel,
                ..*config
            };
            let seq_report = suppress(
                seq.seeding_pulse(CascadeKind::Sequential),
                cavity,
                selection,
                sample,
                &seq_cfg,
            )?;
            let par_report = suppress(
                seq.seeding_pulse(CascadeKind::Parallel),
                cavity,
                selection,
                sample,
                &par_cfg,
            )?;
            let base = shared_scale * ctd * options.cascade_amplitude_scale;
            (
                base * seq_report.total_prefactor,
                base * PARALLEL_RELATIVE_AMPLITUDE * par_report.total_prefactor,
                Some(seq_report),
                Some(par_report),
            )
        } else {
            (0.0, 0.0, None, None)
        };

    let n2 = t2_axis.len();
    let n4 = t4_axis.len();
    let mut direct = vec![0.0; n2 * n4];
    let mut sequential = vec![0.0; n2 * n4];
    let mut parallel = vec![0.0; n2 * n4];
    let mut total = vec![0.0; n2 * n4];
    for (i2, &t2) in t2_axis.iter().enumerate() {
        for (i4, &t4) in t4_axis.iter().enumerate() {
            let r = response.evaluate(t2, t4);
            let idx = i2 * n4 + i4;
            let d = direct_amplitude * r;
            let s = sequential_amplitude * r;
            let p = parallel_amplitude * r;
            direct[idx] = d;
            sequential[idx] = s;
            parallel[idx] = p;
            total[idx] = d + s + p;
        }
    }

    let surface = |label, values| Surface2D {
        label,
        t2_axis: t2_axis.clone(),
        t4_axis: t4_axis.clone(),
        values,
    };
    Ok(SignalSurfaces {
        direct: surface(SurfaceLabel::Direct, direct),
        sequential: surface(SurfaceLabel::Sequential, sequential),
        parallel: surface(SurfaceLabel::Parallel, parallel),
        total: surface(SurfaceLabel::Total, total),
        direct_amplitude,
        sequential_amplitude,
        parallel_amplitude,
        sequential_report: seq_report,
        parallel_report: par_report,
    })
}
