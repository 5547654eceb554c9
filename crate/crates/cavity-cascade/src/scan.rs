//! Parameter sweeps over cavity length and pulse angles, and grid-refinement
//! optimization of the cascade suppression.
//!
//! The objective is oscillatory (sinc^2 lobes), so the optimizer is a coarse
//! grid followed by iterative local refinement rather than gradient descent.
//! Grid evaluations run in parallel; the reduction to the incumbent is a
//! deterministic ordered comparison, so results are bit-identical regardless
//! of thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::cavity::CavityGeometry;
use crate::error::{Error, Result};
use crate::kernel::{suppress, CascadeConfig, ModeSelection, SampleConfig, SuppressionReport};
use crate::pulse::{CascadeKind, Pulse};

/// Default number of span-halving refinement steps.
pub const DEFAULT_REFINEMENT_STEPS: u32 = 25;

/// Minimum grid points per sinc lobe enforced on scan axes.
pub const POINTS_PER_LOBE: f64 = 8.0;

/// Validity window of the cavity model: `0.2 pi / k <= L <= 20 pi / k`.
/// Outside the upper end the mode density approaches free space and the
/// model says nothing useful.
pub const VALIDITY_WINDOW: (f64, f64) = (0.2 * PI, 20.0 * PI);

/// A parameter the scanner can sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweptParam {
    CavityLength,
    Theta2,
    Theta3,
}

impl SweptParam {
    pub fn label(self) -> &'static str {
        match self {
            SweptParam::CavityLength => "cavity_length",
            SweptParam::Theta2 => "theta2",
            SweptParam::Theta3 => "theta3",
        }
    }
}

/// One swept axis: an inclusive range and a point count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanAxis {
    pub param: SweptParam,
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl ScanAxis {
    pub fn new(param: SweptParam, min: f64, max: f64, points: usize) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() || max <= min {
            return Err(Error::domain(format!(
                "axis range must satisfy min < max, got [{min}, {max}]"
            )));
        }
        if points < 2 {
            return Err(Error::domain("axis needs at least 2 points".to_string()));
        }
        Ok(ScanAxis {
            param,
            min,
            max,
            points,
        })
    }

    fn values(&self, points: usize) -> Vec<f64> {
        let step = (self.max - self.min) / (points - 1) as f64;
        (0..points).map(|i| self.min + step * i as f64).collect()
    }
}

/// The fixed part of a scan: everything except the swept values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanBase {
    /// Shared wavenumber of the seeding pulses (1/m).
    pub wavenumber: f64,
    /// Polar angle of the k2 (sequential seed) pulse.
    pub theta2: f64,
    /// Polar angle of the k3 (parallel seed) pulse.
    pub theta3: f64,
    pub cavity: CavityGeometry,
    pub sample: SampleConfig,
    pub cascade: CascadeConfig,
    pub modes: ModeSelection,
}

impl ScanBase {
    fn with_values(&self, axes: &[ScanAxis], values: &[f64]) -> Result<(Pulse, CavityGeometry)> {
        let mut length = self.cavity.length;
        let mut theta2 = self.theta2;
        let mut theta3 = self.theta3;
        for (axis, &v) in axes.iter().zip(values.iter()) {
            match axis.param {
                SweptParam::CavityLength => length = v,
                SweptParam::Theta2 => theta2 = v,
                SweptParam::Theta3 => theta3 = v,
            }
        }
        let theta = match self.cascade.kind {
            CascadeKind::Sequential => theta2,
            CascadeKind::Parallel => theta3,
        };
        let cavity = CavityGeometry::new(length, self.cavity.max_mode_index)?;
        let pulse = Pulse::new(self.wavenumber, theta, 0.0)?;
        Ok((pulse, cavity))
    }

    /// Evaluate the suppression report at explicit parameter values.
    pub fn evaluate(&self, axes: &[ScanAxis], values: &[f64]) -> Result<SuppressionReport> {
        let (pulse, cavity) = self.with_values(axes, values)?;
        suppress(&pulse, &cavity, &self.modes, &self.sample, &self.cascade)
    }
}

/// A full scan specification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub base: ScanBase,
    /// One to three swept axes; row order is lexicographic in their indices.
    pub axes: Vec<ScanAxis>,
    /// When true (the default), a swept cavity length must stay inside the
    /// validity window; when false it is merely flagged in the warnings.
    pub enforce_validity: bool,
}

impl ScanSpec {
    pub fn new(base: ScanBase, axes: Vec<ScanAxis>) -> Result<Self> {
        if axes.is_empty() || axes.len() > 3 {
            return Err(Error::domain(
                "a scan sweeps between one and three parameters".to_string(),
            ));
        }
        for axis in &axes {
            match axis.param {
                SweptParam::CavityLength => {
                    if axis.min <= 0.0 {
                        return Err(Error::domain(
                            "cavity length range must be positive".to_string(),
                        ));
                    }
                }
                SweptParam::Theta2 | SweptParam::Theta3 => {
                    if axis.min < 0.0 || axis.max > PI {
                        return Err(Error::domain(
                            "angle ranges must lie inside [0, pi]".to_string(),
                        ));
                    }
                }
            }
        }
        Ok(ScanSpec {
            base,
            axes,
            enforce_validity: true,
        })
    }

    pub fn allow_outside_validity(mut self) -> Self {
        self.enforce_validity = false;
        self
    }

    /// Check length axes against the validity window. Errors when
    /// enforcement is on, otherwise returns warnings.
    fn validity_warnings(&self) -> Result<Vec<String>> {
        let mut warnings = Vec::new();
        let k = self.base.wavenumber;
        for axis in &self.axes {
            if axis.param != SweptParam::CavityLength {
                continue;
            }
            let (lo, hi) = (VALIDITY_WINDOW.0 / k, VALIDITY_WINDOW.1 / k);
            if axis.min < lo * (1.0 - 1e-12) || axis.max > hi * (1.0 + 1e-12) {
                let msg = format!(
                    "length range [{:.3e}, {:.3e}] m leaves the validity window [{:.3e}, {:.3e}] m",
                    axis.min, axis.max, lo, hi
                );
                if self.enforce_validity {
                    return Err(Error::domain(msg));
                }
                warnings.push(msg);
            }
        }
        Ok(warnings)
    }

    /// Point counts after enforcing the lobe-resolution floor.
    fn effective_points(&self) -> Vec<usize> {
        let k = self.base.wavenumber;
        let kl = k * self.base.cavity.length;
        self.axes
            .iter()
            .map(|axis| {
                let lobes = match axis.param {
                    // One sinc lobe per 2 pi / k of length.
                    SweptParam::CavityLength => k * (axis.max - axis.min) / TAU,
                    // d(dk L)/d(theta) is bounded by kL.
                    SweptParam::Theta2 | SweptParam::Theta3 => kl * (axis.max - axis.min) / TAU,
                };
                let needed = (POINTS_PER_LOBE * lobes).ceil() as usize + 1;
                axis.points.max(needed).max(2)
            })
            .collect()
    }
}

/// One evaluated grid point. Failed evaluations (singular configurations)
/// carry the error message instead of aborting the scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    /// Swept values, in axis order.
    pub values: Vec<f64>,
    pub report: Option<SuppressionReport>,
    pub error: Option<String>,
}

/// The evaluated grid, rows in lexicographic order of the axis indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanTable {
    pub axes: Vec<ScanAxis>,
    pub rows: Vec<ScanRow>,
    pub warnings: Vec<String>,
}

fn grid_values(axes: &[ScanAxis], points: &[usize]) -> Vec<Vec<f64>> {
    let per_axis: Vec<Vec<f64>> = axes
        .iter()
        .zip(points.iter())
        .map(|(a, &n)| a.values(n))
        .collect();
    let total: usize = points.iter().product();
    let mut out = Vec::with_capacity(total);
    for flat in 0..total {
        let mut rem = flat;
        let mut coords = vec![0.0; axes.len()];
        for i in (0..axes.len()).rev() {
            let n = points[i];
            coords[i] = per_axis[i][rem % n];
            rem /= n;
        }
        out.push(coords);
    }
    out
}

/// Evaluate the suppression report over the whole grid.
pub fn run_scan(spec: &ScanSpec) -> Result<ScanTable> {
    let warnings = spec.validity_warnings()?;
    let points = spec.effective_points();
    let grid = grid_values(&spec.axes, &points);
    let rows: Vec<ScanRow> = grid
        .into_par_iter()
        .map(|values| match spec.base.evaluate(&spec.axes, &values) {
            Ok(report) => ScanRow {
                values,
                report: Some(report),
                error: None,
            },
            Err(e) => ScanRow {
                values,
                report: None,
                error: Some(e.to_string()),
            },
        })
        .collect();
    Ok(ScanTable {
        axes: spec.axes.clone(),
        rows,
        warnings,
    })
}

/// Objective maximized by the optimizer: the suppression ratio formed from
/// the frequency-weighted mode-sum total.
pub fn objective(report: &SuppressionReport) -> f64 {
    report.total_suppression_ratio
}

/// One refinement step of the optimizer trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefinementStep {
    /// Span of each axis at this step, in axis order (up to 3).
    pub spans: [f64; 3],
    pub best_objective: f64,
}

/// Result of [`optimize`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimumResult {
    /// Best swept values, in axis order.
    pub values: Vec<f64>,
    pub objective: f64,
    pub report: SuppressionReport,
    /// Coarse grid resolution actually used per axis.
    pub grid_points: Vec<usize>,
    pub refinement_steps: u32,
    /// Final axis spans after the last refinement.
    pub final_spans: Vec<f64>,
    pub trace: Vec<RefinementStep>,
}

struct Incumbent {
    values: Vec<f64>,
    objective: f64,
    report: SuppressionReport,
}

/// Best point of a grid under deterministic ordered reduction: strictly
/// greater objective wins, ties keep the earlier (lower lexicographic index)
/// point.
fn best_of_grid(base: &ScanBase, axes: &[ScanAxis], points: &[usize]) -> Option<Incumbent> {
    let grid = grid_values(axes, points);
    let evaluated: Vec<(Vec<f64>, Option<SuppressionReport>)> = grid
        .into_par_iter()
        .map(|values| {
            let report = base.evaluate(axes, &values).ok();
            (values, report)
        })
        .collect();
    let mut best: Option<Incumbent> = None;
    for (values, report) in evaluated {
        let Some(report) = report else { continue };
        let obj = objective(&report);
        let replace = match &best {
            None => true,
            Some(b) => obj > b.objective,
        };
        if replace {
            best = Some(Incumbent {
                values,
                objective: obj,
                report,
            });
        }
    }
    best
}

/// Coarse grid search followed by iterative local refinement: each step
/// halves the span around the incumbent (clamped to the original box) and
/// re-grids. The incumbent never worsens.
pub fn optimize(spec: &ScanSpec, refinement_steps: u32) -> Result<OptimumResult> {
    spec.validity_warnings()?;
    let points = spec.effective_points();
    let mut best = best_of_grid(&spec.base, &spec.axes, &points)
        .ok_or_else(|| Error::NoFeasiblePoint("every grid point failed to evaluate".to_string()))?;

    let mut spans: Vec<f64> = spec.axes.iter().map(|a| a.max - a.min).collect();
    let mut trace = Vec::with_capacity(refinement_steps as usize);
    for _ in 0..refinement_steps {
        for s in spans.iter_mut() {
            *s *= 0.5;
        }
        let local_axes: Vec<ScanAxis> = spec
            .axes
            .iter()
            .zip(spans.iter())
            .zip(best.values.iter())
            .map(|((axis, &span), &center)| {
                let lo = (center - 0.5 * span).max(axis.min);
                let hi = (center + 0.5 * span).min(axis.max);
                ScanAxis {
                    param: axis.param,
                    min: lo,
                    max: hi,
                    points: axis.points,
                }
            })
            .collect();
        if let Some(candidate) = best_of_grid(&spec.base, &local_axes, &points) {
            if candidate.objective > best.objective {
                best = candidate;
            }
        }
        let mut step_spans = [0.0; 3];
        for (slot, s) in step_spans.iter_mut().zip(spans.iter()) {
            *slot = *s;
        }
        trace.push(RefinementStep {
            spans: step_spans,
            best_objective: best.objective,
        });
    }

    Ok(OptimumResult {
        values: best.values,
        objective: best.objective,
        report: best.report,
        grid_points: points,
        refinement_steps,
        final_spans: spans,
        trace,
    })
}

/// Finite-difference sensitivity of the optimizer objective.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sensitivity {
    /// d(objective)/d(parameter), per absolute parameter unit.
    pub derivative: f64,
    /// Absolute step used on each side.
    pub step: f64,
    /// True when one neighbor was singular and a one-sided difference was
    /// taken instead.
    pub one_sided: bool,
}

/// Central finite difference of the objective at `at`, with a relative step.
/// Falls back to a one-sided difference (flagged) when a neighbor is
/// singular.
pub fn sensitivity(
    base: &ScanBase,
    param: SweptParam,
    at: f64,
    relative_step: f64,
) -> Result<Sensitivity> {
    if !relative_step.is_finite() || relative_step <= 0.0 {
        return Err(Error::domain("relative step must be positive".to_string()));
    }
    let axis = ScanAxis {
        param,
        min: at,
        max: at + 1.0,
        points: 2,
    };
    let axes = std::slice::from_ref(&axis);
    let h = relative_step * at.abs().max(f64::MIN_POSITIVE);
    let eval = |x: f64| -> Option<f64> { base.evaluate(axes, &[x]).ok().map(|r| objective(&r)) };
    let center = eval(at).ok_or_else(|| {
        Error::NoFeasiblePoint("objective is singular at the expansion point".to_string())
    })?;
    match (eval(at - h), eval(at + h)) {
        (Some(lo), Some(hi)) => Ok(Sensitivity {
            derivative: (hi - lo) / (2.0 * h),
            step: h,
            one_sided: false,
        }),
        (None, Some(hi)) => Ok(Sensitivity {
            derivative: (hi - center) / h,
            step: h,
            one_sided: true,
        }),
        (Some(lo), None) => Ok(Sensitivity {
            derivative: (center - lo) / h,
            step: h,
            one_sided: true,
        }),
        (None, None) => Err(Error::NoFeasiblePoint(
            "both finite-difference neighbors are singular".to_string(),
        )),
    }
}
