//! Dimensionless cascade prefactors, their mode sums, and the closed-form
//! design rules that follow from them.
//!
//! Inside the cavity the intermediate photon of a cascade is restricted to
//! standing-wave modes, and each mode `m` contributes a geometric weight
//!
//! ```text
//! f_m = m^2 pi^2 / D^2 * sinc^2(dk_z L / 2),     dk_z = k_z -+ m pi / L
//! ```
//!
//! where `D` is the denominator under the chosen convention. The headline
//! suppression figures all come from the m = 1 term of this expression; the
//! summed, frequency-weighted total feeds the scan objective.
//!
//! Two conventions are kept selectable because the defining expression
//! can be read two ways:
//!
//! * denominator: `literal` keeps the full two-term form
//!   `D = dk_z L +- 2 m pi`; `as-evaluated` uses `D = dk_z L`, the form the
//!   0.005 headline estimate divides by. As-evaluated is the default since
//!   it reproduces that figure.
//! * reference: `unit-bound` normalizes ratios against 1 (reading 0.005 as
//!   99.5% suppression); `matched-peak` normalizes against the value 1/4
//!   that the literal form takes at perfect phase matching.

use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::cavity::{
    cascade_mode_frequency, contributing_modes, CavityGeometry, ResonanceWindow, SPEED_OF_LIGHT,
};
use crate::error::{Error, Result};
use crate::pulse::{longitudinal_mismatch, sinc, Branch, CascadeKind, Pulse};

/// Prefactor value at perfect phase matching under the literal convention,
/// `m^2 pi^2 / (2 m pi)^2 = 1/4` for every mode.
pub const MATCHED_PEAK_PREFACTOR: f64 = 0.25;

/// Relative threshold below which a denominator counts as vanished. Scaled
/// by the quantized wavevector step `2 m pi`, so exactly-matched
/// configurations built from rounded inputs are still reported as singular.
const SINGULAR_REL_TOL: f64 = 1e-9;

/// Sample properties entering the cascade-to-direct amplitude ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    /// Number of molecules, >= 1.
    pub molecule_count: u64,
    /// Cavity volume Omega (m^3), > 0.
    pub cavity_volume: f64,
    /// Single scalar standing in for all transition-dipole products, > 0.
    pub dipole_scale: f64,
}

impl SampleConfig {
    pub fn new(molecule_count: u64, cavity_volume: f64, dipole_scale: f64) -> Result<Self> {
        if molecule_count < 1 {
            return Err(Error::domain("molecule count must be >= 1".to_string()));
        }
        if !cavity_volume.is_finite() || cavity_volume <= 0.0 {
            return Err(Error::domain(format!(
                "cavity volume must be positive, got {cavity_volume}"
            )));
        }
        if !dipole_scale.is_finite() || dipole_scale <= 0.0 {
            return Err(Error::domain(format!(
                "dipole scale must be positive, got {dipole_scale}"
            )));
        }
        Ok(SampleConfig {
            molecule_count,
            cavity_volume,
            dipole_scale,
        })
    }
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            molecule_count: 1_000_000,
            cavity_volume: 1e-18,
            dipole_scale: 1.0,
        }
    }
}

/// Which branches of the `-+` mismatch enter a mode sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum BranchPolicy {
    #[default]
    SumBoth,
    PlusOnly,
    MinusOnly,
}

impl BranchPolicy {
    pub fn branches(self) -> &'static [Branch] {
        match self {
            BranchPolicy::SumBoth => &Branch::BOTH,
            BranchPolicy::PlusOnly => &[Branch::Plus],
            BranchPolicy::MinusOnly => &[Branch::Minus],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BranchPolicy::SumBoth => "both",
            BranchPolicy::PlusOnly => "plus",
            BranchPolicy::MinusOnly => "minus",
        }
    }
}

/// Denominator convention of the per-mode prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum DenominatorConvention {
    /// `D = dk_z L +- 2 m pi`, the full two-term form.
    Literal,
    /// `D = dk_z L`, the form the headline estimates divide by.
    #[default]
    AsEvaluated,
}

impl DenominatorConvention {
    pub fn label(self) -> &'static str {
        match self {
            DenominatorConvention::Literal => "literal",
            DenominatorConvention::AsEvaluated => "as-evaluated",
        }
    }
}

/// Normalization used when converting prefactors into suppression ratios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceConvention {
    /// Reference value 1: a prefactor of 0.005 reads as 99.5% suppression.
    #[default]
    UnitBound,
    /// Reference value 1/4, the same-mode prefactor at perfect matching.
    MatchedPeak,
}

impl ReferenceConvention {
    pub fn reference_value(self) -> f64 {
        match self {
            ReferenceConvention::UnitBound => 1.0,
            ReferenceConvention::MatchedPeak => MATCHED_PEAK_PREFACTOR,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ReferenceConvention::UnitBound => "unit-bound",
            ReferenceConvention::MatchedPeak => "matched-peak",
        }
    }
}

/// Full kernel configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CascadeConfig {
    pub kind: CascadeKind,
    pub branch_policy: BranchPolicy,
    pub denominator_convention: DenominatorConvention,
    pub reference_convention: ReferenceConvention,
}

impl Default for CascadeConfig {
    fn default() -> Self {
        CascadeConfig {
            kind: CascadeKind::Sequential,
            branch_policy: BranchPolicy::default(),
            denominator_convention: DenominatorConvention::default(),
            reference_convention: ReferenceConvention::default(),
        }
    }
}

/// How the set of contributing standing-wave modes is chosen for a report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub enum ModeSelection {
    /// Regime bookkeeping behind the closed-form design rules: {1, 2} for
    /// sub-wavelength cavities (kL <= 2 pi), otherwise {1, ..., 2p} with
    /// p = round(kL / 2 pi) - 1, so the optimum kL = 2(p+1) pi carries the
    /// mode set {1, ..., 2p}.
    #[default]
    Regime,
    /// Fixed set {1, ..., n}, stable across a scan.
    FixedCount(u32),
    /// Modes selected by the resonance window test.
    Window(ResonanceWindow),
}

/// Mode count used by [`ModeSelection::Regime`].
pub fn regime_mode_count(seeding: &Pulse, cavity: &CavityGeometry) -> u32 {
    let kl = seeding.wavenumber * cavity.length;
    if kl <= TAU {
        2
    } else {
        let p = ((kl / TAU).round() as i64 - 1).max(1) as u32;
        2 * p
    }
}

/// One (mode, branch) contribution to a cascade total.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeTerm {
    pub mode: u32,
    /// +1 or -1.
    pub branch: i8,
    /// Dimensionless geometric prefactor f_m of this branch.
    pub prefactor: f64,
    /// Mode-frequency weight omega_m / omega_ref.
    pub weight: f64,
    /// The summand, `weight * prefactor`.
    pub term: f64,
}

/// Everything a suppression evaluation produced, plus the configuration that
/// produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuppressionReport {
    pub kind: CascadeKind,
    pub cavity_length: f64,
    pub max_mode_index: u32,
    pub wavenumber: f64,
    pub polar_angle: f64,
    pub branch_policy: BranchPolicy,
    pub denominator_convention: DenominatorConvention,
    pub reference_convention: ReferenceConvention,
    /// Human-readable description of how the mode set was chosen.
    pub mode_selection: String,
    /// Contributing standing-wave indices, ascending.
    pub modes: Vec<u32>,
    /// Per-(mode, branch) contributions in ascending (mode, branch) order,
    /// plus branch before minus.
    pub terms: Vec<ModeTerm>,
    /// Sum of `terms[i].term` in listed order.
    pub total_prefactor: f64,
    /// Unweighted prefactor of the lowest contributing mode, maximized over
    /// the allowed branches. This is the term the closed-form design rules
    /// bound; `None` when no mode contributes.
    pub dominant_prefactor: Option<f64>,
    /// Headline figure: `1 - dominant_prefactor / f_ref`, clamped to [0, 1].
    pub suppression_ratio: f64,
    /// `1 - total_prefactor / ref`, clamped to [0, 1]; the scan objective.
    pub total_suppression_ratio: f64,
    pub molecule_count: u64,
    pub cavity_volume: f64,
    pub notes: Vec<String>,
}

/// Geometric prefactor of a single (mode, branch) term.
///
/// Dimensionless: the explicit L^2 of the raw expression cancels against the
/// denominator. Errors with [`Error::SingularConfiguration`] where the
/// denominator vanishes; the expression genuinely diverges there and is
/// outside the regime the design rules cover.
pub fn cascade_prefactor_m(
    seeding: &Pulse,
    m: u32,
    cavity: &CavityGeometry,
    branch: Branch,
    convention: DenominatorConvention,
) -> Result<f64> {
    let dk = longitudinal_mismatch(seeding, m, cavity, branch)?;
    let dkl = dk * cavity.length;
    let two_m_pi = 2.0 * m as f64 * PI;
    let denom = match convention {
        DenominatorConvention::Literal => dkl + branch.sign() * two_m_pi,
        DenominatorConvention::AsEvaluated => dkl,
    };
    if denom.abs() <= SINGULAR_REL_TOL * two_m_pi {
        return Err(Error::SingularConfiguration {
            mode: m,
            branch: branch.as_i8(),
        });
    }
    let mpi = m as f64 * PI;
    let s = sinc(0.5 * dkl);
    Ok((mpi / denom).powi(2) * s * s)
}

/// Scalar suppression ratio `1 - prefactor / f_ref`, clamped to [0, 1].
pub fn suppression_ratio(prefactor: f64, reference: ReferenceConvention) -> Result<f64> {
    suppression_ratio_against(prefactor, reference.reference_value())
}

/// Same, against an explicit reference value.
pub fn suppression_ratio_against(prefactor: f64, reference: f64) -> Result<f64> {
    if !reference.is_finite() || reference <= 0.0 {
        return Err(Error::InvalidReference(format!(
            "reference prefactor must be positive, got {reference}"
        )));
    }
    Ok((1.0 - prefactor / reference).clamp(0.0, 1.0))
}

fn resolve_modes(
    selection: &ModeSelection,
    seeding: &Pulse,
    cavity: &CavityGeometry,
) -> Result<(Vec<u32>, f64, String)> {
    match selection {
        ModeSelection::Regime => {
            let count = regime_mode_count(seeding, cavity).min(cavity.max_mode_index);
            let modes = (1..=count).collect();
            let omega_ref = SPEED_OF_LIGHT * seeding.wavenumber;
            Ok((modes, omega_ref, format!("regime (1..={count})")))
        }
        ModeSelection::FixedCount(n) => {
            if *n < 1 {
                return Err(Error::domain("fixed mode count must be >= 1".to_string()));
            }
            let count = (*n).min(cavity.max_mode_index);
            let modes = (1..=count).collect();
            let omega_ref = SPEED_OF_LIGHT * seeding.wavenumber;
            Ok((modes, omega_ref, format!("fixed (1..={count})")))
        }
        ModeSelection::Window(window) => {
            let modes = contributing_modes(seeding, cavity, window)?;
            Ok((
                modes,
                window.center,
                format!(
                    "resonance window (halfwidth {} of center; calibration choice)",
                    window.relative_halfwidth
                ),
            ))
        }
    }
}

/// Evaluate the suppression report for one cascade configuration.
///
/// The total sums `omega_m / omega_ref * f_m` over the contributing modes
/// and allowed branches in ascending (mode, branch) order; the headline
/// ratio is formed from the lowest mode's prefactor alone, which is the
/// quantity the design rules bound.
pub fn suppress(
    seeding: &Pulse,
    cavity: &CavityGeometry,
    selection: &ModeSelection,
    sample: &SampleConfig,
    config: &CascadeConfig,
) -> Result<SuppressionReport> {
    let (modes, omega_ref, selection_label) = resolve_modes(selection, seeding, cavity)?;
    let mut notes = Vec::new();
    if let ModeSelection::Window(_) = selection {
        notes.push(
            "resonance window halfwidth is a calibration choice; the resonant condition is only qualitative".to_string(),
        );
    }

    let mut terms = Vec::with_capacity(modes.len() * 2);
    let mut total = 0.0;
    for &m in &modes {
        let omega = cascade_mode_frequency(m, seeding, cavity)?;
        let weight = omega / omega_ref;
        for &branch in config.branch_policy.branches() {
            let prefactor =
                cascade_prefactor_m(seeding, m, cavity, branch, config.denominator_convention)?;
            let term = weight * prefactor;
            total += term;
            terms.push(ModeTerm {
                mode: m,
                branch: branch.as_i8(),
                prefactor,
                weight,
                term,
            });
        }
    }

    let dominant = match modes.first() {
        Some(&m0) => {
            let mut best = f64::NEG_INFINITY;
            for &branch in config.branch_policy.branches() {
                let f = cascade_prefactor_m(
                    seeding,
                    m0,
                    cavity,
                    branch,
                    config.denominator_convention,
                )?;
                if f > best {
                    best = f;
                }
            }
            Some(best)
        }
        None => {
            notes.push("no resonant modes: cascade total is zero".to_string());
            None
        }
    };

    let f_ref = config.reference_convention.reference_value();
    let suppression = match dominant {
        Some(f) => suppression_ratio_against(f, f_ref)?,
        None => 1.0,
    };
    // The matched-peak reference for the total keeps the same weight
    // structure, each prefactor replaced by its peak value.
    let total_ref = match config.reference_convention {
        ReferenceConvention::UnitBound => 1.0,
        ReferenceConvention::MatchedPeak => terms
            .iter()
            .map(|t| t.weight * MATCHED_PEAK_PREFACTOR)
            .sum::<f64>(),
    };
    let total_suppression = if terms.is_empty() {
        1.0
    } else {
        suppression_ratio_against(total, total_ref)?
    };

    Ok(SuppressionReport {
        kind: config.kind,
        cavity_length: cavity.length,
        max_mode_index: cavity.max_mode_index,
        wavenumber: seeding.wavenumber,
        polar_angle: seeding.polar_angle,
        branch_policy: config.branch_policy,
        denominator_convention: config.denominator_convention,
        reference_convention: config.reference_convention,
        mode_selection: selection_label,
        modes,
        terms,
        total_prefactor: total,
        dominant_prefactor: dominant,
        suppression_ratio: suppression,
        total_suppression_ratio: total_suppression,
        molecule_count: sample.molecule_count,
        cavity_volume: sample.cavity_volume,
        notes,
    })
}

/// Suppression report with the mode set chosen by a resonance window.
pub fn cascade_prefactor_total(
    seeding: &Pulse,
    cavity: &CavityGeometry,
    window: &ResonanceWindow,
    sample: &SampleConfig,
    config: &CascadeConfig,
) -> Result<SuppressionReport> {
    suppress(
        seeding,
        cavity,
        &ModeSelection::Window(*window),
        sample,
        config,
    )
}

/// Polar-angle interval guaranteeing at least 50% suppression of the
/// dominant term in a sub-wavelength cavity: `|cos theta| <= (pi - 3)/(kL)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleWindow {
    /// Lower edge (rad).
    pub lower: f64,
    /// Upper edge (rad).
    pub upper: f64,
    /// True when the bound exceeds 1 and every angle qualifies.
    pub full: bool,
}

impl AngleWindow {
    pub fn contains(&self, theta: f64) -> bool {
        self.full || (self.lower..=self.upper).contains(&theta)
    }
}

pub fn angle_window_50(wavenumber: f64, cavity: &CavityGeometry) -> Result<AngleWindow> {
    if !wavenumber.is_finite() || wavenumber <= 0.0 {
        return Err(Error::domain(format!(
            "wavenumber must be positive, got {wavenumber}"
        )));
    }
    let bound = (PI - 3.0) / (wavenumber * cavity.length);
    if bound >= 1.0 {
        return Ok(AngleWindow {
            lower: 0.0,
            upper: PI,
            full: true,
        });
    }
    let edge = bound.acos();
    Ok(AngleWindow {
        lower: edge,
        upper: PI - edge,
        full: false,
    })
}

/// Cone about the cavity axis guaranteeing at least 95% suppression in a
/// large cavity tuned to `kL = 2(p+1) pi`:
/// `theta <= arccos((p + 5/(2 pi)) / (p + 1))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuppressionCone {
    /// Maximum polar angle (rad).
    pub max_angle: f64,
    /// True when the bound exceeds 1 and no angle qualifies.
    pub empty: bool,
}

pub fn angle_window_95(p: u32) -> Result<SuppressionCone> {
    if p < 1 {
        return Err(Error::domain("regime index p must be >= 1".to_string()));
    }
    let ratio = (p as f64 + 5.0 / TAU) / (p as f64 + 1.0);
    if ratio > 1.0 {
        return Ok(SuppressionCone {
            max_angle: 0.0,
            empty: true,
        });
    }
    Ok(SuppressionCone {
        max_angle: ratio.acos(),
        empty: false,
    })
}

/// Number-density scaling of cascade relative to direct amplitudes,
/// `64 pi^4 * N / Omega`, with response amplitudes set to unity.
///
/// The absolute magnitude is model-dependent; only ratios between
/// configurations are meaningful.
pub fn cascade_to_direct_scale(sample: &SampleConfig) -> f64 {
    64.0 * PI.powi(4) * sample.molecule_count as f64 / sample.cavity_volume
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cavity::DEFAULT_RELATIVE_HALFWIDTH;

    fn axial_pulse(kl: f64, length: f64) -> Pulse {
        Pulse::new(kl / length, 0.0, 0.0).unwrap()
    }

    /// Independent algebraic route: f = 4 m^2 pi^2 sin^2(x/2) / (x^2 D^2).
    fn prefactor_oracle(dkl: f64, m: u32, branch: Branch, conv: DenominatorConvention) -> f64 {
        let d = match conv {
            DenominatorConvention::Literal => dkl + branch.sign() * 2.0 * m as f64 * PI,
            DenominatorConvention::AsEvaluated => dkl,
        };
        let half = 0.5 * dkl;
        let s = if half == 0.0 { 1.0 } else { half.sin() / half };
        (m as f64 * PI / d).powi(2) * s * s
    }

    #[test]
    fn headline_prefactor_at_design_optimum() {
        // m = 1, theta = 0, kL = 4 pi, as-evaluated:
        // pi^2/(3 pi)^2 * sinc^2(3 pi / 2) ~= 0.00501.
        let length = 1e-6;
        let seeding = axial_pulse(4.0 * PI, length);
        let cavity = CavityGeometry::with_length(length).unwrap();
        let f = cascade_prefactor_m(
            &seeding,
            1,
            &cavity,
            Branch::Plus,
            DenominatorConvention::AsEvaluated,
        )
        .unwrap();
        assert!((f - 0.005).abs() < 5e-4);
        let exact = 4.0 / (81.0 * PI * PI);
        assert!((f - exact).abs() < 1e-12);
    }

    #[test]
    fn literal_prefactor_at_perfect_matching_is_one_quarter() {
        // dk = 0: kL = pi with theta = 0 phase-matches m = 1 on the plus branch.
        let length = 250e-9;
        let seeding = axial_pulse(PI, length);
        let cavity = CavityGeometry::with_length(length).unwrap();
        let f = cascade_prefactor_m(
            &seeding,
            1,
            &cavity,
            Branch::Plus,
            DenominatorConvention::Literal,
        )
        .unwrap();
        assert!((f - 0.25).abs() < 1e-9);
    }

    #[test]
    fn grazing_second_mode_literal_minus_vanishes() {
        // m = 2, theta = 90 deg, kL = 2 pi: the sinc argument is m pi / 2 = pi,
        // so the prefactor vanishes for either branch.
        let length = 500e-9;
        let k = 2.0 * PI / length;
        let seeding = Pulse::new(k, PI / 2.0, 0.0).unwrap();
        let cavity = CavityGeometry::with_length(length).unwrap();
        let f = cascade_prefactor_m(
            &seeding,
            2,
            &cavity,
            Branch::Minus,
            DenominatorConvention::Literal,
        )
        .unwrap();
        assert!(f.abs() < 1e-30);
        let dkl = longitudinal_mismatch(&seeding, 2, &cavity, Branch::Minus).unwrap() * length;
        let oracle = prefactor_oracle(dkl, 2, Branch::Minus, DenominatorConvention::Literal);
        assert!((f - oracle).abs() <= 1e-15 * oracle.abs().max(1e-30));
    }

    #[test]
    fn prefactor_matches_independent_algebra() {
        let cavity = CavityGeometry::with_length(740e-9).unwrap();
        let angles = [0.0, 0.31, 1.1, PI / 2.0, 2.3, PI];
        let ks = [2.0 * PI / 450e-9, 2.0 * PI / 633e-9, 9.1e6];
        for &k in &ks {
            for &th in &angles {
                let p = Pulse::new(k, th, 0.0).unwrap();
                for m in 1..=5u32 {
                    for &branch in &Branch::BOTH {
                        for conv in [
                            DenominatorConvention::Literal,
                            DenominatorConvention::AsEvaluated,
                        ] {
                            let dkl = longitudinal_mismatch(&p, m, &cavity, branch).unwrap()
                                * cavity.length;
                            let f = match cascade_prefactor_m(&p, m, &cavity, branch, conv) {
                                Ok(f) => f,
                                Err(_) => continue,
                            };
                            let oracle = prefactor_oracle(dkl, m, branch, conv);
                            assert!(
                                (f - oracle).abs() <= 1e-12 * oracle.abs().max(1e-30),
                                "k={k} th={th} m={m}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn literal_branches_coincide() {
        // Under the literal convention the two branches give the same value.
        let cavity = CavityGeometry::with_length(540e-9).unwrap();
        let p = Pulse::new(2.0 * PI / 600e-9, 0.83, 0.0).unwrap();
        for m in 1..=4u32 {
            let a =
                cascade_prefactor_m(&p, m, &cavity, Branch::Plus, DenominatorConvention::Literal)
                    .unwrap();
            let b = cascade_prefactor_m(
                &p,
                m,
                &cavity,
                Branch::Minus,
                DenominatorConvention::Literal,
            )
            .unwrap();
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-30));
        }
    }

    #[test]
    fn as_evaluated_singular_at_perfect_matching() {
        // kL = pi, theta = 0, m = 1, plus branch: dk = 0 exactly up to rounding.
        let length = 250e-9;
        let seeding = axial_pulse(PI, length);
        let cavity = CavityGeometry::with_length(length).unwrap();
        let err = cascade_prefactor_m(
            &seeding,
            1,
            &cavity,
            Branch::Plus,
            DenominatorConvention::AsEvaluated,
        )
        .unwrap_err();
        match err {
            Error::SingularConfiguration { mode, branch } => {
                assert_eq!(mode, 1);
                assert_eq!(branch, 1);
            }
            other => panic!("expected singular configuration, got {other}"),
        }
    }

    #[test]
    fn prefactor_decays_with_mismatch() {
        // f_m -> 0 as |dk L| grows, following the 4 m^2 pi^2 / x^4 envelope.
        let m = 2u32;
        for i in 0..40 {
            let x = 4.0 * 10f64.powf(i as f64 * 0.1); // log-spaced in [4, 4e4]
            let f = prefactor_oracle(x, m, Branch::Plus, DenominatorConvention::AsEvaluated);
            let envelope = 4.0 * (m as f64 * PI).powi(2) / x.powi(4);
            assert!(f >= 0.0);
            assert!(f <= envelope * (1.0 + 1e-12));
        }
        let far = prefactor_oracle(1e4, m, Branch::Plus, DenominatorConvention::AsEvaluated);
        assert!(far < 1e-10);
    }

    #[test]
    fn suppression_ratio_conventions() {
        assert!(
            (suppression_ratio(0.005, ReferenceConvention::UnitBound).unwrap() - 0.995).abs()
                < 1e-12
        );
        assert_eq!(
            suppression_ratio(MATCHED_PEAK_PREFACTOR, ReferenceConvention::MatchedPeak).unwrap(),
            0.0
        );
        assert!(
            (suppression_ratio(0.005, ReferenceConvention::MatchedPeak).unwrap() - 0.98).abs()
                < 1e-12
        );
        assert!(suppression_ratio_against(0.1, 0.0).is_err());
        // Clamped to [0, 1].
        assert_eq!(suppression_ratio_against(3.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn regime_mode_count_by_regime() {
        let k = 2.0 * PI / 500e-9;
        let geometry = |kl: f64| CavityGeometry::with_length(kl / k).unwrap();
        let pulse = |kl: f64| Pulse::new(k, 0.0, 0.0).map(|p| (p, geometry(kl))).unwrap();

        for (kl, expect) in [
            (0.4 * PI, 2u32),
            (TAU, 2),
            (4.0 * PI, 2),
            (6.0 * PI, 4),
            (8.0 * PI, 6),
            (20.0 * PI, 18),
        ] {
            let (p, cav) = pulse(kl);
            assert_eq!(regime_mode_count(&p, &cav), expect, "kL = {kl}");
        }
    }

    #[test]
    fn report_at_design_optimum() {
        let length = 1e-6;
        let seeding = axial_pulse(4.0 * PI, length);
        let cavity = CavityGeometry::with_length(length).unwrap();
        let report = suppress(
            &seeding,
            &cavity,
            &ModeSelection::Regime,
            &SampleConfig::default(),
            &CascadeConfig::default(),
        )
        .unwrap();
        assert_eq!(report.modes, vec![1, 2]);
        // Sum over both branches of two modes: four terms.
        assert_eq!(report.terms.len(), 4);
        let dominant = report.dominant_prefactor.unwrap();
        assert!((dominant - 0.005).abs() < 5e-4);
        assert!((report.suppression_ratio - 0.995).abs() <= 1e-3);
        // Total re-summation in listed order is exact.
        let mut resum = 0.0;
        for t in &report.terms {
            resum += t.term;
        }
        assert_eq!(resum, report.total_prefactor);
    }

    #[test]
    fn window_report_counts_terms() {
        // L = lambda, theta = 90 deg, default window: modes {1, 2}; two terms
        // per mode with both branches, one with a single branch.
        let length = 500e-9;
        let k = 2.0 * PI / length;
        let seeding = Pulse::new(k, PI / 2.0, 0.0).unwrap();
        let cavity = CavityGeometry::with_length(length).unwrap();
        let window = ResonanceWindow::around_pulse(&seeding);
        assert_eq!(window.relative_halfwidth, DEFAULT_RELATIVE_HALFWIDTH);
        let sample = SampleConfig::default();

        let both = cascade_prefactor_total(
            &seeding,
            &cavity,
            &window,
            &sample,
            &CascadeConfig::default(),
        )
        .unwrap();
        assert_eq!(both.modes, vec![1, 2]);
        assert_eq!(both.terms.len(), 4);

        let single = cascade_prefactor_total(
            &seeding,
            &cavity,
            &window,
            &sample,
            &CascadeConfig {
                branch_policy: BranchPolicy::PlusOnly,
                ..CascadeConfig::default()
            },
        )
        .unwrap();
        assert_eq!(single.terms.len(), 2);
    }

    #[test]
    fn empty_window_reports_zero_total() {
        let length = 2e-6;
        let k = 2.0 * PI / 500e-9;
        let seeding = Pulse::new(k, 0.0, 0.0).unwrap();
        let cavity = CavityGeometry::with_length(length).unwrap();
        let w_lo = cascade_mode_frequency(4, &seeding, &cavity).unwrap();
        let w_hi = cascade_mode_frequency(5, &seeding, &cavity).unwrap();
        let window = ResonanceWindow::new(0.5 * (w_lo + w_hi), 1e-6).unwrap();
        let report = cascade_prefactor_total(
            &seeding,
            &cavity,
            &window,
            &SampleConfig::default(),
            &CascadeConfig::default(),
        )
        .unwrap();
        assert!(report.modes.is_empty());
        assert_eq!(report.total_prefactor, 0.0);
        assert!(report.dominant_prefactor.is_none());
        assert!(report.notes.iter().any(|n| n.contains("no resonant modes")));
    }

    #[test]
    fn window_total_matches_bruteforce_resummation() {
        // Independent loop over every index up to the cutoff, applying the
        // window test directly, summed in the same order.
        let k = 2.0 * PI / 520e-9;
        let cavity = CavityGeometry::new(2.6e-6, 64).unwrap();
        let seeding = Pulse::new(k, 0.42, 0.0).unwrap();
        let window = ResonanceWindow::around_pulse(&seeding);
        let config = CascadeConfig::default();
        let report = cascade_prefactor_total(
            &seeding,
            &cavity,
            &window,
            &SampleConfig::default(),
            &config,
        )
        .unwrap();

        let mut total = 0.0;
        for m in 1..=cavity.max_mode_index {
            let omega = cascade_mode_frequency(m, &seeding, &cavity).unwrap();
            if !window.contains(omega) {
                continue;
            }
            for &branch in &Branch::BOTH {
                let dkl =
                    longitudinal_mismatch(&seeding, m, &cavity, branch).unwrap() * cavity.length;
                total += omega / window.center
                    * prefactor_oracle(dkl, m, branch, config.denominator_convention);
            }
        }
        assert!((total - report.total_prefactor).abs() <= 1e-12 * total.abs().max(1e-300));
    }

    #[test]
    fn azimuth_does_not_change_reports() {
        let length = 620e-9;
        let k = 2.0 * PI / 510e-9;
        let cavity = CavityGeometry::with_length(length).unwrap();
        let a = Pulse::new(k, 1.2, 0.0).unwrap();
        let b = Pulse::new(k, 1.2, 4.5).unwrap();
        let sample = SampleConfig::default();
        let config = CascadeConfig::default();
        let ra = suppress(&a, &cavity, &ModeSelection::Regime, &sample, &config).unwrap();
        let rb = suppress(&b, &cavity, &ModeSelection::Regime, &sample, &config).unwrap();
        assert_eq!(ra.total_prefactor, rb.total_prefactor);
        assert_eq!(ra.suppression_ratio, rb.suppression_ratio);
    }

    #[test]
    fn angle_window_50_examples() {
        // L = 100nm, lambda = 600nm: [82.2, 97.8] degrees.
        let cavity = CavityGeometry::with_length(100e-9).unwrap();
        let w = angle_window_50(2.0 * PI / 600e-9, &cavity).unwrap();
        assert!(!w.full);
        assert!((w.lower.to_degrees() - 82.229).abs() < 0.05);
        assert!((w.upper.to_degrees() - 97.771).abs() < 0.05);

        // Bound exceeding 1: full interval.
        let tiny = CavityGeometry::with_length(1e-9).unwrap();
        let w = angle_window_50(2.0 * PI / 600e-9, &tiny).unwrap();
        assert!(w.full);
        assert_eq!(w.lower, 0.0);
        assert_eq!(w.upper, PI);
        assert!(w.contains(0.3));

        // L = 200nm, lambda = 500nm: about [86.8, 93.2] degrees.
        let cavity = CavityGeometry::with_length(200e-9).unwrap();
        let w = angle_window_50(2.0 * PI / 500e-9, &cavity).unwrap();
        assert!((w.lower.to_degrees() - 86.77).abs() < 0.05);
        assert!((w.upper.to_degrees() - 93.23).abs() < 0.05);
    }

    #[test]
    fn dominant_sinc_bounded_inside_angle_window_50() {
        // For every theta in the window, the m = 1 sinc^2 factor stays below
        // 0.5 * 1.15 (the criterion behind the window is approximate).
        let cavity = CavityGeometry::with_length(100e-9).unwrap();
        let k = 2.0 * PI / 600e-9;
        let w = angle_window_50(k, &cavity).unwrap();
        for i in 0..=400 {
            let theta = w.lower + (w.upper - w.lower) * i as f64 / 400.0;
            let p = Pulse::new(k, theta, 0.0).unwrap();
            let dkl = longitudinal_mismatch(&p, 1, &cavity, Branch::Plus).unwrap() * cavity.length;
            let s = sinc(0.5 * dkl);
            assert!(s * s <= 0.5 * 1.15, "theta = {theta}: sinc^2 = {}", s * s);
        }
    }

    #[test]
    fn angle_window_95_examples() {
        let cone = angle_window_95(1).unwrap();
        assert!(!cone.empty);
        assert!((cone.max_angle.to_degrees() - 26.1).abs() < 0.1);

        let cone = angle_window_95(2).unwrap();
        assert!((cone.max_angle.to_degrees() - 21.3).abs() < 0.1);

        // The cone shrinks toward zero as p grows.
        let mut last = f64::INFINITY;
        for p in 1..=60 {
            let cone = angle_window_95(p).unwrap();
            assert!(cone.max_angle < last);
            last = cone.max_angle;
        }
        assert!(last.to_degrees() < 6.0);
        assert!(angle_window_95(0).is_err());
    }

    #[test]
    fn cascade_to_direct_scale_examples() {
        // N = 1e6, Omega = 1 um^3: 64 pi^4 x 1e24.
        let sample = SampleConfig::new(1_000_000, 1e-18, 1.0).unwrap();
        let scale = cascade_to_direct_scale(&sample);
        let expect = 64.0 * PI.powi(4) * 1e24;
        assert!((scale - expect).abs() < 1e-12 * expect);

        // Linear in N; inverse in Omega.
        let doubled = SampleConfig::new(2_000_000, 1e-18, 1.0).unwrap();
        assert!((cascade_to_direct_scale(&doubled) - 2.0 * scale).abs() <= 1e-9 * scale);
        let single = SampleConfig::new(1, 1e-18, 1.0).unwrap();
        assert!((cascade_to_direct_scale(&single) - scale / 1e6).abs() <= 1e-9 * scale / 1e6);
    }

    #[test]
    fn sample_config_validation() {
        assert!(SampleConfig::new(0, 1.0, 1.0).is_err());
        assert!(SampleConfig::new(1, 0.0, 1.0).is_err());
        assert!(SampleConfig::new(1, 1.0, 0.0).is_err());
    }
}
