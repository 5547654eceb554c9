//! Run configuration in user units.
//!
//! Configs are flat key = value text grouped into sections (diffable), with
//! JSON accepted as an alternative encoding of the same shape. Users write
//! wavelengths and lengths in nm, angles in degrees, delays in fs and
//! vibrational frequencies in THz; everything converts to SI at the boundary
//! and back out with six significant digits.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::cavity::{
    CavityGeometry, ResonanceWindow, DEFAULT_MAX_MODE_INDEX, DEFAULT_RELATIVE_HALFWIDTH,
    SPEED_OF_LIGHT,
};
use crate::error::{Error, Result};
use crate::kernel::{
    BranchPolicy, CascadeConfig, DenominatorConvention, ModeSelection, ReferenceConvention,
    SampleConfig,
};
use crate::pulse::{CascadeKind, Pulse, PulseSequence};
use crate::response::{TimeGrid, VibronicModel};
use crate::scan::{ScanAxis, ScanBase, ScanSpec, SweptParam, DEFAULT_REFINEMENT_STEPS};

/// Pulse geometry, user units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PulseSection {
    pub wavelength_nm: f64,
    pub theta2_deg: f64,
    pub theta3_deg: f64,
}

impl Default for PulseSection {
    fn default() -> Self {
        PulseSection {
            wavelength_nm: 500.0,
            theta2_deg: 0.0,
            theta3_deg: 0.0,
        }
    }
}

/// Cavity geometry, user units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CavitySection {
    pub length_nm: f64,
    pub max_mode_index: u32,
}

impl Default for CavitySection {
    fn default() -> Self {
        CavitySection {
            length_nm: 1000.0,
            max_mode_index: DEFAULT_MAX_MODE_INDEX,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SampleSection {
    pub molecules: u64,
    pub volume_um3: f64,
    pub dipole_scale: f64,
}

impl Default for SampleSection {
    fn default() -> Self {
        SampleSection {
            molecules: 1_000_000,
            volume_um3: 1.0,
            dipole_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelSection {
    /// Ground-coherence frequencies (THz, ordinary frequency).
    pub ground_freqs_thz: Vec<f64>,
    /// Excited-state frequencies (THz).
    pub excited_freqs_thz: Vec<f64>,
    /// Damping rate (1/ps expressed as THz, i.e. 1e12/s).
    pub gamma_thz: f64,
}

impl Default for ModelSection {
    fn default() -> Self {
        ModelSection {
            ground_freqs_thz: vec![3.0],
            excited_freqs_thz: vec![3.0],
            gamma_thz: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CascadeSection {
    /// "sequential" or "parallel".
    pub kind: String,
    /// "both", "plus" or "minus".
    pub branches: String,
    /// "literal" or "as-evaluated".
    pub convention: String,
    /// "unit-bound" or "matched-peak".
    pub reference: String,
    /// "regime", "window" or "count:<N>".
    pub mode_policy: String,
    /// Resonance window halfwidth, fraction of the center frequency in
    /// [0, 1). Zero is legal and degenerate.
    pub window_halfwidth: f64,
}

impl Default for CascadeSection {
    fn default() -> Self {
        CascadeSection {
            kind: "sequential".to_string(),
            branches: "both".to_string(),
            convention: "as-evaluated".to_string(),
            reference: "unit-bound".to_string(),
            mode_policy: "regime".to_string(),
            window_halfwidth: DEFAULT_RELATIVE_HALFWIDTH,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScanSection {
    /// Comma list of swept parameters: "length", "theta2", "theta3".
    pub sweep: String,
    pub length_min_nm: f64,
    pub length_max_nm: f64,
    pub length_points: usize,
    pub theta2_min_deg: f64,
    pub theta2_max_deg: f64,
    pub theta2_points: usize,
    pub theta3_min_deg: f64,
    pub theta3_max_deg: f64,
    pub theta3_points: usize,
    pub refine_steps: u32,
    pub allow_outside_validity: bool,
}

impl Default for ScanSection {
    fn default() -> Self {
        ScanSection {
            sweep: "length".to_string(),
            length_min_nm: 800.0,
            length_max_nm: 1200.0,
            length_points: 33,
            theta2_min_deg: 0.0,
            theta2_max_deg: 180.0,
            theta2_points: 21,
            theta3_min_deg: 0.0,
            theta3_max_deg: 180.0,
            theta3_points: 21,
            refine_steps: DEFAULT_REFINEMENT_STEPS,
            allow_outside_validity: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SignalSection {
    pub t2_max_fs: f64,
    pub t4_max_fs: f64,
    pub grid_points: usize,
    pub include_cascades: bool,
    /// Multiplier applied to the cascade prefactors (0 forces them to zero).
    pub cascade_scale: f64,
}

impl Default for SignalSection {
    fn default() -> Self {
        SignalSection {
            t2_max_fs: 2000.0,
            t4_max_fs: 2000.0,
            grid_points: 64,
            include_cascades: true,
            cascade_scale: 1.0,
        }
    }
}

/// Full run configuration in user units.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub pulse: PulseSection,
    pub cavity: CavitySection,
    pub sample: SampleSection,
    pub model: ModelSection,
    pub cascade: CascadeSection,
    pub scan: ScanSection,
    pub signal: SignalSection,
}

fn parse_f64(section: &str, key: &str, value: &str, line: usize) -> Result<f64> {
    value.trim().parse::<f64>().map_err(|_| {
        Error::config(format!(
            "line {line}: [{section}] {key}: expected a number, got '{value}'"
        ))
    })
}

fn parse_list(section: &str, key: &str, value: &str, line: usize) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(|item| parse_f64(section, key, item, line))
        .collect()
}

fn parse_usize(section: &str, key: &str, value: &str, line: usize) -> Result<usize> {
    value.trim().parse::<usize>().map_err(|_| {
        Error::config(format!(
            "line {line}: [{section}] {key}: expected an integer, got '{value}'"
        ))
    })
}

fn parse_bool(section: &str, key: &str, value: &str, line: usize) -> Result<bool> {
    match value.trim() {
        "true" | "yes" | "on" => Ok(true),
        "false" | "no" | "off" => Ok(false),
        other => Err(Error::config(format!(
            "line {line}: [{section}] {key}: expected true/false, got '{other}'"
        ))),
    }
}

impl RunConfig {
    /// Parse either the sectioned key = value grammar or JSON (detected by a
    /// leading '{').
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| Error::config(format!("json: {e}")));
        }
        Self::parse_kv(text)
    }

    /// Parse the flat key = value grammar with section headers.
    pub fn parse_kv(text: &str) -> Result<Self> {
        let mut config = RunConfig::default();
        let mut section = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let stripped = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let trimmed = stripped.trim();
            if trimmed.is_empty() {
                continue;
            }
            if trimmed.starts_with('[') {
                if !trimmed.ends_with(']') {
                    return Err(Error::config(format!(
                        "line {line}: malformed section header '{trimmed}'"
                    )));
                }
                section = trimmed[1..trimmed.len() - 1].trim().to_string();
                continue;
            }
            let Some(eq) = trimmed.find('=') else {
                return Err(Error::config(format!(
                    "line {line}: expected 'key = value', got '{trimmed}'"
                )));
            };
            let key = trimmed[..eq].trim();
            let value = trimmed[eq + 1..].trim();
            config.apply(&section, key, value, line)?;
        }
        Ok(config)
    }

    fn apply(&mut self, section: &str, key: &str, value: &str, line: usize) -> Result<()> {
        let unknown = || {
            Err(Error::config(format!(
                "line {line}: unknown key '{key}' in section [{section}]"
            )))
        };
        match section {
            "pulse" => match key {
                "wavelength_nm" => self.pulse.wavelength_nm = parse_f64(section, key, value, line)?,
                "theta2_deg" => self.pulse.theta2_deg = parse_f64(section, key, value, line)?,
                "theta3_deg" => self.pulse.theta3_deg = parse_f64(section, key, value, line)?,
                _ => return unknown(),
            },
            "cavity" => match key {
                "length_nm" => self.cavity.length_nm = parse_f64(section, key, value, line)?,
                "max_mode_index" => {
                    self.cavity.max_mode_index = parse_usize(section, key, value, line)? as u32
                }
                _ => return unknown(),
            },
            "sample" => match key {
                "molecules" => {
                    self.sample.molecules = parse_usize(section, key, value, line)? as u64
                }
                "volume_um3" => self.sample.volume_um3 = parse_f64(section, key, value, line)?,
                "dipole_scale" => self.sample.dipole_scale = parse_f64(section, key, value, line)?,
                _ => return unknown(),
            },
            "model" => match key {
                "ground_freqs_thz" => {
                    self.model.ground_freqs_thz = parse_list(section, key, value, line)?
                }
                "excited_freqs_thz" => {
                    self.model.excited_freqs_thz = parse_list(section, key, value, line)?
                }
                "gamma_thz" => self.model.gamma_thz = parse_f64(section, key, value, line)?,
                _ => return unknown(),
            },
            "cascade" => match key {
                "kind" => self.cascade.kind = value.to_string(),
                "branches" => self.cascade.branches = value.to_string(),
                "convention" => self.cascade.convention = value.to_string(),
                "reference" => self.cascade.reference = value.to_string(),
                "mode_policy" => self.cascade.mode_policy = value.to_string(),
                "window_halfwidth" => {
                    self.cascade.window_halfwidth = parse_f64(section, key, value, line)?
                }
                _ => return unknown(),
            },
            "scan" => match key {
                "sweep" => self.scan.sweep = value.to_string(),
                "length_min_nm" => self.scan.length_min_nm = parse_f64(section, key, value, line)?,
                "length_max_nm" => self.scan.length_max_nm = parse_f64(section, key, value, line)?,
                "length_points" => {
                    self.scan.length_points = parse_usize(section, key, value, line)?
                }
                "theta2_min_deg" => {
                    self.scan.theta2_min_deg = parse_f64(section, key, value, line)?
                }
                "theta2_max_deg" => {
                    self.scan.theta2_max_deg = parse_f64(section, key, value, line)?
                }
                "theta2_points" => {
                    self.scan.theta2_points = parse_usize(section, key, value, line)?
                }
                "theta3_min_deg" => {
                    self.scan.theta3_min_deg = parse_f64(section, key, value, line)?
                }
                "theta3_max_deg" => {
                    self.scan.theta3_max_deg = parse_f64(section, key, value, line)?
                }
                "theta3_points" => {
                    self.scan.theta3_points = parse_usize(section, key, value, line)?
                }
                "refine_steps" => {
                    self.scan.refine_steps = parse_usize(section, key, value, line)? as u32
                }
                "allow_outside_validity" => {
                    self.scan.allow_outside_validity = parse_bool(section, key, value, line)?
                }
                _ => return unknown(),
            },
            "signal" => match key {
                "t2_max_fs" => self.signal.t2_max_fs = parse_f64(section, key, value, line)?,
                "t4_max_fs" => self.signal.t4_max_fs = parse_f64(section, key, value, line)?,
                "grid_points" => self.signal.grid_points = parse_usize(section, key, value, line)?,
                "include_cascades" => {
                    self.signal.include_cascades = parse_bool(section, key, value, line)?
                }
                "cascade_scale" => {
                    self.signal.cascade_scale = parse_f64(section, key, value, line)?
                }
                _ => return unknown(),
            },
            "" => {
                return Err(Error::config(format!(
                    "line {line}: key '{key}' appears before any [section] header"
                )))
            }
            other => {
                return Err(Error::config(format!(
                    "line {line}: unknown section [{other}]"
                )))
            }
        }
        Ok(())
    }

    /// Re-emit the canonical key = value text. Numbers carry six significant
    /// digits, so parse -> emit -> parse round-trips to that precision.
    pub fn emit(&self) -> String {
        fn num(v: f64) -> String {
            format!("{:.6}", SigDigits(v))
        }
        struct SigDigits(f64);
        impl std::fmt::Display for SigDigits {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                let digits = f.precision().unwrap_or(6);
                if self.0 == 0.0 {
                    return write!(f, "0");
                }
                let formatted = format!("{:.*e}", digits - 1, self.0);
                // Prefer plain decimal when the exponent is small.
                let value: f64 = formatted.parse().unwrap();
                let magnitude = value.abs();
                if (1e-3..1e7).contains(&magnitude) {
                    let s = format!("{value}");
                    write!(f, "{s}")
                } else {
                    write!(f, "{formatted}")
                }
            }
        }
        let list = |values: &[f64]| {
            values
                .iter()
                .map(|v| num(*v))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut out = String::new();
        out.push_str("[pulse]\n");
        out.push_str(&format!(
            "wavelength_nm = {}\n",
            num(self.pulse.wavelength_nm)
        ));
        out.push_str(&format!("theta2_deg = {}\n", num(self.pulse.theta2_deg)));
        out.push_str(&format!("theta3_deg = {}\n\n", num(self.pulse.theta3_deg)));
        out.push_str("[cavity]\n");
        out.push_str(&format!("length_nm = {}\n", num(self.cavity.length_nm)));
        out.push_str(&format!(
            "max_mode_index = {}\n\n",
            self.cavity.max_mode_index
        ));
        out.push_str("[sample]\n");
        out.push_str(&format!("molecules = {}\n", self.sample.molecules));
        out.push_str(&format!("volume_um3 = {}\n", num(self.sample.volume_um3)));
        out.push_str(&format!(
            "dipole_scale = {}\n\n",
            num(self.sample.dipole_scale)
        ));
        out.push_str("[model]\n");
        out.push_str(&format!(
            "ground_freqs_thz = {}\n",
            list(&self.model.ground_freqs_thz)
        ));
        out.push_str(&format!(
            "excited_freqs_thz = {}\n",
            list(&self.model.excited_freqs_thz)
        ));
        out.push_str(&format!("gamma_thz = {}\n\n", num(self.model.gamma_thz)));
        out.push_str("[cascade]\n");
        out.push_str(&format!("kind = {}\n", self.cascade.kind));
        out.push_str(&format!("branches = {}\n", self.cascade.branches));
        out.push_str(&format!("convention = {}\n", self.cascade.convention));
        out.push_str(&format!("reference = {}\n", self.cascade.reference));
        out.push_str(&format!("mode_policy = {}\n", self.cascade.mode_policy));
        out.push_str(&format!(
            "window_halfwidth = {}\n\n",
            num(self.cascade.window_halfwidth)
        ));
        out.push_str("[scan]\n");
        out.push_str(&format!("sweep = {}\n", self.scan.sweep));
        out.push_str(&format!(
            "length_min_nm = {}\n",
            num(self.scan.length_min_nm)
        ));
        out.push_str(&format!(
            "length_max_nm = {}\n",
            num(self.scan.length_max_nm)
        ));
        out.push_str(&format!("length_points = {}\n", self.scan.length_points));
        out.push_str(&format!(
            "theta2_min_deg = {}\n",
            num(self.scan.theta2_min_deg)
        ));
        out.push_str(&format!(
            "theta2_max_deg = {}\n",
            num(self.scan.theta2_max_deg)
        ));
        out.push_str(&format!("theta2_points = {}\n", self.scan.theta2_points));
        out.push_str(&format!(
            "theta3_min_deg = {}\n",
            num(self.scan.theta3_min_deg)
        ));
        out.push_str(&format!(
            "theta3_max_deg = {}\n",
            num(self.scan.theta3_max_deg)
        ));
        out.push_str(&format!("theta3_points = {}\n", self.scan.theta3_points));
        out.push_str(&format!("refine_steps = {}\n", self.scan.refine_steps));
        out.push_str(&format!(
            "allow_outside_validity = {}\n\n",
            self.scan.allow_outside_validity
        ));
        out.push_str("[signal]\n");
        out.push_str(&format!("t2_max_fs = {}\n", num(self.signal.t2_max_fs)));
        out.push_str(&format!("t4_max_fs = {}\n", num(self.signal.t4_max_fs)));
        out.push_str(&format!("grid_points = {}\n", self.signal.grid_points));
        out.push_str(&format!(
            "include_cascades = {}\n",
            self.signal.include_cascades
        ));
        out.push_str(&format!(
            "cascade_scale = {}\n",
            num(self.signal.cascade_scale)
        ));
        out
    }

    // ---- conversions to SI-domain types ----

    pub fn wavenumber(&self) -> Result<f64> {
        let lambda = self.pulse.wavelength_nm * 1e-9;
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::config(format!(
                "[pulse] wavelength_nm must be positive, got {}",
                self.pulse.wavelength_nm
            )));
        }
        Ok(2.0 * PI / lambda)
    }

    pub fn theta2(&self) -> f64 {
        self.pulse.theta2_deg.to_radians()
    }

    pub fn theta3(&self) -> f64 {
        self.pulse.theta3_deg.to_radians()
    }

    pub fn cavity_geometry(&self) -> Result<CavityGeometry> {
        CavityGeometry::new(self.cavity.length_nm * 1e-9, self.cavity.max_mode_index)
            .map_err(|e| Error::config(format!("[cavity] {e}")))
    }

    pub fn sample_config(&self) -> Result<SampleConfig> {
        SampleConfig::new(
            self.sample.molecules,
            self.sample.volume_um3 * 1e-18,
            self.sample.dipole_scale,
        )
        .map_err(|e| Error::config(format!("[sample] {e}")))
    }

    pub fn vibronic_model(&self) -> Result<VibronicModel> {
        let to_angular = |f: &f64| 2.0 * PI * f * 1e12;
        VibronicModel::new(
            self.model.ground_freqs_thz.iter().map(to_angular).collect(),
            self.model
                .excited_freqs_thz
                .iter()
                .map(to_angular)
                .collect(),
            self.model.gamma_thz * 1e12,
            self.sample.dipole_scale,
        )
        .map_err(|e| Error::config(format!("[model] {e}")))
    }

    pub fn cascade_kind(&self) -> Result<CascadeKind> {
        match self.cascade.kind.as_str() {
            "sequential" => Ok(CascadeKind::Sequential),
            "parallel" => Ok(CascadeKind::Parallel),
            other => Err(Error::config(format!(
                "[cascade] kind must be sequential|parallel, got '{other}'"
            ))),
        }
    }

    pub fn branch_policy(&self) -> Result<BranchPolicy> {
        match self.cascade.branches.as_str() {
            "both" => Ok(BranchPolicy::SumBoth),
            "plus" => Ok(BranchPolicy::PlusOnly),
            "minus" => Ok(BranchPolicy::MinusOnly),
            other => Err(Error::config(format!(
                "[cascade] branches must be both|plus|minus, got '{other}'"
            ))),
        }
    }

    pub fn denominator_convention(&self) -> Result<DenominatorConvention> {
        match self.cascade.convention.as_str() {
            "literal" => Ok(DenominatorConvention::Literal),
            "as-evaluated" => Ok(DenominatorConvention::AsEvaluated),
            other => Err(Error::config(format!(
                "[cascade] convention must be literal|as-evaluated, got '{other}'"
            ))),
        }
    }

    pub fn reference_convention(&self) -> Result<ReferenceConvention> {
        match self.cascade.reference.as_str() {
            "unit-bound" => Ok(ReferenceConvention::UnitBound),
            "matched-peak" => Ok(ReferenceConvention::MatchedPeak),
            other => Err(Error::config(format!(
                "[cascade] reference must be unit-bound|matched-peak, got '{other}'"
            ))),
        }
    }

    pub fn cascade_config(&self) -> Result<CascadeConfig> {
        Ok(CascadeConfig {
            kind: self.cascade_kind()?,
            branch_policy: self.branch_policy()?,
            denominator_convention: self.denominator_convention()?,
            reference_convention: self.reference_convention()?,
        })
    }

    /// Seeding pulse of the configured cascade kind.
    pub fn seeding_pulse(&self) -> Result<Pulse> {
        let theta = match self.cascade_kind()? {
            CascadeKind::Sequential => self.theta2(),
            CascadeKind::Parallel => self.theta3(),
        };
        Pulse::new(self.wavenumber()?, theta, 0.0)
            .map_err(|e| Error::config(format!("[pulse] {e}")))
    }

    pub fn resonance_window(&self) -> Result<ResonanceWindow> {
        ResonanceWindow::new(
            SPEED_OF_LIGHT * self.wavenumber()?,
            self.cascade.window_halfwidth,
        )
        .map_err(|e| Error::config(format!("[cascade] {e}")))
    }

    pub fn mode_selection(&self) -> Result<ModeSelection> {
        let policy = self.cascade.mode_policy.trim();
        if policy == "regime" {
            Ok(ModeSelection::Regime)
        } else if policy == "window" {
            Ok(ModeSelection::Window(self.resonance_window()?))
        } else if let Some(count) = policy.strip_prefix("count:") {
            let n: u32 = count.trim().parse().map_err(|_| {
                Error::config(format!(
                    "[cascade] mode_policy count: bad integer '{count}'"
                ))
            })?;
            if n == 0 {
                return Err(Error::config(
                    "[cascade] mode_policy count must be >= 1".to_string(),
                ));
            }
            Ok(ModeSelection::FixedCount(n))
        } else {
            Err(Error::config(format!(
                "[cascade] mode_policy must be regime|window|count:<N>, got '{policy}'"
            )))
        }
    }

    pub fn scan_base(&self) -> Result<ScanBase> {
        Ok(ScanBase {
            wavenumber: self.wavenumber()?,
            theta2: self.theta2(),
            theta3: self.theta3(),
            cavity: self.cavity_geometry()?,
            sample: self.sample_config()?,
            cascade: self.cascade_config()?,
            modes: self.mode_selection()?,
        })
    }

    pub fn scan_spec(&self) -> Result<ScanSpec> {
        let mut axes = Vec::new();
        for item in self.scan.sweep.split(',') {
            let axis = match item.trim() {
                "length" => ScanAxis::new(
                    SweptParam::CavityLength,
                    self.scan.length_min_nm * 1e-9,
                    self.scan.length_max_nm * 1e-9,
                    self.scan.length_points,
                ),
                "theta2" => ScanAxis::new(
                    SweptParam::Theta2,
                    self.scan.theta2_min_deg.to_radians(),
                    self.scan.theta2_max_deg.to_radians(),
                    self.scan.theta2_points,
                ),
                "theta3" => ScanAxis::new(
                    SweptParam::Theta3,
                    self.scan.theta3_min_deg.to_radians(),
                    self.scan.theta3_max_deg.to_radians(),
                    self.scan.theta3_points,
                ),
                other => Err(Error::config(format!(
                    "[scan] sweep entries must be length|theta2|theta3, got '{other}'"
                ))),
            }
            .map_err(|e| Error::config(format!("[scan] {e}")))?;
            axes.push(axis);
        }
        let spec = ScanSpec::new(self.scan_base()?, axes)
            .map_err(|e| Error::config(format!("[scan] {e}")))?;
        Ok(if self.scan.allow_outside_validity {
            spec.allow_outside_validity()
        } else {
            spec
        })
    }

    /// Degenerate pulse sequence for the 2D signal: k2 = k1 at theta2,
    /// k3 = k4 = k5 = ks at theta3.
    pub fn pulse_sequence(&self) -> Result<PulseSequence> {
        PulseSequence::degenerate(self.wavenumber()?, self.theta2(), self.theta3(), 0.0, 0.0)
            .map_err(|e| Error::config(format!("[pulse] {e}")))
    }

    pub fn time_grids(&self) -> Result<(TimeGrid, TimeGrid)> {
        let build = |max_fs: f64| {
            TimeGrid::new(0.0, max_fs * 1e-15, self.signal.grid_points)
                .map_err(|e| Error::config(format!("[signal] {e}")))
        };
        Ok((build(self.signal.t2_max_fs)?, build(self.signal.t4_max_fs)?))
    }
}
