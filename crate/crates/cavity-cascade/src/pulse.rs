//! Pulse geometry and wavevector bookkeeping.
//!
//! A fifth-order Raman experiment is driven by five pump pulses plus a
//! heterodyne detection direction. Everything the cascade kernels need from
//! them is longitudinal: the z-components `k cos(theta)` set the phase
//! mismatch against the quantized cavity wavevectors `m*pi/L`, while the
//! transverse components are treated as exactly matched (the transverse
//! modes form a continuum).

use serde::{Deserialize, Serialize};

use crate::cavity::CavityGeometry;
use crate::error::{Error, Result};

/// Relative tolerance for the `|k_z|^2 + |k_perp|^2 = k^2` recomposition check.
const RECOMPOSE_TOL: f64 = 1e-12;

/// Normalized sinc, `sin(x)/x`, with the removable singularity filled in.
///
/// Even by construction: the argument is folded to `|x|` before evaluation.
pub fn sinc(x: f64) -> f64 {
    let a = x.abs();
    if a < 1e-4 {
        // Series keeps full precision where sin(x)/x loses it.
        let a2 = a * a;
        1.0 - a2 / 6.0 + a2 * a2 / 120.0
    } else {
        a.sin() / a
    }
}

/// Sign of the quantized-wavevector term in the intermediate phase mismatch.
///
/// `Plus` is the pairing the design-rule estimates use
/// (`dk_z = k_z - m*pi/L`); `Minus` is its mirror (`k_z + m*pi/L`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];

    /// +1.0 or -1.0, as it enters `k_z - sign * m*pi/L`.
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    /// Integer sign for reports.
    pub fn as_i8(self) -> i8 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }
}

/// One incoming beam.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pulse {
    /// `k = 2*pi/lambda`, in 1/m. Strictly positive.
    pub wavenumber: f64,
    /// Polar angle from the cavity z-axis, radians in `[0, pi]`.
    pub polar_angle: f64,
    /// Azimuth, radians in `[0, 2*pi)`.
    pub azimuth: f64,
    /// Sign carried into the phase-matching combination (+1 or -1).
    pub sign: i8,
    /// Pulse center time (s).
    pub center_time: f64,
    /// Carrier frequency (rad/s).
    pub carrier_frequency: f64,
}

impl Pulse {
    /// Build a pulse from its wavenumber and direction. The sign defaults to
    /// +1, the center time to 0 and the carrier to `c*k`.
    pub fn new(wavenumber: f64, polar_angle: f64, azimuth: f64) -> Result<Self> {
        if !wavenumber.is_finite() || wavenumber <= 0.0 {
            return Err(Error::domain(format!(
                "pulse wavenumber must be positive and finite, got {wavenumber}"
            )));
        }
        if !(0.0..=std::f64::consts::PI).contains(&polar_angle) {
            return Err(Error::domain(format!(
                "polar angle must lie in [0, pi], got {polar_angle}"
            )));
        }
        if !(0.0..std::f64::consts::TAU).contains(&azimuth) {
            return Err(Error::domain(format!(
                "azimuth must lie in [0, 2*pi), got {azimuth}"
            )));
        }
        let pulse = Pulse {
            wavenumber,
            polar_angle,
            azimuth,
            sign: 1,
            center_time: 0.0,
            carrier_frequency: crate::cavity::SPEED_OF_LIGHT * wavenumber,
        };
        let k2 = pulse.k_z() * pulse.k_z() + pulse.k_perp() * pulse.k_perp();
        if (k2 - wavenumber * wavenumber).abs() > RECOMPOSE_TOL * wavenumber * wavenumber {
            return Err(Error::domain(
                "pulse components do not recompose to its wavenumber".to_string(),
            ));
        }
        Ok(pulse)
    }

    /// Build from a vacuum wavelength (m) instead of a wavenumber.
    pub fn from_wavelength(lambda: f64, polar_angle: f64, azimuth: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::domain(format!(
                "wavelength must be positive and finite, got {lambda}"
            )));
        }
        Pulse::new(std::f64::consts::TAU / lambda, polar_angle, azimuth)
    }

    pub fn with_sign(mut self, sign: i8) -> Self {
        self.sign = if sign < 0 { -1 } else { 1 };
        self
    }

    pub fn with_center_time(mut self, t: f64) -> Self {
        self.center_time = t;
        self
    }

    /// Longitudinal component `k cos(theta)`.
    pub fn k_z(&self) -> f64 {
        self.wavenumber * self.polar_angle.cos()
    }

    /// Transverse magnitude `k sin(theta)` (non-negative for theta in [0, pi]).
    pub fn k_perp(&self) -> f64 {
        self.wavenumber * self.polar_angle.sin()
    }

    /// Full 3-vector `(kx, ky, kz)`.
    pub fn wavevector(&self) -> [f64; 3] {
        let kp = self.k_perp();
        [kp * self.azimuth.cos(), kp * self.azimuth.sin(), self.k_z()]
    }
}

/// Which cascade a kernel evaluates.
///
/// The sequential cascade is seeded by the k2 pulse, the parallel one by k3;
/// the intermediate field is pinned near the seeding pulse's transverse
/// wavevector in the degenerate (k2 = k1, k4 = k3) geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CascadeKind {
    Sequential,
    Parallel,
}

impl CascadeKind {
    pub fn label(self) -> &'static str {
        match self {
            CascadeKind::Sequential => "sequential",
            CascadeKind::Parallel => "parallel",
        }
    }
}

impl std::fmt::Display for CascadeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// The five pump pulses plus the detection direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseSequence {
    pulses: [Pulse; 5],
    /// Heterodyne detection direction k_s.
    pub detection: Pulse,
}

impl PulseSequence {
    /// Validates the pairing of pulse center times: pulses 1 and 2 arrive
    /// together, pulses 3 and 4 arrive together, and both controllable delays
    /// are non-negative.
    pub fn new(pulses: [Pulse; 5], detection: Pulse) -> Result<Self> {
        if pulses[0].center_time != pulses[1].center_time {
            return Err(Error::domain(
                "pulses 1 and 2 must share a center time".to_string(),
            ));
        }
        if pulses[2].center_time != pulses[3].center_time {
            return Err(Error::domain(
                "pulses 3 and 4 must share a center time".to_string(),
            ));
        }
        let seq = PulseSequence { pulses, detection };
        if seq.t2() < 0.0 || seq.t4() < 0.0 {
            return Err(Error::domain(
                "inter-pulse delays T2 and T4 must be non-negative".to_string(),
            ));
        }
        Ok(seq)
    }

    /// The degenerate six-wave-mixing geometry used throughout: k2 = k1 at
    /// `theta2`, and k3 = k4 = k5 = k_s at `theta3`, all with the same
    /// wavenumber, so the detected combination `k5 - k4 + k3 - k2 + k1`
    /// collapses onto k3.
    pub fn degenerate(wavenumber: f64, theta2: f64, theta3: f64, t2: f64, t4: f64) -> Result<Self> {
        if t2 < 0.0 || t4 < 0.0 {
            return Err(Error::domain(
                "inter-pulse delays T2 and T4 must be non-negative".to_string(),
            ));
        }
        let early = Pulse::new(wavenumber, theta2, 0.0)?;
        let late = Pulse::new(wavenumber, theta3, 0.0)?;
        let pulses = [
            early.with_center_time(0.0),
            early.with_center_time(0.0),
            late.with_center_time(t2),
            late.with_center_time(t2),
            late.with_center_time(t2 + t4),
        ];
        PulseSequence::new(pulses, late.with_center_time(t2 + t4))
    }

    pub fn pulses(&self) -> &[Pulse; 5] {
        &self.pulses
    }

    pub fn pulse(&self, index1: usize) -> &Pulse {
        &self.pulses[index1 - 1]
    }

    /// First controllable delay, `tau3 - tau1`.
    pub fn t2(&self) -> f64 {
        self.pulses[2].center_time - self.pulses[0].center_time
    }

    /// Second controllable delay, `tau5 - tau3`.
    pub fn t4(&self) -> f64 {
        self.pulses[4].center_time - self.pulses[2].center_time
    }

    /// The pulse whose intermediate field seeds the given cascade: k2 for
    /// sequential, k3 for parallel.
    pub fn seeding_pulse(&self, kind: CascadeKind) -> &Pulse {
        match kind {
            CascadeKind::Sequential => &self.pulses[1],
            CascadeKind::Parallel => &self.pulses[2],
        }
    }

    /// The four detected signal directions, as full 3-vectors:
    ///
    /// ```text
    /// ks1 = k5 + k4 - k3 + k2 - k1
    /// ks2 = k5 + k4 - k3 - k2 + k1
    /// ks3 = k5 - k4 + k3 + k2 - k1
    /// ks4 = k5 - k4 + k3 - k2 + k1
    /// ```
    ///
    /// Each pulse's own `sign` multiplies its contribution, so flipping every
    /// sign negates every output.
    pub fn signal_directions(&self) -> [[f64; 3]; 4] {
        const PATTERNS: [[f64; 5]; 4] = [
            [-1.0, 1.0, -1.0, 1.0, 1.0],
            [1.0, -1.0, -1.0, 1.0, 1.0],
            [-1.0, 1.0, 1.0, -1.0, 1.0],
            [1.0, -1.0, 1.0, -1.0, 1.0],
        ];
        let mut out = [[0.0; 3]; 4];
        for (dir, pattern) in out.iter_mut().zip(PATTERNS.iter()) {
            for (pulse, weight) in self.pulses.iter().zip(pattern.iter()) {
                let v = pulse.wavevector();
                let w = weight * f64::from(pulse.sign);
                dir[0] += w * v[0];
                dir[1] += w * v[1];
                dir[2] += w * v[2];
            }
        }
        out
    }

    /// Overall longitudinal mismatch of the direct process, `ks_z - k3_z`.
    pub fn direct_mismatch(&self) -> f64 {
        self.detection.k_z() - self.pulses[2].k_z()
    }
}

/// Intermediate longitudinal mismatch `k_z - branch * m*pi/L` for the cascade
/// seeded by `seeding`.
///
/// Both branch values of the quantized term are physical; totals sum over
/// them unless a branch policy restricts to one.
pub fn longitudinal_mismatch(
    seeding: &Pulse,
    m: u32,
    cavity: &CavityGeometry,
    branch: Branch,
) -> Result<f64> {
    if m < 1 {
        return Err(Error::domain("mode index m must be >= 1".to_string()));
    }
    Ok(seeding.k_z() - branch.sign() * m as f64 * std::f64::consts::PI / cavity.length)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn vec_close(a: [f64; 3], b: [f64; 3], tol: f64) -> bool {
        a.iter().zip(b.iter()).all(|(x, y)| (x - y).abs() <= tol)
    }

    /// Independent Taylor-series evaluation of sin(x)/x.
    fn sinc_series(x: f64) -> f64 {
        let mut term = 1.0;
        let mut sum = 1.0;
        let x2 = x * x;
        for n in 1..40 {
            term *= -x2 / ((2 * n) as f64 * (2 * n + 1) as f64);
            sum += term;
            if term.abs() < 1e-18 {
                break;
            }
        }
        sum
    }

    #[test]
    fn sinc_removable_singularity() {
        assert_eq!(sinc(0.0), 1.0);
    }

    #[test]
    fn sinc_at_pi_is_zero() {
        assert!(sinc(PI).abs() < 1e-15);
    }

    #[test]
    fn sinc_at_1p5_matches_series_oracle() {
        let oracle = sinc_series(1.5);
        assert!((sinc(1.5) - oracle).abs() < 1e-14);
        // Rounded value used by the design rules.
        assert!((sinc(1.5) - 0.66500).abs() < 5e-6);
    }

    #[test]
    fn sinc_even_bitwise() {
        for &x in &[0.3, 1.0, 2.5, 7.0, 1e-6, 123.456] {
            assert_eq!(sinc(x).to_bits(), sinc(-x).to_bits());
        }
    }

    #[test]
    fn sinc_series_branch_continuous() {
        // Just below and above the series cutoff.
        let a = sinc(9.9e-5);
        let b = sinc(1.01e-4);
        assert!((a - b).abs() < 1e-9);
        assert!(a <= 1.0 && b <= 1.0);
    }

    #[test]
    fn pulse_rejects_bad_inputs() {
        assert!(Pulse::new(0.0, 0.0, 0.0).is_err());
        assert!(Pulse::new(-1.0, 0.0, 0.0).is_err());
        assert!(Pulse::new(1.0, -0.1, 0.0).is_err());
        assert!(Pulse::new(1.0, PI + 0.1, 0.0).is_err());
        assert!(Pulse::new(1.0, 0.0, -0.1).is_err());
        assert!(Pulse::from_wavelength(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn pulse_components_recompose() {
        let p = Pulse::new(2.0 * PI / 500e-9, 1.1, 2.2).unwrap();
        let k2 = p.k_z() * p.k_z() + p.k_perp() * p.k_perp();
        let k = p.wavenumber * p.wavenumber;
        assert!((k2 - k).abs() <= 1e-12 * k);
    }

    #[test]
    fn collinear_sequence_signal_direction() {
        // All five pulses along z with equal k: ks4 = +k z-hat.
        let k = 2.0 * PI / 600e-9;
        let p = Pulse::new(k, 0.0, 0.0).unwrap();
        let seq = PulseSequence::new([p; 5], p).unwrap();
        let dirs = seq.signal_directions();
        assert!(vec_close(dirs[3], [0.0, 0.0, k], 1e-6 * k));
    }

    #[test]
    fn degenerate_geometry_detects_along_k3() {
        // With k2 = k1, k4 = k3 and k5 aligned with k3, ks4 collapses to k3.
        let seq = PulseSequence::degenerate(2.0 * PI / 500e-9, 1.0, 0.4, 0.0, 0.0).unwrap();
        let dirs = seq.signal_directions();
        let k3 = seq.pulse(3).wavevector();
        assert!(vec_close(dirs[3], k3, 1e-6 * seq.pulse(3).wavenumber));
    }

    #[test]
    fn signal_directions_match_bruteforce_oracle() {
        // Component-wise vector arithmetic, written out independently.
        let spec: [(f64, f64, f64, i8); 5] = [
            (1.1e7, 0.3, 0.2, 1),
            (1.3e7, 1.4, 5.0, -1),
            (0.9e7, 2.0, 1.1, 1),
            (1.0e7, 0.7, 3.3, 1),
            (1.2e7, 1.0, 0.0, -1),
        ];
        let mut pulses = Vec::new();
        for &(k, th, ph, s) in &spec {
            pulses.push(Pulse::new(k, th, ph).unwrap().with_sign(s));
        }
        let arr: [Pulse; 5] = [pulses[0], pulses[1], pulses[2], pulses[3], pulses[4]];
        let seq = PulseSequence::new(arr, pulses[4]).unwrap();
        let dirs = seq.signal_directions();

        let patterns: [[f64; 5]; 4] = [
            [-1.0, 1.0, -1.0, 1.0, 1.0],
            [1.0, -1.0, -1.0, 1.0, 1.0],
            [-1.0, 1.0, 1.0, -1.0, 1.0],
            [1.0, -1.0, 1.0, -1.0, 1.0],
        ];
        for (i, pat) in patterns.iter().enumerate() {
            let mut expect = [0.0; 3];
            for (j, &(k, th, ph, s)) in spec.iter().enumerate() {
                let kx = k * th.sin() * ph.cos();
                let ky = k * th.sin() * ph.sin();
                let kz = k * th.cos();
                expect[0] += pat[j] * f64::from(s) * kx;
                expect[1] += pat[j] * f64::from(s) * ky;
                expect[2] += pat[j] * f64::from(s) * kz;
            }
            assert!(vec_close(dirs[i], expect, 1e-9 * 1e7));
        }
    }

    #[test]
    fn sign_flip_negates_directions() {
        let seq = PulseSequence::degenerate(1e7, 0.8, 0.3, 1e-12, 2e-12).unwrap();
        let mut flipped = seq.pulses().map(|p| p.with_sign(-p.sign));
        // Keep center times so the pairing invariants still hold.
        for (f, p) in flipped.iter_mut().zip(seq.pulses().iter()) {
            f.center_time = p.center_time;
        }
        let neg = PulseSequence::new(flipped, seq.detection).unwrap();
        for (a, b) in seq
            .signal_directions()
            .iter()
            .zip(neg.signal_directions().iter())
        {
            assert!(vec_close(*a, [-b[0], -b[1], -b[2]], 1e-9 * 1e7));
        }
    }

    #[test]
    fn sequence_rejects_unpaired_times() {
        let p = Pulse::new(1e7, 0.0, 0.0).unwrap();
        let mut pulses = [p; 5];
        pulses[1] = p.with_center_time(1e-15);
        assert!(PulseSequence::new(pulses, p).is_err());
        assert!(PulseSequence::degenerate(1e7, 0.0, 0.0, -1e-15, 0.0).is_err());
    }

    #[test]
    fn direct_mismatch_cases() {
        // Detection along k3: perfect matching.
        let seq = PulseSequence::degenerate(1e7, 0.5, 0.5, 0.0, 0.0).unwrap();
        assert_eq!(seq.direct_mismatch(), 0.0);

        // Detection along z, k3 at 90 degrees: mismatch equals k.
        let k = 1e7;
        let axial = Pulse::new(k, 0.0, 0.0).unwrap();
        let side = Pulse::new(k, PI / 2.0, 0.0).unwrap();
        let seq = PulseSequence::new([axial, axial, side, side, axial], axial).unwrap();
        assert!((seq.direct_mismatch() - k).abs() < 1e-9 * k);
    }

    #[test]
    fn longitudinal_mismatch_examples() {
        let cavity = CavityGeometry::new(1.0, 64).unwrap();

        // theta = 0, kL = 4*pi, m = 1, plus branch: dk*L = 3*pi.
        let k = 4.0 * PI / cavity.length;
        let p = Pulse::new(k, 0.0, 0.0).unwrap();
        let dk = longitudinal_mismatch(&p, 1, &cavity, Branch::Plus).unwrap();
        assert!((dk * cavity.length - 3.0 * PI).abs() < 1e-9);

        // theta = 90 degrees: dk = -branch * m*pi/L.
        let p = Pulse::new(k, PI / 2.0, 0.0).unwrap();
        for (branch, sign) in [(Branch::Plus, 1.0), (Branch::Minus, -1.0)] {
            let dk = longitudinal_mismatch(&p, 3, &cavity, branch).unwrap();
            assert!((dk + sign * 3.0 * PI / cavity.length).abs() < 1e-9);
        }

        // theta = 60 degrees, k = 2*pi/500nm, L = 750nm, m = 2, minus branch.
        let cavity = CavityGeometry::new(750e-9, 64).unwrap();
        let k = 2.0 * PI / 500e-9;
        let p = Pulse::new(k, PI / 3.0, 0.0).unwrap();
        let dk = longitudinal_mismatch(&p, 2, &cavity, Branch::Minus).unwrap();
        let expect = k / 2.0 + 2.0 * PI / 750e-9;
        assert!((dk - expect).abs() < 1e-6 * expect.abs());

        assert!(longitudinal_mismatch(&p, 0, &cavity, Branch::Plus).is_err());
    }

    #[test]
    fn branch_sum_identity() {
        // dk(+) + dk(-) = 2 k cos(theta), up to rounding in the two adds.
        let cavity = CavityGeometry::new(320e-9, 64).unwrap();
        for &(k, th, m) in &[
            (2.0 * PI / 500e-9, 0.3, 1u32),
            (2.0 * PI / 620e-9, 1.5, 4),
            (2.0 * PI / 410e-9, 2.9, 7),
        ] {
            let p = Pulse::new(k, th, 0.0).unwrap();
            let plus = longitudinal_mismatch(&p, m, &cavity, Branch::Plus).unwrap();
            let minus = longitudinal_mismatch(&p, m, &cavity, Branch::Minus).unwrap();
            let sum = plus + minus;
            let expect = 2.0 * p.k_z();
            let scale = p.k_z().abs() + m as f64 * PI / cavity.length;
            assert!((sum - expect).abs() <= 4.0 * f64::EPSILON * scale);
        }
    }
}
