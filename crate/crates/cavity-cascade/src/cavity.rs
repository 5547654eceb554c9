//! Quantized Fabry-Perot photon modes.
//!
//! Two mirrors a distance `L` apart quantize the longitudinal wavevector to
//! `n*pi/L` while the transverse wavevector stays continuous, so the vacuum
//! modes disperse as
//!
//! ```text
//! omega_n(k_perp) = c * sqrt(k_perp^2 + n^2 pi^2 / L^2)
//! ```
//!
//! A cascade only borrows modes near the electronic gap; the
//! [`ResonanceWindow`] decides which standing-wave indices count as
//! contributing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pulse::Pulse;

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

/// Default enumeration cutoff for standing-wave indices. Modes beyond the
/// resonance window are negligible through the sinc^2 factor, but the cutoff
/// stays configurable for convergence checks.
pub const DEFAULT_MAX_MODE_INDEX: u32 = 64;

/// Default resonance window halfwidth as a fraction of the center frequency.
pub const DEFAULT_RELATIVE_HALFWIDTH: f64 = 0.5;

/// Mirror spacing and mode cutoff of the Fabry-Perot cavity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityGeometry {
    /// Mirror spacing L (m), strictly positive.
    pub length: f64,
    /// Highest standing-wave index enumerated, >= 1.
    pub max_mode_index: u32,
}

impl CavityGeometry {
    pub fn new(length: f64, max_mode_index: u32) -> Result<Self> {
        if !length.is_finite() || length <= 0.0 {
            return Err(Error::domain(format!(
                "cavity length must be positive and finite, got {length}"
            )));
        }
        if max_mode_index < 1 {
            return Err(Error::domain(
                "max_mode_index must be at least 1".to_string(),
            ));
        }
        Ok(CavityGeometry {
            length,
            max_mode_index,
        })
    }

    pub fn with_length(length: f64) -> Result<Self> {
        CavityGeometry::new(length, DEFAULT_MAX_MODE_INDEX)
    }

    /// Longitudinal wavevector of mode `n`, `n*pi/L`.
    pub fn longitudinal_wavevector(&self, n: u32) -> f64 {
        n as f64 * std::f64::consts::PI / self.length
    }
}

/// Band of photon frequencies near the electronic gap within which cavity
/// modes contribute appreciably to cascading.
///
/// The halfwidth is a calibration choice (the resonance condition is only
/// ever stated as omega_m ~ omega_eg); reports flag it as such.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonanceWindow {
    /// Center frequency (rad/s); the electronic gap, roughly `c*k` of the
    /// driving pulses.
    pub center: f64,
    /// Halfwidth as a fraction of the center, in `[0, 1)`. Zero is legal and
    /// degenerate: the window then only matches exact resonance.
    pub relative_halfwidth: f64,
}

impl ResonanceWindow {
    pub fn new(center: f64, relative_halfwidth: f64) -> Result<Self> {
        if !center.is_finite() || center <= 0.0 {
            return Err(Error::domain(format!(
                "window center frequency must be positive, got {center}"
            )));
        }
        if !(0.0..1.0).contains(&relative_halfwidth) {
            return Err(Error::domain(format!(
                "relative halfwidth must lie in [0, 1), got {relative_halfwidth}"
            )));
        }
        Ok(ResonanceWindow {
            center,
            relative_halfwidth,
        })
    }

    /// Window centered on `c*k` of the given pulse, with the default halfwidth.
    pub fn around_pulse(pulse: &Pulse) -> Self {
        ResonanceWindow {
            center: SPEED_OF_LIGHT * pulse.wavenumber,
            relative_halfwidth: DEFAULT_RELATIVE_HALFWIDTH,
        }
    }

    pub fn with_halfwidth(mut self, relative_halfwidth: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&relative_halfwidth) {
            return Err(Error::domain(format!(
                "relative halfwidth must lie in [0, 1), got {relative_halfwidth}"
            )));
        }
        self.relative_halfwidth = relative_halfwidth;
        Ok(self)
    }

    /// Whether a mode frequency falls inside the band
    /// `|omega - center| <= halfwidth * center`.
    pub fn contains(&self, omega: f64) -> bool {
        (omega - self.center).abs() <= self.relative_halfwidth * self.center
    }
}

/// Mode frequency `c * sqrt(k_perp^2 + n^2 pi^2 / L^2)`.
///
/// Strictly increasing in both `n` and `k_perp`.
pub fn mode_frequency(n: u32, k_perp: f64, cavity: &CavityGeometry) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("mode index n must be >= 1".to_string()));
    }
    if !k_perp.is_finite() || k_perp < 0.0 {
        return Err(Error::domain(format!(
            "transverse wavevector must be non-negative, got {k_perp}"
        )));
    }
    let kz = cavity.longitudinal_wavevector(n);
    Ok(SPEED_OF_LIGHT * (k_perp * k_perp + kz * kz).sqrt())
}

/// Frequency of the cavity photon exchanged in a cascade: the transverse
/// wavevector is pinned to the seeding pulse's `k sin(theta)`.
pub fn cascade_mode_frequency(m: u32, seeding: &Pulse, cavity: &CavityGeometry) -> Result<f64> {
    mode_frequency(m, seeding.k_perp(), cavity)
}

/// All standing-wave indices whose cascade mode frequency falls inside the
/// resonance window, in ascending order, capped at the cavity's
/// `max_mode_index`.
///
/// An empty result is legal: it means no cavity mode is resonant enough to
/// carry the cascade.
pub fn contributing_modes(
    seeding: &Pulse,
    cavity: &CavityGeometry,
    window: &ResonanceWindow,
) -> Result<Vec<u32>> {
    let mut modes = Vec::new();
    for m in 1..=cavity.max_mode_index {
        let omega = cascade_mode_frequency(m, seeding, cavity)?;
        if window.contains(omega) {
            modes.push(m);
        } else if omega > window.center * (1.0 + window.relative_halfwidth) {
            // Frequencies increase with m; nothing further can qualify.
            break;
        }
    }
    Ok(modes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn geometry_validation() {
        assert!(CavityGeometry::new(0.0, 4).is_err());
        assert!(CavityGeometry::new(-1e-9, 4).is_err());
        assert!(CavityGeometry::new(1e-7, 0).is_err());
        assert!(CavityGeometry::new(1e-7, 1).is_ok());
    }

    #[test]
    fn window_validation() {
        assert!(ResonanceWindow::new(0.0, 0.5).is_err());
        assert!(ResonanceWindow::new(1e15, -0.1).is_err());
        assert!(ResonanceWindow::new(1e15, 1.0).is_err());
        // Degenerate zero halfwidth stays constructible.
        assert!(ResonanceWindow::new(1e15, 0.0).is_ok());
    }

    #[test]
    fn fundamental_mode_of_100nm_cavity() {
        // omega = c*pi/L for n = 1 at k_perp = 0.
        let cavity = CavityGeometry::with_length(100e-9).unwrap();
        let omega = mode_frequency(1, 0.0, &cavity).unwrap();
        let direct = SPEED_OF_LIGHT * PI / 100e-9;
        assert!((omega - direct).abs() < 1e-3 * direct);
        assert!((omega - 9.42e15).abs() < 1e13);
    }

    #[test]
    fn axial_modes_scale_linearly_in_n() {
        let cavity = CavityGeometry::with_length(3.7e-7).unwrap();
        let w1 = mode_frequency(1, 0.0, &cavity).unwrap();
        let w2 = mode_frequency(2, 0.0, &cavity).unwrap();
        assert!((w2 - 2.0 * w1).abs() < 1e-9 * w1);
    }

    #[test]
    fn grazing_mode_at_l_equals_lambda() {
        // n = 1, k_perp = k (theta = 90 deg), L = lambda: omega = c k sqrt(1 + 1/4).
        let k = 2.0 * PI / 500e-9;
        let cavity = CavityGeometry::with_length(500e-9).unwrap();
        let omega = mode_frequency(1, k, &cavity).unwrap();
        let expect = SPEED_OF_LIGHT * k * (1.0 + 0.25_f64).sqrt();
        assert!((omega - expect).abs() < 1e-9 * expect);
        assert!((omega / (SPEED_OF_LIGHT * k) - 1.118).abs() < 1e-3);
    }

    #[test]
    fn mode_frequency_domain_errors() {
        let cavity = CavityGeometry::with_length(1e-7).unwrap();
        assert!(mode_frequency(0, 0.0, &cavity).is_err());
        assert!(mode_frequency(1, -1.0, &cavity).is_err());
        assert!(mode_frequency(1, f64::NAN, &cavity).is_err());
    }

    #[test]
    fn mode_frequency_monotone_in_n_and_kperp() {
        let cavity = CavityGeometry::new(2.3e-7, 32).unwrap();
        let kgrid: Vec<f64> = (0..20).map(|i| i as f64 * 3.1e5).collect();
        for &kp in &kgrid {
            for n in 1..cavity.max_mode_index {
                let lo = mode_frequency(n, kp, &cavity).unwrap();
                let hi = mode_frequency(n + 1, kp, &cavity).unwrap();
                assert!(hi > lo);
            }
        }
        for pair in kgrid.windows(2) {
            let lo = mode_frequency(3, pair[0], &cavity).unwrap();
            let hi = mode_frequency(3, pair[1], &cavity).unwrap();
            assert!(hi > lo);
        }
    }

    #[test]
    fn cascade_frequency_examples() {
        // Sequential, m = 1, theta2 = 90 deg, k2*L = 2*pi: c*k*sqrt(1 + 1/4).
        let k = 2.0 * PI / 633e-9;
        let cavity = CavityGeometry::with_length(2.0 * PI / k).unwrap();
        let seeding = Pulse::new(k, PI / 2.0, 0.0).unwrap();
        let omega = cascade_mode_frequency(1, &seeding, &cavity).unwrap();
        let expect = SPEED_OF_LIGHT * k * 1.25_f64.sqrt();
        assert!((omega - expect).abs() < 1e-9 * expect);

        // Parallel, m = 2p, theta3 = 0, L = 2p*pi/k: exactly on resonance.
        let p = 4;
        let cavity = CavityGeometry::with_length(2.0 * p as f64 * PI / k).unwrap();
        let axial = Pulse::new(k, 0.0, 0.0).unwrap();
        let omega = cascade_mode_frequency(2 * p, &axial, &cavity).unwrap();
        assert!((omega - SPEED_OF_LIGHT * k).abs() < 1e-9 * omega);

        // Sequential, m = 3, theta2 = 45 deg, k2 = 2*pi/600nm, L = 600nm.
        let k = 2.0 * PI / 600e-9;
        let cavity = CavityGeometry::with_length(600e-9).unwrap();
        let seeding = Pulse::new(k, PI / 4.0, 0.0).unwrap();
        let omega = cascade_mode_frequency(3, &seeding, &cavity).unwrap();
        let expect = SPEED_OF_LIGHT * k * (0.5 + 2.25_f64).sqrt();
        assert!((omega - expect).abs() < 1e-9 * expect);
    }

    #[test]
    fn contributing_modes_at_l_equals_lambda_grazing() {
        // L = lambda, theta = 90 deg, default halfwidth: exactly {1, 2}.
        let k = 2.0 * PI / 500e-9;
        let cavity = CavityGeometry::with_length(500e-9).unwrap();
        let seeding = Pulse::new(k, PI / 2.0, 0.0).unwrap();
        let window = ResonanceWindow::around_pulse(&seeding);
        let modes = contributing_modes(&seeding, &cavity, &window).unwrap();
        assert_eq!(modes, vec![1, 2]);
    }

    #[test]
    fn contributing_modes_large_cavity_upper_end() {
        // L = 2p*pi/k at theta = 0: a tight window around the gap tops out
        // within one index of 2p.
        let k = 2.0 * PI / 500e-9;
        for p in [2u32, 5, 10] {
            let cavity = CavityGeometry::with_length(2.0 * p as f64 * PI / k).unwrap();
            let seeding = Pulse::new(k, 0.0, 0.0).unwrap();
            let window = ResonanceWindow::around_pulse(&seeding)
                .with_halfwidth(0.05)
                .unwrap();
            let modes = contributing_modes(&seeding, &cavity, &window).unwrap();
            let top = *modes.last().unwrap();
            assert!(
                (top as i64 - 2 * p as i64).abs() <= 1,
                "p = {p}: top mode {top}"
            );
        }
    }

    #[test]
    fn narrow_window_between_modes_is_empty() {
        let k = 2.0 * PI / 500e-9;
        let cavity = CavityGeometry::with_length(2e-6).unwrap();
        let seeding = Pulse::new(k, 0.0, 0.0).unwrap();
        // Center halfway between two mode frequencies with a 1e-6 halfwidth.
        let w_lo = cascade_mode_frequency(4, &seeding, &cavity).unwrap();
        let w_hi = cascade_mode_frequency(5, &seeding, &cavity).unwrap();
        let window = ResonanceWindow::new(0.5 * (w_lo + w_hi), 1e-6).unwrap();
        let modes = contributing_modes(&seeding, &cavity, &window).unwrap();
        assert!(modes.is_empty());
    }

    #[test]
    fn contributing_modes_sorted_unique_and_in_window() {
        let k = 2.0 * PI / 450e-9;
        let cavity = CavityGeometry::new(3.3e-6, 64).unwrap();
        let seeding = Pulse::new(k, 0.7, 0.0).unwrap();
        let window = ResonanceWindow::around_pulse(&seeding);
        let modes = contributing_modes(&seeding, &cavity, &window).unwrap();
        assert!(!modes.is_empty());
        for pair in modes.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        for &m in &modes {
            let omega = cascade_mode_frequency(m, &seeding, &cavity).unwrap();
            assert!(window.contains(omega));
        }
    }

    #[test]
    fn mode_count_doubles_with_length_in_free_space_limit() {
        // For kL >> 1 the in-window mode count grows proportionally to L.
        let k = 2.0 * PI / 500e-9;
        let l = 25.0 * 2.0 * PI / k; // kL = 50*pi > 40*pi
        let seeding = Pulse::new(k, 0.0, 0.0).unwrap();
        let window = ResonanceWindow::around_pulse(&seeding);
        let count = |length: f64| {
            let cavity = CavityGeometry::new(length, 4096).unwrap();
            contributing_modes(&seeding, &cavity, &window)
                .unwrap()
                .len() as i64
        };
        let c1 = count(l);
        let c2 = count(2.0 * l);
        assert!((c2 - 2 * c1).abs() <= 1, "count(L)={c1}, count(2L)={c2}");
    }
}
