//! Enumerate the cavity modes that can carry a cascade.
//!
//! ```sh
//! cargo run --example list_modes
//! ```

use std::f64::consts::PI;

use cavity_cascade::{
    cascade_mode_frequency, contributing_modes, CavityGeometry, Pulse, ResonanceWindow,
};

fn main() -> cavity_cascade::Result<()> {
    let lambda = 500e-9;
    let k = 2.0 * PI / lambda;

    // Sub-wavelength cavity, grazing pulse: the two modes behind the ~60%
    // suppression figure.
    let cavity = CavityGeometry::with_length(lambda)?;
    let grazing = Pulse::new(k, PI / 2.0, 0.0)?;
    let window = ResonanceWindow::around_pulse(&grazing);
    println!("L = lambda = {:.0} nm, theta = 90 deg:", lambda * 1e9);
    for m in contributing_modes(&grazing, &cavity, &window)? {
        let omega = cascade_mode_frequency(m, &grazing, &cavity)?;
        println!(
            "  m = {m}: omega = {omega:.4e} rad/s ({:+.1}% from the gap)",
            100.0 * (omega / window.center - 1.0)
        );
    }

    // Large cavity on axis: the contributing set grows toward 2p.
    let axial = Pulse::new(k, 0.0, 0.0)?;
    for p in [2u32, 5, 10] {
        let cavity = CavityGeometry::with_length(2.0 * p as f64 * PI / k)?;
        let tight = ResonanceWindow::around_pulse(&axial).with_halfwidth(0.05)?;
        let modes = contributing_modes(&axial, &cavity, &tight)?;
        println!(
            "L = 2p pi/k with p = {p:>2}: modes {:?} (expected top ~ {})",
            modes,
            2 * p
        );
    }
    Ok(())
}
