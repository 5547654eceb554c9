//! Closed-form design rules for the beam angles.
//!
//! Sub-wavelength cavities suppress at least half the cascading when the
//! seeding pulses stay near grazing incidence; large cavities tuned to
//! kL = 2(p+1) pi reach 95% inside a narrow cone about the axis.
//!
//! ```sh
//! cargo run --example angle_windows
//! ```

use std::f64::consts::PI;

use cavity_cascade::{angle_window_50, angle_window_95, CavityGeometry};

fn main() -> cavity_cascade::Result<()> {
    println!(">= 50% suppression window, |cos theta| <= (pi - 3)/(kL):");
    for (lambda_nm, length_nm) in [(600.0, 100.0), (500.0, 200.0), (600.0, 40.0)] {
        let k = 2.0 * PI / (lambda_nm * 1e-9);
        let cavity = CavityGeometry::with_length(length_nm * 1e-9)?;
        let window = angle_window_50(k, &cavity)?;
        if window.full {
            println!("  lambda = {lambda_nm} nm, L = {length_nm} nm: every angle qualifies");
        } else {
            println!(
                "  lambda = {lambda_nm} nm, L = {length_nm} nm: {:.1} to {:.1} deg",
                window.lower.to_degrees(),
                window.upper.to_degrees()
            );
        }
    }

    println!("\n>= 95% suppression cone at kL = 2(p+1) pi, |cos theta| >= (p + 5/2pi)/(p+1):");
    for p in 1..=6 {
        let cone = angle_window_95(p)?;
        println!("  p = {p}: theta <= {:.1} deg", cone.max_angle.to_degrees());
    }
    Ok(())
}
