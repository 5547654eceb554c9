//! Sweep the mirror spacing and print the suppression landscape.
//!
//! ```sh
//! cargo run --example cavity_length_scan
//! ```

use std::f64::consts::PI;

use cavity_cascade::{
    run_scan, CascadeConfig, CavityGeometry, ModeSelection, SampleConfig, ScanAxis, ScanBase,
    ScanSpec, SweptParam,
};

fn main() -> cavity_cascade::Result<()> {
    let k = 2.0 * PI / 500e-9;
    let base = ScanBase {
        wavenumber: k,
        theta2: 0.0,
        theta3: 0.0,
        cavity: CavityGeometry::with_length(1e-6)?,
        sample: SampleConfig::default(),
        cascade: CascadeConfig::default(),
        modes: ModeSelection::FixedCount(2),
    };
    let spec = ScanSpec::new(
        base,
        vec![ScanAxis::new(
            SweptParam::CavityLength,
            2.0 * PI / k,
            4.0 * PI / k,
            25,
        )?],
    )?;
    let table = run_scan(&spec)?;

    println!(" L (nm)    kL/pi   summed ratio   bar");
    for row in &table.rows {
        let length = row.values[0];
        match &row.report {
            Some(report) => {
                let ratio = report.total_suppression_ratio;
                let bar = "#".repeat((ratio * 40.0).round() as usize);
                println!(
                    " {:7.1}   {:5.2}   {:>11.4}    {bar}",
                    length * 1e9,
                    k * length / PI,
                    ratio
                );
            }
            None => println!(
                " {:7.1}   {:5.2}   phase-matched (singular)",
                length * 1e9,
                k * length / PI
            ),
        }
    }
    Ok(())
}
