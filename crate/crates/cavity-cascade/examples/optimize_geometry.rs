//! Recover the analytic optimum kL = 2(p+1) pi by grid refinement.
//!
//! ```sh
//! cargo run --example optimize_geometry
//! ```

use std::f64::consts::PI;

use cavity_cascade::scan::DEFAULT_REFINEMENT_STEPS;
use cavity_cascade::{
    optimize, sensitivity, CascadeConfig, CavityGeometry, ModeSelection, SampleConfig, ScanAxis,
    ScanBase, ScanSpec, SweptParam,
};

fn main() -> cavity_cascade::Result<()> {
    let k = 2.0 * PI / 500e-9;
    for p in [1u32, 2, 3] {
        let expect = 2.0 * (p as f64 + 1.0) * PI / k;
        let base = ScanBase {
            wavenumber: k,
            theta2: 0.0,
            theta3: 0.0,
            cavity: CavityGeometry::with_length(expect)?,
            sample: SampleConfig::default(),
            cascade: CascadeConfig::default(),
            modes: ModeSelection::FixedCount(2 * p),
        };
        let spec = ScanSpec::new(
            base.clone(),
            vec![ScanAxis::new(
                SweptParam::CavityLength,
                2.0 * p as f64 * PI / k,
                expect,
                17,
            )?],
        )?;
        let result = optimize(&spec, DEFAULT_REFINEMENT_STEPS)?;
        let sens = sensitivity(&base, SweptParam::CavityLength, result.values[0], 1e-4)?;
        println!(
            "p = {p}: optimum L = {:7.2} nm (kL = {:.4} pi, analytic {:.0} pi), \
             objective {:.5}, |dR| per relative step {:.2e}",
            result.values[0] * 1e9,
            k * result.values[0] / PI,
            k * expect / PI,
            result.objective,
            (sens.derivative * sens.step).abs()
        );
    }
    Ok(())
}
