//! Plot-ready data emission: CSV and JSON artifacts plus stdout tables.
//!
//! All files are written atomically (temp then rename) and all float
//! formatting is canonical, so identical runs produce byte-identical output.
//! CSV uses a header row, comma separators, '.' decimals and LF endings.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::SuppressionReport;
use crate::response::SignalSurfaces;
use crate::scan::{OptimumResult, ScanTable, SweptParam};

/// Canonical float rendering: scientific with 9 fractional digits, negative
/// zero folded into zero.
pub fn fmt_float(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.9e}")
}

/// Write `content` to `path` via a temporary sibling and an atomic rename.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let parent = path.parent().unwrap_or_else(|| Path::new("."));
    if !parent.as_os_str().is_empty() {
        fs::create_dir_all(parent)?;
    }
    let mut tmp: PathBuf = path.to_path_buf();
    let name = path
        .file_name()
        .ok_or_else(|| Error::config(format!("output path {path:?} has no file name")))?
        .to_string_lossy()
        .into_owned();
    tmp.set_file_name(format!(".{name}.tmp"));
    fs::write(&tmp, content)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map_err(|e| Error::config(format!("json serialization: {e}")))
}

/// CSV rows of a mode listing: one row per contributing mode.
pub fn modes_csv(rows: &[ModeRow]) -> String {
    let mut out = String::from("mode,frequency_rad_s,relative_detuning,weight\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.mode,
            fmt_float(row.frequency),
            fmt_float(row.relative_detuning),
            fmt_float(row.weight),
        ));
    }
    out
}

/// One row of the `modes` listing.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ModeRow {
    pub mode: u32,
    /// Mode frequency (rad/s).
    pub frequency: f64,
    /// (omega - center) / center.
    pub relative_detuning: f64,
    /// omega / center.
    pub weight: f64,
}

pub fn modes_text(rows: &[ModeRow]) -> String {
    let mut out = String::from("  mode   frequency (rad/s)   detuning (rel)\n");
    for row in rows {
        out.push_str(&format!(
            "  {:>4}   {:>17.6e}   {:>+14.6e}\n",
            row.mode, row.frequency, row.relative_detuning
        ));
    }
    out
}

/// Human-readable suppression report.
pub fn report_text(report: &SuppressionReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("cascade kind          : {}\n", report.kind));
    out.push_str(&format!(
        "cavity length         : {:.6e} m (kL = {:.6})\n",
        report.cavity_length,
        report.wavenumber * report.cavity_length
    ));
    out.push_str(&format!(
        "seeding polar angle   : {:.4} deg\n",
        report.polar_angle.to_degrees()
    ));
    out.push_str(&format!(
        "conventions           : {} denominator, {} reference, {} branches\n",
        report.denominator_convention.label(),
        report.reference_convention.label(),
        report.branch_policy.label()
    ));
    out.push_str(&format!(
        "mode selection        : {}\n",
        report.mode_selection
    ));
    out.push_str("  m  branch   prefactor        weight          term\n");
    for term in &report.terms {
        out.push_str(&format!(
            "  {:<3} {:+}     {:<15.6e} {:<15.6e} {:<15.6e}\n",
            term.mode, term.branch, term.prefactor, term.weight, term.term
        ));
    }
    out.push_str(&format!(
        "total prefactor       : {}\n",
        fmt_float(report.total_prefactor)
    ));
    if let Some(dominant) = report.dominant_prefactor {
        out.push_str(&format!(
            "dominant-mode prefactor: {}\n",
            fmt_float(dominant)
        ));
    }
    out.push_str(&format!(
        "suppression ratio     : {}\n",
        fmt_float(report.suppression_ratio)
    ));
    out.push_str(&format!(
        "summed-mode ratio     : {}\n",
        fmt_float(report.total_suppression_ratio)
    ));
    for note in &report.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out
}

fn axis_column(param: SweptParam) -> &'static str {
    match param {
        SweptParam::CavityLength => "length_nm",
        SweptParam::Theta2 => "theta2_deg",
        SweptParam::Theta3 => "theta3_deg",
    }
}

fn axis_user_value(param: SweptParam, si: f64) -> f64 {
    match param {
        SweptParam::CavityLength => si * 1e9,
        SweptParam::Theta2 | SweptParam::Theta3 => si.to_degrees(),
    }
}

/// Scan table CSV: one swept-value column per axis, then the report scalars.
pub fn scan_csv(table: &ScanTable) -> String {
    let mut out = String::new();
    for axis in &table.axes {
        out.push_str(axis_column(axis.param));
        out.push(',');
    }
    out.push_str(
        "total_prefactor,dominant_prefactor,suppression_ratio,total_suppression_ratio,error\n",
    );
    for row in &table.rows {
        for (axis, value) in table.axes.iter().zip(row.values.iter()) {
            out.push_str(&fmt_float(axis_user_value(axis.param, *value)));
            out.push(',');
        }
        match (&row.report, &row.error) {
            (Some(report), _) => {
                out.push_str(&fmt_float(report.total_prefactor));
                out.push(',');
                out.push_str(&fmt_float(report.dominant_prefactor.unwrap_or(f64::NAN)));
                out.push(',');
                out.push_str(&fmt_float(report.suppression_ratio));
                out.push(',');
                out.push_str(&fmt_float(report.total_suppression_ratio));
                out.push_str(",\n");
            }
            (None, Some(error)) => {
                out.push_str(",,,,");
                out.push_str(&error.replace(',', ";"));
                out.push('\n');
            }
            (None, None) => out.push_str(",,,,unknown\n"),
        }
    }
    out
}

/// Optimum summary rendered for stdout.
pub fn optimum_text(result: &OptimumResult, axes: &[SweptParam]) -> String {
    let mut out = String::new();
    out.push_str("optimum found:\n");
    for (param, value) in axes.iter().zip(result.values.iter()) {
        out.push_str(&format!(
            "  {:<13} = {:.6}\n",
            axis_column(*param),
            axis_user_value(*param, *value)
        ));
    }
    out.push_str(&format!(
        "  objective     = {}\n",
        fmt_float(result.objective)
    ));
    out.push_str(&format!(
        "  grid          = {:?}, {} refinement steps\n",
        result.grid_points, result.refinement_steps
    ));
    out
}

/// 2D signal CSV: one row per (T2, T4) grid point.
pub fn signal_csv(surfaces: &SignalSurfaces) -> String {
    let mut out = String::from("t2_fs,t4_fs,direct,sequential,parallel,total\n");
    let t2 = &surfaces.total.t2_axis;
    let t4 = &surfaces.total.t4_axis;
    for (i2, &a) in t2.iter().enumerate() {
        for (i4, &b) in t4.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                fmt_float(a * 1e15),
                fmt_float(b * 1e15),
                fmt_float(surfaces.direct.value(i2, i4)),
                fmt_float(surfaces.sequential.value(i2, i4)),
                fmt_float(surfaces.parallel.value(i2, i4)),
                fmt_float(surfaces.total.value(i2, i4)),
            ));
        }
    }
    out
}
