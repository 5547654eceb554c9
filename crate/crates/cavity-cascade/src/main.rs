//! Thin command-line front end over the library.
//!
//! Exit codes: 0 success, 2 configuration error, 3 singular configuration,
//! 4 output I/O failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cavity_cascade::cavity::cascade_mode_frequency;
use cavity_cascade::config::RunConfig;
use cavity_cascade::error::Error;
use cavity_cascade::kernel::suppress;
use cavity_cascade::output::{
    self, modes_csv, modes_text, optimum_text, report_text, scan_csv, signal_csv, to_json_pretty,
    ModeRow,
};
use cavity_cascade::response::{assemble_signal, AssembleOptions};
use cavity_cascade::scan::{optimize, run_scan};

#[derive(Parser)]
#[command(
    name = "cavity-cascade",
    about = "Fabry-Perot cavity design against fifth-order Raman cascading",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Literal,
    #[value(name = "as-evaluated")]
    AsEvaluated,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReferenceArg {
    #[value(name = "unit-bound")]
    UnitBound,
    #[value(name = "matched-peak")]
    MatchedPeak,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchesArg {
    Both,
    Plus,
    Minus,
}

#[derive(Args)]
struct CommonArgs {
    /// Run configuration (sectioned key=value text or JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory for artifacts; stdout only when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Artifact format.
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Override the denominator convention from the config.
    #[arg(long, value_enum)]
    convention: Option<ConventionArg>,
    /// Override the reference convention from the config.
    #[arg(long, value_enum)]
    reference: Option<ReferenceArg>,
    /// Override the branch policy from the config.
    #[arg(long, value_enum)]
    branches: Option<BranchesArg>,
    /// Suppress the stdout summary.
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// List the contributing cavity modes and their detunings.
    Modes(CommonArgs),
    /// Evaluate the cascade suppression report for one configuration.
    Suppress(CommonArgs),
    /// Sweep cavity length and/or pulse angles.
    Scan(CommonArgs),
    /// Grid search plus refinement for maximum suppression.
    Optimize(CommonArgs),
    /// Assemble direct and cascade 2D time-domain surfaces.
    Signal2d(CommonArgs),
}

fn load_config(args: &CommonArgs) -> Result<RunConfig, Error> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Error::config(format!("cannot read {:?}: {e}", args.config)))?;
    let mut config = RunConfig::parse(&text)?;
    if let Some(convention) = args.convention {
        config.cascade.convention = match convention {
            ConventionArg::Literal => "literal",
            ConventionArg::AsEvaluated => "as-evaluated",
        }
        .to_string();
    }
    if let Some(reference) = args.reference {
        config.cascade.reference = match reference {
            ReferenceArg::UnitBound => "unit-bound",
            ReferenceArg::MatchedPeak => "matched-peak",
        }
        .to_string();
    }
    if let Some(branches) = args.branches {
        config.cascade.branches = match branches {
            BranchesArg::Both => "both",
            BranchesArg::Plus => "plus",
            BranchesArg::Minus => "minus",
        }
        .to_string();
    }
    Ok(config)
}

fn emit(
    args: &CommonArgs,
    file_stem: &str,
    csv: Option<String>,
    json: Option<String>,
) -> Result<(), Error> {
    let Some(dir) = &args.out else {
        return Ok(());
    };
    let (ext, content) = match args.format {
        FormatArg::Csv => ("csv", csv),
        FormatArg::Json => ("json", json),
    };
    let Some(content) = content else {
        return Ok(());
    };
    let path = dir.join(format!("{file_stem}.{ext}"));
    output::write_atomic(&path, &content)
}

fn say(args: &CommonArgs, text: &str) {
    if !args.quiet {
        print!("{text}");
        if !text.ends_with('\n') {
            println!();
        }
    }
}

fn cmd_modes(args: &CommonArgs) -> Result<(), Error> {
    let config = load_config(args)?;
    let seeding = config.seeding_pulse()?;
    let cavity = config.cavity_geometry()?;
    let window = config.resonance_window()?;
    let modes = cavity_cascade::cavity::contributing_modes(&seeding, &cavity, &window)?;
    let rows: Vec<ModeRow> = modes
        .iter()
        .map(|&m| {
            let omega = cascade_mode_frequency(m, &seeding, &cavity).expect("validated mode");
            ModeRow {
                mode: m,
                frequency: omega,
                relative_detuning: (omega - window.center) / window.center,
                weight: omega / window.center,
            }
        })
        .collect();
    if rows.is_empty() {
        say(
            args,
            "warning: no cavity mode falls inside the resonance window\n",
        );
    } else {
        say(args, &modes_text(&rows));
    }
    emit(
        args,
        "modes",
        Some(modes_csv(&rows)),
        Some(to_json_pretty(&rows)?),
    )
}

fn cmd_suppress(args: &CommonArgs) -> Result<(), Error> {
    let config = load_config(args)?;
    let report = suppress(
        &config.seeding_pulse()?,
        &config.cavity_geometry()?,
        &config.mode_selection()?,
        &config.sample_config()?,
        &config.cascade_config()?,
    )?;
    say(args, &report_text(&report));
    let json = to_json_pretty(&report)?;
    let csv = {
        let mut csv = String::from("mode,branch,prefactor,weight,term\n");
        for t in &report.terms {
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                t.mode,
                t.branch,
                output::fmt_float(t.prefactor),
                output::fmt_float(t.weight),
                output::fmt_float(t.term)
            ));
        }
        csv
    };
    emit(args, "suppress", Some(csv), Some(json))
}

fn cmd_scan(args: &CommonArgs) -> Result<(), Error> {
    let config = load_config(args)?;
    let spec = config.scan_spec()?;
    let table = run_scan(&spec)?;
    for warning in &table.warnings {
        say(args, &format!("warning: {warning}\n"));
    }
    let evaluated = table.rows.iter().filter(|r| r.report.is_some()).count();
    say(
        args,
        &format!(
            "scan: {} rows ({} evaluated, {} singular)\n",
            table.rows.len(),
            evaluated,
            table.rows.len() - evaluated
        ),
    );
    emit(
        args,
        "scan",
        Some(scan_csv(&table)),
        Some(to_json_pretty(&table)?),
    )
}

fn cmd_optimize(args: &CommonArgs) -> Result<(), Error> {
    let config = load_config(args)?;
    let spec = config.scan_spec()?;
    let result = optimize(&spec, config.scan.refine_steps)?;
    let params: Vec<_> = spec.axes.iter().map(|a| a.param).collect();
    say(args, &optimum_text(&result, &params));
    let json = to_json_pretty(&result)?;
    let csv = {
        let mut csv = String::new();
        for (param, value) in params.iter().zip(result.values.iter()) {
            csv.push_str(&format!("{:?},{}\n", param, output::fmt_float(*value)));
        }
        csv.push_str(&format!(
            "objective,{}\n",
            output::fmt_float(result.objective)
        ));
        csv
    };
    emit(args, "optimum", Some(csv), Some(json))
}

fn cmd_signal2d(args: &CommonArgs) -> Result<(), Error> {
    let config = load_config(args)?;
    let (t2_grid, t4_grid) = config.time_grids()?;
    let surfaces = assemble_signal(
        &config.pulse_sequence()?,
        &config.cavity_geometry()?,
        &config.sample_config()?,
        &config.vibronic_model()?,
        &t2_grid,
        &t4_grid,
        &config.mode_selection()?,
        &config.cascade_config()?,
        &AssembleOptions {
            include_cascades: config.signal.include_cascades,
            cascade_amplitude_scale: config.signal.cascade_scale,
        },
    )?;
    say(
        args,
        &format!(
            "signal2d: {}x{} grid; amplitudes direct {}, sequential {}, parallel {}\n",
            surfaces.total.t2_axis.len(),
            surfaces.total.t4_axis.len(),
            output::fmt_float(surfaces.direct_amplitude),
            output::fmt_float(surfaces.sequential_amplitude),
            output::fmt_float(surfaces.parallel_amplitude),
        ),
    );
    emit(
        args,
        "signal2d",
        Some(signal_csv(&surfaces)),
        Some(to_json_pretty(&surfaces)?),
    )
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::Config(_) | Error::Domain(_) => 2,
        Error::SingularConfiguration { .. } => 3,
        Error::Io(_) => 4,
        _ => 1,
    }
}

fn check_out_dir(args: &CommonArgs) -> Result<(), Error> {
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir).map_err(Error::Io)?;
        let probe = dir.join(".write-probe");
        std::fs::write(&probe, b"").map_err(Error::Io)?;
        let _ = std::fs::remove_file(&probe);
    }
    Ok(())
}

fn run(command: &Command) -> Result<(), Error> {
    let args = match command {
        Command::Modes(a)
        | Command::Suppress(a)
        | Command::Scan(a)
        | Command::Optimize(a)
        | Command::Signal2d(a) => a,
    };
    check_out_dir(args)?;
    match command {
        Command::Modes(a) => cmd_modes(a),
        Command::Suppress(a) => cmd_suppress(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Optimize(a) => cmd_optimize(a),
        Command::Signal2d(a) => cmd_signal2d(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code_for(&error))
        }
    }
}
