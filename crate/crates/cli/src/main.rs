use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use nodal_syzygy::closedform::{Mode, OracleChoice};
use nodal_syzygy::groebner::DEFAULT_CELL_BUDGET;
use nodal_syzygy::polyring::Field;
use nodal_syzygy_cli::{parse_field, run, OutputFormat, RunConfig, EXIT_USAGE};

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Verify,
    ExponentsOnly,
    SurfaceExperiment,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Groebner,
    LinearAlgebra,
    Both,
}

/// Jacobian syzygies and free resolutions of nodal curve arrangements.
#[derive(Parser)]
#[command(version)]
struct Args {
    /// Arrangement file (JSON).
    #[arg(long)]
    input: PathBuf,
    /// `q` or `p:<prime>`; defaults to the characteristic in the file.
    #[arg(long, value_parser = parse_field)]
    field: Option<Field>,
    #[arg(long, value_enum, default_value = "verify")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "both")]
    oracle: OracleArg,
    /// Keep the input coordinates.
    #[arg(long)]
    no_normalize: bool,
    #[arg(long)]
    json: bool,
    /// Highest degree for the linear-algebra oracle.
    #[arg(long)]
    degree_cap: Option<i64>,
    /// Matrix cells the linear-algebra oracle may allocate.
    #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
    cell_budget: u64,
    /// Run the normal crossing checks for surfaces.
    #[arg(long)]
    full_check: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let config = RunConfig {
        input: args.input,
        field: args.field,
        mode: match args.mode {
            ModeArg::Verify => Mode::Verify,
            ModeArg::ExponentsOnly => Mode::ExponentsOnly,
            ModeArg::SurfaceExperiment => Mode::SurfaceExperiment,
        },
        oracle: match args.oracle {
            OracleArg::Groebner => OracleChoice::Groebner,
            OracleArg::LinearAlgebra => OracleChoice::LinearAlgebra,
            OracleArg::Both => OracleChoice::Both,
        },
        normalize: !args.no_normalize,
        output: if args.json {
            OutputFormat::Json
        } else {
            OutputFormat::Text
        },
        degree_cap: args.degree_cap,
        cell_budget: args.cell_budget,
        full_check: args.full_check,
    };
    let (code, out, err) = run(&config);
    let _ = std::io::stdout().write_all(out.as_bytes());
    let _ = std::io::stderr().write_all(err.as_bytes());
    ExitCode::from(code as u8)
}
