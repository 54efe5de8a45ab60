//! `qbm` command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::harness::config::ConfigValues;
use crate::harness::figures::{render_figure, Figure};
use crate::harness::output::{emit_csv, format_float, write_csv, write_svg, Quantity};
use crate::harness::sweep::{run_sweep, OutputFormat, SweepConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qbm",
    version,
    about = "Two quantum Brownian oscillators in a common field bath"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a time sweep and write CSV (stdout by default) and optionally SVG.
    Sweep {
        #[command(flatten)]
        params: ParamArgs,
        /// CSV destination; `-` or omitted writes to stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// SVG destination.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Quantity plotted in the SVG: zeta, lambda or negativity.
        #[arg(long, default_value = "lambda")]
        quantity: String,
    },
    /// Print only the disentanglement time.
    Tde {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Regenerate the built-in figure bundles as CSV + SVG.
    Figures {
        /// 1, 2, 3 or all.
        #[arg(long, default_value = "all")]
        which: String,
        #[arg(long, default_value = "figures")]
        out_dir: PathBuf,
    },
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// `key = value` configuration file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long = "lambda-cutoff")]
    lambda_cutoff: Option<f64>,
    #[arg(long = "temp", visible_alias = "temperature")]
    temperature: Option<f64>,
    /// Initial two-mode squeezing parameter.
    #[arg(long)]
    r: Option<f64>,
    #[arg(long = "t-start")]
    t_start: Option<f64>,
    #[arg(long = "t-end")]
    t_end: Option<f64>,
    /// Grid points including both endpoints.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long = "quad-tol")]
    quad_tol: Option<f64>,
}

impl ParamArgs {
    fn resolve(&self) -> Result<SweepConfig> {
        let file = match &self.config {
            Some(path) => ConfigValues::from_file(path)?,
            None => ConfigValues::default(),
        };
        let flags = ConfigValues {
            omega: self.omega,
            gamma: self.gamma,
            lambda_cutoff: self.lambda_cutoff,
            temperature: self.temperature,
            r: self.r,
            t_start: self.t_start,
            t_end: self.t_end,
            steps: self.steps,
            quad_tol: self.quad_tol,
        };
        file.overlay(&flags).to_sweep_config()
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_config() {
        EXIT_CONFIG
    } else {
        EXIT_NUMERICAL
    }
}

fn run(command: Command, out: &mut dyn Write) -> Result<()> {
    let stdout_err = |e| Error::io(std::path::Path::new("<stdout>"), e);
    match command {
        Command::Sweep {
            params,
            csv,
            svg,
            quantity,
        } => {
            let quantity: Quantity = quantity.parse()?;
            let mut config = params.resolve()?;
            if svg.is_some() {
                config.outputs.insert(OutputFormat::Svg);
            }
            let result = run_sweep(&config)?;
            match csv.as_deref() {
                Some(path) if path.as_os_str() != "-" => write_csv(&result.reports, path)?,
                _ => emit_csv(&result.reports, &mut *out).map_err(stdout_err)?,
            }
            if let Some(path) = svg {
                write_svg(&result.reports, quantity, &path)?;
            }
        }
        Command::Tde { params } => {
            let result = run_sweep(&params.resolve()?)?;
            match result.t_de {
                Some(t) => writeln!(out, "t_DE: {} ns", format_float(t)),
                None => writeln!(out, "t_DE: none"),
            }
            .map_err(stdout_err)?;
        }
        Command::Figures { which, out_dir } => {
            for figure in Figure::parse(&which)? {
                for (stem, result) in render_figure(figure, &out_dir)? {
                    let t_de = result
                        .t_de
                        .map_or("none".to_owned(), |t| format!("{} ns", format_float(t)));
                    writeln!(out, "{stem}: {} points, t_DE: {t_de}", result.reports.len())
                        .map_err(stdout_err)?;
                }
            }
        }
    }
    Ok(())
}

/// Parses `argv` (program name first) and runs the command. Returns the
/// process exit code: 0 success, 1 configuration or I/O error, 2 numerical
/// failure.
pub fn cli_main<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match run(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
