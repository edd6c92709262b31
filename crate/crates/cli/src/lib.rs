//! Library side of the `menger` command-line tool.
//!
//! [`run`] parses an argument vector and returns everything the binary
//! would print, so the whole tool can be exercised in-process.

mod commands;
mod output;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

pub use output::Format;

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    /// 0 on success, 1 on a domain or data error, 2 on a usage error.
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "menger",
    version,
    about = "Grossone arithmetic, Menger sponge porosity and fractal retention curves"
)]
struct Cli {
    /// Output format.
    #[arg(long, short, global = true, value_enum, default_value_t = Format::Table)]
    output: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a gross-number expression and print its canonical form.
    Eval(EvalArgs),
    /// Menger sponge count, side and volume at iteration n.
    Sponge(GeometryArgs),
    /// Sierpinski carpet count, side and area at iteration n.
    Carpet(GeometryArgs),
    /// Porosity of the classical, grossone or Turcotte sponge.
    Porosity(PorosityArgs),
    /// Evaluate a retention curve on a head grid.
    WrcEval(WrcEvalArgs),
    /// Fit fractal dimensions to retention data.
    WrcFit(WrcFitArgs),
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Expression, with `g` (or ①) for grossone.
    expr: String,
    /// Also substitute ① := T and print the exact result.
    #[arg(long, value_name = "T")]
    at: Option<u64>,
}

#[derive(Args, Debug)]
struct GeometryArgs {
    /// Starting level, 1 <= k <= n.
    #[arg(long, default_value_t = 1)]
    k: u64,
    /// Comma-separated iteration indices: N, g or g-M.
    #[arg(long, value_delimiter = ',', default_value = "g")]
    n: Vec<String>,
    /// Print the fractal dimension to this many decimal places instead.
    #[arg(long, value_name = "PLACES")]
    dimension: Option<u32>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PorosityModel {
    Classical,
    Grossone,
    Turcotte,
}

#[derive(Args, Debug)]
struct PorosityArgs {
    #[arg(long, value_enum)]
    model: PorosityModel,
    /// Comma-separated iterations (classical, turcotte: integers; grossone: N, g or g-M).
    #[arg(long, value_delimiter = ',')]
    n: Vec<String>,
    /// Starting level for the grossone model.
    #[arg(long, default_value_t = 1)]
    k: u64,
    /// Turcotte element size r0.
    #[arg(long, default_value = "1")]
    r0: String,
    /// Turcotte solid density rho0.
    #[arg(long, default_value = "1")]
    rho0: String,
    /// Turcotte: comma-separated sizes r for the power-law form.
    #[arg(long, value_delimiter = ',')]
    r: Vec<String>,
    /// Fractal dimension for the power-law form: `sponge`, `carpet` or a number.
    #[arg(long = "d-f", default_value = "sponge")]
    d_f: String,
    /// Decimal digits for the power-law form.
    #[arg(long, default_value_t = sponge_core::porosity::DEFAULT_DIGITS)]
    digits: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WrcModel {
    Psf,
    Tw,
    Rs,
}

#[derive(Args, Debug)]
struct WrcEvalArgs {
    #[arg(long, value_enum, default_value_t = WrcModel::Psf)]
    model: WrcModel,
    #[arg(long = "theta-s")]
    theta_s: f64,
    /// PSF solid-pore coefficient; ignored by TW and RS.
    #[arg(long)]
    a: Option<f64>,
    #[arg(long = "h-min")]
    h_min: f64,
    #[arg(long = "h-max")]
    h_max: Option<f64>,
    /// Fractal dimension: `sponge`, `carpet` or a number.
    #[arg(long = "d-f", default_value = "sponge")]
    d_f: String,
    /// Head grid `lo:hi:steps`, log-spaced; defaults to h_min:1000*h_min:50.
    #[arg(long = "h-grid")]
    h_grid: Option<String>,
    /// Add columns x = log10(h_min/h) and y = log10(1 - (theta_s - theta)/A).
    #[arg(long)]
    loglog: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FitMode {
    Single,
    Bimodal,
}

#[derive(Args, Debug)]
struct WrcFitArgs {
    /// CSV with header `h,theta`.
    #[arg(long)]
    input: std::path::PathBuf,
    #[arg(long, value_enum, default_value_t = FitMode::Single)]
    mode: FitMode,
    /// Saturated water content; defaults to the largest theta in the data.
    #[arg(long = "theta-s")]
    theta_s: Option<f64>,
    /// Defaults to theta_s.
    #[arg(long)]
    a: Option<f64>,
    /// Defaults to the smallest h in the data.
    #[arg(long = "h-min")]
    h_min: Option<f64>,
}

/// Runs the tool on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> RunReport
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let mut text = e.render().to_string();
            return if e.use_stderr() {
                if !text.contains("Usage:") {
                    text.push_str(&format!("\n{}\n", Cli::command().render_usage()));
                }
                RunReport {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                RunReport {
                    exit_code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut warnings = Vec::new();
    let result = match cli.command {
        Command::Eval(a) => commands::eval(&a),
        Command::Sponge(a) => commands::geometry(&a, sponge_core::Fractal::Sponge),
        Command::Carpet(a) => commands::geometry(&a, sponge_core::Fractal::Carpet),
        Command::Porosity(a) => commands::porosity(&a),
        Command::WrcEval(a) => commands::wrc_eval(&a, &mut warnings),
        Command::WrcFit(a) => commands::wrc_fit(&a),
    };
    let mut stderr: String = warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    match result {
        Ok(r) => RunReport {
            exit_code: 0,
            stdout: r.render(cli.output),
            stderr,
        },
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            RunReport {
                exit_code: 1,
                stdout: String::new(),
                stderr,
            }
        }
    }
}
