//! Command-line front end: figure tables as CSV and single-point queries.
//!
//! Exit codes: 0 success, 2 usage error (bad or out-of-range flags, I/O),
//! 3 domain error (the computation itself failed, e.g. a singular
//! deformation or a calibration with no crossing).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::calibration::calibrate_xi_with;
use crate::coherence::{visibility_deformed, visibility_numeric, visibility_undeformed};
use crate::deformation::DeformationSpec;
use crate::error::Error;
use crate::figures::{fig1, fig2, fig3, CsvTable, Fig1Config, Fig2Config, Fig3Config, FIG2_XI, SIGNIFICANT_DIGITS};
use crate::fock::{separation_with, Truncation};
use crate::numeric::format_sig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fcat", version, about = "Nonlinear (f-deformed) cat states under amplitude damping")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Separation against q and xi, with the undeformed line.
    Fig1(Fig1Args),
    /// Visibility against gamma*t for several photon numbers.
    Fig2(Fig2Args),
    /// Visibility at fixed time against zeta^2, xi calibrated to a fixed separation.
    Fig3(Fig3Args),
    /// Visibility at a single point.
    Visibility(VisibilityArgs),
    /// Separation at a single point.
    Separation(SeparationArgs),
    /// Smallest xi giving a target separation.
    Calibrate(CalibrateArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Largest Fock dimension.
    #[arg(long, default_value_t = 128)]
    pub dim: usize,
    /// Relative weight below which Fock amplitudes count as negligible.
    #[arg(long, default_value_t = 1e-12)]
    pub floor: f64,
}

impl Common {
    fn truncation(&self) -> Result<Truncation, Failure> {
        positive("floor", self.floor)?;
        if self.dim < 2 {
            return Err(Failure::Usage(format!("--dim must be at least 2, got {}", self.dim)));
        }
        Truncation::new(self.floor, self.dim).map_err(|e| Failure::Usage(e.to_string()))
    }
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write CSV here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Fig1Args {
    #[arg(long, default_value_t = 2.0)]
    pub zeta2: f64,
    #[arg(long, default_value_t = 0.5)]
    pub q_min: f64,
    #[arg(long, default_value_t = 2.0)]
    pub q_max: f64,
    #[arg(long, default_value_t = 0.01)]
    pub q_step: f64,
    #[arg(long, default_value_t = 1.2)]
    pub xi_max: f64,
    /// Step of the xi grid.
    #[arg(long, default_value_t = 0.005)]
    pub step: f64,
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct Fig2Args {
    #[arg(long, default_value_t = 2.0)]
    pub zeta2: f64,
    #[arg(long, default_value_t = FIG2_XI)]
    pub xi: f64,
    #[arg(long, default_value_t = 3.0)]
    pub gamma_t_max: f64,
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    /// Photon numbers, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 3])]
    pub n: Vec<usize>,
    /// Add columns from explicit Kraus evolution.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct Fig3Args {
    #[arg(long, default_value_t = 1.0)]
    pub gamma_t: f64,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 0.1)]
    pub zeta2_min: f64,
    #[arg(long, default_value_t = 2.0)]
    pub zeta2_max: f64,
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    /// Undeformed photon number fixing the target separation 2*alpha.
    #[arg(long, default_value_t = 2.0)]
    pub alpha2: f64,
    #[arg(long, default_value_t = 1.2)]
    pub xi_max: f64,
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpecKind {
    Identity,
    Q,
    Laguerre,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    #[arg(long, value_enum, default_value_t = SpecKind::Identity)]
    pub spec: SpecKind,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub xi: Option<f64>,
}

impl SpecArgs {
    fn spec(&self) -> Result<DeformationSpec, Failure> {
        let param = |name: &str, value: Option<f64>| {
            let v = value.ok_or_else(|| Failure::Usage(format!("--spec {name} needs --{name}")))?;
            finite(name, v)?;
            Ok::<_, Failure>(v)
        };
        let spec = match self.spec {
            SpecKind::Identity => Ok(DeformationSpec::Identity),
            SpecKind::Q => DeformationSpec::q(param("q", self.q)?),
            SpecKind::Laguerre => DeformationSpec::laguerre(param("xi", self.xi)?),
        };
        spec.map_err(|e| Failure::Usage(e.to_string()))
    }
}

#[derive(Debug, Args)]
pub struct VisibilityArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// |zeta|^2 of the cat components.
    #[arg(long, conflicts_with = "alpha2")]
    pub zeta2: Option<f64>,
    /// Same as --zeta2; the usual name for undeformed cats.
    #[arg(long)]
    pub alpha2: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub gamma_t: f64,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Evaluate by explicit Kraus evolution instead of the series.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SeparationArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, conflicts_with = "zeta2")]
    pub zeta: Option<f64>,
    #[arg(long)]
    pub zeta2: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    #[arg(long, default_value_t = 2.0)]
    pub zeta2: f64,
    /// Undeformed photon number; the target separation is 2*alpha.
    #[arg(long, conflicts_with = "d_target")]
    pub alpha2: Option<f64>,
    #[arg(long)]
    pub d_target: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub xi_max: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn finite(name: &str, v: f64) -> Result<(), Failure> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--{name} must be finite, got {v}")))
    }
}

fn positive(name: &str, v: f64) -> Result<(), Failure> {
    finite(name, v)?;
    if v > 0.0 {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--{name} must be positive, got {v}")))
    }
}

fn non_negative(name: &str, v: f64) -> Result<(), Failure> {
    finite(name, v)?;
    if v >= 0.0 {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--{name} must be >= 0, got {v}")))
    }
}

fn ordered(lo_name: &str, lo: f64, hi_name: &str, hi: f64) -> Result<(), Failure> {
    if lo < hi {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--{lo_name} must be below --{hi_name}")))
    }
}

fn num(x: f64) -> String {
    format_sig(x, SIGNIFICANT_DIGITS)
}

fn emit(table: &CsvTable, output: &Output, out: &mut dyn Write) -> Result<(), Failure> {
    match &output.out {
        Some(path) => table
            .write_atomic(path)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => out
            .write_all(table.render().as_bytes())
            .map_err(|e| Failure::Usage(format!("cannot write stdout: {e}"))),
    }
}

fn scalar(x: f64, out: &mut dyn Write) -> Result<(), Failure> {
    writeln!(out, "{}", num(x)).map_err(|e| Failure::Usage(format!("cannot write stdout: {e}")))
}

fn cmd_fig1(a: &Fig1Args, out: &mut dyn Write) -> Result<(), Failure> {
    non_negative("zeta2", a.zeta2)?;
    positive("q-min", a.q_min)?;
    positive("q-max", a.q_max)?;
    positive("q-step", a.q_step)?;
    positive("xi-max", a.xi_max)?;
    positive("step", a.step)?;
    ordered("q-min", a.q_min, "q-max", a.q_max)?;
    let config = Fig1Config {
        zeta2: a.zeta2,
        q_min: a.q_min,
        q_max: a.q_max,
        q_step: a.q_step,
        xi_min: 0.0,
        xi_max: a.xi_max,
        xi_step: a.step,
        truncation: a.common.truncation()?,
    };
    emit(&fig1(&config)?.to_csv(), &a.output, out)
}

fn cmd_fig2(a: &Fig2Args, out: &mut dyn Write) -> Result<(), Failure> {
    non_negative("zeta2", a.zeta2)?;
    non_negative("xi", a.xi)?;
    positive("gamma-t-max", a.gamma_t_max)?;
    positive("step", a.step)?;
    if a.n.is_empty() {
        return Err(Failure::Usage("--n needs at least one value".into()));
    }
    let config = Fig2Config {
        zeta2: a.zeta2,
        xi: a.xi,
        gamma_t_max: a.gamma_t_max,
        step: a.step,
        ns: a.n.clone(),
        oracle: a.oracle,
        truncation: a.common.truncation()?,
    };
    emit(&fig2(&config)?.to_csv(), &a.output, out)
}

fn cmd_fig3(a: &Fig3Args, out: &mut dyn Write) -> Result<(), Failure> {
    non_negative("gamma-t", a.gamma_t)?;
    positive("zeta2-min", a.zeta2_min)?;
    positive("zeta2-max", a.zeta2_max)?;
    positive("step", a.step)?;
    positive("alpha2", a.alpha2)?;
    positive("xi-max", a.xi_max)?;
    ordered("zeta2-min", a.zeta2_min, "zeta2-max", a.zeta2_max)?;
    let config = Fig3Config {
        gamma_t: a.gamma_t,
        n: a.n,
        zeta2_min: a.zeta2_min,
        zeta2_max: a.zeta2_max,
        step: a.step,
        alpha2: a.alpha2,
        xi_max: a.xi_max,
        oracle: a.oracle,
        truncation: a.common.truncation()?,
    };
    emit(&fig3(&config)?.to_csv(), &a.output, out)
}

fn cmd_visibility(a: &VisibilityArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let zeta2 = a.zeta2.or(a.alpha2).unwrap_or(2.0);
    non_negative("zeta2", zeta2)?;
    non_negative("gamma-t", a.gamma_t)?;
    let truncation = a.common.truncation()?;
    let spec = a.spec.spec()?;
    let zeta = zeta2.sqrt();
    let eta = (-a.gamma_t).exp();
    let v = if a.oracle {
        visibility_numeric(spec, zeta, a.n, eta, truncation.max_dim)?.value
    } else if spec == DeformationSpec::Identity {
        visibility_undeformed(zeta, eta)?
    } else {
        visibility_deformed(spec, zeta, a.n, eta)?
    };
    scalar(v, out)
}

fn cmd_separation(a: &SeparationArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let zeta = match (a.zeta, a.zeta2) {
        (Some(z), _) => {
            finite("zeta", z)?;
            z
        }
        (None, Some(z2)) => {
            non_negative("zeta2", z2)?;
            z2.sqrt()
        }
        (None, None) => return Err(Failure::Usage("separation needs --zeta or --zeta2".into())),
    };
    let truncation = a.common.truncation()?;
    let spec = a.spec.spec()?;
    scalar(separation_with(spec, zeta, &truncation)?, out)
}

fn cmd_calibrate(a: &CalibrateArgs, out: &mut dyn Write) -> Result<(), Failure> {
    non_negative("zeta2", a.zeta2)?;
    positive("xi-max", a.xi_max)?;
    let target = match (a.d_target, a.alpha2) {
        (Some(d), _) => {
            positive("d-target", d)?;
            d
        }
        (None, Some(a2)) => {
            positive("alpha2", a2)?;
            2.0 * a2.sqrt()
        }
        (None, None) => 2.0 * a.zeta2.sqrt(),
    };
    let truncation = a.common.truncation()?;
    scalar(calibrate_xi_with(a.zeta2.sqrt(), target, a.xi_max, &truncation)?, out)
}

/// Parses `args` (program name first) and runs the command; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Fig1(a) => cmd_fig1(a, out),
        Command::Fig2(a) => cmd_fig2(a, out),
        Command::Fig3(a) => cmd_fig3(a, out),
        Command::Visibility(a) => cmd_visibility(a, out),
        Command::Separation(a) => cmd_separation(a, out),
        Command::Calibrate(a) => cmd_calibrate(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: usage: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            EXIT_DOMAIN
        }
    }
}
