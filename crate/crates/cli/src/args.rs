use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use doubletip_core::analysis::Landmark;
use doubletip_core::checks::CheckName;
use doubletip_core::HomotopyKind;

#[derive(Debug, Parser)]
#[command(name = "doubletip", version, about = "Sample, verify and serve the double-tipping nullhomotopy of the double twist")]
pub struct Cli {
    /// Show angles in degrees in log output. Written data stays in radians.
    #[arg(long, global = true)]
    pub degrees: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a grid of frame poses (65×65 unless sized).
    Sample(GridArgs),
    /// Write the movie grid of frame poses (9×9 unless sized).
    Frames(GridArgs),
    /// Run numerical checks and write their reports.
    Verify(VerifyArgs),
    /// Write the path of one landmark over a movie.
    Contrail(ContrailArgs),
    /// Write the two hemispherical views of the lift.
    Hemiviews(HemiArgs),
    /// Write the φ/θ surfaces as JSON or CSV.
    PhiTheta(SurfaceArgs),
    /// Write grids of both homotopies side by side.
    Compare(CompareArgs),
    /// Serve frames and surfaces over HTTP.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file; standard output when omitted or `-`.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Remote {
    /// Fetch from a running `doubletip serve` instead of computing locally.
    #[arg(long, value_name = "URL")]
    pub remote: Option<String>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value = "D", value_parser = parse_kind)]
    pub kind: HomotopyKind,
    /// Samples of s, both edges included.
    #[arg(long)]
    pub ns: Option<usize>,
    /// Samples of t, both edges included.
    #[arg(long)]
    pub nt: Option<usize>,
    #[command(flatten)]
    pub output: Output,
    #[command(flatten)]
    pub remote: Remote,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Check names, or `all`: in-p, injective, surjective, degree,
    /// every-which-way, thumb-counts, candle-once.
    #[arg(default_value = "all", value_parser = parse_selection)]
    pub checks: Vec<Selected>,
    /// Homotopy scanned by `in-p`.
    #[arg(long, default_value = "D", value_parser = parse_kind)]
    pub kind: HomotopyKind,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Override the tolerance of a single named check.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ContrailArgs {
    #[arg(long, default_value = "fingers", value_parser = parse_landmark)]
    pub landmark: Landmark,
    #[arg(long)]
    pub s: f64,
    #[arg(long, default_value_t = 256)]
    pub nt: usize,
    #[arg(long, default_value = "D", value_parser = parse_kind)]
    pub kind: HomotopyKind,
    #[command(flatten)]
    pub output: Output,
    #[command(flatten)]
    pub remote: Remote,
}

#[derive(Debug, Args)]
pub struct HemiArgs {
    #[arg(long, default_value_t = 9)]
    pub ns: usize,
    #[arg(long, default_value_t = 129)]
    pub nt: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    #[arg(long, default_value_t = 65)]
    pub ns: usize,
    #[arg(long, default_value_t = 65)]
    pub nt: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
    #[command(flatten)]
    pub remote: Remote,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, default_value_t = 9)]
    pub ns: usize,
    #[arg(long, default_value_t = 9)]
    pub nt: usize,
    #[command(flatten)]
    pub output: Output,
    #[command(flatten)]
    pub remote: Remote,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = doubletip_server::DEFAULT_PORT)]
    pub port: u16,
    /// Address to bind. Loopback unless asked otherwise.
    #[arg(long, default_value = "127.0.0.1")]
    pub host: std::net::IpAddr,
    /// Homotopy for requests that do not name one.
    #[arg(long, default_value = "D", value_parser = parse_kind)]
    pub kind: HomotopyKind,
}

fn parse_kind(s: &str) -> Result<HomotopyKind, String> {
    s.parse().map_err(|e: doubletip_core::Error| e.to_string())
}

fn parse_landmark(s: &str) -> Result<Landmark, String> {
    s.parse().map_err(|e: doubletip_core::Error| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selected {
    All,
    One(CheckName),
}

impl VerifyArgs {
    /// Selected checks, deduplicated, in the fixed report order.
    pub fn selection(&self) -> Vec<CheckName> {
        CheckName::ALL
            .into_iter()
            .filter(|c| self.checks.iter().any(|s| *s == Selected::All || *s == Selected::One(*c)))
            .collect()
    }
}

fn parse_selection(s: &str) -> Result<Selected, String> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(Selected::All);
    }
    s.parse().map(Selected::One).map_err(|e: doubletip_core::Error| e.to_string())
}
