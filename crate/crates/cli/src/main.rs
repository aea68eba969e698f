mod args;

use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use doubletip_client::Client;
use doubletip_core::analysis::{self, GridSpec, Landmark};
use doubletip_core::checks::{self, CheckOptions};
use doubletip_core::export::{self, MovieGrid, PhiThetaSurface};
use doubletip_core::HomotopyKind;
use serde::Serialize;

use args::{Cli, Command, Format, Output};

const EXIT_FAILED_CHECK: u8 = 1;
const EXIT_ERROR: u8 = 3;
/// Size of the grid bundled with viewers.
const SAMPLE_SIZE: usize = 65;

fn main() -> ExitCode {
    let cli = Cli::parse();
    tracing_subscriber::fmt()
        .with_writer(io::stderr)
        .with_ansi(io::stderr().is_terminal())
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env()
                .unwrap_or_else(|_| tracing_subscriber::EnvFilter::new("info")),
        )
        .init();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let deg = cli.degrees;
    match cli.command {
        Command::Sample(a) => movie(a, SAMPLE_SIZE, deg),
        Command::Frames(a) => movie(a, export::DEFAULT_MOVIE_SIZE, deg),
        Command::Verify(a) => verify(a, deg),
        Command::Contrail(a) => {
            let c = match a.remote.remote {
                Some(url) => block_on(Client::new(url).contrail(a.kind, a.landmark, a.s, a.nt))??,
                None => analysis::contrail_of(a.kind, a.landmark, a.s, a.nt)?,
            };
            let visits = (a.kind == HomotopyKind::DoubleTip && c.landmark != Landmark::Fingers && a.nt >= 64)
                .then(|| analysis::antipode_visits(a.landmark, c.s, a.nt, checks::VISIT_TOL))
                .transpose()?;
            tracing::info!(landmark = %c.landmark, s = %angle(c.s, deg), points = c.points.len(), ?visits, "contrail");
            write_json(&a.output, &c)
        }
        Command::Hemiviews(a) => {
            let views = analysis::hemisphere_views(GridSpec::closed(a.ns, a.nt)?);
            write_json(&a.output, &views)
        }
        Command::PhiTheta(a) => {
            let surface = match a.remote.remote {
                Some(url) => block_on(Client::new(url).phi_theta(a.ns, a.nt))??,
                None => PhiThetaSurface::new(a.ns, a.nt)?,
            };
            match a.format {
                Format::Json => write_json(&a.output, &surface),
                Format::Csv => write_text(&a.output, &surface.to_csv()),
            }
        }
        Command::Compare(a) => {
            let cmp = match a.remote.remote {
                Some(url) => {
                    let client = Client::new(url);
                    block_on(async {
                        Ok::<_, doubletip_client::ClientError>(export::Comparison {
                            double_tip: client.grid(HomotopyKind::DoubleTip, a.ns, a.nt).await?,
                            fk: client.grid(HomotopyKind::Fk, a.ns, a.nt).await?,
                        })
                    })??
                }
                None => export::compare(a.ns, a.nt)?,
            };
            let off_plane = cmp.fk.poses.iter().filter(|p| p.quaternion[2].abs() > 1e-12).count();
            tracing::info!(poses = cmp.double_tip.poses.len(), fk_off_plane = off_plane, "compare");
            write_json(&a.output, &cmp)
        }
        Command::Serve(a) => {
            let config = doubletip_server::ServerConfig { default_kind: a.kind, ..Default::default() };
            let addr = std::net::SocketAddr::new(a.host, a.port);
            block_on(async move {
                let listener = tokio::net::TcpListener::bind(addr)
                    .await
                    .with_context(|| format!("cannot bind {addr}"))?;
                let stop = async {
                    let _ = tokio::signal::ctrl_c().await;
                };
                doubletip_server::serve(listener, config, stop).await?;
                Ok::<_, anyhow::Error>(())
            })??;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn movie(a: args::GridArgs, size: usize, deg: bool) -> Result<ExitCode> {
    let (kind, ns, nt) = (a.kind, a.ns.unwrap_or(size), a.nt.unwrap_or(size));
    if ns < 2 || nt < 2 {
        bail!("ns and nt must be at least 2 (got {ns} × {nt})");
    }
    let grid = match a.remote.remote {
        Some(url) => block_on(Client::new(url).grid(kind, ns, nt))??,
        None => MovieGrid::new(kind, ns, nt)?,
    };
    if let Some(c) = grid.pose(ns / 2, nt / 2) {
        tracing::info!(kind = %kind, poses = grid.poses.len(), center_angle = %angle(c.angle, deg), "grid");
    }
    write_json(&a.output, &grid)
}

fn verify(a: args::VerifyArgs, deg: bool) -> Result<ExitCode> {
    let names = a.selection();
    if a.tol.is_some() && names.len() != 1 {
        bail!("--tol applies to a single named check");
    }
    let opts = CheckOptions { kind: a.kind, seed: a.seed, tol: a.tol };
    let mut reports = Vec::with_capacity(names.len());
    for name in names {
        let start = std::time::Instant::now();
        let r = checks::run_check(name, &opts)?;
        let metric = if angular(name) { angle(r.metric, deg) } else { format!("{}", r.metric) };
        tracing::info!(
            check = %name,
            passed = r.passed,
            metric = %metric,
            secs = format!("{:.2}", start.elapsed().as_secs_f64()),
            "verify"
        );
        reports.push(r);
    }
    let all = reports.iter().all(|r| r.passed);
    write_json(&a.output, &reports)?;
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAILED_CHECK) })
}

fn angular(name: checks::CheckName) -> bool {
    use checks::CheckName::*;
    matches!(name, Surjective | EveryWhichWay | CandleOnce)
}

fn angle(x: f64, degrees: bool) -> String {
    if degrees {
        format!("{:.6}°", x.to_degrees())
    } else {
        format!("{x:.9} rad")
    }
}

fn block_on<F: std::future::Future>(f: F) -> Result<F::Output> {
    let rt = tokio::runtime::Runtime::new().context("cannot start async runtime")?;
    Ok(rt.block_on(f))
}

fn write_json<T: Serialize>(out: &Output, value: &T) -> Result<ExitCode> {
    let mut text = serde_json::to_string(value)?;
    text.push('\n');
    write_text(out, &text)
}

fn write_text(out: &Output, text: &str) -> Result<ExitCode> {
    match out.out.as_deref() {
        Some(p) if p != Path::new("-") => {
            fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?;
            tracing::debug!(path = %p.display(), bytes = text.len(), "wrote");
        }
        _ => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}
