//! Stateless HTTP/JSON backend for viewers of the double-tipping
//! nullhomotopy. Every endpoint is a GET whose response depends only on its
//! query string.

use std::future::Future;
use std::net::SocketAddr;

use axum::extract::rejection::QueryRejection;
use axum::extract::{Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use doubletip_core::analysis::{self, GridSpec, Landmark};
use doubletip_core::export::{FramePose, MovieGrid, PhiThetaSurface};
use doubletip_core::{Error, HomotopyKind, HomotopyParams, Vec3};
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;

pub const DEFAULT_PORT: u16 = 8707;

#[derive(Debug, Clone, Copy)]
pub struct ServerConfig {
    /// Homotopy used when a request has no `kind`.
    pub default_kind: HomotopyKind,
    /// Largest `ns·nt` accepted by `/grid` and `/phi-theta`.
    pub max_grid_cells: usize,
    /// Largest `n` accepted by `/contrail` and `/hinge`.
    pub max_samples: usize,
}

impl Default for ServerConfig {
    fn default() -> Self {
        Self { default_kind: HomotopyKind::DoubleTip, max_grid_cells: 1 << 16, max_samples: 1 << 16 }
    }
}

/// Error body: `{"error": "...", "message": "..."}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApiError {
    pub error: String,
    pub message: String,
    #[serde(skip)]
    status: u16,
}

impl ApiError {
    fn new(status: StatusCode, error: &str, message: impl Into<String>) -> Self {
        Self { error: error.into(), message: message.into(), status: status.as_u16() }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "invalid-input", message)
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let (status, tag) = match &e {
            Error::InvalidInput(_) => (StatusCode::BAD_REQUEST, "invalid-input"),
            Error::UndefinedAxis { .. } => (StatusCode::BAD_REQUEST, "undefined-axis"),
            Error::EdgeDegenerate(_) => (StatusCode::BAD_REQUEST, "edge-degenerate"),
            Error::HingeDegeneracy { .. } => (StatusCode::BAD_REQUEST, "hinge-degeneracy"),
            Error::NotFound(_) => (StatusCode::NOT_FOUND, "not-found"),
            Error::Resource(_) => (StatusCode::PAYLOAD_TOO_LARGE, "resource"),
        };
        Self::new(status, tag, e.to_string())
    }
}

impl From<QueryRejection> for ApiError {
    fn from(r: QueryRejection) -> Self {
        Self::bad_request(r.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::BAD_REQUEST);
        (status, json_body(&self)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

fn json_body<T: Serialize>(value: &T) -> Response {
    match serde_json::to_vec(value) {
        Ok(bytes) => ([(header::CONTENT_TYPE, "application/json")], bytes).into_response(),
        Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
    }
}

async fn blocking<T, F>(f: F) -> ApiResult<T>
where
    F: FnOnce() -> Result<T, Error> + Send + 'static,
    T: Send + 'static,
{
    match tokio::task::spawn_blocking(f).await {
        Ok(r) => r.map_err(ApiError::from),
        Err(e) => Err(ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string())),
    }
}

fn kind_or(kind: Option<String>, cfg: &ServerConfig) -> ApiResult<HomotopyKind> {
    kind.map_or(Ok(cfg.default_kind), |k| k.parse().map_err(ApiError::from))
}

#[derive(Debug, Deserialize)]
pub struct FrameQuery {
    pub kind: Option<String>,
    pub s: f64,
    pub t: f64,
}

#[derive(Debug, Deserialize)]
pub struct ContrailQuery {
    pub kind: Option<String>,
    pub landmark: String,
    pub s: f64,
    pub n: Option<usize>,
}

#[derive(Debug, Deserialize)]
pub struct GridQuery {
    pub kind: Option<String>,
    pub ns: Option<usize>,
    pub nt: Option<usize>,
}

#[derive(Debug, Deserialize)]
pub struct SurfaceQuery {
    pub ns: Option<usize>,
    pub nt: Option<usize>,
    pub format: Option<String>,
}

#[derive(Debug, Deserialize)]
pub struct HingeQuery {
    pub vx: f64,
    pub vy: f64,
    pub vz: f64,
    pub n: Option<usize>,
}

/// Query strings carry rounded decimals, so `s = 1.5708` has to mean the
/// `π/2` edge. Values this close outside the rectangle are pulled onto it.
const PARAM_SLACK: f64 = 1e-4;

fn snap(v: f64, max: f64) -> f64 {
    if (-PARAM_SLACK..0.0).contains(&v) {
        0.0
    } else if v > max && v <= max + PARAM_SLACK {
        max
    } else {
        v
    }
}

fn snap_s(s: f64) -> f64 {
    snap(s, HomotopyParams::S_MAX)
}

fn snap_t(t: f64) -> f64 {
    snap(t, HomotopyParams::T_MAX)
}

const DEFAULT_CONTRAIL_SAMPLES: usize = 256;
const DEFAULT_FIBER_SAMPLES: usize = 64;
const DEFAULT_SURFACE_SIZE: usize = 65;

async fn frame(State(cfg): State<ServerConfig>, q: Result<Query<FrameQuery>, QueryRejection>) -> ApiResult<Response> {
    let Query(q) = q?;
    let kind = kind_or(q.kind, &cfg)?;
    Ok(json_body(&FramePose::new(kind, snap_s(q.s), snap_t(q.t))?))
}

async fn contrail(State(cfg): State<ServerConfig>, q: Result<Query<ContrailQuery>, QueryRejection>) -> ApiResult<Response> {
    let Query(q) = q?;
    let kind = kind_or(q.kind, &cfg)?;
    let landmark: Landmark = q.landmark.parse()?;
    let n = q.n.unwrap_or(DEFAULT_CONTRAIL_SAMPLES);
    if n > cfg.max_samples {
        return Err(Error::Resource(format!("n = {n} exceeds {}", cfg.max_samples)).into());
    }
    let c = blocking(move || analysis::contrail_of(kind, landmark, snap_s(q.s), n)).await?;
    Ok(json_body(&c))
}

fn grid_size(ns: Option<usize>, nt: Option<usize>, default: usize, cfg: &ServerConfig) -> ApiResult<(usize, usize)> {
    let (ns, nt) = (ns.unwrap_or(default), nt.unwrap_or(default));
    GridSpec::with_cap(ns, nt, true, cfg.max_grid_cells)?;
    Ok((ns, nt))
}

async fn grid(State(cfg): State<ServerConfig>, q: Result<Query<GridQuery>, QueryRejection>) -> ApiResult<Response> {
    let Query(q) = q?;
    let kind = kind_or(q.kind, &cfg)?;
    let (ns, nt) = grid_size(q.ns, q.nt, doubletip_core::export::DEFAULT_MOVIE_SIZE, &cfg)?;
    let g = blocking(move || MovieGrid::new(kind, ns, nt)).await?;
    Ok(json_body(&g))
}

async fn phi_theta(State(cfg): State<ServerConfig>, q: Result<Query<SurfaceQuery>, QueryRejection>) -> ApiResult<Response> {
    let Query(q) = q?;
    let (ns, nt) = grid_size(q.ns, q.nt, DEFAULT_SURFACE_SIZE, &cfg)?;
    let surface = blocking(move || PhiThetaSurface::new(ns, nt)).await?;
    match q.format.as_deref() {
        None | Some("json") => Ok(json_body(&surface)),
        Some("csv") => Ok(([(header::CONTENT_TYPE, "text/csv")], surface.to_csv()).into_response()),
        Some(other) => Err(ApiError::bad_request(format!("unknown format {other:?}; expected json or csv"))),
    }
}

async fn hinge(State(cfg): State<ServerConfig>, q: Result<Query<HingeQuery>, QueryRejection>) -> ApiResult<Response> {
    let Query(q) = q?;
    // Query strings carry rounded decimals, so accept any nonzero vector.
    let v = Vec3::new(q.vx, q.vy, q.vz)
        .normalized()
        .ok_or_else(|| ApiError::bad_request("v must be a nonzero finite vector"))?;
    let n = q.n.unwrap_or(DEFAULT_FIBER_SAMPLES);
    if n > cfg.max_samples {
        return Err(Error::Resource(format!("n = {n} exceeds {}", cfg.max_samples)).into());
    }
    let fiber = blocking(move || analysis::hinge_fiber(v, n)).await?;
    Ok(json_body(&fiber))
}

async fn health() -> Response {
    json_body(&serde_json::json!({ "status": "ok" }))
}

pub fn router(config: ServerConfig) -> Router {
    Router::new()
        .route("/frame", get(frame))
        .route("/contrail", get(contrail))
        .route("/grid", get(grid))
        .route("/phi-theta", get(phi_theta))
        .route("/hinge", get(hinge))
        .route("/health", get(health))
        .with_state(config)
}

/// Serves on `listener` until `shutdown` resolves.
pub async fn serve<F>(listener: TcpListener, config: ServerConfig, shutdown: F) -> std::io::Result<()>
where
    F: Future<Output = ()> + Send + 'static,
{
    if let Ok(addr) = listener.local_addr() {
        tracing::info!(%addr, kind = %config.default_kind, "serving");
    }
    axum::serve(listener, router(config)).with_graceful_shutdown(shutdown).await
}

pub fn loopback(port: u16) -> SocketAddr {
    SocketAddr::from(([127, 0, 0, 1], port))
}
