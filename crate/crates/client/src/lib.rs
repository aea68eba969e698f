//! Async client for the doubletip HTTP service.

use doubletip_core::analysis::{Contrail, HingeFiberSample, Landmark};
use doubletip_core::export::{FramePose, MovieGrid, PhiThetaSurface};
use doubletip_core::{HomotopyKind, Vec3};
use serde::de::DeserializeOwned;
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum ClientError {
    #[error("request failed: {0}")]
    Transport(#[from] reqwest::Error),
    #[error("server returned {status}: {message}")]
    Api { status: u16, error: String, message: String },
}

pub type Result<T> = std::result::Result<T, ClientError>;

#[derive(Deserialize)]
struct ErrorBody {
    error: String,
    message: String,
}

#[derive(Debug, Clone)]
pub struct Client {
    base: String,
    http: reqwest::Client,
}

impl Client {
    /// `base` is the service root, e.g. `http://127.0.0.1:8707`.
    pub fn new(base: impl Into<String>) -> Self {
        Self::with_http(base, reqwest::Client::new())
    }

    pub fn with_http(base: impl Into<String>, http: reqwest::Client) -> Self {
        let base = base.into().trim_end_matches('/').to_owned();
        Self { base, http }
    }

    pub fn base_url(&self) -> &str {
        &self.base
    }

    async fn get<T: DeserializeOwned>(&self, path: &str, query: &[(&str, String)]) -> Result<T> {
        let res = self.http.get(format!("{}{path}", self.base)).query(query).send().await?;
        let status = res.status();
        if status.is_success() {
            return Ok(res.json().await?);
        }
        let text = res.text().await?;
        let (error, message) = match serde_json::from_str::<ErrorBody>(&text) {
            Ok(b) => (b.error, b.message),
            Err(_) => (String::new(), text),
        };
        Err(ClientError::Api { status: status.as_u16(), error, message })
    }

    pub async fn health(&self) -> Result<()> {
        self.get::<serde_json::Value>("/health", &[]).await.map(|_| ())
    }

    pub async fn frame(&self, kind: HomotopyKind, s: f64, t: f64) -> Result<FramePose> {
        self.get("/frame", &[("kind", kind.to_string()), ("s", num(s)), ("t", num(t))]).await
    }

    pub async fn contrail(&self, kind: HomotopyKind, landmark: Landmark, s: f64, n: usize) -> Result<Contrail> {
        let q = [("kind", kind.to_string()), ("landmark", landmark.to_string()), ("s", num(s)), ("n", n.to_string())];
        self.get("/contrail", &q).await
    }

    pub async fn grid(&self, kind: HomotopyKind, ns: usize, nt: usize) -> Result<MovieGrid> {
        self.get("/grid", &[("kind", kind.to_string()), ("ns", ns.to_string()), ("nt", nt.to_string())]).await
    }

    pub async fn phi_theta(&self, ns: usize, nt: usize) -> Result<PhiThetaSurface> {
        self.get("/phi-theta", &[("ns", ns.to_string()), ("nt", nt.to_string())]).await
    }

    pub async fn hinge(&self, v: Vec3, n: usize) -> Result<HingeFiberSample> {
        let q = [("vx", num(v.x)), ("vy", num(v.y)), ("vz", num(v.z)), ("n", n.to_string())];
        self.get("/hinge", &q).await
    }
}

/// Shortest decimal that parses back to the same `f64`.
fn num(x: f64) -> String {
    format!("{x:?}")
}

pub use doubletip_core;
