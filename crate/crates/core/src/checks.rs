//! The named numerical checks run by `doubletip verify`, with the grid sizes
//! and tolerances each one is held to.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::{self, hinge, GridSpec, Landmark, VerificationReport};
use crate::error::{invalid, Error, Result};
use crate::homotopy::HomotopyKind;
use crate::sampling;
use crate::vec3::Vec3;

pub const IN_P_GRID: usize = 257;
pub const INJECTIVE_GRID: usize = 201;
pub const INJECTIVE_TOL: f64 = 1e-4;
pub const SURJECTIVE_GRID: usize = 512;
pub const SURJECTIVE_TARGETS: usize = 1000;
pub const SURJECTIVE_TOL: f64 = 0.05;
pub const DEGREE_PAIRS: usize = 50;
pub const DEGREE_GRID: usize = 513;
pub const DEGREE_TOL: f64 = 0.03;
pub const HINGE_CONE: f64 = 0.05;
pub const EVERY_WHICH_WAY_POINTS: usize = 12;
pub const EVERY_WHICH_WAY_TOL: f64 = 1e-3;
pub const VISIT_SAMPLES: usize = 4097;
pub const VISIT_TOL: f64 = 0.01;
pub const CENTER_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    InP,
    Injective,
    Surjective,
    Degree,
    EveryWhichWay,
    ThumbCounts,
    CandleOnce,
}

impl CheckName {
    pub const ALL: [CheckName; 7] = [
        CheckName::InP,
        CheckName::Injective,
        CheckName::Surjective,
        CheckName::Degree,
        CheckName::EveryWhichWay,
        CheckName::ThumbCounts,
        CheckName::CandleOnce,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::InP => "in-p",
            CheckName::Injective => "injective",
            CheckName::Surjective => "surjective",
            CheckName::Degree => "degree",
            CheckName::EveryWhichWay => "every-which-way",
            CheckName::ThumbCounts => "thumb-counts",
            CheckName::CandleOnce => "candle-once",
        }
    }

    /// Parses a check name, or `all` for every check in order.
    pub fn parse_selection(s: &str) -> Result<Vec<CheckName>> {
        if s.eq_ignore_ascii_case("all") {
            Ok(Self::ALL.to_vec())
        } else {
            Ok(vec![s.parse()?])
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<&str> = Self::ALL.iter().map(|c| c.as_str()).collect();
                invalid(format!("unknown check {s:?}; expected one of {} or all", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckOptions {
    /// Homotopy scanned by `in-p`; the other checks fix their own.
    pub kind: HomotopyKind,
    pub seed: u64,
    /// Replaces the check's default tolerance.
    pub tol: Option<f64>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { kind: HomotopyKind::DoubleTip, seed: 42, tol: None }
    }
}

pub fn run_check(name: CheckName, opts: &CheckOptions) -> Result<VerificationReport> {
    let tol = |d: f64| opts.tol.unwrap_or(d);
    match name {
        CheckName::InP => {
            let mut r = analysis::verify_in_p(opts.kind, GridSpec::closed(IN_P_GRID, IN_P_GRID)?);
            if let Some(t) = opts.tol {
                r.passed = r.metric <= t;
                r.tolerance = t;
            }
            Ok(r)
        }
        CheckName::Injective => {
            analysis::verify_injectivity(GridSpec::interior(INJECTIVE_GRID, INJECTIVE_GRID)?, tol(INJECTIVE_TOL))
        }
        CheckName::Surjective => Ok(analysis::verify_surjectivity(
            GridSpec::closed(SURJECTIVE_GRID, SURJECTIVE_GRID)?,
            SURJECTIVE_TARGETS,
            tol(SURJECTIVE_TOL),
            opts.seed,
        )),
        CheckName::Degree => degree(opts.seed, tol(DEGREE_TOL)),
        CheckName::EveryWhichWay => every_which_way(tol(EVERY_WHICH_WAY_TOL)),
        CheckName::ThumbCounts => thumb_counts(tol(VISIT_TOL)),
        CheckName::CandleOnce => candle_once(tol(VISIT_TOL)),
    }
}

pub fn run_checks(names: &[CheckName], opts: &CheckOptions) -> Result<Vec<VerificationReport>> {
    names.iter().map(|&n| run_check(n, opts)).collect()
}

/// Seeded `(v, w)` pairs with `w` kept out of the cone around `hinge(v)`.
pub fn degree_pairs(seed: u64, n: usize) -> Vec<(Vec3, Vec3)> {
    let mut rng = sampling::seeded(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v = sampling::random_unit_vector(&mut rng);
        let w = sampling::random_unit_vector(&mut rng);
        if w.angle_to(hinge(v)) > HINGE_CONE {
            out.push((v, w));
        }
    }
    out
}

fn degree(seed: u64, tol: f64) -> Result<VerificationReport> {
    let grid = GridSpec::closed(DEGREE_GRID, DEGREE_GRID)?;
    let mut counts = Vec::with_capacity(DEGREE_PAIRS);
    let mut bad = Vec::new();
    for (v, w) in degree_pairs(seed, DEGREE_PAIRS) {
        let c = analysis::preimage_clusters(v, w, grid, tol)?;
        if c.count() != 1 {
            bad.push((v, w, c));
        }
        counts.push(c.count());
    }
    Ok(VerificationReport::new("degree", bad.is_empty(), bad.len() as f64, 0.0)
        .with("seed", seed)
        .with("pairs", DEGREE_PAIRS)
        .with("grid", grid)
        .with("cluster_tol", tol)
        .with("hinge_cone", HINGE_CONE)
        .with("counts", counts)
        .with("failures", bad))
}

fn every_which_way(tol: f64) -> Result<VerificationReport> {
    let pts = sampling::fibonacci_sphere(EVERY_WHICH_WAY_POINTS);
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    let mut solved = 0usize;
    for kind in HomotopyKind::ALL {
        for &v in &pts {
            for &w in &pts {
                match analysis::solve_every_which_way(kind, v, w, tol) {
                    Ok(sol) => {
                        worst = worst.max(sol.residual);
                        solved += 1;
                    }
                    Err(Error::NotFound(msg)) => failures.push((kind, v, w, msg)),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    let metric = if failures.is_empty() { worst } else { f64::INFINITY };
    Ok(VerificationReport::new("every-which-way", failures.is_empty(), metric, tol)
        .with("points", EVERY_WHICH_WAY_POINTS)
        .with("solved", solved)
        .with("failures", failures))
}

fn visit_s_values() -> Vec<f64> {
    (0..=8).map(|k| PI * k as f64 / 16.0).collect()
}

fn thumb_counts(tol: f64) -> Result<VerificationReport> {
    let mut rows = Vec::new();
    let mut mismatches = 0;
    for (k, s) in visit_s_values().into_iter().enumerate() {
        let expected = match k.cmp(&4) {
            std::cmp::Ordering::Less => 2,
            std::cmp::Ordering::Equal => 1,
            std::cmp::Ordering::Greater => 0,
        };
        let got = analysis::antipode_visits(Landmark::Thumb, s, VISIT_SAMPLES, tol)?;
        mismatches += usize::from(got != expected);
        rows.push(serde_json::json!({ "s": s, "visits": got, "expected": expected }));
    }
    Ok(VerificationReport::new("thumb-counts", mismatches == 0, mismatches as f64, 0.0)
        .with("samples", VISIT_SAMPLES)
        .with("cone", tol)
        .with("counts", rows))
}

fn candle_once(tol: f64) -> Result<VerificationReport> {
    let mut rows = Vec::new();
    let mut mismatches = 0;
    for (k, s) in visit_s_values().into_iter().enumerate() {
        let expected = usize::from(k == 4);
        let times = analysis::antipode_visit_times(Landmark::Candle, s, VISIT_SAMPLES, tol)?;
        mismatches += usize::from(times.len() != expected);
        rows.push(serde_json::json!({ "s": s, "visits": times.len(), "t": times, "expected": expected }));
    }
    let sol = analysis::solve_every_which_way(HomotopyKind::DoubleTip, Vec3::Z, -Vec3::Z, EVERY_WHICH_WAY_TOL)?;
    let off = (sol.s - FRAC_PI_4).abs().max((sol.t - PI).abs());
    let passed = mismatches == 0 && off <= CENTER_TOL;
    Ok(VerificationReport::new("candle-once", passed, off, CENTER_TOL)
        .with("s", sol.s)
        .with("t", sol.t)
        .with("residual", sol.residual)
        .with("count_mismatches", mismatches)
        .with("counts", rows))
}
