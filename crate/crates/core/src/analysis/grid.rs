use std::f64::consts::{FRAC_PI_2, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::homotopy::HomotopyKind;
use crate::quaternion::UnitQuaternion;

/// Sampling of the homotopy rectangle.
///
/// With `include_edges` the samples run over the closed rectangle, endpoints
/// included. Without, they are the `ns × nt` points strictly inside it,
/// evenly spaced as if the edges were the missing end samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub ns: usize,
    pub nt: usize,
    pub include_edges: bool,
}

impl GridSpec {
    pub const DEFAULT_CAP: usize = 16_777_216;

    pub fn new(ns: usize, nt: usize, include_edges: bool) -> Result<Self> {
        Self::with_cap(ns, nt, include_edges, Self::DEFAULT_CAP)
    }

    pub fn with_cap(ns: usize, nt: usize, include_edges: bool, cap: usize) -> Result<Self> {
        if ns < 2 || nt < 2 {
            return Err(invalid(format!("grid needs ns, nt ≥ 2 (got {ns} × {nt})")));
        }
        match ns.checked_mul(nt) {
            Some(n) if n <= cap => Ok(Self { ns, nt, include_edges }),
            _ => Err(Error::Resource(format!("{ns} × {nt} grid exceeds the cap of {cap} cells"))),
        }
    }

    pub fn closed(ns: usize, nt: usize) -> Result<Self> {
        Self::new(ns, nt, true)
    }

    pub fn interior(ns: usize, nt: usize) -> Result<Self> {
        Self::new(ns, nt, false)
    }

    pub fn len(&self) -> usize {
        self.ns * self.nt
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn s_values(&self) -> Vec<f64> {
        axis_values(self.ns, FRAC_PI_2, self.include_edges)
    }

    pub fn t_values(&self) -> Vec<f64> {
        axis_values(self.nt, TAU, self.include_edges)
    }

    /// Cell index for `(i_s, i_t)`; rows run over `s`.
    pub(crate) fn index(&self, i: usize, j: usize) -> usize {
        i * self.nt + j
    }

    /// Lifts of `kind` at every sample, indexed by [`GridSpec::index`].
    pub(crate) fn lifts(&self, kind: HomotopyKind) -> Vec<UnitQuaternion> {
        let (ss, ts) = (self.s_values(), self.t_values());
        ss.par_iter()
            .flat_map_iter(|&s| ts.iter().map(move |&t| kind.lift_at(s, t)))
            .collect()
    }

    /// 8-neighbours of cell `(i, j)` inside the grid.
    pub(crate) fn neighbours(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let (ns, nt) = (self.ns as isize, self.nt as isize);
        (-1isize..=1)
            .flat_map(|di| (-1isize..=1).map(move |dj| (di, dj)))
            .filter(|&d| d != (0, 0))
            .filter_map(move |(di, dj)| {
                let (a, b) = (i as isize + di, j as isize + dj);
                (a >= 0 && a < ns && b >= 0 && b < nt).then_some((a as usize, b as usize))
            })
    }
}

fn axis_values(n: usize, max: f64, closed: bool) -> Vec<f64> {
    if closed {
        let d = (n - 1) as f64;
        (0..n).map(|i| max * (i as f64 / d)).collect()
    } else {
        let d = (n + 1) as f64;
        (1..=n).map(|i| max * (i as f64 / d)).collect()
    }
}
