use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::hinge;
use crate::error::{invalid, Result};
use crate::quaternion::UnitQuaternion;
use crate::vec3::Vec3;

/// Below this `|v.y|` the hinge point coincides with `v`.
const DEGENERATE_Y: f64 = 1e-12;

/// Rotations in `P` carrying `v` to its hinge point, in order along the fiber.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HingeFiberSample {
    pub v: Vec3,
    pub hinge: Vec3,
    /// Axial angle `φ` of each rotation's axis `(cos φ, 0, sin φ)`, or the
    /// rotation angle about `v` when `degenerate`.
    pub params: Vec<f64>,
    pub rotations: Vec<UnitQuaternion>,
    /// `v` lies in the x-z plane, so the hinge point is `v` itself and the
    /// fiber is the circle of rotations about `v`.
    pub degenerate: bool,
}

/// The rotation about `(cos φ, 0, sin φ)` carrying `v` to `hinge(v)`.
pub fn fiber_rotation(v: Vec3, phi: f64) -> Result<UnitQuaternion> {
    let v = v.require_unit("v")?;
    let a = Vec3::new(phi.cos(), 0.0, phi.sin());
    let vh = hinge(v);
    let p = v - a * a.dot(v);
    let ph = vh - a * a.dot(vh);
    let gamma = a.dot(p.cross(ph)).atan2(p.dot(ph));
    UnitQuaternion::from_axis_angle(a, gamma)
}

/// Samples the circle of rotations in `P` that carry `v` to `hinge(v)`.
///
/// Axes sweep `φ` over `[0, π]` with both ends included, spaced so that
/// consecutive rotations are equally far apart. Consecutive lifts are kept
/// on the same sheet, so the first and last lifts come out as negatives of
/// each other.
pub fn hinge_fiber(v: Vec3, n: usize) -> Result<HingeFiberSample> {
    let v = v.require_unit("v")?;
    if n < 3 {
        return Err(invalid(format!("hinge fiber needs n ≥ 3 (got {n})")));
    }
    let d = (n - 1) as f64;
    let degenerate = v.y.abs() <= DEGENERATE_Y;
    let params = if degenerate {
        (0..n).map(|k| TAU * (k as f64 / d)).collect()
    } else {
        arc_length_angles(v, n)?
    };
    let mut rotations: Vec<UnitQuaternion> = Vec::with_capacity(n);
    for &p in &params {
        let q = if degenerate { UnitQuaternion::from_axis_angle(v, p)? } else { fiber_rotation(v, p)? };
        let q = match rotations.last() {
            Some(prev) if prev.get().dot(q.get()) < 0.0 => -q,
            _ => q,
        };
        rotations.push(q);
    }
    Ok(HingeFiberSample { v, hinge: hinge(v), params, rotations, degenerate })
}

const FINE: usize = 32;

/// `n` axial angles from `0` to `π` at equal rotation-distance steps along
/// the fiber, read off a finely sampled cumulative length.
fn arc_length_angles(v: Vec3, n: usize) -> Result<Vec<f64>> {
    let m = FINE * n;
    let phis: Vec<f64> = (0..=m).map(|k| PI * (k as f64 / m as f64)).collect();
    let mut cum = vec![0.0; m + 1];
    let mut prev = fiber_rotation(v, 0.0)?;
    for k in 1..=m {
        let q = fiber_rotation(v, phis[k])?;
        cum[k] = cum[k - 1] + prev.rotation_distance(q);
        prev = q;
    }
    let total = cum[m];
    let mut out = Vec::with_capacity(n);
    let mut seg = 0;
    for k in 0..n {
        if k == 0 || k == n - 1 {
            out.push(if k == 0 { 0.0 } else { PI });
            continue;
        }
        let target = total * (k as f64 / (n - 1) as f64);
        while cum[seg + 1] < target {
            seg += 1;
        }
        let span = cum[seg + 1] - cum[seg];
        let f = if span > 0.0 { (target - cum[seg]) / span } else { 0.0 };
        out.push(phis[seg] + f * (phis[seg + 1] - phis[seg]));
    }
    Ok(out)
}
