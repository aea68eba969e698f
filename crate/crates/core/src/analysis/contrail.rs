use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::Landmark;
use crate::error::{invalid, Result};
use crate::homotopy::{HomotopyKind, HomotopyParams};
use crate::vec3::Vec3;

/// Path of one landmark over a full movie at fixed `s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contrail {
    pub landmark: Landmark,
    pub s: f64,
    /// `points[i]` is the landmark at `t = 2πi/(n−1)`.
    pub points: Vec<Vec3>,
}

pub fn contrail(landmark: Landmark, s: f64, nt: usize) -> Result<Contrail> {
    contrail_of(HomotopyKind::DoubleTip, landmark, s, nt)
}

pub fn contrail_of(kind: HomotopyKind, landmark: Landmark, s: f64, nt: usize) -> Result<Contrail> {
    if nt < 2 {
        return Err(invalid(format!("contrail needs nt ≥ 2 (got {nt})")));
    }
    let s = HomotopyParams::new(s, 0.0)?.s;
    let v = landmark.vector();
    let d = (nt - 1) as f64;
    let points = (0..nt).map(|i| kind.lift_at(s, TAU * (i as f64 / d)).rotate(v)).collect();
    Ok(Contrail { landmark, s, points })
}

/// Times at which the landmark passes through its own antipode.
///
/// A visit starts when the angle to the antipode drops below `tol` and ends
/// once it climbs back above `2·tol`; the reported time is where the angle
/// is smallest during the visit.
pub fn antipode_visit_times(landmark: Landmark, s: f64, nt: usize, tol: f64) -> Result<Vec<f64>> {
    if nt < 64 {
        return Err(invalid(format!("antipode visits need nt ≥ 64 (got {nt})")));
    }
    let c = contrail(landmark, s, nt)?;
    let target = -landmark.vector();
    let d = (nt - 1) as f64;
    let mut times = Vec::new();
    let mut inside: Option<(f64, f64)> = None;
    for (i, p) in c.points.iter().enumerate() {
        let a = p.angle_to(target);
        let t = TAU * (i as f64 / d);
        inside = match inside {
            None if a < tol => Some((a, t)),
            None => None,
            Some(_) if a > 2.0 * tol => {
                times.push(inside.unwrap().1);
                None
            }
            Some((best, _)) if a < best => Some((a, t)),
            keep => keep,
        };
    }
    if let Some((_, t)) = inside {
        times.push(t);
    }
    Ok(times)
}

pub fn antipode_visits(landmark: Landmark, s: f64, nt: usize, tol: f64) -> Result<usize> {
    Ok(antipode_visit_times(landmark, s, nt, tol)?.len())
}
