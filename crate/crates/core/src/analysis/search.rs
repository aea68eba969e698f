use std::f64::consts::{FRAC_PI_2, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::GridSpec;
use crate::error::{invalid, Error, Result};
use crate::homotopy::HomotopyKind;
use crate::quaternion::UnitQuaternion;
use crate::vec3::Vec3;

/// Parameters found by a search, with the residual achieved there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub s: f64,
    pub t: f64,
    pub residual: f64,
}

const COARSE: usize = 128;
const SEEDS: usize = 8;
const WINDOW: usize = 17;
const PASSES: usize = 3;
const ZOOM: f64 = 4.0;
const LEVELS: usize = 12;

/// Finds `(s, t)` in the closed rectangle with `H(s,t)(v)` within `tol` of `w`.
///
/// A coarse scan picks the best few local minima, and each is refined by
/// resampling a shrinking window around the current best point.
pub fn solve_every_which_way(kind: HomotopyKind, v: Vec3, w: Vec3, tol: f64) -> Result<Solution> {
    let v = v.require_unit("v")?;
    let w = w.require_unit("w")?;
    let f = |s: f64, t: f64| kind.lift_at(s, t).rotate(v).angle_to(w);

    let grid = GridSpec::closed(COARSE, COARSE)?;
    let (ss, ts) = (grid.s_values(), grid.t_values());
    let res: Vec<f64> = ss
        .par_iter()
        .flat_map_iter(|&s| ts.iter().map(move |&t| f(s, t)))
        .collect();

    let mut best = 0;
    for k in 1..res.len() {
        if res[k] < res[best] {
            best = k;
        }
    }
    let mut seeds: Vec<usize> = (0..res.len())
        .filter(|&k| {
            let (i, j) = (k / COARSE, k % COARSE);
            grid.neighbours(i, j).all(|(a, b)| res[grid.index(a, b)] >= res[k])
        })
        .collect();
    seeds.sort_by(|&a, &b| res[a].total_cmp(&res[b]).then(a.cmp(&b)));
    seeds.truncate(SEEDS);
    if !seeds.contains(&best) {
        seeds.insert(0, best);
    }

    let (ds, dt) = (ss[1] - ss[0], ts[1] - ts[0]);
    let mut found: Option<Solution> = None;
    for k in seeds {
        let start = Solution { s: ss[k / COARSE], t: ts[k % COARSE], residual: res[k] };
        // A later pass restarts from the best point with the full window, in
        // case an elongated valley walked the zero out of a shrinking one.
        let mut sol = start;
        for _ in 0..PASSES {
            sol = refine(&f, sol, 2.0 * ds, 2.0 * dt);
            if sol.residual <= tol * 1e-3 {
                break;
            }
        }
        if found.is_none_or(|b| sol.residual < b.residual) {
            found = Some(sol);
        }
        if sol.residual == 0.0 {
            break;
        }
    }
    match found {
        Some(sol) if sol.residual <= tol => Ok(sol),
        Some(sol) => Err(Error::NotFound(format!(
            "best residual {:e} at (s, t) = ({}, {}) exceeds {tol:e}",
            sol.residual, sol.s, sol.t
        ))),
        None => Err(Error::NotFound("empty search".into())),
    }
}

fn refine(f: &impl Fn(f64, f64) -> f64, mut cur: Solution, mut hs: f64, mut ht: f64) -> Solution {
    for _ in 0..LEVELS {
        if cur.residual == 0.0 {
            break;
        }
        let (s0, s1) = ((cur.s - hs).max(0.0), (cur.s + hs).min(FRAC_PI_2));
        let (t0, t1) = ((cur.t - ht).max(0.0), (cur.t + ht).min(TAU));
        let n = (WINDOW - 1) as f64;
        let mut next = cur;
        for a in 0..WINDOW {
            let s = s0 + (s1 - s0) * (a as f64 / n);
            for b in 0..WINDOW {
                let t = t0 + (t1 - t0) * (b as f64 / n);
                let r = f(s, t);
                if r < next.residual {
                    next = Solution { s, t, residual: r };
                }
            }
        }
        cur = next;
        hs /= ZOOM;
        ht /= ZOOM;
    }
    cur
}

/// Largest `|x|` of a lift treated as lying on the edges of the rectangle,
/// where the double-tipping map stops being one-to-one.
const EDGE_X: f64 = 1e-12;
const NEWTON_STEPS: usize = 60;

/// Recovers the interior `(s, t)` whose double-tipping rotation equals `target`.
///
/// A coarse interior scan supplies the start for a damped Gauss-Newton solve
/// on the quaternion components. The lift has nonnegative `I` component
/// everywhere, which fixes the sign of `target`.
pub fn invert_double_tip(target: UnitQuaternion, tol: f64) -> Result<Solution> {
    if target.y().abs() > crate::tolerance::CONSTRUCTION {
        return Err(invalid(format!("rotation axis leaves the x-z plane (J = {:e})", target.y())));
    }
    let q = if target.x() < 0.0 { -target } else { target };
    if q.x() <= EDGE_X {
        return Err(Error::EdgeDegenerate(
            "target lies on the identity or double-twist edge of the rectangle".into(),
        ));
    }
    let goal = [q.r(), q.x(), q.z()];
    let comps = |s: f64, t: f64| {
        let l = HomotopyKind::DoubleTip.lift_at(s, t);
        [l.r(), l.x(), l.z()]
    };
    let err = |s: f64, t: f64| {
        let c = comps(s, t);
        [c[0] - goal[0], c[1] - goal[1], c[2] - goal[2]]
    };
    let norm2 = |e: [f64; 3]| e[0] * e[0] + e[1] * e[1] + e[2] * e[2];

    let grid = GridSpec::interior(64, 64)?;
    let (ss, ts) = (grid.s_values(), grid.t_values());
    let mut start = (ss[0], ts[0], f64::INFINITY);
    for &s in &ss {
        for &t in &ts {
            let e = norm2(err(s, t));
            if e < start.2 {
                start = (s, t, e);
            }
        }
    }

    let (mut s, mut t, mut e2) = start;
    for _ in 0..NEWTON_STEPS {
        if e2 == 0.0 {
            break;
        }
        let e = err(s, t);
        let (sn, cs) = s.sin_cos();
        let (st, ct) = t.sin_cos();
        let h = (t / 2.0).sin().powi(2);
        // Columns of the Jacobian of (r, x, z) with respect to s and t.
        let js = [2.0 * (2.0 * s).sin() * h, 2.0 * (2.0 * s).cos() * h, -sn * st];
        let jt = [-cs * cs * st, (2.0 * s).sin() * st / 2.0, cs * ct];
        let (a, b, c) = (dot(js, js), dot(js, jt), dot(jt, jt));
        let (g1, g2) = (dot(js, e), dot(jt, e));
        let det = a * c - b * b;
        if det.abs() < 1e-300 {
            break;
        }
        let (mut step_s, mut step_t) = ((c * g1 - b * g2) / det, (a * g2 - b * g1) / det);
        let mut moved = false;
        for _ in 0..40 {
            let (ns, nt) = (s - step_s, t - step_t);
            if ns > 0.0 && ns < FRAC_PI_2 && nt > 0.0 && nt < TAU {
                let ne = norm2(err(ns, nt));
                if ne < e2 {
                    (s, t, e2) = (ns, nt, ne);
                    moved = true;
                    break;
                }
            }
            step_s /= 2.0;
            step_t /= 2.0;
        }
        if !moved {
            break;
        }
    }

    let residual = HomotopyKind::DoubleTip.lift_at(s, t).rotation_distance(target);
    if residual <= tol {
        Ok(Solution { s, t, residual })
    } else {
        Err(Error::NotFound(format!("inverse residual {residual:e} exceeds {tol:e}")))
    }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
