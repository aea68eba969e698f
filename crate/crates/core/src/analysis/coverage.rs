use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{GridSpec, VerificationReport};
use crate::homotopy::HomotopyKind;
use crate::quaternion::UnitQuaternion;
use crate::sampling;

/// Largest `J` component tolerated for a lift to count as lying over `P`.
pub const IN_P_TOL: f64 = 1e-15;

/// Scans the lift of `kind` for its largest `J` component.
pub fn verify_in_p(kind: HomotopyKind, grid: GridSpec) -> VerificationReport {
    let lifts = grid.lifts(kind);
    let (mut worst, mut at) = (0.0f64, 0usize);
    for (k, q) in lifts.iter().enumerate() {
        if q.y().abs() > worst {
            worst = q.y().abs();
            at = k;
        }
    }
    let (ss, ts) = (grid.s_values(), grid.t_values());
    VerificationReport::new("in-p", worst <= IN_P_TOL, worst, IN_P_TOL)
        .with("kind", kind)
        .with("grid", grid)
        .with("argmax_s", ss[at / grid.nt])
        .with("argmax_t", ts[at % grid.nt])
}

/// Closest sample of the double-tipping lift to a given rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NearestSample {
    pub s: f64,
    pub t: f64,
    pub distance: f64,
}

pub fn nearest_double_tip_sample(grid: GridSpec, target: UnitQuaternion) -> NearestSample {
    let lifts = grid.lifts(HomotopyKind::DoubleTip);
    nearest_in(&grid, &lifts, target)
}

fn nearest_in(grid: &GridSpec, lifts: &[UnitQuaternion], target: UnitQuaternion) -> NearestSample {
    let q = target.get();
    let mut best = (f64::NEG_INFINITY, 0usize);
    for (k, l) in lifts.iter().enumerate() {
        let d = l.get().dot(q).abs();
        if d > best.0 {
            best = (d, k);
        }
    }
    let k = best.1;
    NearestSample {
        s: grid.s_values()[k / grid.nt],
        t: grid.t_values()[k % grid.nt],
        distance: lifts[k].rotation_distance(target),
    }
}

/// Draws `n_targets` seeded rotations in `P` and measures how far each is
/// from the nearest grid image of the double-tipping map.
pub fn verify_surjectivity(grid: GridSpec, n_targets: usize, tol: f64, seed: u64) -> VerificationReport {
    let mut rng = sampling::seeded(seed);
    let targets: Vec<UnitQuaternion> =
        (0..n_targets).map(|_| sampling::random_rotation_in_p(&mut rng)).collect();
    let lifts = grid.lifts(HomotopyKind::DoubleTip);
    let hits: Vec<NearestSample> = targets.par_iter().map(|&q| nearest_in(&grid, &lifts, q)).collect();

    let mut worst: Option<(usize, &NearestSample)> = None;
    for (i, h) in hits.iter().enumerate() {
        if worst.is_none_or(|(_, w)| h.distance > w.distance) {
            worst = Some((i, h));
        }
    }
    let metric = worst.map_or(0.0, |(_, h)| h.distance);
    let misses = hits.iter().filter(|h| h.distance > tol).count();
    let mut report = VerificationReport::new("surjective", misses == 0, metric, tol)
        .with("grid", grid)
        .with("targets", n_targets)
        .with("seed", seed)
        .with("misses", misses);
    if let Some((i, h)) = worst {
        let aa = targets[i].to_axis_angle();
        report = report
            .with("worst_target_axis", aa.axis)
            .with("worst_target_angle", aa.angle)
            .with("worst_nearest", h);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vec3::Vec3;
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn double_tip_lies_over_p() {
        let r = verify_in_p(HomotopyKind::DoubleTip, GridSpec::closed(257, 257).unwrap());
        assert!(r.passed);
        assert!(r.metric <= 1e-15);
        assert!(verify_in_p(HomotopyKind::DoubleTip, GridSpec::closed(2, 2).unwrap()).passed);
    }

    #[test]
    fn fk_leaves_p() {
        let r = verify_in_p(HomotopyKind::Fk, GridSpec::closed(257, 257).unwrap());
        assert!(!r.passed);
        assert!((r.metric - 0.5).abs() < 1e-15);
        assert!((r.details["argmax_s"].as_f64().unwrap() - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn identity_hit_exactly() {
        let g = GridSpec::closed(17, 17).unwrap();
        let n = nearest_double_tip_sample(g, UnitQuaternion::IDENTITY);
        assert_eq!(n.distance, 0.0);
    }

    #[test]
    fn half_turn_about_x_found_near_center() {
        let target = UnitQuaternion::from_axis_angle(Vec3::X, PI).unwrap();
        let mut last = f64::INFINITY;
        for n in [17, 65, 257] {
            let hit = nearest_double_tip_sample(GridSpec::closed(n, n).unwrap(), target);
            assert!((hit.s - FRAC_PI_4).abs() < 1e-12 && (hit.t - PI).abs() < 1e-12);
            assert!(hit.distance <= last);
            last = hit.distance;
        }
        assert!(last < 1e-12);
    }

    #[test]
    fn small_grid_surjectivity_is_seed_stable() {
        let g = GridSpec::closed(64, 64).unwrap();
        let a = verify_surjectivity(g, 50, 0.2, 7);
        let b = verify_surjectivity(g, 50, 0.2, 7);
        assert_eq!(a, b);
        assert!(a.passed);
    }
}
