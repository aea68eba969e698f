use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use super::{GridSpec, VerificationReport};
use crate::error::{Error, Result};
use crate::homotopy::HomotopyKind;
use crate::quaternion::UnitQuaternion;

const BUCKET_LIMIT: usize = 1 << 16;

type Key = (i64, i64, i64, i64);

fn key(q: UnitQuaternion, h: f64) -> Key {
    let c = q.get();
    (
        (c.r / h).floor() as i64,
        (c.x / h).floor() as i64,
        (c.y / h).floor() as i64,
        (c.z / h).floor() as i64,
    )
}

/// Looks for pairs of grid cells whose double-tipping rotations lie within
/// `tol` of each other without being joined through the grid.
///
/// Two cells are a collision when their rotations are closer than `tol` but
/// no 8-connected chain of cells staying inside a small ball around the first
/// one leads to the second. The ball radius is `tol` plus twice the largest
/// step from the cell to its grid neighbours, so cells that are merely
/// crowded together where the map compresses the rectangle are not reported.
/// `metric` is the number of collisions.
pub fn verify_injectivity(grid: GridSpec, tol: f64) -> Result<VerificationReport> {
    let lifts = grid.lifts(HomotopyKind::DoubleTip);
    let h = tol.max(f64::MIN_POSITIVE);

    let mut buckets: HashMap<Key, Vec<u32>> = HashMap::new();
    for (k, &q) in lifts.iter().enumerate() {
        let b = buckets.entry(key(q, h)).or_default();
        b.push(k as u32);
        if b.len() > BUCKET_LIMIT {
            return Err(Error::Resource(format!(
                "more than {BUCKET_LIMIT} samples in one {tol:e}-bucket"
            )));
        }
    }

    let near = |q: UnitQuaternion, k: usize| -> Vec<usize> {
        let mut out = Vec::new();
        for probe in [q, -q] {
            let (a, b, c, d) = key(probe, h);
            for da in -1..=1 {
                for db in -1..=1 {
                    for dc in -1..=1 {
                        for dd in -1..=1 {
                            if let Some(v) = buckets.get(&(a + da, b + db, c + dc, d + dd)) {
                                out.extend(v.iter().map(|&m| m as usize).filter(|&m| {
                                    m > k && lifts[m].rotation_distance(q) < tol
                                }));
                            }
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    };

    let nt = grid.nt;
    let per_cell: Vec<(usize, Vec<(usize, usize)>)> = (0..lifts.len())
        .into_par_iter()
        .map(|k| {
            let q = lifts[k];
            let close = near(q, k);
            let (i, j) = (k / nt, k % nt);
            let adjacent = |m: usize| (m / nt).abs_diff(i) <= 1 && (m % nt).abs_diff(j) <= 1;
            let far: Vec<usize> = close.iter().copied().filter(|&m| !adjacent(m)).collect();
            if far.is_empty() {
                return (close.len(), Vec::new());
            }
            let step = grid
                .neighbours(i, j)
                .map(|(a, b)| lifts[grid.index(a, b)].rotation_distance(q))
                .fold(0.0, f64::max);
            let reach = flood(&grid, &lifts, k, tol + 2.0 * step);
            let hits = far.into_iter().filter(|m| !reach.contains(m)).map(|m| (k, m)).collect();
            (close.len(), hits)
        })
        .collect();

    let pairs: usize = per_cell.iter().map(|(n, _)| n).sum();
    let collisions: Vec<(usize, usize)> = per_cell.into_iter().flat_map(|(_, c)| c).collect();

    let (ss, ts) = (grid.s_values(), grid.t_values());
    let at = |k: usize| [ss[k / nt], ts[k % nt]];
    let examples: Vec<[[f64; 2]; 2]> = collisions.iter().take(8).map(|&(a, b)| [at(a), at(b)]).collect();
    Ok(VerificationReport::new("injective", collisions.is_empty(), collisions.len() as f64, tol)
        .with("grid", grid)
        .with("close_pairs", pairs)
        .with("collisions", examples))
}

/// Cells reachable from `start` through 8-adjacent steps without leaving the
/// ball of `radius` around its rotation.
fn flood(grid: &GridSpec, lifts: &[UnitQuaternion], start: usize, radius: f64) -> std::collections::HashSet<usize> {
    let q = lifts[start];
    let mut seen = std::collections::HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(k) = queue.pop_front() {
        for (a, b) in grid.neighbours(k / grid.nt, k % grid.nt) {
            let m = grid.index(a, b);
            if !seen.contains(&m) && lifts[m].rotation_distance(q) <= radius {
                seen.insert(m);
                queue.push_back(m);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_interior_grid_is_injective() {
        let r = verify_injectivity(GridSpec::interior(3, 3).unwrap(), 1e-4).unwrap();
        assert!(r.passed);
        assert_eq!(r.details["close_pairs"], 0);
        let lifts = GridSpec::interior(3, 3).unwrap().lifts(HomotopyKind::DoubleTip);
        for (a, p) in lifts.iter().enumerate() {
            for q in &lifts[a + 1..] {
                assert!(p.rotation_distance(*q) > 0.1);
            }
        }
    }

    #[test]
    fn interior_grid_has_no_collisions() {
        let r = verify_injectivity(GridSpec::interior(101, 101).unwrap(), 1e-4).unwrap();
        assert!(r.passed, "{:?}", r.details);
    }

    #[test]
    fn identity_edge_collides() {
        let r = verify_injectivity(GridSpec::closed(33, 33).unwrap(), 1e-4).unwrap();
        assert!(!r.passed);
        assert!(r.metric > 0.0);
    }
}
