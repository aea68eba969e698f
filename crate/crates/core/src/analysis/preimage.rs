use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{hinge, GridSpec};
use crate::vec3::Vec3;
use crate::error::{Error, Result};
use crate::homotopy::HomotopyKind;

/// Clusters of grid cells whose double-tipping image carries `v` near `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreimageClusters {
    /// Clusters that stay away from the identity edges of the rectangle.
    pub interior: usize,
    /// Whether a cluster reaches the identity edges. Those edges all map to
    /// one rotation, so such a cluster is a single preimage point.
    pub edge_degenerate: bool,
    /// Cells with angle below `tol`.
    pub cells: usize,
}

impl PreimageClusters {
    pub fn count(&self) -> usize {
        self.interior + usize::from(self.edge_degenerate)
    }
}

struct Dsu(Vec<u32>);

impl Dsu {
    fn new(n: usize) -> Self {
        Self((0..n as u32).collect())
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] as usize != a {
            let p = self.0[a] as usize;
            self.0[a] = self.0[p];
            a = p;
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb) as u32;
        }
    }
}

/// Counts preimage clusters of `w` under `(s, t) ↦ D(s,t)(v)`.
///
/// A cluster is a connected set of cells with angle below `2·tol` that
/// contains at least one cell below `tol`; the looser outer threshold keeps
/// grid aliasing from splitting one preimage into slivers. On a closed grid
/// the rectangle is glued the way the map glues it: the three identity edges
/// collapse to one point and `(0, t)` meets `(0, t + π)`.
pub fn preimage_clusters(v: Vec3, w: Vec3, grid: GridSpec, tol: f64) -> Result<PreimageClusters> {
    let v = v.require_unit("v")?;
    let w = w.require_unit("w")?;
    let vh = hinge(v);
    let cone = w.angle_to(vh);
    if cone < tol {
        return Err(Error::HingeDegeneracy { v: v.to_array(), w: w.to_array(), cone });
    }

    let lifts = grid.lifts(HomotopyKind::DoubleTip);
    let angle: Vec<f64> = lifts.par_iter().map(|q| q.rotate(v).angle_to(w)).collect();
    let weak = |k: usize| angle[k] < 2.0 * tol;

    let (ns, nt) = (grid.ns, grid.nt);
    let mut dsu = Dsu::new(lifts.len());
    for i in 0..ns {
        for j in 0..nt {
            let k = grid.index(i, j);
            if !weak(k) {
                continue;
            }
            for (a, b) in grid.neighbours(i, j) {
                let m = grid.index(a, b);
                if m > k && weak(m) {
                    dsu.union(k, m);
                }
            }
        }
    }

    let on_edge = |i: usize, j: usize| grid.include_edges && (j == 0 || j == nt - 1 || i == ns - 1);
    if grid.include_edges {
        let edge: Vec<usize> = (0..ns)
            .flat_map(|i| (0..nt).map(move |j| (i, j)))
            .filter(|&(i, j)| on_edge(i, j))
            .map(|(i, j)| grid.index(i, j))
            .filter(|&k| weak(k))
            .collect();
        for pair in edge.windows(2) {
            dsu.union(pair[0], pair[1]);
        }
        // (0, t) and (0, t + π) are the same rotation.
        let period = (nt - 1) as f64;
        for j in 0..nt {
            let p = (j as f64 + period / 2.0) % period;
            for m in [p.floor() as usize, p.ceil() as usize] {
                let (a, b) = (grid.index(0, j), grid.index(0, m.min(nt - 1)));
                if weak(a) && weak(b) {
                    dsu.union(a, b);
                }
            }
        }
    }

    let mut edge_roots = Vec::new();
    let mut roots = Vec::new();
    let mut cells = 0;
    for i in 0..ns {
        for j in 0..nt {
            let k = grid.index(i, j);
            if on_edge(i, j) && weak(k) {
                edge_roots.push(dsu.find(k));
            }
            if angle[k] < tol {
                cells += 1;
                roots.push(dsu.find(k));
            }
        }
    }
    roots.sort_unstable();
    roots.dedup();
    let roots: Vec<(usize, bool)> = roots.into_iter().map(|r| (r, edge_roots.contains(&r))).collect();
    let edge_degenerate = roots.iter().any(|e| e.1);
    let interior = roots.iter().filter(|e| !e.1).count();
    Ok(PreimageClusters { interior, edge_degenerate, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;


    fn fig_v() -> Vec3 {
        Vec3::new(0.85, 0.4, 0.34278).normalized().unwrap()
    }

    #[test]
    fn generic_target_has_one_preimage() {
        let w = Vec3::new(-0.3, 0.5, 0.2).normalized().unwrap();
        let c = preimage_clusters(fig_v(), w, GridSpec::closed(513, 513).unwrap(), 0.03).unwrap();
        assert_eq!(c.count(), 1, "{c:?}");
        assert!(!c.edge_degenerate);
    }

    #[test]
    fn w_equal_v_is_edge_degenerate() {
        let c = preimage_clusters(fig_v(), fig_v(), GridSpec::closed(129, 129).unwrap(), 0.03).unwrap();
        assert!(c.edge_degenerate);
        assert_eq!(c.interior, 0);
        assert_eq!(c.count(), 1);
    }

    #[test]
    fn hinge_is_rejected() {
        let v = fig_v();
        let e = preimage_clusters(v, hinge(v), GridSpec::closed(65, 65).unwrap(), 0.03);
        assert!(matches!(e, Err(Error::HingeDegeneracy { .. })));
    }

    #[test]
    fn random_pairs_have_one_preimage() {
        let mut rng = sampling::seeded(3);
        let grid = GridSpec::closed(257, 257).unwrap();
        let mut done = 0;
        while done < 10 {
            let v = sampling::random_unit_vector(&mut rng);
            let w = sampling::random_unit_vector(&mut rng);
            if w.angle_to(hinge(v)) < 0.1 {
                continue;
            }
            let c = preimage_clusters(v, w, grid, 0.05).unwrap();
            assert_eq!(c.count(), 1, "v={v:?} w={w:?} {c:?}");
            done += 1;
        }
    }
}
