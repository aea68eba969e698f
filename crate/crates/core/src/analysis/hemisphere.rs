use serde::{Deserialize, Serialize};

use super::GridSpec;
use crate::homotopy::HomotopyKind;

/// One picture of the double-tipping image inside the 2-sphere `y = 0` of
/// the unit quaternions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HemisphereView {
    /// `(r, x, z)` for each sample, one row per `s`.
    pub points: Vec<Vec<[f64; 3]>>,
    /// Orthographic projection onto the disk bounding the hemisphere.
    pub disk: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HemisphereViews {
    pub s: Vec<f64>,
    pub t: Vec<f64>,
    /// Lift as is, in the `x ≥ 0` hemisphere, seen along `x` as `(r, z)`.
    pub x_hemisphere: HemisphereView,
    /// Points with `r < 0` replaced by their antipodes, seen along `r` as `(x, z)`.
    pub r_hemisphere: HemisphereView,
}

pub fn hemisphere_views(grid: GridSpec) -> HemisphereViews {
    let lifts = grid.lifts(HomotopyKind::DoubleTip);
    let rows: Vec<&[crate::quaternion::UnitQuaternion]> = lifts.chunks(grid.nt).collect();
    let raw: Vec<Vec<[f64; 3]>> = rows
        .iter()
        .map(|row| row.iter().map(|q| [q.r(), q.x(), q.z()]).collect())
        .collect();
    let flipped: Vec<Vec<[f64; 3]>> = raw
        .iter()
        .map(|row| {
            row.iter()
                .map(|&[r, x, z]| if r < 0.0 { [-r, -x, -z] } else { [r, x, z] })
                .collect()
        })
        .collect();
    let project = |pts: &Vec<Vec<[f64; 3]>>, f: fn([f64; 3]) -> [f64; 2]| -> Vec<Vec<[f64; 2]>> {
        pts.iter().map(|row| row.iter().map(|&p| f(p)).collect()).collect()
    };
    HemisphereViews {
        s: grid.s_values(),
        t: grid.t_values(),
        x_hemisphere: HemisphereView { disk: project(&raw, |p| [p[0], p[2]]), points: raw },
        r_hemisphere: HemisphereView { disk: project(&flipped, |p| [p[1], p[2]]), points: flipped },
    }
}
