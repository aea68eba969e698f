//! Frame data for viewers and files: poses, movie grids and `φ`/`θ` surfaces.

use serde::{Deserialize, Serialize};

use crate::analysis::{GridSpec, Landmark};
use crate::error::Result;
use crate::homotopy::{HomotopyKind, HomotopyParams};
use crate::tolerance::AXIS_UNDEFINED;
use crate::vec3::Vec3;

pub const DEFAULT_MOVIE_SIZE: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Landmarks {
    pub fingers: Vec3,
    pub thumb: Vec3,
    pub candle: Vec3,
}

/// Everything a viewer needs to draw the hand at one `(s, t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FramePose {
    pub kind: HomotopyKind,
    pub s: f64,
    pub t: f64,
    pub quaternion: [f64; 4],
    /// Row-major.
    pub matrix: [f64; 9],
    /// `None` when the rotation is the identity.
    pub axis: Option<[f64; 3]>,
    pub angle: f64,
    pub landmarks: Landmarks,
}

impl FramePose {
    pub fn new(kind: HomotopyKind, s: f64, t: f64) -> Result<Self> {
        let p = HomotopyParams::new(s, t)?;
        let q = kind.lift_at(p.s, p.t);
        let m = q.to_matrix();
        let aa = q.to_axis_angle();
        let at = |l: Landmark| m.apply(l.vector());
        Ok(Self {
            kind,
            s: p.s,
            t: p.t,
            quaternion: q.get().to_array(),
            matrix: m.row_major(),
            axis: aa.axis_defined.then(|| aa.axis.to_array()),
            angle: aa.angle,
            landmarks: Landmarks {
                fingers: at(Landmark::Fingers),
                thumb: at(Landmark::Thumb),
                candle: at(Landmark::Candle),
            },
        })
    }
}

/// Poses on a closed `ns × nt` grid: row `j` holds `t_j`, column `i` holds `s_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MovieGrid {
    pub ns: usize,
    pub nt: usize,
    pub poses: Vec<FramePose>,
}

impl MovieGrid {
    pub fn new(kind: HomotopyKind, ns: usize, nt: usize) -> Result<Self> {
        let grid = GridSpec::closed(ns, nt)?;
        let (ss, ts) = (grid.s_values(), grid.t_values());
        let mut poses = Vec::with_capacity(grid.len());
        for &t in &ts {
            for &s in &ss {
                poses.push(FramePose::new(kind, s, t)?);
            }
        }
        Ok(Self { ns, nt, poses })
    }

    pub fn pose(&self, i_s: usize, i_t: usize) -> Option<&FramePose> {
        (i_s < self.ns && i_t < self.nt).then(|| &self.poses[i_t * self.ns + i_s])
    }
}

/// Both homotopies on the same grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub double_tip: MovieGrid,
    pub fk: MovieGrid,
}

pub fn compare(ns: usize, nt: usize) -> Result<Comparison> {
    Ok(Comparison {
        double_tip: MovieGrid::new(HomotopyKind::DoubleTip, ns, nt)?,
        fk: MovieGrid::new(HomotopyKind::Fk, ns, nt)?,
    })
}

/// Axial angle `φ` and rotation angle `θ` of the double-tipping rotations
/// over a closed grid. Rows follow `t`, columns follow `s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiThetaSurface {
    pub s: Vec<f64>,
    pub t: Vec<f64>,
    /// `None` where the rotation is the identity.
    pub phi: Vec<Vec<Option<f64>>>,
    pub theta: Vec<Vec<f64>>,
}

impl PhiThetaSurface {
    pub fn new(ns: usize, nt: usize) -> Result<Self> {
        let grid = GridSpec::closed(ns, nt)?;
        let (ss, ts) = (grid.s_values(), grid.t_values());
        let mut phi = Vec::with_capacity(nt);
        let mut theta = Vec::with_capacity(nt);
        for &t in &ts {
            let (mut prow, mut trow) = (Vec::with_capacity(ns), Vec::with_capacity(ns));
            for &s in &ss {
                let q = HomotopyKind::DoubleTip.lift_at(s, t);
                trow.push(2.0 * q.r().clamp(-1.0, 1.0).acos());
                prow.push((q.angle() > AXIS_UNDEFINED).then(|| q.z().atan2(q.x())));
            }
            phi.push(prow);
            theta.push(trow);
        }
        Ok(Self { s: ss, t: ts, phi, theta })
    }

    /// Long-form CSV with header `s,t,phi,theta`; `phi` is empty where undefined.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,t,phi,theta\n");
        for (j, &t) in self.t.iter().enumerate() {
            for (i, &s) in self.s.iter().enumerate() {
                let phi = self.phi[j][i].map(|p| format!("{p:?}")).unwrap_or_default();
                out.push_str(&format!("{s:?},{t:?},{phi},{:?}\n", self.theta[j][i]));
            }
        }
        out
    }
}
