//! Numerical probes of the nullhomotopies: grid scans that certify its image,
//! injectivity and degree, and the geometric queries (hinge fibers,
//! contrails, inverse maps) behind them.

mod contrail;
mod coverage;
mod fiber;
mod grid;
mod hemisphere;
mod injectivity;
mod preimage;
mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::homotopy::{HomotopyKind, HomotopyParams};
use crate::vec3::Vec3;

pub use contrail::{antipode_visit_times, antipode_visits, contrail, contrail_of, Contrail};
pub use coverage::{nearest_double_tip_sample, verify_in_p, verify_surjectivity, NearestSample, IN_P_TOL};
pub use fiber::{fiber_rotation, hinge_fiber, HingeFiberSample};
pub use grid::GridSpec;
pub use hemisphere::{hemisphere_views, HemisphereView, HemisphereViews};
pub use injectivity::verify_injectivity;
pub use preimage::{preimage_clusters, PreimageClusters};
pub use search::{invert_double_tip, solve_every_which_way, Solution};

/// Outcome of one numerical check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub passed: bool,
    /// Worst-case residual or a count, depending on the check.
    pub metric: f64,
    /// The bound `metric` is held to.
    pub tolerance: f64,
    pub details: serde_json::Map<String, serde_json::Value>,
}

impl VerificationReport {
    pub(crate) fn new(name: impl Into<String>, passed: bool, metric: f64, tolerance: f64) -> Self {
        Self {
            check_name: name.into(),
            passed,
            metric,
            tolerance,
            details: serde_json::Map::new(),
        }
    }

    pub(crate) fn with(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.details.insert(key.to_owned(), v);
        self
    }
}

/// Frame vectors tracked on the hand: fingers point away from the viewer
/// (`−e₁`), the thumb to the right (`e₂`), the candle up (`e₃`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Landmark {
    Fingers,
    Thumb,
    Candle,
}

impl Landmark {
    pub const ALL: [Landmark; 3] = [Landmark::Fingers, Landmark::Thumb, Landmark::Candle];

    pub fn vector(self) -> Vec3 {
        match self {
            Landmark::Fingers => -Vec3::X,
            Landmark::Thumb => Vec3::Y,
            Landmark::Candle => Vec3::Z,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Landmark::Fingers => "fingers",
            Landmark::Thumb => "thumb",
            Landmark::Candle => "candle",
        }
    }
}

impl fmt::Display for Landmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Landmark {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fingers" => Ok(Landmark::Fingers),
            "thumb" => Ok(Landmark::Thumb),
            "candle" => Ok(Landmark::Candle),
            _ => Err(invalid(format!("unknown landmark {s:?}"))),
        }
    }
}

/// Reflection of `v` across the x-z plane. Every rotation with axis in that
/// plane fixes `v·a` along the axis, so this is where the evaluation map on
/// those rotations stops being injective.
pub fn hinge(v: Vec3) -> Vec3 {
    Vec3::new(v.x, -v.y, v.z)
}

/// Image of `v` under the rotation `kind` uses at `(s, t)`.
pub fn evaluate(v: Vec3, kind: HomotopyKind, s: f64, t: f64) -> Result<Vec3> {
    let v = v.require_unit("v")?;
    let p = HomotopyParams::new(s, t)?;
    Ok(kind.lift_at(p.s, p.t).rotate(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn hinge_examples() {
        let v = Vec3::new(0.85, 0.4, 0.34278);
        assert_eq!(hinge(v), Vec3::new(0.85, -0.4, 0.34278));
        let w = Vec3::new(0.6, 0.0, -0.8);
        assert_eq!(hinge(w), w);
        assert_eq!(hinge(Vec3::Y), Vec3::new(0.0, -1.0, 0.0));
    }

    #[test]
    fn evaluate_examples() {
        let v = Vec3::new(0.48, 0.6, 0.64);
        for &s in &[0.0, 0.3, 1.2] {
            assert!(evaluate(v, HomotopyKind::DoubleTip, s, 0.0).unwrap().max_abs_diff(v) < 1e-15);
        }
        let e = evaluate(Vec3::Z, HomotopyKind::DoubleTip, FRAC_PI_4, PI).unwrap();
        assert!(e.max_abs_diff(-Vec3::Z) < 1e-15);
        let e = evaluate(Vec3::Y, HomotopyKind::DoubleTip, FRAC_PI_4, PI).unwrap();
        assert!(e.max_abs_diff(-Vec3::Y) < 1e-15);
        assert!(evaluate(Vec3::new(2.0, 0.0, 0.0), HomotopyKind::DoubleTip, 0.1, 0.1).is_err());
    }

    #[test]
    fn landmark_vectors() {
        assert_eq!(Landmark::Fingers.vector(), -Vec3::X);
        assert_eq!("Thumb".parse::<Landmark>().unwrap(), Landmark::Thumb);
        assert!("palm".parse::<Landmark>().is_err());
        assert_eq!(serde_json::to_string(&Landmark::Candle).unwrap(), "\"candle\"");
    }
}
