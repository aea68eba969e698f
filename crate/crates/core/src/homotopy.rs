//! Closed-form homotopies of loops in SO(3).
//!
//! The double-tipping nullhomotopy multiplies, pointwise in `t`, two
//! counterclockwise single-twists whose axes start at `+z` and are tipped by
//! `s` radians in the plane `x = 0`, one toward `−y` and one toward `+y`. At
//! `s = 0` this is the double-twist about `z`; at `s = π/2` the two twists are
//! inverse to each other and the loop is constant. Its unit-quaternion lift has
//! no `J` component, so every rotation it uses has its axis in the x-z plane.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::quaternion::{Quaternion, UnitQuaternion};
use crate::rotation::RotationMatrix;
use crate::tolerance::{AXIS_UNDEFINED, CONSTRUCTION, DOMAIN_SLACK};
use crate::vec3::Vec3;

/// A point `(s, t)` of the closed rectangle `[0, π/2] × [0, 2π]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomotopyParams {
    pub s: f64,
    pub t: f64,
}

impl HomotopyParams {
    pub const S_MAX: f64 = FRAC_PI_2;
    pub const T_MAX: f64 = TAU;

    /// Values within `1e−12` outside the rectangle are clamped onto it.
    pub fn new(s: f64, t: f64) -> Result<Self> {
        Ok(Self {
            s: clamp_param("s", s, Self::S_MAX)?,
            t: clamp_param("t", t, Self::T_MAX)?,
        })
    }

    /// The center `(π/4, π)` of the rectangle.
    pub fn center() -> Self {
        Self { s: FRAC_PI_2 / 2.0, t: PI }
    }

    /// True on the three edges `t = 0`, `t = 2π`, `s = π/2`, which every based
    /// nullhomotopy sends to the identity.
    pub fn on_identity_edge(&self) -> bool {
        self.t == 0.0 || self.t == Self::T_MAX || self.s == Self::S_MAX
    }
}

fn clamp_param(name: &str, v: f64, max: f64) -> Result<f64> {
    if !v.is_finite() || v < -DOMAIN_SLACK || v > max + DOMAIN_SLACK {
        return Err(invalid(format!("{name} = {v} is outside [0, {max}]")));
    }
    Ok(v.clamp(0.0, max))
}

/// Which nullhomotopy of the double-twist to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HomotopyKind {
    /// The double-tipping nullhomotopy; its axes stay in the x-z plane.
    #[serde(rename = "D")]
    DoubleTip,
    /// The variant whose `K` axial component is turned by `s` toward `J`,
    /// so its axes leave the x-z plane.
    #[serde(rename = "FK")]
    Fk,
}

impl HomotopyKind {
    pub const ALL: [HomotopyKind; 2] = [HomotopyKind::DoubleTip, HomotopyKind::Fk];

    pub fn lift(self, s: f64, t: f64) -> Result<UnitQuaternion> {
        let p = HomotopyParams::new(s, t)?;
        Ok(self.lift_at(p.s, p.t))
    }

    /// Evaluates the lift without domain checks, for callers sampling a grid
    /// that is already known to lie in the rectangle.
    pub(crate) fn lift_at(self, s: f64, t: f64) -> UnitQuaternion {
        match self {
            HomotopyKind::DoubleTip => double_tip_formula(s, t),
            HomotopyKind::Fk => fk_formula(s, t),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            HomotopyKind::DoubleTip => "D",
            HomotopyKind::Fk => "FK",
        }
    }
}

impl fmt::Display for HomotopyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for HomotopyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "d" | "doubletip" | "double-tip" => Ok(HomotopyKind::DoubleTip),
            "fk" => Ok(HomotopyKind::Fk),
            _ => Err(invalid(format!("unknown homotopy kind {s:?}; expected D or FK"))),
        }
    }
}

/// One cell of a nullhomotopy with its matrix and rotation coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomotopySample {
    pub kind: HomotopyKind,
    pub params: HomotopyParams,
    pub q: UnitQuaternion,
    pub matrix: RotationMatrix,
    /// Axial angle in the x-z plane; only for the double-tipping homotopy and
    /// only where the rotation has an axis.
    pub phi: Option<f64>,
    /// `2·arccos(r)`, in `[0, 2π]`.
    pub theta: f64,
}

pub fn sample(kind: HomotopyKind, s: f64, t: f64) -> Result<HomotopySample> {
    let params = HomotopyParams::new(s, t)?;
    let q = kind.lift_at(params.s, params.t);
    let phi = match kind {
        HomotopyKind::DoubleTip => axial_angle(params.s, params.t).ok(),
        HomotopyKind::Fk => None,
    };
    Ok(HomotopySample {
        kind,
        params,
        q,
        matrix: q.to_matrix(),
        phi,
        theta: theta_of(q),
    })
}

fn double_tip_formula(s: f64, t: f64) -> UnitQuaternion {
    let cos_s = s.cos();
    let half = (0.5 * t).sin();
    let h = half * half;
    UnitQuaternion::new_unchecked(Quaternion::new(
        1.0 - 2.0 * cos_s * cos_s * h,
        (2.0 * s).sin() * h,
        0.0,
        cos_s * t.sin(),
    ))
}

fn fk_formula(s: f64, t: f64) -> UnitQuaternion {
    let (sin_s, cos_s) = s.sin_cos();
    let half = (0.5 * t).sin();
    let h = half * half;
    let spill = cos_s * t.sin();
    UnitQuaternion::new_unchecked(Quaternion::new(
        1.0 - 2.0 * cos_s * cos_s * h,
        (2.0 * s).sin() * h,
        sin_s * spill,
        cos_s * spill,
    ))
}

/// Lift of the double-tipping nullhomotopy:
/// `(1 − 2cos²s·sin²(t/2)) + I·sin(2s)·sin²(t/2) + K·cos s·sin t`.
pub fn double_tip_lift(s: f64, t: f64) -> Result<UnitQuaternion> {
    HomotopyKind::DoubleTip.lift(s, t)
}

/// The rotation `v ↦ q v q̄` for `q = double_tip_lift(s, t)`.
pub fn double_tip_matrix(s: f64, t: f64) -> Result<RotationMatrix> {
    Ok(double_tip_lift(s, t)?.to_matrix())
}

/// Lift of the billowing-axis variant: real and `I` parts as in
/// [`double_tip_lift`], with `K·cos s·sin t` replaced by
/// `J·sin s·cos s·sin t + K·cos²s·sin t`.
pub fn fk_lift(s: f64, t: f64) -> Result<UnitQuaternion> {
    HomotopyKind::Fk.lift(s, t)
}

/// Axial angle `φ` of the double-tipping rotation at `(s, t)`: its axis is
/// `(cos φ, 0, sin φ)`.
///
/// Computed as `atan2(cos s·sin t, sin 2s·sin²(t/2))`. The `I` component is
/// never negative, so `φ ∈ [−π/2, π/2]`; `−π/2` occurs only on the `s = 0`
/// edge for `t ∈ (π, 2π)`, where the axis is `−z` and the pair `(φ, θ)` still
/// reconstructs the rotation.
pub fn axial_angle(s: f64, t: f64) -> Result<f64> {
    let p = HomotopyParams::new(s, t)?;
    let q = double_tip_formula(p.s, p.t);
    if q.angle() <= AXIS_UNDEFINED {
        return Err(Error::UndefinedAxis { s: p.s, t: p.t });
    }
    Ok(q.z().atan2(q.x()))
}

/// Rotation angle `θ = 2·arccos(1 − 2cos²s·sin²(t/2))`, in `[0, 2π]`.
pub fn rotation_angle(s: f64, t: f64) -> Result<f64> {
    Ok(theta_of(double_tip_lift(s, t)?))
}

fn theta_of(q: UnitQuaternion) -> f64 {
    2.0 * q.r().clamp(-1.0, 1.0).acos()
}

/// Lift of the counterclockwise single-twist about `axis`, `t ∈ [0, 2π]`.
/// It runs from `1` to `−1`, half a great circle of S³.
pub fn single_twist(axis: Vec3, t: f64) -> Result<UnitQuaternion> {
    UnitQuaternion::from_axis_angle(axis, t)
}

/// Single-twist about the axis `(0, −sin s, cos s)`, tipped from `+z` by `s`
/// toward `−y`. At `s = π` the axis is `−z` and the loop is the clockwise
/// twist about `+z`.
pub fn tipped_single_twist(s: f64, t: f64) -> Result<UnitQuaternion> {
    if !(0.0..=PI).contains(&s) {
        return Err(invalid(format!("tip angle s = {s} is outside [0, π]")));
    }
    let (sin_s, cos_s) = s.sin_cos();
    single_twist(Vec3::new(0.0, -sin_s, cos_s), t)
}

/// The two tipped single-twists whose pointwise product is the double-tipping
/// loop at `s`, returned as `(right_tipped, left_tipped)`.
///
/// The left-tipped twist (axis toward `−y`) is applied first, so the lift is
/// `right_tipped · left_tipped`.
pub fn double_tip_factors(s: f64, t: f64) -> Result<(UnitQuaternion, UnitQuaternion)> {
    let p = HomotopyParams::new(s, t)?;
    let (sin_s, cos_s) = p.s.sin_cos();
    let right = single_twist(Vec3::new(0.0, sin_s, cos_s), p.t)?;
    let left = single_twist(Vec3::new(0.0, -sin_s, cos_s), p.t)?;
    Ok((right, left))
}

/// Compares, at `n` evenly spaced `t ∈ [0, 2π]`, the concatenation of the
/// twist about `first` followed by the twist about `second` (each run at
/// double speed) with their pointwise product. Returns true iff they agree as
/// rotations within `1e−9` everywhere.
pub fn concat_matches_product(first: Vec3, second: Vec3, n: usize) -> Result<bool> {
    if n < 2 {
        return Err(invalid("need at least two samples"));
    }
    for i in 0..n {
        let t = TAU * i as f64 / (n - 1) as f64;
        let concatenated = if t <= PI {
            single_twist(first, 2.0 * t)?
        } else {
            single_twist(second, 2.0 * t - TAU)?
        };
        let product = single_twist(first, t)? * single_twist(second, t)?;
        if !concatenated.same_rotation(product, CONSTRUCTION) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`concat_matches_product`] with both twists about the same axis, which
/// always agrees.
pub fn concat_vs_product_check(axis: Vec3, n: usize) -> Result<bool> {
    concat_matches_product(axis, axis, n)
}
