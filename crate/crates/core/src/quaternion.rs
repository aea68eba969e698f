//! Quaternions and the conjugation action of unit quaternions on ℝ³.
//!
//! Components are stored scalar-first as `r + xI + yJ + zK`. Pure quaternions
//! `xI + yJ + zK` are identified with vectors `(x, y, z)`, so that `I`, `J`, `K`
//! are the unit vectors along the x-, y- and z-axes.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rotation::{AxisAngle, BallPoint, RotationMatrix};
use crate::tolerance::{ALGEBRAIC, AXIS_UNDEFINED, CONSTRUCTION};
use crate::vec3::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub r: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(r: f64, x: f64, y: f64, z: f64) -> Self {
        Self { r, x, y, z }
    }

    pub const fn real(r: f64) -> Self {
        Self::new(r, 0.0, 0.0, 0.0)
    }

    pub fn pure(v: Vec3) -> Self {
        Self::new(0.0, v.x, v.y, v.z)
    }

    pub fn imag(self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }

    /// `r − xI − yJ − zK`.
    pub fn conj(self) -> Self {
        Self::new(self.r, -self.x, -self.y, -self.z)
    }

    /// Euclidean inner product on ℝ⁴.
    pub fn dot(self, o: Quaternion) -> f64 {
        self.r * o.r + self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(self.r * k, self.x * k, self.y * k, self.z * k)
    }

    pub fn max_abs_diff(self, o: Quaternion) -> f64 {
        (self.r - o.r)
            .abs()
            .max((self.x - o.x).abs())
            .max((self.y - o.y).abs())
            .max((self.z - o.z).abs())
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.r, self.x, self.y, self.z]
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        q.to_array()
    }
}

/// Hamilton product, determined by `I² = J² = K² = IJK = −1`.
impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, b: Quaternion) -> Quaternion {
        let a = self;
        Quaternion::new(
            a.r * b.r - a.x * b.x - a.y * b.y - a.z * b.z,
            a.r * b.x + a.x * b.r + a.y * b.z - a.z * b.y,
            a.r * b.y - a.x * b.z + a.y * b.r + a.z * b.x,
            a.r * b.z + a.x * b.y - a.y * b.x + a.z * b.r,
        )
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.r + o.r, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.r - o.r, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

/// A point of S³, acting on ℝ³ by `v ↦ q v q̄`.
///
/// `q` and `−q` act identically; anything that compares rotations rather than
/// lifts should go through [`UnitQuaternion::same_rotation`] or
/// [`UnitQuaternion::rotation_distance`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Quaternion", into = "Quaternion")]
pub struct UnitQuaternion(Quaternion);

impl UnitQuaternion {
    pub const IDENTITY: UnitQuaternion = UnitQuaternion(Quaternion::ONE);
    pub const I: UnitQuaternion = UnitQuaternion(Quaternion::I);
    pub const J: UnitQuaternion = UnitQuaternion(Quaternion::J);
    pub const K: UnitQuaternion = UnitQuaternion(Quaternion::K);

    /// Accepts `q` if its norm is within `1e−9` of one. No renormalization.
    pub fn new(q: Quaternion) -> Result<Self> {
        let n = q.norm();
        if !n.is_finite() || (n - 1.0).abs() > CONSTRUCTION {
            return Err(invalid(format!("quaternion norm {n} is not 1")));
        }
        Ok(Self(q))
    }

    /// Scales any nonzero quaternion onto S³.
    pub fn normalize(q: Quaternion) -> Result<Self> {
        let n = q.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(invalid("cannot normalize a zero or non-finite quaternion"));
        }
        Ok(Self(q.scale(1.0 / n)))
    }

    /// Wraps a quaternion the caller knows to be unit, e.g. one produced by a
    /// closed-form formula on S³.
    pub(crate) fn new_unchecked(q: Quaternion) -> Self {
        Self(q)
    }

    pub fn renormalized(self) -> Self {
        Self(self.0.scale(1.0 / self.0.norm()))
    }

    /// `cos(γ/2) + sin(γ/2)·u`, conjugation by which rotates ℝ³ counterclockwise
    /// by `γ` about `u`, looking toward the origin from the tip of `u`.
    pub fn from_axis_angle(axis: Vec3, gamma: f64) -> Result<Self> {
        let axis = axis.require_unit("rotation axis")?;
        if !gamma.is_finite() {
            return Err(invalid("rotation angle must be finite"));
        }
        let period = 4.0 * std::f64::consts::PI;
        let gamma = if gamma.abs() > period { gamma.rem_euclid(period) } else { gamma };
        let half = 0.5 * gamma;
        let (s, c) = half.sin_cos();
        Ok(Self(Quaternion::new(c, s * axis.x, s * axis.y, s * axis.z)))
    }

    pub fn get(self) -> Quaternion {
        self.0
    }

    pub fn r(self) -> f64 {
        self.0.r
    }

    pub fn x(self) -> f64 {
        self.0.x
    }

    pub fn y(self) -> f64 {
        self.0.y
    }

    pub fn z(self) -> f64 {
        self.0.z
    }

    pub fn conj(self) -> Self {
        Self(self.0.conj())
    }

    /// The inverse of a unit quaternion is its conjugate.
    pub fn inverse(self) -> Self {
        self.conj()
    }

    /// Imaginary part of `q·(0, v)·q̄`.
    pub fn rotate(self, v: Vec3) -> Vec3 {
        (self.0 * Quaternion::pure(v) * self.0.conj()).imag()
    }

    /// Matrix of `v ↦ q v q̄`; column `i` is the image of `eᵢ`.
    pub fn to_matrix(self) -> RotationMatrix {
        let Quaternion { r, x, y, z } = self.0;
        RotationMatrix::from_rows_unchecked([
            [
                1.0 - 2.0 * (y * y + z * z),
                2.0 * (x * y - r * z),
                2.0 * (x * z + r * y),
            ],
            [
                2.0 * (x * y + r * z),
                1.0 - 2.0 * (x * x + z * z),
                2.0 * (y * z - r * x),
            ],
            [
                2.0 * (x * z - r * y),
                2.0 * (y * z + r * x),
                1.0 - 2.0 * (x * x + y * y),
            ],
        ])
    }

    /// Canonical axis-angle form with angle in `[0, π]`.
    ///
    /// The lift is first flipped to the `r ≥ 0` side, which replaces a raw
    /// `(u, γ > π)` by `(−u, 2π − γ)`. At angle π both axes describe the same
    /// rotation and the axis is oriented so its first non-negligible component
    /// is positive. Below [`AXIS_UNDEFINED`] the axis is the placeholder
    /// `(0, 0, 1)` and `axis_defined` is false.
    pub fn to_axis_angle(self) -> AxisAngle {
        let q = if self.0.r < 0.0 { -self.0 } else { self.0 };
        let im = q.imag();
        let n = im.norm();
        let angle = 2.0 * n.atan2(q.r);
        if angle < AXIS_UNDEFINED {
            return AxisAngle {
                axis: Vec3::Z,
                angle,
                axis_defined: false,
            };
        }
        let mut axis = im * (1.0 / n);
        if q.r <= ALGEBRAIC {
            let lead = [axis.x, axis.y, axis.z]
                .into_iter()
                .find(|c| c.abs() > ALGEBRAIC)
                .unwrap_or(1.0);
            if lead < 0.0 {
                axis = -axis;
            }
        }
        AxisAngle {
            axis,
            angle,
            axis_defined: true,
        }
    }

    /// Ball-model point: rotation by `ρπ` about `u`.
    pub fn to_ball_point(self) -> BallPoint {
        let aa = self.to_axis_angle();
        BallPoint {
            rho: (aa.angle / std::f64::consts::PI).min(1.0),
            u: aa.axis,
        }
    }

    /// Angle of the rotation `a⁻¹b` in SO(3), in `[0, π]`.
    ///
    /// Equal to `2·arccos(|⟨a, b⟩|)`, evaluated as `4·atan2(|a − b'|, |a + b'|)`
    /// with `b' = ±b` on the same side as `a`, which keeps full precision for
    /// nearly equal rotations.
    pub fn rotation_distance(self, other: UnitQuaternion) -> f64 {
        let a = self.0;
        let b = if a.dot(other.0) < 0.0 { -other.0 } else { other.0 };
        4.0 * (a - b).norm().atan2((a + b).norm())
    }

    pub fn same_rotation(self, other: UnitQuaternion, tol: f64) -> bool {
        self.rotation_distance(other) <= tol
    }

    /// Rotation distance to the identity.
    pub fn angle(self) -> f64 {
        self.rotation_distance(Self::IDENTITY)
    }
}

impl TryFrom<Quaternion> for UnitQuaternion {
    type Error = crate::error::Error;

    fn try_from(q: Quaternion) -> Result<Self> {
        Self::new(q)
    }
}

impl From<UnitQuaternion> for Quaternion {
    fn from(q: UnitQuaternion) -> Self {
        q.0
    }
}

impl Mul for UnitQuaternion {
    type Output = UnitQuaternion;

    /// Composition: `(a·b)` acts as `a` after `b`.
    fn mul(self, b: UnitQuaternion) -> UnitQuaternion {
        UnitQuaternion(self.0 * b.0)
    }
}

impl Neg for UnitQuaternion {
    type Output = UnitQuaternion;
    fn neg(self) -> UnitQuaternion {
        UnitQuaternion(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    /// Sixteen-term expansion of the product from the multiplication table of
    /// the basis, kept independent of the `Mul` implementation.
    fn table_product(a: Quaternion, b: Quaternion) -> Quaternion {
        // basis index 0 = 1, 1 = I, 2 = J, 3 = K; entry = (sign, index)
        const TABLE: [[(f64, usize); 4]; 4] = [
            [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
            [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
            [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
            [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
        ];
        let (ca, cb) = (a.to_array(), b.to_array());
        let mut out = [0.0; 4];
        for i in 0..4 {
            for j in 0..4 {
                let (sign, k) = TABLE[i][j];
                out[k] += sign * ca[i] * cb[j];
            }
        }
        out.into()
    }

    #[test]
    fn basis_products() {
        use Quaternion as Q;
        assert_eq!(Q::I * Q::J, Q::K);
        assert_eq!(Q::J * Q::K, Q::I);
        assert_eq!(Q::K * Q::I, Q::J);
        assert_eq!(Q::J * Q::I, -Q::K);
        assert_eq!(Q::I * Q::I, -Q::ONE);
        assert_eq!(Q::I * Q::J * Q::K, -Q::ONE);
    }

    #[test]
    fn i_plus_j_times_i_minus_j() {
        let a = Quaternion::I + Quaternion::J;
        let b = Quaternion::I - Quaternion::J;
        let expected = table_product(a, b);
        assert_eq!(expected, Quaternion::new(0.0, 0.0, 0.0, -2.0));
        assert_eq!(a * b, expected);
    }

    #[test]
    fn product_matches_table_expansion() {
        let a = Quaternion::new(0.3, -1.2, 2.5, 0.7);
        let b = Quaternion::new(-0.9, 0.4, 0.1, -3.3);
        assert!((a * b).max_abs_diff(table_product(a, b)) < 1e-15);
    }

    #[test]
    fn conjugate_examples() {
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(q.conj(), Quaternion::new(1.0, -2.0, -3.0, -4.0));
        assert_eq!(q.conj().conj(), q);
        assert_eq!(Quaternion::ONE.conj(), Quaternion::ONE);
        let p = Quaternion::new(-0.5, 0.25, 2.0, -1.0);
        assert!(((q * p).conj()).max_abs_diff(table_product(p.conj(), q.conj())) < 1e-12);
    }

    #[test]
    fn unit_construction_rejects_non_unit() {
        assert!(UnitQuaternion::new(Quaternion::new(1.0, 1.0, 0.0, 0.0)).is_err());
        assert!(UnitQuaternion::new(Quaternion::new(1.0 + 1e-10, 0.0, 0.0, 0.0)).is_ok());
        assert!(UnitQuaternion::normalize(Quaternion::default()).is_err());
    }

    #[test]
    fn rotate_examples() {
        let v = Vec3::new(0.3, -0.4, 0.5);
        assert_eq!(UnitQuaternion::IDENTITY.rotate(v), v);
        assert_eq!(UnitQuaternion::I.rotate(Vec3::Z), -Vec3::Z);
        let q = UnitQuaternion::new(Quaternion::new(FRAC_PI_4.cos(), 0.0, 0.0, FRAC_PI_4.sin()))
            .unwrap();
        assert!(q.rotate(Vec3::X).max_abs_diff(Vec3::Y) < 1e-15);
    }

    #[test]
    fn axis_angle_examples() {
        let q = UnitQuaternion::from_axis_angle(Vec3::Z, 0.0).unwrap();
        assert_eq!(q, UnitQuaternion::IDENTITY);
        let q = UnitQuaternion::from_axis_angle(Vec3::X, PI).unwrap();
        assert!(q.get().max_abs_diff(Quaternion::I) < 1e-16);
        assert!(UnitQuaternion::from_axis_angle(Vec3::new(0.0, 2.0, 0.0), 1.0).is_err());

        let aa = UnitQuaternion::IDENTITY.to_axis_angle();
        assert_eq!(aa.angle, 0.0);
        assert!(!aa.axis_defined);
        assert_eq!(aa.axis, Vec3::Z);

        let aa = (-UnitQuaternion::IDENTITY).to_axis_angle();
        assert_eq!(aa.angle, 0.0);

        let aa = UnitQuaternion::I.to_axis_angle();
        assert_eq!(aa.axis, Vec3::X);
        assert!((aa.angle - PI).abs() < 1e-15);
        // −I is the same rotation and gets the same canonical axis.
        assert_eq!((-UnitQuaternion::I).to_axis_angle().axis, Vec3::X);
    }

    #[test]
    fn axis_angle_flips_large_angles() {
        let u = Vec3::new(0.0, 0.6, 0.8);
        let q = UnitQuaternion::from_axis_angle(u, 1.5 * PI).unwrap();
        let aa = q.to_axis_angle();
        assert!(aa.axis.max_abs_diff(-u) < 1e-15);
        assert!((aa.angle - 0.5 * PI).abs() < 1e-14);
    }

    #[test]
    fn matrix_examples() {
        assert!(UnitQuaternion::IDENTITY
            .to_matrix()
            .max_abs_diff(&RotationMatrix::identity())
            < 1e-16);

        // cos t + K sin t at t = π/3 rotates by 2π/3 about z.
        let q = UnitQuaternion::new(Quaternion::new(FRAC_PI_3.cos(), 0.0, 0.0, FRAC_PI_3.sin()))
            .unwrap();
        let (s, c) = (2.0 * FRAC_PI_3).sin_cos();
        let expected = RotationMatrix::from_rows([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]).unwrap();
        assert!(q.to_matrix().max_abs_diff(&expected) < 1e-15);
        assert!((-q).to_matrix().max_abs_diff(&q.to_matrix()) == 0.0);
    }

    #[test]
    fn twist_about_minus_y_reproduces_the_printed_single_twist_matrix() {
        // τ_y(t) = [[cos t, 0, −sin t], [0, 1, 0], [sin t, 0, cos t]] in column
        // convention carries e₁ toward +z, i.e. a ccw turn about −y.
        for &t in &[0.0, 0.4, FRAC_PI_2, 2.0, PI, 5.5] {
            let (s, c) = f64::sin_cos(t);
            let tau = RotationMatrix::from_rows([[c, 0.0, -s], [0.0, 1.0, 0.0], [s, 0.0, c]]).unwrap();
            let q = UnitQuaternion::from_axis_angle(-Vec3::Y, t).unwrap();
            assert!(q.to_matrix().max_abs_diff(&tau) < 1e-15);
            // The +y twist is its transpose.
            let p = UnitQuaternion::from_axis_angle(Vec3::Y, t).unwrap();
            assert!(p.to_matrix().transpose().max_abs_diff(&tau) < 1e-15);
        }
    }

    #[test]
    fn ball_points() {
        assert_eq!(UnitQuaternion::IDENTITY.to_ball_point().rho, 0.0);
        let b = UnitQuaternion::I.to_ball_point();
        assert!((b.rho - 1.0).abs() < 1e-15);
        assert_eq!(b, BallPoint { rho: 1.0, u: -Vec3::X });
        let b = UnitQuaternion::from_axis_angle(Vec3::Z, FRAC_PI_2)
            .unwrap()
            .to_ball_point();
        assert!((b.rho - 0.5).abs() < 1e-15);
        assert!(b.u.max_abs_diff(Vec3::Z) < 1e-15);
    }

    #[test]
    fn distance_examples() {
        let q = UnitQuaternion::normalize(Quaternion::new(0.1, -0.7, 0.2, 0.4)).unwrap();
        assert_eq!(q.rotation_distance(q), 0.0);
        assert_eq!(q.rotation_distance(-q), 0.0);
        assert!(q.same_rotation(-q, 1e-9));
        assert!((UnitQuaternion::IDENTITY.rotation_distance(UnitQuaternion::I) - PI).abs() < 1e-15);
        assert!(!UnitQuaternion::IDENTITY.same_rotation(UnitQuaternion::I, 1e-9));
        let u = Vec3::new(0.36, 0.48, 0.8);
        let a = UnitQuaternion::from_axis_angle(u, PI).unwrap();
        let b = UnitQuaternion::from_axis_angle(-u, PI).unwrap();
        assert!(a.same_rotation(b, 1e-9));
    }

    #[test]
    fn distance_agrees_with_arccos_form() {
        let a = UnitQuaternion::normalize(Quaternion::new(0.3, 0.1, -0.5, 0.8)).unwrap();
        let b = UnitQuaternion::normalize(Quaternion::new(-0.2, 0.9, 0.1, 0.3)).unwrap();
        let reference = 2.0 * a.get().dot(b.get()).abs().min(1.0).acos();
        assert!((a.rotation_distance(b) - reference).abs() < 1e-12);
    }

    #[test]
    fn serde_round_trip_is_bit_exact() {
        let q = UnitQuaternion::normalize(Quaternion::new(0.1, 0.2, 0.3, 0.4)).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        let back: UnitQuaternion = serde_json::from_str(&s).unwrap();
        assert_eq!(back.get().to_array().map(f64::to_bits), q.get().to_array().map(f64::to_bits));
        assert!(serde_json::from_str::<UnitQuaternion>("[2.0, 0.0, 0.0, 0.0]").is_err());
    }
}
