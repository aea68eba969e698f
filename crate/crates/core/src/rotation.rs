//! Matrix, axis-angle and ball-model representations of SO(3).

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::tolerance::CONSTRUCTION;
use crate::vec3::Vec3;

/// A 3×3 orthogonal matrix with determinant one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationMatrix {
    m: [[f64; 3]; 3],
}

impl RotationMatrix {
    pub fn identity() -> Self {
        Self::from_rows_unchecked([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    /// Counterclockwise rotation about `+z` by `angle`.
    pub fn about_z(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::from_rows_unchecked([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    }

    /// Validates `MᵀM = I` and `det M = 1` within `1e−9`.
    pub fn from_rows(m: [[f64; 3]; 3]) -> Result<Self> {
        let r = Self { m };
        let orth = r.transpose().mul(&r).max_abs_diff(&Self::identity());
        if orth.is_nan() || orth > CONSTRUCTION {
            return Err(invalid(format!("matrix is not orthogonal (residual {orth:e})")));
        }
        let det = r.det();
        if (det - 1.0).abs() > CONSTRUCTION {
            return Err(invalid(format!("matrix determinant is {det}, expected 1")));
        }
        Ok(r)
    }

    pub(crate) fn from_rows_unchecked(m: [[f64; 3]; 3]) -> Self {
        Self { m }
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        self.m
    }

    pub fn row_major(&self) -> [f64; 9] {
        let m = &self.m;
        [
            m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2],
        ]
    }

    pub fn column(&self, j: usize) -> Vec3 {
        Vec3::new(self.m[0][j], self.m[1][j], self.m[2][j])
    }

    pub fn transpose(&self) -> Self {
        let mut t = [[0.0; 3]; 3];
        for (i, row) in self.m.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                t[j][i] = v;
            }
        }
        Self { m: t }
    }

    pub fn mul(&self, o: &RotationMatrix) -> Self {
        let mut p = [[0.0; 3]; 3];
        for (i, row) in p.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.m[i][k] * o.m[k][j]).sum();
            }
        }
        Self { m: p }
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let m = &self.m;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, o: &RotationMatrix) -> f64 {
        self.m
            .iter()
            .flatten()
            .zip(o.m.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Canonical axis-angle form: `angle ∈ [0, π]`, unit `axis`.
///
/// When the angle is below the axis threshold the axis carries no information;
/// it is set to `(0, 0, 1)` and `axis_defined` is false.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisAngle {
    pub axis: Vec3,
    pub angle: f64,
    pub axis_defined: bool,
}

/// Point `ρu` of the closed unit ball, standing for rotation by `ρπ` about `u`.
/// Antipodal points of the boundary sphere are the same rotation.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BallPoint {
    pub rho: f64,
    pub u: Vec3,
}

impl BallPoint {
    pub fn same_point(&self, o: &BallPoint, tol: f64) -> bool {
        if (self.rho - o.rho).abs() > tol {
            return false;
        }
        if self.rho <= tol {
            return true;
        }
        self.u.max_abs_diff(o.u) <= tol || ((1.0 - self.rho) <= tol && self.u.max_abs_diff(-o.u) <= tol)
    }

    /// Cartesian position `ρu` inside the ball.
    pub fn position(&self) -> Vec3 {
        self.u * self.rho
    }
}

impl PartialEq for BallPoint {
    fn eq(&self, o: &BallPoint) -> bool {
        self.same_point(o, CONSTRUCTION)
    }
}
