//! Quaternion toolkit for the double-tipping nullhomotopy of the double
//! twist in SO(3), with numerical checks of its image, injectivity, degree
//! and every-which-way property.

pub mod analysis;
pub mod checks;
pub mod error;
pub mod export;
pub mod homotopy;
pub mod quaternion;
pub mod rotation;
pub mod sampling;
pub mod tolerance;
pub mod vec3;

pub use error::{Error, Result};
pub use homotopy::{HomotopyKind, HomotopyParams, HomotopySample};
pub use quaternion::{Quaternion, UnitQuaternion};
pub use rotation::{AxisAngle, BallPoint, RotationMatrix};
pub use vec3::Vec3;
