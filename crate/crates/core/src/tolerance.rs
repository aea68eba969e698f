//! Shared numerical tolerances.
//!
//! Geometric searches carry their own tolerances next to the search.

/// Unit-norm checks when constructing unit quaternions, axes and matrices.
pub const CONSTRUCTION: f64 = 1e-9;

/// Algebraic identities that hold to a few ulps in double precision.
pub const ALGEBRAIC: f64 = 1e-12;

/// Below this rotation angle the axis of a rotation is treated as undefined.
pub const AXIS_UNDEFINED: f64 = 1e-9;

/// Slack accepted on the closed homotopy rectangle, so that `π/2` or `2π`
/// computed in floating point do not fall outside the domain.
pub const DOMAIN_SLACK: f64 = 1e-12;
