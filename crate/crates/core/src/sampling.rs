//! Deterministic sample generators. Every random draw in the crate goes
//! through a seeded ChaCha stream so reports reproduce exactly.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quaternion::UnitQuaternion;
use crate::vec3::Vec3;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point on S² (Archimedes: uniform height, uniform longitude).
pub fn random_unit_vector<R: Rng>(rng: &mut R) -> Vec3 {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let lon: f64 = rng.random_range(0.0..TAU);
    let rho = (1.0 - z * z).max(0.0).sqrt();
    Vec3::new(rho * lon.cos(), rho * lon.sin(), z)
}

/// Rotation with axis `(cos φ, 0, sin φ)`, `φ` uniform in `(−π/2, π/2]`,
/// angle uniform in `[0, 2π]`.
pub fn random_rotation_in_p<R: Rng>(rng: &mut R) -> UnitQuaternion {
    let phi = FRAC_PI_2 - PI * rng.random::<f64>();
    let theta = TAU * rng.random::<f64>();
    UnitQuaternion::from_axis_angle(Vec3::new(phi.cos(), 0.0, phi.sin()), theta)
        .expect("axis is unit by construction")
}

/// Uniform point of the open parameter rectangle `(0, π/2) × (0, 2π)`.
pub fn random_interior_params<R: Rng>(rng: &mut R) -> (f64, f64) {
    loop {
        let s = FRAC_PI_2 * rng.random::<f64>();
        let t = TAU * rng.random::<f64>();
        if s > 0.0 && t > 0.0 {
            return (s, t);
        }
    }
}

/// `n` nearly evenly spread points on S² along a golden-angle spiral.
pub fn fibonacci_sphere(n: usize) -> Vec<Vec3> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let rho = (1.0 - z * z).sqrt();
            let lon = golden * i as f64;
            Vec3::new(rho * lon.cos(), rho * lon.sin(), z)
        })
        .collect()
}
