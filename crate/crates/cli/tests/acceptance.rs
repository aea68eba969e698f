//! One line per acceptance criterion; exits nonzero if any fails.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use doubletip_core::analysis::{self, hinge, GridSpec, Landmark};
use doubletip_core::checks;
use doubletip_core::export::MovieGrid;
use doubletip_core::homotopy::{self, HomotopyKind};
use doubletip_core::{sampling, RotationMatrix, Vec3};

struct Outcome {
    passed: bool,
    note: String,
}

fn outcome(passed: bool, note: impl Into<String>) -> Outcome {
    Outcome { passed, note: note.into() }
}

fn within(limit_secs: u64, start: Instant) -> (bool, String) {
    let e = start.elapsed();
    (e <= Duration::from_secs(limit_secs), format!("{:.2}s of {limit_secs}s", e.as_secs_f64()))
}

fn closed(n: usize) -> Vec<f64> {
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

fn formula_fidelity() -> Outcome {
    let start = Instant::now();
    let (mut norm, mut j, mut min_i, mut diff) = (0.0f64, 0.0f64, f64::INFINITY, 0.0f64);
    for a in closed(513) {
        let s = FRAC_PI_2 * a;
        for b in closed(513) {
            let t = TAU * b;
            let q = homotopy::double_tip_lift(s, t).unwrap();
            // Same quaternion through 1 − cos t = 2 sin²(t/2).
            let (c, vc) = (s.cos(), 1.0 - t.cos());
            let expect = [1.0 - c * c * vc, s.sin() * c * vc, 0.0, c * t.sin()];
            let got = q.get().to_array();
            for k in 0..4 {
                diff = diff.max((got[k] - expect[k]).abs());
            }
            norm = norm.max((q.get().norm() - 1.0).abs());
            j = j.max(q.y().abs());
            min_i = min_i.min(q.x());
        }
    }
    let (fast, time) = within(5, start);
    outcome(
        norm <= 1e-12 && j <= 1e-15 && min_i >= -1e-15 && diff <= 1e-12 && fast,
        format!("norm {norm:.1e}, |J| {j:.1e}, min I {min_i:.1e}, formula {diff:.1e}, {time}"),
    )
}

fn boundary_contract() -> Outcome {
    let id = RotationMatrix::identity();
    let (mut twist, mut still) = (0.0f64, 0.0f64);
    for u in closed(257) {
        let t = TAU * u;
        let s = FRAC_PI_2 * u;
        twist = twist.max(homotopy::double_tip_matrix(0.0, t).unwrap().max_abs_diff(&RotationMatrix::about_z(2.0 * t)));
        still = still
            .max(homotopy::double_tip_matrix(FRAC_PI_2, t).unwrap().max_abs_diff(&id))
            .max(homotopy::double_tip_matrix(s, 0.0).unwrap().max_abs_diff(&id))
            .max(homotopy::double_tip_matrix(s, TAU).unwrap().max_abs_diff(&id));
    }
    outcome(twist <= 1e-12 && still <= 1e-12, format!("double twist {twist:.1e}, identity edges {still:.1e}"))
}

fn factorization() -> Outcome {
    let mut worst = 0.0f64;
    for a in closed(65) {
        for b in closed(65) {
            let (s, t) = (FRAC_PI_2 * a, TAU * b);
            let (right, left) = homotopy::double_tip_factors(s, t).unwrap();
            let q = homotopy::double_tip_lift(s, t).unwrap();
            worst = worst.max((right * left).get().max_abs_diff(q.get()));
        }
    }
    outcome(worst <= 1e-12, format!("max deviation {worst:.1e}"))
}

fn concatenation() -> Outcome {
    let z = homotopy::concat_vs_product_check(Vec3::Z, 64).unwrap();
    let y = homotopy::concat_vs_product_check(Vec3::Y, 64).unwrap();
    outcome(z && y, format!("axis z {z}, axis y {y}"))
}

fn injectivity() -> Outcome {
    let start = Instant::now();
    let r = analysis::verify_injectivity(GridSpec::interior(201, 201).unwrap(), 1e-4).unwrap();
    let (fast, time) = within(30, start);
    outcome(r.passed && fast, format!("{} collisions, {time}", r.metric))
}

fn surjectivity() -> Outcome {
    let start = Instant::now();
    let r = analysis::verify_surjectivity(GridSpec::closed(512, 512).unwrap(), 1000, 0.05, 42);
    let (fast, time) = within(60, start);
    outcome(r.passed && fast, format!("worst nearest image {:.4} rad, {time}", r.metric))
}

fn degree() -> Outcome {
    let grid = GridSpec::closed(checks::DEGREE_GRID, checks::DEGREE_GRID).unwrap();
    let mut counts = Vec::new();
    for (v, w) in checks::degree_pairs(42, 50) {
        counts.push(analysis::preimage_clusters(v, w, grid, checks::DEGREE_TOL).unwrap().count());
    }
    let ones = counts.iter().filter(|&&c| c == 1).count();
    outcome(ones == 50, format!("{ones}/50 pairs with a single preimage"))
}

fn every_which_way() -> Outcome {
    let start = Instant::now();
    let pts = sampling::fibonacci_sphere(12);
    let (mut solved, mut worst) = (0, 0.0f64);
    for kind in HomotopyKind::ALL {
        for &v in &pts {
            for &w in &pts {
                if let Ok(sol) = analysis::solve_every_which_way(kind, v, w, 1e-3) {
                    let img = analysis::evaluate(v, kind, sol.s, sol.t).unwrap();
                    worst = worst.max(img.angle_to(w));
                    solved += 1;
                }
            }
        }
    }
    let (fast, time) = within(120, start);
    outcome(solved == 288 && worst <= 1e-3 && fast, format!("{solved}/288 solved, worst {worst:.1e} rad, {time}"))
}

fn hinge_behaviour() -> Outcome {
    let raw = Vec3::new(0.85, 0.4, 0.34278);
    let target = Vec3::new(0.85, -0.4, 0.34278);
    let f = analysis::hinge_fiber(raw.normalized().unwrap(), 360).unwrap();
    let in_p = f.rotations.iter().map(|q| q.y().abs()).fold(0.0, f64::max);
    // Rotations preserve length, so the unnormalized vector lands on the
    // unnormalized reflection.
    let miss = f.rotations.iter().map(|q| q.rotate(raw).max_abs_diff(target)).fold(0.0, f64::max);
    let ends = f.rotations[0].get().max_abs_diff((-f.rotations[359]).get());
    let ok = f.rotations.len() == 360 && in_p <= 1e-9 && miss <= 1e-9 && ends <= 1e-9 && hinge(raw) == target;
    outcome(ok, format!("|J| {in_p:.1e}, miss {miss:.1e}, endpoint antipodality {ends:.1e}"))
}

fn landmark_counts() -> Outcome {
    let (n, tol) = (checks::VISIT_SAMPLES, checks::VISIT_TOL);
    let mut candle = Vec::new();
    let mut thumb = Vec::new();
    for k in 0..=8 {
        let s = PI * k as f64 / 16.0;
        candle.push(analysis::antipode_visits(Landmark::Candle, s, n, tol).unwrap());
        thumb.push(analysis::antipode_visits(Landmark::Thumb, s, n, tol).unwrap());
    }
    let candle_ok = candle.iter().enumerate().all(|(k, &c)| c == usize::from(k == 4));
    let thumb_ok = thumb.iter().enumerate().all(|(k, &c)| c == [2, 2, 2, 2, 1, 0, 0, 0, 0][k]);
    outcome(candle_ok && thumb_ok, format!("candle {candle:?}, thumb {thumb:?}"))
}

fn inversion() -> Outcome {
    let mut rng = sampling::seeded(42);
    let (mut ok, mut worst) = (0, 0.0f64);
    for _ in 0..200 {
        let (s, t) = sampling::random_interior_params(&mut rng);
        let q = homotopy::double_tip_lift(s, t).unwrap();
        if let Ok(sol) = analysis::invert_double_tip(q, 1e-9) {
            let back = homotopy::double_tip_lift(sol.s, sol.t).unwrap();
            let r = back.rotation_distance(q);
            worst = worst.max(r);
            ok += usize::from(r <= 1e-9);
        }
    }
    outcome(ok == 200, format!("{ok}/200 round trips, worst residual {worst:.1e}"))
}

fn cli_contract() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_doubletip");
    let dir = tempfile::tempdir().unwrap();
    let reports = dir.path().join("reports.json");
    let verify = Command::new(bin).args(["verify", "all", "--seed", "42", "--out"]).arg(&reports).output().unwrap();
    let poses = dir.path().join("grid.json");
    let sample = Command::new(bin)
        .args(["sample", "--kind", "D", "--ns", "9", "--nt", "9", "--out"])
        .arg(&poses)
        .output()
        .unwrap();
    let grid: MovieGrid = serde_json::from_slice(&std::fs::read(&poses).unwrap()).unwrap();
    let center = grid.pose(4, 4).unwrap();
    let axis_err = center.axis.map_or(f64::INFINITY, |a| Vec3::from(a).max_abs_diff(Vec3::X));
    let angle_err = (center.angle - PI).abs();
    let n_reports = serde_json::from_slice::<Vec<serde_json::Value>>(&std::fs::read(&reports).unwrap())
        .map_or(0, |r| r.len());
    outcome(
        verify.status.success() && sample.status.success() && axis_err <= 1e-9 && angle_err <= 1e-9 && n_reports == 7,
        format!(
            "verify exit {:?} ({n_reports} reports), center axis err {axis_err:.1e}, angle err {angle_err:.1e}",
            verify.status.code()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("formula fidelity", formula_fidelity),
        ("boundary contract", boundary_contract),
        ("factorization", factorization),
        ("concatenation equals pointwise product", concatenation),
        ("injectivity", injectivity),
        ("surjectivity onto P", surjectivity),
        ("degree evidence", degree),
        ("every-which-way", every_which_way),
        ("hinge behaviour", hinge_behaviour),
        ("landmark counts", landmark_counts),
        ("inversion", inversion),
        ("cli contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        failed += usize::from(!o.passed);
        println!("{} {:>2} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.note);
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
