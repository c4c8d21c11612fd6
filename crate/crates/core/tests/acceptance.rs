//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Run with `cargo test -p harmodisk --test acceptance`.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use harmodisk::boundary_data::theta_of;
use harmodisk::corpus::{builtin, CORPUS, SMOOTH_CORPUS};
use harmodisk::estimates::derivative_bound;
use harmodisk::fourier::{default_nodes, l1_boundary_norm};
use harmodisk::oracle::{abel_sum, poisson_eval, polar_partial_sum};
use harmodisk::study::{loglog_slope, measured_sup_error, run_study, StudyConfig, NOISE_FLOOR};
use harmodisk::{
    compute_spectrum, expand, pullback, BoundaryData, CartesianPoint, DiskGeometry, HarmonicApproximant,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn unit() -> DiskGeometry {
    DiskGeometry::unit()
}

fn approx(b: &BoundaryData, n: usize) -> HarmonicApproximant {
    HarmonicApproximant::new(compute_spectrum(b, n, default_nodes(n)).unwrap())
}

fn corpus_approx(name: &str, n: usize) -> (BoundaryData, HarmonicApproximant) {
    let b = builtin(name, unit()).unwrap();
    let u = approx(&b, n);
    (b, u)
}

/// Uniform point in the closed disk of radius `r`; every tenth point is on the rim.
fn disk_point(rng: &mut ChaCha8Rng, r: f64, idx: usize) -> CartesianPoint {
    let t = rng.gen_range(-PI..PI);
    let rho = if idx % 10 == 0 { r } else { r * rng.gen::<f64>().sqrt() };
    CartesianPoint::new(rho * t.cos(), rho * t.sin())
}

fn open_disk_point(rng: &mut ChaCha8Rng, r: f64) -> CartesianPoint {
    let t = rng.gen_range(-PI..PI);
    let rho = r * rng.gen::<f64>().sqrt() * (1.0 - 1e-9);
    CartesianPoint::new(rho * t.cos(), rho * t.sin())
}

fn exactness() -> Outcome {
    let start = Instant::now();
    type Poly = fn(f64, f64) -> f64;
    let cases: [(&str, Poly, usize); 6] = [
        ("x", |x, _| x, 1),
        ("y", |_, y| y, 1),
        ("x^2-y^2", |x, y| x * x - y * y, 2),
        ("2xy", |x, y| 2.0 * x * y, 2),
        ("Re z^3", |x, y| x * x * x - 3.0 * x * y * y, 3),
        ("Im z^3", |x, y| 3.0 * x * x * y - y * y * y, 3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for (_, g, degree) in cases {
        let b = pullback(g, unit()).unwrap();
        for n in [degree, degree + 5] {
            let u = approx(&b, n);
            for i in 0..1000 {
                let p = disk_point(&mut rng, 1.0, i);
                worst = worst.max((u.eval(p) - g(p.x, p.y)).abs());
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-10 && elapsed < Duration::from_secs(1),
        format!("max abs err {worst:.2e} (tol 1e-10), {:.3} s (limit 1 s)", elapsed.as_secs_f64()),
    )
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    let mut worst_case = "";
    for name in SMOOTH_CORPUS {
        let (b, u) = corpus_approx(name, 128);
        let mut points: Vec<CartesianPoint> = (0..64)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / 64.0;
                CartesianPoint::new(0.9 * t.cos(), 0.9 * t.sin())
            })
            .collect();
        points.extend((0..200).map(|i| disk_point(&mut rng, 0.9, i)));
        for p in points {
            let d = (u.eval(p) - poisson_eval(&b, p, None).unwrap()).abs();
            if d > worst {
                worst = d;
                worst_case = name;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-8 && elapsed < Duration::from_secs(30),
        format!(
            "max |series - Poisson| {worst:.2e} on {worst_case} (tol 1e-8), {:.2} s (limit 30 s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn harmonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst_ratio: f64 = 0.0;
    let mut worst_case = String::new();
    for name in CORPUS {
        for n in [8, 32, 128] {
            let (_, u) = corpus_approx(name, n);
            let scale = u.spectrum().coefficient_scale().max(f64::MIN_POSITIVE);
            for i in 0..1000 {
                let p = disk_point(&mut rng, 1.0, i);
                let lap = u.eval_derivative(p, 2, 0).unwrap() + u.eval_derivative(p, 0, 2).unwrap();
                let ratio = lap.abs() / scale;
                if ratio > worst_ratio {
                    worst_ratio = ratio;
                    worst_case = format!("{name}, n={n}");
                }
            }
        }
    }
    if worst_case.is_empty() {
        worst_case = "exact cancellation in every case".into();
    }
    outcome(
        worst_ratio <= 1e-10,
        format!("max |Δũ_n| / coefficient scale {worst_ratio:.2e} ({worst_case}) (tol 1e-10)"),
    )
}

fn taylor_certificate() -> Outcome {
    const EPS: f64 = f64::EPSILON;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let approximants: Vec<_> = CORPUS.iter().map(|name| (name, corpus_approx(name, 32).1)).collect();
    let mut violations = 0;
    let mut rounding_limited = 0;
    let mut worst_use: f64 = 0.0;
    for trial in 0..100 {
        let (_, u) = &approximants[trial % approximants.len()];
        let x0 = open_disk_point(&mut rng, 0.9);
        let order = rng.gen_range(1..=12);
        let expansion = expand(u, x0, order).unwrap();
        let l = expansion.inner_radius();
        let kappa = rng.gen_range(0.0..1.0 / 3.0);
        let dir = rng.gen_range(-PI..PI);
        let h = [kappa * l * dir.cos(), kappa * l * dir.sin()];
        let series = expansion.eval_series(h, false).unwrap();
        let bound = series.remainder.expect("certificate inside the region").value;
        let exact = u.eval(x0.offset(h[0], h[1]));
        let measured = (exact - series.value).abs();

        // floating-point floor of the comparison itself
        let terms: f64 = expansion
            .entries()
            .map(|(a1, a2, c)| (c * h[0].powi(a1 as i32) * h[1].powi(a2 as i32)).abs())
            .sum();
        let coef_sum: f64 = u.spectrum().a().iter().chain(u.spectrum().b()).map(|v| v.abs()).sum();
        let slack = 64.0 * EPS * (terms + coef_sum);

        if measured > bound + slack {
            violations += 1;
        } else if measured > bound {
            rounding_limited += 1;
        }
        if bound > slack {
            worst_use = worst_use.max(measured / bound);
        }
    }
    outcome(
        violations == 0,
        format!(
            "{violations} violations in 100 trials; {rounding_limited} within the rounding floor; \
             max measured/bound {worst_use:.3} where bound exceeds rounding"
        ),
    )
}

fn derivative_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut violations = 0;
    let mut checks = 0;
    let mut worst: f64 = 0.0;
    for name in CORPUS {
        for n in [8, 32, 128] {
            let (b, u) = corpus_approx(name, n);
            let l1 = l1_boundary_norm(&b, u.spectrum().nodes()).unwrap().angular;
            for rel in [0.0, 0.25, 0.5, 0.75] {
                let points: Vec<_> = (0..100).map(|i| disk_point(&mut rng, rel, i)).collect();
                for s in 0..=5u32 {
                    for a1 in 0..=s {
                        let a2 = s - a1;
                        let bound = derivative_bound(l1, a1, a2, rel, 1.0).unwrap().value;
                        for p in &points {
                            let d = u.eval_derivative(*p, a1, a2).unwrap().abs();
                            checks += 1;
                            if d > bound {
                                violations += 1;
                            }
                            worst = worst.max(d / bound);
                        }
                    }
                }
            }
        }
    }
    outcome(
        violations == 0,
        format!("{violations} violations in {checks} checks; max |D ũ_n| / bound {worst:.3}"),
    )
}

fn rate_shape() -> Outcome {
    let degrees = [8usize, 16, 32, 64, 128];
    let mut lines = Vec::new();
    let mut pass = true;
    let mut asserted = 0;
    let proxy_n = 4 * 128;
    for name in CORPUS {
        let b = builtin(name, unit()).unwrap();
        let proxy = approx(&b, proxy_n);
        let floor = NOISE_FLOOR * proxy.spectrum().coefficient_scale().max(1.0);
        let Some(s) = b.smoothness() else {
            lines.push(format!("{name}: no regularity class, not asserted"));
            continue;
        };

        let pts: Vec<(f64, f64)> = degrees
            .iter()
            .map(|&n| (n as f64, measured_sup_error(&proxy, n, 1.0, 512)))
            .filter(|(_, e)| *e > floor)
            .collect();
        let target = if s.k >= 1 { -2.0 + 0.15 } else { -s.alpha + 0.15 };
        if pts.len() < 2 {
            lines.push(format!("{name}: boundary error below rounding from n = 8 on"));
        } else {
            let slope = loglog_slope(&pts);
            let ok = slope <= target;
            pass &= ok;
            asserted += 1;
            lines.push(format!(
                "{name}: slope {slope:.3} (need <= {target:.2}) {}",
                if ok { "ok" } else { "FAIL" }
            ));
        }

        let n = 16;
        let inner = measured_sup_error(&proxy, n, 0.3, 512);
        let outer = measured_sup_error(&proxy, n, 0.9, 512);
        let want = (0.3f64 / 0.9).powi(n as i32 + 1) / 3.0;
        let ratio = inner / outer;
        // the ratio clause is asserted for Lipschitz-or-better data with a
        // tail above rounding at 0.3R
        let lipschitz = s.k >= 1 || s.alpha >= 1.0;
        if inner <= floor {
            lines.push(format!("{name}: interior error at 0.3R below rounding"));
        } else if lipschitz {
            let ok = ratio >= want;
            pass &= ok;
            asserted += 1;
            lines.push(format!(
                "{name}: err(0.3R)/err(0.9R) = {:.3} x (1/3)^17/3 {}",
                ratio / want,
                if ok { "ok" } else { "FAIL" }
            ));
        } else {
            lines.push(format!(
                "{name}: err(0.3R)/err(0.9R) = {:.3} x (1/3)^17/3 (Hölder exponent {}, logged only)",
                ratio / want,
                s.alpha
            ));
        }
    }
    outcome(pass, format!("{asserted} checks asserted\n      {}", lines.join("\n      ")))
}

fn maximum_principle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let grid = 16384;
    let mut violations = 0;
    let mut checks = 0;
    for name in CORPUS {
        let b = builtin(name, unit()).unwrap();
        let values = b.values_on_grid(grid);
        let (lo, hi) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(*v), h.max(*v)));
        for n in [8, 32, 128] {
            let u = approx(&b, n);
            let eps = values
                .iter()
                .enumerate()
                .map(|(j, f)| {
                    let t = -PI + 2.0 * PI * j as f64 / grid as f64;
                    (u.eval(CartesianPoint::new(t.cos(), t.sin())) - f).abs()
                })
                .fold(0.0, f64::max);
            for _ in 0..1000 {
                let v = u.eval(open_disk_point(&mut rng, 1.0));
                checks += 1;
                if v < lo - eps || v > hi + eps {
                    violations += 1;
                }
            }
        }
    }
    outcome(violations == 0, format!("{violations} of {checks} interior values outside [min g - ε_n, max g + ε_n]"))
}

fn path_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for name in CORPUS {
        let (_, u) = corpus_approx(name, 64);
        for i in 0..1000 {
            let p = disk_point(&mut rng, 1.0, i);
            let Ok(theta) = theta_of(p) else { continue };
            let polar = polar_partial_sum(u.spectrum(), p.norm(), theta).unwrap();
            worst = worst.max((polar - u.eval(p)).abs());
        }
    }
    let mut abel_worst: f64 = 0.0;
    for _ in 0..1000 {
        let m = rng.gen_range(1..=256);
        let a: Vec<f64> = (0..=m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let b: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let direct: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        let magnitude: f64 = a.iter().zip(&b).map(|(x, y)| (x * y).abs()).sum();
        abel_worst = abel_worst.max((abel_sum(&a, &b).unwrap() - direct).abs() / magnitude);
    }
    outcome(
        worst <= 1e-11 && abel_worst <= 1e-12,
        format!(
            "polar vs recurrence max diff {worst:.2e} (tol 1e-11); \
             Abel vs direct max rel err {abel_worst:.2e} (tol 1e-12, relative to Σ|a_k b_k|)"
        ),
    )
}

fn determinism() -> Outcome {
    let mut same = true;
    for name in ["hat", "abs_sin_half:0.5", "square"] {
        let b = builtin(name, unit()).unwrap();
        let cfg = StudyConfig::new(vec![8, 16, 32, 64], vec![0.0, 0.3, 0.9, 1.0]);
        let render = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| {
                let s = run_study(&b, &cfg).unwrap();
                (s.to_csv().unwrap(), s.reports_json().unwrap())
            })
        };
        let first = render(4);
        same &= render(4) == first && render(1) == first && render(3) == first;
    }
    outcome(same, "study CSV and report JSON byte-identical across repeated runs and thread counts")
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("exactness on polynomial traces", exactness),
        ("oracle agreement (smooth corpus, n = 128, |p| <= 0.9)", oracle_agreement),
        ("harmonicity of ũ_n", harmonicity),
        ("Taylor remainder certificate", taylor_certificate),
        ("derivative bounds", derivative_bounds),
        ("convergence-rate shape", rate_shape),
        ("maximum-principle sandwich", maximum_principle),
        ("path equivalence", path_equivalence),
        ("determinism of study output", determinism),
    ];
    let mut failed = 0;
    for (i, (label, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!("{} [{}] {label}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
