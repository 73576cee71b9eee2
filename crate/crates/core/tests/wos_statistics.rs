use std::f64::consts::PI;

use wienerlab_core::{builtin_data, builtin_domain, wos_estimate, Point, WosConfig};

/// `(1/2π) ∫ P(x, θ) cos θ dθ` by the trapezoidal rule, which is spectrally
/// accurate for the periodic Poisson kernel.
fn poisson_integral_of_cos(x: Point) -> f64 {
    let n = 4096;
    let r2 = x.x * x.x + x.y * x.y;
    (0..n)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / n as f64;
            let dist2 = (x.x - t.cos()).powi(2) + (x.y - t.sin()).powi(2);
            (1.0 - r2) / dist2 * t.cos()
        })
        .sum::<f64>()
        / n as f64
}

#[test]
fn disc_cosine_data_matches_the_poisson_integral() {
    let d = builtin_domain("disc(1)").unwrap();
    let x = Point::new(0.5, 0.0);
    let oracle = poisson_integral_of_cos(x);
    assert!((oracle - 0.5).abs() < 1e-12);
    let cfg = WosConfig::for_domain(&d);
    let est = wos_estimate(&d, &|p: Point| p.y.atan2(p.x).cos(), x, &cfg).unwrap();
    assert!((est.mean - oracle).abs() <= 3.0 * est.stderr, "{est:?}");
    assert!(est.stderr < 3e-3);
}

#[test]
fn repeated_seeds_cover_the_exact_value() {
    let d = builtin_domain("disc(1)").unwrap();
    let x = Point::new(0.5, 0.0);
    let base = WosConfig::for_domain(&d).with_walks(4_000);
    let covered = (0..100u64)
        .filter(|&s| {
            let est = wos_estimate(&d, &|p: Point| p.x, x, &base.with_seed(1000 + s)).unwrap();
            (est.mean - 0.5).abs() <= 3.0 * est.stderr
        })
        .count();
    assert!(covered >= 95, "{covered}/100");
}

#[test]
fn stderr_halves_when_walks_quadruple() {
    let d = builtin_domain("l_shape").unwrap();
    let data = builtin_data("fourier_mode(2)", &d).unwrap();
    let x = Point::new(0.3, 0.2);
    let cfg = WosConfig::for_domain(&d);
    let small = wos_estimate(&d, &|p| data.g(p), x, &cfg.with_walks(10_000)).unwrap();
    let large = wos_estimate(&d, &|p| data.g(p), x, &cfg.with_walks(40_000)).unwrap();
    let ratio = small.stderr / large.stderr;
    assert!((ratio - 2.0).abs() <= 0.4, "{ratio}");
}

#[test]
fn walks_from_the_centre_are_short() {
    let d = builtin_domain("disc(1)").unwrap();
    let cfg = WosConfig { epsilon: 1e-4, ..WosConfig::for_domain(&d) }.with_walks(20_000);
    let est = wos_estimate(&d, &|p: Point| p.x, Point::ORIGIN, &cfg).unwrap();
    assert!(est.mean_steps < 40.0, "{}", est.mean_steps);
    assert_eq!(est.truncated_walks, 0);
}

#[test]
fn annulus_harmonic_measure() {
    let d = builtin_domain("annulus(0.05,1)").unwrap();
    let data = builtin_data("annulus_indicator", &d).unwrap();
    let x = Point::new(0.3, 0.0);
    let est = wos_estimate(&d, &|p| data.g(p), x, &WosConfig::for_domain(&d)).unwrap();
    let exact = (1.0f64 / 0.3).ln() / 20f64.ln();
    assert!((est.mean - exact).abs() <= 3.0 * est.stderr, "{est:?} vs {exact}");
}
