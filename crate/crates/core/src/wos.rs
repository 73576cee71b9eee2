//! Walk-on-spheres estimation of the harmonic-measure average
//! `h_g(x) = E[g(X_τ)]`, which for the built-in (everywhere regular) domains
//! is the Perron solution of the Dirichlet problem.
//!
//! Each walk draws from its own ChaCha stream selected by the walk index, so
//! results do not depend on how walks are scheduled across threads.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::sum::compensated_sum;

pub const DEFAULT_N_WALKS: usize = 100_000;
pub const DEFAULT_MAX_STEPS: usize = 10_000;
pub const DEFAULT_SEED: u64 = 42;
/// Default shell thickness as a fraction of the bounding-box diagonal.
pub const DEFAULT_EPSILON_FRACTION: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WosConfig {
    pub epsilon: f64,
    pub max_steps: usize,
    pub n_walks: usize,
    pub seed: u64,
}

impl WosConfig {
    pub fn for_domain(domain: &Domain) -> Self {
        Self {
            epsilon: DEFAULT_EPSILON_FRACTION * domain.bbox().diagonal(),
            max_steps: DEFAULT_MAX_STEPS,
            n_walks: DEFAULT_N_WALKS,
            seed: DEFAULT_SEED,
        }
    }

    pub fn with_walks(self, n_walks: usize) -> Self {
        Self { n_walks, ..self }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Parameter(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.n_walks == 0 {
            return Err(Error::Parameter("n_walks must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WosEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n_walks: usize,
    pub mean_steps: f64,
    pub truncated_walks: usize,
    /// Set when more than 1% of the walks hit the step cap.
    pub truncation_warning: bool,
}

#[derive(Debug, Clone, Copy)]
struct Walk {
    score: f64,
    steps: usize,
    truncated: bool,
}

/// Seed for the `index`-th point of a batch (SplitMix64 finaliser).
pub fn point_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed ^ (index as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Moves `p` onto the zero level set along one finite-difference gradient
/// step of the distance function.
pub fn project_to_boundary(domain: &Domain, p: Point) -> Point {
    let step = 1e-6 * domain.diameter();
    let dx = domain.sdf(p + Point::new(step, 0.0)) - domain.sdf(p - Point::new(step, 0.0));
    let dy = domain.sdf(p + Point::new(0.0, step)) - domain.sdf(p - Point::new(0.0, step));
    let grad = Point::new(dx, dy);
    let norm = grad.norm();
    if norm == 0.0 {
        return p;
    }
    p - grad * (domain.sdf(p) / norm)
}

fn walk<G: Fn(Point) -> f64>(domain: &Domain, g: &G, start: Point, cfg: &WosConfig, index: usize) -> Walk {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let mut p = start;
    let mut steps = 0;
    loop {
        let radius = domain.sdf(p).abs();
        if radius < cfg.epsilon || steps >= cfg.max_steps {
            return Walk {
                score: g(project_to_boundary(domain, p)),
                steps,
                truncated: radius >= cfg.epsilon,
            };
        }
        let angle = TAU * rng.random::<f64>();
        p = p + Point::new(angle.cos(), angle.sin()) * radius;
        steps += 1;
    }
}

/// Estimates `h_g(x)` by `cfg.n_walks` independent walks.
pub fn wos_estimate<G>(domain: &Domain, g: &G, x: Point, cfg: &WosConfig) -> Result<WosEstimate>
where
    G: Fn(Point) -> f64 + Sync,
{
    cfg.validate()?;
    if !(x.is_finite() && domain.sdf(x) < 0.0) {
        return Err(Error::NotInterior { x: x.x, y: x.y });
    }
    let walks: Vec<Walk> = (0..cfg.n_walks)
        .into_par_iter()
        .map(|i| walk(domain, g, x, cfg, i))
        .collect();

    let n = walks.len() as f64;
    let mean = compensated_sum(walks.iter().map(|w| w.score)) / n;
    let variance = if walks.len() > 1 {
        compensated_sum(walks.iter().map(|w| (w.score - mean).powi(2))) / (n - 1.0)
    } else {
        0.0
    };
    let truncated_walks = walks.iter().filter(|w| w.truncated).count();
    Ok(WosEstimate {
        mean,
        stderr: (variance / n).sqrt(),
        n_walks: walks.len(),
        mean_steps: walks.iter().map(|w| w.steps as f64).sum::<f64>() / n,
        truncated_walks,
        truncation_warning: truncated_walks * 100 > walks.len(),
    })
}

/// Runs [`wos_estimate`] at each point, point `i` using the seed
/// [`point_seed`]`(cfg.seed, i)`.
pub fn wos_grid<G>(domain: &Domain, g: &G, points: &[Point], cfg: &WosConfig) -> Result<Vec<WosEstimate>>
where
    G: Fn(Point) -> f64 + Sync,
{
    points
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let sub = WosConfig {
                seed: point_seed(cfg.seed, i),
                ..*cfg
            };
            wos_estimate(domain, g, p, &sub)
        })
        .collect()
}
