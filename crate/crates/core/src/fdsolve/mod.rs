//! Five-point discretisation of the Dirichlet problem and of the Dirichlet
//! energy on the fine grid.
//!
//! The discrete energy is the edge sum `E_h(v) = Σ (v_i − v_j)²` over grid
//! edges whose endpoints both lie in the closed domain. In two dimensions the
//! `h` factors of `|∇v|² dx` cancel, so no scaling appears.

mod cg;

use serde::Serialize;

pub use cg::{solve_dirichlet, solve_dirichlet_from, SolveReport, DEFAULT_TOL};

use crate::domain::{BoundaryData, Domain};
use crate::error::{Error, Result};
use crate::exhaust::GridSpec;
use crate::geom::Point;
use crate::sum::compensated_sum;

/// Node values on the fine grid, row-major from the bottom row.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub grid: GridSpec,
    pub values: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            values: vec![0.0; grid.len()],
            grid,
        }
    }

    pub fn from_fn(grid: GridSpec, mut f: impl FnMut(usize, Point) -> f64) -> Self {
        let values = (0..grid.len()).map(|n| f(n, grid.position(n))).collect();
        Self { grid, values }
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    fn check_same_grid(&self, other: &ScalarField) -> Result<()> {
        if self.grid == other.grid && self.values.len() == other.values.len() {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// `alpha·self + beta·other`, node by node.
    pub fn combine(&self, alpha: f64, other: &ScalarField, beta: f64) -> Result<ScalarField> {
        self.check_same_grid(other)?;
        Ok(ScalarField {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| alpha * a + beta * b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &ScalarField) -> Result<ScalarField> {
        self.combine(1.0, other, -1.0)
    }

    /// Bilinear interpolation; `None` unless all four surrounding nodes lie
    /// in `closure`.
    pub fn interpolate(&self, p: Point, closure: &[bool]) -> Option<f64> {
        let g = &self.grid;
        let fx = (p.x - g.origin.x) / g.h;
        let fy = (p.y - g.origin.y) / g.h;
        if !(fx >= 0.0 && fy >= 0.0) {
            return None;
        }
        let i = (fx.floor() as usize).min(g.nx - 2);
        let j = (fy.floor() as usize).min(g.ny - 2);
        let (s, t) = (fx - i as f64, fy - j as f64);
        if s > 1.0 || t > 1.0 {
            return None;
        }
        let corners = [g.index(i, j), g.index(i + 1, j), g.index(i, j + 1), g.index(i + 1, j + 1)];
        if !corners.iter().all(|&c| closure[c]) {
            return None;
        }
        let v = |c: usize| self.values[corners[c]];
        Some((1.0 - t) * ((1.0 - s) * v(0) + s * v(1)) + t * ((1.0 - s) * v(2) + s * v(3)))
    }
}

/// Samples the extension at every node of the closed domain. Exterior nodes
/// hold 0 and are never read.
pub fn sample_phi(data: &BoundaryData, grid: &GridSpec, domain: &Domain) -> Result<ScalarField> {
    let mut field = ScalarField::zeros(*grid);
    for (n, slot) in field.values.iter_mut().enumerate() {
        let p = grid.position(n);
        if domain.sdf(p) <= 0.0 {
            let v = data.phi(p);
            if !v.is_finite() {
                return Err(Error::NonFinite { x: p.x, y: p.y });
            }
            *slot = v;
        }
    }
    Ok(field)
}

/// Discrete Dirichlet energy over the edges with both endpoints in `closure`.
pub fn energy(field: &ScalarField, closure: &[bool]) -> f64 {
    edge_sum(&field.grid, closure, |a, b| {
        let d = field.values[a] - field.values[b];
        d * d
    })
}

/// Discrete energy inner product `Σ (u_i − u_j)(w_i − w_j)`.
pub fn energy_inner(u: &ScalarField, w: &ScalarField, closure: &[bool]) -> Result<f64> {
    u.check_same_grid(w)?;
    Ok(edge_sum(&u.grid, closure, |a, b| {
        (u.values[a] - u.values[b]) * (w.values[a] - w.values[b])
    }))
}

fn edge_sum(grid: &GridSpec, closure: &[bool], term: impl Fn(usize, usize) -> f64) -> f64 {
    let (nx, ny) = (grid.nx, grid.ny);
    let terms = (0..ny).flat_map(move |j| (0..nx).map(move |i| (i, j))).flat_map(|(i, j)| {
        let n = j * nx + i;
        let right = (i + 1 < nx && closure[n] && closure[n + 1]).then(|| term(n, n + 1));
        let up = (j + 1 < ny && closure[n] && closure[n + nx]).then(|| term(n, n + nx));
        right.into_iter().chain(up)
    });
    compensated_sum(terms)
}

/// Gradient and value parts of the discrete H¹ distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct H1Distance {
    /// `energy(a − b)`.
    pub grad: f64,
    /// `h² Σ (a − b)²` over the closure nodes.
    pub l2: f64,
}

pub fn h1_distance(a: &ScalarField, b: &ScalarField, closure: &[bool]) -> Result<H1Distance> {
    let diff = a.sub(b)?;
    let h2 = a.grid.h * a.grid.h;
    let l2 = h2 * compensated_sum(
        diff.values
            .iter()
            .zip(closure)
            .filter(|(_, &inside)| inside)
            .map(|(v, _)| v * v),
    );
    Ok(H1Distance {
        grad: energy(&diff, closure),
        l2,
    })
}
