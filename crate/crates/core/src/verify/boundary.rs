use serde::Serialize;

use super::{Check, Problem};
use crate::domain::{BoundaryData, Domain};
use crate::error::{Error, Result};
use crate::fdsolve::DEFAULT_TOL;
use crate::geom::Point;

/// Exponents `m` of the inward distances `d = 2⁻ᵐ·diam`.
pub const BOUNDARY_STEPS: std::ops::RangeInclusive<i32> = 2..=6;

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryRow {
    pub m: i32,
    pub distance: f64,
    pub point: Point,
    pub u_value: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryTable {
    pub domain: String,
    pub data: String,
    pub xi: Point,
    /// Unit inward direction used for the approach.
    pub direction: Point,
    /// The boundary is not smooth at `xi`; `direction` is the angle bisector.
    pub corner: bool,
    pub g_xi: f64,
    pub oscillation: f64,
    pub rows: Vec<BoundaryRow>,
    pub checks: Vec<Check>,
}

impl BoundaryTable {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Approaches the boundary point `xi` along the inward normal and records
/// `|u(x_d) − g(xi)|` for the level-`K` minimiser.
pub fn boundary_convergence_suite(
    domain: &Domain,
    data: &BoundaryData,
    fine_level: u32,
    xi: Point,
) -> Result<BoundaryTable> {
    let diam = domain.diameter();
    if domain.sdf(xi).abs() > 1e-9 * diam {
        return Err(Error::Parameter(format!("({}, {}) is not a boundary point", xi.x, xi.y)));
    }
    // Central differences of the exact distance give the unit normal on
    // smooth parts and a shortened bisector at corners.
    let step = 1e-6 * diam;
    let grad = Point::new(
        domain.sdf(xi + Point::new(step, 0.0)) - domain.sdf(xi - Point::new(step, 0.0)),
        domain.sdf(xi + Point::new(0.0, step)) - domain.sdf(xi - Point::new(0.0, step)),
    ) * (0.5 / step);
    let norm = grad.norm();
    if norm < 1e-6 {
        return Err(Error::Parameter(format!(
            "no inward direction at ({}, {})",
            xi.x, xi.y
        )));
    }
    let corner = (norm - 1.0).abs() > 1e-3;
    let direction = -grad * (1.0 / norm);

    let problem = Problem::new(domain, data, fine_level)?;
    let u = problem.solve_full(DEFAULT_TOL)?.field;
    let g_xi = data.g(xi);

    let mut rows = Vec::new();
    for m in BOUNDARY_STEPS {
        let distance = diam * 2f64.powi(-m);
        let point = xi + direction * distance;
        let u_value = u.interpolate(point, &problem.closure).ok_or_else(|| {
            Error::Resolution(format!(
                "({}, {}) at distance {distance} is not surrounded by grid nodes of the domain",
                point.x, point.y
            ))
        })?;
        rows.push(BoundaryRow {
            m,
            distance,
            point,
            u_value,
            deviation: (u_value - g_xi).abs(),
        });
    }

    let samples: Vec<f64> = domain.boundary_points(4096).into_iter().map(|p| data.g(p)).collect();
    let oscillation = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - samples.iter().cloned().fold(f64::INFINITY, f64::min);
    // round-off floor for data that are constant
    let floor = 1e-12 * g_xi.abs().max(1.0);
    let last = rows.last().expect("non-empty step range").deviation;
    let checks = vec![
        Check::bounded(
            "deviation_decreasing",
            rows.windows(2).map(|w| (w[1].deviation, w[0].deviation + floor)),
        ),
        Check::bounded("final_deviation", [(last, 0.05 * oscillation + floor)]),
    ];

    Ok(BoundaryTable {
        domain: domain.name().to_string(),
        data: data.name().to_string(),
        xi,
        direction,
        corner,
        g_xi,
        oscillation,
        rows,
        checks,
    })
}
