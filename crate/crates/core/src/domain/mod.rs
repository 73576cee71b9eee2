//! Closed-form planar domains and the boundary data posed on them.
//!
//! Every built-in shape carries an exact signed distance function, which the
//! walk-on-spheres estimator relies on for its sphere radii, and an exact
//! closed-cell containment test, which drives the dyadic exhaustion.

mod data;
mod parse;

use std::f64::consts::{PI, SQRT_2};
use std::fmt;

pub use data::{builtin_data, hadamard_partial_sum, BoundaryData, DataKind, HADAMARD_MAX_TERMS};

use crate::error::{Error, Result};
use crate::geom::{Point, Rect};
use parse::Call;

pub const DOMAIN_NAMES: &str = "unit_square, disc(r), annulus(rho,1), l_shape";

/// The built-in shapes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    /// `(0,1)²`.
    UnitSquare,
    /// Open disc of the given radius centred at the origin.
    Disc { radius: f64 },
    /// `{inner < |x| < outer}` centred at the origin.
    Annulus { inner: f64, outer: f64 },
    /// `(0,1)² ∖ [½,1]²`, reentrant corner at `(½,½)`.
    LShape,
}

const UNIT: Rect = Rect::new(Point::new(0.0, 0.0), Point::new(1.0, 1.0));
const NOTCH: Rect = Rect::new(Point::new(0.5, 0.5), Point::new(1.0, 1.0));
const L_BOTTOM: Rect = Rect::new(Point::new(0.0, 0.0), Point::new(1.0, 0.5));
const L_LEFT: Rect = Rect::new(Point::new(0.0, 0.0), Point::new(0.5, 1.0));

/// A bounded open planar domain. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    shape: Shape,
    name: String,
}

/// Parses one of the built-in domain identifiers, e.g. `"disc(1)"`.
pub fn builtin_domain(spec: &str) -> Result<Domain> {
    let call = Call::parse("domain", spec)?;
    match call.name.as_str() {
        "unit_square" => {
            call.expect_arity("domain", 0)?;
            Ok(Domain::unit_square())
        }
        "disc" => {
            call.expect_arity("domain", 1)?;
            Domain::disc(call.args[0])
        }
        "annulus" => {
            call.expect_arity("domain", 2)?;
            Domain::annulus(call.args[0], call.args[1])
        }
        "l_shape" => {
            call.expect_arity("domain", 0)?;
            Ok(Domain::l_shape())
        }
        _ => Err(Error::UnknownName {
            kind: "domain",
            name: call.name,
            valid: DOMAIN_NAMES,
        }),
    }
}

impl Domain {
    pub fn unit_square() -> Self {
        Self {
            shape: Shape::UnitSquare,
            name: "unit_square".into(),
        }
    }

    pub fn l_shape() -> Self {
        Self {
            shape: Shape::LShape,
            name: "l_shape".into(),
        }
    }

    pub fn disc(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Parameter(format!("disc radius must be positive, got {radius}")));
        }
        Ok(Self {
            shape: Shape::Disc { radius },
            name: format!("disc({radius})"),
        })
    }

    pub fn annulus(inner: f64, outer: f64) -> Result<Self> {
        if !(outer > 0.0 && outer.is_finite()) {
            return Err(Error::Parameter(format!("annulus outer radius must be positive, got {outer}")));
        }
        if !(inner > 0.0 && inner < outer) {
            return Err(Error::Parameter(format!(
                "annulus inner radius must lie in (0, {outer}), got {inner}"
            )));
        }
        Ok(Self {
            shape: Shape::Annulus { inner, outer },
            name: format!("annulus({inner},{outer})"),
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Open-set membership, evaluated from the closed-form description rather
    /// than from the distance function.
    pub fn inside(&self, p: Point) -> bool {
        match self.shape {
            Shape::UnitSquare => p.x > 0.0 && p.x < 1.0 && p.y > 0.0 && p.y < 1.0,
            Shape::Disc { radius } => p.x * p.x + p.y * p.y < radius * radius,
            Shape::Annulus { inner, outer } => {
                let r2 = p.x * p.x + p.y * p.y;
                r2 > inner * inner && r2 < outer * outer
            }
            Shape::LShape => {
                p.x > 0.0 && p.x < 1.0 && p.y > 0.0 && p.y < 1.0 && !(p.x >= 0.5 && p.y >= 0.5)
            }
        }
    }

    /// Exact signed distance to the boundary, negative inside.
    pub fn sdf(&self, p: Point) -> f64 {
        match self.shape {
            Shape::UnitSquare => UNIT.sdf(p),
            Shape::Disc { radius } => p.norm() - radius,
            Shape::Annulus { inner, outer } => {
                let r = p.norm();
                (r - outer).max(inner - r)
            }
            Shape::LShape => {
                // Inside, the intersection form is exact; outside, the union
                // of the two arms is.
                let interior = UNIT.sdf(p).max(-NOTCH.sdf(p));
                if interior < 0.0 {
                    interior
                } else {
                    L_BOTTOM.sdf(p).min(L_LEFT.sdf(p))
                }
            }
        }
    }

    pub fn bbox(&self) -> Rect {
        match self.shape {
            Shape::UnitSquare | Shape::LShape => UNIT,
            Shape::Disc { radius: r } | Shape::Annulus { outer: r, .. } => {
                Rect::new(Point::new(-r, -r), Point::new(r, r))
            }
        }
    }

    pub fn diameter(&self) -> f64 {
        match self.shape {
            Shape::UnitSquare | Shape::LShape => SQRT_2,
            Shape::Disc { radius: r } | Shape::Annulus { outer: r, .. } => 2.0 * r,
        }
    }

    pub fn area(&self) -> f64 {
        match self.shape {
            Shape::UnitSquare => 1.0,
            Shape::Disc { radius } => PI * radius * radius,
            Shape::Annulus { inner, outer } => PI * (outer * outer - inner * inner),
            Shape::LShape => 0.75,
        }
    }

    pub fn perimeter(&self) -> f64 {
        match self.shape {
            Shape::UnitSquare | Shape::LShape => 4.0,
            Shape::Disc { radius } => 2.0 * PI * radius,
            Shape::Annulus { inner, outer } => 2.0 * PI * (inner + outer),
        }
    }

    /// True when the closed rectangle lies in the open domain.
    pub fn contains_closed_rect(&self, cell: &Rect) -> bool {
        let strictly_in_unit = || {
            cell.min.x > 0.0 && cell.max.x < 1.0 && cell.min.y > 0.0 && cell.max.y < 1.0
        };
        let corners_within = |radius: f64| {
            cell.corners()
                .iter()
                .all(|c| c.x * c.x + c.y * c.y < radius * radius)
        };
        match self.shape {
            Shape::UnitSquare => strictly_in_unit(),
            Shape::Disc { radius } => corners_within(radius),
            Shape::Annulus { inner, outer } => {
                corners_within(outer) && cell.distance_to(Point::ORIGIN) > inner
            }
            Shape::LShape => strictly_in_unit() && (cell.max.x < 0.5 || cell.max.y < 0.5),
        }
    }

    /// `n` points spread along the boundary, by arc length for each component.
    pub fn boundary_points(&self, n: usize) -> Vec<Point> {
        let circle = |radius: f64, count: usize| {
            (0..count).map(move |i| {
                let t = 2.0 * PI * i as f64 / count as f64;
                Point::new(radius * t.cos(), radius * t.sin())
            })
        };
        match self.shape {
            Shape::UnitSquare => polyline(&UNIT.corners(), n),
            Shape::LShape => polyline(
                &[
                    Point::new(0.0, 0.0),
                    Point::new(1.0, 0.0),
                    Point::new(1.0, 0.5),
                    Point::new(0.5, 0.5),
                    Point::new(0.5, 1.0),
                    Point::new(0.0, 1.0),
                ],
                n,
            ),
            Shape::Disc { radius } => circle(radius, n).collect(),
            Shape::Annulus { inner, outer } => {
                let n_outer = n / 2 + n % 2;
                circle(outer, n_outer).chain(circle(inner, n / 2)).collect()
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Evenly spaced points along the closed polygon through `vertices`.
fn polyline(vertices: &[Point], n: usize) -> Vec<Point> {
    let edges: Vec<(Point, Point)> = vertices
        .iter()
        .zip(vertices.iter().cycle().skip(1))
        .map(|(&a, &b)| (a, b))
        .collect();
    let total: f64 = edges.iter().map(|(a, b)| a.distance(*b)).sum();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut s = total * i as f64 / n as f64;
        for &(a, b) in &edges {
            let len = a.distance(b);
            if s <= len {
                out.push(a + (b - a) * (s / len));
                break;
            }
            s -= len;
        }
    }
    out
}
