//! The standard test corpus run by the `verify` suites.

use crate::geom::Point;

pub const DOMAINS: [&str; 4] = ["unit_square", "disc(1)", "annulus(0.05,1)", "l_shape"];

pub const EXHAUSTION_DATA: [&str; 5] = [
    "affine(0.5,-1,0.25)",
    "saddle",
    "fourier_mode(1)",
    "fourier_mode(2)",
    "fourier_mode(3)",
];

pub struct CompareCase {
    pub domain: &'static str,
    pub data: &'static str,
    pub probes: &'static [Point],
}

pub const COMPARE_CASES: [CompareCase; 4] = [
    CompareCase {
        domain: "disc(1)",
        data: "fourier_mode(1)",
        probes: &[Point::new(0.5, 0.0), Point::new(0.0, 0.3), Point::new(-0.2, -0.2)],
    },
    CompareCase {
        domain: "unit_square",
        data: "saddle",
        probes: &[
            Point::new(0.5, 0.5),
            Point::new(0.25, 0.25),
            Point::new(0.75, 0.25),
            Point::new(0.25, 0.75),
            Point::new(0.6, 0.8),
        ],
    },
    CompareCase {
        domain: "unit_square",
        data: "affine(0.5,-1,0.25)",
        probes: &[Point::new(0.5, 0.5), Point::new(0.2, 0.7)],
    },
    CompareCase {
        domain: "l_shape",
        data: "fourier_mode(2)",
        probes: &[
            Point::new(0.25, 0.25),
            Point::new(0.75, 0.25),
            Point::new(0.25, 0.75),
            Point::new(0.4, 0.4),
            Point::new(0.1, 0.1),
        ],
    },
];

pub struct BoundaryCase {
    pub domain: &'static str,
    pub data: &'static str,
    pub xi: Point,
}

pub const BOUNDARY_CASES: [BoundaryCase; 3] = [
    BoundaryCase {
        domain: "disc(1)",
        data: "fourier_mode(1)",
        xi: Point::new(1.0, 0.0),
    },
    BoundaryCase {
        domain: "unit_square",
        data: "saddle",
        xi: Point::new(1.0, 0.5),
    },
    BoundaryCase {
        domain: "disc(1)",
        data: "constant(7)",
        xi: Point::new(0.0, -1.0),
    },
];

pub const HADAMARD_TERMS: std::ops::RangeInclusive<u32> = 1..=4;
/// Level needed to resolve mode 4! = 24 on the unit disc.
pub const HADAMARD_LEVEL: u32 = 9;

pub const ANNULUS_RHOS: [f64; 3] = [0.05, 0.1, 0.2];
pub const ANNULUS_PROBE: f64 = 0.3;
pub const ANNULUS_LEVEL: u32 = 9;
