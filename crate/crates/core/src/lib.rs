//! Discrete Dirichlet principle on dyadic inner exhaustions of planar
//! domains, with a walk-on-spheres estimator of the harmonic-measure
//! (Perron–Wiener) solution as an independent cross-check.
//!
//! * [`domain`]: closed-form domains, boundary data and extensions.
//! * [`exhaust`]: dyadic cell exhaustion `Ω₁ ⊂ Ω₂ ⊂ … ⊂ Ω` and node masks.
//! * [`fdsolve`]: five-point Dirichlet solves and the discrete energy.
//! * [`wos`]: walk-on-spheres estimation.
//! * [`verify`]: experiment suites and their checks.

pub mod domain;
pub mod error;
pub mod exhaust;
pub mod fdsolve;
pub mod geom;
pub mod sum;
pub mod verify;
pub mod wos;

pub use domain::{builtin_data, builtin_domain, hadamard_partial_sum, BoundaryData, DataKind, Domain, Shape};
pub use error::{Error, Result};
pub use exhaust::{build_cellset, closure_mask, node_masks, CellSet, GridSpec, NodeKind, NodeMask};
pub use fdsolve::{energy, h1_distance, sample_phi, solve_dirichlet, solve_dirichlet_from, ScalarField, SolveReport};
pub use geom::{Point, Rect};
pub use wos::{wos_estimate, wos_grid, WosConfig, WosEstimate};
