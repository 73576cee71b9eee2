//! Experiment suites that replay the energy argument on the discrete level:
//! nested exhaustion solves and their energy ledger, the cross-check of the
//! minimiser against walk-on-spheres, boundary behaviour at regular points,
//! energy growth of lacunary data and the annulus harmonic-measure law.

mod annulus;
mod boundary;
mod compare;
pub mod corpus;
mod exhaustion;
mod hadamard;

use serde::Serialize;

pub use annulus::{annulus_measure_law, AnnulusRow};
pub use boundary::{boundary_convergence_suite, BoundaryRow, BoundaryTable, BOUNDARY_STEPS};
pub use compare::{
    calibrate_discretization, compare_minimizer_vs_perron, ComparisonReport, ProbeResult,
    CALIBRATION_DATA,
};
pub use exhaustion::{run_exhaustion_suite, EnergyLedger, LedgerRow};
pub use hadamard::{hadamard_energy_growth, HadamardRow, MAX_MODE_SPACING};

use crate::domain::{BoundaryData, Domain};
use crate::error::{Error, Result};
use crate::exhaust::{build_cellset_or_empty, closure_mask, node_masks, GridSpec, NodeKind};
use crate::fdsolve::{sample_phi, solve_dirichlet_from, ScalarField, SolveReport};

/// One named assertion of a suite. `worst_metric` is the largest observed
/// excess of the checked quantity over its bound, so `pass ⟺ worst_metric ≤ 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub worst_metric: f64,
}

impl Check {
    /// Builds a check from `(value, bound)` pairs.
    pub fn bounded(name: &str, items: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let worst = items
            .into_iter()
            .map(|(value, bound)| value - bound)
            .fold(f64::NEG_INFINITY, f64::max);
        let worst = if worst == f64::NEG_INFINITY { 0.0 } else { worst };
        Self {
            name: name.to_string(),
            pass: worst <= 0.0 && !worst.is_nan(),
            worst_metric: worst,
        }
    }
}

/// A sampled extension on the fine grid of one domain.
#[derive(Debug, Clone)]
pub struct Problem {
    pub domain: Domain,
    pub data: BoundaryData,
    pub grid: GridSpec,
    pub phi: ScalarField,
    pub closure: Vec<bool>,
}

/// Solution on one exhaustion level.
#[derive(Debug, Clone)]
pub struct LevelSolution {
    pub level: u32,
    pub cells: usize,
    pub area: f64,
    pub free_nodes: usize,
    pub field: ScalarField,
    pub report: SolveReport,
}

impl Problem {
    pub fn new(domain: &Domain, data: &BoundaryData, fine_level: u32) -> Result<Self> {
        let grid = GridSpec::for_domain(domain, fine_level)?;
        Ok(Self {
            phi: sample_phi(data, &grid, domain)?,
            closure: closure_mask(&grid, domain),
            domain: domain.clone(),
            data: data.clone(),
            grid,
        })
    }

    /// Solves on `Ω_level`, warm-started from `warm` when given.
    pub fn solve_level(&self, level: u32, warm: Option<&ScalarField>, tol: f64) -> Result<LevelSolution> {
        let run = || -> Result<LevelSolution> {
            let cells = build_cellset_or_empty(&self.domain, &self.grid, level)?;
            let mask = node_masks(&cells, &self.grid, &self.domain)?;
            let (field, report) = solve_dirichlet_from(&mask, &self.phi, warm.unwrap_or(&self.phi), tol)?;
            Ok(LevelSolution {
                level,
                cells: cells.len(),
                area: cells.area(),
                free_nodes: mask.count(NodeKind::Free),
                field,
                report,
            })
        };
        run().map_err(|e| Error::Level {
            level,
            source: Box::new(e),
        })
    }

    /// Solves levels `first..=last` in order, each warm-started from the
    /// previous one.
    pub fn solve_levels(&self, first: u32, last: u32, tol: f64) -> Result<Vec<LevelSolution>> {
        let mut out: Vec<LevelSolution> = Vec::new();
        for k in first..=last {
            let sol = self.solve_level(k, out.last().map(|s| &s.field), tol)?;
            out.push(sol);
        }
        Ok(out)
    }

    /// The minimiser over the largest discrete class: the level-`K` solve.
    pub fn solve_full(&self, tol: f64) -> Result<LevelSolution> {
        self.solve_level(self.grid.level, None, tol)
    }
}
