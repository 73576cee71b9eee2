use std::ops::RangeInclusive;

use serde::Serialize;

use super::{Check, Problem};
use crate::domain::{BoundaryData, Domain};
use crate::error::{Error, Result};
use crate::fdsolve::{energy, h1_distance};

#[derive(Debug, Clone, Serialize)]
pub struct LedgerRow {
    pub k: u32,
    pub num_cells: usize,
    pub area: f64,
    pub free_nodes: usize,
    /// `E(u_k)`.
    pub energy: f64,
    /// `E(u_k) − E(u)`.
    pub gap: f64,
    /// `|E((u−u_k)/2) + E((u+u_k)/2) − ½E(u_k) − ½E(u)|`.
    pub parallelogram_residual: f64,
    /// `energy(u_k − u)`.
    pub h1_grad: f64,
    /// `h² Σ (u_k − u)²`.
    pub l2: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Per-level energy record of one exhaustion run plus its checks.
#[derive(Debug, Clone, Serialize)]
pub struct EnergyLedger {
    pub domain: String,
    pub data: String,
    pub fine_level: u32,
    pub tol: f64,
    /// `E(u)` with `u` the level-`K` minimiser.
    pub e_full: f64,
    /// Energy at the first level of the run, the scale of all slacks.
    pub e_first: f64,
    /// Side length `L` used in the Friedrichs bound.
    pub side: f64,
    pub rows: Vec<LedgerRow>,
    pub checks: Vec<Check>,
}

impl EnergyLedger {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn row(&self, k: u32) -> Option<&LedgerRow> {
        self.rows.iter().find(|r| r.k == k)
    }

    /// Solver slack `10·tol·E_1` applied to every energy comparison.
    pub fn slack(&self) -> f64 {
        10.0 * self.tol * self.e_first
    }

    /// Whether `gap_k > gap_{k+1}` for consecutive levels in `levels`.
    pub fn gaps_strictly_decreasing(&self, levels: RangeInclusive<u32>) -> bool {
        let gaps: Vec<f64> = levels
            .filter_map(|k| self.row(k).map(|r| r.gap))
            .collect();
        gaps.len() >= 2 && gaps.windows(2).all(|w| w[1] < w[0])
    }
}

/// Solves `u_k` for every `k` in `levels` and `u` at the fine level, then
/// checks monotonicity, the strict-convexity bound, the parallelogram
/// identity and the Friedrichs link.
pub fn run_exhaustion_suite(
    domain: &Domain,
    data: &BoundaryData,
    fine_level: u32,
    levels: RangeInclusive<u32>,
    tol: f64,
) -> Result<EnergyLedger> {
    let (first, last) = (*levels.start(), *levels.end());
    if first < 1 || last > fine_level || first > last {
        return Err(Error::Parameter(format!(
            "level range {first}..={last} must lie within 1..={fine_level}"
        )));
    }
    let problem = Problem::new(domain, data, fine_level)?;
    // warm-start all the way up to K so u comes out of the same chain
    let solutions = problem.solve_levels(first, fine_level, tol)?;
    let closure = &problem.closure;
    let u = &solutions.last().expect("at least one level").field;
    let e_full = energy(u, closure);

    let mut rows = Vec::new();
    for sol in solutions.iter().filter(|s| levels.contains(&s.level)) {
        let uk = &sol.field;
        let e_k = energy(uk, closure);
        let half_diff = u.combine(0.5, uk, -0.5)?;
        let half_sum = u.combine(0.5, uk, 0.5)?;
        let parallelogram =
            (energy(&half_diff, closure) + energy(&half_sum, closure) - 0.5 * e_k - 0.5 * e_full).abs();
        let dist = h1_distance(uk, u, closure)?;
        rows.push(LedgerRow {
            k: sol.level,
            num_cells: sol.cells,
            area: sol.area,
            free_nodes: sol.free_nodes,
            energy: e_k,
            gap: e_k - e_full,
            parallelogram_residual: parallelogram,
            h1_grad: dist.grad,
            l2: dist.l2,
            iterations: sol.report.iterations,
            residual: sol.report.residual,
        });
    }

    let bbox = domain.bbox();
    let side = bbox.width().max(bbox.height());
    let mut ledger = EnergyLedger {
        domain: domain.name().to_string(),
        data: data.name().to_string(),
        fine_level,
        tol,
        e_full,
        e_first: rows[0].energy,
        side,
        rows,
        checks: Vec::new(),
    };
    let slack = ledger.slack();
    let rows = &ledger.rows;
    ledger.checks = vec![
        Check::bounded(
            "energy_monotone",
            rows.windows(2).map(|w| (w[1].energy, w[0].energy + slack)),
        ),
        Check::bounded("gap_nonnegative", rows.iter().map(|r| (-r.gap, slack))),
        Check::bounded(
            "convexity_bound",
            rows.iter().map(|r| (0.25 * r.h1_grad, 0.5 * r.gap + slack)),
        ),
        Check::bounded(
            "parallelogram_identity",
            rows.iter()
                .map(|r| (r.parallelogram_residual, 1e-12 * (r.energy + e_full))),
        ),
        Check::bounded(
            "friedrichs_link",
            rows.iter().map(|r| (r.l2, side * side * r.h1_grad)),
        ),
    ];
    Ok(ledger)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{builtin_data, builtin_domain};

    #[test]
    fn saddle_on_the_square_has_no_gaps() {
        let d = Domain::unit_square();
        let data = builtin_data("saddle", &d).unwrap();
        let ledger = run_exhaustion_suite(&d, &data, 7, 2..=7, 1e-10).unwrap();
        assert!(ledger.passed(), "{:?}", ledger.checks);
        for r in &ledger.rows {
            assert!(r.gap.abs() <= ledger.slack(), "{r:?}");
        }
    }

    #[test]
    fn constant_data_has_zero_energy_everywhere() {
        let d = builtin_domain("annulus(0.05,1)").unwrap();
        let data = builtin_data("constant(3)", &d).unwrap();
        let ledger = run_exhaustion_suite(&d, &data, 6, 2..=6, 1e-10).unwrap();
        assert!(ledger.passed());
        assert!(ledger.rows.iter().all(|r| r.energy == 0.0));
    }

    #[test]
    fn cubic_mode_on_the_disc_has_decreasing_gaps() {
        let d = builtin_domain("disc(1)").unwrap();
        let data = builtin_data("fourier_mode(3)", &d).unwrap();
        let ledger = run_exhaustion_suite(&d, &data, 8, 2..=8, 1e-10).unwrap();
        assert!(ledger.passed(), "{:?}", ledger.checks);
        assert!(ledger.gaps_strictly_decreasing(2..=7), "{:#?}", ledger.rows);
        assert!(ledger.row(7).unwrap().gap < ledger.row(2).unwrap().gap);
        assert!(ledger.row(8).unwrap().gap.abs() <= ledger.slack());
    }

    #[test]
    fn rejects_bad_ranges() {
        let d = Domain::unit_square();
        let data = builtin_data("saddle", &d).unwrap();
        assert!(run_exhaustion_suite(&d, &data, 5, 0..=5, 1e-10).is_err());
        assert!(run_exhaustion_suite(&d, &data, 5, 2..=6, 1e-10).is_err());
    }
}
