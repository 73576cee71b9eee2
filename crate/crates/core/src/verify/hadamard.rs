use std::ops::RangeInclusive;

use serde::Serialize;

use crate::domain::{builtin_domain, hadamard_partial_sum};
use crate::error::{Error, Result};
use crate::exhaust::{closure_mask, GridSpec};
use crate::fdsolve::{energy, sample_phi};

/// Largest admissible `mode · h`; finer modes are not resolved by the grid.
pub const MAX_MODE_SPACING: f64 = 0.1;

#[derive(Debug, Clone, Serialize)]
pub struct HadamardRow {
    pub terms: u32,
    pub max_mode: u64,
    /// Discrete energy of the sampled partial sum.
    pub energy: f64,
    /// `π Σ n!/n⁴`.
    pub exact: f64,
    pub rel_error: f64,
    /// `E(M) / E(M−1)` for all but the first row.
    pub growth_ratio: Option<f64>,
}

/// Discrete energies of the truncated lacunary series on the unit disc.
pub fn hadamard_energy_growth(terms: RangeInclusive<u32>, fine_level: u32) -> Result<Vec<HadamardRow>> {
    let domain = builtin_domain("disc(1)")?;
    let grid = GridSpec::for_domain(&domain, fine_level)?;
    let closure = closure_mask(&grid, &domain);
    let mut rows: Vec<HadamardRow> = Vec::new();
    for m in terms {
        let data = hadamard_partial_sum(m)?;
        let mode = data.max_mode();
        if mode as f64 * grid.h > MAX_MODE_SPACING {
            return Err(Error::Resolution(format!(
                "mode {mode} of hadamard_partial({m}) needs {mode}·h <= {MAX_MODE_SPACING}, \
                 but h = {} at level {fine_level}",
                grid.h
            )));
        }
        let e = energy(&sample_phi(&data, &grid, &domain)?, &closure);
        let exact = data.hadamard_exact_energy().expect("lacunary data");
        rows.push(HadamardRow {
            terms: m,
            max_mode: mode,
            energy: e,
            exact,
            rel_error: (e - exact).abs() / exact,
            growth_ratio: rows.last().map(|prev| e / prev.energy),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refuses_unresolved_modes() {
        // 4! · 2/256 = 0.1875
        assert!(matches!(hadamard_energy_growth(1..=4, 8), Err(Error::Resolution(_))));
        assert!(hadamard_energy_growth(1..=3, 8).is_ok());
    }

    #[test]
    fn first_terms_are_close_to_the_series() {
        let rows = hadamard_energy_growth(1..=2, 8).unwrap();
        assert!(rows[0].rel_error < 0.05, "{rows:?}");
        assert!(rows[0].growth_ratio.is_none());
        let ratio = rows[1].growth_ratio.unwrap();
        assert!((ratio - 1.125).abs() < 0.02, "{ratio}");
    }
}
