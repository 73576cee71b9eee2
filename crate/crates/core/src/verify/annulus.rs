use serde::Serialize;

use super::Problem;
use crate::domain::{builtin_data, Domain};
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::wos::{point_seed, wos_estimate, WosConfig, WosEstimate};

#[derive(Debug, Clone, Serialize)]
pub struct AnnulusRow {
    pub rho: f64,
    pub r_probe: f64,
    /// `log(1/r) / log(1/ρ)`.
    pub exact: f64,
    pub solver: f64,
    pub solver_rel_error: f64,
    pub wos: WosEstimate,
    pub wos_rel_error: f64,
}

/// Harmonic measure of the inner circle of `annulus(ρ, 1)` seen from
/// `(r_probe, 0)`, by the discrete minimiser and by walk-on-spheres.
pub fn annulus_measure_law(
    rhos: &[f64],
    r_probe: f64,
    fine_level: u32,
    wos_cfg: &WosConfig,
    tol: f64,
) -> Result<Vec<AnnulusRow>> {
    rhos.iter()
        .enumerate()
        .map(|(i, &rho)| {
            if !(rho > 0.0 && rho < r_probe && r_probe < 1.0) {
                return Err(Error::Parameter(format!(
                    "need 0 < rho < r_probe < 1, got rho = {rho}, r_probe = {r_probe}"
                )));
            }
            let domain = Domain::annulus(rho, 1.0)?;
            let data = builtin_data("annulus_indicator", &domain)?;
            let problem = Problem::new(&domain, &data, fine_level)?;
            let h = problem.grid.h;
            if rho < 4.0 * h {
                return Err(Error::Resolution(format!(
                    "inner radius {rho} is below 4h = {} at level {fine_level}",
                    4.0 * h
                )));
            }
            let probe = Point::new(r_probe, 0.0);
            let u = problem.solve_full(tol)?.field;
            let solver = u
                .interpolate(probe, &problem.closure)
                .ok_or_else(|| Error::Resolution(format!("probe radius {r_probe} is off the grid")))?;
            let exact = (1.0 / r_probe).ln() / (1.0 / rho).ln();
            let cfg = wos_cfg.with_seed(point_seed(wos_cfg.seed, i));
            let wos = wos_estimate(&domain, &|p| data.g(p), probe, &cfg)?;
            Ok(AnnulusRow {
                rho,
                r_probe,
                exact,
                solver,
                solver_rel_error: (solver - exact).abs() / exact,
                wos_rel_error: (wos.mean - exact).abs() / exact,
                wos,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        let cfg = WosConfig::for_domain(&Domain::annulus(0.2, 1.0).unwrap()).with_walks(20_000);
        let rows = annulus_measure_law(&[0.2], 0.3, 7, &cfg, 1e-10).unwrap();
        assert!((rows[0].exact - 0.748_070_363_587).abs() < 1e-9);
        assert!(rows[0].solver_rel_error < 0.02, "{rows:?}");
        assert!(rows[0].wos_rel_error < 0.02, "{rows:?}");
    }

    #[test]
    fn refuses_unresolved_holes() {
        let cfg = WosConfig::for_domain(&Domain::annulus(0.05, 1.0).unwrap());
        assert!(matches!(
            annulus_measure_law(&[0.05], 0.3, 6, &cfg, 1e-10),
            Err(Error::Resolution(_))
        ));
        assert!(annulus_measure_law(&[0.4], 0.3, 6, &cfg, 1e-10).is_err());
    }
}
