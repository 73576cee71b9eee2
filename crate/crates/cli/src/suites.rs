//! `verify` and `report` orchestration.

use std::fs;
use std::path::Path;

use wienerlab_core::verify::corpus::{
    ANNULUS_LEVEL, ANNULUS_PROBE, ANNULUS_RHOS, BOUNDARY_CASES, COMPARE_CASES, DOMAINS, EXHAUSTION_DATA,
    HADAMARD_LEVEL, HADAMARD_TERMS,
};
use wienerlab_core::verify::{
    annulus_measure_law, boundary_convergence_suite, compare_minimizer_vs_perron, hadamard_energy_growth,
    run_exhaustion_suite, Check, EnergyLedger, Problem,
};
use wienerlab_core::{builtin_data, builtin_domain, Domain};

use crate::output::{num, opt_num, render_svg, write_csv, write_json, SummaryEntry};
use crate::{io_err, CliError, Outcome, RunConfig, Suite};

/// Case whose gaps must shrink below `INFIMUM_FRACTION · E_first`.
const INFIMUM_CASE: (&str, &str) = ("disc(1)", "fourier_mode(2)");
const INFIMUM_FRACTION: f64 = 1e-3;
const HADAMARD_REL_TOL: f64 = 0.10;
const HADAMARD_MIN_GROWTH: f64 = 1.25;
const ANNULUS_REL_TOL: f64 = 0.02;

const LEDGER_HEADER: [&str; 13] = [
    "domain",
    "data",
    "k",
    "num_cells",
    "area",
    "free_nodes",
    "energy",
    "gap",
    "parallelogram_residual",
    "h1_grad",
    "l2",
    "iterations",
    "residual",
];

fn entry(suite: &str, case: String, check: &Check) -> SummaryEntry {
    SummaryEntry {
        suite: suite.into(),
        case: format!("{case} {}", check.name),
        pass: check.pass,
        worst_metric: check.worst_metric,
    }
}

fn ledger_rows(ledger: &EnergyLedger) -> Vec<Vec<String>> {
    ledger
        .rows
        .iter()
        .map(|r| {
            vec![
                ledger.domain.clone(),
                ledger.data.clone(),
                r.k.to_string(),
                r.num_cells.to_string(),
                num(r.area),
                r.free_nodes.to_string(),
                num(r.energy),
                num(r.gap),
                num(r.parallelogram_residual),
                num(r.h1_grad),
                num(r.l2),
                r.iterations.to_string(),
                num(r.residual),
            ]
        })
        .collect()
}

/// The last gap before `K` is small and gaps shrink strictly up to it.
pub fn infimum_check(ledger: &EnergyLedger) -> Check {
    let last = ledger.fine_level - 1;
    let first = ledger.rows.first().map_or(last, |r| r.k);
    let gap = ledger.row(last).map_or(f64::INFINITY, |r| r.gap);
    let mut check = Check::bounded("infimum_convergence", [(gap, INFIMUM_FRACTION * ledger.e_first)]);
    if !ledger.gaps_strictly_decreasing(first..=last) {
        check.pass = false;
        check.worst_metric = check.worst_metric.max(0.0);
    }
    check
}

fn exhaustion(cfg: &RunConfig, dir: &Path, summary: &mut Vec<SummaryEntry>) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for domain_spec in DOMAINS {
        let domain = builtin_domain(domain_spec)?;
        for data_spec in EXHAUSTION_DATA {
            let data = builtin_data(data_spec, &domain)?;
            let ledger = run_exhaustion_suite(&domain, &data, cfg.fine_level, cfg.levels(), cfg.tol)?;
            let case = format!("{domain_spec}/{data_spec}");
            summary.extend(ledger.checks.iter().map(|c| entry("exhaustion", case.clone(), c)));
            if (domain_spec, data_spec) == INFIMUM_CASE && cfg.fine_level > cfg.k_range.0 + 1 {
                summary.push(entry("exhaustion", case, &infimum_check(&ledger)));
            }
            rows.extend(ledger_rows(&ledger));
        }
    }
    let path = dir.join("exhaustion.csv");
    write_csv(&path, &LEDGER_HEADER, &rows).map_err(io_err(&path))
}

fn compare(cfg: &RunConfig, dir: &Path, summary: &mut Vec<SummaryEntry>) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for case in &COMPARE_CASES {
        let domain = builtin_domain(case.domain)?;
        let data = builtin_data(case.data, &domain)?;
        let report = compare_minimizer_vs_perron(
            &domain,
            &data,
            cfg.fine_level,
            case.probes,
            &cfg.wos_config(&domain),
            cfg.tol,
        )?;
        for p in &report.probes {
            if let Some(reason) = &p.skipped {
                eprintln!("note: {}/{} skipped {reason}", case.domain, case.data);
            }
            rows.push(vec![
                case.domain.to_string(),
                case.data.to_string(),
                num(p.point.x),
                num(p.point.y),
                opt_num(p.u_value),
                opt_num(p.wos.map(|w| w.mean)),
                opt_num(p.wos.map(|w| w.stderr)),
                opt_num(p.wos.map(|w| w.mean_steps)),
                p.wos.map(|w| w.truncated_walks.to_string()).unwrap_or_default(),
                num(p.discretization_bound),
                p.pass.to_string(),
                p.skipped.is_some().to_string(),
            ]);
        }
        summary.push(SummaryEntry {
            suite: "compare".into(),
            case: format!("{}/{}", case.domain, case.data),
            pass: report.passed(),
            worst_metric: report.worst_excess(),
        });
    }
    let path = dir.join("compare.csv");
    let header = [
        "domain",
        "data",
        "x",
        "y",
        "u_value",
        "wos_mean",
        "wos_stderr",
        "mean_steps",
        "truncated",
        "discretization_bound",
        "pass",
        "skipped",
    ];
    write_csv(&path, &header, &rows).map_err(io_err(&path))
}

fn boundary(cfg: &RunConfig, dir: &Path, summary: &mut Vec<SummaryEntry>) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for case in &BOUNDARY_CASES {
        let domain = builtin_domain(case.domain)?;
        let data = builtin_data(case.data, &domain)?;
        let table = boundary_convergence_suite(&domain, &data, cfg.fine_level, case.xi)?;
        let name = format!("{}/{} at ({}, {})", case.domain, case.data, case.xi.x, case.xi.y);
        summary.extend(table.checks.iter().map(|c| entry("boundary", name.clone(), c)));
        for r in &table.rows {
            rows.push(vec![
                case.domain.to_string(),
                case.data.to_string(),
                num(case.xi.x),
                num(case.xi.y),
                r.m.to_string(),
                num(r.distance),
                num(r.point.x),
                num(r.point.y),
                num(r.u_value),
                num(r.deviation),
            ]);
        }
    }
    let path = dir.join("boundary.csv");
    let header = ["domain", "data", "xi_x", "xi_y", "m", "distance", "x", "y", "u_value", "deviation"];
    write_csv(&path, &header, &rows).map_err(io_err(&path))
}

/// Hadamard rows plus the accuracy and growth checks.
pub fn hadamard_checks(rows: &[wienerlab_core::verify::HadamardRow]) -> Vec<Check> {
    let growth = match (rows.first(), rows.last()) {
        (Some(a), Some(b)) => b.energy / a.energy,
        _ => f64::NAN,
    };
    vec![
        Check::bounded("energy_rel_error", rows.iter().map(|r| (r.rel_error, HADAMARD_REL_TOL))),
        Check::bounded("energy_growth", [(HADAMARD_MIN_GROWTH, growth)]),
    ]
}

fn hadamard(cfg: &RunConfig, dir: &Path, summary: &mut Vec<SummaryEntry>) -> Result<(), CliError> {
    let level = cfg.fine_level.max(HADAMARD_LEVEL);
    let table = hadamard_energy_growth(HADAMARD_TERMS, level)?;
    let case = format!("disc(1) M={}..{} K={level}", HADAMARD_TERMS.start(), HADAMARD_TERMS.end());
    summary.extend(hadamard_checks(&table).iter().map(|c| entry("hadamard", case.clone(), c)));
    let rows: Vec<Vec<String>> = table
        .iter()
        .map(|r| {
            vec![
                r.terms.to_string(),
                r.max_mode.to_string(),
                num(r.energy),
                num(r.exact),
                num(r.rel_error),
                opt_num(r.growth_ratio),
            ]
        })
        .collect();
    let path = dir.join("hadamard.csv");
    let header = ["terms", "max_mode", "energy", "exact", "rel_error", "growth_ratio"];
    write_csv(&path, &header, &rows).map_err(io_err(&path))
}

fn annulus(cfg: &RunConfig, dir: &Path, summary: &mut Vec<SummaryEntry>) -> Result<(), CliError> {
    let level = cfg.fine_level.max(ANNULUS_LEVEL);
    let wcfg = cfg.wos_config(&Domain::annulus(ANNULUS_RHOS[0], 1.0)?);
    let table = annulus_measure_law(&ANNULUS_RHOS, ANNULUS_PROBE, level, &wcfg, cfg.tol)?;
    let mut rows = Vec::new();
    for r in &table {
        let case = format!("annulus({},1) r={}", r.rho, r.r_probe);
        for (name, err) in [("solver_rel_error", r.solver_rel_error), ("wos_rel_error", r.wos_rel_error)] {
            let check = Check::bounded(name, [(err, ANNULUS_REL_TOL)]);
            summary.push(entry("annulus", case.clone(), &check));
        }
        rows.push(vec![
            num(r.rho),
            num(r.r_probe),
            num(r.exact),
            num(r.solver),
            num(r.solver_rel_error),
            num(r.wos.mean),
            num(r.wos.stderr),
            num(r.wos_rel_error),
        ]);
    }
    let path = dir.join("annulus.csv");
    let header = [
        "rho",
        "r_probe",
        "exact",
        "solver",
        "solver_rel_error",
        "wos_mean",
        "wos_stderr",
        "wos_rel_error",
    ];
    write_csv(&path, &header, &rows).map_err(io_err(&path))
}

pub fn verify(cfg: &RunConfig, suite: Suite) -> Result<Outcome, CliError> {
    let dir = cfg.out.as_path();
    let mut summary = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Exhaustion {
        exhaustion(cfg, dir, &mut summary)?;
    }
    if all || suite == Suite::Compare {
        compare(cfg, dir, &mut summary)?;
    }
    if all || suite == Suite::Boundary {
        boundary(cfg, dir, &mut summary)?;
    }
    if all || suite == Suite::Hadamard {
        hadamard(cfg, dir, &mut summary)?;
    }
    if all || suite == Suite::Annulus {
        annulus(cfg, dir, &mut summary)?;
    }
    if cfg.emit_svg {
        heatmaps(cfg, dir)?;
    }
    let path = dir.join("summary.json");
    write_json(&path, &summary).map_err(io_err(&path))?;
    let mut outcome = Outcome::default();
    outcome.record(&summary);
    Ok(outcome)
}

/// `u_k` and `|u_k − φ|` for every configured level of the configured case.
fn heatmaps(cfg: &RunConfig, dir: &Path) -> Result<(), CliError> {
    let domain = builtin_domain(&cfg.domain)?;
    let data = builtin_data(&cfg.data, &domain)?;
    let problem = Problem::new(&domain, &data, cfg.fine_level)?;
    for sol in problem.solve_levels(cfg.k_range.0, cfg.k_range.1, cfg.tol)? {
        let k = sol.level;
        let err = sol.field.sub(&problem.phi)?;
        let err = wienerlab_core::ScalarField {
            values: err.values.iter().map(|v| v.abs()).collect(),
            ..err
        };
        for (name, field, title) in [
            (format!("u_k{k}.svg"), &sol.field, format!("u_{k}")),
            (format!("err_k{k}.svg"), &err, format!("|u_{k} - phi|")),
        ] {
            let path = dir.join(name);
            fs::write(&path, render_svg(field, &problem.closure, &title)).map_err(io_err(&path))?;
        }
    }
    Ok(())
}

pub fn report(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let dir = cfg.out.as_path();
    let domain = builtin_domain(&cfg.domain)?;
    let data = builtin_data(&cfg.data, &domain)?;
    let ledger = run_exhaustion_suite(&domain, &data, cfg.fine_level, cfg.levels(), cfg.tol)?;
    let path = dir.join("ledger.csv");
    write_csv(&path, &LEDGER_HEADER, &ledger_rows(&ledger)).map_err(io_err(&path))?;
    let case = format!("{}/{}", cfg.domain, cfg.data);
    let summary: Vec<SummaryEntry> = ledger.checks.iter().map(|c| entry("exhaustion", case.clone(), c)).collect();
    let path = dir.join("summary.json");
    write_json(&path, &summary).map_err(io_err(&path))?;
    heatmaps(cfg, dir)?;
    for r in &ledger.rows {
        println!("k={:2} cells={:6} E={:.12e} gap={:.6e}", r.k, r.num_cells, r.energy, r.gap);
    }
    let mut outcome = Outcome::default();
    outcome.record(&summary);
    Ok(outcome)
}
