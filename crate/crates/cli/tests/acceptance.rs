//! Acceptance gate: every criterion at its stated tolerance, one PASS/FAIL
//! line each. Quantities are recomputed from the raw suite outputs rather
//! than read back from the suites' own checks.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wienerlab::{run, Cli};
use wienerlab_core::exhaust::build_cellset_or_empty;
use wienerlab_core::verify::corpus::{COMPARE_CASES, DOMAINS, EXHAUSTION_DATA};
use wienerlab_core::verify::{
    annulus_measure_law, boundary_convergence_suite, compare_minimizer_vs_perron, hadamard_energy_growth,
    run_exhaustion_suite, EnergyLedger, Problem,
};
use wienerlab_core::{
    builtin_data, builtin_domain, closure_mask, energy, node_masks, GridSpec, Point, ScalarField, WosConfig,
};

const TOL: f64 = 1e-10;
const K: u32 = 8;
const LEVELS: std::ops::RangeInclusive<u32> = 2..=8;
const SLACK_FACTOR: f64 = 10.0;
const PARALLELOGRAM_REL: f64 = 1e-12;
const INFIMUM_FRACTION: f64 = 1e-3;
const FRIEDRICHS_FIELDS: usize = 100;
const N_WALKS: usize = 100_000;
const SEED: u64 = 42;
const STDERR_MULTIPLE: f64 = 3.0;
const EXACTNESS: f64 = 1e-10;
const ANNULUS_LEVEL: u32 = 9;
const ANNULUS_RHOS: [f64; 3] = [0.05, 0.1, 0.2];
const ANNULUS_PROBE: f64 = 0.3;
const ANNULUS_REL: f64 = 0.02;
const HADAMARD_LEVEL: u32 = 9;
const HADAMARD_REL: f64 = 0.10;
const HADAMARD_GROWTH: f64 = 1.25;
const BOUNDARY_FRACTION: f64 = 0.05;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn ledgers() -> Vec<EnergyLedger> {
    let mut out = Vec::new();
    for d in DOMAINS {
        let domain = builtin_domain(d).unwrap();
        for s in EXHAUSTION_DATA {
            let data = builtin_data(s, &domain).unwrap();
            out.push(run_exhaustion_suite(&domain, &data, K, LEVELS, TOL).unwrap());
        }
    }
    out
}

fn c1(ledgers: &[EnergyLedger]) -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    for l in ledgers {
        let slack = SLACK_FACTOR * TOL * l.rows[0].energy;
        let mut energies: Vec<f64> = l.rows.iter().map(|r| r.energy).collect();
        energies.push(l.e_full);
        for w in energies.windows(2) {
            worst = worst.max(w[1] - w[0] - slack);
        }
    }
    outcome(worst <= 0.0, format!("{} cases, max (E_next - E_k - slack) = {worst:.3e}", ledgers.len()))
}

fn c2(ledgers: &[EnergyLedger]) -> Outcome {
    let (mut convex, mut para) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for l in ledgers {
        let slack = SLACK_FACTOR * TOL * l.rows[0].energy;
        for r in &l.rows {
            convex = convex.max(0.25 * r.h1_grad - (0.5 * (r.energy - l.e_full) + slack));
            para = para.max(r.parallelogram_residual - PARALLELOGRAM_REL * (r.energy + l.e_full));
        }
    }
    outcome(
        convex <= 0.0 && para <= 0.0,
        format!("max convexity excess = {convex:.3e}, max parallelogram excess = {para:.3e}"),
    )
}

fn c3(ledgers: &[EnergyLedger]) -> Outcome {
    let l = ledgers
        .iter()
        .find(|l| l.domain == "disc(1)" && l.data == "fourier_mode(2)")
        .expect("disc(1)/fourier_mode(2) in the corpus");
    let gaps: Vec<f64> = l.rows.iter().filter(|r| r.k <= 7).map(|r| r.energy - l.e_full).collect();
    let e1 = l.rows[0].energy;
    let gap7 = *gaps.last().unwrap();
    let strict = gaps.len() == 6 && gaps.windows(2).all(|w| w[1] < w[0]);
    outcome(
        strict && gap7 <= INFIMUM_FRACTION * e1,
        format!("gap_7 = {gap7:.3e} <= {:.3e}, strictly decreasing = {strict}", INFIMUM_FRACTION * e1),
    )
}

fn c4() -> Outcome {
    let (mut masks, mut violations, mut worst) = (0, 0, 0.0_f64);
    for (d, name) in DOMAINS.iter().enumerate() {
        let domain = builtin_domain(name).unwrap();
        let grid = GridSpec::for_domain(&domain, K).unwrap();
        let closure = closure_mask(&grid, &domain);
        let side = grid.side();
        for k in LEVELS {
            let cells = build_cellset_or_empty(&domain, &grid, k).unwrap();
            let mask = node_masks(&cells, &grid, &domain).unwrap();
            let free = mask.free_indices();
            masks += 1;
            let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ ((d as u64) << 32 | u64::from(k)));
            for _ in 0..FRIEDRICHS_FIELDS {
                let mut w = ScalarField::zeros(grid);
                for &i in &free {
                    w.values[i] = rng.random_range(-1.0..1.0);
                }
                let l2 = grid.h * grid.h * w.values.iter().map(|v| v * v).sum::<f64>();
                let bound = side * side * energy(&w, &closure);
                worst = worst.max(l2 / bound);
                if l2 > bound {
                    violations += 1;
                }
            }
        }
    }
    outcome(
        violations == 0,
        format!("{masks} masks x {FRIEDRICHS_FIELDS} fields, {violations} violations, max ratio {worst:.3e}"),
    )
}

fn c5() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for case in COMPARE_CASES.iter().filter(|c| !c.data.starts_with("affine")) {
        let domain = builtin_domain(case.domain).unwrap();
        let data = builtin_data(case.data, &domain).unwrap();
        let cfg = WosConfig::for_domain(&domain).with_walks(N_WALKS).with_seed(SEED);
        let report = compare_minimizer_vs_perron(&domain, &data, K, case.probes, &cfg, TOL).unwrap();
        let mut worst = f64::NEG_INFINITY;
        for p in &report.probes {
            match (p.u_value, p.wos) {
                (Some(u), Some(w)) => {
                    let excess = (u - w.mean).abs() - (STDERR_MULTIPLE * w.stderr + report.c_disc * report.h * report.h);
                    worst = worst.max(excess);
                }
                _ => {
                    pass = false;
                    lines.push(format!("probe ({}, {}) not evaluated", p.point.x, p.point.y));
                }
            }
        }
        pass &= worst <= 0.0 && report.probes.len() == case.probes.len();
        lines.push(format!("{}/{} worst excess {worst:.3e}", case.domain, case.data));
    }
    outcome(pass, lines.join("; "))
}

fn c6() -> Outcome {
    let mut worst = 0.0_f64;
    for d in DOMAINS {
        let domain = builtin_domain(d).unwrap();
        for s in ["affine(0.5,-1,0.25)", "saddle"] {
            let data = builtin_data(s, &domain).unwrap();
            let problem = Problem::new(&domain, &data, K).unwrap();
            for k in LEVELS {
                let sol = problem.solve_level(k, None, TOL).unwrap();
                for (i, &inside) in problem.closure.iter().enumerate() {
                    if inside {
                        let p = problem.grid.position(i);
                        worst = worst.max((sol.field.values[i] - data.phi(p)).abs());
                    }
                }
            }
        }
    }
    outcome(worst <= EXACTNESS, format!("max |u_k - phi| = {worst:.3e}"))
}

fn c7() -> Outcome {
    let domain = builtin_domain("annulus(0.05,1)").unwrap();
    let cfg = WosConfig::for_domain(&domain).with_walks(N_WALKS).with_seed(SEED);
    let rows = annulus_measure_law(&ANNULUS_RHOS, ANNULUS_PROBE, ANNULUS_LEVEL, &cfg, TOL).unwrap();
    let mut pass = rows.len() == ANNULUS_RHOS.len();
    let mut lines = Vec::new();
    for r in &rows {
        let exact = (1.0 / ANNULUS_PROBE).ln() / (1.0 / r.rho).ln();
        let (es, ew) = ((r.solver - exact).abs() / exact, (r.wos.mean - exact).abs() / exact);
        pass &= es <= ANNULUS_REL && ew <= ANNULUS_REL;
        lines.push(format!("rho={} solver {es:.2e} wos {ew:.2e}", r.rho));
    }
    outcome(pass, lines.join("; "))
}

fn factorial(n: u64) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn c8() -> Outcome {
    let rows = hadamard_energy_growth(1..=4, HADAMARD_LEVEL).unwrap();
    let mut pass = rows.len() == 4;
    let mut worst = 0.0_f64;
    for (m, r) in (1u64..).zip(&rows) {
        let exact = PI * (1..=m).map(|n| factorial(n) / (n as f64).powi(4)).sum::<f64>();
        let rel = (r.energy - exact).abs() / exact;
        worst = worst.max(rel);
        pass &= rel <= HADAMARD_REL;
    }
    let ratio = rows[3].energy / rows[0].energy;
    pass &= ratio >= HADAMARD_GROWTH;
    outcome(pass, format!("max rel error {worst:.3e}, E(4)/E(1) = {ratio:.4}"))
}

fn c9() -> Outcome {
    let domain = builtin_domain("disc(1)").unwrap();
    let data = builtin_data("fourier_mode(1)", &domain).unwrap();
    let table = boundary_convergence_suite(&domain, &data, K, Point::new(1.0, 0.0)).unwrap();
    // g = cos θ on the unit circle
    let osc = 2.0;
    let devs: Vec<f64> = table.rows.iter().map(|r| r.deviation).collect();
    let distances_ok = table
        .rows
        .iter()
        .zip(2..=6)
        .all(|(r, m)| (r.distance - 2.0 * 0.5f64.powi(m)).abs() < 1e-12);
    let decreasing = devs.windows(2).all(|w| w[1] < w[0]);
    let last = *devs.last().unwrap();
    outcome(
        devs.len() == 5 && distances_ok && decreasing && last <= BOUNDARY_FRACTION * osc,
        format!(
            "deviations [{}], final <= {:.3}",
            devs.iter().map(|d| format!("{d:.3e}")).collect::<Vec<_>>().join(", "),
            BOUNDARY_FRACTION * osc
        ),
    )
}

fn csv_files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect()
}

fn c10() -> Outcome {
    let runs: Vec<BTreeMap<String, Vec<u8>>> = (0..2)
        .map(|_| {
            let dir = tempfile::tempdir().unwrap();
            let out = dir.path().to_str().unwrap();
            let argv = ["wienerlab", "verify", "--suite", "all", "--config", "default", "--seed", "42", "--out", out];
            let result = run(&Cli::parse_from(argv)).unwrap();
            assert!(result.failures.is_empty(), "{:?}", result.failures);
            csv_files(dir.path())
        })
        .collect();
    let identical = runs[0].len() == 5 && runs[0] == runs[1];
    outcome(identical, format!("{} CSV files compared byte for byte", runs[0].len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let ledgers = ledgers();
    let criteria: Vec<Criterion> = vec![
        ("C1 energy monotonicity", Box::new(|| c1(&ledgers))),
        ("C2 strict-convexity bound and parallelogram identity", Box::new(|| c2(&ledgers))),
        ("C3 infimum convergence", Box::new(|| c3(&ledgers))),
        ("C4 discrete Friedrichs", Box::new(c4)),
        ("C5 minimiser vs walk-on-spheres", Box::new(c5)),
        ("C6 closed-form exactness", Box::new(c6)),
        ("C7 annulus harmonic-measure law", Box::new(c7)),
        ("C8 lacunary energy growth", Box::new(c8)),
        ("C9 boundary convergence", Box::new(c9)),
        ("C10 reproducibility", Box::new(c10)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let t = Instant::now();
        let o = check();
        failed += usize::from(!o.pass);
        println!(
            "{} {name}: {} ({:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {}/{} passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
