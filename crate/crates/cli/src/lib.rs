//! Command-line driver: configuration, subcommands and report emission.

pub mod config;
pub mod output;
mod suites;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;
use wienerlab_core::exhaust::build_cellset_or_empty;
use wienerlab_core::verify::Problem;
use wienerlab_core::{builtin_data, builtin_domain, energy, node_masks, wos_grid, GridSpec, NodeKind, Point};

pub use config::{ConfigError, RunConfig};
use output::{num, write_csv, write_field, write_json, SolveSummary, SummaryEntry};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_COMPUTE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "wienerlab", version, about = "Dirichlet-principle and harmonic-measure experiments")]
pub struct Cli {
    /// Config file, or `default` for the built-in defaults.
    #[arg(long, global = true, value_name = "path|default")]
    pub config: Option<String>,
    /// Output directory, overriding `out` in the config.
    #[arg(long, global = true, value_name = "dir")]
    pub out: Option<PathBuf>,
    /// Random seed, overriding `seed` in the config.
    #[arg(long, global = true, value_name = "n")]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cell counts, areas and free nodes of every exhaustion level.
    Exhaust,
    /// Solve on the fine grid and dump the field.
    Solve,
    /// Walk-on-spheres estimates at the given points.
    Wos {
        /// Inline points, `x,y;x,y;...`.
        #[arg(long, value_name = "x,y;...")]
        points: Option<String>,
        /// File with one `x y` pair per line.
        #[arg(long, value_name = "path")]
        points_file: Option<PathBuf>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        walks: Option<usize>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Energy ledger and SVG heatmaps of `u` and `|u − φ|` per level.
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Exhaustion,
    Compare,
    Boundary,
    Hadamard,
    Annulus,
    All,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))]
    Config(Vec<ConfigError>),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Compute(#[from] wienerlab_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
            CliError::Compute(_) => EXIT_COMPUTE,
        }
    }
}

pub(crate) fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Outcome of a completed command: one line per failed assertion.
#[derive(Debug, Default)]
pub struct Outcome {
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            EXIT_OK
        } else {
            EXIT_FAILED
        }
    }

    pub(crate) fn record(&mut self, entries: &[SummaryEntry]) {
        self.failures.extend(
            entries
                .iter()
                .filter(|e| !e.pass)
                .map(|e| format!("FAIL {} {}: worst_metric = {:e}", e.suite, e.case, e.worst_metric)),
        );
    }
}

pub fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match cli.config.as_deref() {
        None | Some("default") => RunConfig::default(),
        Some(path) => {
            let path = Path::new(path);
            let text = fs::read_to_string(path).map_err(io_err(path))?;
            RunConfig::parse(&text).map_err(CliError::Config)?
        }
    };
    if let Some(out) = &cli.out {
        cfg.out.clone_from(out);
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

/// Runs one parsed invocation, writing every output under the configured
/// directory.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = load_config(cli)?;
    fs::create_dir_all(&cfg.out).map_err(io_err(&cfg.out))?;
    match &cli.command {
        Command::Exhaust => exhaust(&cfg),
        Command::Solve => solve(&cfg),
        Command::Wos {
            points,
            points_file,
            epsilon,
            walks,
        } => {
            let pts = read_points(points.as_deref(), points_file.as_deref())?;
            wos(&cfg, &pts, *epsilon, *walks)
        }
        Command::Verify { suite } => suites::verify(&cfg, *suite),
        Command::Report => suites::report(&cfg),
    }
}

fn exhaust(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let domain = builtin_domain(&cfg.domain)?;
    let grid = GridSpec::for_domain(&domain, cfg.fine_level)?;
    let mut rows = Vec::new();
    for k in 1..=cfg.fine_level {
        let cells = build_cellset_or_empty(&domain, &grid, k)?;
        if cells.is_empty() {
            eprintln!("note: level {k} has no cell inside {}", domain.name());
        }
        let mask = node_masks(&cells, &grid, &domain)?;
        rows.push(vec![
            k.to_string(),
            cells.len().to_string(),
            num(cells.area()),
            mask.count(NodeKind::Free).to_string(),
        ]);
    }
    let path = cfg.out.join("exhaust.csv");
    write_csv(&path, &["k", "num_cells", "area", "num_free_nodes"], &rows).map_err(io_err(&path))?;
    Ok(Outcome::default())
}

fn solve(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let domain = builtin_domain(&cfg.domain)?;
    let data = builtin_data(&cfg.data, &domain)?;
    let problem = Problem::new(&domain, &data, cfg.fine_level)?;
    let sol = problem.solve_full(cfg.tol)?;
    let summary = SolveSummary {
        iterations: sol.report.iterations,
        residual: sol.report.residual,
        energy: energy(&sol.field, &problem.closure),
    };
    let path = cfg.out.join("field.txt");
    write_field(&path, &sol.field).map_err(io_err(&path))?;
    let path = cfg.out.join("solve.json");
    write_json(&path, &summary).map_err(io_err(&path))?;
    if cfg.emit_svg {
        let path = cfg.out.join("field.svg");
        let svg = output::render_svg(&sol.field, &problem.closure, &format!("u on {}", domain.name()));
        fs::write(&path, svg).map_err(io_err(&path))?;
    }
    println!(
        "{{\"iterations\": {}, \"residual\": {:e}, \"energy\": {}}}",
        summary.iterations, summary.residual, summary.energy
    );
    Ok(Outcome::default())
}

fn parse_pair(text: &str, sep: impl Fn(char) -> bool, origin: &str) -> Result<Point, CliError> {
    let parts: Vec<&str> = text.split(sep).filter(|s| !s.is_empty()).collect();
    match parts.as_slice() {
        [x, y] => match (x.trim().parse::<f64>(), y.trim().parse::<f64>()) {
            (Ok(x), Ok(y)) => Ok(Point::new(x, y)),
            _ => Err(CliError::Usage(format!("{origin}: cannot parse point `{text}`"))),
        },
        _ => Err(CliError::Usage(format!("{origin}: expected two coordinates, got `{text}`"))),
    }
}

/// Points from `x,y;x,y` text and/or a file of whitespace-separated pairs.
pub fn read_points(inline: Option<&str>, file: Option<&Path>) -> Result<Vec<Point>, CliError> {
    let mut points = Vec::new();
    if let Some(text) = inline {
        for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            points.push(parse_pair(item, |c| c == ',', "--points")?);
        }
    }
    if let Some(path) = file {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                let origin = format!("{} line {}", path.display(), n + 1);
                points.push(parse_pair(line, char::is_whitespace, &origin)?);
            }
        }
    }
    if points.is_empty() {
        return Err(CliError::Usage("wos needs --points or --points-file".into()));
    }
    Ok(points)
}

fn wos(cfg: &RunConfig, points: &[Point], epsilon: Option<f64>, walks: Option<usize>) -> Result<Outcome, CliError> {
    let domain = builtin_domain(&cfg.domain)?;
    let data = builtin_data(&cfg.data, &domain)?;
    let mut wcfg = cfg.wos_config(&domain);
    if let Some(e) = epsilon {
        wcfg.epsilon = e;
    }
    if let Some(n) = walks {
        wcfg.n_walks = n;
    }
    let estimates = wos_grid(&domain, &|p| data.g(p), points, &wcfg)?;
    let mut rows = Vec::new();
    for (p, est) in points.iter().zip(&estimates) {
        if est.truncation_warning {
            eprintln!(
                "warning: {} of {} walks from ({}, {}) hit the step cap",
                est.truncated_walks, est.n_walks, p.x, p.y
            );
        }
        rows.push(vec![
            num(p.x),
            num(p.y),
            num(est.mean),
            num(est.stderr),
            num(est.mean_steps),
            est.truncated_walks.to_string(),
        ]);
    }
    let path = cfg.out.join("wos.csv");
    write_csv(&path, &["x", "y", "mean", "stderr", "mean_steps", "truncated"], &rows).map_err(io_err(&path))?;
    Ok(Outcome::default())
}
