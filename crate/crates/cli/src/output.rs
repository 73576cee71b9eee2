//! File emitters: fixed-precision CSV, field dumps, JSON reports and SVG
//! heatmaps.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use wienerlab_core::ScalarField;

/// Largest number of heatmap rectangles along either axis.
const SVG_MAX_CELLS: usize = 128;
const SVG_PIXELS: usize = 512;

/// 17 significant digits; round-trips every `f64`.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()
}

/// Header `nx ny h x0 y0`, then `ny` rows of `nx` values from the bottom row up.
pub fn write_field(path: &Path, field: &ScalarField) -> io::Result<()> {
    let g = &field.grid;
    let mut out = io::BufWriter::new(fs::File::create(path)?);
    writeln!(out, "{} {} {} {} {}", g.nx, g.ny, num(g.h), num(g.origin.x), num(g.origin.y))?;
    for j in 0..g.ny {
        let row: Vec<String> = (0..g.nx).map(|i| num(field.at(i, j))).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    out.flush()
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryEntry {
    pub suite: String,
    pub case: String,
    pub pass: bool,
    pub worst_metric: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolveSummary {
    pub iterations: usize,
    pub residual: f64,
    pub energy: f64,
}

/// Blue through white to red.
fn ramp(step: u8) -> (u8, u8, u8) {
    let t = f64::from(step) / 255.0;
    let (a, b) = if t < 0.5 {
        ((59.0, 76.0, 192.0), (221.0, 221.0, 221.0))
    } else {
        ((221.0, 221.0, 221.0), (180.0, 4.0, 38.0))
    };
    let s = if t < 0.5 { 2.0 * t } else { 2.0 * t - 1.0 };
    let mix = |x: f64, y: f64| (x + (y - x) * s).round() as u8;
    (mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

/// Heatmap of `field` over the nodes where `closure` holds, one rectangle
/// per (possibly subsampled) node.
pub fn render_svg(field: &ScalarField, closure: &[bool], title: &str) -> String {
    let g = &field.grid;
    let stride = g.nx.max(g.ny).div_ceil(SVG_MAX_CELLS).max(1);
    let (cols, rows) = (g.nx.div_ceil(stride), g.ny.div_ceil(stride));
    let cell = (SVG_PIXELS / cols.max(rows)).max(1);

    let visible = || {
        (0..g.ny).step_by(stride).flat_map(move |j| {
            (0..g.nx)
                .step_by(stride)
                .filter(move |&i| closure[g.index(i, j)])
                .map(move |i| (i, j, field.at(i, j)))
        })
    };
    let (lo, hi) = visible().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, _, v)| {
        (lo.min(v), hi.max(v))
    });

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" shape-rendering="crispEdges">"#,
        cols * cell,
        rows * cell
    );
    let _ = writeln!(svg, "<title>{title} [{lo:.6e}, {hi:.6e}]</title>");
    for (i, j, v) in visible() {
        let step = if hi > lo {
            (((v - lo) / (hi - lo)) * 255.0).round().clamp(0.0, 255.0) as u8
        } else {
            0
        };
        let (r, gr, b) = ramp(step);
        let _ = writeln!(
            svg,
            r##"<rect x="{}" y="{}" width="{cell}" height="{cell}" fill="#{r:02x}{gr:02x}{b:02x}"/>"##,
            (i / stride) * cell,
            (rows - 1 - j / stride) * cell,
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use wienerlab_core::{Domain, GridSpec};

    #[test]
    fn numbers_round_trip_with_17_digits() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 8.0 / 3.0, 0.0] {
            let s = num(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
            let mantissa = s.trim_start_matches('-').split('e').next().unwrap();
            assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17);
        }
    }

    #[test]
    fn ramp_has_fixed_ends() {
        assert_eq!(ramp(0), (59, 76, 192));
        assert_eq!(ramp(255), (180, 4, 38));
    }

    #[test]
    fn field_dump_is_bottom_up() {
        let grid = GridSpec::for_domain(&Domain::unit_square(), 1).unwrap();
        let field = ScalarField::from_fn(grid, |_, p| p.y);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.txt");
        write_field(&path, &field).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1 + grid.ny);
        let header: Vec<&str> = lines[0].split(' ').collect();
        assert_eq!(header[..2], [grid.nx.to_string(), grid.ny.to_string()]);
        let first: f64 = lines[1].split(' ').next().unwrap().parse().unwrap();
        let last: f64 = lines[grid.ny].split(' ').next().unwrap().parse().unwrap();
        assert!(first < last);
    }

    #[test]
    fn svg_has_one_rect_per_closure_node() {
        let domain = Domain::unit_square();
        let grid = GridSpec::for_domain(&domain, 3).unwrap();
        let field = ScalarField::from_fn(grid, |_, p| p.x);
        let closure = wienerlab_core::closure_mask(&grid, &domain);
        let svg = render_svg(&field, &closure, "u");
        let expected = closure.iter().filter(|&&c| c).count();
        assert_eq!(svg.matches("<rect").count(), expected);
    }
}
