use std::f64::consts::PI;

use wienerlab_core::exhaust::build_cellset_or_empty;
use wienerlab_core::{builtin_domain, node_masks, GridSpec, NodeKind};

const DOMAINS: [&str; 5] = ["unit_square", "disc(1)", "annulus(0.05,1)", "l_shape", "annulus(0.3,1)"];

#[test]
fn cellsets_and_free_nodes_are_nested() {
    let fine = 8;
    for name in DOMAINS {
        let d = builtin_domain(name).unwrap();
        let grid = GridSpec::for_domain(&d, fine).unwrap();
        let mut prev_free: Option<Vec<bool>> = None;
        for k in 1..=fine {
            let cells = build_cellset_or_empty(&d, &grid, k).unwrap();
            if k > 1 {
                let parent = build_cellset_or_empty(&d, &grid, k - 1).unwrap();
                for (i, j) in parent.iter() {
                    for (di, dj) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                        assert!(cells.contains(2 * i + di, 2 * j + dj), "{name}: level {k} drops a child of ({i},{j})");
                    }
                }
            }
            let mask = node_masks(&cells, &grid, &d).unwrap();
            mask.check_well_posed().unwrap();
            let free: Vec<bool> = mask.kinds().iter().map(|&k| k == NodeKind::Free).collect();
            if let Some(prev) = &prev_free {
                for (n, (&was, &is)) in prev.iter().zip(&free).enumerate() {
                    assert!(!was || is, "{name}: node {n} free at level {} but not at {k}", k - 1);
                }
            }
            prev_free = Some(free);
        }
    }
}

#[test]
fn included_cells_lie_inside() {
    for name in DOMAINS {
        let d = builtin_domain(name).unwrap();
        let grid = GridSpec::for_domain(&d, 7).unwrap();
        for k in 2..=7 {
            let cells = build_cellset_or_empty(&d, &grid, k).unwrap();
            assert!(cells.area() <= d.area());
            for (i, j) in cells.iter() {
                let rect = cells.cell_rect(i, j);
                // corners, centre and an interior lattice
                for a in 0..=8 {
                    for b in 0..=8 {
                        let p = rect.min
                            + wienerlab_core::Point::new(rect.width() * a as f64 / 8.0, rect.height() * b as f64 / 8.0);
                        assert!(d.inside(p), "{name} level {k} cell ({i},{j}) leaks at {p:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn exhaustion_area_converges_on_the_disc() {
    let d = builtin_domain("disc(1)").unwrap();
    let grid = GridSpec::for_domain(&d, 8).unwrap();
    let mut prev = 0.0;
    for k in 2..=8 {
        let area = build_cellset_or_empty(&d, &grid, k).unwrap().area();
        assert!(area >= prev && area <= PI);
        prev = area;
    }
    assert!((PI - prev).abs() <= 8.0 * PI * grid.h, "{prev}");
}

#[test]
fn free_nodes_never_touch_the_exterior() {
    for name in DOMAINS {
        let d = builtin_domain(name).unwrap();
        let grid = GridSpec::for_domain(&d, 6).unwrap();
        for k in 1..=6 {
            let cells = build_cellset_or_empty(&d, &grid, k).unwrap();
            let mask = node_masks(&cells, &grid, &d).unwrap();
            for n in mask.free_indices() {
                let nb = mask.neighbours(n).expect("free nodes are grid-interior");
                assert!(nb.iter().all(|&m| mask.kind(m) != NodeKind::Exterior));
            }
        }
    }
}
