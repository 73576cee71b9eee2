//! Dyadic inner exhaustion of a domain and the node masks that encode the
//! nested admissible classes on one fixed fine grid.
//!
//! Level-`k` cells have side `scale·2⁻ᵏ` and are aligned with the lower-left
//! corner of the bounding box, so every level-`k` cell is an exact union of
//! level-`K` cells. All fields live on the level-`K` node grid; the level only
//! decides which of those nodes are free.

use serde::Serialize;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::geom::{Point, Rect};

/// Node grid of the finest level `K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub origin: Point,
    /// Node spacing, `scale·2⁻ᴷ`.
    pub h: f64,
    /// Side length of the level-0 cell.
    pub scale: f64,
    pub nx: usize,
    pub ny: usize,
    pub level: u32,
}

impl GridSpec {
    pub fn for_domain(domain: &Domain, level: u32) -> Result<Self> {
        if !(1..=14).contains(&level) {
            return Err(Error::Parameter(format!("fine level K must lie in 1..=14, got {level}")));
        }
        let bbox = domain.bbox();
        let scale = bbox.width().max(bbox.height());
        let h = scale / f64::from(1u32 << level);
        let nodes = |extent: f64| (extent / h - 1e-9).ceil() as usize + 1;
        Ok(Self {
            origin: bbox.min,
            h,
            scale,
            nx: nodes(bbox.width()).max(3),
            ny: nodes(bbox.height()).max(3),
            level,
        })
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn coords(&self, idx: usize) -> (usize, usize) {
        (idx % self.nx, idx / self.nx)
    }

    pub fn node(&self, i: usize, j: usize) -> Point {
        Point::new(
            self.origin.x + i as f64 * self.h,
            self.origin.y + j as f64 * self.h,
        )
    }

    pub fn position(&self, idx: usize) -> Point {
        let (i, j) = self.coords(idx);
        self.node(i, j)
    }

    /// Side length of a level-`k` cell.
    pub fn cell_size(&self, k: u32) -> f64 {
        self.scale / f64::from(1u32 << k)
    }

    /// Upper bound on the side of the node grid, `max((nx−1)h, (ny−1)h)`.
    pub fn side(&self) -> f64 {
        (self.nx.max(self.ny) - 1) as f64 * self.h
    }
}

/// The cells of one exhaustion level whose closure lies inside the domain.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSet {
    pub level: u32,
    pub origin: Point,
    pub cell_size: f64,
    pub cx: usize,
    pub cy: usize,
    included: Vec<bool>,
}

impl CellSet {
    /// A level with no cells at all.
    pub fn empty(grid: &GridSpec, level: u32) -> Self {
        let (cx, cy) = cell_counts(grid, level);
        Self {
            level,
            origin: grid.origin,
            cell_size: grid.cell_size(level),
            cx,
            cy,
            included: vec![false; cx * cy],
        }
    }

    pub fn cell_rect(&self, i: usize, j: usize) -> Rect {
        let min = Point::new(
            self.origin.x + i as f64 * self.cell_size,
            self.origin.y + j as f64 * self.cell_size,
        );
        Rect::new(min, min + Point::new(self.cell_size, self.cell_size))
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i < self.cx && j < self.cy && self.included[j * self.cx + i]
    }

    pub fn len(&self) -> usize {
        self.included.iter().filter(|&&c| c).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn area(&self) -> f64 {
        self.len() as f64 * self.cell_size * self.cell_size
    }

    /// Indices of the included cells, row-major.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.cy).flat_map(move |j| (0..self.cx).map(move |i| (i, j)))
            .filter(move |&(i, j)| self.contains(i, j))
    }

    /// Whether the level-`fine` cell `(i, j)` lies in one of these cells.
    pub fn covers_fine_cell(&self, fine: u32, i: usize, j: usize) -> bool {
        debug_assert!(fine >= self.level);
        let shift = fine - self.level;
        self.contains(i >> shift, j >> shift)
    }
}

fn cell_counts(grid: &GridSpec, level: u32) -> (usize, usize) {
    let per_fine = 1usize << (grid.level - level.min(grid.level));
    let count = |nodes: usize| (nodes - 1).div_ceil(per_fine);
    (count(grid.nx), count(grid.ny))
}

/// Collects the level-`k` cells contained in the domain.
pub fn build_cellset(domain: &Domain, grid: &GridSpec, level: u32) -> Result<CellSet> {
    if !(1..=grid.level).contains(&level) {
        return Err(Error::Parameter(format!(
            "exhaustion level must lie in 1..={}, got {level}",
            grid.level
        )));
    }
    let mut cells = CellSet::empty(grid, level);
    for j in 0..cells.cy {
        for i in 0..cells.cx {
            let rect = cells.cell_rect(i, j);
            cells.included[j * cells.cx + i] = domain.contains_closed_rect(&rect);
        }
    }
    if cells.is_empty() {
        return Err(Error::EmptyExhaustion {
            level,
            domain: domain.name().to_string(),
        });
    }
    Ok(cells)
}

/// Like [`build_cellset`], but returns an empty level instead of an error
/// when no cell fits.
pub fn build_cellset_or_empty(domain: &Domain, grid: &GridSpec, level: u32) -> Result<CellSet> {
    match build_cellset(domain, grid, level) {
        Err(Error::EmptyExhaustion { .. }) => Ok(CellSet::empty(grid, level)),
        other => other,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    /// Interior to the union of exhaustion cells; solved for.
    Free,
    /// In the closed domain but not free; carries the extension.
    Clamped,
    Exterior,
}

/// Free/clamped/exterior classification of the fine-grid nodes for one level.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeMask {
    pub grid: GridSpec,
    pub level: u32,
    kinds: Vec<NodeKind>,
}

impl NodeMask {
    pub fn from_kinds(grid: GridSpec, level: u32, kinds: Vec<NodeKind>) -> Result<Self> {
        if kinds.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        Ok(Self { grid, level, kinds })
    }

    pub fn kind(&self, idx: usize) -> NodeKind {
        self.kinds[idx]
    }

    pub fn kinds(&self) -> &[NodeKind] {
        &self.kinds
    }

    pub fn is_free(&self, idx: usize) -> bool {
        self.kinds[idx] == NodeKind::Free
    }

    pub fn free_indices(&self) -> Vec<usize> {
        self.indices_of(NodeKind::Free)
    }

    pub fn indices_of(&self, kind: NodeKind) -> Vec<usize> {
        (0..self.kinds.len()).filter(|&n| self.kinds[n] == kind).collect()
    }

    pub fn count(&self, kind: NodeKind) -> usize {
        self.kinds.iter().filter(|&&k| k == kind).count()
    }

    /// Nodes of the closed domain: free or clamped.
    pub fn closure(&self) -> Vec<bool> {
        self.kinds.iter().map(|&k| k != NodeKind::Exterior).collect()
    }

    /// Grid-neighbour indices of an interior node (left, right, down, up).
    pub fn neighbours(&self, idx: usize) -> Option<[usize; 4]> {
        let (i, j) = self.grid.coords(idx);
        let g = &self.grid;
        (i > 0 && j > 0 && i + 1 < g.nx && j + 1 < g.ny)
            .then(|| [idx - 1, idx + 1, idx - g.nx, idx + g.nx])
    }

    /// Checks that every free node has four non-exterior neighbours.
    pub fn check_well_posed(&self) -> Result<()> {
        for idx in self.free_indices() {
            let ok = self
                .neighbours(idx)
                .is_some_and(|nb| nb.iter().all(|&n| self.kinds[n] != NodeKind::Exterior));
            if !ok {
                return Err(Error::IllPosedMask { node: idx });
            }
        }
        Ok(())
    }
}

/// Nodes with `sdf ≤ 0`: the discrete closure of the domain.
pub fn closure_mask(grid: &GridSpec, domain: &Domain) -> Vec<bool> {
    (0..grid.len())
        .map(|n| domain.sdf(grid.position(n)) <= 0.0)
        .collect()
}

/// Classifies fine-grid nodes for the exhaustion level `cells`.
pub fn node_masks(cells: &CellSet, grid: &GridSpec, domain: &Domain) -> Result<NodeMask> {
    if cells.level > grid.level {
        return Err(Error::Parameter(format!(
            "cell level {} exceeds fine level {}",
            cells.level, grid.level
        )));
    }
    let closure = closure_mask(grid, domain);
    let covered = |i: usize, j: usize| cells.covers_fine_cell(grid.level, i, j);
    let kinds = (0..grid.len())
        .map(|n| {
            let (i, j) = grid.coords(n);
            let interior = i > 0
                && j > 0
                && i + 1 < grid.nx
                && j + 1 < grid.ny
                && covered(i - 1, j - 1)
                && covered(i, j - 1)
                && covered(i - 1, j)
                && covered(i, j);
            if interior {
                NodeKind::Free
            } else if closure[n] {
                NodeKind::Clamped
            } else {
                NodeKind::Exterior
            }
        })
        .collect();
    Ok(NodeMask {
        grid: *grid,
        level: cells.level,
        kinds,
    })
}
