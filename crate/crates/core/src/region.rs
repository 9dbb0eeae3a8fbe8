//! Geometry of the half-hexagon `F(n, x)`.
//!
//! The free boundary `ℓ` is the y-axis. The region is the pentagon with
//! bottom vertex `(0, -(x+n))`, a south-west side of `2n` unit steps to
//! `(-n√3, -x)`, a vertical side up to `(-n√3, x)`, a north-west side of `2n`
//! unit steps to `(0, x+n)`, closed along `ℓ`.
//!
//! Vertical lattice lines sit at abscissa `-c·√3/2`, `c = 0, 1, ...`; the strip
//! between line `c` and line `c+1` is column `c`. A cell is addressed by its
//! column and by `row = 2·(lowest y of its vertical edge)`. Left-pointing cells
//! have their vertical edge on line `c` (so `row ≡ c mod 2`); right-pointing
//! cells have it on line `c+1` (`row ≡ c+1 mod 2`). Two cells share an edge
//! iff they are in the same column with rows differing by one, or a
//! left-pointing cell `(c, r)` faces the right-pointing cell `(c-1, r)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error("hole position k = {k} is outside 0..={max} for n = {n}")]
    HoleOutOfRegion { n: u32, k: u32, max: i64 },
    #[error("region needs n >= 1 and x >= 1 (got n = {n}, x = {x})")]
    DegenerateRegion { n: u32, x: u32 },
    #[error("malformed cell list line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Which cells are cut out of the region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HoleSpec {
    NoHole,
    /// Left-pointing triangle of side 2 whose vertical side runs from
    /// `(-k√3, -1)` to `(-k√3, 1)`.
    Triangle2(u32),
    /// The horizontal lozenge inside `Triangle2(k)`.
    HorizontalLozenge(u32),
}

impl HoleSpec {
    pub fn position(&self) -> Option<u32> {
        match *self {
            HoleSpec::NoHole => None,
            HoleSpec::Triangle2(k) | HoleSpec::HorizontalLozenge(k) => Some(k),
        }
    }

    /// Cells removed by this hole, as `(column, row, orientation)`.
    pub fn cells(&self) -> Vec<TriangleCell> {
        use Orientation::*;
        match *self {
            HoleSpec::NoHole => Vec::new(),
            HoleSpec::Triangle2(k) => {
                let c = 2 * k;
                vec![
                    TriangleCell::new(c, -2, Left),
                    TriangleCell::new(c, -1, Right),
                    TriangleCell::new(c, 0, Left),
                    TriangleCell::new(c + 1, -1, Left),
                ]
            }
            HoleSpec::HorizontalLozenge(k) => {
                let c = 2 * k;
                vec![TriangleCell::new(c, -1, Right), TriangleCell::new(c + 1, -1, Left)]
            }
        }
    }
}

/// Euclidean distance from the gap `Triangle2(k)` (its right side) to the free
/// boundary, in lattice units.
pub fn gap_distance(k: u32) -> f64 {
    3f64.sqrt() * k as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RegionSpec {
    pub n: u32,
    pub x: u32,
    pub hole: HoleSpec,
}

impl RegionSpec {
    pub fn new(n: u32, x: u32, hole: HoleSpec) -> Self {
        RegionSpec { n, x, hole }
    }

    pub fn validate(&self) -> Result<(), RegionError> {
        if self.n < 1 || self.x < 1 {
            return Err(RegionError::DegenerateRegion { n: self.n, x: self.x });
        }
        check_hole(self.n, self.hole.position())
    }
}

pub(crate) fn check_hole(n: u32, k: Option<u32>) -> Result<(), RegionError> {
    match k {
        Some(k) if k + 1 > n => Err(RegionError::HoleOutOfRegion { n, k, max: n as i64 - 1 }),
        _ => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    /// Apex to the left, vertical edge on the right.
    Left,
    /// Apex to the right, vertical edge on the left.
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleCell {
    pub column: u32,
    pub row: i64,
    pub orientation: Orientation,
}

impl TriangleCell {
    pub fn new(column: u32, row: i64, orientation: Orientation) -> Self {
        TriangleCell { column, row, orientation }
    }

    /// Cells sharing an edge with this one (inside or outside any region).
    pub fn neighbours(&self) -> Vec<TriangleCell> {
        let other = match self.orientation {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
        };
        let mut out = vec![
            TriangleCell::new(self.column, self.row - 1, other),
            TriangleCell::new(self.column, self.row + 1, other),
        ];
        match self.orientation {
            Orientation::Left if self.column > 0 => {
                out.push(TriangleCell::new(self.column - 1, self.row, Orientation::Right))
            }
            Orientation::Right => out.push(TriangleCell::new(self.column + 1, self.row, Orientation::Left)),
            _ => {}
        }
        out
    }
}

/// The concrete cell graph of a region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionGraph {
    pub spec: RegionSpec,
    /// Sorted by `(row, column, orientation)`, i.e. a bottom-to-top sweep.
    pub cells: Vec<TriangleCell>,
    /// Indices into `cells`, one list per cell.
    pub adjacency: Vec<Vec<usize>>,
    /// `free[i]`: cell `i` may be left uncovered (a lozenge protrudes across `ℓ`).
    pub free: Vec<bool>,
}

impl RegionGraph {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn count(&self, orientation: Orientation) -> usize {
        self.cells.iter().filter(|c| c.orientation == orientation).count()
    }

    pub fn free_count(&self) -> usize {
        self.free.iter().filter(|&&f| f).count()
    }

    pub fn index_of(&self, cell: &TriangleCell) -> Option<usize> {
        let key = |c: &TriangleCell| (c.row, c.column, c.orientation);
        self.cells.binary_search_by_key(&key(cell), key).ok()
    }

    /// One cell per line: `column row L|R [free]`.
    pub fn to_cell_list(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for RegionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (cell, free) in self.cells.iter().zip(&self.free) {
            let o = match cell.orientation {
                Orientation::Left => 'L',
                Orientation::Right => 'R',
            };
            write!(f, "{} {} {}", cell.column, cell.row, o)?;
            if *free {
                write!(f, " free")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A parsed cell list, as written by [`RegionGraph::to_cell_list`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellList(pub Vec<(TriangleCell, bool)>);

impl FromStr for CellList {
    type Err = RegionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        for (idx, line) in s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let err = |reason: &str| RegionError::Parse { line: idx + 1, reason: reason.to_string() };
            let tok: Vec<&str> = line.split_whitespace().collect();
            if !(3..=4).contains(&tok.len()) {
                return Err(err("expected `column row L|R [free]`"));
            }
            let column = tok[0].parse().map_err(|_| err("bad column"))?;
            let row = tok[1].parse().map_err(|_| err("bad row"))?;
            let orientation = match tok[2] {
                "L" => Orientation::Left,
                "R" => Orientation::Right,
                _ => return Err(err("orientation must be L or R")),
            };
            let free = match tok.get(3) {
                None => false,
                Some(&"free") => true,
                Some(_) => return Err(err("fourth field must be `free`")),
            };
            out.push((TriangleCell::new(column, row, orientation), free));
        }
        Ok(CellList(out))
    }
}

fn inside(n: u32, x: u32, cell: &TriangleCell) -> bool {
    let big = 2 * (x as i64 + n as i64);
    let c = cell.column as i64;
    if c >= 2 * n as i64 {
        return false;
    }
    let (lo, hi, parity) = match cell.orientation {
        Orientation::Left => (-big + c, big - c - 2, c),
        Orientation::Right => (-big + c + 1, big - c - 3, c + 1),
    };
    cell.row >= lo && cell.row <= hi && (cell.row - parity).rem_euclid(2) == 0
}

/// Builds the cell graph of `F(n, x)` minus the requested hole.
pub fn build_region(spec: RegionSpec) -> Result<RegionGraph, RegionError> {
    spec.validate()?;
    let RegionSpec { n, x, hole } = spec;
    let big = 2 * (x as i64 + n as i64);
    let removed = hole.cells();
    let mut cells = Vec::new();
    for column in 0..2 * n {
        for row in -big..big {
            for orientation in [Orientation::Left, Orientation::Right] {
                let cell = TriangleCell::new(column, row, orientation);
                if inside(n, x, &cell) && !removed.contains(&cell) {
                    cells.push(cell);
                }
            }
        }
    }
    cells.sort_by_key(|c| (c.row, c.column, c.orientation));
    let mut graph = RegionGraph { spec, free: Vec::new(), adjacency: Vec::new(), cells };
    graph.free = graph
        .cells
        .iter()
        .map(|c| c.column == 0 && c.orientation == Orientation::Left)
        .collect();
    graph.adjacency = graph
        .cells
        .iter()
        .map(|c| c.neighbours().iter().filter_map(|nb| graph.index_of(nb)).collect())
        .collect();
    Ok(graph)
}

/// A point of `Z²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }
}

/// Start and end points of the nonintersecting path families that encode the
/// tilings of `F(n, x)` minus `Triangle2(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpEndpoints {
    /// `A_i = (-i, i)`, `i = 1..=2n`.
    pub starts: Vec<LatticePoint>,
    /// `I = {(-1, s) : s = 1..=2x+2n}`; any subset may be used.
    pub free_targets: Vec<LatticePoint>,
    /// `S_1 = (-2k-1, x+n+k)` and `S_2 = (-2k-2, x+n+k+1)`; both must be used.
    pub forced_targets: [LatticePoint; 2],
}

pub fn nilp_endpoints(n: u32, x: u32, k: u32) -> Result<NilpEndpoints, RegionError> {
    check_hole(n, Some(k))?;
    let (n, x, k) = (n as i64, x as i64, k as i64);
    Ok(NilpEndpoints {
        starts: (1..=2 * n).map(|i| LatticePoint::new(-i, i)).collect(),
        free_targets: (1..=2 * x + 2 * n).map(|s| LatticePoint::new(-1, s)).collect(),
        forced_targets: [
            LatticePoint::new(-2 * k - 1, x + n + k),
            LatticePoint::new(-2 * k - 2, x + n + k + 1),
        ],
    })
}
