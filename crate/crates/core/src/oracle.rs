//! Brute-force ground truth.
//!
//! [`count_matchings`] works on the cell graph directly: every cell must be
//! covered by a lozenge, except free cells on the boundary line, which may be
//! left uncovered (their lozenge protrudes across the boundary).
//! [`count_nilp`] independently counts the families of nonintersecting lattice
//! paths with the endpoint data of [`crate::region::nilp_endpoints`].

use std::collections::HashMap;

use thiserror::Error;

use crate::exactnum::Integer;
use crate::region::{nilp_endpoints, LatticePoint, RegionError, RegionGraph};

/// Cell guard for [`count_matchings`]; the covered set is a `u128` bitmask.
pub const MAX_MATCHING_CELLS: usize = 120;
/// Search-space guards for [`count_nilp`].
pub const MAX_NILP_N: u32 = 3;
pub const MAX_NILP_X: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for brute force: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Region(#[from] RegionError),
}

/// Number of lozenge tilings of `g` in which lozenges may protrude across the
/// free boundary.
///
/// Backtracking always branches on the lowest-indexed uncovered non-free cell.
/// Sub-results are memoised on the covered-cell mask.
pub fn count_matchings(g: &RegionGraph) -> Result<Integer, OracleError> {
    if g.len() > MAX_MATCHING_CELLS {
        return Err(OracleError::TooLarge(format!(
            "{} cells (limit {MAX_MATCHING_CELLS})",
            g.len()
        )));
    }
    let mut must_cover: u128 = 0;
    for (i, free) in g.free.iter().enumerate() {
        if !free {
            must_cover |= 1 << i;
        }
    }
    let neighbours: Vec<u128> = g
        .adjacency
        .iter()
        .map(|adj| adj.iter().fold(0u128, |m, &j| m | (1 << j)))
        .collect();
    let mut search = MatchingSearch { must_cover, neighbours, memo: HashMap::new() };
    Ok(Integer::from(search.count(0)))
}

struct MatchingSearch {
    must_cover: u128,
    neighbours: Vec<u128>,
    memo: HashMap<u128, u128>,
}

impl MatchingSearch {
    fn count(&mut self, covered: u128) -> u128 {
        let open = self.must_cover & !covered;
        if open == 0 {
            return 1;
        }
        if let Some(&v) = self.memo.get(&covered) {
            return v;
        }
        let i = open.trailing_zeros() as usize;
        let mut options = self.neighbours[i] & !covered;
        let mut total = 0u128;
        while options != 0 {
            let j = options.trailing_zeros();
            options &= options - 1;
            total += self.count(covered | (1 << i) | (1 << j));
        }
        self.memo.insert(covered, total);
        total
    }
}

/// Number of families `(P_1, ..., P_2n)` of vertex-disjoint lattice paths with
/// unit steps right or up, `P_i` from `A_i` to a point of `I ∪ {S_1, S_2}`,
/// such that both `S_1` and `S_2` are endpoints.
///
/// A path may pass through points of `I` and continue; it may stop at any
/// allowed endpoint it reaches. Paths are laid down in index order.
pub fn count_nilp(n: u32, x: u32, k: u32) -> Result<Integer, OracleError> {
    if n == 0 || x == 0 {
        return Err(RegionError::DegenerateRegion { n, x }.into());
    }
    let ends = nilp_endpoints(n, x, k)?;
    if n > MAX_NILP_N || x > MAX_NILP_X {
        return Err(OracleError::TooLarge(format!(
            "n = {n}, x = {x} (limits n <= {MAX_NILP_N}, x <= {MAX_NILP_X})"
        )));
    }
    let grid = PathGrid::new(&ends.starts, &ends.free_targets, ends.forced_targets);
    let mut search = PathSearch { grid, memo: HashMap::new() };
    Ok(Integer::from(search.family(0, 0, [false, false])))
}

/// Bounding box `x in [-2n, -1]`, `y in [1, 2x+2n]` flattened into bit indices.
struct PathGrid {
    min_x: i64,
    height: i64,
    max_y: i64,
    starts: Vec<LatticePoint>,
    free_target: u128,
    forced: [LatticePoint; 2],
}

impl PathGrid {
    fn new(starts: &[LatticePoint], free: &[LatticePoint], forced: [LatticePoint; 2]) -> Self {
        let min_x = starts.iter().map(|p| p.x).min().unwrap();
        let max_y = free.iter().map(|p| p.y).max().unwrap();
        let mut grid = PathGrid { min_x, height: max_y, max_y, starts: starts.to_vec(), free_target: 0, forced };
        for p in free {
            grid.free_target |= grid.bit(*p);
        }
        grid
    }

    fn bit(&self, p: LatticePoint) -> u128 {
        1u128 << ((p.x - self.min_x) * self.height + (p.y - 1))
    }
}

struct PathSearch {
    grid: PathGrid,
    memo: HashMap<(usize, u128, [bool; 2]), u128>,
}

impl PathSearch {
    fn family(&mut self, path: usize, occupied: u128, used: [bool; 2]) -> u128 {
        if path == self.grid.starts.len() {
            return u128::from(used == [true, true]);
        }
        let key = (path, occupied, used);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let start = self.grid.starts[path];
        let total = if occupied & self.grid.bit(start) != 0 {
            0
        } else {
            self.walk(path, start, occupied | self.grid.bit(start), used)
        };
        self.memo.insert(key, total);
        total
    }

    fn walk(&mut self, path: usize, at: LatticePoint, occupied: u128, used: [bool; 2]) -> u128 {
        let here = self.grid.bit(at);
        let mut total = 0;
        let forced = self.grid.forced;
        for (slot, s) in forced.iter().enumerate() {
            if *s == at && !used[slot] {
                let mut next = used;
                next[slot] = true;
                total += self.family(path + 1, occupied, next);
            }
        }
        if self.grid.free_target & here != 0 && !self.grid.forced.contains(&at) {
            total += self.family(path + 1, occupied, used);
        }
        for step in [LatticePoint::new(at.x + 1, at.y), LatticePoint::new(at.x, at.y + 1)] {
            if step.x > -1 || step.y > self.grid.max_y {
                continue;
            }
            let b = self.grid.bit(step);
            if occupied & b == 0 {
                total += self.walk(path, step, occupied | b, used);
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::{build_region, HoleSpec, RegionSpec};

    fn tilings(n: u32, x: u32, hole: HoleSpec) -> Integer {
        count_matchings(&build_region(RegionSpec::new(n, x, hole)).unwrap()).unwrap()
    }

    #[test]
    fn small_tiling_counts() {
        assert_eq!(tilings(1, 1, HoleSpec::NoHole), Integer::from(10));
        assert_eq!(tilings(1, 1, HoleSpec::Triangle2(0)), Integer::from(1));
        assert_eq!(tilings(2, 1, HoleSpec::NoHole), Integer::from(126));
    }

    #[test]
    fn nilp_agrees_with_matchings_small() {
        assert_eq!(count_nilp(1, 1, 0).unwrap(), Integer::from(1));
        for (n, x, k) in [(2, 1, 0), (2, 2, 1), (2, 1, 1), (1, 3, 0)] {
            assert_eq!(count_nilp(n, x, k).unwrap(), tilings(n, x, HoleSpec::Triangle2(k)), "({n},{x},{k})");
        }
    }

    #[test]
    fn holes_never_add_tilings() {
        for (n, x) in [(1, 2), (2, 1), (2, 2)] {
            let full = tilings(n, x, HoleSpec::NoHole);
            for k in 0..n {
                assert!(tilings(n, x, HoleSpec::Triangle2(k)) <= full);
                assert!(tilings(n, x, HoleSpec::HorizontalLozenge(k)) <= full);
            }
        }
    }

    #[test]
    fn guards() {
        assert!(matches!(count_nilp(4, 1, 0), Err(OracleError::TooLarge(_))));
        assert!(matches!(count_nilp(2, 5, 0), Err(OracleError::TooLarge(_))));
        assert!(matches!(count_nilp(2, 1, 2), Err(OracleError::Region(_))));
        let big = build_region(RegionSpec::new(3, 4, HoleSpec::NoHole)).unwrap();
        assert!(big.len() > MAX_MATCHING_CELLS);
        assert!(matches!(count_matchings(&big), Err(OracleError::TooLarge(_))));
    }
}
