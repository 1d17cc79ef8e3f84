use std::ops::RangeInclusive;

use super::Filtered;
use crate::error::{Error, Result};

/// Shift and basepoint samples for [`polynomial_map_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    pub shifts: RangeInclusive<i64>,
    pub basepoints: RangeInclusive<i64>,
}

impl SampleGrid {
    /// Shifts in `-3..=3`, basepoints in `-2N..=2N`.
    pub fn standard(n: u64) -> Self {
        let n = n as i64;
        Self {
            shifts: -3..=3,
            basepoints: -2 * n..=2 * n,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyMapViolation<G> {
    pub shifts: Vec<i64>,
    pub x: i64,
    pub level: usize,
    pub value: G,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyMapReport<G> {
    pub derivatives_checked: usize,
    pub violation: Option<PolyMapViolation<G>>,
}

impl<G> PolyMapReport<G> {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Falsifies the polynomial-map property on a sample grid: for every prefix
/// `(h_1..h_i)` of a shift tuple and every basepoint `x`, the iterated
/// derivative `D_{h_i} ... D_{h_1} p(x)` with `D_h p(x) = p(x+h) p(x)^-1` must
/// lie in `G_i`. Tuples are explored depth-first in lexicographic order and the
/// first violation is returned.
pub fn polynomial_map_check<G, P>(p: P, grid: &SampleGrid) -> Result<PolyMapReport<G>>
where
    G: Filtered,
    P: Fn(i64) -> G,
{
    let (a, b) = (*grid.basepoints.start(), *grid.basepoints.end());
    let (h_lo, h_hi) = (*grid.shifts.start(), *grid.shifts.end());
    if a > b || h_lo > h_hi {
        return Err(Error::InvalidParameter("empty sample grid".into()));
    }
    let reach = h_lo.abs().max(h_hi.abs());
    let depth = p(a).steps() + 1;
    let margin = reach * depth as i64;
    let lo = a - margin;
    let values: Vec<G> = (lo..=b + margin).map(&p).collect();

    let mut search = Search {
        grid,
        depth,
        reach,
        prefix: Vec::with_capacity(depth),
        checked: 0,
    };
    let violation = search.descend(0, &values, lo)?;
    Ok(PolyMapReport {
        derivatives_checked: search.checked,
        violation,
    })
}

struct Search<'a> {
    grid: &'a SampleGrid,
    depth: usize,
    reach: i64,
    prefix: Vec<i64>,
    checked: usize,
}

impl Search<'_> {
    /// `arr[k]` holds the current derivative at `arr_lo + k`.
    fn descend<G: Filtered>(
        &mut self,
        level: usize,
        arr: &[G],
        arr_lo: i64,
    ) -> Result<Option<PolyMapViolation<G>>> {
        let next = level + 1;
        let (a, b) = (*self.grid.basepoints.start(), *self.grid.basepoints.end());
        let new_lo = a - self.reach * (self.depth - next) as i64;
        let new_hi = b + self.reach * (self.depth - next) as i64;
        let last = next == self.depth;
        let inverses: Vec<G> = if last {
            Vec::new()
        } else {
            arr.iter().map(|g| g.inv()).collect()
        };
        let at = |x: i64| (x - arr_lo) as usize;

        for h in self.grid.shifts.clone() {
            self.prefix.push(h);
            if last {
                // G_{steps+1} is trivial: membership is D(x + h) == D(x).
                for x in a..=b {
                    self.checked += 1;
                    if arr[at(x + h)] != arr[at(x)] {
                        let value = arr[at(x + h)].mul(&arr[at(x)].inv())?;
                        return Ok(Some(self.violation(x, next, value)));
                    }
                }
            } else {
                let derived: Vec<G> = (new_lo..=new_hi)
                    .map(|x| arr[at(x + h)].mul(&inverses[at(x)]))
                    .collect::<Result<_>>()?;
                for x in a..=b {
                    self.checked += 1;
                    let value = &derived[(x - new_lo) as usize];
                    if !value.in_filtration(next) {
                        return Ok(Some(self.violation(x, next, value.clone())));
                    }
                }
                if let Some(v) = self.descend(next, &derived, new_lo)? {
                    return Ok(Some(v));
                }
            }
            self.prefix.pop();
        }
        Ok(None)
    }

    fn violation<G>(&self, x: i64, level: usize, value: G) -> PolyMapViolation<G> {
        PolyMapViolation {
            shifts: self.prefix.clone(),
            x,
            level,
            value,
        }
    }
}
