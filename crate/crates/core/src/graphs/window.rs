use std::fmt;

use serde::{Deserialize, Serialize};

use super::{grid_graph, triangle_window, Cell, Graph};
use crate::error::{invalid, Result};

/// Rectangular window of the triangular region `T(n)`: columns
/// `x_lo..=x_hi`, rows `y_lo..=y_hi`, intersected with `x <= y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WindowSpec {
    pub n: i64,
    pub x_lo: i64,
    pub x_hi: i64,
    pub y_lo: i64,
    pub y_hi: i64,
}

impl WindowSpec {
    pub fn new(n: i64, x_lo: i64, x_hi: i64, y_lo: i64, y_hi: i64) -> Result<Self> {
        if n < 1 {
            return invalid(format!("window size n={n} must be positive"));
        }
        if !(1 <= x_lo && x_lo <= x_hi && x_hi <= n && 1 <= y_lo && y_lo <= y_hi && y_hi <= n) {
            return invalid(format!(
                "window columns {x_lo}..{x_hi}, rows {y_lo}..{y_hi} not within 1..{n}"
            ));
        }
        // the cell set is non-empty iff its lowest column reaches the top row
        if x_lo > y_hi {
            return invalid(format!(
                "window columns {x_lo}..{x_hi}, rows {y_lo}..{y_hi} has no cell with x <= y"
            ));
        }
        Ok(WindowSpec { n, x_lo, x_hi, y_lo, y_hi })
    }

    /// The whole triangle `T(n)`.
    pub fn full(n: i64) -> Result<Self> {
        Self::new(n, 1, n, 1, n)
    }

    /// The top `ell` rows of `T(n)`.
    pub fn strip(n: i64, ell: i64) -> Result<Self> {
        Self::strip_cols(n, ell, 1, n)
    }

    /// The top `ell` rows of `T(n)`, columns `i..=j`.
    pub fn strip_cols(n: i64, ell: i64, i: i64, j: i64) -> Result<Self> {
        if ell < 1 || ell > n {
            return invalid(format!("strip height {ell} not within 1..{n}"));
        }
        Self::new(n, i, j, n - ell + 1, n)
    }

    /// Rows `k..=r` of `T(n)`, all columns.
    pub fn rows(n: i64, k: i64, r: i64) -> Result<Self> {
        Self::new(n, 1, n, k, r)
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.x_lo <= c.x && c.x <= self.x_hi && self.y_lo <= c.y && c.y <= self.y_hi && c.x <= c.y
    }

    /// Cells sorted by column, then row.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for x in self.x_lo..=self.x_hi {
            for y in self.y_lo.max(x)..=self.y_hi {
                out.push(Cell::new(x, y));
            }
        }
        out
    }

    pub fn cell_count(&self) -> usize {
        (self.x_lo..=self.x_hi)
            .map(|x| (self.y_hi - self.y_lo.max(x) + 1).max(0) as usize)
            .sum()
    }

    pub fn is_full_triangle(&self) -> bool {
        self.x_lo == 1 && self.y_lo == 1 && self.x_hi == self.n && self.y_hi == self.n
    }

    /// Sub-window of the same triangle; its bounds are clipped to `self`.
    pub fn sub(&self, x_lo: i64, x_hi: i64, y_lo: i64, y_hi: i64) -> Result<Self> {
        Self::new(
            self.n,
            x_lo.max(self.x_lo),
            x_hi.min(self.x_hi),
            y_lo.max(self.y_lo),
            y_hi.min(self.y_hi),
        )
    }
}

impl fmt::Display for WindowSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T[{}..{}]^[{}..{}]({})", self.x_lo, self.x_hi, self.y_lo, self.y_hi, self.n)
    }
}

/// The host of a lattice packing: a triangle window, or a full grid with
/// columns `1..=cols` and rows `1..=rows`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Host {
    Window(WindowSpec),
    Grid { rows: i64, cols: i64 },
}

impl Host {
    pub fn graph(&self) -> Result<Graph> {
        match *self {
            Host::Window(w) => triangle_window(&w),
            Host::Grid { rows, cols } => grid_graph(rows, cols),
        }
    }

    pub fn contains(&self, c: Cell) -> bool {
        match *self {
            Host::Window(w) => w.contains(c),
            Host::Grid { rows, cols } => 1 <= c.x && c.x <= cols && 1 <= c.y && c.y <= rows,
        }
    }

    /// Text header line of the packing-set format.
    pub fn header(&self) -> String {
        match *self {
            Host::Window(w) => format!("host {} {} {} {} {}", w.n, w.x_lo, w.x_hi, w.y_lo, w.y_hi),
            Host::Grid { rows, cols } => format!("host grid {rows} {cols}"),
        }
    }
}

impl From<WindowSpec> for Host {
    fn from(w: WindowSpec) -> Self {
        Host::Window(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(WindowSpec::new(0, 1, 1, 1, 1).is_err());
        assert!(WindowSpec::new(5, 2, 1, 1, 5).is_err());
        assert!(WindowSpec::new(5, 1, 6, 1, 5).is_err());
        // columns 4..5 against rows 1..3 have no cell on or above the diagonal
        assert!(WindowSpec::new(5, 4, 5, 1, 3).is_err());
        assert!(WindowSpec::new(5, 3, 5, 1, 3).is_ok());
    }

    #[test]
    fn cell_counts() {
        assert_eq!(WindowSpec::full(5).unwrap().cell_count(), 15);
        let strip = WindowSpec::strip(17, 5).unwrap();
        assert_eq!(strip.cell_count(), 75);
        assert_eq!(strip.cells().len(), 75);
        let w = WindowSpec::new(9, 2, 7, 3, 6).unwrap();
        assert_eq!(w.cells().len(), w.cell_count());
        assert!(w.cells().iter().all(|&c| w.contains(c)));
    }
}
