use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{is_packing_cells, Cell, Host, WindowSpec};
use crate::error::{invalid, Error, Result};

/// A set of lattice cells on a stated host.
///
/// Construction only checks membership; whether the cells are pairwise at
/// distance three is answered by [`PackingSet::is_valid`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingSet {
    pub host: Host,
    pub cells: BTreeSet<Cell>,
}

impl PackingSet {
    pub fn new(host: impl Into<Host>, cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let host = host.into();
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        if let Some(c) = cells.iter().find(|&&c| !host.contains(c)) {
            return invalid(format!("cell ({c}) is outside host `{}`", host.header()));
        }
        Ok(PackingSet { host, cells })
    }

    pub fn empty(host: impl Into<Host>) -> Self {
        PackingSet { host: host.into(), cells: BTreeSet::new() }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    pub fn cell_vec(&self) -> Vec<Cell> {
        self.cells.iter().copied().collect()
    }

    /// Pairwise host distance is at least three.
    pub fn is_valid(&self) -> Result<bool> {
        is_packing_cells(&self.host.graph()?, &self.cell_vec())
    }

    /// Number of cells inside `w`.
    pub fn count_in(&self, w: &WindowSpec) -> usize {
        self.cells.iter().filter(|&&c| w.contains(c)).count()
    }

    /// Header line followed by one `x,y` line per cell, LF-terminated.
    pub fn to_text(&self) -> String {
        let mut out = self.host.header();
        out.push('\n');
        for c in &self.cells {
            writeln!(out, "{},{}", c.x, c.y).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("missing host header".into()))?;
        let host = parse_header(header)?;
        let cells = lines
            .map(|line| {
                let (x, y) = line
                    .trim()
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("expected `x,y`, got `{line}`")))?;
                Ok(Cell::new(parse_int(x)?, parse_int(y)?))
            })
            .collect::<Result<Vec<_>>>()?;
        PackingSet::new(host, cells)
    }
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad integer `{s}`")))
}

fn parse_header(line: &str) -> Result<Host> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    match fields.as_slice() {
        ["host", "grid", rows, cols] => Ok(Host::Grid { rows: parse_int(rows)?, cols: parse_int(cols)? }),
        ["host", n, x_lo, x_hi, y_lo, y_hi] => Ok(Host::Window(WindowSpec::new(
            parse_int(n)?,
            parse_int(x_lo)?,
            parse_int(x_hi)?,
            parse_int(y_lo)?,
            parse_int(y_hi)?,
        )?)),
        _ => Err(Error::Parse(format!("bad host header `{line}`"))),
    }
}

/// The cells of `s` inside `w`, re-hosted on `w`.
pub fn restrict(s: &PackingSet, w: &WindowSpec) -> Result<PackingSet> {
    match s.host {
        Host::Window(h) if h.n == w.n => {}
        Host::Window(h) => return invalid(format!("window size mismatch: {} vs {}", h.n, w.n)),
        Host::Grid { .. } => return invalid("restriction needs a triangle-window host"),
    }
    Ok(PackingSet {
        host: Host::Window(*w),
        cells: s.cells.iter().copied().filter(|&c| w.contains(c)).collect(),
    })
}
