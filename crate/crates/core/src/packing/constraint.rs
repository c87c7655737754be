use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graphs::{Cell, Graph, Host, WindowSpec};

/// Cardinality bound on the cells of a window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegionBound {
    pub window: WindowSpec,
    pub min: usize,
    pub max: usize,
}

/// Side conditions on a packing: forced and forbidden cells, and count
/// bounds per column and per region (both inclusive).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Constraint {
    pub forced: BTreeSet<Cell>,
    pub forbidden: BTreeSet<Cell>,
    pub columns: BTreeMap<i64, (usize, usize)>,
    pub regions: Vec<RegionBound>,
}

impl Constraint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.forced.is_empty() && self.forbidden.is_empty() && self.columns.is_empty() && self.regions.is_empty()
    }

    pub fn force(mut self, c: impl Into<Cell>) -> Self {
        self.forced.insert(c.into());
        self
    }

    pub fn forbid(mut self, c: impl Into<Cell>) -> Self {
        self.forbidden.insert(c.into());
        self
    }

    pub fn column(mut self, x: i64, min: usize, max: usize) -> Self {
        self.columns.insert(x, (min, max));
        self
    }

    pub fn region(mut self, window: WindowSpec, min: usize, max: usize) -> Self {
        self.regions.push(RegionBound { window, min, max });
        self
    }

    /// Whether `cells` meets every condition. Host membership and the
    /// packing property are checked elsewhere.
    pub fn is_satisfied_by(&self, cells: &BTreeSet<Cell>) -> bool {
        self.forced.iter().all(|c| cells.contains(c))
            && !self.forbidden.iter().any(|c| cells.contains(c))
            && self.columns.iter().all(|(&x, &(lo, hi))| {
                let k = cells.iter().filter(|c| c.x == x).count();
                lo <= k && k <= hi
            })
            && self.regions.iter().all(|r| {
                let k = cells.iter().filter(|&&c| r.window.contains(c)).count();
                r.min <= k && k <= r.max
            })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ConstraintJson = serde_json::from_str(text)?;
        raw.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ConstraintJson::from(self)).expect("serializable")
    }

    /// Resolves cells to vertex indices of `g`, the graph of `host`.
    pub(crate) fn compile(&self, host: &Host, g: &Graph) -> Result<Compiled> {
        let index = |c: &Cell| {
            g.cell_index(*c)
                .ok_or_else(|| Error::InvalidParameter(format!("constraint cell ({c}) is outside host `{}`", host.header())))
        };
        let forced = self.forced.iter().map(index).collect::<Result<Vec<_>>>()?;
        let forbidden = self.forbidden.iter().map(index).collect::<Result<Vec<_>>>()?;
        let mut infeasible = self.forced.intersection(&self.forbidden).next().is_some();

        let mut rules = Vec::new();
        for (&x, &(min, max)) in &self.columns {
            let members: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.cell(v).is_some_and(|c| c.x == x)).collect();
            if members.is_empty() {
                return invalid(format!("constraint column {x} has no cells in host `{}`", host.header()));
            }
            rules.push(Rule { members, min, max });
        }
        for r in &self.regions {
            let members = (0..g.vertex_count())
                .filter(|&v| g.cell(v).is_some_and(|c| r.window.contains(c)))
                .collect();
            rules.push(Rule { members, min: r.min, max: r.max });
        }
        infeasible |= rules.iter().any(|r| r.min > r.max || r.min > r.members.len());
        Ok(Compiled { forced, forbidden, rules, infeasible })
    }
}

/// A count rule over vertex indices.
#[derive(Clone, Debug)]
pub(crate) struct Rule {
    pub members: Vec<usize>,
    pub min: usize,
    pub max: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Compiled {
    pub forced: Vec<usize>,
    pub forbidden: Vec<usize>,
    pub rules: Vec<Rule>,
    /// Statically unsatisfiable (overlapping forced/forbidden, empty bounds).
    pub infeasible: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstraintJson {
    #[serde(default)]
    forced: Vec<[i64; 2]>,
    #[serde(default)]
    forbidden: Vec<[i64; 2]>,
    #[serde(default)]
    columns: BTreeMap<String, [usize; 2]>,
    #[serde(default)]
    regions: Vec<RegionJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionJson {
    window: [i64; 5],
    min: usize,
    max: usize,
}

impl TryFrom<ConstraintJson> for Constraint {
    type Error = Error;

    fn try_from(raw: ConstraintJson) -> Result<Self> {
        let columns = raw
            .columns
            .into_iter()
            .map(|(k, [lo, hi])| {
                let x = k.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad column key `{k}`")))?;
                Ok((x, (lo, hi)))
            })
            .collect::<Result<_>>()?;
        let regions = raw
            .regions
            .into_iter()
            .map(|r| {
                let [n, x_lo, x_hi, y_lo, y_hi] = r.window;
                Ok(RegionBound { window: WindowSpec::new(n, x_lo, x_hi, y_lo, y_hi)?, min: r.min, max: r.max })
            })
            .collect::<Result<_>>()?;
        Ok(Constraint {
            forced: raw.forced.into_iter().map(|[x, y]| Cell::new(x, y)).collect(),
            forbidden: raw.forbidden.into_iter().map(|[x, y]| Cell::new(x, y)).collect(),
            columns,
            regions,
        })
    }
}

impl From<&Constraint> for ConstraintJson {
    fn from(c: &Constraint) -> Self {
        ConstraintJson {
            forced: c.forced.iter().map(|c| [c.x, c.y]).collect(),
            forbidden: c.forbidden.iter().map(|c| [c.x, c.y]).collect(),
            columns: c.columns.iter().map(|(x, &(lo, hi))| (x.to_string(), [lo, hi])).collect(),
            regions: c
                .regions
                .iter()
                .map(|r| RegionJson {
                    window: [r.window.n, r.window.x_lo, r.window.x_hi, r.window.y_lo, r.window.y_hi],
                    min: r.min,
                    max: r.max,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_schema_shape() {
        let text = r#"{
            "forced": [[1, 1]],
            "forbidden": [[2, 4]],
            "columns": {"3": [0, 1]},
            "regions": [{"window": [10, 1, 10, 6, 10], "min": 2, "max": 5}]
        }"#;
        let c = Constraint::from_json(text).unwrap();
        assert!(c.forced.contains(&Cell::new(1, 1)));
        assert_eq!(c.columns[&3], (0, 1));
        assert_eq!(c.regions[0].window, WindowSpec::new(10, 1, 10, 6, 10).unwrap());
        assert_eq!(Constraint::from_json(&c.to_json()).unwrap(), c);
        assert_eq!(Constraint::from_json("{}").unwrap(), Constraint::new());
        assert!(Constraint::from_json(r#"{"bogus": 1}"#).is_err());
        assert!(Constraint::from_json(r#"{"columns": {"x": [0, 1]}}"#).is_err());
    }

    #[test]
    fn compile_checks_membership() {
        let w = WindowSpec::full(5).unwrap();
        let host = Host::Window(w);
        let g = host.graph().unwrap();
        assert!(Constraint::new().force((3, 2)).compile(&host, &g).is_err());
        assert!(Constraint::new().column(9, 0, 1).compile(&host, &g).is_err());
        let c = Constraint::new().force((1, 1)).forbid((1, 1)).compile(&host, &g).unwrap();
        assert!(c.infeasible);
        let c = Constraint::new().column(5, 2, 3).compile(&host, &g).unwrap();
        assert!(c.infeasible, "column 5 of T(5) has a single cell");
    }

    #[test]
    fn satisfaction() {
        let w = WindowSpec::full(6).unwrap();
        let c = Constraint::new().force((1, 1)).column(2, 1, 1).region(w.sub(1, 6, 5, 6).unwrap(), 0, 1);
        let ok: BTreeSet<Cell> = [Cell::new(1, 1), Cell::new(2, 4)].into();
        assert!(c.is_satisfied_by(&ok));
        let bad: BTreeSet<Cell> = [Cell::new(1, 1), Cell::new(2, 5), Cell::new(5, 6)].into();
        assert!(!c.is_satisfied_by(&bad));
    }
}
