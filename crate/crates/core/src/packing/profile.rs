//! Column-by-column profile dynamic program.
//!
//! Two cells conflict only if they are at graph distance at most two, and a
//! path of length two spans at most two columns. The state after a column is
//! therefore the selection in that column and the one before it, plus the
//! running counts of the region rules that span several columns. Conflicts are
//! read from the BFS conflict graph of the host, never from coordinates.

use std::collections::HashMap;

use smallvec::SmallVec;

use super::constraint::Compiled;
use crate::error::{Error, Result};
use crate::graphs::Graph;

type Counts = SmallVec<[u8; 4]>;

struct Column {
    /// Vertex indices, bottom to top.
    cells: Vec<usize>,
    subsets: Vec<Subset>,
}

struct Subset {
    mask: u32,
    size: u32,
    /// Cells of the next column in conflict with this selection.
    conflict_next: u32,
    /// Cells of the column after next in conflict with this selection.
    conflict_skip: u32,
    /// Contribution to each multi-column rule.
    contrib: Counts,
}

struct MultiRule {
    min: usize,
    max: usize,
    /// Last column holding a member; the rule is settled there.
    last: usize,
    /// `suffix[c]`: most members selectable in columns after `c`.
    suffix: Vec<u32>,
}

pub(crate) struct ProfileDp {
    columns: Vec<Column>,
    rules: Vec<MultiRule>,
    infeasible: bool,
}

#[derive(Clone)]
struct State {
    cur: u16,
    prev: u16,
    counts: Counts,
    value: u32,
    parent: u32,
}

const NONE: u16 = u16::MAX;

pub(crate) struct DpOutcome {
    pub best: Option<(u32, Vec<usize>)>,
    pub states: u64,
}

/// Independent subsets of a column given within-column conflict masks,
/// in increasing mask order.
pub(crate) fn column_masks(within: &[u32]) -> Vec<u32> {
    let h = within.len();
    (0u32..1 << h)
        .filter(|&m| (0..h).all(|i| m >> i & 1 == 0 || within[i] & m == 0))
        .collect()
}

impl ProfileDp {
    /// `g` is the host lattice graph and `conflict` its conflict graph.
    pub fn new(g: &Graph, conflict: &Graph, constraint: &Compiled, max_height: usize) -> Result<Self> {
        let n = g.vertex_count();
        let mut xs: Vec<i64> = (0..n).map(|v| g.cell(v).expect("lattice host").x).collect();
        xs.sort_unstable();
        xs.dedup();
        let col_of: Vec<usize> = (0..n)
            .map(|v| xs.binary_search(&g.cell(v).unwrap().x).unwrap())
            .collect();
        let mut cells_by_col = vec![Vec::new(); xs.len()];
        for v in 0..n {
            cells_by_col[col_of[v]].push(v);
        }
        for cells in &mut cells_by_col {
            cells.sort_by_key(|&v| g.cell(v).unwrap().y);
        }
        let tallest = cells_by_col.iter().map(Vec::len).max().unwrap_or(0);
        let max_height = max_height.min(16);
        if tallest > max_height {
            return Err(Error::SizeCap {
                what: "column height",
                actual: tallest,
                limit: max_height,
                flag: "--max-height",
            });
        }
        let mut pos = vec![0usize; n];
        for cells in &cells_by_col {
            for (i, &v) in cells.iter().enumerate() {
                pos[v] = i;
            }
        }

        // conflict masks into the same, next and next-but-one column
        let mut within = vec![0u32; n];
        let mut next = vec![0u32; n];
        let mut skip = vec![0u32; n];
        for (a, b) in conflict.edges() {
            let (a, b) = if col_of[a] <= col_of[b] { (a, b) } else { (b, a) };
            match col_of[b] - col_of[a] {
                0 => {
                    within[a] |= 1 << pos[b];
                    within[b] |= 1 << pos[a];
                }
                1 => next[a] |= 1 << pos[b],
                2 => skip[a] |= 1 << pos[b],
                d => {
                    return Err(Error::InvalidParameter(format!(
                        "conflict between vertices {a} and {b} spans {d} columns; not a lattice host"
                    )))
                }
            }
        }

        let mut forced = vec![false; n];
        let mut forbidden = vec![false; n];
        for &v in &constraint.forced {
            forced[v] = true;
        }
        for &v in &constraint.forbidden {
            forbidden[v] = true;
        }

        // rules within a single column filter subsets; the rest become state
        let mut single: Vec<Vec<(u32, usize, usize)>> = vec![Vec::new(); xs.len()];
        let mut multi_members: Vec<(Vec<u32>, usize, usize)> = Vec::new();
        let mut infeasible = constraint.infeasible;
        for r in &constraint.rules {
            let mut masks = vec![0u32; xs.len()];
            for &v in &r.members {
                masks[col_of[v]] |= 1 << pos[v];
            }
            let spanned: Vec<usize> = (0..xs.len()).filter(|&c| masks[c] != 0).collect();
            match spanned.as_slice() {
                [] => infeasible |= r.min > 0,
                [c] => single[*c].push((masks[*c], r.min, r.max)),
                _ => multi_members.push((masks, r.min, r.max)),
            }
        }
        if multi_members.iter().any(|(_, _, max)| *max > u8::MAX as usize - 16) {
            return Err(Error::InvalidParameter("region bounds above 239 are not supported by the profile solver".into()));
        }

        let columns: Vec<Column> = cells_by_col
            .iter()
            .enumerate()
            .map(|(c, cells)| {
                let within: Vec<u32> = cells.iter().map(|&v| within[v]).collect();
                let must: u32 = cells.iter().enumerate().filter(|(_, &v)| forced[v]).map(|(i, _)| 1 << i).sum();
                let never: u32 = cells.iter().enumerate().filter(|(_, &v)| forbidden[v]).map(|(i, _)| 1 << i).sum();
                let subsets = column_masks(&within)
                    .into_iter()
                    .filter(|&m| m & must == must && m & never == 0)
                    .filter(|&m| {
                        single[c].iter().all(|&(mask, lo, hi)| {
                            let k = (m & mask).count_ones() as usize;
                            lo <= k && k <= hi
                        })
                    })
                    .map(|m| {
                        let bits = || (0..cells.len()).filter(move |&i| m >> i & 1 == 1);
                        Subset {
                            mask: m,
                            size: m.count_ones(),
                            conflict_next: bits().fold(0, |acc, i| acc | next[cells[i]]),
                            conflict_skip: bits().fold(0, |acc, i| acc | skip[cells[i]]),
                            contrib: multi_members.iter().map(|(masks, _, _)| (m & masks[c]).count_ones() as u8).collect(),
                        }
                    })
                    .collect::<Vec<_>>();
                Column { cells: cells.clone(), subsets }
            })
            .collect();
        infeasible |= columns.iter().any(|c| c.subsets.is_empty());

        let mut dp = ProfileDp { columns, rules: Vec::new(), infeasible };
        dp.rules = multi_members
            .iter()
            .map(|(masks, min, max)| MultiRule {
                min: *min,
                max: *max,
                last: masks.iter().rposition(|&m| m != 0).unwrap(),
                suffix: if *min > 0 { dp.suffix_bounds(masks) } else { Vec::new() },
            })
            .collect();
        Ok(dp)
    }

    /// `out[c]` is the largest packing using only `allowed` cells of columns
    /// after `c`, ignoring every other constraint.
    fn suffix_bounds(&self, allowed: &[u32]) -> Vec<u32> {
        let k = self.columns.len();
        let mut out = vec![0u32; k];
        // states keyed by (subset at column c, subset at column c + 1)
        let mut layer: HashMap<(u16, u16), u32> = HashMap::new();
        layer.insert((NONE, NONE), 0);
        for c in (0..k).rev() {
            out[c] = layer.values().copied().max().unwrap_or(0);
            let col = &self.columns[c];
            let mut nextl: HashMap<(u16, u16), u32> = HashMap::new();
            for (&(a, b), &val) in &layer {
                for (si, s) in col.subsets.iter().enumerate() {
                    if a != NONE && s.conflict_next & self.columns[c + 1].subsets[a as usize].mask != 0 {
                        continue;
                    }
                    if b != NONE && s.conflict_skip & self.columns[c + 2].subsets[b as usize].mask != 0 {
                        continue;
                    }
                    let entry = nextl.entry((si as u16, a)).or_insert(0);
                    *entry = (*entry).max(val + (s.mask & allowed[c]).count_ones());
                }
            }
            layer = nextl;
        }
        out
    }

    pub fn solve(&self) -> DpOutcome {
        let mut total_states = 0u64;
        if self.infeasible {
            return DpOutcome { best: None, states: 0 };
        }
        let zero: Counts = self.rules.iter().map(|_| 0).collect();
        let mut layers: Vec<Vec<State>> = Vec::with_capacity(self.columns.len());
        let mut current = vec![State { cur: NONE, prev: NONE, counts: zero, value: 0, parent: 0 }];

        for (c, col) in self.columns.iter().enumerate() {
            let mut next: Vec<State> = Vec::new();
            let mut index: HashMap<(u16, u16, Counts), usize> = HashMap::new();
            for (pi, st) in current.iter().enumerate() {
                let prev_conf = if st.cur == NONE { 0 } else { self.columns[c - 1].subsets[st.cur as usize].conflict_next };
                let skip_conf = if st.prev == NONE { 0 } else { self.columns[c - 2].subsets[st.prev as usize].conflict_skip };
                let blocked = prev_conf | skip_conf;
                'subsets: for (si, s) in col.subsets.iter().enumerate() {
                    if s.mask & blocked != 0 {
                        continue;
                    }
                    let mut counts = st.counts.clone();
                    for (k, rule) in self.rules.iter().enumerate() {
                        let v = counts[k] as usize + s.contrib[k] as usize;
                        if v > rule.max {
                            continue 'subsets;
                        }
                        if c <= rule.last && rule.min > 0 && v + (rule.suffix[c] as usize) < rule.min {
                            continue 'subsets;
                        }
                        // settled rules drop out of the state
                        counts[k] = if c == rule.last { 0 } else { v as u8 };
                    }
                    let value = st.value + s.size;
                    let key = (si as u16, st.cur, counts);
                    match index.get(&key) {
                        Some(&i) => {
                            if value > next[i].value {
                                next[i].value = value;
                                next[i].parent = pi as u32;
                            }
                        }
                        None => {
                            index.insert(key.clone(), next.len());
                            next.push(State { cur: key.0, prev: key.1, counts: key.2, value, parent: pi as u32 });
                        }
                    }
                }
            }
            total_states += next.len() as u64;
            layers.push(std::mem::replace(&mut current, next));
            if current.is_empty() {
                return DpOutcome { best: None, states: total_states };
            }
        }

        // first state of maximum value
        let (mut at, best) = current.iter().enumerate().fold((0, &current[0]), |acc, (i, s)| {
            if s.value > acc.1.value {
                (i, s)
            } else {
                acc
            }
        });
        let value = best.value;
        let mut witness = Vec::new();
        let mut layer = &current;
        for c in (0..self.columns.len()).rev() {
            let st = &layer[at];
            let subset = &self.columns[c].subsets[st.cur as usize];
            let cells = &self.columns[c].cells;
            witness.extend((0..cells.len()).filter(|&i| subset.mask >> i & 1 == 1).map(|i| cells[i]));
            at = st.parent as usize;
            layer = &layers[c];
        }
        witness.sort_unstable();
        DpOutcome { best: Some((value, witness)), states: total_states }
    }
}
