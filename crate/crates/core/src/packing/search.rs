//! Branch and bound over the conflict graph.
//!
//! Vertices are renumbered so that index order is branching order: a
//! candidate set's lowest member is always the next branching vertex. The
//! bound is a greedy clique cover of the candidates in the conflict graph;
//! every clique contributes at most one vertex to an independent set.

use super::bitset::VertexSet;
use super::constraint::Compiled;
use crate::error::{Error, Result};
use crate::graphs::Graph;

pub(crate) struct Problem {
    /// `order[i]` is the external vertex behind internal vertex `i`.
    order: Vec<usize>,
    conflicts: Vec<VertexSet>,
    rules: Vec<InternalRule>,
    forced: Vec<usize>,
    forbidden: Vec<usize>,
    infeasible: bool,
    projection: Option<VertexSet>,
}

struct InternalRule {
    mask: VertexSet,
    min: usize,
    max: usize,
}

/// How many vertices a search should pick.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Goal {
    Maximize,
    /// Every solution of the given size, or of any size.
    Enumerate(Option<usize>),
}

pub(crate) struct Outcome {
    /// Best solution for `Maximize`, external indices, sorted.
    pub best: Option<Vec<usize>>,
    /// Solutions (or projections) for `Enumerate`, external indices, sorted.
    pub solutions: Vec<Vec<usize>>,
    pub nodes: u64,
}

impl Problem {
    /// `conflict` is the conflict graph. Vertices in `projection` (external
    /// indices) are branched on first.
    pub fn new(conflict: &Graph, constraint: &Compiled, projection: Option<&[usize]>) -> Self {
        let n = conflict.vertex_count();
        let mut in_projection = vec![false; n];
        for &v in projection.unwrap_or(&[]) {
            in_projection[v] = true;
        }
        let mut order: Vec<usize> = (0..n).collect();
        // projection first, then descending conflict degree, then lowest index
        order.sort_by_key(|&v| (!in_projection[v], std::cmp::Reverse(conflict.degree(v)), v));
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let to_set = |vs: &mut dyn Iterator<Item = usize>| {
            let mut s = VertexSet::new(n);
            for v in vs {
                s.insert(position[v]);
            }
            s
        };
        let conflicts = order
            .iter()
            .map(|&v| to_set(&mut conflict.neighbors(v).iter().copied()))
            .collect();
        let rules = constraint
            .rules
            .iter()
            .map(|r| InternalRule { mask: to_set(&mut r.members.iter().copied()), min: r.min, max: r.max })
            .collect();
        Problem {
            conflicts,
            rules,
            forced: constraint.forced.iter().map(|&v| position[v]).collect(),
            forbidden: constraint.forbidden.iter().map(|&v| position[v]).collect(),
            infeasible: constraint.infeasible,
            projection: projection.map(|p| to_set(&mut p.iter().copied())),
            order,
        }
    }

    fn universe(&self) -> usize {
        self.order.len()
    }

    fn external(&self, internal: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = internal.iter().map(|&v| self.order[v]).collect();
        out.sort_unstable();
        out
    }

    /// Root state after applying forced and forbidden vertices, or `None`
    /// when the constraint is unsatisfiable on its face.
    fn root(&self) -> Option<Node> {
        if self.infeasible {
            return None;
        }
        let n = self.universe();
        let mut cand = VertexSet::full(n);
        let mut chosen = Vec::new();
        let mut counts = vec![0; self.rules.len()];
        for &v in &self.forbidden {
            cand.remove(v);
        }
        for &v in &self.forced {
            if !cand.contains(v) {
                // conflicts with an earlier forced vertex
                return None;
            }
            chosen.push(v);
            for (k, r) in self.rules.iter().enumerate() {
                counts[k] += r.mask.contains(v) as usize;
            }
            cand.remove(v);
            cand.subtract(&self.conflicts[v]);
        }
        Some(Node { chosen, counts, cand })
    }

    /// Greedy clique cover size of `set`.
    fn cover(&self, set: &VertexSet) -> usize {
        let mut rest = set.clone();
        let mut cliques = 0;
        while let Some(v) = rest.first() {
            rest.remove(v);
            let mut common = rest.intersection(&self.conflicts[v]);
            while let Some(u) = common.first() {
                common.remove(u);
                common.intersect_with(&self.conflicts[u]);
                rest.remove(u);
            }
            cliques += 1;
        }
        cliques
    }

    pub fn run(&self, goal: Goal, limit: usize) -> Result<Outcome> {
        let mut search = Search {
            problem: self,
            goal,
            limit,
            best: None,
            solutions: Vec::new(),
            count: 0,
            nodes: 0,
            first_only: false,
            keep: true,
        };
        if let Some(root) = self.root() {
            search.descend(root)?;
        }
        Ok(Outcome {
            best: search.best.map(|b| self.external(&b)),
            solutions: search.solutions,
            nodes: search.nodes,
        })
    }

    /// Like [`Problem::run`] for `Enumerate`, but only counts.
    pub fn count(&self, target: Option<usize>, limit: usize) -> Result<(usize, u64)> {
        let mut search = Search {
            problem: self,
            goal: Goal::Enumerate(target),
            limit,
            best: None,
            solutions: Vec::new(),
            count: 0,
            nodes: 0,
            first_only: false,
            keep: false,
        };
        if let Some(root) = self.root() {
            search.descend(root)?;
        }
        Ok((search.count, search.nodes))
    }
}

#[derive(Clone)]
struct Node {
    chosen: Vec<usize>,
    counts: Vec<usize>,
    cand: VertexSet,
}

struct Search<'a> {
    problem: &'a Problem,
    goal: Goal,
    limit: usize,
    best: Option<Vec<usize>>,
    solutions: Vec<Vec<usize>>,
    count: usize,
    nodes: u64,
    /// Stop at the first solution (completion checks in projection mode).
    first_only: bool,
    keep: bool,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.first_only && self.count > 0
    }

    fn record(&mut self, chosen: &[usize]) -> Result<()> {
        if self.count >= self.limit {
            return Err(Error::SolutionLimit { limit: self.limit, count: self.count });
        }
        self.count += 1;
        if self.keep {
            self.solutions.push(self.problem.external(chosen));
        }
        Ok(())
    }

    fn leaf(&mut self, chosen: &[usize]) -> Result<()> {
        match &self.problem.projection {
            Some(proj) if !self.first_only => {
                let projected: Vec<usize> = chosen.iter().copied().filter(|&v| proj.contains(v)).collect();
                self.record(&projected)
            }
            _ => self.record(chosen),
        }
    }

    /// Applies rule saturation and feasibility; false when the node is dead.
    fn propagate(&self, node: &mut Node) -> bool {
        let p = self.problem;
        for (r, &c) in p.rules.iter().zip(&node.counts) {
            if c > r.max {
                return false;
            }
            if c == r.max {
                node.cand.subtract(&r.mask);
            }
        }
        for (r, &c) in p.rules.iter().zip(&node.counts) {
            if c >= r.min {
                continue;
            }
            let avail = node.cand.intersection(&r.mask);
            if c + avail.len() < r.min || c + p.cover(&avail) < r.min {
                return false;
            }
        }
        true
    }

    fn descend(&mut self, mut node: Node) -> Result<()> {
        self.nodes += 1;
        if self.done() || !self.propagate(&mut node) {
            return Ok(());
        }
        let p = self.problem;
        let size = node.chosen.len();
        match self.goal {
            Goal::Maximize => {
                let best = self.best.as_ref().map_or(0, Vec::len);
                if self.best.is_some() && size + p.cover(&node.cand) <= best {
                    return Ok(());
                }
                if node.cand.is_empty() {
                    if self.best.is_none() || size > best {
                        self.best = Some(node.chosen);
                    }
                    return Ok(());
                }
            }
            Goal::Enumerate(target) => {
                if let Some(t) = target {
                    if size == t {
                        // everything else is excluded; rules were checked against
                        // the full candidate set, so re-check with none left
                        node.cand = VertexSet::new(p.universe());
                        if self.propagate(&mut node) {
                            self.leaf(&node.chosen)?;
                        }
                        return Ok(());
                    }
                    if size + p.cover(&node.cand) < t {
                        return Ok(());
                    }
                }
                if let Some(proj) = &p.projection {
                    if !self.first_only && !node.cand.intersects(proj) {
                        return self.complete_projection(node);
                    }
                }
                if node.cand.is_empty() {
                    return self.leaf(&node.chosen);
                }
            }
        }

        let v = node.cand.first().expect("non-empty");
        let mut include = node.clone();
        include.chosen.push(v);
        for (k, r) in p.rules.iter().enumerate() {
            include.counts[k] += r.mask.contains(v) as usize;
        }
        include.cand.remove(v);
        include.cand.subtract(&p.conflicts[v]);
        self.descend(include)?;

        node.cand.remove(v);
        self.descend(node)
    }

    /// All projection vertices are decided; record the projection if some
    /// completion of it satisfies the goal.
    fn complete_projection(&mut self, node: Node) -> Result<()> {
        let p = self.problem;
        let proj = p.projection.as_ref().expect("projection mode");
        let mut probe = Search {
            problem: p,
            goal: self.goal,
            limit: 1,
            best: None,
            solutions: Vec::new(),
            count: 0,
            nodes: 0,
            first_only: true,
            keep: false,
        };
        let projected: Vec<usize> = node.chosen.iter().copied().filter(|&v| proj.contains(v)).collect();
        probe.descend(node)?;
        self.nodes += probe.nodes;
        if probe.count > 0 {
            self.record(&projected)?;
        }
        Ok(())
    }
}
