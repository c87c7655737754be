//! Exact 2-packing computation: branch and bound on the conflict graph, a
//! profile dynamic program for lattice hosts with short columns, and
//! constrained enumeration.

mod bitset;
mod constraint;
mod profile;
mod search;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graphs::{conflict_graph, Cell, Graph, Host, PackingSet, WindowSpec};
pub use constraint::{Constraint, RegionBound};
use profile::ProfileDp;
use search::{Goal, Problem};

/// Environment variable overriding [`SolverConfig::max_vertices`].
pub const MAX_VERTICES_ENV: &str = "PACKLAB_MAX_VERTICES";

/// Scale limits. Exceeding one is an error, never an approximation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolverConfig {
    /// Largest graph the branch and bound accepts.
    pub max_vertices: usize,
    /// Tallest column the profile solver accepts (at most 16).
    pub max_column_height: usize,
    /// Enumeration aborts once this many solutions were found.
    pub solution_limit: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { max_vertices: 120, max_column_height: 12, solution_limit: 1_000_000 }
    }
}

impl SolverConfig {
    /// Defaults, with `PACKLAB_MAX_VERTICES` applied when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Self::default();
        if let Ok(v) = std::env::var(MAX_VERTICES_ENV) {
            cfg.max_vertices = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("{MAX_VERTICES_ENV}={v} is not a count")))?;
        }
        Ok(cfg)
    }

    fn check_vertices(&self, n: usize) -> Result<()> {
        if n > self.max_vertices {
            return Err(Error::SizeCap {
                what: "vertex count",
                actual: n,
                limit: self.max_vertices,
                flag: "--max-vertices",
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    BranchAndBound,
    ProfileDp,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::BranchAndBound => "branch-and-bound",
            Method::ProfileDp => "profile-dp",
        })
    }
}

/// Outcome of a maximization. `optimum` is `None` when the constraints admit
/// no packing at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub optimum: Option<usize>,
    /// Vertex indices of an optimal packing, sorted.
    pub witness: Vec<usize>,
    /// Search nodes (branch and bound) or states (profile solver).
    pub node_count: u64,
    pub method: Method,
}

impl SolveResult {
    pub fn is_feasible(&self) -> bool {
        self.optimum.is_some()
    }

    pub fn witness_cells(&self, g: &Graph) -> Vec<Cell> {
        self.witness.iter().filter_map(|&v| g.cell(v)).collect()
    }

    pub fn witness_packing(&self, host: &Host, g: &Graph) -> PackingSet {
        PackingSet::new(*host, self.witness_cells(g)).expect("witness lies in host")
    }
}

fn infeasible(method: Method, node_count: u64) -> SolveResult {
    SolveResult { optimum: None, witness: Vec::new(), node_count, method }
}

/// Packing number of an arbitrary graph, as a maximum independent set of its
/// conflict graph.
pub fn rho_exact(g: &Graph, cfg: &SolverConfig) -> Result<SolveResult> {
    cfg.check_vertices(g.vertex_count())?;
    let conflict = conflict_graph(g);
    let compiled = constraint::Compiled { forced: vec![], forbidden: vec![], rules: vec![], infeasible: false };
    solve_bnb(&conflict, &compiled)
}

fn solve_bnb(conflict: &Graph, compiled: &constraint::Compiled) -> Result<SolveResult> {
    let out = Problem::new(conflict, compiled, None).run(Goal::Maximize, usize::MAX)?;
    Ok(match out.best {
        Some(w) => SolveResult { optimum: Some(w.len()), witness: w, node_count: out.nodes, method: Method::BranchAndBound },
        None => infeasible(Method::BranchAndBound, out.nodes),
    })
}

/// Constrained maximum on a lattice host by branch and bound.
pub fn rho_bnb(host: &Host, c: &Constraint, cfg: &SolverConfig) -> Result<SolveResult> {
    let g = host.graph()?;
    cfg.check_vertices(g.vertex_count())?;
    let compiled = c.compile(host, &g)?;
    solve_bnb(&conflict_graph(&g), &compiled)
}

/// Constrained maximum on a lattice host by the profile dynamic program.
/// Every column must have at most `cfg.max_column_height` cells.
pub fn rho_window_dp(host: &Host, c: &Constraint, cfg: &SolverConfig) -> Result<SolveResult> {
    let g = host.graph()?;
    let compiled = c.compile(host, &g)?;
    let dp = ProfileDp::new(&g, &conflict_graph(&g), &compiled, cfg.max_column_height)?;
    let out = dp.solve();
    Ok(match out.best {
        Some((value, witness)) => SolveResult {
            optimum: Some(value as usize),
            witness,
            node_count: out.states,
            method: Method::ProfileDp,
        },
        None => infeasible(Method::ProfileDp, out.states),
    })
}

/// Constrained maximum, by the profile solver when the columns fit and by
/// branch and bound otherwise.
pub fn constrained_max(host: &Host, c: &Constraint, cfg: &SolverConfig) -> Result<SolveResult> {
    match rho_window_dp(host, c, cfg) {
        Err(Error::SizeCap { what: "column height", .. }) => rho_bnb(host, c, cfg),
        other => other,
    }
}

/// Which packings to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Any,
    Exactly(usize),
    /// The constrained maximum, computed first.
    Maximum,
}

#[derive(Clone, Debug, Default)]
pub struct EnumOptions {
    /// Automorphisms of the host as permutations of vertex indices. The
    /// identity is implied. When non-empty, solutions are also counted up to
    /// the generated action (the group must be closed under composition).
    pub group: Vec<Vec<usize>>,
    /// Report distinct restrictions to this window instead of full solutions.
    pub project_onto: Option<WindowSpec>,
    /// Only count; do not keep the solutions.
    pub count_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    /// Solutions in discovery order (restrictions, with `project_onto`).
    /// Empty in count-only mode.
    pub solutions: Vec<PackingSet>,
    pub count: usize,
    pub canonical_classes: Option<usize>,
    /// Size enumerated for `Target::Maximum` / `Target::Exactly`.
    pub target_size: Option<usize>,
    pub node_count: u64,
}

/// All packings of `host` meeting `c` with the requested size.
pub fn enumerate_packings(
    host: &Host,
    c: &Constraint,
    target: Target,
    opts: &EnumOptions,
    cfg: &SolverConfig,
) -> Result<EnumerationResult> {
    let g = host.graph()?;
    cfg.check_vertices(g.vertex_count())?;
    let compiled = c.compile(host, &g)?;
    let conflict = conflict_graph(&g);
    if !opts.group.is_empty() && opts.project_onto.is_some() {
        return invalid("symmetry classes and projection cannot be combined");
    }
    for perm in &opts.group {
        if perm.len() != g.vertex_count() {
            return invalid("automorphism length differs from the host's vertex count");
        }
    }

    let size = match target {
        Target::Any => None,
        Target::Exactly(k) => Some(k),
        Target::Maximum => match solve_bnb(&conflict, &compiled)?.optimum {
            Some(k) => Some(k),
            None => {
                return Ok(EnumerationResult {
                    solutions: vec![],
                    count: 0,
                    canonical_classes: (!opts.group.is_empty()).then_some(0),
                    target_size: None,
                    node_count: 0,
                })
            }
        },
    };

    let (projection, proj_host) = match opts.project_onto {
        Some(w) => {
            let members: Vec<usize> =
                (0..g.vertex_count()).filter(|&v| g.cell(v).is_some_and(|cell| w.contains(cell))).collect();
            (Some(members), Host::Window(w))
        }
        None => (None, *host),
    };
    let problem = Problem::new(&conflict, &compiled, projection.as_deref());

    if opts.count_only && opts.group.is_empty() && projection.is_none() {
        let (count, nodes) = problem.count(size, cfg.solution_limit)?;
        return Ok(EnumerationResult { solutions: vec![], count, canonical_classes: None, target_size: size, node_count: nodes });
    }

    let out = problem.run(Goal::Enumerate(size), cfg.solution_limit)?;
    let mut raw = out.solutions;
    if projection.is_some() {
        // distinct by construction; dedupe keeps discovery order regardless
        let mut seen = BTreeSet::new();
        raw.retain(|s| seen.insert(s.clone()));
    }
    let canonical_classes = (!opts.group.is_empty()).then(|| {
        raw.iter()
            .map(|s| canonical_form(s, &opts.group))
            .collect::<BTreeSet<_>>()
            .len()
    });
    let count = raw.len();
    let solutions = if opts.count_only {
        Vec::new()
    } else {
        raw.iter()
            .map(|s| PackingSet::new(proj_host, s.iter().filter_map(|&v| g.cell(v))).expect("solution lies in host"))
            .collect()
    };
    Ok(EnumerationResult { solutions, count, canonical_classes, target_size: size, node_count: out.nodes })
}

/// Lexicographically least image of a sorted vertex set under the group
/// (identity included).
pub fn canonical_form(set: &[usize], group: &[Vec<usize>]) -> Vec<usize> {
    let mut best = set.to_vec();
    for perm in group {
        let mut image: Vec<usize> = set.iter().map(|&v| perm[v]).collect();
        image.sort_unstable();
        if image < best {
            best = image;
        }
    }
    best
}

/// All packings of a single column of `height` cells (rows `1..=height`),
/// optionally only those of a given size. Each entry lists selected rows.
pub fn column_profile_census(height: usize, size: Option<usize>, cfg: &SolverConfig) -> Result<Vec<Vec<i64>>> {
    let limit = cfg.max_column_height.min(16);
    if height == 0 {
        return invalid("column height must be positive");
    }
    if height > limit {
        return Err(Error::SizeCap { what: "column height", actual: height, limit, flag: "--max-height" });
    }
    let g = crate::graphs::grid_graph(height as i64, 1)?;
    let conflict = conflict_graph(&g);
    let within: Vec<u32> = (0..height)
        .map(|v| conflict.neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
        .collect();
    Ok(profile::column_masks(&within)
        .into_iter()
        .filter(|m| size.is_none_or(|k| m.count_ones() as usize == k))
        .map(|m| (0..height).filter(|&i| m >> i & 1 == 1).map(|i| i as i64 + 1).collect())
        .collect())
}
