//! Finite graphs, the lattice families built from the integer grid, and the
//! distance services that define packings.

mod families;
mod packing_set;
mod window;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub use families::{
    cell_to_pair, gamma_graph, grid_graph, pair_to_cell, path_graph, reflection_automorphism,
    reflect_cell, token_graph, triangle_window,
};
pub use packing_set::{restrict, PackingSet};
pub use window::{Host, WindowSpec};

/// A lattice cell: `x` is the column, `y` the row.
///
/// The derived ordering sorts by column first, then row, which is the vertex
/// order of every lattice graph in this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const fn new(x: i64, y: i64) -> Self {
        Cell { x, y }
    }

    pub fn l1(self, other: Cell) -> i64 {
        (self.x - other.x).abs() + (self.y - other.y).abs()
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

impl From<(i64, i64)> for Cell {
    fn from((x, y): (i64, i64)) -> Self {
        Cell { x, y }
    }
}

/// Opaque vertex label. Labels are unique within a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Int(i64),
    Cell(Cell),
    /// A k-subset of another graph's vertices, members in index order.
    Subset(Vec<Label>),
    /// A binary word, leftmost character is bit 1.
    Bits(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Cell(c) => write!(f, "({c})"),
            Label::Subset(items) => {
                write!(f, "{{")?;
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{item}")?;
                }
                write!(f, "}}")
            }
            Label::Bits(b) => f.write_str(b),
        }
    }
}

/// A finite simple undirected graph with stable vertex indices.
///
/// Immutable once built. Neighbour lists are sorted.
#[derive(Clone, Debug)]
pub struct Graph {
    labels: Vec<Label>,
    adj: Vec<Vec<usize>>,
    index: HashMap<Label, usize>,
}

impl Graph {
    /// Builds a graph from labels and an edge list over label indices.
    /// Duplicate edges are merged; loops and duplicate labels are rejected.
    pub fn from_edges(labels: Vec<Label>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return invalid(format!("duplicate vertex label {label}"));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return invalid(format!("edge ({a},{b}) out of range for {n} vertices"));
            }
            if a == b {
                return invalid(format!("self-loop at vertex {a}"));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { labels, adj, index })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &Label {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn cell_index(&self, cell: Cell) -> Option<usize> {
        self.index_of(&Label::Cell(cell))
    }

    /// The cell carried by vertex `v`, if the graph is a lattice graph.
    pub fn cell(&self, v: usize) -> Option<Cell> {
        match self.labels[v] {
            Label::Cell(c) => Some(c),
            _ => None,
        }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Each edge once, as `(a, b)` with `a < b`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return invalid(format!("vertex {v} out of range for {} vertices", self.vertex_count()));
        }
        Ok(())
    }

    /// BFS distances from `src`, truncated at `radius` when given.
    /// Unreached vertices are `None`.
    pub fn bfs(&self, src: usize, radius: Option<usize>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            if radius.is_some_and(|r| du >= r) {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices at distance 1 or 2 from `v`, sorted.
    pub fn radius2(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .bfs(v, Some(2))
            .into_iter()
            .enumerate()
            .filter_map(|(w, d)| matches!(d, Some(1) | Some(2)).then_some(w))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Shortest-path length between `u` and `v`; `None` when disconnected.
pub fn graph_distance(g: &Graph, u: usize, v: usize) -> Result<Option<usize>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    Ok(g.bfs(u, None)[v])
}

/// Same vertices as `g`, with an edge between every pair at distance at most
/// two. Packings of `g` are exactly the independent sets of this graph.
pub fn conflict_graph(g: &Graph) -> Graph {
    let edges: Vec<(usize, usize)> = (0..g.vertex_count())
        .flat_map(|v| g.radius2(v).into_iter().filter(move |&w| v < w).map(move |w| (v, w)))
        .collect();
    Graph::from_edges(g.labels.clone(), edges).expect("conflict graph inherits valid labels")
}

/// True iff the given vertices are pairwise at distance at least three.
pub fn is_packing(g: &Graph, vertices: &[usize]) -> Result<bool> {
    let mut member = vec![false; g.vertex_count()];
    for &v in vertices {
        g.check_vertex(v)?;
        if member[v] {
            return invalid(format!("vertex {v} listed twice"));
        }
        member[v] = true;
    }
    Ok(vertices
        .iter()
        .all(|&v| g.radius2(v).into_iter().all(|w| !member[w])))
}

/// [`is_packing`] for lattice graphs, with cells instead of indices.
pub fn is_packing_cells(g: &Graph, cells: &[Cell]) -> Result<bool> {
    let vertices = cells
        .iter()
        .map(|&c| {
            g.cell_index(c)
                .ok_or_else(|| crate::Error::InvalidParameter(format!("cell ({c}) is not a vertex")))
        })
        .collect::<Result<Vec<_>>>()?;
    is_packing(g, &vertices)
}
