use std::collections::HashMap;

use super::{Cell, Graph, Label, WindowSpec};
use crate::error::{invalid, Result};

/// `P_n` on vertices labelled `1..=n`.
pub fn path_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return invalid("path graph needs at least one vertex");
    }
    let labels = (1..=n as i64).map(Label::Int).collect();
    Graph::from_edges(labels, (1..n).map(|i| (i - 1, i)))
}

/// Grid with `rows * cols` vertices labelled by cells `(x, y)`,
/// `1 <= x <= cols`, `1 <= y <= rows`.
pub fn grid_graph(rows: i64, cols: i64) -> Result<Graph> {
    if rows < 1 || cols < 1 {
        return invalid(format!("grid dimensions {rows}x{cols} must be positive"));
    }
    let cells: Vec<Cell> = (1..=cols)
        .flat_map(|x| (1..=rows).map(move |y| Cell::new(x, y)))
        .collect();
    lattice_graph(cells)
}

/// Subgraph of the integer grid induced by the window's cells.
pub fn triangle_window(spec: &WindowSpec) -> Result<Graph> {
    // WindowSpec::new already guarantees a non-empty cell set; re-check for
    // hand-built values.
    let cells = spec.cells();
    if cells.is_empty() {
        return invalid(format!("window {spec} has no cells"));
    }
    lattice_graph(cells)
}

/// Induced subgraph of the infinite grid on sorted, distinct cells.
fn lattice_graph(cells: Vec<Cell>) -> Result<Graph> {
    let index: HashMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut edges = Vec::new();
    for (i, c) in cells.iter().enumerate() {
        for next in [Cell::new(c.x + 1, c.y), Cell::new(c.x, c.y + 1)] {
            if let Some(&j) = index.get(&next) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(cells.into_iter().map(Label::Cell).collect(), edges)
}

/// The k-token graph: vertices are the k-subsets of `V(g)` in lexicographic
/// index order, adjacent when their symmetric difference is an edge of `g`.
pub fn token_graph(g: &Graph, k: usize) -> Result<Graph> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        return invalid(format!("token count k={k} must satisfy 1 <= k <= {n}"));
    }
    let subsets = combinations(n, k);
    let index: HashMap<&[usize], usize> =
        subsets.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();

    let mut edges = Vec::new();
    let mut scratch = Vec::with_capacity(k);
    for (i, set) in subsets.iter().enumerate() {
        for (pos, &a) in set.iter().enumerate() {
            for &b in g.neighbors(a) {
                if set.binary_search(&b).is_ok() {
                    continue;
                }
                scratch.clear();
                scratch.extend(set.iter().enumerate().filter(|&(p, _)| p != pos).map(|(_, &v)| v));
                scratch.push(b);
                scratch.sort_unstable();
                let j = index[scratch.as_slice()];
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    let labels = subsets
        .iter()
        .map(|s| Label::Subset(s.iter().map(|&v| g.label(v).clone()).collect()))
        .collect();
    Graph::from_edges(labels, edges)
}

/// All k-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&p| cur[p] < n - k + p) else {
            return out;
        };
        cur[pos] += 1;
        for p in pos + 1..k {
            cur[p] = cur[p - 1] + 1;
        }
    }
}

/// Weight-2 binary words of length `n`, adjacent when one is obtained from
/// the other by swapping two adjacent unequal bits.
///
/// Vertex `i` is the indicator word of the `i`-th 2-subset of `{1..n}` in
/// lexicographic order, so indices line up with `token_graph(P_n, 2)`.
pub fn gamma_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return invalid(format!("gamma graph needs length n >= 2, got {n}"));
    }
    let words: Vec<Vec<u8>> = combinations(n, 2)
        .into_iter()
        .map(|s| {
            let mut w = vec![b'0'; n];
            for i in s {
                w[i] = b'1';
            }
            w
        })
        .collect();
    let index: HashMap<&[u8], usize> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let mut edges = Vec::new();
    for (i, w) in words.iter().enumerate() {
        for p in 0..n - 1 {
            if w[p] != w[p + 1] {
                let mut swapped = w.clone();
                swapped.swap(p, p + 1);
                let j = index[swapped.as_slice()];
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    let labels = words
        .into_iter()
        .map(|w| Label::Bits(String::from_utf8(w).expect("ascii")))
        .collect();
    Graph::from_edges(labels, edges)
}

/// Cell of `T(n)` to the 2-subset `{x, y + 1}` of `{1..n+1}`.
pub fn cell_to_pair(c: Cell) -> (i64, i64) {
    (c.x, c.y + 1)
}

/// Inverse of [`cell_to_pair`]; requires `a < b`.
pub fn pair_to_cell(a: i64, b: i64) -> Cell {
    Cell::new(a.min(b), a.max(b) - 1)
}

/// The anti-diagonal reflection `(x, y) -> (n+1-y, n+1-x)` of `T(n)`.
pub fn reflect_cell(n: i64, c: Cell) -> Cell {
    Cell::new(n + 1 - c.y, n + 1 - c.x)
}

/// The reflection of `T(n)` as a permutation of the vertex indices of
/// `triangle_window(WindowSpec::full(n))`.
pub fn reflection_automorphism(n: i64) -> Result<Vec<usize>> {
    let g = triangle_window(&WindowSpec::full(n)?)?;
    Ok((0..g.vertex_count())
        .map(|v| {
            let c = g.cell(v).expect("lattice graph");
            g.cell_index(reflect_cell(n, c)).expect("reflection stays in T(n)")
        })
        .collect())
}
