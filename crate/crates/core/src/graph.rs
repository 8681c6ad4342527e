//! Bipartite graph representation.
//!
//! A [`BipartiteGraph`] has two vertex sets, `U` with `n1` vertices and `S`
//! with `n2` vertices, each indexed densely from zero. Edges only run between
//! the two sets. Both adjacency directions are materialised and kept sorted,
//! so neighbourhood intersections are linear merges.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// One of the two vertex sets of a bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Part {
    U,
    S,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part::U => f.write_str("U"),
            Part::S => f.write_str("S"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex index {index} is out of range for side {side}")]
    InvalidVertex { side: Part, index: usize },
    #[error("matrix cell ({row}, {col}) is not 0 or 1")]
    MalformedMatrix { row: usize, col: usize },
    #[error("both vertex sets must be non-empty (got n1={n1}, n2={n2})")]
    EmptyPartition { n1: usize, n2: usize },
}

/// Dense 0/1 bi-adjacency matrix, `rows = n1`, `cols = n2`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiAdjacencyMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<u8>,
}

impl BiAdjacencyMatrix {
    /// Builds a matrix from row-major cells. Every cell must be 0 or 1.
    pub fn new(rows: usize, cols: usize, cells: Vec<u8>) -> Result<Self, GraphError> {
        if rows == 0 || cols == 0 {
            return Err(GraphError::EmptyPartition { n1: rows, n2: cols });
        }
        assert_eq!(cells.len(), rows * cols, "cell buffer does not match {rows}x{cols}");
        if let Some(pos) = cells.iter().position(|&c| c > 1) {
            return Err(GraphError::MalformedMatrix { row: pos / cols, col: pos % cols });
        }
        Ok(Self { rows, cols, cells })
    }

    /// Builds a matrix from nested rows. A row of the wrong width is reported
    /// as malformed at the first column where it diverges.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, GraphError> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut cells = Vec::with_capacity(n_rows * n_cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n_cols {
                return Err(GraphError::MalformedMatrix { row: i, col: row.len().min(n_cols) });
            }
            cells.extend_from_slice(row);
        }
        Self::new(n_rows, n_cols, cells)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self, GraphError> {
        Self::new(rows, cols, vec![0; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }
}

/// Degree totals on both sides. `sum_u == sum_s == m` for every graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeSums {
    pub sum_u: usize,
    pub sum_s: usize,
    pub m: usize,
}

/// Raw size and density figures for sparse/dense comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityStats {
    pub n1: usize,
    pub n2: usize,
    pub m: usize,
    pub max_edges: usize,
    pub density: f64,
    pub linear_budget: usize,
}

/// An immutable simple bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    n1: usize,
    n2: usize,
    edges: Vec<(usize, usize)>,
    adj_u: Vec<Vec<usize>>,
    adj_s: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Builds a graph from `(u, s)` index pairs. Duplicate pairs collapse to a
    /// single edge and input order does not matter.
    pub fn from_edge_list<I>(n1: usize, n2: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n1 == 0 || n2 == 0 {
            return Err(GraphError::EmptyPartition { n1, n2 });
        }
        let mut edges = Vec::new();
        for (u, s) in pairs {
            if u >= n1 {
                return Err(GraphError::InvalidVertex { side: Part::U, index: u });
            }
            if s >= n2 {
                return Err(GraphError::InvalidVertex { side: Part::S, index: s });
            }
            edges.push((u, s));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_sorted_edges(n1, n2, edges))
    }

    pub fn from_biadjacency(matrix: &BiAdjacencyMatrix) -> Self {
        let mut edges = Vec::new();
        for i in 0..matrix.rows() {
            for (j, &cell) in matrix.row(i).iter().enumerate() {
                if cell == 1 {
                    edges.push((i, j));
                }
            }
        }
        Self::from_sorted_edges(matrix.rows(), matrix.cols(), edges)
    }

    /// Complete bipartite graph `K(n1, n2)`.
    pub fn complete(n1: usize, n2: usize) -> Result<Self, GraphError> {
        Self::from_edge_list(n1, n2, (0..n1).flat_map(|u| (0..n2).map(move |s| (u, s))))
    }

    // `edges` must be sorted, deduplicated and in range.
    fn from_sorted_edges(n1: usize, n2: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj_u = vec![Vec::new(); n1];
        let mut adj_s = vec![Vec::new(); n2];
        // Sorted by (u, s) means both lists come out ascending.
        for &(u, s) in &edges {
            adj_u[u].push(s);
            adj_s[s].push(u);
        }
        let g = Self { n1, n2, edges, adj_u, adj_s };
        let sums = g.degree_sums();
        assert!(
            sums.sum_u == sums.m && sums.sum_s == sums.m,
            "degree sums diverged from edge count: {sums:?}"
        );
        g
    }

    pub fn to_biadjacency(&self) -> BiAdjacencyMatrix {
        let mut cells = vec![0u8; self.n1 * self.n2];
        for &(u, s) in &self.edges {
            cells[u * self.n2 + s] = 1;
        }
        BiAdjacencyMatrix { rows: self.n1, cols: self.n2, cells }
    }

    /// Swaps the roles of `U` and `S`.
    pub fn transpose(&self) -> Self {
        let mut edges: Vec<_> = self.edges.iter().map(|&(u, s)| (s, u)).collect();
        edges.sort_unstable();
        Self::from_sorted_edges(self.n2, self.n1, edges)
    }

    /// Returns a copy with one more edge. Adding an existing edge is a no-op.
    pub fn with_edge(&self, u: usize, s: usize) -> Result<Self, GraphError> {
        Self::from_edge_list(self.n1, self.n2, self.edges.iter().copied().chain([(u, s)]))
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by `(u, s)`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors_u(&self, u: usize) -> &[usize] {
        &self.adj_u[u]
    }

    pub fn neighbors_s(&self, s: usize) -> &[usize] {
        &self.adj_s[s]
    }

    pub fn degree_u(&self, u: usize) -> usize {
        self.adj_u[u].len()
    }

    pub fn degree_s(&self, s: usize) -> usize {
        self.adj_s[s].len()
    }

    pub fn has_edge(&self, u: usize, s: usize) -> bool {
        u < self.n1 && self.adj_u[u].binary_search(&s).is_ok()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n1 * self.n2
    }

    pub fn degree_sums(&self) -> DegreeSums {
        DegreeSums {
            sum_u: self.adj_u.iter().map(Vec::len).sum(),
            sum_s: self.adj_s.iter().map(Vec::len).sum(),
            m: self.edges.len(),
        }
    }

    /// Breadth-first traversal from `u0`; true iff every vertex on both sides
    /// is reached.
    pub fn is_connected(&self) -> bool {
        let mut seen_u = vec![false; self.n1];
        let mut seen_s = vec![false; self.n2];
        let mut queue = VecDeque::from([(Part::U, 0)]);
        seen_u[0] = true;
        let mut reached = 1;
        while let Some((part, v)) = queue.pop_front() {
            let (nbrs, seen, other) = match part {
                Part::U => (&self.adj_u[v], &mut seen_s, Part::S),
                Part::S => (&self.adj_s[v], &mut seen_u, Part::U),
            };
            for &w in nbrs {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back((other, w));
                }
            }
        }
        reached == self.n1 + self.n2
    }

    pub fn density_stats(&self) -> DensityStats {
        let max_edges = self.n1 * self.n2;
        DensityStats {
            n1: self.n1,
            n2: self.n2,
            m: self.edges.len(),
            max_edges,
            density: self.edges.len() as f64 / max_edges as f64,
            linear_budget: self.n1 + self.n2,
        }
    }

    /// `(min, max)` degree over the `U` side.
    pub fn degree_range_u(&self) -> (usize, usize) {
        min_max(self.adj_u.iter().map(Vec::len))
    }

    /// `(min, max)` degree over the `S` side.
    pub fn degree_range_s(&self) -> (usize, usize) {
        min_max(self.adj_s.iter().map(Vec::len))
    }
}

fn min_max(it: impl Iterator<Item = usize>) -> (usize, usize) {
    it.fold((usize::MAX, 0), |(lo, hi), d| (lo.min(d), hi.max(d)))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// The 6x4 example matrix used throughout the tests (rows u1..u6).
    pub const MATRIX_M: [[u8; 4]; 6] = [
        [1, 0, 0, 0],
        [1, 1, 0, 0],
        [1, 1, 1, 0],
        [0, 1, 0, 1],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ];

    pub fn matrix_m() -> BiAdjacencyMatrix {
        BiAdjacencyMatrix::from_rows(&MATRIX_M).unwrap()
    }

    pub fn graph_m() -> BipartiteGraph {
        BipartiteGraph::from_biadjacency(&matrix_m())
    }
}
