//! One-mode projections.
//!
//! Two routes compute the same projection:
//!
//! * the matrix scan ([`project_matrix`]) tests every row pair of the
//!   bi-adjacency matrix column by column, `O(n1² · n2)` in the worst case;
//! * wedge enumeration ([`project_sparse`], [`project_weighted`]) walks
//!   `u → s → v` paths in the adjacency lists, `O(Σ_s deg(s)²)`.
//!
//! Projecting `S` instead of `U` is always done on the transposed graph.

use serde::Serialize;
use thiserror::Error;

use crate::exec::{self, Execution};
use crate::graph::{BiAdjacencyMatrix, BipartiteGraph};

/// Which vertex set survives the projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Side {
    #[default]
    ProjectU,
    ProjectS,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectionError {
    #[error("vertex {index} is out of range for a projection on {n} vertices")]
    InvalidVertex { index: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(usize, usize),
}

/// Simple undirected graph. Edges are stored once as `(i, j)` with `i < j`,
/// sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct UnipartiteGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Undirected graph with integer edge weights, stored like
/// [`UnipartiteGraph`] with the weight alongside each pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct WeightedUnipartiteGraph {
    n: usize,
    edges: Vec<(usize, usize, u64)>,
}

fn normalize_pair(n: usize, i: usize, j: usize) -> Result<(usize, usize), ProjectionError> {
    for index in [i, j] {
        if index >= n {
            return Err(ProjectionError::InvalidVertex { index, n });
        }
    }
    match i.cmp(&j) {
        std::cmp::Ordering::Less => Ok((i, j)),
        std::cmp::Ordering::Greater => Ok((j, i)),
        std::cmp::Ordering::Equal => Err(ProjectionError::SelfLoop(i)),
    }
}

impl UnipartiteGraph {
    /// Builds a graph from unordered pairs given in any order.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self, ProjectionError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = pairs
            .into_iter()
            .map(|(i, j)| normalize_pair(n, i, j))
            .collect::<Result<Vec<_>, _>>()?;
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(ProjectionError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let key = if i < j { (i, j) } else { (j, i) };
        self.edges.binary_search(&key).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        !self.edges.iter().any(|&(i, j)| i == v || j == v)
    }

    /// Number of connected components, isolated vertices included.
    pub fn component_count(&self) -> usize {
        let mut dsu = DisjointSets::new(self.n);
        let mut merges = 0;
        for &(i, j) in &self.edges {
            if dsu.union(i, j) {
                merges += 1;
            }
        }
        self.n - merges
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Returns a copy without the edge `{i, j}`.
    pub fn without_edge(&self, i: usize, j: usize) -> Self {
        let key = if i < j { (i, j) } else { (j, i) };
        Self { n: self.n, edges: self.edges.iter().copied().filter(|&e| e != key).collect() }
    }

    /// Dense symmetric 0/1 adjacency matrix with an empty diagonal.
    pub fn to_adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let mut a = vec![vec![0u8; self.n]; self.n];
        for &(i, j) in &self.edges {
            a[i][j] = 1;
            a[j][i] = 1;
        }
        a
    }
}

impl WeightedUnipartiteGraph {
    /// Builds a weighted graph from `(i, j, w)` triples in any order.
    ///
    /// Structure is validated (range, self-loops, duplicates) but weights are
    /// taken as given, so projections read from outside can still be checked.
    pub fn from_weighted_edges<I>(n: usize, triples: I) -> Result<Self, ProjectionError>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut edges = triples
            .into_iter()
            .map(|(i, j, w)| normalize_pair(n, i, j).map(|(a, b)| (a, b, w)))
            .collect::<Result<Vec<_>, _>>()?;
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(ProjectionError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<u64> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.edges
            .binary_search_by(|&(a, b, _)| (a, b).cmp(&key))
            .ok()
            .map(|pos| self.edges[pos].2)
    }

    /// Sum of all edge weights.
    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    pub fn max_weight(&self) -> Option<u64> {
        self.edges.iter().map(|e| e.2).max()
    }

    /// Drops the weights, keeping the support as an unweighted graph.
    pub fn strip_weights(&self) -> UnipartiteGraph {
        UnipartiteGraph { n: self.n, edges: self.edges.iter().map(|&(i, j, _)| (i, j)).collect() }
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Row-pair scan of the bi-adjacency matrix. A pair is linked as soon as the
/// first shared column is found.
pub fn project_matrix(matrix: &BiAdjacencyMatrix) -> UnipartiteGraph {
    project_matrix_with(matrix, Execution::default())
}

pub fn project_matrix_with(matrix: &BiAdjacencyMatrix, exec: Execution) -> UnipartiteGraph {
    let n1 = matrix.rows();
    let rows = exec::map_range(exec, n1, |i| {
        let row_i = matrix.row(i);
        let mut linked = Vec::new();
        for j in i + 1..n1 {
            let row_j = matrix.row(j);
            for k in 0..row_i.len() {
                if row_i[k] == 1 && row_j[k] == 1 {
                    linked.push(j);
                    break;
                }
            }
        }
        linked
    });
    let edges = rows
        .into_iter()
        .enumerate()
        .flat_map(|(i, js)| js.into_iter().map(move |j| (i, j)))
        .collect();
    UnipartiteGraph { n: n1, edges }
}

/// Matrix scan that counts every shared column instead of stopping at the
/// first one.
pub fn project_matrix_weighted(matrix: &BiAdjacencyMatrix) -> WeightedUnipartiteGraph {
    project_matrix_weighted_with(matrix, Execution::default())
}

pub fn project_matrix_weighted_with(
    matrix: &BiAdjacencyMatrix,
    exec: Execution,
) -> WeightedUnipartiteGraph {
    let n1 = matrix.rows();
    let rows = exec::map_range(exec, n1, |i| {
        let row_i = matrix.row(i);
        let mut linked = Vec::new();
        for j in i + 1..n1 {
            let shared =
                row_i.iter().zip(matrix.row(j)).filter(|&(&a, &b)| a == 1 && b == 1).count();
            if shared > 0 {
                linked.push((j, shared as u64));
            }
        }
        linked
    });
    let edges = rows
        .into_iter()
        .enumerate()
        .flat_map(|(i, js)| js.into_iter().map(move |(j, w)| (i, j, w)))
        .collect();
    WeightedUnipartiteGraph { n: n1, edges }
}

// Per-worker scratch for wedge enumeration: a dense counter over target
// vertices plus the list of counters touched for the current row.
struct WedgeScratch {
    counts: Vec<u64>,
    touched: Vec<usize>,
}

fn wedge_rows(g: &BipartiteGraph, exec: Execution) -> Vec<Vec<(usize, u64)>> {
    let n1 = g.n1();
    exec::map_range_with(
        exec,
        n1,
        || WedgeScratch { counts: vec![0; n1], touched: Vec::new() },
        |scratch, u| {
            for &s in g.neighbors_u(u) {
                let nbrs = g.neighbors_s(s);
                // Only v > u, so each unordered pair is produced from its
                // smaller endpoint.
                let start = nbrs.partition_point(|&v| v <= u);
                for &v in &nbrs[start..] {
                    if scratch.counts[v] == 0 {
                        scratch.touched.push(v);
                    }
                    scratch.counts[v] += 1;
                }
            }
            scratch.touched.sort_unstable();
            let row = scratch
                .touched
                .drain(..)
                .map(|v| (v, std::mem::take(&mut scratch.counts[v])))
                .collect();
            row
        },
    )
}

fn oriented(g: &BipartiteGraph, side: Side) -> std::borrow::Cow<'_, BipartiteGraph> {
    match side {
        Side::ProjectU => std::borrow::Cow::Borrowed(g),
        Side::ProjectS => std::borrow::Cow::Owned(g.transpose()),
    }
}

/// Unweighted projection by wedge enumeration.
pub fn project_sparse(g: &BipartiteGraph, side: Side) -> UnipartiteGraph {
    project_sparse_with(g, side, Execution::default())
}

pub fn project_sparse_with(g: &BipartiteGraph, side: Side, exec: Execution) -> UnipartiteGraph {
    project_weighted_with(g, side, exec).strip_weights()
}

/// Weighted projection: the weight of `{i, j}` is the number of common
/// neighbours of `i` and `j` on the opposite side.
pub fn project_weighted(g: &BipartiteGraph, side: Side) -> WeightedUnipartiteGraph {
    project_weighted_with(g, side, Execution::default())
}

pub fn project_weighted_with(
    g: &BipartiteGraph,
    side: Side,
    exec: Execution,
) -> WeightedUnipartiteGraph {
    let g = oriented(g, side);
    let rows = wedge_rows(&g, exec);
    let edges = rows
        .into_iter()
        .enumerate()
        .flat_map(|(i, js)| js.into_iter().map(move |(j, w)| (i, j, w)))
        .collect();
    WeightedUnipartiteGraph { n: g.n1(), edges }
}

/// Support of a weighted projection.
pub fn strip_weights(wg: &WeightedUnipartiteGraph) -> UnipartiteGraph {
    wg.strip_weights()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use proptest::prelude::*;

    // Paper labels are 1-based; indices here are 0-based.
    const FIG2_EDGES: [(usize, usize); 7] = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 5)];
    const FIG3_EDGES: [(usize, usize); 4] = [(0, 1), (0, 2), (1, 2), (1, 3)];

    // Independent oracle: pairwise intersection of neighbour sets via
    // HashSet, no sorted-list assumptions.
    fn brute_weights(g: &BipartiteGraph) -> Vec<(usize, usize, u64)> {
        use std::collections::HashSet;
        let sets: Vec<HashSet<usize>> =
            (0..g.n1()).map(|u| g.neighbors_u(u).iter().copied().collect()).collect();
        let mut out = Vec::new();
        for i in 0..g.n1() {
            for j in i + 1..g.n1() {
                let w = sets[i].intersection(&sets[j]).count() as u64;
                if w > 0 {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    #[test]
    fn matrix_scan_reproduces_figure_two() {
        let p = project_matrix(&matrix_m());
        assert_eq!(p.n(), 6);
        assert_eq!(p.edges(), &FIG2_EDGES);
    }

    #[test]
    fn matrix_scan_trivial_inputs() {
        let p = project_matrix(&BiAdjacencyMatrix::zeros(3, 3).unwrap());
        assert_eq!((p.n(), p.edge_count()), (3, 0));
        let k = project_matrix(&BiAdjacencyMatrix::new(4, 2, vec![1; 8]).unwrap());
        assert_eq!(k.edge_count(), 6);
    }

    #[test]
    fn sparse_matches_both_figures() {
        let g = graph_m();
        assert_eq!(project_sparse(&g, Side::ProjectU).edges(), &FIG2_EDGES);
        let s = project_sparse(&g, Side::ProjectS);
        assert_eq!(s.n(), 4);
        assert_eq!(s.edges(), &FIG3_EDGES);
        let e = BipartiteGraph::from_edge_list(3, 2, []).unwrap();
        assert_eq!(project_sparse(&e, Side::ProjectU).edge_count(), 0);
        assert_eq!(project_sparse(&e, Side::ProjectS).edge_count(), 0);
    }

    #[test]
    fn weighted_example() {
        let w = project_weighted(&graph_m(), Side::ProjectU);
        assert_eq!(w.weight(1, 2), Some(2));
        let ones = w.edges().iter().filter(|e| e.2 == 1).count();
        assert_eq!(ones, 6);
        assert_eq!(w.total_weight(), 8);
        assert_eq!(w.edges().to_vec(), brute_weights(&graph_m()));
        assert_eq!(project_matrix_weighted(&matrix_m()), w);
    }

    #[test]
    fn weighted_complete() {
        let k = BipartiteGraph::complete(5, 3).unwrap();
        let w = project_weighted(&k, Side::ProjectU);
        assert_eq!(w.edge_count(), 10);
        assert!(w.edges().iter().all(|e| e.2 == 3));
        let e = BipartiteGraph::from_edge_list(4, 4, []).unwrap();
        assert_eq!(project_weighted(&e, Side::ProjectU).edge_count(), 0);
    }

    #[test]
    fn strip_weights_examples() {
        let w = project_weighted(&graph_m(), Side::ProjectU);
        assert_eq!(strip_weights(&w), project_matrix(&matrix_m()));
        assert_eq!(strip_weights(&WeightedUnipartiteGraph::default()), UnipartiteGraph::default());
        let k3 = strip_weights(&project_weighted(&BipartiteGraph::complete(3, 3).unwrap(), Side::ProjectU));
        assert_eq!(k3.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn isolated_vertices_are_kept() {
        let g = BipartiteGraph::from_edge_list(4, 2, [(0, 0), (1, 0)]).unwrap();
        let p = project_sparse(&g, Side::ProjectU);
        assert_eq!(p.n(), 4);
        assert!(p.is_isolated(2) && p.is_isolated(3));
        assert_eq!(p.component_count(), 3);
    }

    #[test]
    fn unipartite_constructor_validates() {
        assert_eq!(UnipartiteGraph::from_edges(3, [(1, 1)]), Err(ProjectionError::SelfLoop(1)));
        assert_eq!(
            UnipartiteGraph::from_edges(3, [(0, 1), (1, 0)]),
            Err(ProjectionError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            WeightedUnipartiteGraph::from_weighted_edges(2, [(0, 2, 1)]),
            Err(ProjectionError::InvalidVertex { index: 2, n: 2 })
        ));
        let g = UnipartiteGraph::from_edges(3, [(2, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2)]);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = graph_m();
        for side in [Side::ProjectU, Side::ProjectS] {
            assert_eq!(
                project_weighted_with(&g, side, Execution::Sequential),
                project_weighted_with(&g, side, Execution::Parallel)
            );
        }
        assert_eq!(
            project_matrix_with(&matrix_m(), Execution::Sequential),
            project_matrix_with(&matrix_m(), Execution::Parallel)
        );
    }

    fn arb_graph() -> impl Strategy<Value = BipartiteGraph> {
        (1usize..14, 1usize..14)
            .prop_flat_map(|(n1, n2)| {
                (Just(n1), Just(n2), prop::collection::vec((0..n1, 0..n2), 0..80))
            })
            .prop_map(|(n1, n2, pairs)| BipartiteGraph::from_edge_list(n1, n2, pairs).unwrap())
    }

    proptest! {
        #[test]
        fn three_routes_agree(g in arb_graph()) {
            let dense = project_matrix(&g.to_biadjacency());
            let sparse = project_sparse(&g, Side::ProjectU);
            let weighted = project_weighted(&g, Side::ProjectU);
            prop_assert_eq!(&dense, &sparse);
            prop_assert_eq!(&strip_weights(&weighted), &sparse);
            prop_assert_eq!(weighted.edges().to_vec(), brute_weights(&g));
            prop_assert_eq!(project_matrix_weighted(&g.to_biadjacency()), weighted);
        }

        #[test]
        fn transpose_duality(g in arb_graph()) {
            prop_assert_eq!(
                project_sparse(&g, Side::ProjectS),
                project_sparse(&g.transpose(), Side::ProjectU)
            );
        }

        #[test]
        fn adding_an_edge_is_monotone(g in arb_graph(), u in 0usize..14, s in 0usize..14) {
            let (u, s) = (u % g.n1(), s % g.n2());
            let bigger = g.with_edge(u, s).unwrap();
            let before = project_weighted(&g, Side::ProjectU);
            let after = project_weighted(&bigger, Side::ProjectU);
            for &(i, j, w) in before.edges() {
                prop_assert!(after.weight(i, j).is_some_and(|w2| w2 >= w));
            }
        }

        #[test]
        fn isolated_u_vertices_stay_isolated(g in arb_graph()) {
            let p = project_sparse(&g, Side::ProjectU);
            for u in (0..g.n1()).filter(|&u| g.degree_u(u) == 0) {
                prop_assert!(p.is_isolated(u));
            }
        }

        #[test]
        fn dense_adjacency_is_symmetric(g in arb_graph()) {
            let a = project_sparse(&g, Side::ProjectU).to_adjacency_matrix();
            for (i, row) in a.iter().enumerate() {
                prop_assert_eq!(row[i], 0);
                for (j, &cell) in row.iter().enumerate() {
                    prop_assert_eq!(cell, a[j][i]);
                }
            }
        }
    }
}
