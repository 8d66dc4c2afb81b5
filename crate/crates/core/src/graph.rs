//! Simple undirected graphs stored as bit rows, with BFS distance layers and
//! enumeration of arcs, 2-arcs and 2-geodesics.

use alloc::collections::VecDeque;
use alloc::vec::Vec;
use alloc::vec;
use core::fmt;

use crate::perm::{Perm, MAX_DEGREE};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{0} vertices exceeds the supported maximum")]
    TooLarge(usize),
    #[error("relabelling has degree {got}, expected {expected}")]
    RelabelDegree { got: usize, expected: usize },
}

/// A simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// BFS layers `Γ_0(u), Γ_1(u), ...` from a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistancePartition {
    pub root: usize,
    pub layers: Vec<Vec<usize>>,
}

impl DistancePartition {
    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.len()).collect()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_DEGREE {
            return Err(GraphError::TooLarge(n));
        }
        let words = n.div_ceil(64);
        Ok(Graph {
            n,
            words,
            rows: vec![0; n * words],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Adjacency given by a symmetric predicate; the diagonal is ignored.
    pub fn from_fn(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// The bit row of `u`: bit `v` set iff `u ~ v`.
    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.row(u).iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                out.push(w * 64 + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("same size");
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    pub fn valency_if_regular(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|u| self.degree(u) == d).then_some(d)
    }

    /// BFS distances from `u`; `None` for unreachable vertices.
    pub fn distances_from(&self, u: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        if u >= self.n {
            return dist;
        }
        dist[u] = Some(0);
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap_or(0);
            for y in self.neighbors(x) {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances_from(0).iter().all(|d| d.is_some())
    }

    pub fn distance_partition(&self, u: usize) -> Result<DistancePartition, GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: u, n: self.n });
        }
        let mut layers: Vec<Vec<usize>> = Vec::new();
        for (v, d) in self.distances_from(u).into_iter().enumerate() {
            if let Some(d) = d {
                if layers.len() <= d {
                    layers.resize(d + 1, Vec::new());
                }
                layers[d].push(v);
            }
        }
        Ok(DistancePartition { root: u, layers })
    }

    /// The full distance matrix, row-major; errors on disconnected graphs.
    pub fn distance_matrix(&self) -> Result<Vec<usize>, GraphError> {
        let mut out = Vec::with_capacity(self.n * self.n);
        for u in 0..self.n {
            for d in self.distances_from(u) {
                out.push(d.ok_or(GraphError::Disconnected)?);
            }
        }
        Ok(out)
    }

    pub fn diameter(&self) -> Result<usize, GraphError> {
        let mut best = 0;
        for u in 0..self.n {
            for d in self.distances_from(u) {
                best = best.max(d.ok_or(GraphError::Disconnected)?);
            }
        }
        Ok(best)
    }

    /// Length of a shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for y in self.neighbors(x) {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Ordered pairs of adjacent vertices, lexicographic.
    pub fn enumerate_arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.neighbors(u).into_iter().map(move |v| (u, v)))
            .collect()
    }

    /// Triples `(u, v, w)` with `u ~ v ~ w` and `u != w`, lexicographic.
    pub fn enumerate_2arcs(&self) -> Vec<(usize, usize, usize)> {
        self.two_arcs_where(|_, _| true)
    }

    /// 2-arcs whose ends are non-adjacent, lexicographic.
    pub fn enumerate_2geodesics(&self) -> Vec<(usize, usize, usize)> {
        self.two_arcs_where(|u, w| !self.has_edge(u, w))
    }

    fn two_arcs_where(&self, keep: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u) {
                for w in self.neighbors(v) {
                    if w != u && keep(u, w) {
                        out.push((u, v, w));
                    }
                }
            }
        }
        out
    }

    pub fn count_arcs(&self) -> usize {
        2 * self.edge_count()
    }

    pub fn count_2arcs(&self) -> usize {
        (0..self.n)
            .map(|v| {
                let d = self.degree(v);
                d * d.saturating_sub(1)
            })
            .sum()
    }

    pub fn count_2geodesics(&self) -> usize {
        // Each middle vertex v loses the ordered adjacent pairs inside Γ(v).
        let closing: usize = (0..self.n)
            .map(|v| {
                self.neighbors(v)
                    .into_iter()
                    .map(|u| self.common_neighbors(u, v))
                    .sum::<usize>()
            })
            .sum();
        self.count_2arcs() - closing
    }

    /// The graph with vertex `i` renamed `perm(i)`.
    pub fn relabel(&self, perm: &Perm) -> Result<Graph, GraphError> {
        if perm.degree() != self.n {
            return Err(GraphError::RelabelDegree {
                got: perm.degree(),
                expected: self.n,
            });
        }
        let mut g = Graph::empty(self.n)?;
        for (u, v) in self.edges() {
            g.set_edge(perm.image(u), perm.image(v));
        }
        Ok(g)
    }

    /// The graph whose vertex `i` is old vertex `order[i]`.
    pub fn permuted_by_order(&self, order: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n).expect("same size");
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(order[i], order[j]) {
                    g.set_edge(i, j);
                }
            }
        }
        g
    }

    pub fn is_automorphism(&self, perm: &Perm) -> bool {
        perm.degree() == self.n
            && self
                .edges()
                .iter()
                .all(|&(u, v)| self.has_edge(perm.image(u), perm.image(v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_fn(n, |_, _| true).unwrap()
    }

    fn hamming23() -> Graph {
        Graph::from_fn(9, |u, v| (u / 3 == v / 3) != (u % 3 == v % 3)).unwrap()
    }

    fn brute_two_arcs(g: &Graph, geodesic: bool) -> Vec<(usize, usize, usize)> {
        let n = g.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    if g.has_edge(u, v)
                        && g.has_edge(v, w)
                        && u != w
                        && (!geodesic || !g.has_edge(u, w))
                    {
                        out.push((u, v, w));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn complete_graph_basics() {
        let k4 = complete(4);
        assert_eq!(k4.girth(), Some(3));
        assert_eq!(k4.diameter(), Ok(1));
        assert_eq!(k4.count_arcs(), 12);
        assert_eq!(k4.enumerate_arcs().len(), 12);
        assert_eq!(k4.enumerate_2arcs().len(), 24);
        assert!(k4.enumerate_2geodesics().is_empty());
        assert_eq!(complete(7).distance_partition(3).unwrap().layer_sizes(), vec![1, 6]);
    }

    #[test]
    fn cycle_counts() {
        for n in 3..10 {
            let c = cycle(n);
            assert_eq!(c.enumerate_arcs().len(), 2 * n);
            assert_eq!(c.enumerate_2arcs().len(), 2 * n);
            assert_eq!(c.girth(), Some(n));
        }
        assert_eq!(cycle(5).enumerate_2geodesics().len(), 10);
        assert_eq!(cycle(5).enumerate_2geodesics(), brute_two_arcs(&cycle(5), true));
        let c4 = cycle(4);
        assert_eq!(c4.diameter(), Ok(2));
        assert!(!c4.enumerate_2geodesics().is_empty());
    }

    #[test]
    fn hamming_two_geodesics() {
        let h = hamming23();
        let geo = h.enumerate_2geodesics();
        assert_eq!(geo, brute_two_arcs(&h, true));
        // Each vertex has 4 neighbours; each neighbour has 2 further
        // neighbours at distance 2 from the start.
        assert_eq!(geo.len(), 9 * 4 * 2);
        assert_eq!(h.count_2geodesics(), geo.len());
    }

    #[test]
    fn forest_has_infinite_girth() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.girth(), None);
        assert_eq!(star.valency_if_regular(), None);
    }

    #[test]
    fn disconnected_diameter_errors() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.diameter(), Err(GraphError::Disconnected));
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut k = 0;
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn geodesics_are_non_closing_two_arcs(g in arb_graph(10)) {
            let arcs2 = g.enumerate_2arcs();
            let geo = g.enumerate_2geodesics();
            let expected: Vec<_> = arcs2.iter().copied().filter(|&(u, _, w)| !g.has_edge(u, w)).collect();
            prop_assert_eq!(&geo, &expected);
            prop_assert_eq!(&arcs2, &brute_two_arcs(&g, false));
            prop_assert_eq!(g.count_2arcs(), arcs2.len());
            prop_assert_eq!(g.count_2geodesics(), geo.len());
            prop_assert_eq!(g.count_arcs(), 2 * g.edges().len());
            // girth 3 iff some 2-arc closes a triangle
            prop_assert_eq!(g.girth() == Some(3), arcs2.len() != geo.len());
        }

        #[test]
        fn complement_involution(g in arb_graph(12)) {
            let c = g.complement();
            prop_assert_eq!(c.complement(), g.clone());
            for u in 0..g.n() {
                prop_assert_eq!(g.degree(u) + c.degree(u), g.n() - 1);
            }
        }

        #[test]
        fn distance_layers_consistent(g in arb_graph(12)) {
            let dm: Vec<Vec<Option<usize>>> = (0..g.n()).map(|u| g.distances_from(u)).collect();
            for u in 0..g.n() {
                for v in 0..g.n() {
                    prop_assert_eq!(dm[u][v], dm[v][u]);
                }
                let part = g.distance_partition(u).unwrap();
                for (i, layer) in part.layers.iter().enumerate() {
                    for &v in layer {
                        prop_assert_eq!(dm[u][v], Some(i));
                    }
                }
                for (a, b) in g.edges() {
                    if let (Some(da), Some(db)) = (dm[u][a], dm[u][b]) {
                        prop_assert!(da.abs_diff(db) <= 1);
                    }
                }
            }
        }
    }
}
