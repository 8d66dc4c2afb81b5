//! Automorphism groups and canonical forms by equitable refinement and
//! backtracking over individualized vertices.
//!
//! The search tree is label-invariant: the target cell is the first smallest
//! non-singleton cell and children are tried in ascending order. Children in
//! one orbit of the automorphisms found so far that fix the current prefix
//! pointwise are explored once. A leaf equivalent to the first leaf yields an
//! automorphism and returns the search to the node where the two paths split.
//!
//! The automorphisms found form a strong generating set relative to the base
//! of vertices individualized along the first path, so the group order is
//! read off the chain without further sifting.

use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use num_bigint::BigUint;

use crate::graph::Graph;
use crate::perm::{Perm, PermError, PermGroup, UnionFind};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("search exceeded its budget of {0} nodes")]
    NodeBudgetExceeded(u64),
    #[error("invalid partition: {0}")]
    InvalidPartition(alloc::string::String),
    #[error("found a map that is not an automorphism")]
    NotAnAutomorphism,
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub node_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// An ordered partition of `0..n` into nonempty cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedPartition {
    cells: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn unit(n: usize) -> Self {
        OrderedPartition {
            cells: if n == 0 { vec![] } else { vec![(0..n).collect()] },
        }
    }

    pub fn from_cells(n: usize, cells: Vec<Vec<usize>>) -> Result<Self, SearchError> {
        let mut seen = vec![false; n];
        for cell in &cells {
            if cell.is_empty() {
                return Err(SearchError::InvalidPartition("empty cell".into()));
            }
            for &v in cell {
                if v >= n || seen[v] {
                    return Err(SearchError::InvalidPartition(format!("vertex {v}")));
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(SearchError::InvalidPartition("cells do not cover".into()));
        }
        Ok(OrderedPartition { cells })
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// Every vertex of a cell has the same number of neighbours in each cell.
    pub fn is_equitable(&self, g: &Graph) -> bool {
        self.cells.iter().all(|target| {
            let set = bitset(g.n(), target);
            self.cells.iter().all(|cell| {
                let c0 = count_into(g, cell[0], &set);
                cell.iter().all(|&v| count_into(g, v, &set) == c0)
            })
        })
    }
}

fn bitset(n: usize, vertices: &[usize]) -> Vec<u64> {
    let mut bits = vec![0u64; n.div_ceil(64)];
    for &v in vertices {
        bits[v / 64] |= 1 << (v % 64);
    }
    bits
}

#[inline]
fn count_into(g: &Graph, v: usize, set: &[u64]) -> usize {
    g.row(v)
        .iter()
        .zip(set)
        .map(|(a, b)| (a & b).count_ones() as usize)
        .sum()
}

/// The coarsest equitable partition refining `pi`.
pub fn refine(g: &Graph, pi: &OrderedPartition) -> OrderedPartition {
    let mut cells = pi.cells.clone();
    let queue: Vec<Vec<u64>> = cells.iter().map(|c| bitset(g.n(), c)).collect();
    refine_cells(g, &mut cells, queue);
    OrderedPartition { cells }
}

/// Splits cells against each queued splitter until stable. When a cell
/// splits, every fragment but the first largest is queued: counts into that
/// one follow from the parent and the others.
fn refine_cells(g: &Graph, cells: &mut Vec<Vec<usize>>, mut queue: Vec<Vec<u64>>) {
    let n = g.n();
    let mut head = 0;
    let mut counts = vec![0usize; n];
    while head < queue.len() && cells.len() < n {
        let splitter = core::mem::take(&mut queue[head]);
        head += 1;
        let mut i = 0;
        while i < cells.len() {
            if cells[i].len() == 1 {
                i += 1;
                continue;
            }
            let cell = &cells[i];
            for &v in cell {
                counts[v] = count_into(g, v, &splitter);
            }
            let c0 = counts[cell[0]];
            if cell.iter().all(|&v| counts[v] == c0) {
                i += 1;
                continue;
            }
            let mut sorted = cells[i].clone();
            sorted.sort_by_key(|&v| counts[v]);
            let mut fragments: Vec<Vec<usize>> = Vec::new();
            for v in sorted {
                match fragments.last_mut() {
                    Some(f) if counts[f[0]] == counts[v] => f.push(v),
                    _ => fragments.push(vec![v]),
                }
            }
            let largest = fragments
                .iter()
                .enumerate()
                .fold(0, |best, (k, f)| if f.len() > fragments[best].len() { k } else { best });
            for (k, f) in fragments.iter().enumerate() {
                if k != largest {
                    queue.push(bitset(n, f));
                }
            }
            let added = fragments.len();
            cells.splice(i..=i, fragments);
            i += added;
        }
    }
}

/// Bytes identifying the isomorphism class of a graph: the vertex count and
/// the upper triangle of the canonical adjacency matrix, column by column.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn n(&self) -> usize {
        u16::from_be_bytes([self.0[0], self.0[1]]) as usize
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({self})")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// Key of the graph whose vertex `i` is `g`'s vertex `lab[i]`.
fn leaf_key(g: &Graph, lab: &[usize]) -> Vec<u8> {
    let n = g.n();
    let mut out = Vec::with_capacity(2 + (n * n.saturating_sub(1) / 2).div_ceil(8));
    out.extend_from_slice(&(n as u16).to_be_bytes());
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        let row = g.row(lab[j]);
        for &li in &lab[..j] {
            acc = acc << 1 | (row[li / 64] >> (li % 64) & 1) as u8;
            bits += 1;
            if bits == 8 {
                out.push(acc);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(acc << (8 - bits));
    }
    out
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    /// Automorphism generators, each checked against every edge.
    pub generators: Vec<Perm>,
    /// Vertices individualized along the first path.
    pub base: Vec<usize>,
    pub group: PermGroup,
    /// Canonical vertex `i` is the input's `labeling[i]`.
    pub labeling: Vec<usize>,
    pub key: CanonicalKey,
    pub nodes: u64,
}

impl SearchResult {
    pub fn order(&self) -> BigUint {
        self.group.order()
    }
}

enum Outcome {
    Continue,
    JumpTo(usize),
}

struct Leaf {
    lab: Vec<usize>,
    key: Vec<u8>,
}

struct Search<'a> {
    g: &'a Graph,
    budget: u64,
    nodes: u64,
    gens: Vec<Perm>,
    first: Option<Leaf>,
    first_path: Vec<usize>,
    best: Option<Leaf>,
}

impl Search<'_> {
    fn record(&mut self, from: &[usize], to: &[usize]) -> Result<(), SearchError> {
        let mut images = vec![0; self.g.n()];
        for (&a, &b) in from.iter().zip(to) {
            images[a] = b;
        }
        let perm = Perm::from_images(images)?;
        if perm.is_identity() || self.gens.contains(&perm) {
            return Ok(());
        }
        if !self.g.is_automorphism(&perm) {
            return Err(SearchError::NotAnAutomorphism);
        }
        self.gens.push(perm);
        Ok(())
    }

    fn leaf(&mut self, cells: &[Vec<usize>], prefix: &[usize]) -> Result<Outcome, SearchError> {
        let lab: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let key = leaf_key(self.g, &lab);
        let Some(first) = &self.first else {
            self.first_path = prefix.to_vec();
            self.first = Some(Leaf {
                lab: lab.clone(),
                key: key.clone(),
            });
            self.best = Some(Leaf { lab, key });
            return Ok(Outcome::Continue);
        };
        if key == first.key {
            let from = first.lab.clone();
            self.record(&from, &lab)?;
            let common = prefix
                .iter()
                .zip(&self.first_path)
                .take_while(|(a, b)| a == b)
                .count();
            return Ok(Outcome::JumpTo(common));
        }
        let best = self.best.as_ref().expect("set with first");
        if key == best.key {
            let from = best.lab.clone();
            self.record(&from, &lab)?;
        } else if key < best.key {
            self.best = Some(Leaf { lab, key });
        }
        Ok(Outcome::Continue)
    }

    fn visit(
        &mut self,
        mut cells: Vec<Vec<usize>>,
        queue: Vec<Vec<u64>>,
        prefix: &mut Vec<usize>,
    ) -> Result<Outcome, SearchError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SearchError::NodeBudgetExceeded(self.budget));
        }
        refine_cells(self.g, &mut cells, queue);
        if cells.iter().all(|c| c.len() == 1) {
            return self.leaf(&cells, prefix);
        }
        let target = (0..cells.len())
            .filter(|&i| cells[i].len() > 1)
            .min_by_key(|&i| cells[i].len())
            .expect("partition not discrete");
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();

        let mut explored: Vec<usize> = Vec::new();
        let mut orbit_cache: Option<(usize, UnionFind)> = None;
        for &v in &candidates {
            if !explored.is_empty() {
                let stale = orbit_cache
                    .as_ref()
                    .is_none_or(|(count, _)| *count != self.gens.len());
                if stale {
                    let mut uf = UnionFind::new(self.g.n());
                    for p in &self.gens {
                        if prefix.iter().all(|&x| p.fixes(x)) {
                            for x in 0..self.g.n() {
                                uf.union(x, p.image(x));
                            }
                        }
                    }
                    orbit_cache = Some((self.gens.len(), uf));
                }
                let uf = &mut orbit_cache.as_mut().expect("just built").1;
                let rv = uf.find(v);
                if explored.iter().any(|&u| uf.find(u) == rv) {
                    continue;
                }
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&x| x != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            prefix.push(v);
            let outcome = self.visit(child, vec![bitset(self.g.n(), &[v])], prefix);
            prefix.pop();
            if let Outcome::JumpTo(k) = outcome? {
                if k < prefix.len() {
                    return Ok(Outcome::JumpTo(k));
                }
            }
        }
        Ok(Outcome::Continue)
    }
}

/// Searches `g` with the vertex colouring given by `initial`.
pub fn search_colored(
    g: &Graph,
    initial: &OrderedPartition,
    opts: &SearchOptions,
) -> Result<SearchResult, SearchError> {
    let n = g.n();
    let initial = OrderedPartition::from_cells(n, initial.cells.clone())?;
    let mut search = Search {
        g,
        budget: opts.node_budget,
        nodes: 0,
        gens: Vec::new(),
        first: None,
        first_path: Vec::new(),
        best: None,
    };
    let queue = initial.cells.iter().map(|c| bitset(n, c)).collect();
    search.visit(initial.cells, queue, &mut Vec::new())?;
    let best = search.best.expect("search reaches a leaf");
    let group = PermGroup::from_base_and_strong_generators(n, &search.first_path, &search.gens)?;
    Ok(SearchResult {
        generators: search.gens,
        base: search.first_path,
        group,
        labeling: best.lab,
        key: CanonicalKey(best.key),
        nodes: search.nodes,
    })
}

pub fn search(g: &Graph, opts: &SearchOptions) -> Result<SearchResult, SearchError> {
    search_colored(g, &OrderedPartition::unit(g.n()), opts)
}

pub fn automorphism_generators(g: &Graph, opts: &SearchOptions) -> Result<Vec<Perm>, SearchError> {
    Ok(search(g, opts)?.generators)
}

pub fn automorphism_group(g: &Graph, opts: &SearchOptions) -> Result<PermGroup, SearchError> {
    Ok(search(g, opts)?.group)
}

pub fn canonical_key(g: &Graph, opts: &SearchOptions) -> Result<CanonicalKey, SearchError> {
    Ok(search(g, opts)?.key)
}

/// The canonical form of `g`: vertex `i` is `g`'s vertex `labeling[i]`.
pub fn canonical_graph(g: &Graph, opts: &SearchOptions) -> Result<Graph, SearchError> {
    Ok(g.permuted_by_order(&search(g, opts)?.labeling))
}

/// An isomorphism `g → h` if one exists, checked edge by edge.
pub fn are_isomorphic(g: &Graph, h: &Graph, opts: &SearchOptions) -> Result<Option<Perm>, SearchError> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let (rg, rh) = (search(g, opts)?, search(h, opts)?);
    if rg.key != rh.key {
        return Ok(None);
    }
    let mut images = vec![0; g.n()];
    for (&a, &b) in rg.labeling.iter().zip(&rh.labeling) {
        images[a] = b;
    }
    let map = Perm::from_images(images)?;
    if g.edges()
        .iter()
        .any(|&(u, v)| !h.has_edge(map.image(u), map.image(v)))
    {
        return Err(SearchError::NotAnAutomorphism);
    }
    Ok(Some(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::schreier_sims;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_fn(n, |_, _| true).unwrap()
    }

    fn multipartite(m: usize, b: usize) -> Graph {
        Graph::from_fn(m * b, |u, v| u / b != v / b).unwrap()
    }

    fn order_of(g: &Graph) -> BigUint {
        search(g, &opts()).unwrap().order()
    }

    fn brute_aut_order(g: &Graph) -> usize {
        fn rec(g: &Graph, images: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut usize) {
            let k = images.len();
            if k == g.n() {
                *count += 1;
                return;
            }
            for v in 0..g.n() {
                if used[v] || g.degree(v) != g.degree(k) {
                    continue;
                }
                if (0..k).all(|u| g.has_edge(u, k) == g.has_edge(images[u], v)) {
                    used[v] = true;
                    images.push(v);
                    rec(g, images, used, count);
                    images.pop();
                    used[v] = false;
                }
            }
        }
        let mut count = 0;
        rec(g, &mut Vec::new(), &mut vec![false; g.n()], &mut count);
        count
    }

    fn random_relabel(g: &Graph, rng: &mut StdRng) -> Graph {
        let mut images: Vec<usize> = (0..g.n()).collect();
        images.shuffle(rng);
        g.relabel(&Perm::from_images(images).unwrap()).unwrap()
    }

    #[test]
    fn refine_examples() {
        let c6 = cycle(6);
        let unit = OrderedPartition::unit(6);
        assert_eq!(refine(&c6, &unit), unit);
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = refine(&star, &OrderedPartition::unit(4));
        assert_eq!(r.cells(), &[vec![1, 2, 3], vec![0]]);
        assert_eq!(refine(&star, &r), r);
        assert!(r.is_equitable(&star));
    }

    #[test]
    fn small_group_orders() {
        assert_eq!(order_of(&complete(4)), BigUint::from(24u32));
        assert_eq!(order_of(&cycle(9)), BigUint::from(18u32));
        assert_eq!(order_of(&Graph::empty(0).unwrap()), BigUint::from(1u32));
        assert_eq!(order_of(&Graph::empty(1).unwrap()), BigUint::from(1u32));
        assert_eq!(order_of(&Graph::empty(5).unwrap()), BigUint::from(120u32));
        // (b!)^m m!
        assert_eq!(order_of(&multipartite(3, 3)), BigUint::from(1296u32));
        assert_eq!(order_of(&multipartite(4, 2)), BigUint::from(384u32));
    }

    #[test]
    fn large_symmetric_groups_via_strong_generators() {
        let g = multipartite(5, 5);
        let r = search(&g, &opts()).unwrap();
        let expected = BigUint::from(120u32).pow(5) * BigUint::from(120u32);
        assert_eq!(r.order(), expected);
        // Independent check with full Schreier–Sims.
        let full = schreier_sims(25, &r.generators).unwrap();
        assert_eq!(full.order(), expected);
    }

    #[test]
    fn petersen_order() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        let g = Graph::from_edges(10, &edges).unwrap();
        let r = search(&g, &opts()).unwrap();
        assert_eq!(r.order(), BigUint::from(120u32));
        assert_eq!(schreier_sims(10, &r.generators).unwrap().order(), BigUint::from(120u32));
    }

    #[test]
    fn node_budget_is_enforced() {
        let g = complete(8);
        let tiny = SearchOptions { node_budget: 3 };
        assert_eq!(search(&g, &tiny).unwrap_err(), SearchError::NodeBudgetExceeded(3));
    }

    #[test]
    fn canonical_keys_distinguish_and_agree() {
        assert_ne!(
            canonical_key(&cycle(9), &opts()).unwrap(),
            canonical_key(&multipartite(3, 3), &opts()).unwrap()
        );
        let mut rng = StdRng::seed_from_u64(7);
        for g in [cycle(9), multipartite(3, 3), complete(5), cycle(12)] {
            let key = canonical_key(&g, &opts()).unwrap();
            for _ in 0..20 {
                let h = random_relabel(&g, &mut rng);
                assert_eq!(canonical_key(&h, &opts()).unwrap(), key);
                let map = are_isomorphic(&g, &h, &opts()).unwrap().unwrap();
                assert!(g.edges().iter().all(|&(u, v)| h.has_edge(map.image(u), map.image(v))));
            }
            let canon = canonical_graph(&g, &opts()).unwrap();
            assert_eq!(canonical_key(&canon, &opts()).unwrap(), key);
        }
    }

    #[test]
    fn non_isomorphic_same_degree_sequence() {
        // C6 versus two triangles.
        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(are_isomorphic(&cycle(6), &two_triangles, &opts()).unwrap(), None);
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
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn order_matches_brute_force(g in arb_graph(8)) {
            let r = search(&g, &opts()).unwrap();
            prop_assert_eq!(r.order(), BigUint::from(brute_aut_order(&g)));
            for p in &r.generators {
                prop_assert!(g.is_automorphism(p));
            }
            prop_assert_eq!(schreier_sims(g.n(), &r.generators).unwrap().order(), r.order());
        }

        #[test]
        fn key_is_relabel_invariant(g in arb_graph(12), seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let h = random_relabel(&g, &mut rng);
            prop_assert_eq!(canonical_key(&g, &opts()).unwrap(), canonical_key(&h, &opts()).unwrap());
        }

        #[test]
        fn equal_keys_only_for_isomorphic(g in arb_graph(7), h in arb_graph(7)) {
            let same_key = canonical_key(&g, &opts()).unwrap() == canonical_key(&h, &opts()).unwrap();
            let brute = g.n() == h.n() && brute_isomorphic(&g, &h);
            prop_assert_eq!(same_key, brute);
        }

        #[test]
        fn refinement_is_equitable_and_idempotent(g in arb_graph(12)) {
            let r = refine(&g, &OrderedPartition::unit(g.n()));
            prop_assert!(r.is_equitable(&g));
            prop_assert_eq!(refine(&g, &r), r);
        }
    }

    fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
        fn rec(g: &Graph, h: &Graph, images: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let k = images.len();
            if k == g.n() {
                return true;
            }
            for v in 0..h.n() {
                if !used[v] && (0..k).all(|u| g.has_edge(u, k) == h.has_edge(images[u], v)) {
                    used[v] = true;
                    images.push(v);
                    if rec(g, h, images, used) {
                        return true;
                    }
                    images.pop();
                    used[v] = false;
                }
            }
            false
        }
        rec(g, h, &mut Vec::new(), &mut vec![false; h.n()])
    }
}
