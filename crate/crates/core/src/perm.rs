//! Permutations of `{0, .., n-1}` and permutation groups given by generators.
//!
//! Composition is left-to-right throughout the crate: `p.then(&q)` maps `x`
//! to `q(p(x))`. This is the right action `x ↦ x^g` used for the right
//! regular representation, so `R(g).then(&R(h)) == R(gh)`.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

/// Largest supported degree.
pub const MAX_DEGREE: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("images do not form a bijection of 0..{0}")]
    NotBijection(usize),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree {0} exceeds the supported maximum of {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("group is not transitive on its domain")]
    NotTransitive,
}

/// A permutation stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotBijection(n));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x >= degree || y >= degree {
                    return Err(PermError::PointOutOfRange {
                        point: x.max(y),
                        degree,
                    });
                }
                images[x] = y;
            }
        }
        Perm::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    #[inline]
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.images[x] == x
    }

    /// Left-to-right product: the result maps `x` to `other(self(x))`.
    ///
    /// Panics if the degrees differ; see [`compose`] for the checked form.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    /// `self^-1 · other · self`, the conjugate of `other` by `self` acting on
    /// the right.
    pub fn conjugate(&self, other: &Perm) -> Perm {
        self.inverse().then(other).then(self)
    }

    /// Cycle decomposition, omitting fixed points.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Smallest point not fixed, if any.
    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x)
    }

    pub fn apply_tuple(&self, t: &[usize]) -> Vec<usize> {
        t.iter().map(|&x| self.images[x]).collect()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Checked left-to-right composition: maps `x` to `q(p(x))`.
pub fn compose(p: &Perm, q: &Perm) -> Result<Perm, PermError> {
    if p.degree() != q.degree() {
        return Err(PermError::DegreeMismatch {
            left: p.degree(),
            right: q.degree(),
        });
    }
    Ok(p.then(q))
}

pub fn inverse(p: &Perm) -> Perm {
    p.inverse()
}

fn common_degree(gens: &[Perm]) -> Result<Option<usize>, PermError> {
    let Some(first) = gens.first() else {
        return Ok(None);
    };
    for g in gens {
        if g.degree() != first.degree() {
            return Err(PermError::DegreeMismatch {
                left: first.degree(),
                right: g.degree(),
            });
        }
    }
    Ok(Some(first.degree()))
}

/// The orbit of `x` under `gens`, sorted ascending.
pub fn orbit(gens: &[Perm], x: usize) -> Result<Vec<usize>, PermError> {
    let Some(degree) = common_degree(gens)? else {
        return Ok(vec![x]);
    };
    if x >= degree {
        return Err(PermError::PointOutOfRange { point: x, degree });
    }
    let mut seen = vec![false; degree];
    seen[x] = true;
    let mut queue = vec![x];
    let mut i = 0;
    while i < queue.len() {
        let y = queue[i];
        i += 1;
        for g in gens {
            let z = g.image(y);
            if !seen[z] {
                seen[z] = true;
                queue.push(z);
            }
        }
    }
    queue.sort_unstable();
    Ok(queue)
}

/// All orbits of `gens` on `0..degree`, each sorted, ordered by least element.
pub fn orbits(degree: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(degree);
    for g in gens {
        for x in 0..degree {
            uf.union(x, g.image(x));
        }
    }
    uf.classes()
}

/// The orbit of the tuple `t` under coordinatewise action.
pub fn orbit_tuples(gens: &[Perm], t: &[usize]) -> Result<BTreeSet<Vec<usize>>, PermError> {
    let mut out = BTreeSet::new();
    if let Some(degree) = common_degree(gens)? {
        if let Some(&bad) = t.iter().find(|&&x| x >= degree) {
            return Err(PermError::PointOutOfRange { point: bad, degree });
        }
    }
    out.insert(t.to_vec());
    let mut queue = VecDeque::from([t.to_vec()]);
    while let Some(cur) = queue.pop_front() {
        for g in gens {
            let next = g.apply_tuple(&cur);
            if out.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}

/// Disjoint-set forest over `0..n`.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; the smaller root survives.
    /// Returns false if they were already merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub(crate) fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// Strong generators fixing all earlier base points.
    generators: Vec<Perm>,
    /// Orbit of `base` in discovery order.
    orbit: Vec<usize>,
    /// `transversal[x]` maps `base` to `x`; `inverses[x]` is its inverse.
    transversal: Vec<Option<Perm>>,
    inverses: Vec<Option<Perm>>,
}

impl Level {
    fn new(degree: usize, base: usize, generators: Vec<Perm>) -> Self {
        let mut level = Level {
            base,
            generators,
            orbit: Vec::new(),
            transversal: Vec::new(),
            inverses: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.inverses = vec![None; degree];
        let id = Perm::identity(degree);
        self.transversal[self.base] = Some(id.clone());
        self.inverses[self.base] = Some(id);
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            i += 1;
            for g in &self.generators {
                let y = g.image(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().unwrap().then(g);
                    self.inverses[y] = Some(u.inverse());
                    self.transversal[y] = Some(u);
                    self.orbit.push(y);
                }
            }
        }
    }
}

/// A permutation group with a base and strong generating set.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
}

/// Builds a stabilizer chain for the group generated by `gens` on `0..degree`.
///
/// Base points are the lowest points moved by the element that needs them,
/// so the chain is deterministic.
pub fn schreier_sims(degree: usize, gens: &[Perm]) -> Result<PermGroup, PermError> {
    PermGroup::with_base_prefix(degree, gens, &[])
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        }
    }

    /// Schreier–Sims with the base starting at `prefix`.
    pub fn with_base_prefix(
        degree: usize,
        gens: &[Perm],
        prefix: &[usize],
    ) -> Result<PermGroup, PermError> {
        if degree > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(degree));
        }
        for g in gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        if let Some(&bad) = prefix.iter().find(|&&b| b >= degree) {
            return Err(PermError::PointOutOfRange { point: bad, degree });
        }
        let mut strong: Vec<Perm> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut base: Vec<usize> = Vec::new();
        for &b in prefix {
            if !base.contains(&b) {
                base.push(b);
            }
        }
        for s in &strong {
            if base.iter().all(|&b| s.fixes(b)) {
                base.push(s.first_moved_point().unwrap());
            }
        }
        let mut levels: Vec<Level> = Vec::with_capacity(base.len());
        for (i, &b) in base.iter().enumerate() {
            let fixing: Vec<Perm> = strong
                .iter()
                .filter(|s| base[..i].iter().all(|&c| s.fixes(c)))
                .cloned()
                .collect();
            levels.push(Level::new(degree, b, fixing));
        }
        let mut group = PermGroup {
            degree,
            generators: gens.iter().filter(|g| !g.is_identity()).cloned().collect(),
            levels,
        };
        group.complete();
        Ok(group)
    }

    /// Assembles a chain from a base and a generating set the caller knows to
    /// be strong relative to it (for example the output of a graph
    /// automorphism search, whose first path is such a base). No sifting is
    /// done, so the cost is one orbit computation per level.
    pub fn from_base_and_strong_generators(
        degree: usize,
        base: &[usize],
        strong: &[Perm],
    ) -> Result<PermGroup, PermError> {
        if degree > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(degree));
        }
        for g in strong {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut levels = Vec::new();
        for (i, &b) in base.iter().enumerate() {
            let fixing: Vec<Perm> = strong
                .iter()
                .filter(|s| base[..i].iter().all(|&c| s.fixes(c)))
                .cloned()
                .collect();
            if fixing.is_empty() {
                break;
            }
            levels.push(Level::new(degree, b, fixing));
        }
        Ok(PermGroup {
            degree,
            generators: strong.to_vec(),
            levels,
        })
    }

    /// Sifts `g` through the chain starting at `from`. Returns the residue and
    /// the level at which sifting stopped (`levels.len()` if it passed all).
    fn strip(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.image(level.base);
            if beta == level.base {
                continue;
            }
            match &level.inverses[beta] {
                Some(uinv) => g = g.then(uinv),
                None => return (g, j),
            }
        }
        let k = self.levels.len();
        (g, k)
    }

    fn complete(&mut self) {
        let degree = self.degree;
        let mut i = self.levels.len();
        'outer: while i > 0 {
            let level_idx = i - 1;
            let orbit = self.levels[level_idx].orbit.clone();
            let gens = self.levels[level_idx].generators.clone();
            for &beta in &orbit {
                for x in &gens {
                    let gamma = x.image(beta);
                    let ub = self.levels[level_idx].transversal[beta].as_ref().unwrap();
                    let ug_inv = self.levels[level_idx].inverses[gamma].as_ref().unwrap();
                    let schreier = ub.then(x).then(ug_inv);
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip(schreier, level_idx + 1);
                    let k = self.levels.len();
                    if j < k || !h.is_identity() {
                        if j == k {
                            let b = h.first_moved_point().unwrap();
                            self.levels.push(Level::new(degree, b, Vec::new()));
                        }
                        for l in level_idx + 1..=j {
                            self.levels[l].generators.push(h.clone());
                            self.levels[l].rebuild(degree);
                        }
                        i = j + 1;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.order_from_level(0)
    }

    /// Order of the pointwise stabilizer of the first `level` base points.
    pub fn order_from_level(&self, level: usize) -> BigUint {
        self.levels
            .iter()
            .skip(level)
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Order as a `u128`, or `None` if it does not fit.
    pub fn order_u128(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    /// Strong generators of the pointwise stabilizer of the first `level`
    /// base points.
    pub fn stabilizer_generators(&self, level: usize) -> &[Perm] {
        match self.levels.get(level) {
            Some(l) => &l.generators,
            None => &[],
        }
    }

    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip(p.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn orbit(&self, x: usize) -> Result<Vec<usize>, PermError> {
        if x >= self.degree {
            return Err(PermError::PointOutOfRange {
                point: x,
                degree: self.degree,
            });
        }
        let gens = self.strong_generators();
        if gens.is_empty() {
            return Ok(vec![x]);
        }
        orbit(&gens, x)
    }

    /// Union of the strong generators over all levels.
    pub fn strong_generators(&self) -> Vec<Perm> {
        match self.levels.first() {
            Some(l) => l.generators.clone(),
            None => Vec::new(),
        }
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    /// Every group element, by running through transversal products.
    /// Intended for small groups only.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &x in &level.orbit {
                let u = level.transversal[x].as_ref().unwrap();
                for g in &out {
                    next.push(g.then(u));
                }
            }
            out = next;
        }
        out
    }

    /// The finest block system in which `x` and `y` share a block, as a
    /// partition of the domain (blocks ordered by least element).
    pub fn minimal_blocks(&self, x: usize, y: usize) -> Result<Vec<Vec<usize>>, PermError> {
        for p in [x, y] {
            if p >= self.degree {
                return Err(PermError::PointOutOfRange {
                    point: p,
                    degree: self.degree,
                });
            }
        }
        if !self.is_transitive() {
            return Err(PermError::NotTransitive);
        }
        let gens = self.strong_generators();
        Ok(minimal_block_system(self.degree, &gens, x, y))
    }

    pub fn is_primitive(&self) -> Result<bool, PermError> {
        if !self.is_transitive() {
            return Err(PermError::NotTransitive);
        }
        if self.degree <= 2 {
            return Ok(true);
        }
        let gens = self.strong_generators();
        let base0 = self.levels.first().map(|l| l.base).unwrap_or(0);
        // Points in one orbit of the stabilizer of base0 give the same block.
        let stab = self.stabilizer_generators(1);
        let reps = if stab.is_empty() {
            (0..self.degree).map(|v| vec![v]).collect()
        } else {
            orbits(self.degree, stab)
        };
        for orbit in reps {
            let y = orbit[0];
            if y == base0 {
                continue;
            }
            if minimal_block_system(self.degree, &gens, base0, y).len() != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Atkinson's union-find block algorithm.
fn minimal_block_system(degree: usize, gens: &[Perm], x: usize, y: usize) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(degree);
    let mut queue = Vec::new();
    if uf.union(x, y) {
        queue.push((x, y));
    }
    while let Some((a, b)) = queue.pop() {
        for g in gens {
            let (ga, gb) = (uf.find(g.image(a)), uf.find(g.image(b)));
            if ga != gb {
                uf.union(ga, gb);
                queue.push((ga, gb));
            }
        }
    }
    uf.classes()
}

/// A subset of `perms` generating the same group, chosen greedily in order.
pub fn generating_subset(degree: usize, perms: &[Perm]) -> Result<Vec<Perm>, PermError> {
    let mut chosen: Vec<Perm> = Vec::new();
    let mut group = PermGroup::trivial(degree);
    for p in perms {
        if !group.contains(p) {
            chosen.push(p.clone());
            group = schreier_sims(degree, &chosen)?;
        }
    }
    Ok(chosen)
}
