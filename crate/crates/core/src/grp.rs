//! Finite groups by multiplication table, connection sets and group
//! automorphisms.
//!
//! Elements are dense indices `0..order`, enumerated lexicographically on
//! their exponent tuples; the identity is always index 0. For the
//! extraspecial group `E(p^3) = <a, b, c | a^p = b^p = c^p = 1, [a,b] = c,
//! [c,a] = [c,b] = 1>` the element `a^i b^j c^k` has index `i p^2 + j p + k`.
//!
//! Commutators follow `[x, y] = x^-1 y^-1 x y`, so `xy = yx[x, y]`. With that
//! convention `b^j a^i = a^i b^j c^(-ij)` and the normal-form product is
//! `(i1, j1, k1)(i2, j2, k2) = (i1 + i2, j1 + j2, k1 + k2 - j1 i2)`.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::perm::{Perm, PermError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("{0} is not a prime")]
    NotPrime(usize),
    #[error("{0} is not an odd prime")]
    NotOddPrime(usize),
    #[error("invalid group parameter: {0}")]
    InvalidParameter(String),
    #[error("element {0} out of range")]
    ElementOutOfRange(usize),
    #[error("connection set contains the identity")]
    ContainsIdentity,
    #[error("connection set is not closed under inverses")]
    NotInverseClosed,
    #[error("the given elements do not generate the group")]
    DoesNotGenerate,
    #[error("element {0} is central")]
    Central(usize),
    #[error("operation requires an extraspecial group E(p^3)")]
    NotExtraspecial,
    #[error("automorphism enumeration unsupported: {0}")]
    Unsupported(String),
    #[error("{m} does not divide {p} - 1")]
    BadIndex { m: usize, p: usize },
    #[error("group axiom violated: {0}")]
    AxiomViolated(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow_mod(mut base: usize, mut exp: usize, modulus: usize) -> usize {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Which construction produced a group; drives automorphism enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(usize),
    ElementaryAbelian { p: usize, rank: usize },
    Extraspecial { p: usize },
    Modular { p: usize },
    Dihedral(usize),
    Quaternion8,
    Product(Box<GroupKind>, Box<GroupKind>),
}

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    kind: GroupKind,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<usize>,
    identity: usize,
    labels: Vec<String>,
    generators: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl FiniteGroup {
    fn from_law(
        name: String,
        kind: GroupKind,
        labels: Vec<String>,
        generators: Vec<usize>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> FiniteGroup {
        let n = labels.len();
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = mul(x, y) as u32;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x))
            .expect("multiplication law has an identity");
        let inverses = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| table[x * n + y] as usize == identity)
                    .expect("multiplication law has inverses")
            })
            .collect();
        FiniteGroup {
            name,
            kind,
            order: n,
            table,
            inverses,
            identity,
            labels,
            generators,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverses[x]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// `x^k` for any integer `k`.
    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order)
            .map(|x| self.element_order(x))
            .fold(1, |acc, o| acc / gcd(acc, o) * o)
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(self.inv(yx), xy)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&x| (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
            .collect()
    }

    /// The subgroup generated by all commutators.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut comms = Vec::new();
        for x in 0..self.order {
            for y in 0..self.order {
                let c = self.commutator(x, y);
                if !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.closure(&comms)
    }

    /// The subgroup generated by `elements`, sorted ascending.
    pub fn closure(&self, elements: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            for &g in elements {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `<x>^*`: the non-identity powers of `x`, sorted.
    pub fn cyclic_star(&self, x: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .closure(&[x])
            .into_iter()
            .filter(|&y| y != self.identity)
            .collect();
        out.sort_unstable();
        out
    }

    /// Exhaustive check of associativity, identity and inverses.
    pub fn check_axioms(&self) -> Result<(), GroupError> {
        let n = self.order;
        for x in 0..n {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return Err(GroupError::AxiomViolated(format!("identity fails at {x}")));
            }
            let xi = self.inv(x);
            if self.mul(x, xi) != self.identity || self.mul(xi, x) != self.identity {
                return Err(GroupError::AxiomViolated(format!("inverse fails at {x}")));
            }
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(GroupError::AxiomViolated(format!(
                            "associativity fails at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn extraspecial_prime(&self) -> Option<usize> {
        match self.kind {
            GroupKind::Extraspecial { p } => Some(p),
            _ => None,
        }
    }

    /// Normal-form coordinates of an element of `E(p^3)`.
    pub fn ep3_element(&self, x: usize) -> Option<ExtraspecialElement> {
        let p = self.extraspecial_prime()?;
        (x < self.order).then(|| ExtraspecialElement::from_index(x, p))
    }

    fn check_element(&self, x: usize) -> Result<(), GroupError> {
        if x < self.order {
            Ok(())
        } else {
            Err(GroupError::ElementOutOfRange(x))
        }
    }
}

fn power_label(sym: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{e}"),
    }
}

fn word_label(parts: &[(&str, usize)]) -> String {
    let words: Vec<String> = parts
        .iter()
        .map(|&(s, e)| power_label(s, e))
        .filter(|w| !w.is_empty())
        .collect();
    if words.is_empty() {
        "1".to_string()
    } else {
        words.join(" ")
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("cyclic group of order 0".into()));
    }
    let labels = (0..n).map(|i| word_label(&[("a", i)])).collect();
    let gens = if n > 1 { vec![1] } else { vec![] };
    Ok(FiniteGroup::from_law(
        format!("Z{n}"),
        GroupKind::Cyclic(n),
        labels,
        gens,
        |x, y| (x + y) % n,
    ))
}

fn vector_coords(mut x: usize, p: usize, rank: usize) -> Vec<usize> {
    let mut v = vec![0; rank];
    for k in (0..rank).rev() {
        v[k] = x % p;
        x /= p;
    }
    v
}

fn vector_index(v: &[usize], p: usize) -> usize {
    v.iter().fold(0, |acc, &c| acc * p + c % p)
}

/// `Z_p^rank`, elements indexed by coordinate vectors in base `p`.
pub fn elementary_abelian(p: usize, rank: usize) -> Result<FiniteGroup, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if rank == 0 {
        return Err(GroupError::InvalidParameter("rank 0".into()));
    }
    let n = p.pow(rank as u32);
    let labels = (0..n)
        .map(|x| {
            let coords: Vec<String> = vector_coords(x, p, rank)
                .iter()
                .map(|c| c.to_string())
                .collect();
            format!("({})", coords.join(","))
        })
        .collect();
    let gens = (0..rank).map(|k| p.pow((rank - 1 - k) as u32)).collect();
    let name = if rank == 1 {
        format!("Z{p}")
    } else {
        format!("Z{p}^{rank}")
    };
    Ok(FiniteGroup::from_law(
        name,
        GroupKind::ElementaryAbelian { p, rank },
        labels,
        gens,
        |x, y| {
            let (a, b) = (vector_coords(x, p, rank), vector_coords(y, p, rank));
            let sum: Vec<usize> = a.iter().zip(&b).map(|(s, t)| (s + t) % p).collect();
            vector_index(&sum, p)
        },
    ))
}

/// `G x H` with `(g, h)` at index `g |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let m = h.order();
    let labels = (0..g.order() * m)
        .map(|x| format!("({},{})", g.label(x / m), h.label(x % m)))
        .collect();
    let mut gens: Vec<usize> = g.generators().iter().map(|&x| x * m + h.identity()).collect();
    gens.extend(h.generators().iter().map(|&y| g.identity() * m + y));
    FiniteGroup::from_law(
        format!("{}x{}", g.name(), h.name()),
        GroupKind::Product(Box::new(g.kind().clone()), Box::new(h.kind().clone())),
        labels,
        gens,
        |x, y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m),
    )
}

/// Dihedral group of the given (even) order, elements `r^i s^j` at `2i + j`.
pub fn dihedral(order: usize) -> Result<FiniteGroup, GroupError> {
    if order < 4 || !order.is_multiple_of(2) {
        return Err(GroupError::InvalidParameter(format!("dihedral order {order}")));
    }
    let m = order / 2;
    let labels = (0..order)
        .map(|x| word_label(&[("r", x / 2), ("s", x % 2)]))
        .collect();
    Ok(FiniteGroup::from_law(
        format!("D{order}"),
        GroupKind::Dihedral(order),
        labels,
        vec![2, 1],
        |x, y| {
            let (i, j, k, l) = (x / 2, x % 2, y / 2, y % 2);
            let rot = if j == 0 { (i + k) % m } else { (i + m - k) % m };
            rot * 2 + (j + l) % 2
        },
    ))
}

/// `Q8 = <a, b | a^4 = 1, b^2 = a^2, b^-1 a b = a^-1>`, `a^i b^j` at `2i + j`.
pub fn quaternion8() -> FiniteGroup {
    let labels = (0..8)
        .map(|x| word_label(&[("a", x / 2), ("b", x % 2)]))
        .collect();
    FiniteGroup::from_law(
        "Q8".to_string(),
        GroupKind::Quaternion8,
        labels,
        vec![2, 1],
        |x, y| {
            let (i, j, k, l) = (x / 2, x % 2, y / 2, y % 2);
            let moved = if j == 0 { k } else { (4 - k) % 4 };
            let extra = if j == 1 && l == 1 { 2 } else { 0 };
            ((i + moved + extra) % 4) * 2 + (j + l) % 2
        },
    )
}

/// The modular group `<a, b | a^(p^2) = b^p = 1, a^b = a^(1+p)>` of order
/// `p^3`, with `a^i b^j` at `i p + j`.
pub fn modular_p3(p: usize) -> Result<FiniteGroup, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let p2 = p * p;
    // b^j a^k = a^(k (1+p)^-j) b^j and (1+p)^-1 = 1 - p mod p^2.
    let inv_twist = p2 + 1 - p;
    let labels = (0..p2 * p)
        .map(|x| word_label(&[("a", x / p), ("b", x % p)]))
        .collect();
    Ok(FiniteGroup::from_law(
        format!("M{}", p2 * p),
        GroupKind::Modular { p },
        labels,
        vec![p, 1],
        |x, y| {
            let (i, j, k, l) = (x / p, x % p, y / p, y % p);
            let twisted = k * pow_mod(inv_twist, j, p2) % p2;
            ((i + twisted) % p2) * p + (j + l) % p
        },
    ))
}

/// `a^i b^j c^k` in `E(p^3)`, exponents reduced mod `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtraspecialElement {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl ExtraspecialElement {
    pub fn new(i: i64, j: i64, k: i64, p: usize) -> Self {
        let r = |x: i64| x.rem_euclid(p as i64) as usize;
        ExtraspecialElement {
            i: r(i),
            j: r(j),
            k: r(k),
        }
    }

    pub fn from_index(x: usize, p: usize) -> Self {
        ExtraspecialElement {
            i: x / (p * p),
            j: (x / p) % p,
            k: x % p,
        }
    }

    pub fn index(&self, p: usize) -> usize {
        self.i * p * p + self.j * p + self.k
    }

    pub fn mul(&self, other: &Self, p: usize) -> Self {
        ExtraspecialElement {
            i: (self.i + other.i) % p,
            j: (self.j + other.j) % p,
            k: (self.k + other.k + p * p - (self.j * other.i) % p) % p,
        }
    }

    pub fn is_central(&self) -> bool {
        self.i == 0 && self.j == 0
    }
}

/// The extraspecial group `E(p^3)` of exponent `p`, `p` an odd prime.
pub fn extraspecial_p3(p: usize) -> Result<FiniteGroup, GroupError> {
    if !is_prime(p) || p == 2 {
        return Err(GroupError::NotOddPrime(p));
    }
    let n = p * p * p;
    let labels = (0..n)
        .map(|x| {
            let e = ExtraspecialElement::from_index(x, p);
            word_label(&[("a", e.i), ("b", e.j), ("c", e.k)])
        })
        .collect();
    Ok(FiniteGroup::from_law(
        format!("E{n}"),
        GroupKind::Extraspecial { p },
        labels,
        vec![p * p, p],
        |x, y| {
            ExtraspecialElement::from_index(x, p)
                .mul(&ExtraspecialElement::from_index(y, p), p)
                .index(p)
        },
    ))
}

/// Every group of order `p^n`, `n <= 3`, up to isomorphism, in a fixed order.
pub fn groups_of_prime_power_order(p: usize, n: u32) -> Result<Vec<FiniteGroup>, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    Ok(match n {
        1 => vec![cyclic(p)?],
        2 => vec![cyclic(p * p)?, elementary_abelian(p, 2)?],
        3 if p == 2 => vec![
            cyclic(8)?,
            direct_product(&cyclic(4)?, &cyclic(2)?),
            elementary_abelian(2, 3)?,
            dihedral(8)?,
            quaternion8(),
        ],
        3 => vec![
            cyclic(p * p * p)?,
            direct_product(&cyclic(p * p)?, &cyclic(p)?),
            elementary_abelian(p, 3)?,
            extraspecial_p3(p)?,
            modular_p3(p)?,
        ],
        _ => {
            return Err(GroupError::InvalidParameter(format!(
                "groups of order {p}^{n} are not tabulated"
            )))
        }
    })
}

/// The `S` of `Cay(G, S)`: identity-free and closed under inversion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConnectionSet {
    members: Vec<usize>,
}

impl ConnectionSet {
    pub fn new(
        g: &FiniteGroup,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, GroupError> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        for &s in &members {
            g.check_element(s)?;
            if s == g.identity() {
                return Err(GroupError::ContainsIdentity);
            }
        }
        if members
            .iter()
            .any(|&s| members.binary_search(&g.inv(s)).is_err())
        {
            return Err(GroupError::NotInverseClosed);
        }
        Ok(ConnectionSet { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// True if `<s>^* ⊆ S` for every member `s`.
    pub fn is_power_closed(&self, g: &FiniteGroup) -> bool {
        self.members
            .iter()
            .all(|&s| g.cyclic_star(s).iter().all(|&t| self.contains(t)))
    }
}

/// `SS = {s1 s2 | s1, s2 in S}`, sorted.
pub fn product_set(g: &FiniteGroup, s: &ConnectionSet) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    for &x in s.members() {
        for &y in s.members() {
            seen[g.mul(x, y)] = true;
        }
    }
    (0..g.order()).filter(|&x| seen[x]).collect()
}

/// `R(g): x ↦ xg` for every element `g`, indexed by `g`.
pub fn right_regular(g: &FiniteGroup) -> Result<Vec<Perm>, GroupError> {
    (0..g.order())
        .map(|h| right_regular_element(g, h))
        .collect()
}

pub fn right_regular_element(g: &FiniteGroup, h: usize) -> Result<Perm, GroupError> {
    g.check_element(h)?;
    Ok(Perm::from_images(
        (0..g.order()).map(|x| g.mul(x, h)).collect(),
    )?)
}

/// `R(g)` for the designated generators of `g`.
pub fn right_regular_generators(g: &FiniteGroup) -> Result<Vec<Perm>, GroupError> {
    g.generators()
        .iter()
        .map(|&h| right_regular_element(g, h))
        .collect()
}

/// A 2x2 matrix over `Z_p`, rows indexed first.
pub type Matrix2 = [[usize; 2]; 2];

/// An automorphism given by its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAutomorphism {
    images: Vec<usize>,
    matrix: Option<Matrix2>,
}

impl GroupAutomorphism {
    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// The induced action on `E(p^3)/C` in the basis `(aC, bC)`, when known.
    pub fn matrix(&self) -> Option<Matrix2> {
        self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &GroupAutomorphism) -> GroupAutomorphism {
        GroupAutomorphism {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
            matrix: match (self.matrix, other.matrix, modulus_hint(self, other)) {
                (Some(m1), Some(m2), Some(p)) => Some(mat_mul(&m1, &m2, p)),
                _ => None,
            },
        }
    }

    pub fn to_perm(&self) -> Perm {
        Perm::from_images(self.images.clone()).expect("automorphism is a bijection")
    }

    /// Exhaustive check of `image(xy) = image(x) image(y)` and bijectivity.
    pub fn is_automorphism_of(&self, g: &FiniteGroup) -> bool {
        if self.images.len() != g.order() || Perm::from_images(self.images.clone()).is_err() {
            return false;
        }
        (0..g.order()).all(|x| {
            (0..g.order()).all(|y| self.images[g.mul(x, y)] == g.mul(self.images[x], self.images[y]))
        })
    }

    pub fn preserves(&self, s: &ConnectionSet) -> bool {
        s.members().iter().all(|&x| s.contains(self.images[x]))
    }
}

// Matrices only exist on automorphisms of E(p^3); recover p from the degree.
fn modulus_hint(a: &GroupAutomorphism, _b: &GroupAutomorphism) -> Option<usize> {
    let n = a.images.len();
    (3..=n).find(|&p| p * p * p == n)
}

fn mat_mul(a: &Matrix2, b: &Matrix2, p: usize) -> Matrix2 {
    let mut out = [[0; 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = (a[r][0] * b[0][c] + a[r][1] * b[1][c]) % p;
        }
    }
    out
}

pub fn det2(m: &Matrix2, p: usize) -> usize {
    (m[0][0] * m[1][1] % p + p - m[0][1] * m[1][0] % p) % p
}

fn require_extraspecial(e: &FiniteGroup) -> Result<usize, GroupError> {
    e.extraspecial_prime().ok_or(GroupError::NotExtraspecial)
}

/// `σ_{x,y}` without the generation check; the caller guarantees it.
fn sigma_unchecked(e: &FiniteGroup, p: usize, x: usize, y: usize) -> GroupAutomorphism {
    let z = e.commutator(x, y);
    let xs: Vec<usize> = (0..p).map(|i| e.pow(x, i as i64)).collect();
    let ys: Vec<usize> = (0..p).map(|j| e.pow(y, j as i64)).collect();
    let zs: Vec<usize> = (0..p).map(|k| e.pow(z, k as i64)).collect();
    let images = (0..e.order())
        .map(|idx| {
            let el = ExtraspecialElement::from_index(idx, p);
            e.mul(e.mul(xs[el.i], ys[el.j]), zs[el.k])
        })
        .collect();
    let (ex, ey) = (
        ExtraspecialElement::from_index(x, p),
        ExtraspecialElement::from_index(y, p),
    );
    GroupAutomorphism {
        images,
        matrix: Some([[ex.i, ex.j], [ey.i, ey.j]]),
    }
}

/// The automorphism of `E(p^3)` sending `a ↦ x` and `b ↦ y`.
///
/// Requires `x`, `y` non-central with `<x, y> = E(p^3)`, checked by closure.
pub fn sigma_xy(e: &FiniteGroup, x: usize, y: usize) -> Result<GroupAutomorphism, GroupError> {
    let p = require_extraspecial(e)?;
    e.check_element(x)?;
    e.check_element(y)?;
    for z in [x, y] {
        if ExtraspecialElement::from_index(z, p).is_central() {
            return Err(GroupError::Central(z));
        }
    }
    if e.closure(&[x, y]).len() != e.order() {
        return Err(GroupError::DoesNotGenerate);
    }
    Ok(sigma_unchecked(e, p, x, y))
}

/// Index of `a` and `b` in `E(p^3)`.
pub fn ep3_a(p: usize) -> usize {
    p * p
}

pub fn ep3_b(p: usize) -> usize {
    p
}

pub fn ep3_c(_p: usize) -> usize {
    1
}

/// The matrix of `α` on `E(p^3)/C` in the basis `(aC, bC)`; row `r` holds the
/// coordinates of the image of the `r`-th basis vector. Under left-to-right
/// composition, `M(α then β) = M(α) M(β)`.
pub fn induced_matrix(e: &FiniteGroup, alpha: &GroupAutomorphism) -> Result<Matrix2, GroupError> {
    let p = require_extraspecial(e)?;
    if alpha.images.len() != e.order() {
        return Err(GroupError::InvalidParameter("automorphism degree".into()));
    }
    let ia = ExtraspecialElement::from_index(alpha.image(ep3_a(p)), p);
    let ib = ExtraspecialElement::from_index(alpha.image(ep3_b(p)), p);
    Ok([[ia.i, ia.j], [ib.i, ib.j]])
}

fn aut_table_budget(g: &FiniteGroup) -> Result<(), GroupError> {
    const MAX_ENTRIES: u128 = 20_000_000;
    let n = g.order() as u128;
    let count: u128 = match *g.kind() {
        GroupKind::Extraspecial { p } => {
            let p = p as u128;
            p * p * p * (p * p - 1) * (p - 1)
        }
        GroupKind::ElementaryAbelian { p, rank } => {
            let p = p as u128;
            (0..rank as u32).map(|k| p.pow(rank as u32) - p.pow(k)).product()
        }
        _ => 0,
    };
    if count * n > MAX_ENTRIES {
        return Err(GroupError::Unsupported(format!(
            "Aut({}) has {count} elements; enumerate a setwise stabilizer instead",
            g.name()
        )));
    }
    Ok(())
}

/// The full automorphism group, by family-specific enumeration:
/// `σ_{x,y}` pairs for `E(p^3)`, invertible matrices for `Z_p^r`, unit
/// multipliers for cyclic groups and generator images filtered by the
/// relations otherwise.
pub fn automorphism_group(g: &FiniteGroup) -> Result<Vec<GroupAutomorphism>, GroupError> {
    aut_table_budget(g)?;
    let mut out = Vec::new();
    for_each_automorphism(g, None, |a| out.push(a))?;
    Ok(out)
}

/// `Aut(G, S) = {α ∈ Aut(G) | S^α = S}`.
pub fn aut_stab_set(
    g: &FiniteGroup,
    s: &ConnectionSet,
) -> Result<Vec<GroupAutomorphism>, GroupError> {
    let mut out = Vec::new();
    for_each_automorphism(g, Some(s), |a| {
        if a.preserves(s) {
            out.push(a)
        }
    })?;
    Ok(out)
}

/// `|Aut(G, S)|` without materializing the automorphisms.
pub fn aut_stab_set_order(g: &FiniteGroup, s: &ConnectionSet) -> Result<usize, GroupError> {
    let mut count = 0;
    for_each_automorphism(g, Some(s), |a| {
        if a.preserves(s) {
            count += 1;
        }
    })?;
    Ok(count)
}

/// Enumerates automorphisms; with `restrict`, generators lying in `S` only
/// map into `S`, which loses nothing for the setwise stabilizer of `S`.
fn for_each_automorphism(
    g: &FiniteGroup,
    restrict: Option<&ConnectionSet>,
    mut visit: impl FnMut(GroupAutomorphism),
) -> Result<(), GroupError> {
    let candidates_for = |gen: usize, pool: Vec<usize>| -> Vec<usize> {
        match restrict {
            Some(s) if s.contains(gen) => pool.into_iter().filter(|&x| s.contains(x)).collect(),
            _ => pool,
        }
    };
    match *g.kind() {
        GroupKind::Cyclic(n) => {
            if n == 1 {
                visit(GroupAutomorphism {
                    images: vec![0],
                    matrix: None,
                });
                return Ok(());
            }
            let units: Vec<usize> = (1..n).filter(|&u| gcd(u, n) == 1).collect();
            for u in candidates_for(1, units) {
                visit(GroupAutomorphism {
                    images: (0..n).map(|x| x * u % n).collect(),
                    matrix: None,
                });
            }
        }
        GroupKind::ElementaryAbelian { p, rank } => {
            let pools: Vec<Vec<usize>> = g
                .generators()
                .iter()
                .map(|&e| candidates_for(e, (1..g.order()).collect()))
                .collect();
            let mut chosen = Vec::with_capacity(rank);
            enumerate_bases(g, p, rank, &pools, &mut chosen, &mut visit);
        }
        GroupKind::Extraspecial { p } => {
            let noncentral: Vec<usize> = (0..g.order())
                .filter(|&x| !ExtraspecialElement::from_index(x, p).is_central())
                .collect();
            let xs = candidates_for(ep3_a(p), noncentral.clone());
            let ys = candidates_for(ep3_b(p), noncentral);
            for &x in &xs {
                let ex = ExtraspecialElement::from_index(x, p);
                for &y in &ys {
                    let ey = ExtraspecialElement::from_index(y, p);
                    if det2(&[[ex.i, ex.j], [ey.i, ey.j]], p) != 0 {
                        visit(sigma_unchecked(g, p, x, y));
                    }
                }
            }
        }
        _ => {
            let pools: Vec<Vec<usize>> = g
                .generators()
                .iter()
                .map(|&gen| {
                    let ord = g.element_order(gen);
                    candidates_for(
                        gen,
                        (0..g.order()).filter(|&x| g.element_order(x) == ord).collect(),
                    )
                })
                .collect();
            for_each_generator_image(g, &pools, &mut visit);
        }
    }
    Ok(())
}

fn enumerate_bases(
    g: &FiniteGroup,
    p: usize,
    rank: usize,
    pools: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(GroupAutomorphism),
) {
    let k = chosen.len();
    if k == rank {
        let cols: Vec<Vec<usize>> = chosen.iter().map(|&v| vector_coords(v, p, rank)).collect();
        let images = (0..g.order())
            .map(|x| {
                let coeffs = vector_coords(x, p, rank);
                let mut acc = vec![0; rank];
                for (c, col) in coeffs.iter().zip(&cols) {
                    for (a, v) in acc.iter_mut().zip(col) {
                        *a = (*a + c * v) % p;
                    }
                }
                vector_index(&acc, p)
            })
            .collect();
        visit(GroupAutomorphism {
            images,
            matrix: None,
        });
        return;
    }
    for &v in &pools[k] {
        chosen.push(v);
        if rank_mod_p(chosen, p, rank) == chosen.len() {
            enumerate_bases(g, p, rank, pools, chosen, visit);
        }
        chosen.pop();
    }
}

fn rank_mod_p(vectors: &[usize], p: usize, dim: usize) -> usize {
    let mut rows: Vec<Vec<usize>> = vectors.iter().map(|&v| vector_coords(v, p, dim)).collect();
    let mut rank = 0;
    for col in 0..dim {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col] * inv % p;
                for c in 0..dim {
                    rows[r][c] = (rows[r][c] + p * p - f * rows[rank][c] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Tries every tuple of generator images from `pools`; keeps those that
/// extend to a bijective homomorphism.
fn for_each_generator_image(
    g: &FiniteGroup,
    pools: &[Vec<usize>],
    visit: &mut impl FnMut(GroupAutomorphism),
) {
    let t = pools.len();
    if t == 0 {
        visit(GroupAutomorphism {
            images: vec![g.identity()],
            matrix: None,
        });
        return;
    }
    let mut idx = vec![0usize; t];
    if pools.iter().any(|p| p.is_empty()) {
        return;
    }
    loop {
        let imgs: Vec<usize> = idx.iter().zip(pools).map(|(&i, pool)| pool[i]).collect();
        if let Some(images) = extend_to_automorphism(g, &imgs) {
            visit(GroupAutomorphism {
                images,
                matrix: None,
            });
        }
        let mut pos = t;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < pools[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Extends `generators[k] ↦ imgs[k]` along the Cayley digraph of the
/// generators. A consistent assignment on every edge is a homomorphism.
fn extend_to_automorphism(g: &FiniteGroup, imgs: &[usize]) -> Option<Vec<usize>> {
    let n = g.order();
    let gens = g.generators();
    let mut images = vec![usize::MAX; n];
    images[g.identity()] = g.identity();
    let mut queue = vec![g.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&gen, &img) in gens.iter().zip(imgs) {
            let y = g.mul(x, gen);
            let val = g.mul(images[x], img);
            if images[y] == usize::MAX {
                images[y] = val;
                queue.push(y);
            } else if images[y] != val {
                return None;
            }
        }
    }
    if queue.len() != n {
        return None;
    }
    let mut hit = vec![false; n];
    for &v in &images {
        if hit[v] {
            return None;
        }
        hit[v] = true;
    }
    Some(images)
}

/// Automorphisms whose induced determinant is an `m`-th power in `Z_p^*`:
/// the unique subgroup of index `m` when the induced-matrix map is
/// injective with image `GL(2, p)`. `m = p - 1` gives determinant one.
pub fn det_index_subgroup(
    e: &FiniteGroup,
    auts: &[GroupAutomorphism],
    m: usize,
) -> Result<Vec<GroupAutomorphism>, GroupError> {
    let p = require_extraspecial(e)?;
    if m == 0 || (p - 1) % m != 0 {
        return Err(GroupError::BadIndex { m, p });
    }
    let powers: Vec<usize> = (1..p).map(|x| pow_mod(x, m, p)).collect();
    let mut out = Vec::new();
    for a in auts {
        let mat = match a.matrix {
            Some(mat) => mat,
            None => induced_matrix(e, a)?,
        };
        if powers.contains(&det2(&mat, p)) {
            out.push(a.clone());
        }
    }
    Ok(out)
}
