//! Transitivity reports, the normal Cayley test and identification of a
//! graph against the catalog of named families.
//!
//! A flag is true when the automorphism group is vertex transitive, arc
//! transitive (for the 2-arc and 2-geodesic flags) and has a single orbit on
//! the relevant tuple set. An empty tuple set counts as one orbit, so `K_n`
//! is 2-geodesic transitive. Graphs that are not vertex transitive get every
//! flag false.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use num_bigint::BigUint;

use crate::autsearch::{self, CanonicalKey, SearchError, SearchOptions};
use crate::families::{FamilyError, FamilySpec};
use crate::graph::{Graph, GraphError};
use crate::grp::{self, ConnectionSet, FiniteGroup, GroupError};
use crate::perm::{self, Perm, PermError, PermGroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalyzeError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("supplied generator {0} is not an automorphism")]
    NotAnAutomorphism(usize),
    #[error("order {0} is not p, p^2 or p^3 for a prime p")]
    UnsupportedOrder(usize),
    #[error("normality tests disagree: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Where the group behind a report came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupSource {
    /// The full automorphism group, from the backtracking search.
    Search,
    /// The group generated by caller-supplied automorphisms.
    Supplied,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitivityReport {
    pub n: usize,
    /// `None` for irregular graphs.
    pub valency: Option<usize>,
    /// `None` for forests.
    pub girth: Option<usize>,
    pub diameter: usize,
    /// Layer sizes of the distance partition from vertex 0.
    pub distance_distribution: Vec<usize>,
    pub aut_order: BigUint,
    pub group_source: GroupSource,
    pub vertex_transitive: bool,
    pub arc_transitive: bool,
    pub two_arc_transitive: bool,
    pub two_geodesic_transitive: bool,
    pub distance_transitive: bool,
    /// Reported for the full automorphism group only.
    pub primitive: Option<bool>,
    pub arcs: usize,
    pub two_arcs: usize,
    pub two_geodesics: usize,
    pub normal_cayley: Option<bool>,
}

/// Report for `g` using the supplied automorphisms, or the full group from
/// the search when none are given.
pub fn transitivity_report(
    g: &Graph,
    supplied: Option<&[Perm]>,
    opts: &SearchOptions,
) -> Result<TransitivityReport, AnalyzeError> {
    if !g.is_connected() {
        return Err(AnalyzeError::Disconnected);
    }
    let (group, source) = match supplied {
        Some(gens) => (supplied_group(g, gens)?, GroupSource::Supplied),
        None => (autsearch::automorphism_group(g, opts)?, GroupSource::Search),
    };
    report_for_group(g, &group, source)
}

/// Checks every supplied map against the edges and builds their group.
pub fn supplied_group(g: &Graph, gens: &[Perm]) -> Result<PermGroup, AnalyzeError> {
    for (i, p) in gens.iter().enumerate() {
        if !g.is_automorphism(p) {
            return Err(AnalyzeError::NotAnAutomorphism(i));
        }
    }
    Ok(perm::schreier_sims(g.n(), gens)?)
}

pub fn report_for_group(
    g: &Graph,
    group: &PermGroup,
    source: GroupSource,
) -> Result<TransitivityReport, AnalyzeError> {
    if !g.is_connected() {
        return Err(AnalyzeError::Disconnected);
    }
    let n = g.n();
    let diameter = g.diameter()?;
    let flags = TupleFlags::compute(g, group, diameter)?;
    let primitive = match source {
        GroupSource::Search if flags.vertex => Some(group.is_primitive()?),
        GroupSource::Search => Some(false),
        GroupSource::Supplied => None,
    };
    Ok(TransitivityReport {
        n,
        valency: g.valency_if_regular(),
        girth: g.girth(),
        diameter,
        distance_distribution: if n == 0 {
            vec![]
        } else {
            g.distance_partition(0)?.layer_sizes()
        },
        aut_order: group.order(),
        group_source: source,
        vertex_transitive: flags.vertex,
        arc_transitive: flags.arc,
        two_arc_transitive: flags.two_arc,
        two_geodesic_transitive: flags.two_geodesic,
        distance_transitive: flags.distance,
        primitive,
        arcs: g.count_arcs(),
        two_arcs: g.count_2arcs(),
        two_geodesics: g.count_2geodesics(),
        normal_cayley: None,
    })
}

struct TupleFlags {
    vertex: bool,
    arc: bool,
    two_arc: bool,
    two_geodesic: bool,
    distance: bool,
}

impl TupleFlags {
    fn compute(g: &Graph, group: &PermGroup, diameter: usize) -> Result<Self, AnalyzeError> {
        let n = g.n();
        let vertex = group.is_transitive();
        if !vertex || n == 0 {
            return Ok(TupleFlags { vertex, arc: false, two_arc: false, two_geodesic: false, distance: false });
        }
        // Transitive on tuples iff the stabilizer of a fixed vertex is
        // transitive on the tuples anchored there.
        let base = group.base();
        let root = base.first().copied().unwrap_or(0);
        let stab = group.stabilizer_generators(1);
        let nbrs = g.neighbors(root);
        let pairs: Vec<Vec<usize>> = nbrs
            .iter()
            .flat_map(|&u| nbrs.iter().filter(move |&&w| w != u).map(move |&w| vec![u, w]))
            .collect();
        let geo: Vec<Vec<usize>> = pairs.iter().filter(|t| !g.has_edge(t[0], t[1])).cloned().collect();
        let part = g.distance_partition(root)?;
        let mut layers = true;
        for i in 1..=diameter {
            let layer: Vec<Vec<usize>> = part.layers[i].iter().map(|&v| vec![v]).collect();
            layers &= single_orbit(stab, &layer)?;
        }
        let arcs: Vec<Vec<usize>> = nbrs.iter().map(|&v| vec![v]).collect();
        let arc = single_orbit(stab, &arcs)?;
        Ok(TupleFlags {
            vertex,
            arc,
            two_arc: arc && single_orbit(stab, &pairs)?,
            two_geodesic: arc && single_orbit(stab, &geo)?,
            distance: layers,
        })
    }
}

/// True when `tuples` (an invariant set) is one orbit; true if empty.
fn single_orbit(gens: &[Perm], tuples: &[Vec<usize>]) -> Result<bool, AnalyzeError> {
    match tuples.first() {
        None => Ok(true),
        Some(_) if gens.is_empty() => Ok(tuples.len() == 1),
        Some(t) => Ok(perm::orbit_tuples(gens, t)?.len() == tuples.len()),
    }
}

/// `R(g)` is normal in the group of `aut_generators`, decided twice: by
/// `|Aut| = |G| |Aut(G, S)|` and by conjugating the right-regular generators.
pub fn is_normal_cayley(
    g: &FiniteGroup,
    s: &ConnectionSet,
    aut: &PermGroup,
) -> Result<bool, AnalyzeError> {
    let by_order = aut.order() == BigUint::from(g.order()) * BigUint::from(grp::aut_stab_set_order(g, s)?);
    let regular = grp::right_regular_generators(g)?;
    let in_regular = |p: &Perm| {
        let h = p.image(g.identity());
        (0..g.order()).all(|x| p.image(x) == g.mul(x, h))
    };
    let mut by_conjugation = true;
    'outer: for alpha in aut.strong_generators() {
        let alpha_inv = alpha.inverse();
        for r in &regular {
            if !in_regular(&alpha_inv.then(r).then(&alpha)) {
                by_conjugation = false;
                break 'outer;
            }
        }
    }
    if by_order != by_conjugation {
        return Err(AnalyzeError::Inconsistent(format!(
            "order test says {by_order}, conjugation test says {by_conjugation}"
        )));
    }
    Ok(by_order)
}

/// `(p, k)` with `n = p^k`, `1 <= k <= 3`.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1 && (1..=3).contains(&k)).then_some((p, k))
}

/// Catalog families on `n = p^k` vertices, in a fixed order.
pub fn catalog_specs(n: usize) -> Result<Vec<FamilySpec>, AnalyzeError> {
    let (p, k) = prime_power(n).ok_or(AnalyzeError::UnsupportedOrder(n))?;
    let mut out = Vec::new();
    if n >= 3 {
        out.push(FamilySpec::Cycle(n));
    }
    out.push(FamilySpec::Complete(n));
    match (k, p) {
        (2, _) => {
            out.push(FamilySpec::Hamming { d: 2, n: p });
            if p >= 3 {
                out.push(FamilySpec::Hamming2Complement(p));
                out.push(FamilySpec::CompleteMultipartite { m: p, b: p });
            }
        }
        (3, 2) => {
            out.push(FamilySpec::Hamming { d: 3, n: 2 });
            out.push(FamilySpec::CompleteBipartite(4));
            out.push(FamilySpec::CompleteMultipartite { m: 4, b: 2 });
        }
        (3, _) => {
            out.push(FamilySpec::Ep3FamilyA(p));
            out.push(FamilySpec::Hamming { d: 3, n: p });
            out.push(FamilySpec::Ep3FamilyB(p));
            out.push(FamilySpec::CompleteMultipartite { m: p * p, b: p });
            out.push(FamilySpec::CompleteMultipartite { m: p, b: p * p });
            if p == 3 {
                out.push(FamilySpec::Schlafli);
                out.push(FamilySpec::SchlafliComplement);
            }
        }
        _ => {}
    }
    Ok(out)
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}

/// `|Aut|` of a named family from its closed formula, where one is known.
pub fn expected_aut_order(spec: &FamilySpec) -> Option<BigUint> {
    let big = |x: usize| BigUint::from(x);
    Some(match *spec {
        FamilySpec::Cycle(n) => big(2 * n),
        FamilySpec::Complete(n) => factorial(n),
        FamilySpec::CompleteBipartite(n) => big(2) * factorial(n).pow(2),
        FamilySpec::CbmMinusMatching(n) if n >= 3 => big(2) * factorial(n),
        FamilySpec::CompleteMultipartite { m, b } => factorial(b).pow(m as u32) * factorial(m),
        FamilySpec::Hamming { d, n } if n >= 3 || d == 2 => {
            factorial(n).pow(d as u32) * factorial(d)
        }
        FamilySpec::Hamming { d, n: 2 } => big(1 << d) * factorial(d),
        FamilySpec::Hamming2Complement(n) => big(2) * factorial(n).pow(2),
        FamilySpec::Ep3FamilyA(p) => big(2 * p * p * p * (p - 1) * (p - 1)),
        FamilySpec::Ep3FamilyB(p) => big(p * p * p * p * (p * p - 1) * (p - 1)),
        FamilySpec::Schlafli | FamilySpec::SchlafliComplement => big(51840),
        _ => return None,
    })
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub spec: FamilySpec,
    pub key: CanonicalKey,
}

/// Canonical keys of the catalog families of one order. Families that
/// coincide up to isomorphism keep the first name.
#[derive(Debug, Clone)]
pub struct Catalog {
    n: usize,
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn for_order(n: usize, opts: &SearchOptions) -> Result<Catalog, AnalyzeError> {
        let mut entries: Vec<CatalogEntry> = Vec::new();
        for spec in catalog_specs(n)? {
            let key = autsearch::canonical_key(&spec.build()?, opts)?;
            if entries.iter().all(|e| e.key != key) {
                entries.push(CatalogEntry { spec, key });
            }
        }
        Ok(Catalog { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn lookup(&self, key: &CanonicalKey) -> Option<&FamilySpec> {
        self.entries.iter().find(|e| &e.key == key).map(|e| &e.spec)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// Canonical forms agree.
    Named(FamilySpec),
    /// Order, edge count, valency and distance distribution agree (and the
    /// automorphism group order, when supplied).
    ParameterMatch(FamilySpec),
    Unrecognized,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Named(s) => write!(f, "{}", s.tag()),
            Classification::ParameterMatch(s) => write!(f, "parameter-match:{}", s.tag()),
            Classification::Unrecognized => write!(f, "unrecognized"),
        }
    }
}

/// Largest order at which catalog graphs are identified by canonical form.
pub const CANONICAL_MATCH_LIMIT: usize = 125;

pub fn classify_named(g: &Graph, opts: &SearchOptions) -> Result<Classification, AnalyzeError> {
    classify_named_with_order(g, None, opts)
}

/// As [`classify_named`]; above [`CANONICAL_MATCH_LIMIT`] vertices a known
/// `|Aut|` sharpens the parameter match.
pub fn classify_named_with_order(
    g: &Graph,
    aut_order: Option<&BigUint>,
    opts: &SearchOptions,
) -> Result<Classification, AnalyzeError> {
    let n = g.n();
    let specs = catalog_specs(n)?;
    if n <= CANONICAL_MATCH_LIMIT {
        let catalog = Catalog::for_order(n, opts)?;
        let key = autsearch::canonical_key(g, opts)?;
        return Ok(catalog
            .lookup(&key)
            .cloned()
            .map_or(Classification::Unrecognized, Classification::Named));
    }
    let signature = |h: &Graph| {
        let layers = if h.is_connected() {
            h.distance_partition(0).map(|d| d.layer_sizes()).ok()
        } else {
            None
        };
        (h.edge_count(), h.valency_if_regular(), layers)
    };
    let target = signature(g);
    for spec in specs {
        let h = spec.build()?;
        if signature(&h) != target {
            continue;
        }
        if let (Some(order), Some(expected)) = (aut_order, expected_aut_order(&spec)) {
            if *order != expected {
                continue;
            }
        }
        return Ok(Classification::ParameterMatch(spec));
    }
    Ok(Classification::Unrecognized)
}

/// Builds a family and reports on it, filling `normal_cayley` when the
/// family has a known Cayley presentation.
pub fn family_report(spec: &FamilySpec, opts: &SearchOptions) -> Result<TransitivityReport, AnalyzeError> {
    let g = spec.build()?;
    let group = autsearch::automorphism_group(&g, opts)?;
    let mut report = report_for_group(&g, &group, GroupSource::Search)?;
    if let Some((grp, s)) = spec.cayley_presentation()? {
        report.normal_cayley = Some(is_normal_cayley(&grp, &s, &group)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use alloc::string::ToString;

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    fn report(g: &Graph) -> TransitivityReport {
        transitivity_report(g, None, &opts()).unwrap()
    }

    fn check_monotone(r: &TransitivityReport) {
        if r.two_arc_transitive {
            assert!(r.two_geodesic_transitive);
        }
        if r.distance_transitive {
            assert!(r.arc_transitive && r.vertex_transitive);
        }
        if r.arc_transitive {
            assert!(r.vertex_transitive);
        }
    }

    #[test]
    fn complete_graph_report() {
        let r = report(&complete(9).unwrap());
        assert!(r.two_arc_transitive && r.two_geodesic_transitive);
        assert_eq!(r.two_geodesics, 0);
        assert_eq!(r.primitive, Some(true));
        assert_eq!(r.aut_order, factorial(9));
        check_monotone(&r);
    }

    #[test]
    fn family_b_report() {
        let r = report(&ep3_family_b(3).unwrap());
        assert!(r.two_geodesic_transitive && r.distance_transitive);
        assert!(!r.two_arc_transitive);
        assert_eq!(r.girth, Some(3));
        assert_eq!(r.aut_order, BigUint::from(1296u32));
        assert_eq!(r.distance_distribution, vec![1, 8, 16, 2]);
        check_monotone(&r);
    }

    #[test]
    fn family_a_report_p5() {
        let r = report(&ep3_family_a(5).unwrap());
        assert!(r.two_geodesic_transitive);
        assert!(!r.two_arc_transitive);
        assert!(!r.distance_transitive);
        assert_eq!(r.aut_order, BigUint::from(4000u32));
        check_monotone(&r);
    }

    #[test]
    fn imprimitive_multipartite() {
        let r = report(&complete_multipartite(3, 3).unwrap());
        assert_eq!(r.primitive, Some(false));
        assert_eq!(r.aut_order, BigUint::from(1296u32));
        let h = report(&hamming(2, 3).unwrap());
        assert_eq!(h.primitive, Some(true));
        let a = report(&ep3_family_a(3).unwrap());
        assert_eq!(a.primitive, Some(false));
    }

    #[test]
    fn fast_path_agrees_with_direct_orbits() {
        for g in [
            cycle(7).unwrap(),
            hamming(2, 3).unwrap(),
            complete_multipartite(3, 3).unwrap(),
            ep3_family_a(3).unwrap(),
            ep3_family_b(3).unwrap(),
            schlafli(),
            cbm_minus_matching(4).unwrap(),
        ] {
            let group = autsearch::automorphism_group(&g, &opts()).unwrap();
            let fast = TupleFlags::compute(&g, &group, g.diameter().unwrap()).unwrap();
            let gens = group.strong_generators();
            let direct = |tuples: Vec<Vec<usize>>| single_orbit(&gens, &tuples).unwrap();
            let arcs = g.enumerate_arcs().into_iter().map(|(u, v)| vec![u, v]).collect();
            let two = g.enumerate_2arcs().into_iter().map(|(u, v, w)| vec![u, v, w]).collect();
            let geo = g.enumerate_2geodesics().into_iter().map(|(u, v, w)| vec![u, v, w]).collect();
            assert_eq!(fast.arc, direct(arcs));
            assert_eq!(fast.two_arc, direct(two));
            assert_eq!(fast.two_geodesic, direct(geo));
        }
    }

    #[test]
    fn non_vertex_transitive_flags() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = report(&star);
        assert!(!r.vertex_transitive && !r.arc_transitive && !r.distance_transitive);
        assert!(!r.two_arc_transitive && !r.two_geodesic_transitive);
        assert_eq!(r.primitive, Some(false));
        assert_eq!(r.girth, None);
        let disconnected = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            transitivity_report(&disconnected, None, &opts()),
            Err(AnalyzeError::Disconnected)
        );
    }

    #[test]
    fn supplied_generators_never_exceed_full_group() {
        let spec = FamilySpec::Ep3FamilyB(3);
        let g = spec.build().unwrap();
        let (e, s) = spec.cayley_presentation().unwrap().unwrap();
        let mut gens = grp::right_regular_generators(&e).unwrap();
        for a in grp::aut_stab_set(&e, &s).unwrap() {
            gens.push(a.to_perm());
        }
        let gens = perm::generating_subset(27, &gens).unwrap();
        let sup = transitivity_report(&g, Some(&gens), &opts()).unwrap();
        let full = report(&g);
        assert_eq!(sup.aut_order, full.aut_order);
        assert_eq!(sup.primitive, None);
        for (a, b) in [
            (sup.arc_transitive, full.arc_transitive),
            (sup.two_arc_transitive, full.two_arc_transitive),
            (sup.two_geodesic_transitive, full.two_geodesic_transitive),
            (sup.distance_transitive, full.distance_transitive),
        ] {
            assert!(!a || b);
        }
        // R(G) alone is not arc transitive.
        let regular = grp::right_regular_generators(&e).unwrap();
        let r = transitivity_report(&g, Some(&regular), &opts()).unwrap();
        assert!(r.vertex_transitive && !r.arc_transitive);
        let bad = vec![Perm::from_images((0..27).rev().collect()).unwrap()];
        assert_eq!(
            transitivity_report(&g, Some(&bad), &opts()),
            Err(AnalyzeError::NotAnAutomorphism(0))
        );
    }

    #[test]
    fn family_b_stabilizer_regular_on_second_layer_neighbours() {
        for p in [3usize, 5] {
            let g = ep3_family_b(p).unwrap();
            let gens = autsearch::automorphism_generators(&g, &opts()).unwrap();
            let a = grp::ep3_a(p);
            let chain = PermGroup::with_base_prefix(g.n(), &gens, &[0, a]).unwrap();
            let dist = g.distances_from(0);
            let targets: Vec<usize> =
                g.neighbors(a).into_iter().filter(|&v| dist[v] == Some(2)).collect();
            assert_eq!(targets.len(), p * (p - 1));
            let orbit = perm::orbit(chain.stabilizer_generators(2), targets[0]).unwrap();
            assert_eq!(orbit, targets);
            assert_eq!(chain.order_from_level(2), BigUint::from(targets.len()));
        }
    }

    #[test]
    fn normal_cayley_examples() {
        for (spec, expected) in [
            (FamilySpec::Ep3FamilyB(3), true),
            (FamilySpec::Ep3FamilyA(3), true),
            (FamilySpec::Hamming { d: 2, n: 3 }, true),
            (FamilySpec::Hamming { d: 2, n: 5 }, false),
            (FamilySpec::Complete(9), false),
        ] {
            let r = family_report(&spec, &opts()).unwrap();
            assert_eq!(r.normal_cayley, Some(expected), "{spec}");
        }
        // |Aut(Z3^2, axes)| = 8 and |Aut(H(2,3))| = 72 = 9 * 8.
        let (g, s) = FamilySpec::Hamming { d: 2, n: 3 }.cayley_presentation().unwrap().unwrap();
        assert_eq!(grp::aut_stab_set_order(&g, &s).unwrap(), 8);
    }

    #[test]
    fn formulas_match_search() {
        for spec in [
            "cycle:9", "complete:6", "kbip:4", "kbip-matching:4", "kmb:3,3", "kmb:4,2", "kmb:9,3",
            "kmb:3,9", "hamming:2,3", "hamming:3,2", "hamming:3,3", "hamming:2,4", "hamming2c:5",
            "ep3A:3", "ep3B:3", "schlafli", "schlafli-c",
        ] {
            let spec: FamilySpec = spec.parse().unwrap();
            let g = spec.build().unwrap();
            let order = autsearch::search(&g, &opts()).unwrap().order();
            assert_eq!(Some(order), expected_aut_order(&spec), "{spec}");
        }
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify_named(&schlafli_complement(), &opts()).unwrap().to_string(),
            "schlafli_complement"
        );
        let e = grp::extraspecial_p3(3).unwrap();
        let s = ConnectionSet::new(&e, [grp::ep3_a(3), grp::ep3_b(3), e.inv(grp::ep3_a(3)), e.inv(grp::ep3_b(3))]).unwrap();
        let g = cayley(&e, &s).unwrap();
        assert_eq!(classify_named(&g, &opts()).unwrap().to_string(), "ep3_family_A:3");
        // An irregular connected graph on 27 vertices.
        let mut edges: Vec<(usize, usize)> = (0..26).map(|i| (i, i + 1)).collect();
        edges.extend([(0, 13), (5, 20), (26, 10)]);
        let odd = Graph::from_edges(27, &edges).unwrap();
        assert_eq!(classify_named(&odd, &opts()).unwrap(), Classification::Unrecognized);
        assert!(matches!(
            classify_named(&complete(12).unwrap(), &opts()),
            Err(AnalyzeError::UnsupportedOrder(12))
        ));
    }

    #[test]
    fn parameter_match_at_p7() {
        let g = ep3_family_b(7).unwrap();
        let order = BigUint::from(7usize.pow(4) * 48 * 6);
        let c = classify_named_with_order(&g, Some(&order), &opts()).unwrap();
        assert_eq!(c, Classification::ParameterMatch(FamilySpec::Ep3FamilyB(7)));
        assert_eq!(c.to_string(), "parameter-match:ep3_family_B:7");
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(16), None);
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
