//! Verification suites: each runs a fixed list of claims at one prime and
//! reports expected against computed values.

use std::collections::BTreeSet;
use std::fmt::{self, Display, Write as _};
use std::str::FromStr;

use geodex_core::analyze::{self, GroupSource, TransitivityReport};
use geodex_core::autsearch::{self, SearchOptions};
use geodex_core::families::{self, FamilySpec};
use geodex_core::grp::{self, FiniteGroup};
use geodex_core::perm::{self, Perm};

use crate::census;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    /// Valency `2(p-1)` family on `E(p^3)`.
    FamilyA,
    /// Valency `p^2-1` family on `E(p^3)`: stabilizer, orbits, distances.
    FamilyBStructure,
    /// Full automorphism group of the valency `p^2-1` family.
    FamilyBAutomorphisms,
    /// Census lists at orders `p^2` and `p^3`.
    SmallOrders,
    /// Primitivity among the non-2-arc-transitive graphs of orders `p^2`, `p^3`.
    Primitivity,
    OrderSquare,
    OrderCube,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::FamilyA,
        Suite::FamilyBStructure,
        Suite::SmallOrders,
        Suite::Primitivity,
        Suite::OrderSquare,
        Suite::OrderCube,
        Suite::FamilyBAutomorphisms,
    ];

    /// Command-line name.
    pub fn id(self) -> &'static str {
        match self {
            Suite::FamilyA => "ex3.4",
            Suite::FamilyBStructure => "thm4.3",
            Suite::SmallOrders => "prop3.5",
            Suite::Primitivity => "thm1.2",
            Suite::OrderSquare => "thm1.4",
            Suite::OrderCube => "thm1.5",
            Suite::FamilyBAutomorphisms => "cor6.3",
        }
    }

    /// Primes the suite accepts.
    pub fn primes(self) -> &'static [usize] {
        match self {
            Suite::FamilyBStructure => &[3, 5, 7],
            Suite::FamilyA | Suite::FamilyBAutomorphisms => &[3, 5],
            Suite::SmallOrders | Suite::OrderCube => &[2, 3, 5],
            Suite::Primitivity => &[2, 3],
            Suite::OrderSquare => &[2, 3, 5, 7],
        }
    }
}

impl Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.id() == s).ok_or_else(|| {
            let ids: Vec<&str> = Suite::ALL.iter().map(|x| x.id()).collect();
            CliError::Usage(format!("unknown suite {s:?} (expected one of {})", ids.join(", ")))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationOutcome {
    pub suite: Suite,
    pub claim: String,
    /// The mathematical statement being checked.
    pub statement: &'static str,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub p: usize,
    pub outcomes: Vec<VerificationOutcome>,
    /// Context lines that are not claims.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }

    pub fn outcome(&self, claim: &str) -> Option<&VerificationOutcome> {
        self.outcomes.iter().find(|o| o.claim == claim)
    }

    pub fn render(&self) -> String {
        let mut out = format!("suite: {} p={}\n", self.suite, self.p);
        for o in &self.outcomes {
            let _ = writeln!(
                out,
                "{} {}: expected {}; computed {} [{}]",
                if o.pass { "PASS" } else { "FAIL" },
                o.claim,
                o.expected,
                o.computed,
                o.statement
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let passed = self.outcomes.iter().filter(|o| o.pass).count();
        let _ = writeln!(
            out,
            "result: {} ({passed}/{} claims)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.outcomes.len()
        );
        out
    }
}

struct Claims {
    suite: Suite,
    outcomes: Vec<VerificationOutcome>,
    notes: Vec<String>,
}

impl Claims {
    fn new(suite: Suite) -> Self {
        Claims { suite, outcomes: Vec::new(), notes: Vec::new() }
    }

    fn record(&mut self, claim: impl Into<String>, statement: &'static str, expected: String, computed: String, pass: bool) {
        self.outcomes.push(VerificationOutcome {
            suite: self.suite,
            claim: claim.into(),
            statement,
            expected,
            computed,
            pass,
        });
    }

    fn eq<T: PartialEq + Display>(&mut self, claim: impl Into<String>, statement: &'static str, expected: T, computed: T) {
        let pass = expected == computed;
        self.record(claim, statement, expected.to_string(), computed.to_string(), pass);
    }

    fn finish(self, p: usize) -> SuiteReport {
        SuiteReport { suite: self.suite, p, outcomes: self.outcomes, notes: self.notes }
    }
}

/// Runs `suite` at `p`. `m` restricts the orbit claims of the family B
/// structure suite to one index; `jobs` is the census thread count.
pub fn run(suite: Suite, p: usize, m: Option<usize>, jobs: usize, opts: &SearchOptions) -> Result<SuiteReport, CliError> {
    if !suite.primes().contains(&p) {
        let list: Vec<String> = suite.primes().iter().map(|x| x.to_string()).collect();
        return Err(CliError::Usage(format!("suite {suite} runs at p in {{{}}}, got {p}", list.join(", "))));
    }
    if m.is_some() && suite != Suite::FamilyBStructure {
        return Err(CliError::Usage(format!("--m applies to {} only", Suite::FamilyBStructure)));
    }
    match suite {
        Suite::FamilyA => family_a(p, opts),
        Suite::FamilyBStructure => family_b_structure(p, m, opts),
        Suite::FamilyBAutomorphisms => family_b_automorphisms(p, opts),
        Suite::SmallOrders => small_orders(p, jobs, opts),
        Suite::Primitivity => primitivity(p, opts),
        Suite::OrderSquare => order_classification(Suite::OrderSquare, p, 2, jobs, opts),
        Suite::OrderCube => order_classification(Suite::OrderCube, p, 3, jobs, opts),
    }
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn multiset(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

const ST_STABILIZER: &str = "Aut(E(p^3), S) ≅ GL(2, p)";
const ST_ORBITS: &str = "for every m | (p-1) the subgroup of index m in Aut(E(p^3), S) has 2m+2 orbits: \
one of length 1, S of length p^2-1, m of length (p-1)/m and m of length (p^2-1)(p-1)/m";
const ST_SL: &str = "Aut(E(p^3), S)' ≅ SL(2, p) has orbit-set {{c^i}, c^i S | i in Z_p}";
const ST_SS: &str = "|SS| = p^2 + (p^2-1)(p-1)";
const ST_DISTANCES: &str = "Γ(1) = S, Γ_2(1) = (ac)^B, Γ_3(1) = C \\ {1}: diameter 3";
const ST_FLAGS_B: &str = "Cay(E(p^3), S) is 2-geodesic and distance transitive, but not 2-arc transitive";

fn family_b_structure(p: usize, m: Option<usize>, opts: &SearchOptions) -> Result<SuiteReport, CliError> {
    let mut c = Claims::new(Suite::FamilyBStructure);
    let e = grp::extraspecial_p3(p)?;
    let s = families::family_b_connection_set(&e)?;
    let gl = (p * p - 1) * (p * p - p);
    let auts = grp::aut_stab_set(&e, &s)?;
    c.eq("aut_stab_order", ST_STABILIZER, gl, auts.len());
    let mats = auts
        .iter()
        .map(|a| grp::induced_matrix(&e, a))
        .collect::<Result<BTreeSet<_>, _>>()?;
    let invertible = mats.iter().all(|x| grp::det2(x, p) != 0);
    c.record(
        "induced_matrix_bijective",
        ST_STABILIZER,
        format!("{gl} distinct invertible matrices"),
        format!("{} distinct, all invertible: {invertible}", mats.len()),
        mats.len() == auts.len() && auts.len() == gl && invertible,
    );

    let indices = match m {
        Some(m) if m == 0 || !(p - 1).is_multiple_of(m) => {
            return Err(CliError::Usage(format!("m = {m} does not divide p - 1 = {}", p - 1)))
        }
        Some(m) => vec![m],
        None => divisors(p - 1),
    };
    for m in indices {
        let sub = grp::det_index_subgroup(&e, &auts, m)?;
        let gens: Vec<Perm> = sub.iter().map(|a| a.to_perm()).collect();
        let orbits = perm::orbits(e.order(), &gens);
        let mut expected = vec![1, p * p - 1];
        expected.extend(std::iter::repeat_n((p - 1) / m, m));
        expected.extend(std::iter::repeat_n((p * p - 1) * (p - 1) / m, m));
        expected.sort_unstable();
        let mut lengths: Vec<usize> = orbits.iter().map(Vec::len).collect();
        lengths.sort_unstable();
        c.eq(format!("index_{m}_subgroup_order"), ST_ORBITS, gl / m, sub.len());
        c.eq(format!("index_{m}_orbit_lengths"), ST_ORBITS, multiset(&expected), multiset(&lengths));
        let s_is_orbit = orbits.iter().any(|o| o.as_slice() == s.members());
        c.eq(format!("index_{m}_s_is_orbit"), ST_ORBITS, true, s_is_orbit);
    }

    let sl = grp::det_index_subgroup(&e, &auts, p - 1)?;
    let gens: Vec<Perm> = sl.iter().map(|a| a.to_perm()).collect();
    let computed: BTreeSet<Vec<usize>> = perm::orbits(e.order(), &gens)
        .into_iter()
        .map(|mut o| {
            o.sort_unstable();
            o
        })
        .collect();
    let cgen = grp::ep3_c(p);
    let mut expected = BTreeSet::new();
    for i in 0..p as i64 {
        let ci = e.pow(cgen, i);
        expected.insert(vec![ci]);
        let mut coset: Vec<usize> = s.members().iter().map(|&x| e.mul(ci, x)).collect();
        coset.sort_unstable();
        expected.insert(coset);
    }
    c.record(
        "sl_orbit_set",
        ST_SL,
        format!("{} orbits {{c^i}}, c^i S", 2 * p),
        format!("{} orbits, equal to the expected set: {}", computed.len(), computed == expected),
        computed == expected,
    );
    c.eq("sl_order", ST_SL, gl / (p - 1), sl.len());

    c.eq("product_set_size", ST_SS, p * p + (p * p - 1) * (p - 1), grp::product_set(&e, &s).len());

    let g = families::cayley(&e, &s)?;
    let layers = g.distance_partition(e.identity())?.layer_sizes();
    c.eq("diameter", ST_DISTANCES, 3, g.diameter()?);
    c.eq(
        "distance_layers",
        ST_DISTANCES,
        multiset(&[1, p * p - 1, (p * p - 1) * (p - 1), p - 1]),
        multiset(&layers),
    );
    let central: Vec<usize> = (1..p as i64).map(|i| e.pow(cgen, i)).collect();
    let mut third = g.distance_partition(e.identity())?.layers.get(3).cloned().unwrap_or_default();
    third.sort_unstable();
    let mut central_sorted = central.clone();
    central_sorted.sort_unstable();
    c.eq("third_layer_is_center", ST_DISTANCES, true, third == central_sorted);
    c.eq("girth", ST_FLAGS_B, "3".to_string(), g.girth().map_or("infinite".into(), |x| x.to_string()));

    let report = if p <= 5 {
        let group = autsearch::automorphism_group(&g, opts)?;
        c.notes.push("transitivity flags use the full automorphism group from the search".into());
        analyze::report_for_group(&g, &group, GroupSource::Search)?
    } else {
        // R(E) and Aut(E, S) generate a subgroup of Aut; single orbits of a
        // subgroup are single orbits of the whole group.
        let mut gens = grp::right_regular_generators(&e)?;
        gens.extend(auts.iter().map(|a| a.to_perm()));
        let gens = perm::generating_subset(e.order(), &gens)?;
        let group = analyze::supplied_group(&g, &gens)?;
        c.notes.push(format!(
            "transitivity flags use the subgroup R(E) Aut(E, S) of order {}",
            group.order()
        ));
        analyze::report_for_group(&g, &group, GroupSource::Supplied)?
    };
    c.eq("distance_transitive", ST_FLAGS_B, true, report.distance_transitive);
    c.eq("two_geodesic_transitive", ST_FLAGS_B, true, report.two_geodesic_transitive);
    // 2-arcs closing a triangle and 2-geodesics cannot share an orbit.
    let mixed = report.two_geodesics > 0 && report.two_arcs > report.two_geodesics;
    c.record(
        "not_two_arc_transitive",
        ST_FLAGS_B,
        "some 2-arcs lie on triangles and some do not".into(),
        format!("{} 2-arcs, {} of them 2-geodesics", report.two_arcs, report.two_geodesics),
        mixed && !report.two_arc_transitive,
    );
    Ok(c.finish(p))
}

const ST_FAMILY_A: &str = "Cay(E(p^3), {a^i, b^i}) is normal with Aut ≅ E(p^3) ⋊ ((Z_{p-1} x Z_{p-1}) ⋊ Z_2), \
2-geodesic but not 2-arc transitive";

fn family_a(p: usize, opts: &SearchOptions) -> Result<SuiteReport, CliError> {
    let mut c = Claims::new(Suite::FamilyA);
    let spec = FamilySpec::Ep3FamilyA(p);
    let r = analyze::family_report(&spec, opts)?;
    let (e, s) = spec.cayley_presentation()?.expect("Cayley family");
    c.eq("aut_order", ST_FAMILY_A, (2 * p.pow(3) * (p - 1).pow(2)).to_string(), r.aut_order.to_string());
    c.eq("aut_stab_order", ST_FAMILY_A, 2 * (p - 1).pow(2), grp::aut_stab_set_order(&e, &s)?);
    c.eq("normal_cayley", ST_FAMILY_A, "true".to_string(), opt_bool(r.normal_cayley));
    c.eq("two_geodesic_transitive", ST_FAMILY_A, true, r.two_geodesic_transitive);
    c.eq("two_arc_transitive", ST_FAMILY_A, false, r.two_arc_transitive);
    Ok(c.finish(p))
}

const ST_FAMILY_B_AUT: &str = "Cay(E(p^3), S) is a normal Cayley graph and Aut ≅ R(E(p^3)) ⋊ GL(2, p)";

fn family_b_automorphisms(p: usize, opts: &SearchOptions) -> Result<SuiteReport, CliError> {
    let mut c = Claims::new(Suite::FamilyBAutomorphisms);
    let spec = FamilySpec::Ep3FamilyB(p);
    let g = spec.build()?;
    let (e, s) = spec.cayley_presentation()?.expect("Cayley family");
    let found = autsearch::search(&g, opts)?;
    let expected = p.pow(4) * (p * p - 1) * (p - 1);
    c.eq("aut_order", ST_FAMILY_B_AUT, expected.to_string(), found.order().to_string());
    let rebuilt = perm::schreier_sims(g.n(), &found.generators)?;
    c.eq(
        "aut_order_schreier_sims",
        ST_FAMILY_B_AUT,
        expected.to_string(),
        rebuilt.order().to_string(),
    );
    c.eq("normal_cayley", ST_FAMILY_B_AUT, true, analyze::is_normal_cayley(&e, &s, &found.group)?);
    Ok(c.finish(p))
}

fn opt_bool(b: Option<bool>) -> String {
    b.map_or("n/a".into(), |x| x.to_string())
}

/// The connected 2-geodesic transitive graphs of a small order, split into
/// the 2-arc transitive ones and the rest.
pub fn small_order_lists(order: usize) -> Option<(Vec<FamilySpec>, Vec<FamilySpec>)> {
    use FamilySpec::*;
    Some(match order {
        4 => (vec![Cycle(4), Complete(4)], vec![]),
        8 => (
            vec![Cycle(8), Hamming { d: 3, n: 2 }, CompleteBipartite(4), Complete(8)],
            vec![CompleteMultipartite { m: 4, b: 2 }],
        ),
        9 => (
            vec![Cycle(9), Complete(9)],
            vec![Hamming { d: 2, n: 3 }, CompleteMultipartite { m: 3, b: 3 }],
        ),
        25 => (
            vec![Cycle(25), Complete(25)],
            vec![Hamming { d: 2, n: 5 }, Hamming2Complement(5), CompleteMultipartite { m: 5, b: 5 }],
        ),
        27 => (
            vec![Cycle(27), Complete(27)],
            vec![
                Ep3FamilyA(3),
                Hamming { d: 3, n: 3 },
                Ep3FamilyB(3),
                CompleteMultipartite { m: 9, b: 3 },
                CompleteMultipartite { m: 3, b: 9 },
                Schlafli,
                SchlafliComplement,
            ],
        ),
        _ => return None,
    })
}

fn sorted_names(specs: &[FamilySpec]) -> Vec<String> {
    let mut v: Vec<String> = specs.iter().map(FamilySpec::display_name).collect();
    v.sort();
    v
}

fn name_list(v: &[String]) -> String {
    format!("{{{}}}", v.join(", "))
}

const ST_LISTS: &str = "connected 2-geodesic transitive graphs of order 4, 8, 9, 25, 27: \
2-arc transitive C_n, K_n (and H(3,2), K_{4,4} at n = 8); otherwise K_{4[2]}; H(2,3), K_{3[3]}; \
H(2,5), its complement, K_{5[5]}; G_(27,4), H(3,3), G_(27,8), K_{9[3]}, K_{3[9]}, the Schläfli graph or its complement";

fn census_claims(c: &mut Claims, statement: &'static str, order: usize, jobs: usize, opts: &SearchOptions) -> Result<(), CliError> {
    let (two_arc, rest) = small_order_lists(order).expect("censused order");
    let census = census::run(order, jobs, opts)?;
    c.notes.push(format!(
        "order {order}: {} connection sets, {} connected, {} isomorphism classes, {} 2-geodesic transitive",
        census.candidates,
        census.connected,
        census.records.len(),
        census.two_geodesic_transitive().count()
    ));
    c.eq(
        format!("order_{order}_two_arc_transitive"),
        statement,
        name_list(&sorted_names(&two_arc)),
        name_list(&census.names(true)),
    );
    c.eq(
        format!("order_{order}_not_two_arc_transitive"),
        statement,
        name_list(&sorted_names(&rest)),
        name_list(&census.names(false)),
    );
    Ok(())
}

fn small_orders(p: usize, jobs: usize, opts: &SearchOptions) -> Result<SuiteReport, CliError> {
    let mut c = Claims::new(Suite::SmallOrders);
    for order in [p * p, p * p * p] {
        if census::SUPPORTED_ORDERS.contains(&order) {
            census_claims(&mut c, ST_LISTS, order, jobs, opts)?;
        } else {
            c.notes.push(format!("order {order} is beyond the census"));
        }
    }
    Ok(c.finish(p))
}

/// One graph of the primitivity table.
#[derive(Debug, Clone)]
pub struct PrimitivityRow {
    pub spec: FamilySpec,
    pub report: TransitivityReport,
    pub primitive: bool,
    /// Connection sets `S` on `Z_p^k` with `Cay(Z_p^k, S)` isomorphic to
    /// the graph.
    pub elementary_presentations: usize,
    /// Whether one of those Cayley graphs is normal.
    pub normal_on_elementary: bool,
}

/// The non-2-arc-transitive graphs of the census lists at orders `p^2` and
/// `p^3`, with primitivity and normality over `Z_p^k` decided exhaustively.
pub fn primitivity_table(p: usize, opts: &SearchOptions) -> Result<Vec<PrimitivityRow>, CliError> {
    let mut rows = Vec::new();
    for k in [2u32, 3] {
        let order = p.pow(k);
        let Some((_, specs)) = small_order_lists(order) else {
            return Err(CliError::Usage(format!("no census list at order {order}")));
        };
        let z = grp::elementary_abelian(p, k as usize)?;
        for spec in specs {
            let g = spec.build()?;
            let found = autsearch::search(&g, opts)?;
            let report = analyze::report_for_group(&g, &found.group, GroupSource::Search)?;
            let primitive = found.group.is_primitive()?;
            let (count, normal) = elementary_presentations(&z, &g, &found.key, opts)?;
            rows.push(PrimitivityRow {
                spec,
                report,
                primitive,
                elementary_presentations: count,
                normal_on_elementary: normal,
            });
        }
    }
    Ok(rows)
}

fn elementary_presentations(
    z: &FiniteGroup,
    g: &geodex_core::Graph,
    key: &autsearch::CanonicalKey,
    opts: &SearchOptions,
) -> Result<(usize, bool), CliError> {
    let classes = census::inverse_classes(z);
    let valency = g.valency_if_regular();
    let mut count = 0;
    let mut normal = false;
    for mask in 1..1u32 << classes.len() {
        let s = census::connection_set(z, &classes, mask);
        if Some(s.len()) != valency {
            continue;
        }
        let h = families::cayley(z, &s)?;
        let found = autsearch::search(&h, opts)?;
        if &found.key != key {
            continue;
        }
        count += 1;
        normal |= analyze::is_normal_cayley(z, &s, &found.group)?;
    }
    Ok((count, normal))
}

const ST_PRIMITIVE: &str = "a connected 2-geodesic transitive but not 2-arc transitive normal Cayley graph \
on Z_p^n (n <= 3) has Aut primitive on vertices iff it is H(2,3) or H(3,3)";

fn primitivity(p: usize, opts: &SearchOptions) -> Result<SuiteReport, CliError> {
    let mut c = Claims::new(Suite::Primitivity);
    let rows = primitivity_table(p, opts)?;
    for r in &rows {
        let name = r.spec.display_name();
        c.eq(
            format!("{name}_hypothesis"),
            ST_PRIMITIVE,
            "2-geodesic transitive, not 2-arc transitive".to_string(),
            format!(
                "{}2-geodesic transitive, {}2-arc transitive",
                if r.report.two_geodesic_transitive { "" } else { "not " },
                if r.report.two_arc_transitive { "" } else { "not " },
            ),
        );
        c.notes.push(format!(
            "{name}: primitive={} |Aut|={} Cayley on Z{p}^{}: {} connection sets, normal={}",
            r.primitive,
            r.report.aut_order,
            r.report.n.ilog(p),
            r.elementary_presentations,
            r.normal_on_elementary
        ));
    }
    let expected: Vec<String> = if p == 3 { vec!["H(2,3)".into(), "H(3,3)".into()] } else { vec![] };
    let mut computed: Vec<String> = rows
        .iter()
        .filter(|r| r.primitive && r.normal_on_elementary)
        .map(|r| r.spec.display_name())
        .collect();
    computed.sort();
    c.eq("primitive_normal_on_elementary", ST_PRIMITIVE, name_list(&expected), name_list(&computed));
    let mut primitive: Vec<String> = rows.iter().filter(|r| r.primitive).map(|r| r.spec.display_name()).collect();
    primitive.sort();
    c.notes.push(format!("primitive without the normality condition: {}", name_list(&primitive)));
    Ok(c.finish(p))
}

const ST_ORDER_SQUARE: &str = "a connected arc-transitive graph of order p^2 is 2-geodesic transitive iff it is \
C_{p^2} or K_{p^2} (2-arc transitive) or K_{p[p]}, H(2,p), its complement with p >= 3 (not 2-arc transitive)";
const ST_ORDER_CUBE: &str = "a connected arc-transitive graph of order p^3 is 2-geodesic transitive iff it is \
H(3,2), K_{4,4}, C_{p^3}, K_{p^3} (2-arc transitive) or the Schläfli graph or its complement, K_{p^2[p]}, \
K_{p[p^2]} with p >= 3, H(3,p) with p >= 3, or one of the two normal Cayley graphs on E(p^3) (not 2-arc transitive)";

/// Named families of order `p^k` with the 2-arc transitivity the
/// classification assigns to them.
pub fn order_families(p: usize, k: u32) -> Vec<(FamilySpec, bool)> {
    use FamilySpec::*;
    let n = p.pow(k);
    let mut out = vec![(Cycle(n), true), (Complete(n), true)];
    match k {
        2 if p >= 3 => {
            out.push((CompleteMultipartite { m: p, b: p }, false));
            out.push((Hamming { d: 2, n: p }, false));
            out.push((Hamming2Complement(p), false));
        }
        3 => {
            if p == 2 {
                out.push((Hamming { d: 3, n: 2 }, true));
                out.push((CompleteBipartite(4), true));
            }
            if p == 3 {
                out.push((Schlafli, false));
                out.push((SchlafliComplement, false));
            }
            out.push((CompleteMultipartite { m: p * p, b: p }, false));
            if p >= 3 {
                out.push((CompleteMultipartite { m: p, b: p * p }, false));
                out.push((Hamming { d: 3, n: p }, false));
                out.push((Ep3FamilyA(p), false));
                out.push((Ep3FamilyB(p), false));
            }
        }
        _ => {}
    }
    out
}

fn order_classification(suite: Suite, p: usize, k: u32, jobs: usize, opts: &SearchOptions) -> Result<SuiteReport, CliError> {
    let statement = if k == 2 { ST_ORDER_SQUARE } else { ST_ORDER_CUBE };
    let mut c = Claims::new(suite);
    let describe = |connected: bool, arc: bool, geo: bool, two_arc: bool| {
        format!("connected={connected} arc_transitive={arc} two_geodesic_transitive={geo} two_arc_transitive={two_arc}")
    };
    for (spec, two_arc) in order_families(p, k) {
        let g = spec.build()?;
        let connected = g.is_connected();
        let computed = if connected {
            let r = analyze::family_report(&spec, opts)?;
            describe(true, r.arc_transitive, r.two_geodesic_transitive, r.two_arc_transitive)
        } else {
            "disconnected".into()
        };
        c.eq(spec.display_name(), statement, describe(true, true, true, two_arc), computed);
    }
    let order = p.pow(k);
    if census::SUPPORTED_ORDERS.contains(&order) {
        census_claims(&mut c, statement, order, jobs, opts)?;
    } else {
        c.notes.push(format!("order {order} is beyond the census; families only"));
    }
    Ok(c.finish(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn suite_ids_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.id().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("thm9.9".parse::<Suite>(), Err(CliError::Usage(_))));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(run(Suite::FamilyA, 7, None, 1, &opts()), Err(CliError::Usage(_))));
        assert!(matches!(run(Suite::FamilyA, 3, Some(1), 1, &opts()), Err(CliError::Usage(_))));
        assert!(matches!(run(Suite::FamilyBStructure, 5, Some(3), 1, &opts()), Err(CliError::Usage(_))));
    }

    #[test]
    fn family_b_structure_at_three() {
        let r = run(Suite::FamilyBStructure, 3, None, 1, &opts()).unwrap();
        assert!(r.passed(), "{}", r.render());
        assert_eq!(r.outcome("product_set_size").unwrap().computed, "25");
        assert_eq!(r.outcome("aut_stab_order").unwrap().computed, "48");
    }

    #[test]
    fn orbit_lengths_at_five() {
        let r = run(Suite::FamilyBStructure, 5, Some(2), 1, &opts()).unwrap();
        assert!(r.passed(), "{}", r.render());
        assert_eq!(r.outcome("index_2_orbit_lengths").unwrap().computed, "{1, 2, 2, 24, 48, 48}");
    }

    #[test]
    fn family_suites_at_three() {
        for suite in [Suite::FamilyA, Suite::FamilyBAutomorphisms, Suite::OrderSquare] {
            let r = run(suite, 3, None, 2, &opts()).unwrap();
            assert!(r.passed(), "{}", r.render());
        }
    }

    #[test]
    fn order_families_at_two() {
        let r = run(Suite::OrderCube, 2, None, 2, &opts()).unwrap();
        assert!(r.passed(), "{}", r.render());
        let r = run(Suite::Primitivity, 2, None, 1, &opts()).unwrap();
        assert!(r.passed(), "{}", r.render());
        assert_eq!(r.outcome("primitive_normal_on_elementary").unwrap().computed, "{}");
    }

    #[test]
    fn lists_match_the_family_tables() {
        // Up to isomorphism: H(2,3) is its own complement.
        let keys = |v: Vec<FamilySpec>| -> BTreeSet<autsearch::CanonicalKey> {
            v.iter().map(|s| autsearch::canonical_key(&s.build().unwrap(), &opts()).unwrap()).collect()
        };
        for (p, k) in [(2usize, 2u32), (2, 3), (3, 2), (3, 3), (5, 2)] {
            let (two_arc, rest) = small_order_lists(p.pow(k)).unwrap();
            let fams = order_families(p, k);
            let pick = |flag: bool| keys(fams.iter().filter(|f| f.1 == flag).map(|f| f.0.clone()).collect());
            assert_eq!(pick(true), keys(two_arc), "order {}", p.pow(k));
            assert_eq!(pick(false), keys(rest), "order {}", p.pow(k));
        }
    }
}
