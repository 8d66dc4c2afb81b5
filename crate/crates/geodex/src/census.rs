//! Exhaustive census of connected Cayley graphs of a small prime-power
//! order, up to isomorphism.
//!
//! Every group of the order and every inverse-closed, identity-free
//! connection set is enumerated; a connection set is a bitmask over the
//! inverse-pair classes `{x, x^-1}` of the group, ordered by their smallest
//! element. Graphs are merged by canonical key. The representative of a
//! class is the smallest `(group index, mask)` reaching it, so the output
//! does not depend on the number of worker threads.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::thread;

use geodex_core::analyze::{self, Catalog, GroupSource, TransitivityReport};
use geodex_core::autsearch::{self, CanonicalKey, SearchOptions};
use geodex_core::families::{self, FamilySpec, GroupSpec};
use geodex_core::grp::{self, ConnectionSet, FiniteGroup};

use crate::CliError;

pub const SUPPORTED_ORDERS: [usize; 5] = [4, 8, 9, 25, 27];

/// One isomorphism class.
#[derive(Debug, Clone)]
pub struct CensusRecord {
    /// Group name, e.g. `E27`.
    pub group: String,
    pub mask: u32,
    /// A spec that rebuilds the representative.
    pub spec: FamilySpec,
    pub key: CanonicalKey,
    /// `normal_cayley` refers to the representative's own group and
    /// connection set.
    pub report: TransitivityReport,
    /// Catalog family with the same canonical key.
    pub identified: Option<FamilySpec>,
}

impl CensusRecord {
    pub fn name(&self) -> String {
        self.identified
            .as_ref()
            .map_or_else(|| "unnamed".to_string(), FamilySpec::display_name)
    }
}

#[derive(Debug, Clone)]
pub struct Census {
    pub order: usize,
    pub groups: Vec<String>,
    /// Connection sets enumerated, over all groups.
    pub candidates: usize,
    pub connected: usize,
    /// Sorted by canonical key.
    pub records: Vec<CensusRecord>,
}

impl Census {
    pub fn two_geodesic_transitive(&self) -> impl Iterator<Item = &CensusRecord> {
        self.records.iter().filter(|r| r.report.two_geodesic_transitive)
    }

    /// Names of the 2-geodesic transitive classes that are (`true`) or are
    /// not (`false`) 2-arc transitive, sorted.
    pub fn names(&self, two_arc: bool) -> Vec<String> {
        let mut out: Vec<String> = self
            .two_geodesic_transitive()
            .filter(|r| r.report.two_arc_transitive == two_arc)
            .map(CensusRecord::name)
            .collect();
        out.sort();
        out
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "order: {}", self.order);
        let _ = writeln!(out, "groups: {}", self.groups.join(","));
        let _ = writeln!(out, "candidates: {}", self.candidates);
        let _ = writeln!(out, "connected: {}", self.connected);
        let _ = writeln!(out, "classes: {}", self.records.len());
        for r in &self.records {
            let rep = &r.report;
            let _ = writeln!(
                out,
                "class group={} mask={:#x} valency={} aut_order={} vt={} at={} 2at={} 2gt={} dt={} primitive={} name={} spec={} key={}",
                r.group,
                r.mask,
                rep.valency.map_or("irregular".to_string(), |k| k.to_string()),
                rep.aut_order,
                rep.vertex_transitive,
                rep.arc_transitive,
                rep.two_arc_transitive,
                rep.two_geodesic_transitive,
                rep.distance_transitive,
                rep.primitive.map_or("n/a".to_string(), |b| b.to_string()),
                r.name(),
                r.spec,
                r.key,
            );
        }
        let _ = writeln!(out, "two_geodesic_transitive: {}", self.two_geodesic_transitive().count());
        let _ = writeln!(out, "two_arc_transitive: {}", self.names(true).join(", "));
        let _ = writeln!(out, "not_two_arc_transitive: {}", self.names(false).join(", "));
        out
    }
}

/// Inverse-pair classes of the non-identity elements.
pub fn inverse_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    (0..g.order())
        .filter(|&x| x != g.identity() && x <= g.inv(x))
        .map(|x| if x == g.inv(x) { vec![x] } else { vec![x, g.inv(x)] })
        .collect()
}

pub fn connection_set(g: &FiniteGroup, classes: &[Vec<usize>], mask: u32) -> ConnectionSet {
    let members = classes
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .flat_map(|(_, c)| c.iter().copied());
    ConnectionSet::new(g, members).expect("unions of inverse pairs are connection sets")
}

pub fn groups_of_order(order: usize) -> Result<Vec<FiniteGroup>, CliError> {
    let (p, k) = match analyze::prime_power(order) {
        Some(pk) if SUPPORTED_ORDERS.contains(&order) => pk,
        _ => return Err(CliError::Usage(format!("census order {order} is not one of 4, 8, 9, 25, 27"))),
    };
    Ok(grp::groups_of_prime_power_order(p, k)?)
}

type Best = BTreeMap<CanonicalKey, (usize, u32)>;

fn scan(
    groups: &[FiniteGroup],
    classes: &[Vec<Vec<usize>>],
    work: &[(usize, u32)],
    opts: &SearchOptions,
) -> Result<(Best, usize), CliError> {
    let mut best = Best::new();
    let mut connected = 0;
    for &(gi, mask) in work {
        let g = &groups[gi];
        let s = connection_set(g, &classes[gi], mask);
        let graph = families::cayley(g, &s)?;
        if !graph.is_connected() {
            continue;
        }
        connected += 1;
        let key = autsearch::canonical_key(&graph, opts)?;
        best.entry(key)
            .and_modify(|v| *v = (*v).min((gi, mask)))
            .or_insert((gi, mask));
    }
    Ok((best, connected))
}

/// Runs the census on `jobs` threads (at least one).
pub fn run(order: usize, jobs: usize, opts: &SearchOptions) -> Result<Census, CliError> {
    let groups = groups_of_order(order)?;
    let classes: Vec<Vec<Vec<usize>>> = groups.iter().map(inverse_classes).collect();
    let work: Vec<(usize, u32)> = classes
        .iter()
        .enumerate()
        .flat_map(|(gi, c)| (1..1u32 << c.len()).map(move |mask| (gi, mask)))
        .collect();
    let jobs = jobs.max(1);
    let chunk = work.len().div_ceil(jobs).max(1);
    let partials: Vec<Result<(Best, usize), CliError>> = thread::scope(|scope| {
        let handles: Vec<_> = work
            .chunks(chunk)
            .map(|part| scope.spawn(|| scan(&groups, &classes, part, opts)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    });
    let mut best = Best::new();
    let mut connected = 0;
    for part in partials {
        let (b, c) = part?;
        connected += c;
        for (key, v) in b {
            best.entry(key).and_modify(|w| *w = (*w).min(v)).or_insert(v);
        }
    }

    let catalog = Catalog::for_order(order, opts)?;
    let mut records = Vec::with_capacity(best.len());
    for (key, (gi, mask)) in best {
        let g = &groups[gi];
        let s = connection_set(g, &classes[gi], mask);
        let graph = families::cayley(g, &s)?;
        let group = autsearch::automorphism_group(&graph, opts)?;
        let mut report = analyze::report_for_group(&graph, &group, GroupSource::Search)?;
        report.normal_cayley = Some(analyze::is_normal_cayley(g, &s, &group)?);
        let group_spec: GroupSpec = g.name().parse()?;
        records.push(CensusRecord {
            group: g.name().to_string(),
            mask,
            spec: FamilySpec::Cayley { group: group_spec, members: s.members().to_vec() },
            identified: catalog.lookup(&key).cloned(),
            key,
            report,
        });
    }
    Ok(Census {
        order,
        groups: groups.iter().map(|g| g.name().to_string()).collect(),
        candidates: work.len(),
        connected,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_classes_cover_the_group() {
        for order in SUPPORTED_ORDERS {
            for g in groups_of_order(order).unwrap() {
                let classes = inverse_classes(&g);
                let total: usize = classes.iter().map(Vec::len).sum();
                assert_eq!(total, g.order() - 1, "{}", g.name());
            }
        }
        let z9 = grp::cyclic(9).unwrap();
        assert_eq!(inverse_classes(&z9).len(), 4);
    }

    #[test]
    fn unsupported_order() {
        assert!(matches!(groups_of_order(16), Err(CliError::Usage(_))));
        assert!(matches!(groups_of_order(125), Err(CliError::Usage(_))));
    }

    #[test]
    fn order_four() {
        let c = run(4, 2, &SearchOptions::default()).unwrap();
        assert_eq!(c.names(true), ["C4", "K4"]);
        assert!(c.names(false).is_empty());
        // Z4 has two inverse-pair classes, Z2^2 has three.
        assert_eq!(c.candidates, 3 + 7);
    }

    #[test]
    fn records_rebuild_their_class() {
        let opts = SearchOptions::default();
        let c = run(8, 3, &opts).unwrap();
        for r in &c.records {
            let g = r.spec.build().unwrap();
            assert_eq!(autsearch::canonical_key(&g, &opts).unwrap(), r.key);
            assert!(r.report.normal_cayley.is_some());
        }
        let keys: Vec<&CanonicalKey> = c.records.iter().map(|r| &r.key).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let opts = SearchOptions::default();
        let one = run(9, 1, &opts).unwrap().render();
        let many = run(9, 5, &opts).unwrap().render();
        assert_eq!(one, many);
    }
}
