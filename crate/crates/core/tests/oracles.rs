//! Library results against independent brute-force computations.

use std::collections::{BTreeSet, VecDeque};

use geodex_core::analyze::{self, transitivity_report};
use geodex_core::autsearch::{self, SearchOptions};
use geodex_core::families::{self, FamilySpec};
use geodex_core::grp::{self, ConnectionSet, FiniteGroup};
use geodex_core::perm::{self, Perm};
use geodex_core::Graph;
use num_bigint::BigUint;
use proptest::prelude::*;

fn opts() -> SearchOptions {
    SearchOptions::default()
}

/// Every product of generators, by breadth-first search.
fn closure(degree: usize, gens: &[Perm]) -> BTreeSet<Perm> {
    let mut seen = BTreeSet::from([Perm::identity(degree)]);
    let mut queue = VecDeque::from([Perm::identity(degree)]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Counts automorphisms by extending partial maps one vertex at a time.
fn count_automorphisms(g: &Graph) -> u64 {
    fn extend(g: &Graph, image: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        let v = image.len();
        if v == g.n() {
            return 1;
        }
        let mut total = 0;
        for w in 0..g.n() {
            if used[w] || g.degree(v) != g.degree(w) {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == g.has_edge(image[u], w)) {
                used[w] = true;
                image.push(w);
                total += extend(g, image, used);
                image.pop();
                used[w] = false;
            }
        }
        total
    }
    extend(g, &mut Vec::new(), &mut vec![false; g.n()])
}

fn random_graph(n: usize, bits: &[bool]) -> Graph {
    Graph::from_fn(n, |u, v| bits[u.min(v) * 16 + u.max(v)]).unwrap()
}

fn e_law(p: usize, x: (usize, usize, usize), y: (usize, usize, usize)) -> (usize, usize, usize) {
    // From xy = yx[x, y] with [a, b] = c central: moving b^j1 past a^i2
    // leaves c^{-j1 i2}.
    ((x.0 + y.0) % p, (x.1 + y.1) % p, (x.2 + y.2 + p * p - x.1 * y.0 % p) % p)
}

#[test]
fn extraspecial_multiplication_matches_the_normal_form() {
    for p in [3, 5] {
        let e = grp::extraspecial_p3(p).unwrap();
        let coords = |x: usize| (x / (p * p), x / p % p, x % p);
        for x in 0..e.order() {
            for y in 0..e.order() {
                let (i, j, k) = e_law(p, coords(x), coords(y));
                assert_eq!(e.mul(x, y), i * p * p + j * p + k);
            }
        }
        assert_eq!(e.exponent(), p);
        assert_eq!(e.center().len(), p);
    }
}

#[test]
fn power_identity_holds_exhaustively() {
    for p in [3, 5] {
        let e = grp::extraspecial_p3(p).unwrap();
        for x in 0..e.order() {
            for y in 0..e.order() {
                let yx = e.mul(e.mul(e.inv(y), e.inv(x)), e.mul(y, x));
                for k in 0..=2 * p as i64 {
                    let lhs = e.pow(e.mul(x, y), k);
                    let rhs = e.mul(e.mul(e.pow(x, k), e.pow(y, k)), e.pow(yx, k * (k - 1) / 2));
                    assert_eq!(lhs, rhs, "p={p} x={x} y={y} k={k}");
                }
            }
        }
    }
}

#[test]
fn extraspecial_automorphism_count() {
    for p in [3, 5] {
        let e = grp::extraspecial_p3(p).unwrap();
        let auts = grp::automorphism_group(&e).unwrap();
        assert_eq!(auts.len(), p.pow(3) * (p * p - 1) * (p - 1));
        for a in auts.iter().step_by(97) {
            assert!(a.is_automorphism_of(&e));
        }
    }
}

#[test]
fn right_regular_representation_closes_to_the_group() {
    for (p, k) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        for g in grp::groups_of_prime_power_order(p, k).unwrap() {
            let gens = grp::right_regular_generators(&g).unwrap();
            let group = perm::schreier_sims(g.order(), &gens).unwrap();
            let all = closure(g.order(), &gens);
            assert_eq!(group.order(), BigUint::from(all.len()));
            assert_eq!(all.len(), g.order(), "{}", g.name());
            assert!(all.iter().all(|x| group.contains(x)));
        }
    }
}

#[test]
fn automorphism_orders_of_named_graphs() {
    for (spec, expected) in [
        ("hamming:2,3", 72u64),
        ("kmb:3,3", 1296),
        ("kmb:4,2", 384),
        ("kbip:4", 1152),
        ("hamming:3,2", 48),
        ("cycle:9", 18),
        ("ep3A:3", 216),
        ("ep3B:3", 1296),
        ("hamming:3,3", 1296),
    ] {
        let spec: FamilySpec = spec.parse().unwrap();
        let g = spec.build().unwrap();
        let order = autsearch::search(&g, &opts()).unwrap().order();
        assert_eq!(order, BigUint::from(expected), "{spec}");
        if g.n() <= 9 {
            assert_eq!(count_automorphisms(&g), expected, "{spec}");
        }
    }
}

#[test]
fn schlafli_is_strongly_regular() {
    let g = families::schlafli();
    assert_eq!(g.valency_if_regular(), Some(16));
    for u in 0..27 {
        for v in u + 1..27 {
            let common = (0..27).filter(|&w| g.has_edge(u, w) && g.has_edge(v, w)).count();
            assert_eq!(common, if g.has_edge(u, v) { 10 } else { 8 });
        }
    }
    assert_eq!(g.complement(), families::schlafli_complement());
    assert_eq!(autsearch::search(&g, &opts()).unwrap().order(), BigUint::from(51840u32));
}

#[test]
fn family_b_distance_layers() {
    for p in [3, 5, 7] {
        let g = families::ep3_family_b(p).unwrap();
        let layers = g.distance_partition(0).unwrap().layer_sizes();
        assert_eq!(layers, vec![1, p * p - 1, (p * p - 1) * (p - 1), p - 1]);
        assert_eq!(g.girth(), Some(3));
    }
}

#[test]
fn catalog_reports_have_consistent_counts() {
    for n in [4, 8, 9, 25, 27] {
        for spec in analyze::catalog_specs(n).unwrap() {
            let g = spec.build().unwrap();
            let r = analyze::family_report(&spec, &opts()).unwrap();
            let k = g.valency_if_regular().unwrap();
            assert_eq!(r.arcs, n * k);
            assert_eq!(r.two_arcs, n * k * (k - 1));
            assert_eq!(r.distance_distribution.iter().sum::<usize>(), n);
            assert!(r.two_geodesic_transitive, "{spec}");
            if let Some(expected) = analyze::expected_aut_order(&spec) {
                assert_eq!(r.aut_order, expected, "{spec}");
            }
        }
    }
}

fn all_connection_sets(g: &FiniteGroup) -> Vec<ConnectionSet> {
    let reps: Vec<usize> = (1..g.order()).filter(|&x| x <= g.inv(x)).collect();
    (1u32..1 << reps.len())
        .map(|mask| {
            let members = reps
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .flat_map(|(_, &x)| [x, g.inv(x)]);
            ConnectionSet::new(g, members).unwrap()
        })
        .collect()
}

/// Tuple transitivity from the full element list of a brute-force group.
#[test]
fn flags_match_element_level_orbits_on_order_eight() {
    for g in grp::groups_of_prime_power_order(2, 3).unwrap() {
        for s in all_connection_sets(&g) {
            let graph = families::cayley(&g, &s).unwrap();
            if !graph.is_connected() {
                continue;
            }
            let r = transitivity_report(&graph, None, &opts()).unwrap();
            let group = autsearch::automorphism_group(&graph, &opts()).unwrap();
            let elements = group.elements();
            assert_eq!(elements.len() as u64, count_automorphisms(&graph));
            let one_orbit = |tuples: Vec<Vec<usize>>| {
                tuples.first().is_none_or(|t| {
                    let orbit: BTreeSet<Vec<usize>> = elements.iter().map(|a| a.apply_tuple(t)).collect();
                    orbit.len() == tuples.len()
                })
            };
            let arcs: Vec<Vec<usize>> = graph.enumerate_arcs().into_iter().map(|(u, v)| vec![u, v]).collect();
            let two: Vec<Vec<usize>> =
                graph.enumerate_2arcs().into_iter().map(|(u, v, w)| vec![u, v, w]).collect();
            let geo: Vec<Vec<usize>> =
                graph.enumerate_2geodesics().into_iter().map(|(u, v, w)| vec![u, v, w]).collect();
            let arc = one_orbit(arcs);
            assert_eq!(r.arc_transitive, arc);
            assert_eq!(r.two_arc_transitive, arc && one_orbit(two));
            assert_eq!(r.two_geodesic_transitive, arc && one_orbit(geo));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schreier_sims_matches_closure(
        degree in 1usize..7,
        images in proptest::collection::vec(proptest::collection::vec(any::<u16>(), 7), 1..4),
    ) {
        let gens: Vec<Perm> = images
            .iter()
            .map(|keys| {
                let mut idx: Vec<usize> = (0..degree).collect();
                idx.sort_by_key(|&i| keys[i]);
                Perm::from_images(idx).unwrap()
            })
            .collect();
        let group = perm::schreier_sims(degree, &gens).unwrap();
        let all = closure(degree, &gens);
        prop_assert_eq!(group.order(), BigUint::from(all.len()));
        let elements: BTreeSet<Perm> = group.elements().into_iter().collect();
        prop_assert_eq!(elements, all);
    }

    #[test]
    fn search_matches_brute_force(n in 1usize..9, bits in proptest::collection::vec(any::<bool>(), 256)) {
        let g = random_graph(n, &bits);
        let found = autsearch::search(&g, &opts()).unwrap();
        prop_assert_eq!(found.order(), BigUint::from(count_automorphisms(&g)));
        for a in &found.generators {
            prop_assert!(g.is_automorphism(a));
        }
    }

    #[test]
    fn key_is_a_complete_invariant(
        n in 1usize..8,
        bits in proptest::collection::vec(any::<bool>(), 256),
        order in Just((0..8).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let g = random_graph(n, &bits);
        let order: Vec<usize> = order.into_iter().filter(|&x| x < n).collect();
        let h = g.permuted_by_order(&order);
        let kg = autsearch::canonical_key(&g, &opts()).unwrap();
        prop_assert_eq!(&kg, &autsearch::canonical_key(&h, &opts()).unwrap());
        let iso = autsearch::are_isomorphic(&g, &h, &opts()).unwrap();
        prop_assert!(iso.is_some());
        let other = g.complement();
        let same = autsearch::canonical_key(&other, &opts()).unwrap() == kg;
        prop_assert_eq!(same, autsearch::are_isomorphic(&g, &other, &opts()).unwrap().is_some());
    }

    #[test]
    fn cayley_flags_are_monotone(gi in 0usize..5, mask in 1u32..1 << 13) {
        let g = grp::groups_of_prime_power_order(3, 3).unwrap().swap_remove(gi);
        let all = all_connection_sets(&g);
        let s = &all[(mask as usize - 1) % all.len()];
        let graph = families::cayley(&g, s).unwrap();
        prop_assume!(graph.is_connected());
        let r = transitivity_report(&graph, None, &opts()).unwrap();
        prop_assert!(r.vertex_transitive);
        prop_assert!(!r.two_arc_transitive || r.two_geodesic_transitive);
        prop_assert!(!r.distance_transitive || r.arc_transitive);
        prop_assert!(!r.arc_transitive || r.vertex_transitive);
        prop_assert_eq!(r.normal_cayley, None);
        prop_assert!(r.aut_order >= BigUint::from(27u32));
    }
}
