use proptest::prelude::*;

use homlab::action::{self, Action, FiniteGroup, Side};
use homlab::families;
use homlab::graph::{self, EquivRelation, Extended, Graph, StandardGraph, VertexMap};
use homlab::harness::{self, Session};
use homlab::hom;
use homlab::homology::{self, ChainComplex, Field};
use homlab::poset::{self, ClosureDirection, Poset, PosetMap, SimplicialComplex};
use homlab::{BitSet, Guards};

/// Graph on `1..=max_n` vertices from an edge mask over the upper
/// triangle (diagonal included when `loops`).
fn arb_graph(max_n: usize, loops: bool) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        let slots = n * (n + 1) / 2;
        proptest::collection::vec(any::<bool>(), slots).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u..n {
                    if bits[k] && (loops || u != v) {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Poset generated by random pairs `i < j`.
fn arb_poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n).prop_flat_map(|n| {
        let slots = n * (n - 1) / 2;
        proptest::collection::vec(proptest::bool::weighted(0.35), slots).prop_map(move |bits| {
            let mut pairs = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        pairs.push((i, j));
                    }
                    k += 1;
                }
            }
            Poset::from_relations(n, &pairs).unwrap()
        })
    })
}

fn arb_complex(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(1u32..(1u32 << n), 1..6).prop_map(move |masks| {
            let faces = masks
                .iter()
                .map(|&m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
                .collect();
            SimplicialComplex::new(n, faces).unwrap()
        })
    })
}

/// A random involution of `0..n` as a product of disjoint swaps.
fn arb_involution(n: usize) -> impl Strategy<Value = Vec<usize>> {
    (Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), 0..=n / 2).prop_map(move |(order, swaps)| {
        let mut p: Vec<usize> = (0..n).collect();
        for s in 0..swaps {
            let (a, b) = (order[2 * s], order[2 * s + 1]);
            p[a] = b;
            p[b] = a;
        }
        p
    })
}

fn mask_to_set(n: usize, mask: u32) -> BitSet {
    BitSet::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1))
}

fn g() -> Guards {
    Guards::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructions_are_symmetric(a in arb_graph(4, true), b in arb_graph(3, true)) {
        prop_assert!(a.is_symmetric());
        prop_assert!(graph::product(&a, &b).is_symmetric());
        prop_assert!(graph::exponential(&b, &a, &g()).unwrap().is_symmetric());
        let labels: Vec<usize> = (0..a.n()).map(|v| v % 2).collect();
        prop_assert!(graph::quotient(&a, &EquivRelation::from_labels(&labels)).unwrap().is_symmetric());
    }

    #[test]
    fn curry_on_vertex_maps(t in arb_graph(2, true), h in arb_graph(2, true), k in arb_graph(3, true)) {
        let prod = graph::product(&t, &h);
        let exp = graph::exponential(&t, &k, &g()).unwrap();
        let total = k.n().pow(prod.n() as u32);
        for code in 0..total {
            let f = graph::decode_function(code, prod.n(), k.n());
            let curried: Vec<usize> = (0..h.n())
                .map(|w| {
                    let col: Vec<usize> = (0..t.n()).map(|v| f[v * h.n() + w]).collect();
                    graph::encode_function(&col, k.n())
                })
                .collect();
            let lhs = graph::check_homomorphism(&VertexMap::new(f, k.n()).unwrap(), &prod, &k);
            let rhs = graph::check_homomorphism(&VertexMap::new(curried, exp.n()).unwrap(), &h, &exp);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn quotient_projection_is_a_homomorphism(a in arb_graph(7, true), labels in proptest::collection::vec(0usize..3, 7)) {
        let r = EquivRelation::from_labels(&labels[..a.n()]);
        let q = graph::quotient(&a, &r).unwrap();
        prop_assert!(graph::check_homomorphism(&r.projection(), &a, &q));
    }

    #[test]
    fn chromatic_number_matches_brute_force(a in arb_graph(7, false)) {
        let chi = graph::chromatic_number(&a);
        prop_assert_eq!(chi, harness::brute_force_chromatic(&a));
        let k = chi.finite().unwrap();
        prop_assert!(graph::find_homomorphism(&a, &Graph::complete(k).unwrap()).is_some());
        if k > 1 {
            prop_assert!(graph::find_homomorphism(&a, &Graph::complete(k - 1).unwrap()).is_none());
        }
    }

    #[test]
    fn odd_girth_monotone_under_homomorphisms(a in arb_graph(6, false), b in arb_graph(5, false)) {
        if graph::find_homomorphism(&a, &b).is_some() {
            prop_assert!(graph::odd_girth(&b) <= graph::odd_girth(&a));
        }
    }

    #[test]
    fn common_neighborhood_is_a_galois_closure(a in arb_graph(7, true), m1 in 0u32..128, m2 in 0u32..128) {
        let n = a.n();
        let small = mask_to_set(n, m1 & m2);
        let big = mask_to_set(n, m1);
        let nu_small = graph::common_neighbors(&a, &small);
        let nu_big = graph::common_neighbors(&a, &big);
        prop_assert!(nu_big.is_subset(&nu_small));
        let nu3 = graph::common_neighbors(&a, &graph::common_neighbors(&a, &nu_big));
        prop_assert_eq!(nu3, nu_big);
    }

    #[test]
    fn chain_poset_atoms_give_comparability(p in arb_poset(6)) {
        let cp = poset::chain_poset(&p, &g()).unwrap();
        let a = poset::atom_graph(&cp.poset);
        let c = poset::comparability_graph(&p);
        prop_assert_eq!(a.edges(), c.edges());
        prop_assert!(a.is_reflexive());
    }

    #[test]
    fn support_map_is_monotone_and_surjective(p in arb_poset(6)) {
        let cp = poset::chain_poset(&p, &g()).unwrap();
        let s = poset::support_map(&p, &cp);
        prop_assert!(s.is_monotone(&cp.poset, &p));
        prop_assert!(s.is_surjective());
    }

    #[test]
    fn subdivision_preserves_homology(p in arb_poset(6)) {
        let cp = poset::chain_poset(&p, &g()).unwrap();
        let a = homology::poset_homology(&p, Field::Z, &g()).unwrap();
        let b = homology::poset_homology(&cp.poset, Field::Z, &g()).unwrap();
        prop_assert!(a.same_groups(&b));
    }

    #[test]
    fn barycentric_subdivision_of_complexes(x in arb_complex(6)) {
        let fp = poset::face_poset(&x, &g()).unwrap();
        let a = homology::complex_homology(&x, Field::Z, &g()).unwrap();
        let b = homology::poset_homology(&fp.poset, Field::Z, &g()).unwrap();
        prop_assert!(a.same_groups(&b));
        let chi = x.euler_characteristic(&g()).unwrap();
        prop_assert_eq!(a.reduced_euler(), chi - 1);
    }

    #[test]
    fn chain_complexes_are_consistent(x in arb_complex(7)) {
        let c = ChainComplex::from_complex(&x, &g()).unwrap();
        prop_assert!(c.boundary_squares_to_zero());
        let z = homology::homology(&c, Field::Z, &g()).unwrap();
        let f2 = homology::homology(&c, Field::Gf2, &g()).unwrap();
        prop_assert_eq!(z.reduced_euler(), c.reduced_euler());
        prop_assert_eq!(f2.reduced_euler(), c.reduced_euler());
        prop_assert!(homology::uct_consistent(&z, &f2));
        let back = homology::HomologyResult::from_json(&z.to_json()).unwrap();
        prop_assert_eq!(back, z);
    }

    #[test]
    fn closure_maps_preserve_homology(p in arb_poset(6)) {
        // Adjoin a top; the constant map to it is an upward closure.
        let n = p.len();
        let mut pairs: Vec<(usize, usize)> = p.covers();
        pairs.extend((0..n).map(|x| (x, n)));
        let q = Poset::from_relations(n + 1, &pairs).unwrap();
        let c = PosetMap { image: vec![n; n + 1], codomain: n + 1 };
        prop_assert!(poset::is_closure_map(&c, &q, ClosureDirection::Up).unwrap());
        let (img, _) = homology::closure_reduce(&q, &c).unwrap();
        let before = homology::poset_homology(&q, Field::Z, &g()).unwrap();
        let after = homology::poset_homology(&img, Field::Z, &g()).unwrap();
        prop_assert!(before.same_groups(&after));
        prop_assert!(after.is_acyclic());
    }

    #[test]
    fn trivial_twist_is_the_product(t in arb_graph(4, true), h in arb_graph(4, true)) {
        let tr = Action::trivial(FiniteGroup::trivial(), Side::Right, t.n());
        let hl = Action::trivial(FiniteGroup::trivial(), Side::Left, h.n());
        let tw = action::twisted_product(&t, &tr, &h, &hl, None).unwrap();
        prop_assert_eq!(tw.graph.edges(), graph::product(&t, &h).edges());
    }

    #[test]
    fn discontinuity_is_downward_closed((a, perm) in arb_graph(8, true).prop_flat_map(|a| {
        let n = a.n();
        (Just(a), arb_involution(n))
    }), d in 0usize..6) {
        let act = Action::involution(Side::Left, perm).unwrap();
        if act.is_d_discontinuous(&a, d) {
            for e in 0..d {
                prop_assert!(act.is_d_discontinuous(&a, e));
            }
        }
    }

    #[test]
    fn source_flip_is_free_on_loopless_targets(b in arb_graph(5, false)) {
        let hp = hom::hom_poset(&Graph::complete(2).unwrap(), &b, &g()).unwrap();
        if !hp.is_empty() {
            let act = hom::induced_hom_action(&hp, Some(&families::k2_swap()), None).unwrap();
            prop_assert!(act.is_free());
        }
    }

    #[test]
    fn hom_atoms_and_ranks(a in arb_graph(3, true), b in arb_graph(3, true)) {
        let hp = hom::hom_poset(&a, &b, &g()).unwrap();
        let maps = graph::all_homomorphisms(&a, &b, usize::MAX).unwrap();
        let atoms = hp.atoms();
        prop_assert_eq!(atoms.len(), maps.len());
        for i in 0..hp.len() {
            let alpha = hp.element(i);
            prop_assert!(hom::is_multihom(alpha, &a, &b));
            prop_assert_eq!(hp.rank(i) == 0, atoms.contains(&i));
        }
    }

    #[test]
    fn curry_retracts(t in arb_graph(2, true), h in arb_graph(2, true), k in arb_graph(2, true)) {
        let cc = hom::check_curry(&t, &h, &k, &g()).unwrap();
        prop_assert!(cc.report.holds());
        if let (Some(phi), Some(psi)) = (&cc.phi, &cc.psi) {
            let id = PosetMap::identity(cc.product_hom.len());
            prop_assert_eq!(&psi.after(phi), &id);
            let c = phi.after(psi);
            let q = cc.exponential_hom.poset();
            prop_assert!(poset::is_closure_map(&c, q, ClosureDirection::Up).unwrap());
            let (img, _) = homology::closure_reduce(q, &c).unwrap();
            let before = homology::poset_homology(q, Field::Z, &g()).unwrap();
            let after = homology::poset_homology(&img, Field::Z, &g()).unwrap();
            prop_assert!(before.same_groups(&after));
        }
    }

    #[test]
    fn mycielski_shape(a in arb_graph(5, false), m in 1usize..4) {
        let my = families::mycielski(&a, m).unwrap();
        let n = a.n();
        prop_assert_eq!(my.n(), m * n + 1);
        let apex = m * n;
        let rest: Vec<usize> = (0..apex).collect();
        let stripped = my.induced_subgraph(&rest);
        let path = Graph::standard(StandardGraph::LoopedPath(m - 1)).unwrap();
        prop_assert_eq!(stripped.edges(), graph::product(&path, &a).edges());
        let top: Vec<usize> = ((m - 1) * n..m * n).collect();
        let apex_nbrs: Vec<usize> = my.neighbors(apex).iter().collect();
        let expected: Vec<usize> = top.into_iter().filter(|&v| a.degree(v - (m - 1) * n) > 0).collect();
        prop_assert_eq!(apex_nbrs, expected);
    }
}

#[test]
fn families_are_deterministic() {
    let guards = g();
    for (k, m) in [(1, 3), (2, 3), (1, 5)] {
        assert_eq!(families::twisted_toroidal(k, m).unwrap().graph, families::twisted_toroidal(k, m).unwrap().graph);
        assert_eq!(
            families::spherical_graph(k, m, &guards).unwrap().graph,
            families::spherical_graph(k, m, &guards).unwrap().graph
        );
    }
    let base = Graph::complete(2).unwrap();
    assert_eq!(families::iterated_mycielski(&base, 2, 2).unwrap(), families::iterated_mycielski(&base, 2, 2).unwrap());
}

#[test]
fn free_quotient_of_cycle_poset_is_a_circle() {
    for m in 3..7 {
        let c = families::cycle_face_poset(m).unwrap();
        assert!(c.antipodal.is_free());
        assert!(c.antipodal.is_strongly_regular(&c.poset));
        let q = action::quotient_poset(&c.poset, &c.antipodal).unwrap();
        assert!(q.topological_guarantee);
        let h = homology::poset_homology(&q.poset, Field::Z, &g()).unwrap();
        assert!(h.is_sphere(1), "m={m}: {h:?}");
    }
}

#[test]
fn reflexive_loop_graph_has_infinite_invariants() {
    let one = Graph::one();
    assert_eq!(graph::chromatic_number(&one), Extended::Infinite);
    assert_eq!(graph::odd_girth(&one), Extended::Finite(1));
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let ids = ["hom-k2-kn-sphere", "quotient-commutation", "coloring-constructions"];
    let session = Session::default();
    let key = |rs: Vec<harness::RunReport>| -> Vec<(String, bool, String)> {
        rs.into_iter().map(|r| (r.id, r.pass, r.measured)).collect()
    };
    let one = key(harness::run_all(&ids, &session, 1).unwrap());
    let three = key(harness::run_all(&ids, &session, 3).unwrap());
    let again = key(harness::run_all(&ids, &session, 1).unwrap());
    assert_eq!(one, three);
    assert_eq!(one, again);
}
