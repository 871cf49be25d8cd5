use ibg::generators::{
    gen_biclique, gen_chain_exobiclique, gen_cycle, gen_exobiclique, gen_from_intervals, gen_obstruction_family,
    gen_path, gen_random_bipartite, obstruction_family,
};
use ibg::{oracle_recognize, recognize, recognize_with, Bigraph, Color, Options, Witness};
use proptest::prelude::*;

fn colors_alternate_on_edges(g: &Bigraph) -> bool {
    g.edges().into_iter().all(|(a, b)| g.color(a) != g.color(b))
}

#[test]
fn fixed_family_shapes() {
    let c = gen_cycle(5);
    assert_eq!((c.n(), c.m()), (10, 10));
    assert!((0..10).all(|v| c.degree(v) == 2));
    let p = gen_path(6);
    assert_eq!((p.n(), p.m()), (6, 5));
    let k = gen_biclique(2, 4);
    assert_eq!((k.n(), k.m()), (6, 8));
    let e = gen_exobiclique(3, 3);
    // 9 biclique edges plus 2 groups of one vertex for each of 6 externals.
    assert_eq!((e.n(), e.m()), (12, 21));
    for g in [c, p, k, e] {
        assert!(colors_alternate_on_edges(&g));
    }
}

#[test]
fn cycles_from_six_up_are_rejected_and_c4_is_accepted() {
    assert!(recognize(&gen_cycle(2)).unwrap().is_yes());
    for k in 3..=8 {
        assert!(!recognize(&gen_cycle(k)).unwrap().is_yes());
        if 2 * k <= 16 {
            assert!(!oracle_recognize(&gen_cycle(k), 16).unwrap().is_interval_bigraph);
        }
    }
}

#[test]
fn exobicliques_are_rejected() {
    for (b, w) in [(3, 3), (3, 5), (4, 4)] {
        assert!(!recognize(&gen_exobiclique(b, w)).unwrap().is_yes());
    }
    let chain = gen_chain_exobiclique(4, 4);
    assert!(matches!(recognize(&chain).unwrap().witness(), Some(Witness::Step2Conflict { .. })));
    assert!(!oracle_recognize(&chain, 16).unwrap().is_interval_bigraph);
}

#[test]
fn obstruction_family_is_rejected_with_a_four_circuit() {
    for steps in 1..=4 {
        let (g, layout) = obstruction_family(steps, false);
        assert_eq!(g.n(), 26 + 7 * (steps - 1));
        assert_eq!(layout.ladder.len(), steps);
        assert_eq!(g.color(layout.v), Color::Black);
        assert!(colors_alternate_on_edges(&g));
        let rec = recognize_with(&g, &Options::default()).unwrap();
        assert!(!rec.certificate.is_yes(), "steps = {steps}");
        let wbbw = rec.trace.step3_circuits.iter().any(|c| {
            let vs = c.vertices();
            vs.len() == 4 && (0..4).any(|r| {
                let cs: Vec<Color> = (0..4).map(|i| g.color(vs[(r + i) % 4])).collect();
                cs == [Color::White, Color::Black, Color::Black, Color::White]
            })
        });
        assert!(wbbw, "steps = {steps}");
    }
}

#[test]
fn obstruction_family_is_not_an_interval_bigraph() {
    let g = gen_obstruction_family(1);
    assert_eq!(g.n(), 26);
    assert!(!oracle_recognize(&g, 26).unwrap().is_interval_bigraph);
}

#[test]
fn dual_variant_is_caught_by_self_coupling() {
    for steps in 1..=3 {
        let (g, _) = obstruction_family(steps, true);
        assert!(g.name().unwrap().ends_with("-dual"));
        let c = recognize(&g).unwrap();
        assert!(matches!(c.witness(), Some(Witness::SelfCoupled { .. })), "steps = {steps}");
    }
}

#[test]
fn random_bipartite_extremes() {
    let empty = gen_random_bipartite(4, 5, 0.0, 3);
    assert_eq!(empty.m(), 0);
    let full = gen_random_bipartite(4, 5, 1.0, 3);
    assert_eq!(full.m(), 20);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn interval_generator_edges_are_intersections(b in 1usize..20, w in 1usize..20, seed in any::<u64>()) {
        let (g, model) = gen_from_intervals(b, w, seed);
        prop_assert_eq!(g.n(), b + w);
        for u in 0..g.n() {
            prop_assert_eq!(g.color(u), if u < b { Color::Black } else { Color::White });
            for v in 0..g.n() {
                if g.same_color(u, v) {
                    continue;
                }
                let (x, y) = (model.intervals[u], model.intervals[v]);
                let meet = x.left <= y.right && y.left <= x.right;
                prop_assert_eq!(meet, g.adjacent(u, v));
            }
        }
        let (again, _) = gen_from_intervals(b, w, seed);
        prop_assert_eq!(again.edges(), g.edges());
    }

    #[test]
    fn random_generator_is_seeded(b in 1usize..10, w in 1usize..10, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = gen_random_bipartite(b, w, p, seed);
        prop_assert_eq!(g.edges(), gen_random_bipartite(b, w, p, seed).edges());
        prop_assert!(colors_alternate_on_edges(&g));
    }
}
