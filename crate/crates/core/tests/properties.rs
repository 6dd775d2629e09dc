use proptest::prelude::*;

use recon_core::approx::{approx_reconstruct, verify_approx};
use recon_core::bounded::{reconstruct_bounded_degree, CenterConfig};
use recon_core::generators::{gen_bounded_degree, gen_outerplanar, gen_tree, validate};
use recon_core::graph::all_pairs_distances;
use recon_core::outerplanar::{reconstruct_outerplanar, BalancedPartitionConfig};
use recon_core::seed::{phase_rng, stream};
use recon_core::CountingOracle;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_respect_their_parameters(n in 1usize..80, delta in 2usize..6, seed: u64) {
        prop_assert!(validate(&gen_bounded_degree(n, delta, seed).unwrap(), delta, false).passed());
        prop_assert!(validate(&gen_tree(n, delta, seed).unwrap(), delta, false).passed());
        prop_assert!(validate(&gen_outerplanar(n, delta, seed).unwrap().graph, delta, true).passed());
    }

    #[test]
    fn bounded_is_exact_in_both_modes(n in 2usize..60, seed: u64) {
        let g = gen_bounded_degree(n, 3, seed).unwrap();
        let mut counts = Vec::new();
        for skip in [false, true] {
            let cfg = CenterConfig { skip_deducible: skip, ..Default::default() };
            let mut o = CountingOracle::for_graph(&g).unwrap();
            let run = reconstruct_bounded_degree(&mut o, &cfg, &mut phase_rng(seed, stream::CENTERS)).unwrap();
            prop_assert_eq!(run.edges, g.edge_set());
            counts.push(o.stats().distinct);
        }
        prop_assert!(counts[1] <= counts[0]);
        prop_assert!(counts[0] <= (n * (n - 1) / 2) as u64);
    }

    #[test]
    fn outerplanar_is_exact(n in 2usize..120, delta in 2usize..5, seed: u64) {
        let g = gen_outerplanar(n, delta, seed).unwrap().graph;
        let mut o = CountingOracle::for_graph(&g).unwrap();
        let run = reconstruct_outerplanar(&mut o, &BalancedPartitionConfig::default(), &mut phase_rng(seed, stream::PARTITION)).unwrap();
        prop_assert_eq!(run.edges, g.edge_set());
    }

    #[test]
    fn approx_bounds_hold(n in 2usize..80, f in 1.0f64..20.0, seed: u64) {
        let g = gen_bounded_degree(n, 4, seed).unwrap();
        let d = all_pairs_distances(&g).unwrap();
        let mut o = CountingOracle::new(d.clone());
        let run = approx_reconstruct(&mut o, f, &mut phase_rng(seed, stream::APPROX)).unwrap();
        let report = verify_approx(&run.metric, &d).unwrap();
        prop_assert!(report.ok, "{:?}", report.violations.first());
        prop_assert!(report.worst_ratio <= f);
    }
}

#[test]
fn same_seed_same_queries() {
    let g = gen_outerplanar(300, 4, 5).unwrap().graph;
    let count = || {
        let mut o = CountingOracle::for_graph(&g).unwrap();
        reconstruct_outerplanar(&mut o, &BalancedPartitionConfig::default(), &mut phase_rng(9, stream::PARTITION)).unwrap();
        let s = o.stats();
        (s.distinct, s.raw)
    };
    assert_eq!(count(), count());
}
