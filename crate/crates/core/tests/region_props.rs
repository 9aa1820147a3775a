use proptest::prelude::*;
use twsec::channel::{build_library_channel, GaussianTwc, LibraryKind, Mod2Params};
use twsec::region::{
    convex_closure, gaussian_capacity_individual, gaussian_inner_region, gaussian_joint_region, gaussian_outer_region,
    hausdorff_distance, inner_region_individual, mod2_regions, outer_region_individual, region_area,
    region_contains_within, region_subset, OuterClass, RatePoint, RegionKind, SearchConfig,
};

fn points() -> impl Strategy<Value = Vec<RatePoint>> {
    prop::collection::vec((0.0f64..3.0, 0.0f64..3.0).prop_map(|(a, b)| RatePoint::new(a, b)), 1..20)
}

proptest! {
    #[test]
    fn closure_contains_inputs_and_is_monotone(pts in points()) {
        let rg = convex_closure(&pts, RegionKind::InnerIndividual).unwrap();
        for p in &pts {
            prop_assert!(region_contains_within(&rg, *p, 1e-9));
        }
        for w in rg.frontier.windows(2) {
            prop_assert!(w[0].r1s < w[1].r1s && w[0].r2s > w[1].r2s);
        }
        let area = region_area(&rg);
        prop_assert!(area <= rg.max_r1s() * rg.max_r2s() + 1e-12);
        for p in &pts {
            prop_assert!(area >= p.r1s * p.r2s - 1e-9);
        }
    }

    #[test]
    fn closure_is_idempotent(pts in points()) {
        let rg = convex_closure(&pts, RegionKind::InnerIndividual).unwrap();
        let again = convex_closure(&rg.frontier, RegionKind::InnerIndividual).unwrap();
        prop_assert_eq!(rg.frontier.len(), again.frontier.len());
        prop_assert!(hausdorff_distance(&rg, &again) < 1e-12);
        prop_assert!(region_subset(&rg, &again, 1e-12) && region_subset(&again, &rg, 1e-12));
    }

    #[test]
    fn hausdorff_symmetric(a in points(), b in points()) {
        let ra = convex_closure(&a, RegionKind::InnerIndividual).unwrap();
        let rb = convex_closure(&b, RegionKind::InnerIndividual).unwrap();
        prop_assert!((hausdorff_distance(&ra, &rb) - hausdorff_distance(&rb, &ra)).abs() < 1e-12);
        prop_assert!(hausdorff_distance(&ra, &ra) < 1e-12);
    }

    #[test]
    fn mod2_orderings(e1 in 0.0f64..0.5, e2 in 0.0f64..0.5, ez in 0.0f64..0.5) {
        let m = mod2_regions(Mod2Params::new(e1, e2, ez).unwrap()).unwrap();
        prop_assert_eq!(&m.individual.frontier, &m.reliability.frontier);
        prop_assert!(region_subset(&m.joint, &m.individual, 1e-12));
    }

    #[test]
    fn gaussian_bounds_nest(p1 in 0.1f64..500.0, p2 in 0.1f64..500.0, n1 in 0.1f64..5.0, n2 in 0.1f64..5.0, extra in 0.01f64..10.0) {
        let g = GaussianTwc::new(p1, p2, n1, n2, n1.max(n2) + extra).unwrap();
        let inner = gaussian_inner_region(&g, 11).unwrap();
        let outer = gaussian_outer_region(&g, 11).unwrap();
        let cap = gaussian_capacity_individual(&g).unwrap();
        prop_assert!(region_subset(&inner, &outer, 1e-9));
        prop_assert!(region_subset(&outer, &cap, 1e-9));
        prop_assert!(gaussian_joint_region(&g).unwrap().max_sum() < cap.max_sum());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn degraded_mod2_inner_within_outer(e1 in 0.01f64..0.3, e2 in 0.01f64..0.3, extra in 0.0f64..1.0) {
        let lo = e1.max(e2);
        let ez = lo + extra * (0.5 - lo);
        let ch = build_library_channel(LibraryKind::Mod2, Some(Mod2Params::new(e1, e2, ez).unwrap())).unwrap();
        let cfg = SearchConfig::with_resolution(11);
        let inner = inner_region_individual(&ch, &cfg).unwrap();
        let outer = outer_region_individual(&ch, OuterClass::EavesdropperDegraded, &cfg).unwrap();
        prop_assert!(region_subset(&inner, &outer, 1e-9));
    }
}
