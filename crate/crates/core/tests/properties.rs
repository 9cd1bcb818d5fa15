use proptest::prelude::*;
use symstrat::{
    enumerate_partitions, enumerate_refinements, local_model, order_ge, preimage_decomposition,
    refines, singular_locus_of_stratum, stratum, tangent_space_dim, to_multiplicity_form, Partition,
};

fn partition_of(max_m: u32) -> impl Strategy<Value = Partition> {
    (1..=max_m).prop_flat_map(|m| {
        let all = enumerate_partitions(m).unwrap();
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn pair_of(max_m: u32) -> impl Strategy<Value = (Partition, Partition)> {
    (1..=max_m).prop_flat_map(|m| {
        let all = enumerate_partitions(m).unwrap();
        let n = all.len();
        (0..n, 0..n).prop_map(move |(i, j)| (all[i].clone(), all[j].clone()))
    })
}

proptest! {
    #[test]
    fn multiplicity_form_round_trips(pi in partition_of(20)) {
        let mf = to_multiplicity_form(&pi);
        prop_assert!(mf.classes().windows(2).all(|w| w[0].0 > w[1].0));
        prop_assert_eq!(mf.total(), pi.total());
        prop_assert_eq!(mf.expand(), pi);
    }

    #[test]
    fn parts_are_normalized(parts in prop::collection::vec(1u32..6, 1..8)) {
        let pi = Partition::new(parts.clone()).unwrap();
        prop_assert!(pi.parts().windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(pi.total(), parts.iter().sum::<u32>());
        let json = serde_json::to_string(&pi).unwrap();
        let back: Partition = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, pi);
    }

    #[test]
    fn order_is_antitone_in_length((a, b) in pair_of(12)) {
        if order_ge(&a, &b).unwrap() && a != b {
            prop_assert!(a.len() < b.len());
        }
        prop_assert_eq!(order_ge(&a, &b).unwrap(), refines(&b, &a).unwrap());
    }

    #[test]
    fn stratum_fields_consistent(pi in partition_of(10), n in 2u32..7) {
        let m = pi.total();
        let s = stratum(m, n, &pi).unwrap();
        prop_assert_eq!(s.dimension(), n as u64 * pi.len() as u64);
        prop_assert_eq!(s.dimension() + s.codimension(), n as u64 * m as u64);
        prop_assert_eq!(s.normalization_factors(), &to_multiplicity_form(&pi));
        let t = tangent_space_dim(n, &pi).unwrap().to_u64().unwrap();
        prop_assert_eq!(t >= n as u64 * m as u64, true);
        prop_assert_eq!(t == n as u64 * m as u64, pi.is_ones());
    }

    #[test]
    fn singular_locus_is_empty_only_at_top(pi in partition_of(10)) {
        let sl = singular_locus_of_stratum(pi.total(), 2, &pi).unwrap();
        prop_assert_eq!(sl.is_empty(), pi.is_single());
        for c in sl.maximal_strata() {
            prop_assert!(order_ge(c, &pi).unwrap() && c != &pi);
        }
    }

    #[test]
    fn germ_components_have_stratum_dimension((point, target) in pair_of(9), n in 2u32..5) {
        let m = point.total();
        let model = local_model(m, n, &point).unwrap();
        prop_assert_eq!(model.dimension(), n as u64 * m as u64);
        prop_assert_eq!(model.has_singular_factor(), !point.is_ones());
        match preimage_decomposition(m, n, &point, &target) {
            Ok(comps) => {
                prop_assert!(order_ge(&point, &target).unwrap());
                prop_assert_eq!(comps.len(), enumerate_refinements(&target, &point).unwrap().len());
                for c in comps {
                    prop_assert_eq!(c.dimension(), n as u64 * target.len() as u64);
                }
            }
            Err(_) => prop_assert!(!order_ge(&point, &target).unwrap()),
        }
    }
}
