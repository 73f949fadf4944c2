use pairorbits::oracle::{orbits, Mode};
use pairorbits::poset::cap_multiplicities;
use pairorbits::{
    enumerate_ideals, n_lambda, orbit_census, orbit_size, submodule_size, IdealLattice, Partition, QPoly,
    ResultStore,
};
use proptest::prelude::*;

fn arb_partition(max_weight: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=5, 0..6)
        .prop_map(|parts| Partition::from_parts(&parts))
        .prop_filter("weight", move |p| p.weight() <= u64::from(max_weight))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orbits_partition_the_module(lam in arb_partition(9)) {
        let total: QPoly = enumerate_ideals(&lam).iter().map(|i| orbit_size(&lam, i).unwrap()).sum();
        prop_assert_eq!(total, QPoly::q_pow(lam.weight() as usize));
    }

    #[test]
    fn submodule_is_union_of_orbits(lam in arb_partition(8)) {
        let lattice = IdealLattice::new(&lam);
        for (b, i) in lattice.ideals().iter().enumerate() {
            let below: QPoly = lattice
                .lower_set(b)
                .map(|a| orbit_size(&lam, &lattice.ideals()[a]).unwrap())
                .sum();
            prop_assert_eq!(submodule_size(&lam, i), below);
        }
    }

    #[test]
    fn census_counts_are_integral(lam in arb_partition(8)) {
        for i in enumerate_ideals(&lam) {
            let census = orbit_census(&lam, &i).unwrap();
            for (size, count) in &census.rows {
                prop_assert!(size.is_monic() && size.is_integral());
                prop_assert!(count.is_integral());
            }
            prop_assert_eq!(census.mass(), QPoly::q_pow(lam.weight() as usize));
        }
    }

    #[test]
    fn n_lambda_matches_enumeration_at_two(lam in arb_partition(5)) {
        let store = ResultStore::in_memory();
        let n = n_lambda(&lam, &store).unwrap();
        let data = orbits(&lam, 2, Mode::Quick).unwrap();
        prop_assert_eq!(n.eval_integer(2), Some((data.pairs.len() as u64).into()));
    }

    #[test]
    fn capping_keeps_the_key_rows(lam in arb_partition(12)) {
        let c = cap_multiplicities(&lam, 2);
        prop_assert_eq!(c.rows(), lam.rows());
        prop_assert!(c.pairs().iter().all(|&(_, m)| m <= 2));
    }
}
