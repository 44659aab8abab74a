use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use stv_core::gitfan::{git_fan, OrbitCones};
use stv_core::{Cone, IntMatrix, Supports, WeightData};

fn weights() -> impl Strategy<Value = IntMatrix> {
    (1usize..=3, 1usize..=5).prop_flat_map(|(k, n)| {
        prop::collection::vec(-3i64..=3, k * n)
            .prop_map(move |e| IntMatrix::new(k, n, e.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn git_cones_are_orbit_intersections(w in weights()) {
        let data = WeightData::affine_space(w.clone()).unwrap();
        let orbits = OrbitCones::compute(&data).unwrap();
        let fan = git_fan(&data).unwrap();
        for (chamber, witness) in fan.chambers().iter().zip(fan.witnesses()) {
            prop_assert!(chamber.relative_interior_contains(witness));
            let direct = Cone::intersect_all(w.rows(), orbits.cones().iter().filter(|c| c.contains(witness))).unwrap();
            prop_assert_eq!(&direct, chamber);
        }
        for c in fan.cones() {
            let p = c.interior_point();
            prop_assert_eq!(&orbits.git_cone(&p).unwrap(), c);
        }
    }

    #[test]
    fn refining_supports_never_coarsens(w in weights(), picks in prop::collection::vec(any::<u8>(), 1..6), extra in prop::collection::vec(any::<u8>(), 1..6)) {
        let n = w.cols();
        let to_set = |mask: u8| -> BTreeSet<usize> { (0..n).filter(|i| mask >> i & 1 == 1).collect() };
        let full: BTreeSet<usize> = (0..n).collect();
        let mut base: Vec<BTreeSet<usize>> = vec![full];
        base.extend(picks.iter().map(|&m| to_set(m)));
        let mut finer = base.clone();
        finer.extend(extra.iter().map(|&m| to_set(m)));

        let coarse = WeightData::new(w.clone(), Supports::Explicit(base)).unwrap();
        let fine = WeightData::new(w.clone(), Supports::Explicit(finer)).unwrap();
        let (Ok(cf), Ok(ff)) = (git_fan(&coarse), git_fan(&fine)) else {
            return Ok(());
        };
        for c in ff.cones() {
            prop_assert!(cf.cones().iter().any(|o| o.contains_cone(c)), "{:?} not inside the coarser fan", c);
        }
    }

    #[test]
    fn adjacent_chambers_share_a_facet(w in weights()) {
        let fan = git_fan(&WeightData::affine_space(w).unwrap()).unwrap();
        let top = fan.support().dimension();
        for &(i, j) in fan.adjacency() {
            let meet = fan.chambers()[i].intersect(&fan.chambers()[j]).unwrap();
            prop_assert_eq!(meet.dimension() + 1, top);
            prop_assert!(fan.quasifan().contains_cone(&meet));
        }
    }
}
