use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use stv_core::gitfan::git_fan;
use stv_core::monoids::{choose_A, hilbert_basis};
use stv_core::{ivec, AffineMonoid, Cone, IntMatrix, IntVector, WeightData};

fn orthant_cone() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (2usize..=3).prop_flat_map(|d| (Just(d), prop::collection::vec(prop::collection::vec(0i64..=5, d), 1..=4)))
}

fn small(v: &IntVector) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn hilbert_basis_is_irredundant_and_generating((dim, gens) in orthant_cone()) {
        let gens: Vec<IntVector> = gens.iter().map(|g| ivec(g)).collect();
        let cone = Cone::from_rays(dim, &gens).unwrap();
        let hb = hilbert_basis(&cone).unwrap();
        for (i, h) in hb.iter().enumerate() {
            prop_assert!(cone.contains(h));
            for (j, g) in hb.iter().enumerate() {
                if i != j {
                    let diff: IntVector = h.iter().zip(g).map(|(a, b)| a - b).collect();
                    prop_assert!(!cone.contains(&diff), "{:?} - {:?} stays in the cone", h, g);
                }
            }
        }

        let hb_small: Vec<Vec<i64>> = hb.iter().map(small).collect();
        let bound: i64 = hb_small.iter().map(|h| h.iter().sum::<i64>()).sum();
        let mut reachable: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0; dim]]);
        let mut frontier = vec![vec![0; dim]];
        while let Some(p) = frontier.pop() {
            for h in &hb_small {
                let q: Vec<i64> = p.iter().zip(h).map(|(a, b)| a + b).collect();
                if q.iter().sum::<i64>() <= bound && reachable.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        let mut point = vec![0i64; dim];
        'outer: loop {
            if point.iter().sum::<i64>() <= bound && cone.contains(&ivec(&point)) {
                prop_assert!(reachable.contains(&point), "{:?} does not decompose", point);
            }
            let mut i = 0;
            loop {
                if i == dim {
                    break 'outer;
                }
                point[i] += 1;
                if point[i] <= bound {
                    break;
                }
                point[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn choose_a_generates_every_fan_cone(k in 1usize..=2, n in 1usize..=4, entries in prop::collection::vec(-3i64..=3, 8)) {
        let w = IntMatrix::new(k, n, entries[..k * n].iter().map(|&x| BigInt::from(x)).collect()).unwrap();
        let fan = git_fan(&WeightData::affine_space(w).unwrap()).unwrap();
        prop_assume!(fan.support().is_pointed());
        let a = choose_A(&fan).unwrap();
        for c in fan.cones() {
            let local: Vec<IntVector> = a.iter().filter(|x| c.contains(x)).cloned().collect();
            if c.is_zero() {
                continue;
            }
            let monoid = AffineMonoid::new(k, &local).unwrap();
            prop_assert_eq!(monoid.cone(), c);
            for h in hilbert_basis(c).unwrap() {
                prop_assert!(monoid.contains(&h).unwrap());
            }
        }
    }
}
