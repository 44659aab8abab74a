use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use stv_core::gitfan::git_fan;
use stv_core::monoids::choose_A;
use stv_core::stable_toric::{
    aut_group, classify_stv_configs, default_nonzero_image_chars, verify_example, AutGroupInput, DEFAULT_CHAMBER_CAP,
};
use stv_core::{IntMatrix, IntVector, WeightData};

fn ambient() -> impl Strategy<Value = IntMatrix> {
    (1usize..=2, 1usize..=4).prop_flat_map(|(k, n)| {
        prop::collection::vec(-3i64..=3, k * n)
            .prop_map(move |e| IntMatrix::new(k, n, e.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

fn combination(dim: usize, gens: &[IntVector], coeffs: &[i64]) -> IntVector {
    let mut p = vec![BigInt::from(0); dim];
    for (g, &c) in gens.iter().zip(coeffs.iter().cycle()) {
        for (x, y) in p.iter_mut().zip(g) {
            *x += BigInt::from(c) * y;
        }
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn configurations_satisfy_invariants(w in ambient(), samples in prop::collection::vec(prop::collection::vec(0i64..=4, 6), 24)) {
        let fan = git_fan(&WeightData::affine_space(w).unwrap()).unwrap();
        let configs = classify_stv_configs(&fan, DEFAULT_CHAMBER_CAP).unwrap();
        prop_assert!(!configs.is_empty());
        let gens = fan.support().generators();
        for config in &configs {
            let comps = config.component_cones();
            let mut assigned = BTreeSet::new();
            for (c, group) in comps.iter().zip(config.chamber_assignment()) {
                for &i in group {
                    prop_assert!(c.contains_cone(&fan.chambers()[i]));
                    prop_assert!(assigned.insert(i));
                }
                for o in comps {
                    prop_assert!(o == c || !o.contains_cone(c));
                }
            }
            prop_assert_eq!(assigned.len(), fan.chambers().len());
            for s in &samples {
                let p = combination(fan.ambient_dim(), &gens, s);
                let holding: Vec<_> = comps.iter().filter(|c| c.contains(&p)).collect();
                prop_assert!(!holding.is_empty(), "{:?} is in no component", p);
                let carrier = config.quasifan().carrier(&p).unwrap();
                for c in holding {
                    prop_assert!(carrier.is_face_of(c));
                }
            }
        }
    }

    #[test]
    fn aut_group_symmetries(weights in prop::collection::vec(prop_oneof![-4i64..=-1, 1i64..=4], 1..=3), extra in prop::collection::vec(-6i64..=6, 1..3), rot in 0usize..4) {
        let w = WeightData::affine_space(IntMatrix::from_i64(&[weights.as_slice()])).unwrap();
        let fan = git_fan(&w).unwrap();
        let a = choose_A(&fan).unwrap();
        let b = default_nonzero_image_chars(&w);
        for config in classify_stv_configs(&fan, DEFAULT_CHAMBER_CAP).unwrap() {
            let input = |a: &[IntVector], b: &[IntVector]| AutGroupInput {
                a_set: a.to_vec(),
                alpha: IntMatrix::from_columns(a, 1).unwrap(),
                config: config.clone(),
                nonzero_image_chars: b.to_vec(),
                n_exponent: None,
            };
            let base = aut_group(&input(&a, &b)).unwrap();
            let mut permuted = a.clone();
            permuted.rotate_left(rot % a.len());
            permuted.reverse();
            let again = aut_group(&input(&permuted, &b)).unwrap();
            prop_assert_eq!(again.invariant_factors(), base.invariant_factors());

            let mut bigger = b.clone();
            for &e in &extra {
                let chi = vec![BigInt::from(e)];
                if config.component_cones().iter().any(|c| c.contains(&chi)) {
                    bigger.push(chi);
                }
            }
            let enlarged = aut_group(&input(&a, &bigger)).unwrap();
            let (old, new) = (base.order().unwrap(), enlarged.order().unwrap());
            prop_assert!((&old % &new) == BigInt::from(0), "{} does not divide {}", new, old);
        }
    }
}

#[test]
fn example_excludes_two_points_for_all_small_m() {
    for m in 1..=12u64 {
        let r = verify_example(m).unwrap();
        assert_eq!(r.excluded.len(), 2);
        assert_eq!(r.aut_order, BigInt::from(m));
    }
}
