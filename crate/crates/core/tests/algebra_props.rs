use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use stv_core::gitfan::git_fan;
use stv_core::monoids::hilbert_function;
use stv_core::quasifan_algebra::{build_algebra, GradedElement, Product};
use stv_core::stable_toric::{classify_stv_configs, DEFAULT_CHAMBER_CAP};
use stv_core::{IntMatrix, WeightData};

fn ambient() -> impl Strategy<Value = IntMatrix> {
    (1usize..=2, 1usize..=4).prop_flat_map(|(k, n)| {
        prop::collection::vec(-2i64..=2, k * n)
            .prop_map(move |e| IntMatrix::new(k, n, e.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn bouquet_algebras_of_configurations(w in ambient(), coeffs in prop::collection::vec(-3i64..=3, 64)) {
        let fan = git_fan(&WeightData::affine_space(w).unwrap()).unwrap();
        let configs = classify_stv_configs(&fan, DEFAULT_CHAMBER_CAP).unwrap();
        let bound = if fan.ambient_dim() == 1 { 4 } else { 2 };
        for config in configs {
            let alg = build_algebra(config.quasifan(), bound).unwrap();
            prop_assert!(alg.check_associativity().holds);

            for p in alg.basis() {
                let h = config.quasifan().maximal_cones().iter().map(|c| hilbert_function(c, p).unwrap()).max().unwrap();
                prop_assert_eq!(alg.graded_dimension(p), usize::from(h));
            }

            for (comp, chambers) in config.component_cones().iter().zip(config.chamber_assignment()) {
                for &ch in chambers {
                    let chamber = &fan.chambers()[ch];
                    let pts: Vec<_> = alg.basis().iter().filter(|p| chamber.contains(p)).collect();
                    for a in &pts {
                        for b in &pts {
                            prop_assert!(comp.contains(a) && comp.contains(b));
                            prop_assert_ne!(alg.multiply(a, b).unwrap(), Product::Zero);
                        }
                    }
                }
            }

            let mut f = GradedElement::zero();
            for (p, &c) in alg.basis().iter().zip(coeffs.iter().cycle()) {
                f.add_term(p.clone(), BigRational::from_integer(c.into()));
            }
            let all_zero = alg.components().iter().all(|comp| alg.project(&comp.cone, &f).is_zero());
            prop_assert_eq!(all_zero, f.is_zero());
        }
    }
}
