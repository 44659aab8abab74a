mod oracles;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use stv_core::exact_lattice::{kernel_basis, quotient_group, smith_normal_form};
use stv_core::IntMatrix;

fn matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn to_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64(&refs)
}

fn small(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.row_vectors().iter().map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_reconstructs(rows in matrix(5)) {
        let a = to_matrix(&rows);
        let s = smith_normal_form(&a);
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.d.clone());
        prop_assert_eq!(oracles::det(&small(&s.u)).abs(), 1);
        prop_assert_eq!(oracles::det(&small(&s.v)).abs(), 1);
        let diag = s.diagonal();
        prop_assert_eq!(diag.len(), oracles::rank(&rows));
        for w in diag.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn kernel_rank_identity(rows in matrix(5)) {
        let a = to_matrix(&rows);
        let k = kernel_basis(&a);
        prop_assert!((&a * &k).is_zero());
        prop_assert_eq!(k.cols() + oracles::rank(&rows), a.cols());
        if k.cols() > 0 {
            prop_assert_eq!(oracles::rank(&small(&k.transpose())), k.cols());
        }
    }

    #[test]
    fn kernel_is_saturated(rows in matrix(4)) {
        let a = to_matrix(&rows);
        let k = kernel_basis(&a);
        if k.cols() > 0 {
            let g = quotient_group(a.cols(), &k).unwrap();
            prop_assert!(g.invariant_factors().is_empty());
        }
    }

    #[test]
    fn quotient_order_is_determinant(n in 1usize..=4, entries in prop::collection::vec(-9i64..=9, 16)) {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| entries[i * n..(i + 1) * n].to_vec()).collect();
        let det = oracles::det(&rows);
        let g = quotient_group(n, &to_matrix(&rows)).unwrap();
        if det == 0 {
            prop_assert!(g.free_rank() > 0);
        } else {
            prop_assert_eq!(g.order(), Some(BigInt::from(det.abs())));
            for w in g.invariant_factors().windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            prop_assert!(g.invariant_factors().iter().all(|d| d.is_positive() && *d > BigInt::from(1)));
        }
    }
}
