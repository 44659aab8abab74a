//! Fixed inputs shared by the benchmarks.

use num_bigint::BigInt;
use stv_core::{ivec, Cone, IntMatrix, WeightData};

/// Affine-space ambient with the given weight rows.
pub fn ambient(rows: &[&[i64]]) -> WeightData {
    WeightData::affine_space(IntMatrix::from_i64(rows)).expect("fixture weights are valid")
}

/// Rank-two ambients of increasing chamber count.
pub fn rank_two_ambients() -> Vec<(&'static str, WeightData)> {
    vec![
        ("n3", ambient(&[&[1, 0, 1], &[0, 1, 1]])),
        ("n4", ambient(&[&[1, 0, -1, 1], &[0, 1, 1, -1]])),
        ("n6", ambient(&[&[1, 2, 0, -1, 1, 3], &[0, 1, 1, 2, -1, 1]])),
    ]
}

pub fn rank_three_ambient() -> WeightData {
    ambient(&[&[1, 0, 0, 1, 1, -1], &[0, 1, 0, 1, -1, 1], &[0, 0, 1, -1, 1, 1]])
}

/// Simplicial cones whose Hilbert bases grow with the determinant.
pub fn hilbert_cones() -> Vec<(&'static str, Cone)> {
    let c = |rays: &[&[i64]]| Cone::from_rays(rays[0].len(), &rays.iter().map(|r| ivec(r)).collect::<Vec<_>>()).unwrap();
    vec![
        ("det2", c(&[&[1, 0], &[1, 2]])),
        ("det17", c(&[&[1, 0], &[3, 17]])),
        ("3d_det35", c(&[&[1, 0, 0], &[0, 1, 0], &[5, 7, 35]])),
    ]
}

/// Dense `n × n` matrix with entries from a fixed linear congruential sequence.
pub fn pseudo_random_matrix(n: usize, seed: u64) -> IntMatrix {
    let mut x = seed;
    let data = (0..n * n)
        .map(|_| {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            BigInt::from((x >> 33) as i64 % 21 - 10)
        })
        .collect();
    IntMatrix::new(n, n, data).expect("square fixture")
}
