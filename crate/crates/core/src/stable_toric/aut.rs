use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{StvConfig, StvError};
use crate::exact_lattice::{kernel_vectors, quotient_group, FiniteAbelianGroup, IntMatrix};
use crate::gitfan::WeightData;
use crate::vector::{self, IntVector};

/// Bound on the total degree searched for nonnegative preimages.
pub const PREIMAGE_DEGREE_CAP: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutGroupInput {
    pub a_set: Vec<IntVector>,
    /// `k × d`, column `i` is the character `χ_i ∈ A`.
    pub alpha: IntMatrix,
    pub config: StvConfig,
    /// Characters whose images in the coordinate ring are nonzero.
    pub nonzero_image_chars: Vec<IntVector>,
    pub n_exponent: Option<BigInt>,
}

impl AutGroupInput {
    fn validate(&self) -> Result<(), StvError> {
        let bad = |s: String| Err(StvError::InvalidAutGroupInput(s));
        let k = self.config.quasifan().ambient_dim();
        if self.alpha.rows() != k {
            return bad(format!("alpha has {} rows, characters have rank {k}", self.alpha.rows()));
        }
        if self.alpha.cols() == 0 {
            return bad("alpha has no columns".into());
        }
        for col in self.alpha.columns() {
            if !self.a_set.contains(&col) {
                return bad(format!("alpha column {} is not in A", crate::decimal::vector_key(&col)));
            }
        }
        for chi in &self.nonzero_image_chars {
            if chi.len() != k || !self.config.component_cones().iter().any(|c| c.contains(chi)) {
                return bad(format!("{} lies in no component cone", crate::decimal::vector_key(chi)));
            }
        }
        Ok(())
    }
}

/// The distinct nonzero weights of the ambient coordinates: generators of
/// the weight monoid when the ambient variety is affine space.
pub fn default_nonzero_image_chars(w: &WeightData) -> Vec<IntVector> {
    let set: BTreeSet<IntVector> = (0..w.num_coords())
        .map(|i| w.weight(i))
        .filter(|q| !vector::is_zero(q))
        .collect();
    set.into_iter().collect()
}

/// Smallest-degree `v ≥ 0` supported on `coords` with `Σ v_i α_i = chi`.
fn nonnegative_preimage(alpha: &IntMatrix, coords: &[usize], chi: &[BigInt]) -> Option<IntVector> {
    let d = alpha.cols();
    let cols: Vec<IntVector> = coords.iter().map(|&i| alpha.column(i)).collect();
    if vector::is_zero(chi) {
        return Some(vector::zero_vector(d));
    }
    fn search(
        cols: &[IntVector],
        idx: usize,
        left: u64,
        rem: &IntVector,
        picks: &mut Vec<u64>,
    ) -> bool {
        if idx + 1 == cols.len() {
            let want = vector::scale(&BigInt::from(left), &cols[idx]);
            if &want == rem {
                picks.push(left);
                return true;
            }
            return false;
        }
        for t in 0..=left {
            let next = vector::sub(rem, &vector::scale(&BigInt::from(t), &cols[idx]));
            picks.push(t);
            if search(cols, idx + 1, left - t, &next, picks) {
                return true;
            }
            picks.pop();
        }
        false
    }
    if cols.is_empty() {
        return None;
    }
    for total in 1..=PREIMAGE_DEGREE_CAP {
        let mut picks = Vec::with_capacity(cols.len());
        if search(&cols, 0, total, &chi.to_vec(), &mut picks) {
            let mut v = vector::zero_vector(d);
            for (&i, t) in coords.iter().zip(picks) {
                v[i] = BigInt::from(t);
            }
            return Some(v);
        }
    }
    None
}

/// The isomorphism type of `Z^d / L`, presenting the automorphism group.
///
/// `L` is generated by the kernels of `α` restricted to the coordinates of
/// each component, and, when some character has nonzero image, by one
/// nonnegative preimage of each such character together with `ker α`.
pub fn aut_group(input: &AutGroupInput) -> Result<FiniteAbelianGroup, StvError> {
    input.validate()?;
    let alpha = &input.alpha;
    let d = alpha.cols();
    let component_coords: Vec<Vec<usize>> = input
        .config
        .component_cones()
        .iter()
        .map(|c| (0..d).filter(|&i| c.contains(&alpha.column(i))).collect())
        .collect();

    let mut gens: Vec<IntVector> = Vec::new();
    for coords in &component_coords {
        if coords.is_empty() {
            continue;
        }
        for k in kernel_vectors(&alpha.select_columns(coords)) {
            let mut v = vector::zero_vector(d);
            for (&i, x) in coords.iter().zip(k) {
                v[i] = x;
            }
            gens.push(v);
        }
    }
    if !input.nonzero_image_chars.is_empty() {
        gens.extend(kernel_vectors(alpha));
    }
    for chi in &input.nonzero_image_chars {
        let pre = input
            .config
            .component_cones()
            .iter()
            .zip(&component_coords)
            .filter(|(c, _)| c.contains(chi))
            .find_map(|(_, coords)| nonnegative_preimage(alpha, coords, chi))
            .ok_or_else(|| StvError::PreimageNotFound { chi: chi.clone() })?;
        gens.push(pre);
    }
    gens.retain(|g| !vector::is_zero(g));

    let group = if gens.is_empty() {
        FiniteAbelianGroup::new(Vec::new(), d)?
    } else {
        quotient_group(d, &IntMatrix::from_columns(&gens, d)?)?
    };
    if group.free_rank() > 0 {
        return Err(StvError::InfiniteAutomorphismGroup {
            free_rank: group.free_rank(),
        });
    }
    if let (Some(n), Some(e)) = (&input.n_exponent, group.exponent()) {
        if n.is_zero() || !n.is_multiple_of(&e) {
            return Err(StvError::ExponentNotAnnihilating {
                n_exponent: n.clone(),
                exponent: e,
            });
        }
    }
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gitfan::git_fan;
    use crate::polyhedral::Cone;
    use crate::stable_toric::{classify_stv_configs, DEFAULT_CHAMBER_CAP};
    use crate::vector::ivec;

    fn configs(rows: &[&[i64]]) -> Vec<StvConfig> {
        let fan = git_fan(&WeightData::affine_space(IntMatrix::from_i64(rows)).unwrap()).unwrap();
        classify_stv_configs(&fan, DEFAULT_CHAMBER_CAP).unwrap()
    }

    fn factors(g: &FiniteAbelianGroup) -> Vec<BigInt> {
        g.invariant_factors().to_vec()
    }

    #[test]
    fn example_group_is_cyclic_of_order_m() {
        for m in 1..8 {
            let w = WeightData::affine_space(IntMatrix::from_i64(&[&[m]])).unwrap();
            let config = configs(&[&[m]]).remove(0);
            let input = AutGroupInput {
                a_set: vec![ivec(&[1])],
                alpha: IntMatrix::from_i64(&[&[1]]),
                config,
                nonzero_image_chars: default_nonzero_image_chars(&w),
                n_exponent: Some(BigInt::from(m)),
            };
            let g = aut_group(&input).unwrap();
            assert_eq!(g.order(), Some(BigInt::from(m)));
            let expect: Vec<BigInt> = if m == 1 { vec![] } else { vec![BigInt::from(m)] };
            assert_eq!(factors(&g), expect);
        }
    }

    #[test]
    fn cross_bouquet_group() {
        let cfg = configs(&[&[1, -1]]).remove(1);
        assert_eq!(cfg.component_cones().len(), 2);
        let input = AutGroupInput {
            a_set: vec![ivec(&[1]), ivec(&[-1])],
            alpha: IntMatrix::from_i64(&[&[1, -1]]),
            config: cfg,
            nonzero_image_chars: vec![ivec(&[2]), ivec(&[-2])],
            n_exponent: Some(BigInt::from(2)),
        };
        assert_eq!(factors(&aut_group(&input).unwrap()), vec![BigInt::from(2)]);

        let mut bigger = input.clone();
        bigger.nonzero_image_chars = vec![ivec(&[1]), ivec(&[-1])];
        assert!(aut_group(&bigger).unwrap().is_trivial());

        let mut empty = input.clone();
        empty.nonzero_image_chars.clear();
        assert_eq!(aut_group(&empty), Err(StvError::InfiniteAutomorphismGroup { free_rank: 2 }));

        let mut wrong_n = input;
        wrong_n.n_exponent = Some(BigInt::from(3));
        assert!(matches!(aut_group(&wrong_n), Err(StvError::ExponentNotAnnihilating { .. })));
    }

    #[test]
    fn line_config_has_kernel_condition() {
        let line = configs(&[&[1, -1]]).remove(0);
        assert_eq!(line.component_cones(), &[Cone::full_space(1)]);
        let input = AutGroupInput {
            a_set: vec![ivec(&[1]), ivec(&[-1])],
            alpha: IntMatrix::from_i64(&[&[1, -1]]),
            config: line,
            nonzero_image_chars: vec![ivec(&[2])],
            n_exponent: None,
        };
        assert_eq!(factors(&aut_group(&input).unwrap()), vec![BigInt::from(2)]);
    }

    #[test]
    fn input_validation() {
        let cfg = configs(&[&[2]]).remove(0);
        let input = AutGroupInput {
            a_set: vec![ivec(&[1])],
            alpha: IntMatrix::from_i64(&[&[2]]),
            config: cfg,
            nonzero_image_chars: vec![],
            n_exponent: None,
        };
        assert!(matches!(aut_group(&input), Err(StvError::InvalidAutGroupInput(_))));
    }
}
