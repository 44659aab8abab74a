//! Exact double description: generators of `{ y : a_i · y >= 0 }`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::vector::{self, IntVector};

/// Generators of a polyhedral cone: a lineality basis plus one representative
/// per extreme ray of the pointed quotient. Neither list is canonical.
#[derive(Debug, Clone)]
pub(crate) struct Generators {
    pub lineality: Vec<IntVector>,
    pub rays: Vec<IntVector>,
}

struct Ray {
    v: IntVector,
    /// Indices of processed inequalities that vanish on `v`, ascending.
    tight: Vec<usize>,
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Incremental double description over the inequalities, processed in
/// lexicographic order after normalizing each row to a primitive vector.
pub(crate) fn double_description(dim: usize, inequalities: &[IntVector]) -> Generators {
    let rows: BTreeSet<IntVector> = inequalities
        .iter()
        .filter(|a| !vector::is_zero(a))
        .map(|a| vector::primitive(a))
        .collect();

    let mut lineality: Vec<IntVector> = (0..dim).map(|i| vector::unit_vector(dim, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed: Vec<IntVector> = Vec::with_capacity(rows.len());

    for a in rows {
        let idx = processed.len();
        if let Some(pos) = lineality.iter().position(|l| !vector::dot(&a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            let mut s = vector::dot(&a, &l0);
            if s.is_negative() {
                l0 = vector::neg(&l0);
                s = -s;
            }
            for l in lineality.iter_mut() {
                let t = vector::dot(&a, l);
                if !t.is_zero() {
                    *l = vector::primitive(&vector::combine(&s, l, &-t, &l0));
                }
            }
            for r in rays.iter_mut() {
                let t = vector::dot(&a, &r.v);
                if !t.is_zero() {
                    r.v = vector::primitive(&vector::combine(&s, &r.v, &-t, &l0));
                }
                r.tight.push(idx);
            }
            rays.push(Ray {
                v: l0,
                tight: (0..idx).collect(),
            });
            processed.push(a);
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| vector::dot(&a, &r.v)).collect();
        let positive: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if negative.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.tight.push(idx);
                }
            }
            processed.push(a);
            continue;
        }

        // Rank of the processed system equals dim - current lineality.
        let target = (dim - lineality.len()).saturating_sub(2);
        let mut created: Vec<Ray> = Vec::new();
        for &p in &positive {
            for &n in &negative {
                let common = intersect_sorted(&rays[p].tight, &rays[n].tight);
                if common.len() < target {
                    continue;
                }
                // Cheap combinatorial filter: another ray tight on `common`
                // means the pair does not span a 2-face.
                let dominated = rays.iter().enumerate().any(|(i, r)| {
                    i != p && i != n && common.iter().all(|c| r.tight.binary_search(c).is_ok())
                });
                if dominated {
                    continue;
                }
                let sub: Vec<IntVector> = common.iter().map(|&c| processed[c].clone()).collect();
                if vector::rank(&sub) != target {
                    continue;
                }
                let v = vector::primitive(&vector::combine(
                    &values[p],
                    &rays[n].v,
                    &-&values[n],
                    &rays[p].v,
                ));
                let mut tight = common;
                tight.push(idx);
                created.push(Ray { v, tight });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (mut r, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                r.tight.push(idx);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
        processed.push(a);
    }

    Generators {
        lineality,
        rays: rays.into_iter().map(|r| r.v).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::ivec;

    fn sorted(mut v: Vec<IntVector>) -> Vec<IntVector> {
        v.sort();
        v
    }

    #[test]
    fn no_inequalities_gives_whole_space() {
        let g = double_description(2, &[]);
        assert_eq!(g.lineality.len(), 2);
        assert!(g.rays.is_empty());
    }

    #[test]
    fn orthant() {
        let g = double_description(2, &[ivec(&[1, 0]), ivec(&[0, 1])]);
        assert!(g.lineality.is_empty());
        assert_eq!(sorted(g.rays), vec![ivec(&[0, 1]), ivec(&[1, 0])]);
    }

    #[test]
    fn square_pyramid_dual() {
        // Cone over a square: four facets, four rays.
        let ineqs = [ivec(&[1, 0, 1]), ivec(&[-1, 0, 1]), ivec(&[0, 1, 1]), ivec(&[0, -1, 1])];
        let g = double_description(3, &ineqs);
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays.len(), 4);
        for r in &g.rays {
            assert!(ineqs.iter().all(|a| !vector::dot(a, r).is_negative()));
        }
    }

    #[test]
    fn opposite_halfspaces_give_hyperplane() {
        let g = double_description(2, &[ivec(&[1, 1]), ivec(&[-1, -1])]);
        assert_eq!(g.lineality.len(), 1);
        assert!(g.rays.is_empty());
    }
}
