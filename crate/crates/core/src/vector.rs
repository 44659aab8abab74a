//! Integer vectors and the handful of dense helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A vector in `Z^k`. Lexicographic `Ord` on `Vec<BigInt>` is the tie-break
/// order used throughout the crate.
pub type IntVector = Vec<BigInt>;

/// Builds an [`IntVector`] from machine integers.
pub fn ivec(entries: &[i64]) -> IntVector {
    entries.iter().map(|&e| BigInt::from(e)).collect()
}

pub fn zero_vector(len: usize) -> IntVector {
    vec![BigInt::zero(); len]
}

pub fn unit_vector(len: usize, index: usize) -> IntVector {
    let mut v = zero_vector(len);
    v[index] = BigInt::one();
    v
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[BigInt]) -> IntVector {
    a.iter().map(|x| -x).collect()
}

pub fn scale(c: &BigInt, a: &[BigInt]) -> IntVector {
    a.iter().map(|x| c * x).collect()
}

/// `alpha * a + beta * b`.
pub fn combine(alpha: &BigInt, a: &[BigInt], beta: &BigInt, b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| alpha * x + beta * y).collect()
}

/// Gcd of the entries; zero for the zero vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides out the content. The zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> IntVector {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Primitive representative whose first nonzero entry is positive.
pub fn primitive_up_to_sign(v: &[BigInt]) -> IntVector {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => neg(&p),
        _ => p,
    }
}

pub fn max_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}

/// Clears denominators of a rational vector, returning a positive multiple
/// that is integral.
pub fn clear_denominators(v: &[BigRational]) -> IntVector {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter()
        .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
        .collect()
}

pub fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Rank of the matrix whose rows are `rows`.
pub fn rank(rows: &[IntVector]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m: Vec<IntVector> = rows.iter().filter(|r| !is_zero(r)).cloned().collect();
    let mut r = 0;
    for col in 0..width {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let reduced = combine(&m[r][col], &m[i], &-&m[i][col], &m[r]);
            m[i] = primitive(&reduced);
        }
        r += 1;
    }
    r
}

/// Solves `A y = b` over the rationals for square nonsingular `A` (rows given).
pub(crate) fn solve_square(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, p);
        let pivot = m[col][col].clone();
        for j in col..=n {
            m[col][j] = &m[col][j] / &pivot;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=n {
                    let t = &f * &m[col][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`,
/// scaled back to a primitive integer vector.
pub(crate) fn project_out(v: &[BigInt], basis: &[IntVector]) -> IntVector {
    if basis.is_empty() {
        return primitive(v);
    }
    let gram: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|b| {
            basis
                .iter()
                .map(|c| BigRational::from_integer(dot(b, c)))
                .collect()
        })
        .collect();
    let rhs: Vec<BigRational> = basis
        .iter()
        .map(|b| BigRational::from_integer(dot(b, v)))
        .collect();
    let coeffs = solve_square(&gram, &rhs).expect("projection basis must be independent");
    let mut out = to_rational(v);
    for (c, b) in coeffs.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o -= c * BigRational::from_integer(x.clone());
        }
    }
    primitive(&clear_denominators(&out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_divides_content() {
        assert_eq!(primitive(&ivec(&[4, -6, 0])), ivec(&[2, -3, 0]));
        assert_eq!(primitive(&ivec(&[0, 0])), ivec(&[0, 0]));
        assert_eq!(primitive_up_to_sign(&ivec(&[0, -2, 4])), ivec(&[0, 1, -2]));
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&[ivec(&[1, 2]), ivec(&[2, 4])]), 1);
        assert_eq!(rank(&[ivec(&[0, 0]), ivec(&[0, 3])]), 1);
        assert_eq!(rank(&[ivec(&[2, 4]), ivec(&[6, 8])]), 2);
        assert_eq!(rank(&[ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[1, 1, 0])]), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn projection_removes_lineality_component() {
        let p = project_out(&ivec(&[1, 1]), &[ivec(&[1, 0])]);
        assert_eq!(p, ivec(&[0, 1]));
        let p = project_out(&ivec(&[3, 1, 0]), &[ivec(&[1, 1, 0])]);
        assert_eq!(p, ivec(&[1, -1, 0]));
    }
}
