//! Independent small-integer oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

pub type V3 = [i64; 3];

fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: V3, b: V3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn det3(a: V3, b: V3, c: V3) -> i64 {
    dot(a, cross(b, c))
}

fn in_simplicial(x: V3, s: &[V3]) -> bool {
    match s {
        [] => x == [0, 0, 0],
        [g] => cross(x, *g) == [0, 0, 0] && dot(x, *g) >= 0,
        [g, h] => {
            let n = cross(*g, *h);
            dot(x, n) == 0 && dot(cross(x, *h), n) >= 0 && dot(cross(*g, x), n) >= 0
        }
        [g, h, k] => {
            let d = det3(*g, *h, *k);
            let (a, b, c) = (det3(x, *h, *k), det3(*g, x, *k), det3(*g, *h, x));
            if d > 0 {
                a >= 0 && b >= 0 && c >= 0
            } else {
                a <= 0 && b <= 0 && c <= 0
            }
        }
        _ => unreachable!("at most three generators"),
    }
}

fn independent(s: &[V3]) -> bool {
    match s {
        [] => true,
        [g] => *g != [0, 0, 0],
        [g, h] => cross(*g, *h) != [0, 0, 0],
        [g, h, k] => det3(*g, *h, *k) != 0,
        _ => false,
    }
}

/// Membership in `cone(gens)` for at most three generators in `Z^3`, by
/// Carathéodory over linearly independent subsets and Cramer's rule.
pub fn in_cone(x: V3, gens: &[V3]) -> bool {
    let n = gens.len();
    (0u32..1 << n).any(|mask| {
        let s: Vec<V3> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| gens[i]).collect();
        independent(&s) && in_simplicial(x, &s)
    })
}

/// Minimal generators of `cone(gens) ∩ Z^3` for nonnegative generators,
/// by listing lattice points below the generator sum and discarding
/// every point that splits as a sum of two nonzero cone points.
pub fn brute_hilbert_basis(gens: &[V3]) -> Vec<V3> {
    let mut top = [0i64; 3];
    for g in gens {
        for i in 0..3 {
            top[i] += g[i];
        }
    }
    let side = [top[0] as usize + 1, top[1] as usize + 1, top[2] as usize + 1];
    let at = |p: V3| (p[0] as usize * side[1] + p[1] as usize) * side[2] + p[2] as usize;
    let mut member = vec![false; side[0] * side[1] * side[2]];
    let mut points = Vec::new();
    for a in 0..=top[0] {
        for b in 0..=top[1] {
            for c in 0..=top[2] {
                let p = [a, b, c];
                if in_cone(p, gens) {
                    member[at(p)] = true;
                    if p != [0, 0, 0] {
                        points.push(p);
                    }
                }
            }
        }
    }
    let mut basis = Vec::new();
    for &x in &points {
        let mut reducible = false;
        'search: for a in 0..=x[0] {
            for b in 0..=x[1] {
                for c in 0..=x[2] {
                    let y = [a, b, c];
                    if y == [0, 0, 0] || y == x {
                        continue;
                    }
                    if member[at(y)] && member[at([x[0] - a, x[1] - b, x[2] - c])] {
                        reducible = true;
                        break 'search;
                    }
                }
            }
        }
        if !reducible {
            basis.push(x);
        }
    }
    basis.sort();
    basis
}

/// Solutions `a ∈ [0, bound]^n` of `weights · a = target`.
pub fn fiber(weights: &[Vec<i64>], target: &[i64], bound: i64) -> BTreeSet<Vec<i64>> {
    let n = weights[0].len();
    let mut out = BTreeSet::new();
    let mut a = vec![0i64; n];
    loop {
        let ok = weights
            .iter()
            .zip(target)
            .all(|(row, &t)| row.iter().zip(&a).map(|(w, x)| w * x).sum::<i64>() == t);
        if ok {
            out.insert(a.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            a[i] += 1;
            if a[i] <= bound {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

/// Determinant by permutation expansion.
pub fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total: i128 = 0;
    permute(&mut perm, 0, &mut |p| {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let prod: i128 = (0..n).map(|i| m[i][p[i]] as i128).product();
        total += if inversions % 2 == 0 { prod } else { -prod };
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Rank over `Q` by fraction-free elimination in `i128`.
pub fn rank(m: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let (a, b) = (rows[r][c], rows[i][c]);
                for j in 0..cols {
                    rows[i][j] = rows[i][j] * a - rows[r][j] * b;
                }
                let g = rows[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    rows[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Order and exponent of `Z^2 / <gens>` by enumerating cosets of a box.
pub fn coset_group_2d(gens: &[[i64; 2]]) -> (usize, usize) {
    let mut d = 0i64;
    for (i, g) in gens.iter().enumerate() {
        for h in &gens[i + 1..] {
            d = d.max((g[0] * h[1] - g[1] * h[0]).abs());
        }
    }
    assert!(d > 0, "sublattice must have full rank");
    let span = d;
    let member = |v: [i64; 2]| -> bool {
        let n = gens.len();
        let mut c = vec![-span; n];
        loop {
            let mut s = [0i64; 2];
            for (ci, g) in c.iter().zip(gens) {
                s[0] += ci * g[0];
                s[1] += ci * g[1];
            }
            if s == v {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                c[i] += 1;
                if c[i] <= span {
                    break;
                }
                c[i] = -span;
                i += 1;
            }
        }
    };
    let mut reps: Vec<[i64; 2]> = Vec::new();
    for a in 0..d {
        for b in 0..d {
            let p = [a, b];
            if !reps.iter().any(|r| member([p[0] - r[0], p[1] - r[1]])) {
                reps.push(p);
            }
        }
    }
    let exponent = reps
        .iter()
        .map(|r| (1..).find(|&k| member([k * r[0], k * r[1]])).unwrap())
        .max()
        .unwrap_or(1) as usize;
    (reps.len(), exponent)
}
