//! Weight monoids: saturation, Hilbert bases, the Hilbert function and the
//! generator set `A` with exponent `N` making degree-one generation hold.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::decimal;
use crate::exact_lattice::{smith_normal_form, IntMatrix};
use crate::gitfan::{GitFan, Supports, WeightData};
use crate::polyhedral::{check_point, Cone, PolyhedralError};
use crate::vector::{self, IntVector};

/// Largest candidate exponent tried by [`choose_n`].
pub const EXPONENT_SEARCH_CAP: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("cone is not pointed")]
    NotPointed,
    #[error("unsupported weight cone: {0}")]
    UnsupportedWeightCone(String),
    #[error("character {} lies outside the weight cone", decimal::vector_key(.chi))]
    CharacterOutsideWeightCone { chi: IntVector },
    #[error("no exponent n <= {cap} certifies degree-one generation for {}", decimal::vector_key(.chi))]
    ExponentSearchExhausted { chi: IntVector, cap: u64 },
    #[error("fiber decomposition fails for {} at j = {j}", decimal::vector_key(.chi))]
    FiberDecompositionFailed { chi: IntVector, j: u64 },
    #[error("monoid needs at least one generator")]
    NoGenerators,
    #[error(transparent)]
    Polyhedral(#[from] PolyhedralError),
}

/// A finitely generated submonoid of `Z^k`; generators keep their magnitude.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMonoid {
    char_rank: usize,
    generators: Vec<IntVector>,
    cone: Cone,
}

impl AffineMonoid {
    pub fn new(char_rank: usize, generators: &[IntVector]) -> Result<Self, MonoidError> {
        if generators.is_empty() {
            return Err(MonoidError::NoGenerators);
        }
        let set: BTreeSet<IntVector> = generators.iter().cloned().collect();
        let generators: Vec<IntVector> = set.into_iter().collect();
        let cone = Cone::from_rays(char_rank, &generators)?;
        Ok(Self {
            char_rank,
            generators,
            cone,
        })
    }

    pub fn char_rank(&self) -> usize {
        self.char_rank
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    /// Membership in the monoid itself (not its saturation). Needs a pointed cone.
    pub fn contains(&self, chi: &[BigInt]) -> Result<bool, MonoidError> {
        check_point(&self.cone, chi.len())?;
        let grading = self.cone.positive_grading().ok_or(MonoidError::NotPointed)?;
        let gens: Vec<&IntVector> = self.generators.iter().filter(|g| !vector::is_zero(g)).collect();
        let mut memo = HashMap::new();
        Ok(decomposes(chi, &gens, &self.cone, &grading, &mut memo))
    }
}

fn decomposes(
    x: &[BigInt],
    gens: &[&IntVector],
    cone: &Cone,
    grading: &IntVector,
    memo: &mut HashMap<IntVector, bool>,
) -> bool {
    if vector::is_zero(x) {
        return true;
    }
    if !cone.contains(x) || !vector::dot(grading, x).is_positive() {
        return false;
    }
    if let Some(&known) = memo.get(x) {
        return known;
    }
    let found = gens
        .iter()
        .any(|g| decomposes(&vector::sub(x, g), gens, cone, grading, memo));
    memo.insert(x.to_vec(), found);
    found
}

/// `h(chi)`: 1 if `chi` lies in the saturated monoid `sigma_hat ∩ Z^k`, else 0.
pub fn hilbert_function(sigma_hat: &Cone, chi: &[BigInt]) -> Result<u8, PolyhedralError> {
    check_point(sigma_hat, chi.len())?;
    Ok(u8::from(sigma_hat.contains(chi)))
}

pub fn saturation_membership(m: &AffineMonoid, chi: &[BigInt]) -> bool {
    chi.len() == m.char_rank && m.cone.contains(chi)
}

pub fn is_in_monoid(m: &AffineMonoid, chi: &[BigInt]) -> Result<bool, MonoidError> {
    m.contains(chi)
}

/// Lattice points `sum_i λ_i r_i`, `λ ∈ [0,1)^d`, of the half-open
/// parallelepiped over linearly independent `rays`.
fn parallelepiped_points(rays: &[IntVector]) -> Vec<IntVector> {
    let k = rays[0].len();
    let r = IntMatrix::from_columns(rays, k).expect("rays share a length");
    let snf = smith_normal_form(&r);
    let diag = snf.diagonal();
    let d = rays.len();
    let mut out = Vec::new();
    let mut w = vec![BigInt::zero(); d];
    loop {
        let mut lambda = vec![BigRational::zero(); d];
        for (i, lam) in lambda.iter_mut().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                *lam += BigRational::new(snf.v.get(i, j) * wj, diag[j].clone());
            }
        }
        let mut point = vec![BigRational::zero(); k];
        for (lam, ray) in lambda.iter().zip(rays) {
            let f = lam - lam.floor();
            for (p, x) in point.iter_mut().zip(ray) {
                *p += &f * BigRational::from_integer(x.clone());
            }
        }
        out.push(point.into_iter().map(|p| p.to_integer()).collect());

        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            w[i] += 1;
            if w[i] < diag[i] {
                break;
            }
            w[i] = BigInt::zero();
            i += 1;
        }
    }
}

fn for_each_subset(n: usize, size: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, size, cur, f);
            cur.pop();
        }
    }
    go(0, n, size, &mut Vec::with_capacity(size), f);
}

/// The minimal generating set of `c ∩ Z^k` for a pointed cone, sorted.
///
/// Candidates are the rays and the lattice points of the half-open
/// parallelepipeds of all simplicial subcones spanned by rays. They are
/// scanned by increasing degree and kept unless reducible by an element
/// already kept.
pub fn hilbert_basis(c: &Cone) -> Result<Vec<IntVector>, MonoidError> {
    let grading = c.positive_grading().ok_or(MonoidError::NotPointed)?;
    if c.is_zero() {
        return Ok(Vec::new());
    }
    let rays = c.rays();
    let d = c.dimension();
    let mut candidates: BTreeSet<IntVector> = rays.iter().cloned().collect();
    for_each_subset(rays.len(), d, &mut |idx| {
        let sub: Vec<IntVector> = idx.iter().map(|&i| rays[i].clone()).collect();
        if vector::rank(&sub) == d {
            candidates.extend(parallelepiped_points(&sub).into_iter().filter(|p| !vector::is_zero(p)));
        }
    });
    let mut ordered: Vec<(BigInt, IntVector)> =
        candidates.into_iter().map(|p| (vector::dot(&grading, &p), p)).collect();
    ordered.sort();
    let mut basis: Vec<IntVector> = Vec::new();
    for (_, x) in ordered {
        if !basis.iter().any(|h| c.contains(&vector::sub(&x, h))) {
            basis.push(x);
        }
    }
    basis.sort();
    Ok(basis)
}

/// `A`: the union of the Hilbert bases of all cones of the fan, sorted.
#[allow(non_snake_case)]
pub fn choose_A(fan: &GitFan) -> Result<Vec<IntVector>, MonoidError> {
    let mut out = BTreeSet::new();
    for c in fan.cones() {
        out.extend(hilbert_basis(c)?);
    }
    Ok(out.into_iter().collect())
}

/// The set `A`, the exponent `N` and the per-character certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaTwoData {
    pub a_set: Vec<IntVector>,
    pub n_exponent: BigInt,
    pub per_character_exponents: BTreeMap<IntVector, u64>,
    pub verified_bound: u64,
}

/// Shared preconditions for fiber computations in the affine-space model.
#[derive(Debug, Clone)]
pub struct FiberModel {
    weights: IntMatrix,
    grading: IntVector,
    cone: Cone,
}

impl FiberModel {
    pub fn new(w: &WeightData) -> Result<Self, MonoidError> {
        if *w.supports() != Supports::All {
            return Err(MonoidError::UnsupportedWeightCone(
                "exponent selection needs the affine-space model (supports \"all\")".into(),
            ));
        }
        if w.has_zero_column() {
            return Err(MonoidError::UnsupportedWeightCone("weight matrix has a zero column".into()));
        }
        let cols = w.weights().columns();
        let cone = Cone::from_rays(w.char_rank(), &cols)?;
        let grading = cone
            .positive_grading()
            .ok_or_else(|| MonoidError::UnsupportedWeightCone("weight cone is not pointed".into()))?;
        Ok(Self {
            weights: w.weights().clone(),
            grading,
            cone,
        })
    }

    pub fn weight_cone(&self) -> &Cone {
        &self.cone
    }

    /// All `a ∈ N^n` with `Q a = target`.
    pub fn fiber(&self, target: &[BigInt]) -> Vec<IntVector> {
        let n = self.weights.cols();
        let cols = self.weights.columns();
        let degrees: Vec<BigInt> = cols.iter().map(|q| vector::dot(&self.grading, q)).collect();
        let mut out = Vec::new();
        let mut a = vec![BigInt::zero(); n];
        fiber_rec(0, target.to_vec(), &cols, &degrees, &self.grading, &mut a, &mut out);
        out.sort();
        out
    }

    /// Whether every point of the `j·target` fiber is a sum of `j` points of
    /// the `target` fiber.
    pub fn fiber_decomposes(&self, target: &[BigInt], j: u64) -> bool {
        let base = self.fiber(target);
        let mut sums: BTreeSet<IntVector> = std::iter::once(vector::zero_vector(self.weights.cols())).collect();
        for _ in 0..j {
            sums = sums
                .iter()
                .flat_map(|s| base.iter().map(move |b| vector::add(s, b)))
                .collect();
        }
        let big = vector::scale(&BigInt::from(j), target);
        self.fiber(&big).iter().all(|p| sums.contains(p))
    }

    /// Whether `{(a, j) ∈ N^{n+1} : Q a = j·target}` is generated in `j = 1`.
    pub fn generated_in_degree_one(&self, target: &[BigInt]) -> Result<bool, MonoidError> {
        let n = self.weights.cols();
        let k = self.weights.rows();
        let ineqs: Vec<IntVector> = (0..=n).map(|i| vector::unit_vector(n + 1, i)).collect();
        let eqs: Vec<IntVector> = (0..k)
            .map(|r| {
                let mut row = self.weights.row(r).to_vec();
                row.push(-&target[r]);
                row
            })
            .collect();
        let total = Cone::from_inequalities(n + 1, &ineqs, &eqs)?;
        Ok(hilbert_basis(&total)?.iter().all(|h| h[n] <= BigInt::one()))
    }
}

fn fiber_rec(
    i: usize,
    rem: IntVector,
    cols: &[IntVector],
    degrees: &[BigInt],
    grading: &IntVector,
    a: &mut IntVector,
    out: &mut Vec<IntVector>,
) {
    if i == cols.len() {
        if vector::is_zero(&rem) {
            out.push(a.clone());
        }
        return;
    }
    let budget = vector::dot(grading, &rem);
    if budget.is_negative() {
        return;
    }
    let max = budget.div_floor(&degrees[i]);
    let mut t = BigInt::zero();
    let mut r = rem;
    while t <= max {
        a[i] = t.clone();
        fiber_rec(i + 1, r.clone(), cols, degrees, grading, a, out);
        r = vector::sub(&r, &cols[i]);
        t += 1;
    }
    a[i] = BigInt::zero();
}

/// Least certified `n_χ` per character and `N = lcm n_χ`; the fiber
/// decomposition is cross-checked for every `j ≤ j_max`.
pub fn choose_n(w: &WeightData, a_set: &[IntVector], j_max: u64) -> Result<LemmaTwoData, MonoidError> {
    choose_n_with_cap(w, a_set, j_max, EXPONENT_SEARCH_CAP)
}

pub fn choose_n_with_cap(
    w: &WeightData,
    a_set: &[IntVector],
    j_max: u64,
    cap: u64,
) -> Result<LemmaTwoData, MonoidError> {
    let model = FiberModel::new(w)?;
    let mut per = BTreeMap::new();
    for chi in a_set {
        check_point(model.weight_cone(), chi.len())?;
        if !model.weight_cone().contains(chi) {
            return Err(MonoidError::CharacterOutsideWeightCone { chi: chi.clone() });
        }
        let mut found = None;
        for n in 1..=cap {
            if model.generated_in_degree_one(&vector::scale(&BigInt::from(n), chi))? {
                found = Some(n);
                break;
            }
        }
        let n = found.ok_or_else(|| MonoidError::ExponentSearchExhausted {
            chi: chi.clone(),
            cap,
        })?;
        per.insert(chi.clone(), n);
    }
    let n_exponent = per.values().fold(BigInt::one(), |acc, &n| acc.lcm(&BigInt::from(n)));
    for chi in a_set {
        let target = vector::scale(&n_exponent, chi);
        for j in 1..=j_max {
            if !model.fiber_decomposes(&target, j) {
                return Err(MonoidError::FiberDecompositionFailed { chi: chi.clone(), j });
            }
        }
    }
    let mut a_sorted = a_set.to_vec();
    a_sorted.sort();
    a_sorted.dedup();
    Ok(LemmaTwoData {
        a_set: a_sorted,
        n_exponent,
        per_character_exponents: per,
        verified_bound: j_max,
    })
}

impl LemmaTwoData {
    pub fn n_exponent_u64(&self) -> Option<u64> {
        self.n_exponent.to_u64()
    }
}
