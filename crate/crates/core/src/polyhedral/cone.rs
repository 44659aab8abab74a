use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dd::double_description;
use super::PolyhedralError;
use crate::decimal;
use crate::exact_lattice::saturate;
use crate::vector::{self, IntVector};

/// A rational polyhedral cone in `Q^dim`, held in both representations.
///
/// Canonical form: `lineality` is the Hermite basis of the saturated
/// lineality lattice; `rays` are primitive, orthogonal to the lineality
/// space and sorted; `facets` are primitive normals lying in the linear span
/// (so each is unique); `equations` is the Hermite basis of the integer
/// orthogonal complement of the span. The cone is
/// `{ x : f · x >= 0 for f in facets, e · x = 0 for e in equations }`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    dim: usize,
    rays: Vec<IntVector>,
    lineality: Vec<IntVector>,
    facets: Vec<IntVector>,
    equations: Vec<IntVector>,
}

fn canonical(dim: usize, rays: Vec<IntVector>, lineality: Vec<IntVector>) -> (Vec<IntVector>, Vec<IntVector>) {
    let lineality = saturate(&lineality, dim);
    let rays: BTreeSet<IntVector> = rays
        .iter()
        .map(|r| vector::project_out(r, &lineality))
        .filter(|r| !vector::is_zero(r))
        .collect();
    (rays.into_iter().collect(), lineality)
}

fn with_negatives(rows: &[IntVector], extra: &[IntVector]) -> Vec<IntVector> {
    let mut out: Vec<IntVector> = rows.to_vec();
    for e in extra {
        out.push(e.clone());
        out.push(vector::neg(e));
    }
    out
}

fn check_len(dim: usize, vs: &[IntVector]) -> Result<(), PolyhedralError> {
    match vs.iter().find(|v| v.len() != dim) {
        Some(v) => Err(PolyhedralError::DimensionMismatch {
            expected: dim,
            got: v.len(),
        }),
        None => Ok(()),
    }
}

impl Cone {
    /// `cone(generators)`: nonnegative combinations. An empty list gives the zero cone.
    pub fn from_rays(dim: usize, generators: &[IntVector]) -> Result<Self, PolyhedralError> {
        check_len(dim, generators)?;
        let dual = double_description(dim, generators);
        let (facets, equations) = canonical(dim, dual.rays, dual.lineality);
        let primal = double_description(dim, &with_negatives(&facets, &equations));
        let (rays, lineality) = canonical(dim, primal.rays, primal.lineality);
        Ok(Self {
            dim,
            rays,
            lineality,
            facets,
            equations,
        })
    }

    /// `cone(rays) + span(lineality)`.
    pub fn from_rays_and_lineality(
        dim: usize,
        rays: &[IntVector],
        lineality: &[IntVector],
    ) -> Result<Self, PolyhedralError> {
        Self::from_rays(dim, &with_negatives(rays, lineality))
    }

    /// `{ x : a · x >= 0 for a in inequalities, e · x = 0 for e in equations }`.
    pub fn from_inequalities(
        dim: usize,
        inequalities: &[IntVector],
        equations: &[IntVector],
    ) -> Result<Self, PolyhedralError> {
        check_len(dim, inequalities)?;
        check_len(dim, equations)?;
        let primal = double_description(dim, &with_negatives(inequalities, equations));
        let (rays, lineality) = canonical(dim, primal.rays, primal.lineality);
        Ok(Self::from_canonical_generators(dim, rays, lineality))
    }

    /// Rays and lineality already in canonical form (e.g. a subset of the
    /// rays of a canonical cone together with its lineality).
    pub(crate) fn from_canonical_generators(dim: usize, rays: Vec<IntVector>, lineality: Vec<IntVector>) -> Self {
        let dual = double_description(dim, &with_negatives(&rays, &lineality));
        let (facets, equations) = canonical(dim, dual.rays, dual.lineality);
        Self {
            dim,
            rays,
            lineality,
            facets,
            equations,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            rays: Vec::new(),
            lineality: Vec::new(),
            facets: Vec::new(),
            equations: (0..dim).map(|i| vector::unit_vector(dim, i)).collect(),
        }
    }

    pub fn full_space(dim: usize) -> Self {
        Self {
            dim,
            rays: Vec::new(),
            lineality: (0..dim).map(|i| vector::unit_vector(dim, i)).collect(),
            facets: Vec::new(),
            equations: Vec::new(),
        }
    }

    /// Ambient dimension `k`.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVector] {
        &self.lineality
    }

    pub fn facets(&self) -> &[IntVector] {
        &self.facets
    }

    pub fn equations(&self) -> &[IntVector] {
        &self.equations
    }

    /// Dimension of the linear span.
    pub fn dimension(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    /// Rays followed by `±` each lineality vector; their nonnegative hull is the cone.
    pub fn generators(&self) -> Vec<IntVector> {
        with_negatives(&self.rays, &self.lineality)
    }

    pub fn contains(&self, p: &[BigInt]) -> bool {
        debug_assert_eq!(p.len(), self.dim);
        self.equations.iter().all(|e| vector::dot(e, p).is_zero())
            && self.facets.iter().all(|f| !vector::dot(f, p).is_negative())
    }

    pub fn contains_rational(&self, p: &[BigRational]) -> bool {
        self.contains(&vector::clear_denominators(p))
    }

    /// Membership in the relative interior.
    pub fn relative_interior_contains(&self, p: &[BigInt]) -> bool {
        self.equations.iter().all(|e| vector::dot(e, p).is_zero())
            && self.facets.iter().all(|f| vector::dot(f, p).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
            && other
                .lineality
                .iter()
                .all(|l| self.contains(l) && self.contains(&vector::neg(l)))
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone, PolyhedralError> {
        Cone::intersect_all(self.dim, [self, other])
    }

    /// Intersection of any number of cones; the empty intersection is `Q^dim`.
    pub fn intersect_all<'a>(
        dim: usize,
        cones: impl IntoIterator<Item = &'a Cone>,
    ) -> Result<Cone, PolyhedralError> {
        let mut ineqs: BTreeSet<IntVector> = BTreeSet::new();
        let mut eqs: BTreeSet<IntVector> = BTreeSet::new();
        for c in cones {
            if c.dim != dim {
                return Err(PolyhedralError::DimensionMismatch {
                    expected: dim,
                    got: c.dim,
                });
            }
            ineqs.extend(c.facets.iter().cloned());
            eqs.extend(c.equations.iter().cloned());
        }
        let ineqs: Vec<IntVector> = ineqs.into_iter().collect();
        let eqs: Vec<IntVector> = eqs.into_iter().collect();
        Cone::from_inequalities(dim, &ineqs, &eqs)
    }

    /// Indices of rays on which the facet normal `f` vanishes.
    fn tight_rays(&self, f: &[BigInt]) -> Vec<usize> {
        (0..self.rays.len())
            .filter(|&i| vector::dot(f, &self.rays[i]).is_zero())
            .collect()
    }

    /// All faces, from the cone itself down to its lineality space, sorted.
    pub fn faces(&self) -> Vec<Cone> {
        let facet_sets: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|f| self.tight_rays(f).into_iter().collect())
            .collect();
        let all: BTreeSet<usize> = (0..self.rays.len()).collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        seen.insert(all.clone());
        let mut queue = vec![all];
        while let Some(current) = queue.pop() {
            for fs in &facet_sets {
                let next: BTreeSet<usize> = current.intersection(fs).copied().collect();
                if seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
        let mut faces: Vec<Cone> = seen
            .into_iter()
            .map(|idx| {
                if idx.len() == self.rays.len() {
                    return self.clone();
                }
                let rays = idx.iter().map(|&i| self.rays[i].clone()).collect();
                Cone::from_canonical_generators(self.dim, rays, self.lineality.clone())
            })
            .collect();
        faces.sort();
        faces
    }

    /// Whether `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        if self.dim != other.dim || !other.contains_cone(self) {
            return false;
        }
        let gens = self.generators();
        let supporting: Vec<&IntVector> = other
            .facets
            .iter()
            .filter(|f| gens.iter().all(|g| vector::dot(f, g).is_zero()))
            .collect();
        // Smallest face of `other` containing `self`; it must lie inside `self`.
        other
            .rays
            .iter()
            .filter(|r| supporting.iter().all(|f| vector::dot(f, r).is_zero()))
            .all(|r| self.contains(r))
            && other
                .lineality
                .iter()
                .all(|l| self.contains(l) && self.contains(&vector::neg(l)))
    }

    /// A relative-interior lattice point: `sum_i s^i g_i` over the generators
    /// for the first `s = 1, 2, ...` accepted by `accept`. Every generator has
    /// a positive coefficient, so the point is relatively interior.
    pub fn interior_point_avoiding(&self, mut accept: impl FnMut(&IntVector) -> bool) -> IntVector {
        let gens = self.generators();
        let mut s = BigInt::one();
        loop {
            let mut p = vector::zero_vector(self.dim);
            let mut coeff = BigInt::one();
            for g in &gens {
                p = vector::add(&p, &vector::scale(&coeff, g));
                coeff *= &s;
            }
            if accept(&p) {
                return p;
            }
            s += 1;
        }
    }

    /// Sum of rays plus sum of each lineality vector (its relative interior).
    pub fn interior_point(&self) -> IntVector {
        let mut p = vector::zero_vector(self.dim);
        for g in self.rays.iter().chain(&self.lineality) {
            p = vector::add(&p, g);
        }
        p
    }

    /// A strictly positive integral functional on `self \ {0}`, available
    /// for pointed cones: the sum of the facet normals, or zero for `{0}`.
    pub fn positive_grading(&self) -> Option<IntVector> {
        if !self.is_pointed() {
            return None;
        }
        let mut g = vector::zero_vector(self.dim);
        for f in &self.facets {
            g = vector::add(&g, f);
        }
        Some(g)
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |vs: &[IntVector]| -> String {
            vs.iter().map(|v| decimal::vector_key(v)).collect::<Vec<_>>().join(" ")
        };
        write!(f, "cone[{}](rays: {}", self.dim, show(&self.rays))?;
        if !self.lineality.is_empty() {
            write!(f, "; lineality: {}", show(&self.lineality))?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConeWire {
    dim: usize,
    #[serde(with = "decimal::vectors")]
    rays: Vec<IntVector>,
    #[serde(with = "decimal::vectors", default)]
    lineality: Vec<IntVector>,
}

impl Serialize for Cone {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ConeWire {
            dim: self.dim,
            rays: self.rays.clone(),
            lineality: self.lineality.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cone {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = ConeWire::deserialize(d)?;
        Cone::from_rays_and_lineality(w.dim, &w.rays, &w.lineality).map_err(serde::de::Error::custom)
    }
}

/// Checks the dimension of a point against a cone.
pub(crate) fn check_point(c: &Cone, len: usize) -> Result<(), PolyhedralError> {
    if c.dim != len {
        return Err(PolyhedralError::DimensionMismatch {
            expected: c.dim,
            got: len,
        });
    }
    Ok(())
}
