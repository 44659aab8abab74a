//! The quasifan algebra `k[Λ]` truncated to an ∞-norm box: basis `x^χ` over
//! lattice points of `|Λ|`, with `x^a · x^b = x^{a+b}` when `a` and `b`
//! share a cone of `Λ` and zero otherwise.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::decimal;
use crate::polyhedral::{Cone, Quasifan};
use crate::vector::{self, IntVector};

/// Upper limit on the number of box points scanned while building.
pub const MAX_BOX_POINTS: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{} is not a basis element", decimal::vector_key(.0))]
    NotInBasis(IntVector),
    #[error("box bound must be positive")]
    ZeroBoxBound,
    #[error("box of bound {bound} in dimension {dim} exceeds {MAX_BOX_POINTS} points")]
    BoxTooLarge { bound: u64, dim: usize },
    #[error("product {} leaves the box", decimal::vector_key(.0))]
    OutOfBox(IntVector),
}

/// Outcome of multiplying two basis monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Product {
    Monomial(IntVector),
    Zero,
    /// A common cone exists but the sum leaves the box.
    OutOfBox(IntVector),
}

/// A finite `Q`-combination of basis monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedElement {
    coefficients: BTreeMap<IntVector, BigRational>,
}

impl GradedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(chi: IntVector) -> Self {
        Self::term(chi, BigRational::from_integer(1.into()))
    }

    pub fn term(chi: IntVector, c: BigRational) -> Self {
        let mut e = Self::zero();
        e.add_term(chi, c);
        e
    }

    pub fn add_term(&mut self, chi: IntVector, c: BigRational) {
        let entry = self.coefficients.entry(chi.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coefficients.remove(&chi);
        }
    }

    pub fn coefficients(&self) -> &BTreeMap<IntVector, BigRational> {
        &self.coefficients
    }

    pub fn coefficient(&self, chi: &[BigInt]) -> BigRational {
        self.coefficients.get(chi).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &IntVector> {
        self.coefficients.keys()
    }
}

impl std::ops::Add for &GradedElement {
    type Output = GradedElement;
    fn add(self, rhs: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        for (k, v) in &rhs.coefficients {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

/// One irreducible component: a maximal cone and its boxed lattice points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub cone: Cone,
    #[serde(with = "decimal::vectors")]
    pub basis: Vec<IntVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociativityReport {
    pub holds: bool,
    pub triples_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[DecimalVector; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DecimalVector(#[serde(with = "decimal::vector")] pub IntVector);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedQuasifanAlgebra {
    quasifan: Quasifan,
    box_bound: BigInt,
    basis: Vec<IntVector>,
    index: BTreeSet<IntVector>,
}

pub fn build_algebra(quasifan: &Quasifan, box_bound: u64) -> Result<TruncatedQuasifanAlgebra, AlgebraError> {
    TruncatedQuasifanAlgebra::new(quasifan, box_bound)
}

impl TruncatedQuasifanAlgebra {
    pub fn new(quasifan: &Quasifan, box_bound: u64) -> Result<Self, AlgebraError> {
        if box_bound == 0 {
            return Err(AlgebraError::ZeroBoxBound);
        }
        let dim = quasifan.ambient_dim();
        let side = 2 * box_bound + 1;
        let too_large = || AlgebraError::BoxTooLarge { bound: box_bound, dim };
        let total = u32::try_from(dim)
            .ok()
            .and_then(|d| side.checked_pow(d))
            .ok_or_else(too_large)?;
        if total > MAX_BOX_POINTS {
            return Err(too_large());
        }
        let b = BigInt::from(box_bound);
        let mut basis = Vec::new();
        let mut p = vec![-b.clone(); dim];
        loop {
            if quasifan.support_contains(&p) {
                basis.push(p.clone());
            }
            let mut i = dim;
            loop {
                if i == 0 {
                    let index = basis.iter().cloned().collect();
                    return Ok(Self {
                        quasifan: quasifan.clone(),
                        box_bound: b,
                        basis,
                        index,
                    });
                }
                i -= 1;
                if p[i] < b {
                    p[i] += 1;
                    break;
                }
                p[i] = -b.clone();
            }
        }
    }

    pub fn quasifan(&self) -> &Quasifan {
        &self.quasifan
    }

    pub fn box_bound(&self) -> &BigInt {
        &self.box_bound
    }

    /// Lattice points of `|Λ|` in the box, lexicographically sorted.
    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        self.quasifan.maximal_cones()
    }

    pub fn in_box(&self, chi: &[BigInt]) -> bool {
        chi.iter().all(|x| x.abs() <= self.box_bound)
    }

    pub fn is_basis_element(&self, chi: &[BigInt]) -> bool {
        self.index.contains(chi)
    }

    /// Dimension of the graded piece of degree `chi` (0 or 1).
    pub fn graded_dimension(&self, chi: &[BigInt]) -> usize {
        usize::from(self.is_basis_element(chi))
    }

    fn share_cone(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        self.maximal_cones().iter().any(|c| c.contains(a) && c.contains(b))
    }

    pub fn multiply(&self, a: &[BigInt], b: &[BigInt]) -> Result<Product, AlgebraError> {
        for x in [a, b] {
            if !self.is_basis_element(x) {
                return Err(AlgebraError::NotInBasis(x.to_vec()));
            }
        }
        Ok(self.multiply_unchecked(a, b))
    }

    fn multiply_unchecked(&self, a: &[BigInt], b: &[BigInt]) -> Product {
        if !self.share_cone(a, b) {
            return Product::Zero;
        }
        let s = vector::add(a, b);
        if self.in_box(&s) {
            Product::Monomial(s)
        } else {
            Product::OutOfBox(s)
        }
    }

    /// Bilinear extension of [`Self::multiply`]; fails if any product leaves the box.
    pub fn multiply_elements(&self, f: &GradedElement, g: &GradedElement) -> Result<GradedElement, AlgebraError> {
        let mut out = GradedElement::zero();
        for (a, ca) in f.coefficients() {
            for (b, cb) in g.coefficients() {
                match self.multiply(a, b)? {
                    Product::Monomial(s) => out.add_term(s, ca * cb),
                    Product::Zero => {}
                    Product::OutOfBox(s) => return Err(AlgebraError::OutOfBox(s)),
                }
            }
        }
        Ok(out)
    }

    pub fn components(&self) -> Vec<Component> {
        self.maximal_cones()
            .iter()
            .map(|c| Component {
                cone: c.clone(),
                basis: self.basis.iter().filter(|p| c.contains(p)).cloned().collect(),
            })
            .collect()
    }

    /// The surjection onto the component of `cone`: kill monomials outside it.
    pub fn project(&self, cone: &Cone, f: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero();
        for (chi, c) in f.coefficients() {
            if cone.contains(chi) {
                out.add_term(chi.clone(), c.clone());
            }
        }
        out
    }

    pub fn check_associativity(&self) -> AssociativityReport {
        self.check_associativity_with(|a, b| self.multiply_unchecked(a, b))
    }

    /// Exhaustive associativity over basis triples whose partial sums stay in
    /// the box, for an arbitrary multiplication table on the basis.
    pub fn check_associativity_with(&self, mul: impl Fn(&[BigInt], &[BigInt]) -> Product) -> AssociativityReport {
        let then = |p: Product, c: &[BigInt]| match p {
            Product::Monomial(s) => mul(&s, c),
            other => other,
        };
        let mut checked = 0;
        for a in &self.basis {
            for b in &self.basis {
                let ab = vector::add(a, b);
                if !self.in_box(&ab) {
                    continue;
                }
                for c in &self.basis {
                    let bc = vector::add(b, c);
                    if !self.in_box(&bc) || !self.in_box(&vector::add(&ab, c)) {
                        continue;
                    }
                    checked += 1;
                    let left = then(mul(a, b), c);
                    let right = match mul(b, c) {
                        Product::Monomial(s) => mul(a, &s),
                        other => other,
                    };
                    if left != right {
                        return AssociativityReport {
                            holds: false,
                            triples_checked: checked,
                            witness: Some([DecimalVector(a.clone()), DecimalVector(b.clone()), DecimalVector(c.clone())]),
                        };
                    }
                }
            }
        }
        AssociativityReport {
            holds: true,
            triples_checked: checked,
            witness: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::ivec;

    fn cone(dim: usize, gens: &[&[i64]]) -> Cone {
        let g: Vec<IntVector> = gens.iter().map(|v| ivec(v)).collect();
        Cone::from_rays(dim, &g).unwrap()
    }

    fn cross() -> Quasifan {
        Quasifan::validate(1, &[cone(1, &[&[1]]), cone(1, &[&[-1]])]).unwrap()
    }

    fn range(lo: i64, hi: i64) -> Vec<IntVector> {
        (lo..=hi).map(|i| ivec(&[i])).collect()
    }

    #[test]
    fn bases_of_one_dimensional_algebras() {
        let ray = Quasifan::validate(1, &[cone(1, &[&[1]])]).unwrap();
        assert_eq!(build_algebra(&ray, 5).unwrap().basis(), range(0, 5).as_slice());
        assert_eq!(build_algebra(&cross(), 3).unwrap().basis(), range(-3, 3).as_slice());
        let line = Quasifan::validate(1, &[Cone::full_space(1)]).unwrap();
        assert_eq!(build_algebra(&line, 2).unwrap().basis(), range(-2, 2).as_slice());
        assert_eq!(build_algebra(&line, 0), Err(AlgebraError::ZeroBoxBound));
    }

    #[test]
    fn products() {
        let alg = build_algebra(&cross(), 3).unwrap();
        assert_eq!(alg.multiply(&ivec(&[1]), &ivec(&[-1])), Ok(Product::Zero));
        assert_eq!(alg.multiply(&ivec(&[1]), &ivec(&[1])), Ok(Product::Monomial(ivec(&[2]))));
        assert_eq!(alg.multiply(&ivec(&[2]), &ivec(&[2])), Ok(Product::OutOfBox(ivec(&[4]))));
        assert_eq!(alg.multiply(&ivec(&[0]), &ivec(&[-3])), Ok(Product::Monomial(ivec(&[-3]))));
        assert_eq!(alg.multiply(&ivec(&[4]), &ivec(&[0])), Err(AlgebraError::NotInBasis(ivec(&[4]))));
        let line = Quasifan::validate(1, &[Cone::full_space(1)]).unwrap();
        let lalg = build_algebra(&line, 2).unwrap();
        assert_eq!(lalg.multiply(&ivec(&[1]), &ivec(&[-1])), Ok(Product::Monomial(ivec(&[0]))));
    }

    #[test]
    fn components_of_examples() {
        let comps = build_algebra(&cross(), 3).unwrap().components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].basis, range(-3, 0));
        assert_eq!(comps[1].basis, range(0, 3));
        let ray = Quasifan::validate(1, &[cone(1, &[&[1]])]).unwrap();
        let alg = build_algebra(&ray, 4).unwrap();
        assert_eq!(alg.components()[0].basis, alg.basis());
        let axes = Quasifan::validate(2, &[cone(2, &[&[1, 0]]), cone(2, &[&[0, 1]])]).unwrap();
        assert_eq!(build_algebra(&axes, 2).unwrap().components().len(), 2);
    }

    #[test]
    fn associativity_and_negative_control() {
        let alg = build_algebra(&cross(), 3).unwrap();
        let report = alg.check_associativity();
        assert!(report.holds && report.witness.is_none() && report.triples_checked > 0);
        let broken = alg.check_associativity_with(|a, b| {
            if a == ivec(&[1]).as_slice() && b == ivec(&[2]).as_slice() {
                Product::Zero
            } else {
                alg.multiply(a, b).unwrap()
            }
        });
        assert!(!broken.holds);
        let w = broken.witness.unwrap();
        assert_eq!([&w[0].0, &w[1].0, &w[2].0], [&ivec(&[1]), &ivec(&[1]), &ivec(&[1])]);
    }

    #[test]
    fn element_products_and_projections() {
        let alg = build_algebra(&cross(), 3).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let f = &GradedElement::monomial(ivec(&[1])) + &GradedElement::term(ivec(&[-1]), half.clone());
        let sq = alg.multiply_elements(&f, &f).unwrap();
        assert_eq!(sq.coefficient(&ivec(&[2])), BigRational::from_integer(1.into()));
        assert_eq!(sq.coefficient(&ivec(&[-2])), &half * &half);
        assert!(sq.coefficient(&ivec(&[0])).is_zero());
        let comps = alg.components();
        assert_eq!(alg.project(&comps[1].cone, &f), GradedElement::monomial(ivec(&[1])));
    }
}
