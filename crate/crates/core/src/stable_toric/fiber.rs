use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::StvError;
use crate::gitfan::WeightData;
use crate::polyhedral::Cone;
use crate::vector::{self, IntVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    /// A coordinate of the ambient variety.
    Ambient,
    /// A coordinate of the auxiliary affine space, one per element of `A`.
    Auxiliary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberVariable {
    pub name: String,
    #[serde(with = "crate::decimal::vector")]
    pub weight: IntVector,
    pub role: Role,
}

impl FiberVariable {
    pub fn new(name: &str, weight: IntVector, role: Role) -> Self {
        Self {
            name: name.to_string(),
            weight,
            role,
        }
    }
}

/// Exponent vectors are indexed like the fiber's variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberGenerator {
    /// The zero ideal.
    None,
    Monomial(Vec<u32>),
    /// `lhs − c · rhs`.
    Binomial { lhs: Vec<u32>, c: BigRational, rhs: Vec<u32> },
}

/// A fiber of a family of T-stable subschemes: a polynomial ring modulo a
/// principal monomial or binomial ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicFiber {
    variables: Vec<FiberVariable>,
    generator: FiberGenerator,
    chart: String,
    grading: IntVector,
}

type Exponents = Vec<u32>;

impl SymbolicFiber {
    pub fn new(variables: Vec<FiberVariable>, generator: FiberGenerator, chart: &str) -> Result<Self, StvError> {
        let n = variables.len();
        let k = variables.first().map(|v| v.weight.len()).unwrap_or(0);
        if n == 0 || variables.iter().any(|v| v.weight.len() != k) {
            return Err(StvError::InvalidFiber("variables need weights of one common rank".into()));
        }
        let weights: Vec<IntVector> = variables.iter().map(|v| v.weight.clone()).collect();
        let cone = Cone::from_rays(k, &weights)?;
        let grading = cone
            .positive_grading()
            .filter(|g| weights.iter().all(|w| vector::dot(g, w).is_positive()))
            .ok_or_else(|| StvError::UnsupportedFiberShape("variable weights need a positive grading".into()))?;

        let generator = match generator {
            FiberGenerator::Binomial { lhs, c, .. } if c.is_zero() => FiberGenerator::Monomial(lhs),
            other => other,
        };
        let check_len = |e: &Exponents| {
            if e.len() == n {
                Ok(())
            } else {
                Err(StvError::InvalidFiber(format!("exponent vector of length {} for {n} variables", e.len())))
            }
        };
        match &generator {
            FiberGenerator::None => {}
            FiberGenerator::Monomial(e) => {
                check_len(e)?;
                if e.iter().all(|&x| x == 0) {
                    return Err(StvError::UnsupportedFiberShape("unit ideal".into()));
                }
            }
            FiberGenerator::Binomial { lhs, rhs, .. } => {
                check_len(lhs)?;
                check_len(rhs)?;
                if lhs == rhs {
                    return Err(StvError::UnsupportedFiberShape("binomial with equal monomials".into()));
                }
            }
        }
        let fiber = Self {
            variables,
            generator,
            chart: chart.to_string(),
            grading,
        };
        if let FiberGenerator::Binomial { lhs, rhs, .. } = &fiber.generator {
            if fiber.weight_of(lhs) != fiber.weight_of(rhs) {
                return Err(StvError::InvalidFiber("binomial is not homogeneous".into()));
            }
        }
        Ok(fiber)
    }

    pub fn variables(&self) -> &[FiberVariable] {
        &self.variables
    }

    pub fn generator(&self) -> &FiberGenerator {
        &self.generator
    }

    pub fn chart(&self) -> &str {
        &self.chart
    }

    pub fn weight_of(&self, e: &[u32]) -> IntVector {
        let k = self.grading.len();
        let mut w = vector::zero_vector(k);
        for (v, &x) in self.variables.iter().zip(e) {
            w = vector::add(&w, &vector::scale(&BigInt::from(x), &v.weight));
        }
        w
    }

    /// Exponent of each auxiliary variable in `e`, in variable order.
    pub fn auxiliary_degree(&self, e: &[u32]) -> IntVector {
        self.variables
            .iter()
            .zip(e)
            .filter(|(v, _)| v.role == Role::Auxiliary)
            .map(|(_, &x)| BigInt::from(x))
            .collect()
    }

    pub fn render_monomial(&self, e: &[u32]) -> String {
        let parts: Vec<String> = self
            .variables
            .iter()
            .zip(e)
            .filter(|(_, &x)| x > 0)
            .map(|(v, &x)| if x == 1 { v.name.clone() } else { format!("{}^{x}", v.name) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn ideal(&self) -> String {
        match &self.generator {
            FiberGenerator::None => "(0)".into(),
            FiberGenerator::Monomial(e) => format!("({})", self.render_monomial(e)),
            FiberGenerator::Binomial { lhs, c, rhs } => {
                format!("({} - {}*{})", self.render_monomial(lhs), c, self.render_monomial(rhs))
            }
        }
    }

    /// Reducedness within the supported class: monomial ideals are reduced
    /// iff squarefree; `x − c·M` with a variable `x` of exponent one absent
    /// from `M`, `c ≠ 0`, gives a polynomial ring.
    pub fn is_reduced(&self) -> Result<bool, StvError> {
        match &self.generator {
            FiberGenerator::None => Ok(true),
            FiberGenerator::Monomial(e) => Ok(e.iter().all(|&x| x <= 1)),
            FiberGenerator::Binomial { lhs, rhs, .. } => {
                let solvable = |a: &Exponents, b: &Exponents| {
                    a.iter().sum::<u32>() == 1 && a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
                };
                if solvable(lhs, rhs) || solvable(rhs, lhs) {
                    Ok(true)
                } else {
                    Err(StvError::UnsupportedFiberShape(format!(
                        "reducedness of {} is not decided",
                        self.ideal()
                    )))
                }
            }
        }
    }

    /// All monomials of weight `chi`.
    pub fn monomials_of_weight(&self, chi: &[BigInt]) -> Vec<Exponents> {
        let degrees: Vec<BigInt> = self.variables.iter().map(|v| vector::dot(&self.grading, &v.weight)).collect();
        let mut out = Vec::new();
        let mut e = vec![0u32; self.variables.len()];
        self.monomials_rec(0, chi.to_vec(), &degrees, &mut e, &mut out);
        out.sort();
        out
    }

    fn monomials_rec(&self, i: usize, rem: IntVector, degrees: &[BigInt], e: &mut Exponents, out: &mut Vec<Exponents>) {
        if i == self.variables.len() {
            if vector::is_zero(&rem) {
                out.push(e.clone());
            }
            return;
        }
        let budget = vector::dot(&self.grading, &rem);
        if budget.is_negative() {
            return;
        }
        let max: u32 = budget.div_floor(&degrees[i]).try_into().unwrap_or(u32::MAX);
        let mut r = rem;
        for t in 0..=max {
            e[i] = t;
            self.monomials_rec(i + 1, r.clone(), degrees, e, out);
            r = vector::sub(&r, &self.variables[i].weight);
        }
        e[i] = 0;
    }

    /// A basis of the weight-`chi` piece of the quotient: each class is a
    /// set of monomials equal up to nonzero scalars; monomials in the ideal
    /// are dropped.
    pub fn graded_piece(&self, chi: &[BigInt]) -> Vec<Vec<Exponents>> {
        let monos = self.monomials_of_weight(chi);
        match &self.generator {
            FiberGenerator::None => monos.into_iter().map(|m| vec![m]).collect(),
            FiberGenerator::Monomial(g) => monos.into_iter().filter(|m| !divides(g, m)).map(|m| vec![m]).collect(),
            FiberGenerator::Binomial { lhs, rhs, .. } => {
                let index: BTreeMap<&Exponents, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
                let mut parent: Vec<usize> = (0..monos.len()).collect();
                fn find(p: &mut [usize], mut i: usize) -> usize {
                    while p[i] != i {
                        p[i] = p[p[i]];
                        i = p[i];
                    }
                    i
                }
                for (i, m) in monos.iter().enumerate() {
                    if divides(lhs, m) {
                        let moved: Exponents = m.iter().zip(lhs).zip(rhs).map(|((&x, &a), &b)| x - a + b).collect();
                        if let Some(&j) = index.get(&moved) {
                            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                            parent[a.max(b)] = a.min(b);
                        }
                    }
                }
                let mut classes: BTreeMap<usize, Vec<Exponents>> = BTreeMap::new();
                for (i, m) in monos.iter().enumerate() {
                    let r = find(&mut parent, i);
                    classes.entry(r).or_default().push(m.clone());
                }
                classes.into_values().collect()
            }
        }
    }

    pub fn graded_dimension(&self, chi: &[BigInt]) -> usize {
        self.graded_piece(chi).len()
    }

    fn is_ambient_monomial(&self, m: &[u32]) -> bool {
        self.variables.iter().zip(m).all(|(v, &x)| x == 0 || v.role == Role::Ambient)
    }

    /// Whether the ambient monomials of weight `chi` span the weight-`chi` piece.
    pub fn ambient_spans(&self, chi: &[BigInt]) -> bool {
        self.graded_piece(chi)
            .iter()
            .all(|class| class.iter().any(|m| self.is_ambient_monomial(m)))
    }

    /// Whether variable `var` is a nonzero generator of a one-dimensional piece.
    pub fn trivializes(&self, var: usize) -> bool {
        let mut e = vec![0u32; self.variables.len()];
        e[var] = 1;
        let piece = self.graded_piece(&self.variables[var].weight);
        piece.len() == 1 && piece[0].contains(&e)
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Whether `k[X]_{Nχ}` maps onto the fiber's weight-`Nχ` piece for all `χ ∈ A`.
pub fn check_finite_fiber(
    fiber: &SymbolicFiber,
    ambient: &WeightData,
    a_set: &[IntVector],
    n_exponent: &BigInt,
) -> Result<bool, StvError> {
    let ambient_weights: Vec<&IntVector> = fiber
        .variables
        .iter()
        .filter(|v| v.role == Role::Ambient)
        .map(|v| &v.weight)
        .collect();
    let expected: Vec<IntVector> = (0..ambient.num_coords()).map(|i| ambient.weight(i)).collect();
    if ambient_weights.len() != expected.len() || ambient_weights.iter().zip(&expected).any(|(a, b)| *a != b) {
        return Err(StvError::InvalidFiber("ambient variables do not match the weight data".into()));
    }
    fiber.is_reduced()?;
    Ok(a_set
        .iter()
        .all(|chi| fiber.ambient_spans(&vector::scale(n_exponent, chi))))
}
