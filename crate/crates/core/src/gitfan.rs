//! Orbit cones, GIT cones and the GIT fan of a torus acting linearly on
//! affine space with prescribed coordinate supports.
//!
//! The ambient variety is modelled by its combinatorial shadow: a `k × n`
//! weight matrix (column `i` is the character of coordinate `i`) and the
//! family of coordinate supports realized by its points. `Supports::All`
//! means every support occurs, as for `A^n` itself.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::decimal;
use crate::exact_lattice::IntMatrix;
use crate::polyhedral::{Cone, PolyhedralError, Quasifan};
use crate::vector::{self, IntVector};

/// Largest `n` for which `Supports::All` enumerates every subset.
pub const MAX_ALL_SUPPORT_COORDS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GitFanError {
    #[error("invalid weight data: {0}")]
    InvalidWeightData(String),
    #[error("no orbit cone contains every other orbit cone and every weight")]
    NoMaximalOrbitCone,
    #[error("character {} lies outside the weight cone", decimal::vector_key(.chi))]
    CharacterOutsideSupport { chi: IntVector },
    #[error(transparent)]
    Polyhedral(#[from] PolyhedralError),
}

/// Coordinate supports realized by points of the ambient variety (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Supports {
    All,
    Explicit(Vec<BTreeSet<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightData {
    weights: IntMatrix,
    supports: Supports,
}

impl WeightData {
    pub fn new(weights: IntMatrix, supports: Supports) -> Result<Self, GitFanError> {
        if weights.rows() == 0 {
            return Err(GitFanError::InvalidWeightData("character rank must be positive".into()));
        }
        let n = weights.cols();
        match &supports {
            Supports::All if n > MAX_ALL_SUPPORT_COORDS => {
                return Err(GitFanError::InvalidWeightData(format!(
                    "'all' supports limited to {MAX_ALL_SUPPORT_COORDS} coordinates, got {n}"
                )));
            }
            Supports::Explicit(list) => {
                if list.is_empty() {
                    return Err(GitFanError::InvalidWeightData("support family is empty".into()));
                }
                if let Some(bad) = list.iter().flatten().find(|&&i| i >= n) {
                    return Err(GitFanError::InvalidWeightData(format!(
                        "support index {} out of range 1..={n}",
                        bad + 1
                    )));
                }
            }
            Supports::All => {}
        }
        Ok(Self { weights, supports })
    }

    /// `A^n` with the given weights and every support.
    pub fn affine_space(weights: IntMatrix) -> Result<Self, GitFanError> {
        Self::new(weights, Supports::All)
    }

    pub fn char_rank(&self) -> usize {
        self.weights.rows()
    }

    pub fn num_coords(&self) -> usize {
        self.weights.cols()
    }

    pub fn weights(&self) -> &IntMatrix {
        &self.weights
    }

    pub fn supports(&self) -> &Supports {
        &self.supports
    }

    pub fn weight(&self, i: usize) -> IntVector {
        self.weights.column(i)
    }

    pub fn has_zero_column(&self) -> bool {
        (0..self.num_coords()).any(|i| vector::is_zero(&self.weight(i)))
    }

    /// Distinct primitive directions of the nonzero weights indexed by `support`.
    fn direction_key(&self, support: impl IntoIterator<Item = usize>) -> BTreeSet<IntVector> {
        support
            .into_iter()
            .map(|i| self.weight(i))
            .filter(|w| !vector::is_zero(w))
            .map(|w| vector::primitive(&w))
            .collect()
    }

    fn support_keys(&self) -> BTreeSet<BTreeSet<IntVector>> {
        let n = self.num_coords();
        match &self.supports {
            Supports::All => (0u64..1 << n)
                .map(|mask| self.direction_key((0..n).filter(|i| mask >> i & 1 == 1)))
                .collect(),
            Supports::Explicit(list) => {
                list.iter().map(|s| self.direction_key(s.iter().copied())).collect()
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightDataWire {
    char_rank: usize,
    #[serde(with = "decimal::vectors")]
    weights: Vec<IntVector>,
    supports: SupportsWire,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SupportsWire {
    Token(String),
    Explicit(Vec<Vec<usize>>),
}

impl Serialize for WeightData {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let supports = match &self.supports {
            Supports::All => SupportsWire::Token("all".into()),
            Supports::Explicit(list) => SupportsWire::Explicit(
                list.iter().map(|set| set.iter().map(|i| i + 1).collect()).collect(),
            ),
        };
        WeightDataWire {
            char_rank: self.char_rank(),
            weights: self.weights.row_vectors(),
            supports,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightData {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = WeightDataWire::deserialize(d)?;
        if w.weights.len() != w.char_rank {
            return Err(D::Error::custom(format!(
                "weights has {} rows, char_rank is {}",
                w.weights.len(),
                w.char_rank
            )));
        }
        let matrix = IntMatrix::from_rows(&w.weights, 0).map_err(D::Error::custom)?;
        let supports = match w.supports {
            SupportsWire::Token(t) if t == "all" => Supports::All,
            SupportsWire::Token(t) => {
                return Err(D::Error::custom(format!("unknown supports token '{t}'")));
            }
            SupportsWire::Explicit(list) => {
                let mut out = Vec::with_capacity(list.len());
                for s in list {
                    if s.contains(&0) {
                        return Err(D::Error::custom("support indices are 1-based"));
                    }
                    out.push(s.into_iter().map(|i| i - 1).collect());
                }
                Supports::Explicit(out)
            }
        };
        WeightData::new(matrix, supports).map_err(D::Error::custom)
    }
}

/// The deduplicated orbit cones and the weight cone they generate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCones {
    dim: usize,
    cones: Vec<Cone>,
    weight_cone: Cone,
}

impl OrbitCones {
    pub fn compute(w: &WeightData) -> Result<Self, GitFanError> {
        let dim = w.char_rank();
        let mut cones: BTreeSet<Cone> = BTreeSet::new();
        for key in w.support_keys() {
            let gens: Vec<IntVector> = key.into_iter().collect();
            cones.insert(Cone::from_rays(dim, &gens)?);
        }
        let cones: Vec<Cone> = cones.into_iter().collect();
        let all_weights: Vec<IntVector> = (0..w.num_coords()).map(|i| w.weight(i)).collect();
        let weight_cone = cones
            .iter()
            .find(|c| cones.iter().all(|o| c.contains_cone(o)) && all_weights.iter().all(|q| c.contains(q)))
            .cloned()
            .ok_or(GitFanError::NoMaximalOrbitCone)?;
        Ok(Self {
            dim,
            cones,
            weight_cone,
        })
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    /// `σ_X`, the maximal orbit cone.
    pub fn weight_cone(&self) -> &Cone {
        &self.weight_cone
    }

    /// `σ_χ`: the intersection of every orbit cone containing `chi`.
    pub fn git_cone(&self, chi: &[BigInt]) -> Result<Cone, GitFanError> {
        if chi.len() != self.dim {
            return Err(PolyhedralError::DimensionMismatch {
                expected: self.dim,
                got: chi.len(),
            }
            .into());
        }
        if !self.weight_cone.contains(chi) {
            return Err(GitFanError::CharacterOutsideSupport { chi: chi.to_vec() });
        }
        let containing = self.cones.iter().filter(|c| c.contains(chi));
        Ok(Cone::intersect_all(self.dim, containing)?)
    }

    /// Hyperplane normals, inside the span of `σ_X`, across which `σ_χ`
    /// can change on full-dimensional cells: facet hyperplanes of
    /// full-dimensional orbit cones and spans of codimension-one ones.
    fn walls(&self) -> Vec<IntVector> {
        let top = self.weight_cone.dimension();
        let ambient_eqs = self.weight_cone.equations();
        let mut walls: BTreeSet<IntVector> = BTreeSet::new();
        for c in &self.cones {
            let normals: Vec<&IntVector> = if c.dimension() == top {
                c.facets().iter().collect()
            } else if c.dimension() + 1 == top {
                c.equations().iter().collect()
            } else {
                continue;
            };
            for n in normals {
                let h = vector::project_out(n, ambient_eqs);
                if !vector::is_zero(&h) {
                    walls.insert(vector::primitive_up_to_sign(&h));
                }
            }
        }
        walls.into_iter().collect()
    }
}

pub fn orbit_cones(w: &WeightData) -> Result<Vec<Cone>, GitFanError> {
    Ok(OrbitCones::compute(w)?.cones)
}

pub fn git_cone(w: &WeightData, chi: &[BigInt]) -> Result<Cone, GitFanError> {
    OrbitCones::compute(w)?.git_cone(chi)
}

/// The GIT fan: a fan of GIT cones whose support is the weight cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GitFan {
    quasifan: Quasifan,
    chambers: Vec<Cone>,
    witnesses: Vec<IntVector>,
    adjacency: Vec<(usize, usize)>,
    support: Cone,
}

impl GitFan {
    pub fn quasifan(&self) -> &Quasifan {
        &self.quasifan
    }

    /// Maximal GIT cones, sorted.
    pub fn chambers(&self) -> &[Cone] {
        &self.chambers
    }

    /// One lattice character in the relative interior of each chamber.
    pub fn witnesses(&self) -> &[IntVector] {
        &self.witnesses
    }

    /// Chamber index pairs `(i, j)`, `i < j`, sharing a facet.
    pub fn adjacency(&self) -> &[(usize, usize)] {
        &self.adjacency
    }

    /// `σ_X`.
    pub fn support(&self) -> &Cone {
        &self.support
    }

    pub fn ambient_dim(&self) -> usize {
        self.support.ambient_dim()
    }

    /// Every cone of the fan, sorted.
    pub fn cones(&self) -> &[Cone] {
        self.quasifan.cones()
    }

    fn assemble(support: Cone, chambers: Vec<Cone>, witnesses: Vec<IntVector>) -> Result<Self, GitFanError> {
        let dim = support.ambient_dim();
        let quasifan = Quasifan::validate(dim, &chambers)?;
        let top = support.dimension();
        let mut adjacency = Vec::new();
        for i in 0..chambers.len() {
            for j in i + 1..chambers.len() {
                if top > 0 && chambers[i].intersect(&chambers[j])?.dimension() + 1 == top {
                    adjacency.push((i, j));
                }
            }
        }
        Ok(Self {
            quasifan,
            chambers,
            witnesses,
            adjacency,
            support,
        })
    }
}

fn split_by_wall(c: Cone, h: &IntVector) -> Result<Vec<Cone>, PolyhedralError> {
    let gens = c.generators();
    let pos = gens.iter().any(|g| vector::dot(h, g).is_positive());
    let neg = gens.iter().any(|g| vector::dot(h, g).is_negative());
    if !(pos && neg) {
        return Ok(vec![c]);
    }
    let mut out = Vec::with_capacity(2);
    for normal in [h.clone(), vector::neg(h)] {
        let mut ineqs = c.facets().to_vec();
        ineqs.push(normal);
        out.push(Cone::from_inequalities(c.ambient_dim(), &ineqs, c.equations())?);
    }
    Ok(out)
}

/// Cells of full dimension cut out of `σ_X` by the wall arrangement.
pub fn arrangement_chambers(orbits: &OrbitCones) -> Result<Vec<Cone>, GitFanError> {
    let mut cells = vec![orbits.weight_cone.clone()];
    for h in orbits.walls() {
        let mut next = Vec::with_capacity(cells.len());
        for c in cells {
            next.extend(split_by_wall(c, &h)?);
        }
        cells = next;
    }
    cells.sort();
    Ok(cells)
}

pub fn git_fan(w: &WeightData) -> Result<GitFan, GitFanError> {
    let orbits = OrbitCones::compute(w)?;
    git_fan_from_orbits(&orbits)
}

pub fn git_fan_from_orbits(orbits: &OrbitCones) -> Result<GitFan, GitFanError> {
    let top = orbits.weight_cone.dimension();
    let thin: Vec<&Cone> = orbits.cones.iter().filter(|c| c.dimension() < top).collect();
    let cells = arrangement_chambers(orbits)?;

    let computed: Vec<Result<(Cone, IntVector), GitFanError>> = cells
        .par_iter()
        .map(|cell| {
            let witness = if top == 0 {
                vector::zero_vector(orbits.dim)
            } else {
                cell.interior_point_avoiding(|p| !thin.iter().any(|c| c.contains(p)))
            };
            let cone = orbits.git_cone(&witness)?;
            Ok((cone, witness))
        })
        .collect();

    let mut by_cone: std::collections::BTreeMap<Cone, IntVector> = std::collections::BTreeMap::new();
    for r in computed {
        let (cone, witness) = r?;
        by_cone.entry(cone).or_insert(witness);
    }
    let (chambers, witnesses): (Vec<Cone>, Vec<IntVector>) = by_cone.into_iter().unzip();
    GitFan::assemble(orbits.weight_cone.clone(), chambers, witnesses)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GitFanWire {
    support: Cone,
    chambers: Vec<Cone>,
    #[serde(with = "decimal::vectors")]
    witnesses: Vec<IntVector>,
    adjacency: Vec<(usize, usize)>,
    cones: Vec<Cone>,
}

impl Serialize for GitFan {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GitFanWire {
            support: self.support.clone(),
            chambers: self.chambers.clone(),
            witnesses: self.witnesses.clone(),
            adjacency: self.adjacency.clone(),
            cones: self.quasifan.cones().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GitFan {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = GitFanWire::deserialize(d)?;
        if w.witnesses.len() != w.chambers.len() {
            return Err(D::Error::custom("one witness per chamber is required"));
        }
        let fan = GitFan::assemble(w.support, w.chambers, w.witnesses).map_err(D::Error::custom)?;
        if fan.quasifan.cones() != w.cones.as_slice() || fan.adjacency != w.adjacency {
            return Err(D::Error::custom("cones or adjacency inconsistent with chambers"));
        }
        Ok(fan)
    }
}

/// Whether the fan cone carrying `chi` equals its git cone computed directly.
pub fn carrier_matches_git_cone(orbits: &OrbitCones, fan: &GitFan, chi: &[BigInt]) -> Result<bool, GitFanError> {
    let direct = orbits.git_cone(chi)?;
    Ok(fan.quasifan.carrier(chi) == Some(&direct))
}
