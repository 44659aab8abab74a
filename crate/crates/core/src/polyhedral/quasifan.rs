use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Cone, PolyhedralError};

/// A finite face-closed collection of cones meeting pairwise in common faces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quasifan {
    dim: usize,
    cones: Vec<Cone>,
    maximal: Vec<Cone>,
}

impl Quasifan {
    /// Closes `cones` under faces and checks that any two meet in a face of both.
    ///
    /// Checking the given cones pairwise is enough: if `a ∩ b` is a face of
    /// both for all given `a, b`, the same holds for all of their faces.
    pub fn validate(dim: usize, cones: &[Cone]) -> Result<Self, PolyhedralError> {
        if let Some(c) = cones.iter().find(|c| c.ambient_dim() != dim) {
            return Err(PolyhedralError::DimensionMismatch {
                expected: dim,
                got: c.ambient_dim(),
            });
        }
        let given: Vec<Cone> = cones.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        for (i, a) in given.iter().enumerate() {
            for b in &given[i + 1..] {
                let meet = a.intersect(b)?;
                if !meet.is_face_of(a) || !meet.is_face_of(b) {
                    return Err(PolyhedralError::NotAQuasifan {
                        left: Box::new(a.clone()),
                        right: Box::new(b.clone()),
                        intersection: Box::new(meet),
                    });
                }
            }
        }
        let maximal: Vec<Cone> = given
            .iter()
            .filter(|a| !given.iter().any(|b| b != *a && b.contains_cone(a)))
            .cloned()
            .collect();
        let mut all: BTreeSet<Cone> = BTreeSet::new();
        for m in &maximal {
            all.extend(m.faces());
        }
        if all.is_empty() {
            all.insert(Cone::zero(dim));
        }
        Ok(Self {
            dim,
            cones: all.into_iter().collect(),
            maximal,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Every member, sorted.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    /// Inclusion-maximal members, sorted.
    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// A quasifan all of whose cones are pointed.
    pub fn is_fan(&self) -> bool {
        self.cones.iter().all(Cone::is_pointed)
    }

    /// Membership in `|Λ|`.
    pub fn support_contains(&self, p: &[BigInt]) -> bool {
        self.maximal.iter().any(|c| c.contains(p))
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.cones.binary_search(c).is_ok()
    }

    /// The member whose relative interior contains `p`, if `p ∈ |Λ|`.
    pub fn carrier(&self, p: &[BigInt]) -> Option<&Cone> {
        self.cones.iter().find(|c| c.relative_interior_contains(p))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuasifanWire {
    dim: usize,
    cones: Vec<Cone>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    maximal: Option<Vec<Cone>>,
}

impl Serialize for Quasifan {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuasifanWire {
            dim: self.dim,
            cones: self.cones.clone(),
            maximal: Some(self.maximal.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quasifan {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = QuasifanWire::deserialize(d)?;
        Quasifan::validate(w.dim, &w.cones).map_err(serde::de::Error::custom)
    }
}
