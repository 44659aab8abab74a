//! Exact rational polyhedral cones and quasifans.
//!
//! Cones are stored with primitive integer generators and cached facet
//! inequalities, both computed by exact double description. Every cone is
//! kept in a canonical form, so structural equality is set equality.

mod cone;
mod dd;
mod quasifan;

use num_rational::BigRational;
use thiserror::Error;

use crate::vector::IntVector;

pub use cone::Cone;
pub use quasifan::Quasifan;
pub(crate) use cone::check_point;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyhedralError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not a quasifan: {left:?} and {right:?} meet in {intersection:?}, which is not a face of both")]
    NotAQuasifan {
        left: Box<Cone>,
        right: Box<Cone>,
        intersection: Box<Cone>,
    },
}

pub fn cone_from_rays(ambient_dim: usize, generators: &[IntVector]) -> Result<Cone, PolyhedralError> {
    Cone::from_rays(ambient_dim, generators)
}

pub fn intersect(a: &Cone, b: &Cone) -> Result<Cone, PolyhedralError> {
    a.intersect(b)
}

pub fn faces(a: &Cone) -> Vec<Cone> {
    a.faces()
}

pub fn validate_quasifan(ambient_dim: usize, cones: &[Cone]) -> Result<Quasifan, PolyhedralError> {
    Quasifan::validate(ambient_dim, cones)
}

pub fn membership(a: &Cone, point: &[BigRational]) -> Result<bool, PolyhedralError> {
    cone::check_point(a, point.len())?;
    Ok(a.contains_rational(point))
}
