//! Stable-toric weight-cone configurations over an ambient variety, their
//! automorphism groups, and symbolic fibers of the example family.

mod aut;
mod classify;
mod example;
mod fiber;

use num_bigint::BigInt;
use thiserror::Error;

use crate::decimal;
use crate::exact_lattice::LatticeError;
use crate::gitfan::GitFanError;
use crate::monoids::MonoidError;
use crate::polyhedral::PolyhedralError;
use crate::vector::IntVector;

pub use aut::{aut_group, default_nonzero_image_chars, AutGroupInput, PREIMAGE_DEGREE_CAP};
pub use classify::{classify_stv_configs, StvConfig, DEFAULT_CHAMBER_CAP};
pub use example::{verify_example, ChartReport, ExampleReport, PointReport};
pub use fiber::{check_finite_fiber, FiberGenerator, FiberVariable, Role, SymbolicFiber};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StvError {
    #[error("{chambers} chambers exceed the cap of {cap}")]
    ChamberCapExceeded { chambers: usize, cap: usize },
    #[error("automorphism group has free rank {free_rank}")]
    InfiniteAutomorphismGroup { free_rank: usize },
    #[error("exponent {n_exponent} is not annihilated by the group exponent {exponent}")]
    ExponentNotAnnihilating { n_exponent: BigInt, exponent: BigInt },
    #[error("no nonnegative preimage of {} within one component", decimal::vector_key(.chi))]
    PreimageNotFound { chi: IntVector },
    #[error("invalid automorphism-group input: {0}")]
    InvalidAutGroupInput(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unsupported fiber shape: {0}")]
    UnsupportedFiberShape(String),
    #[error("invalid fiber: {0}")]
    InvalidFiber(String),
    #[error("example parameter m must be positive")]
    InvalidExampleParameter,
    #[error(transparent)]
    GitFan(#[from] GitFanError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Polyhedral(#[from] PolyhedralError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
