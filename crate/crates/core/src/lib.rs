//! Exact computations behind moduli of affine stable toric varieties:
//! lattice normal forms, polyhedral cones and quasifans, GIT fans, weight
//! monoids, quasifan algebras and stable-toric configurations.

pub mod decimal;
pub mod exact_lattice;
pub mod gitfan;
pub mod monoids;
pub mod polyhedral;
pub mod quasifan_algebra;
pub mod stable_toric;
pub mod vector;

pub use exact_lattice::{FiniteAbelianGroup, IntMatrix, LatticeError};
pub use gitfan::{GitFan, GitFanError, Supports, WeightData};
pub use monoids::{AffineMonoid, LemmaTwoData, MonoidError};
pub use polyhedral::{Cone, PolyhedralError, Quasifan};
pub use quasifan_algebra::{AlgebraError, GradedElement, Product, TruncatedQuasifanAlgebra};
pub use stable_toric::{AutGroupInput, ExampleReport, StvConfig, StvError, SymbolicFiber};
pub use vector::{ivec, IntVector};
