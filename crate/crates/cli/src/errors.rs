use serde_json::{json, Value};
use stv_core::decimal::vector_key;
use stv_core::{AlgebraError, GitFanError, LatticeError, MonoidError, PolyhedralError, StvError};

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Schema(String),
    Domain(DomainError),
}

/// A failed construction: the innermost error variant and what witnesses it.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainError {
    pub error: String,
    pub message: String,
    pub witness: Value,
}

impl DomainError {
    fn new(error: &str, message: impl ToString, witness: Value) -> Self {
        DomainError {
            error: error.to_string(),
            message: message.to_string(),
            witness,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": self.error, "message": self.message, "witness": self.witness })
    }
}

fn cone_json(c: &stv_core::Cone) -> Value {
    serde_json::to_value(c).expect("cones serialize")
}

impl From<PolyhedralError> for DomainError {
    fn from(e: PolyhedralError) -> Self {
        let witness = match &e {
            PolyhedralError::DimensionMismatch { expected, got } => json!({ "expected": expected, "got": got }),
            PolyhedralError::NotAQuasifan { left, right, intersection } => json!({
                "left": cone_json(left),
                "right": cone_json(right),
                "intersection": cone_json(intersection),
            }),
        };
        let name = match &e {
            PolyhedralError::DimensionMismatch { .. } => "DimensionMismatch",
            PolyhedralError::NotAQuasifan { .. } => "NotAQuasifan",
        };
        DomainError::new(name, &e, witness)
    }
}

impl From<LatticeError> for DomainError {
    fn from(e: LatticeError) -> Self {
        let name = match &e {
            LatticeError::EntryCount { .. } => "EntryCount",
            LatticeError::RaggedRows { .. } => "RaggedRows",
            LatticeError::Dimension(_) => "DimensionMismatch",
            LatticeError::InvalidInvariantFactors(_) => "InvalidInvariantFactors",
        };
        DomainError::new(name, &e, Value::Null)
    }
}

impl From<GitFanError> for DomainError {
    fn from(e: GitFanError) -> Self {
        match e {
            GitFanError::Polyhedral(p) => p.into(),
            GitFanError::InvalidWeightData(_) => DomainError::new("InvalidWeightData", &e, Value::Null),
            GitFanError::NoMaximalOrbitCone => DomainError::new("NoMaximalOrbitCone", &e, Value::Null),
            GitFanError::CharacterOutsideSupport { ref chi } => {
                DomainError::new("CharacterOutsideSupport", &e, json!({ "chi": vector_key(chi) }))
            }
        }
    }
}

impl From<MonoidError> for DomainError {
    fn from(e: MonoidError) -> Self {
        match e {
            MonoidError::Polyhedral(p) => p.into(),
            MonoidError::NotPointed => DomainError::new("NotPointed", &e, Value::Null),
            MonoidError::NoGenerators => DomainError::new("NoGenerators", &e, Value::Null),
            MonoidError::UnsupportedWeightCone(_) => DomainError::new("UnsupportedWeightCone", &e, Value::Null),
            MonoidError::CharacterOutsideWeightCone { ref chi } => {
                DomainError::new("CharacterOutsideWeightCone", &e, json!({ "chi": vector_key(chi) }))
            }
            MonoidError::ExponentSearchExhausted { ref chi, cap } => DomainError::new(
                "ExponentSearchExhausted",
                &e,
                json!({ "chi": vector_key(chi), "cap": cap }),
            ),
            MonoidError::FiberDecompositionFailed { ref chi, j } => DomainError::new(
                "FiberDecompositionFailed",
                &e,
                json!({ "chi": vector_key(chi), "j": j }),
            ),
        }
    }
}

impl From<AlgebraError> for DomainError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::NotInBasis(ref v) => DomainError::new("NotInBasis", &e, json!({ "chi": vector_key(v) })),
            AlgebraError::ZeroBoxBound => DomainError::new("ZeroBoxBound", &e, Value::Null),
            AlgebraError::BoxTooLarge { bound, dim } => {
                DomainError::new("BoxTooLarge", &e, json!({ "bound": bound, "dim": dim }))
            }
            AlgebraError::OutOfBox(ref v) => DomainError::new("OutOfBox", &e, json!({ "chi": vector_key(v) })),
        }
    }
}

impl From<StvError> for DomainError {
    fn from(e: StvError) -> Self {
        match e {
            StvError::GitFan(x) => x.into(),
            StvError::Monoid(x) => x.into(),
            StvError::Polyhedral(x) => x.into(),
            StvError::Lattice(x) => x.into(),
            StvError::ChamberCapExceeded { chambers, cap } => {
                DomainError::new("ChamberCapExceeded", &e, json!({ "chambers": chambers, "cap": cap }))
            }
            StvError::InfiniteAutomorphismGroup { free_rank } => {
                DomainError::new("InfiniteAutomorphismGroup", &e, json!({ "free_rank": free_rank }))
            }
            StvError::ExponentNotAnnihilating { ref n_exponent, ref exponent } => DomainError::new(
                "ExponentNotAnnihilating",
                &e,
                json!({ "N": n_exponent.to_string(), "exponent": exponent.to_string() }),
            ),
            StvError::PreimageNotFound { ref chi } => {
                DomainError::new("PreimageNotFound", &e, json!({ "chi": vector_key(chi) }))
            }
            StvError::InvalidAutGroupInput(_) => DomainError::new("InvalidAutGroupInput", &e, Value::Null),
            StvError::InvalidConfig(_) => DomainError::new("InvalidConfig", &e, Value::Null),
            StvError::UnsupportedFiberShape(_) => DomainError::new("UnsupportedFiberShape", &e, Value::Null),
            StvError::InvalidFiber(_) => DomainError::new("InvalidFiber", &e, Value::Null),
            StvError::InvalidExampleParameter => DomainError::new("InvalidExampleParameter", &e, Value::Null),
        }
    }
}

macro_rules! into_cli {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.into())
            }
        })*
    };
}

into_cli!(PolyhedralError, LatticeError, GitFanError, MonoidError, AlgebraError, StvError);

impl From<DomainError> for CliError {
    fn from(e: DomainError) -> Self {
        CliError::Domain(e)
    }
}
