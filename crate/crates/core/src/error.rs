use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("no integer solution")]
    NoIntegerSolution,
    #[error("generator {0} is not unimodular")]
    NonUnimodularGenerator(String),
    #[error("group order exceeds bound {0}")]
    OrderBoundExceeded(usize),
    #[error("subgroup is not normal; residual action undefined")]
    NonNormalSubgroupForResidualAction,
    #[error("degree {degree} exceeds cap {cap}")]
    DegreeCapExceeded { degree: i32, cap: i32 },
    #[error("map is not equivariant")]
    NonEquivariantMap,
    #[error("sequence is not exact: {0}")]
    NotExactInput(String),
    #[error("module is not Z-free")]
    NotFreeModule,
    #[error("cokernel is not Z-free")]
    NonFreeCokernel,
    #[error("modules carry different Galois data: {0}")]
    MismatchedGaloisData(String),
    #[error("invalid degree {0}")]
    InvalidDegree(i32),
    #[error("frobenius required")]
    MissingFrobenius,
    #[error("frobenius does not generate the quotient by inertia")]
    InvalidFrobenius,
    #[error("acting group is not cyclic on the given generator")]
    NonCyclicAction,
    #[error("torus does not have unipotent reduction")]
    NotUnipotent,
    #[error("coroots are not permuted by the Galois action")]
    CorootsNotStable,
    #[error("action does not preserve relations or is not a homomorphism: {0}")]
    InvalidAction(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("validation error at {path}: {source}")]
    Validation { path: String, source: Box<Error> },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn at(self, path: impl Into<String>) -> Error {
        Error::Validation { path: path.into(), source: Box::new(self) }
    }

    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
        Error::Schema { path: path.into(), message: message.into() }
    }

    /// Input problems map to exit code 1, everything else to 2.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Schema { .. }
                | Error::Validation { .. }
                | Error::NonUnimodularGenerator(_)
                | Error::OrderBoundExceeded(_)
                | Error::NonNormalSubgroupForResidualAction
                | Error::MissingFrobenius
                | Error::InvalidFrobenius
                | Error::NotExactInput(_)
                | Error::MismatchedGaloisData(_)
                | Error::CorootsNotStable
                | Error::InvalidDegree(_)
                | Error::DegreeCapExceeded { .. }
                | Error::NotUnipotent
                | Error::DimensionMismatch(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
