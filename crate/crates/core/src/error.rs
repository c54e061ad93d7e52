use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol `{0}` is already registered")]
    DuplicateSymbol(String),
    #[error("`{0}` is reserved and cannot be registered")]
    ReservedSymbol(String),
    #[error("`{0}` is not a valid identifier")]
    InvalidSymbolName(String),
    #[error("symbol `{0}` has zero e-polynomial; use the zero class instead")]
    ZeroEPolynomial(String),
    #[error(
        "symbol `{name}` is flagged smooth projective but its e-polynomial has total degree \
         {degree} > 2·{dimension}"
    )]
    DegreeBound {
        name: String,
        degree: u32,
        dimension: u32,
    },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("operands belong to different symbol tables")]
    MixedSymbolTables,
    #[error("class has a negative power of L; the e-polynomial is only defined on K0(Var)")]
    NegativeLefschetzExponent,
    #[error("symbol `{0}` is not smooth projective, so its dual is undefined")]
    NoDual(String),
    #[error("duality index must be 1 or 2, got {0}")]
    DualityIndex(u8),
    #[error("negative power of a non-unit")]
    NonUnitInverse,

    #[error("ray {index} has length {found}, expected ambient dimension {expected}")]
    RayDimension {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("ray {index} is zero")]
    ZeroRay { index: usize },
    #[error("ray {index} {coords:?} is not primitive")]
    NonPrimitiveRay { index: usize, coords: Vec<i64> },
    #[error("rays {first} and {second} coincide")]
    RepeatedRay { first: usize, second: usize },
    #[error("cone {cone:?} refers to ray {index}, which does not exist")]
    RayIndexOutOfRange { cone: Vec<usize>, index: usize },
    #[error("cone {0:?} is not strongly convex")]
    NotStronglyConvex(Vec<usize>),
    #[error("cones {first:?} and {second:?} meet outside a common face")]
    ConeIntersection {
        first: Vec<usize>,
        second: Vec<usize>,
    },
    #[error("ray {0:?} is not a primitive nonzero vector of the ambient lattice")]
    BadSubdivisionRay(Vec<i64>),
    #[error("ray {0:?} lies outside the support of the fan")]
    RayOutsideSupport(Vec<i64>),
    #[error("ray {0:?} is already a ray of the fan")]
    ExistingRay(Vec<i64>),
    #[error("operation requires a simplicial fan; cone {0:?} is not simplicial")]
    NonSimplicial(Vec<usize>),

    #[error("unknown divisor component `{0}`")]
    UnknownComponent(String),
    #[error("duplicate divisor component `{0}`")]
    DuplicateComponent(String),
    #[error("stratum {0:?} is listed twice")]
    DuplicateStratum(Vec<String>),
    #[error("closed stratum {missing:?} is missing but its superset {present:?} is listed")]
    MissingStratum {
        missing: Vec<String>,
        present: Vec<String>,
    },
    #[error("the interior stratum (empty component set) must be given")]
    MissingInterior,
    #[error("stratum {subset:?} meets {count} components in dimension {dim}")]
    StratumTooDeep {
        subset: Vec<String>,
        count: usize,
        dim: usize,
    },
    #[error("open and closed strata disagree at {0:?}")]
    InconsistentStrata(Vec<String>),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
