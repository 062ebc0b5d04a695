use thiserror::Error;

/// Which adjoint of a connection (or which component of a map pair) an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => f.write_str("left"),
            Side::Right => f.write_str("right"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("index {index} out of range for a carrier of size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("map has length {found}, expected {expected}")]
    MapLength { expected: usize, found: usize },
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("relation is not transitive: `{0}` <= `{1}` <= `{2}` but not `{0}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("no {kind} exists for the requested subset")]
    NoBound { kind: &'static str },
    #[error("{what} has {size} elements, exceeding the limit of {limit}")]
    CapacityExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("{side} map is not monotone: {a} <= {b} but images are not ordered")]
    NotMonotone { side: Side, a: usize, b: usize },
    #[error("adjointness fails at source {a}, target {b}: left(a) <= b is {left_holds}, a <= right(b) is {right_holds}")]
    AdjointnessViolated {
        a: usize,
        b: usize,
        left_holds: bool,
        right_holds: bool,
    },
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(&'static str),
    #[error("connection is not a reflection (interior differs from identity at {0})")]
    NotReflection(usize),
    #[error("connection is not a coreflection (closure differs from identity at {0})")]
    NotCoreflection(usize),
    #[error("order is not a complete lattice: subset {subset:?} has no {kind}")]
    NotComplete { subset: Vec<usize>, kind: &'static str },
    #[error("order is not a poset: {0} and {1} are distinct but equivalent")]
    NotPoset(usize, usize),
    #[error("square does not commute: {equation} fails at element {element}")]
    SquareNotCommuting {
        equation: &'static str,
        element: usize,
    },
    #[error("fundamental condition fails at target instance {instance}, source type {typ}")]
    FundamentalConditionViolated { instance: usize, typ: usize },
    #[error("concept maps are not adjoint at ({a}, {b})")]
    NotAdjoint { a: usize, b: usize },
    #[error("instance {0} is not preserved by the left map")]
    InstanceNotPreserved(usize),
    #[error("type {0} is not preserved by the right map")]
    TypeNotPreserved(usize),
    #[error("concept lattice is not {0}-dense")]
    NotDense(&'static str),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
