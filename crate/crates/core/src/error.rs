use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("image list is not a permutation of 0..{degree}")]
    InvalidPermutation { degree: usize },

    #[error("degree must be positive")]
    ZeroDegree,

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("point set must be nonempty")]
    EmptyPointSet,

    #[error("element is not contained in the group")]
    NotInGroup,

    #[error("argument is not a subgroup of the group")]
    NotSubgroup,

    #[error("subgroup must be proper")]
    NotProper,

    #[error("normal subgroup must be nontrivial")]
    TrivialSubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("scale limit: {what} requires {required} but the limit is {limit}")]
    ScaleLimit {
        what: &'static str,
        required: String,
        limit: u64,
    },

    #[error("set is not invariant under the group")]
    NotInvariant,

    #[error("action is not transitive")]
    NotTransitive,

    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfCap {
        what: &'static str,
        value: usize,
        range: &'static str,
    },

    #[error("edge {{{u}, {v}}} is malformed: {reason}")]
    MalformedEdge {
        u: usize,
        v: usize,
        reason: &'static str,
    },

    #[error("{{{u}, {v}}} is not an edge")]
    NotEdge { u: usize, v: usize },

    #[error("generator {index} is not an automorphism of the graph")]
    NotAutomorphism { index: usize },

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph is not regular")]
    Irregular,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("unsupported field order {0}")]
    UnsupportedField(u64),

    #[error("double coset HaH is not closed under inversion; the coset graph would be directed")]
    DirectedCosetGraph,

    #[error("connector lies in the subgroup")]
    ConnectorInSubgroup,

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },

    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn scale(what: &'static str, required: impl ToString, limit: u64) -> Self {
        Error::ScaleLimit {
            what,
            required: required.to_string(),
            limit,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn is_scale_limit(&self) -> bool {
        matches!(self, Error::ScaleLimit { .. })
    }
}
