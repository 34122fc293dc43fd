use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong between reading a fan and integrating its class.
///
/// The first group are input problems (the caller handed us a bad fan or a bad
/// option); [`Error::Internal`], [`Error::DegeneratePresentation`] and
/// [`Error::InconsistentFanData`] mean that a contract between two stages was
/// broken.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not simplicial: {0}")]
    NotSimplicial(String),

    #[error("over-wide matrix: {rows} rows but {cols} columns")]
    OverWideMatrix { rows: usize, cols: usize },

    #[error("matrix not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("ambient dimension must be at least 1")]
    ZeroDimension,

    #[error("ray not primitive: ray {index} has coordinate gcd {gcd}")]
    RayNotPrimitive { index: usize, gcd: String },

    #[error("ray {index} is the zero vector")]
    ZeroRay { index: usize },

    #[error("ray {index} has {found} coordinates, expected {expected}")]
    RayWrongLength {
        index: usize,
        found: usize,
        expected: usize,
    },

    #[error("duplicate ray: rays {first} and {second} coincide")]
    DuplicateRay { first: usize, second: usize },

    #[error(
        "maximal cone wrong dimension: cone {index} has {found} distinct rays, expected {expected}"
    )]
    MaxConeWrongDimension {
        index: usize,
        found: usize,
        expected: usize,
    },

    #[error("maximal cone {cone} refers to ray {ray}, but the fan has only {rays} rays")]
    RayIndexOutOfRange {
        cone: usize,
        ray: usize,
        rays: usize,
    },

    #[error("duplicate maximal cone: cones {first} and {second} coincide")]
    DuplicateMaxCone { first: usize, second: usize },

    #[error("ray {index} is not contained in any maximal cone")]
    UnusedRay { index: usize },

    #[error("fan has no maximal cones")]
    NoMaxCones,

    #[error("fan fails completeness check: wall {wall:?} lies in {count} maximal cone(s)")]
    NotComplete { wall: Vec<usize>, count: usize },

    #[error("fan not complete: top graded piece of the Chow ring has dimension {0}")]
    TopDegreeNotOneDimensional(usize),

    #[error("cone {0:?} is not a cone of the fan")]
    UnknownCone(Vec<usize>),

    #[error("elimination cone {0:?} is not a maximal cone of the fan")]
    BadEliminationCone(Vec<usize>),

    #[error("unsupported weights: {0}")]
    UnsupportedWeights(String),

    #[error("degenerate presentation: fan not complete or reduction bug")]
    DegeneratePresentation,

    #[error("inconsistent fan data: {0}")]
    InconsistentFanData(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by the input fan or options rather than by a
    /// broken invariant inside the library.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::Internal(_) | Error::DegeneratePresentation | Error::InconsistentFanData(_)
        )
    }
}
