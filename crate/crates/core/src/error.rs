use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what}: expected length {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("linear form is identically zero")]
    ZeroForm,

    #[error("points span an affine space of dimension {rank}, expected {dim}")]
    DimensionDeficient { dim: usize, rank: usize },

    #[error("need at least {needed} distinct points in dimension {dim}, found {found}")]
    TooFewPoints {
        dim: usize,
        needed: usize,
        found: usize,
    },

    #[error("polytope has {vertices} vertices; a {dim}-simplex has {}", dim + 1)]
    NotSimplex { dim: usize, vertices: usize },

    #[error("interval [{a}, {b}] is empty or degenerate")]
    EmptyInterval { a: String, b: String },

    #[error("point is not strictly interior (facet {facet} evaluates to {value})")]
    NotInterior { facet: usize, value: String },

    #[error("hyperplane {form} is not a simple pole (multiplicity {multiplicity})")]
    NotSimplePole { form: String, multiplicity: u32 },

    #[error("facet form {0} has no linear part")]
    NoLinearPart(String),

    #[error("halfspace description is unbounded")]
    Unbounded,

    #[error("halfspace description has empty interior")]
    EmptyInterior,

    #[error("{what} is only supported for dimension <= {max}, got {dim}")]
    UnsupportedDimension {
        what: &'static str,
        dim: usize,
        max: usize,
    },

    #[error("cone is not pointed or not full rank")]
    NotPointed,

    #[error("weights are not generic: facet normals change between weight vectors")]
    NonGenericWeights,

    #[error("weights must be strictly positive")]
    NonPositiveWeight,

    #[error("the origin is not interior to the weighted Minkowski sum")]
    OriginNotInterior,

    #[error("numerator degree {found} does not balance to {expected}")]
    DegreeMismatch { expected: i64, found: i64 },

    #[error("parts do not form a subdivision: {0}")]
    NotSubdivision(String),

    #[error("configurations do not share an oriented matroid: subset {subset:?}")]
    OrientedMatroidMismatch { subset: Vec<usize> },

    #[error("lattice vector {index} must have first coordinate 1")]
    BadLatticeVector { index: usize },

    #[error("sample needs to be redrawn: {0}")]
    Resample(String),

    #[error("invalid rational {0:?}")]
    ParseRational(String),

    #[error("invalid input: {0}")]
    Input(String),
}
