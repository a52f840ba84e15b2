use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("distance matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("distance d({x},{y}) is negative")]
    NegativeEntry { x: usize, y: usize },
    #[error("distance d({x},{y}) is not a valid number in the chosen backend")]
    InvalidValue { x: usize, y: usize },
    #[error("diagonal distance d({x},{x}) is not zero")]
    NonzeroDiagonal { x: usize },
    #[error("distinct points {x} and {y} are at distance zero")]
    ZeroOffDiagonal { x: usize, y: usize },
    #[error("triangle inequality fails: d({x},{z}) > d({x},{y}) + d({y},{z})")]
    TriangleViolation { x: usize, y: usize, z: usize },
    #[error("maps do not share source and target spaces")]
    MismatchedSpaces,
    #[error("assignment has {got} entries but the source has {expected} points")]
    WrongArity { got: usize, expected: usize },
    #[error("point {point} is out of range for a space with {len} points")]
    PointOutOfRange { point: usize, len: usize },
    #[error("map is not short: d(f({x}),f({y})) > d({x},{y})")]
    NotShort { x: usize, y: usize },
    #[error("map does not restrict to the identity on the subset (point {point})")]
    NotARetraction { point: usize },
    #[error("subdigraph is not contained in the ambient digraph")]
    NotASubdigraph,
    #[error("search exceeded the node budget of {budget}")]
    SearchBudgetExceeded { budget: u64 },
    #[error("interval is empty")]
    EmptyInterval,
    #[error("interval is unbounded above; a degree bound is required")]
    DegreeBoundRequired,
    #[error("intervals are not comparable in the interval order")]
    NotComparable,
    #[error("degree {degree} is not materialized (maximum {max})")]
    DegreeNotMaterialized { degree: usize, max: usize },
    #[error("matrices do not form a chain map in degree {degree}")]
    NotAChainMap { degree: usize },
    #[error("coefficients {0} are not supported for this query")]
    UnsupportedCoefficients(String),
    #[error("digraph queries require integer interval endpoints")]
    NonIntegerQueryOnDigraph,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("space carries no Euclidean coordinates")]
    NotEuclidean,
    #[error("vector does not lie in the spanned subspace")]
    NotInSubspace,
    #[error("cannot parse {0}")]
    Syntax(String),
}
