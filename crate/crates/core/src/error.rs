use alloc::boxed::Box;
use alloc::string::String;

use crate::geometry::Point;
use crate::lattice::LatticePoint;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degenerate pair: the two points coincide")]
    DegeneratePair,
    #[error("identical lines: the two centers coincide")]
    IdenticalLines,
    #[error("duplicate point {0}")]
    DuplicatePoint(Box<Point>),
    #[error("arrangement has no lines")]
    EmptyArrangement,
    #[error("duplicate center {0}")]
    DuplicateCenter(Box<Point>),
    #[error("colours must be given for all lines or for none")]
    MixedColouring,
    #[error("uncoloured input where a colouring is required")]
    Uncoloured,
    #[error("point {0} lies on no line of the arrangement")]
    NotOnArrangement(Box<Point>),
    #[error("not a linear face: {0}")]
    NotLinearFace(String),
    #[error("subdivision is not semiuniform")]
    NotSemiuniform,
    #[error("subdivision is not linear")]
    NotLinear,
    #[error("invalid subdivision: {0}")]
    InvalidSubdivision(String),
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("no ordinary line guaranteed: the three points are tropically collinear")]
    NoOrdinaryLineGuaranteed,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("overlap colour conflict at edge {0}-{1}")]
    OverlapColourConflict(LatticePoint, LatticePoint),
    #[error("missing length for interior edge {0}-{1}")]
    MissingEdgeLength(LatticePoint, LatticePoint),
    #[error("not an exact metric: {0}")]
    NotExact(String),
    #[error("inconsistent placement: {0}")]
    InconsistentPlacement(String),
    #[error("inadmissible tuple ({0}, {1}, {2}, {3}) for dimension {4}")]
    InadmissibleTuple(usize, usize, usize, usize, usize),
    #[error("construction failed validation: {0}")]
    ConstructionInvalid(String),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("zero linear function")]
    ZeroFunction,
    #[error("invariant violated: {0}")]
    Internal(String),
}
