use thiserror::Error;

use crate::polytope::Point3;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix rows have inconsistent lengths")]
    Ragged,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degenerate bilinear form")]
    Degenerate,
    #[error("lattice is not even: diagonal entry {0} is odd")]
    NotEven(i64),
    #[error("form is not negative definite")]
    NotNegativeDefinite,

    #[error("points do not span three dimensions")]
    DegenerateHull,
    #[error("origin is not in the interior of the polytope")]
    OriginNotInterior,
    #[error("polytope has interior lattice points besides the origin: {0:?}")]
    ExtraInteriorPoints(Vec<Point3>),
    #[error("polytope is not reflexive: facet {normal:?} at lattice distance {offset} gives dual vertex {dual_vertex}")]
    NotReflexive {
        normal: Point3,
        offset: i64,
        dual_vertex: String,
    },
    #[error("not a face of this polytope")]
    NotAFace,

    #[error("divisor index {0} out of range")]
    BadIndex(usize),
    #[error("one-simplices span only rank {0}")]
    RankDeficient(usize),
    #[error("dependent divisor set {0:?} is not linearly independent")]
    SingularDependentSet(Vec<usize>),
    #[error("vector sets differ: {0}")]
    SetMismatch(String),
    #[error("intersection formulas need rk L0 = 0, got {0}")]
    NonzeroL0(usize),

    #[error("cannot parse lattice expression {0:?}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no embedding found for {0}")]
    NoEmbedding(String),
    #[error("matrix is not unimodular (det {0})")]
    NotUnimodular(String),
}
