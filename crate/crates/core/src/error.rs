use thiserror::Error;

use crate::polygon::Chord;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polygon must have at least {min} vertices, got {n}")]
    PolygonTooSmall { n: usize, min: usize },
    #[error("chord endpoints coincide modulo {n}: {i} and {j}")]
    DegenerateChord { n: usize, i: i64, j: i64 },
    #[error("chords come from polygons of different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("{0} is a boundary segment, not a diagonal")]
    NotADiagonal(Chord),
    #[error("diagonal {0} is listed twice")]
    DuplicateDiagonal(Chord),
    #[error("diagonals {0} and {1} cross")]
    Crossing(Chord, Chord),
    #[error("a triangulation of the {n}-gon has {expected} diagonals, got {found}")]
    Cardinality { n: usize, expected: usize, found: usize },
    #[error("{0} is not a diagonal of the triangulation")]
    NotInTriangulation(Chord),
    #[error("{0} is a diagonal of the triangulation")]
    InTriangulation(Chord),
    #[error("{0} is a boundary position")]
    BoundaryPosition(Chord),
    #[error("the zero module has no shape")]
    ZeroModule,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("vertex {0} is not in the quiver")]
    UnknownVertex(String),
    #[error("entry at {i}-{j} is not positive")]
    NonPositiveEntry { i: usize, j: usize },
    #[error("quiddity sequence does not close up: {0}")]
    NotClosing(String),
    #[error("frieze has no entry for {0}")]
    MissingEntry(Chord),
    #[error("frieze violates the diamond rule at {0} position(s)")]
    FriezeRule(usize),
    #[error("frieze entry at {0} is not 1 although it is a diagonal of the triangulation")]
    InconsistentFrieze(Chord),
    #[error("ray {ray} is not used by region {region}")]
    RayNotApplicable { ray: String, region: String },
    #[error("construction left projective {0} unvisited")]
    Construction(Chord),
}

pub type Result<T> = std::result::Result<T, Error>;
