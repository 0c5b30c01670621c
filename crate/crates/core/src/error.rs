use std::fmt;

use thiserror::Error;

/// A general-position violation, with the offending site indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Duplicate([usize; 2]),
    Collinear([usize; 3]),
    Cocircular([usize; 4]),
    EqualLength([(usize, usize); 2]),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Duplicate([a, b]) => write!(f, "coincident sites {a} and {b}"),
            Violation::Collinear([a, b, c]) => write!(f, "collinear sites {a}, {b}, {c}"),
            Violation::Cocircular([a, b, c, d]) => {
                write!(f, "cocircular sites {a}, {b}, {c}, {d}")
            }
            Violation::EqualLength([(a, b), (c, d)]) => {
                write!(f, "equal lengths |{a}{b}| = |{c}{d}|")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("workspace budget of {budget} cells exceeded")]
    BudgetExceeded { budget: usize },
    #[error("cell handle freed twice or never allocated")]
    DoubleFree,
    #[error("general position violated: {0}")]
    GeneralPosition(Violation),
    #[error("ray from site {site} does not reach the cell boundary")]
    RayMissesBoundary { site: usize },
    #[error("ray from site {site} passes through a Voronoi vertex")]
    DegenerateRay { site: usize },
    #[error("{p}-{q} is not a Delaunay edge")]
    NotADelaunayEdge { p: usize, q: usize },
    #[error("coincident points {0} and {1}")]
    DuplicatePoints(usize, usize),
    #[error("sites {0} and {1} coincide")]
    DuplicateSites(usize, usize),
    #[error("incircle base points are collinear")]
    CollinearBase,
    #[error("face walk for edge {p}-{q} exceeded {bound} steps")]
    WalkBoundExceeded { p: usize, q: usize, bound: usize },
    #[error("equal squared lengths: {0:?} and {1:?}")]
    TieDetected((usize, usize), (usize, usize)),
    #[error("site index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("verification mismatch: {0}")]
    VerificationMismatch(String),
    #[error("general-position guard gave up after {0} redraws")]
    GuardExhausted(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
