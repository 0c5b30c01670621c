//! Limited-workspace Voronoi diagrams, Delaunay graphs, Euclidean minimum
//! spanning trees and convex hulls on exact rational input.
//!
//! Every algorithm runs on a [`workspace::Machine`]: the input is read-only,
//! read-write memory is a budget of cells, and results go to a write-only
//! [`workspace::OutputStream`]. Predicates are evaluated exactly.

pub mod emst;
pub mod error;
pub mod generate;
pub mod geom;
pub mod hull;
pub mod io;
pub mod num;
pub mod oracle;
pub mod run;
pub mod triangulation;
pub mod voronoi;
pub mod workspace;

pub use error::{Error, Result, Violation};
pub use geom::{Point, PointSet, Site};
