//! Voronoi edges and their exact resolution, plus the limited-workspace
//! algorithms that enumerate them.

mod cws;
pub mod tradeoff;

use std::fmt;

use crate::geom::kernel::IntPoint;
use crate::geom::{Point, PointSet};

pub use cws::{
    clockwise_next_delaunay_edge, enumerate_delaunay_edges, enumerate_voronoi_edges,
    find_cell_edge, walk_voronoi_edges, CellRay, RayTarget, CONSTANT_BUDGET,
};

/// A Voronoi edge on the bisector of sites `i < j`.
///
/// Positions on the bisector are measured along `rot(p_j - p_i)` (a quarter
/// turn counterclockwise). `lo` and `hi` name the third site of the vertex
/// at the lower and upper end; `None` means the edge is unbounded there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VoronoiEdge {
    pub i: usize,
    pub j: usize,
    pub lo: Option<usize>,
    pub hi: Option<usize>,
}

/// An edge of the cell of `p`, on the bisector `B(p, q)`, in the frame of
/// `p` (measured along `rot(q - p)`, so `hi` is the counterclockwise end).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CellEdge {
    pub p: usize,
    pub q: usize,
    pub lo: Option<usize>,
    pub hi: Option<usize>,
}

impl CellEdge {
    pub fn canonical(&self) -> VoronoiEdge {
        if self.p < self.q {
            VoronoiEdge { i: self.p, j: self.q, lo: self.lo, hi: self.hi }
        } else {
            VoronoiEdge { i: self.q, j: self.p, lo: self.hi, hi: self.lo }
        }
    }
}

/// One end of a resolved edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeEnd {
    Vertex(Point),
    /// Unbounded; the edge runs off in this (normalized) direction.
    Toward(Point),
}

/// A Voronoi edge with exact rational geometry. `a` is the lower end,
/// `b` the upper end.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRecord {
    pub i: usize,
    pub j: usize,
    pub a: EdgeEnd,
    pub b: EdgeEnd,
}

impl VoronoiEdge {
    pub fn resolve(&self, ps: &PointSet) -> EdgeRecord {
        let up: IntPoint = ps.grid(self.j).sub(ps.grid(self.i)).rot();
        let down = IntPoint { x: -&up.x, y: -&up.y };
        let end = |third: Option<usize>, dir: &IntPoint| match third {
            Some(k) => EdgeEnd::Vertex(ps.circumcenter(self.i, self.j, k)),
            None => EdgeEnd::Toward(ps.direction_from_frame(dir)),
        };
        EdgeRecord { i: self.i, j: self.j, a: end(self.lo, &down), b: end(self.hi, &up) }
    }
}

impl fmt::Display for EdgeEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeEnd::Vertex(p) => write!(f, "{} {}", p.x, p.y),
            EdgeEnd::Toward(d) => write!(f, "*{} {}", d.x, d.y),
        }
    }
}

impl fmt::Display for EdgeRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V {} {} {} {}", self.i, self.j, self.a, self.b)
    }
}

/// An undirected graph edge between two sites (Delaunay, EMST or hull),
/// printed as `D i j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SiteEdge(pub usize, pub usize);

impl SiteEdge {
    /// The same edge with the smaller index first.
    pub fn sorted(self) -> SiteEdge {
        SiteEdge(self.0.min(self.1), self.0.max(self.1))
    }
}

impl fmt::Display for SiteEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D {} {}", self.0, self.1)
    }
}
