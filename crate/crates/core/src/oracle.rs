//! Full-memory reference constructions. None of these run on a
//! [`Machine`](crate::workspace::Machine); they exist to check the
//! limited-workspace algorithms.

use std::cmp::Ordering;

use num_rational::BigRational;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::error::{Error, Result, Violation};
use crate::geom::kernel::{self, IntPoint, Side};
use crate::geom::{check_local_general_position, Point, PointSet};
use crate::num::{Frac, Sign};
use crate::voronoi::{EdgeEnd, EdgeRecord, SiteEdge, VoronoiEdge};

/// The complete Voronoi diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleDiagram {
    pub n: usize,
    /// Distinct vertices, sorted.
    pub vertices: Vec<Point>,
    /// Edges sorted by `(i, j)`.
    pub edges: Vec<VoronoiEdge>,
    /// `records[e]` is `edges[e]` with exact geometry.
    pub records: Vec<EdgeRecord>,
    /// For every site, indices into `edges` in counterclockwise order.
    pub cells: Vec<Vec<usize>>,
}

/// Clips `B(i, j)` by every other site. `None` if nothing is left.
fn clip_pair(ps: &PointSet, i: usize, j: usize) -> Result<Option<VoronoiEdge>> {
    let (p, q) = (ps.grid(i), ps.grid(j));
    let mut lo: Option<(Frac, usize)> = None;
    let mut hi: Option<(Frac, usize)> = None;
    let mut ties: [Option<usize>; 2] = [None, None];
    for k in 0..ps.len() {
        if k == i || k == j {
            continue;
        }
        let (side, t) = kernel::clip_bound(p, q, ps.grid(k)).ok_or_else(|| {
            let mut t = [i, j, k];
            t.sort_unstable();
            Error::GeneralPosition(Violation::Collinear(t))
        })?;
        let (slot, tie, tighter) = match side {
            Side::Lo => (&mut lo, &mut ties[0], Ordering::Greater),
            Side::Hi => (&mut hi, &mut ties[1], Ordering::Less),
        };
        let ord = slot.as_ref().map_or(tighter, |(b, _)| t.cmp(b));
        if ord == tighter {
            *slot = Some((t, k));
            *tie = None;
        } else if ord == Ordering::Equal {
            *tie = Some(k);
        }
        if let (Some((a, _)), Some((b, _))) = (&lo, &hi) {
            if a >= b {
                return Ok(None);
            }
        }
    }
    for (end, tie) in [(&lo, ties[0]), (&hi, ties[1])] {
        if let (Some((_, a)), Some(b)) = (end, tie) {
            let mut t = [i, j, *a, b];
            t.sort_unstable();
            return Err(Error::GeneralPosition(Violation::Cocircular(t)));
        }
    }
    Ok(Some(VoronoiEdge { i, j, lo: lo.map(|x| x.1), hi: hi.map(|x| x.1) }))
}

/// Angular order of directions, starting at the positive x axis.
fn angle_cmp(u: &IntPoint, v: &IntPoint) -> Ordering {
    let upper = |w: &IntPoint| w.y.is_positive() || (w.y.is_zero() && w.x.is_positive());
    match (upper(u), upper(v)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => match u.cross(v).sign() {
            Sign::Positive => Ordering::Less,
            Sign::Negative => Ordering::Greater,
            Sign::Zero => Ordering::Equal,
        },
    }
}

/// Builds the diagram by clipping every bisector against all other sites
/// (cubic time, pairs processed in parallel).
pub fn oracle_voronoi(ps: &PointSet) -> Result<OracleDiagram> {
    check_local_general_position(ps).map_err(Error::GeneralPosition)?;
    let n = ps.len();
    let per_site: Vec<Vec<VoronoiEdge>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n).filter_map(|j| clip_pair(ps, i, j).transpose()).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let edges: Vec<VoronoiEdge> = per_site.into_iter().flatten().collect();
    let records: Vec<EdgeRecord> = edges.iter().map(|e| e.resolve(ps)).collect();
    let mut vertices: Vec<Point> = records
        .iter()
        .flat_map(|r| [&r.a, &r.b])
        .filter_map(|end| match end {
            EdgeEnd::Vertex(v) => Some(v.clone()),
            EdgeEnd::Toward(_) => None,
        })
        .collect();
    vertices.sort();
    vertices.dedup();
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, e) in edges.iter().enumerate() {
        cells[e.i].push(k);
        cells[e.j].push(k);
    }
    for (p, cell) in cells.iter_mut().enumerate() {
        let dir = |k: &usize| {
            let e = &edges[*k];
            let other = if e.i == p { e.j } else { e.i };
            ps.grid(other).sub(ps.grid(p))
        };
        cell.sort_by(|a, b| angle_cmp(&dir(a), &dir(b)));
    }
    Ok(OracleDiagram { n, vertices, edges, records, cells })
}

impl OracleDiagram {
    /// `V - E + n = 1` (the unbounded edges meet at one point at infinity).
    /// Holds whenever the sites are not all collinear.
    pub fn euler_holds(&self) -> bool {
        self.vertices.len() + self.n == self.edges.len() + 1
    }

    /// Checks, with rational arithmetic independent of the integer kernel,
    /// that one sample point inside every edge is equidistant from its two
    /// sites and strictly farther from all others.
    pub fn audit(&self, ps: &PointSet) -> std::result::Result<(), String> {
        let two = BigRational::from_integer(2.into());
        for r in &self.records {
            let (pi, pj) = (ps.site(r.i), ps.site(r.j));
            let x = match (&r.a, &r.b) {
                (EdgeEnd::Vertex(a), EdgeEnd::Vertex(b)) => {
                    Point::new((&a.x + &b.x) / &two, (&a.y + &b.y) / &two)
                }
                (EdgeEnd::Vertex(v), EdgeEnd::Toward(d)) | (EdgeEnd::Toward(d), EdgeEnd::Vertex(v)) => {
                    Point::new(&v.x + &d.x, &v.y + &d.y)
                }
                (EdgeEnd::Toward(_), EdgeEnd::Toward(_)) => {
                    Point::new((&pi.x + &pj.x) / &two, (&pi.y + &pj.y) / &two)
                }
            };
            let d = x.dist2(pi);
            if x.dist2(pj) != d {
                return Err(format!("{r}: sample {x} not equidistant"));
            }
            for (k, s) in ps.sites().iter().enumerate() {
                if k != r.i && k != r.j && x.dist2(s) <= d {
                    return Err(format!("{r}: sample {x} not nearer to its sites than to {k}"));
                }
            }
        }
        Ok(())
    }

    /// The counterclockwise cycle of neighbours around site `p`.
    pub fn cell_neighbors(&self, p: usize) -> Vec<usize> {
        self.cells[p]
            .iter()
            .map(|&k| {
                let e = &self.edges[k];
                if e.i == p {
                    e.j
                } else {
                    e.i
                }
            })
            .collect()
    }
}

/// Delaunay edges `(i, j)`, `i < j`, sorted: the pairs with a nonempty
/// Voronoi edge.
pub fn oracle_delaunay(ps: &PointSet) -> Result<Vec<SiteEdge>> {
    Ok(oracle_voronoi(ps)?.edges.iter().map(|e| SiteEdge(e.i, e.j)).collect())
}

/// Kruskal over all pairs. Equal squared lengths are rejected.
pub fn oracle_emst(ps: &PointSet) -> Result<Vec<SiteEdge>> {
    let n = ps.len();
    let mut pairs: Vec<(crate::num::Int, usize, usize)> = Vec::with_capacity(n * n / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((kernel::dist2(ps.grid(i), ps.grid(j)), i, j));
        }
    }
    pairs.par_sort_unstable();
    if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::TieDetected((w[0].1, w[0].2), (w[1].1, w[1].2)));
    }
    let mut uf = UnionFind::<usize>::new(n);
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    for (_, i, j) in pairs {
        if uf.union(i, j) {
            tree.push(SiteEdge(i, j));
            if tree.len() + 1 == n {
                break;
            }
        }
    }
    tree.sort_unstable();
    Ok(tree)
}

/// Strict convex hull by the monotone chain: vertex indices in
/// counterclockwise order from the lexicographically smallest site.
pub fn oracle_hull(ps: &PointSet) -> Result<Vec<usize>> {
    let mut idx: Vec<usize> = (0..ps.len()).collect();
    idx.sort_by(|&a, &b| {
        let (p, q) = (ps.site(a), ps.site(b));
        (&p.x, &p.y).cmp(&(&q.x, &q.y))
    });
    if let Some(w) = idx.windows(2).find(|w| ps.site(w[0]) == ps.site(w[1])) {
        return Err(Error::DuplicatePoints(w[0].min(w[1]), w[0].max(w[1])));
    }
    if idx.len() < 3 {
        return Ok(idx);
    }
    let turn = |a: usize, b: usize, c: usize| kernel::orient(ps.grid(a), ps.grid(b), ps.grid(c));
    let chain = |order: &mut dyn Iterator<Item = usize>| {
        let mut h: Vec<usize> = Vec::new();
        for k in order {
            while h.len() >= 2 && turn(h[h.len() - 2], h[h.len() - 1], k) != Sign::Positive {
                h.pop();
            }
            h.push(k);
        }
        h.pop();
        h
    };
    let mut hull = chain(&mut idx.iter().copied());
    hull.extend(chain(&mut idx.iter().rev().copied()));
    Ok(hull)
}
