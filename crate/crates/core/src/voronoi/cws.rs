//! Constant-workspace Voronoi and Delaunay enumeration.
//!
//! A single edge of a cell `C(p)` is found from a ray out of `p` with two
//! passes over the input: the first keeps the bisector `B(p, q*)` that the
//! ray meets first, the second trims `B(p, q*)` by every other bisector down
//! to the part that is nearer to `p`. Cells are walked counterclockwise from
//! a starter edge by aiming the next ray at the upper vertex of the current
//! edge; when an unbounded edge is reached the walk restarts clockwise from
//! the starter's lower vertex.
//!
//! Exact values derived from algebraic cells (ray parameters, bounds along a
//! bisector) are cached in locals next to the cell that describes them.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::Zero;

use super::{CellEdge, SiteEdge, VoronoiEdge};
use crate::error::{Error, Result, Violation};
use crate::geom::kernel::{self, IntPoint, Side};
use crate::geom::{PointSet, Ray};
use crate::num::{Frac, Int, Sign};
use crate::workspace::{Cell, Construction, Handle, Machine, OutputStream};

/// Cell budget for every constant-workspace algorithm in this crate.
pub const CONSTANT_BUDGET: usize = 64;

/// What a walk ray is aimed at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RayTarget {
    /// Through another input site.
    Site(usize),
    /// Through the vertex shared by `B(p, along)` and `B(p, other)`. The
    /// bisector `B(p, along)` is excluded from the first pass, so the ray
    /// continues onto the neighbouring edge.
    Vertex { along: usize, other: usize },
    /// Along an explicit integer-frame direction.
    Direction(IntPoint),
}

/// A ray out of input site `site`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellRay {
    pub site: usize,
    pub target: RayTarget,
}

impl CellRay {
    pub fn through_site(site: usize, k: usize) -> Self {
        CellRay { site, target: RayTarget::Site(k) }
    }

    pub fn through_vertex(site: usize, along: usize, other: usize) -> Self {
        CellRay { site, target: RayTarget::Vertex { along, other } }
    }

    /// Converts a rational ray whose origin is site `site`.
    pub fn from_ray(ps: &PointSet, site: usize, ray: &Ray) -> Result<Self> {
        ps.check_index(site)?;
        if &ray.origin != ps.site(site) {
            return Err(Error::InvalidArgument(format!("ray does not start at site {site}")));
        }
        let l = ray.direction.x.denom().lcm(ray.direction.y.denom());
        let x = ray.direction.x.numer() * (&l / ray.direction.x.denom());
        let y = ray.direction.y.numer() * (&l / ray.direction.y.denom());
        if x.is_zero() && y.is_zero() {
            return Err(Error::InvalidArgument("zero ray direction".into()));
        }
        let dir = IntPoint { x: Int::from_big(x), y: Int::from_big(y) };
        Ok(CellRay { site, target: RayTarget::Direction(dir) })
    }

    pub(crate) fn excluded(&self) -> Option<usize> {
        match self.target {
            RayTarget::Vertex { along, .. } => Some(along),
            _ => None,
        }
    }

    pub(crate) fn cell(&self) -> Cell {
        match self.target {
            RayTarget::Site(k) => Cell::site(k),
            RayTarget::Vertex { along, other } => Cell::Algebraic(Construction::Circumcenter([
                self.site as u32,
                along as u32,
                other as u32,
            ])),
            RayTarget::Direction(_) => Cell::Int(0),
        }
    }

    /// Integer direction of the ray (reads the sites it depends on).
    pub(crate) fn direction(&self, m: &mut Machine) -> Result<IntPoint> {
        let p = m.read(self.site);
        Ok(match &self.target {
            RayTarget::Site(k) => m.read(*k).sub(p),
            RayTarget::Vertex { along, other } => {
                let (q, r) = (m.read(*along), m.read(*other));
                m.steps.tick();
                let (_, t) = kernel::clip_bound(p, q, r).ok_or_else(|| {
                    Error::GeneralPosition(Violation::Collinear(sorted3(self.site, *along, *other)))
                })?;
                kernel::direction_to_param(p, q, &t)
            }
            RayTarget::Direction(d) => d.clone(),
        })
    }
}

fn sorted3(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

fn sorted4(a: usize, b: usize, c: usize, d: usize) -> [usize; 4] {
    let mut t = [a, b, c, d];
    t.sort_unstable();
    t
}

fn vertex_cell(p: usize, q: usize, third: Option<usize>) -> Cell {
    match third {
        Some(k) => Cell::Algebraic(Construction::Circumcenter([p as u32, q as u32, k as u32])),
        None => Cell::NIL,
    }
}

fn vertex_third(c: Cell) -> Option<usize> {
    match c {
        Cell::Algebraic(Construction::Circumcenter([_, _, k])) => Some(k as usize),
        Cell::Input(None) => None,
        other => panic!("cell holds {other:?}, not a vertex"),
    }
}

/// Result of trimming `B(p, q)` by all other bisectors around `p`.
pub(crate) struct Trimmed {
    pub lo: Option<usize>,
    pub hi: Option<usize>,
    pub empty: bool,
}

/// One pass over the input trimming `B(p, q)` to the part nearer to `p`
/// than to any other site. The surviving part is an intersection of half
/// lines, so it stays a single interval described by at most two ends.
pub(crate) fn trim_bisector(m: &mut Machine, p: usize, q: usize) -> Result<Trimmed> {
    let n = m.n();
    let frame @ [c_k, c_lo, c_hi, c_lo_tie, c_hi_tie] = m.frame::<5>()?;
    let (pp, qq) = (m.read(p), m.read(q));
    if pp == qq {
        return Err(Error::GeneralPosition(Violation::Duplicate([p.min(q), p.max(q)])));
    }
    let mut lo_t: Option<Frac> = None;
    let mut hi_t: Option<Frac> = None;
    for k in 0..n {
        m.arena.set(c_k, Cell::Int(k as i64));
        if k == p || k == q {
            continue;
        }
        let r = m.read(k);
        m.steps.tick();
        let Some((side, t)) = kernel::clip_bound(pp, qq, r) else {
            if r == pp || r == qq {
                let other = if r == pp { p } else { q };
                return Err(Error::GeneralPosition(Violation::Duplicate([
                    other.min(k),
                    other.max(k),
                ])));
            }
            return Err(Error::GeneralPosition(Violation::Collinear(sorted3(p, q, k))));
        };
        let (best, c_end, c_tie, tighter) = match side {
            Side::Hi => (&mut hi_t, c_hi, c_hi_tie, Ordering::Less),
            Side::Lo => (&mut lo_t, c_lo, c_lo_tie, Ordering::Greater),
        };
        let ord = best.as_ref().map_or(tighter, |b| t.cmp(b));
        if ord == tighter {
            *best = Some(t);
            m.arena.set(c_end, vertex_cell(p, q, Some(k)));
            m.arena.set(c_tie, Cell::NIL);
        } else if ord == Ordering::Equal {
            m.arena.set(c_tie, Cell::site(k));
        }
    }
    let lo = vertex_third(m.arena.get(c_lo));
    let hi = vertex_third(m.arena.get(c_hi));
    let empty = match (&lo_t, &hi_t) {
        (Some(a), Some(b)) => a >= b,
        _ => false,
    };
    if !empty {
        for (end, tie) in [(lo, c_lo_tie), (hi, c_hi_tie)] {
            if let (Some(a), Some(b)) = (end, m.arena.site(tie)) {
                return Err(Error::GeneralPosition(Violation::Cocircular(sorted4(p, q, a, b))));
            }
        }
    }
    m.free_frame(frame)?;
    Ok(Trimmed { lo, hi, empty })
}

/// Finds the edge of `C(p)` whose closure meets the ray, in two passes
/// over the input with a constant number of cells.
pub fn find_cell_edge(m: &mut Machine, ray: &CellRay) -> Result<CellEdge> {
    let n = m.n();
    let p = ray.site;
    m.input().check_index(p)?;
    let frame @ [c_p, c_target, c_k, c_best, c_tie] = m.frame::<5>()?;
    m.arena.set(c_p, Cell::site(p));
    m.arena.set(c_target, ray.cell());
    let pp = m.read(p);
    let dir = ray.direction(m)?;
    let exclude = ray.excluded();

    let mut best_t: Option<Frac> = None;
    for k in 0..n {
        m.arena.set(c_k, Cell::Int(k as i64));
        if k == p || Some(k) == exclude {
            continue;
        }
        let qk = m.read(k);
        m.steps.tick();
        let Some(t) = kernel::ray_hit(pp, &dir, qk) else {
            continue;
        };
        match best_t.as_ref().map(|b| t.cmp(b)) {
            None | Some(Ordering::Less) => {
                best_t = Some(t);
                m.arena.set(c_best, Cell::site(k));
                m.arena.set(c_tie, Cell::NIL);
            }
            Some(Ordering::Equal) => m.arena.set(c_tie, Cell::site(k)),
            Some(Ordering::Greater) => {}
        }
    }
    if m.arena.site(c_tie).is_some() {
        return Err(Error::DegenerateRay { site: p });
    }
    let q = m.arena.site(c_best).ok_or(Error::RayMissesBoundary { site: p })?;
    let trimmed = trim_bisector(m, p, q)?;
    if trimmed.empty {
        return Err(Error::RayMissesBoundary { site: p });
    }
    m.free_frame(frame)?;
    Ok(CellEdge { p, q, lo: trimmed.lo, hi: trimmed.hi })
}

fn store_edge(m: &mut Machine, cells: [Handle; 3], e: &CellEdge) {
    m.arena.set(cells[0], Cell::site(e.q));
    m.arena.set(cells[1], vertex_cell(e.p, e.q, e.lo));
    m.arena.set(cells[2], vertex_cell(e.p, e.q, e.hi));
}

fn load_edge(m: &Machine, p: usize, cells: [Handle; 3]) -> CellEdge {
    CellEdge {
        p,
        q: m.arena.site(cells[0]).expect("stored edge"),
        lo: vertex_third(m.arena.get(cells[1])),
        hi: vertex_third(m.arena.get(cells[2])),
    }
}

/// Walks every cell and hands each Voronoi edge to `visit` exactly once
/// (from the cell of its lower-indexed site). The visitor runs while the
/// walk is paused and may use the same machine.
pub fn walk_voronoi_edges<'a, F>(m: &mut Machine<'a>, mut visit: F) -> Result<()>
where
    F: FnMut(&mut Machine<'a>, CellEdge) -> Result<()>,
{
    let n = m.n();
    if n < 2 {
        return Ok(());
    }
    let frame @ [c_p, s_q, s_lo, s_hi, e_q, e_lo, e_hi, c_guard] = m.frame::<8>()?;
    let starter = [s_q, s_lo, s_hi];
    let current = [e_q, e_lo, e_hi];
    for p in 0..n {
        m.arena.set(c_p, Cell::site(p));
        let first = if p == 0 { 1 } else { 0 };
        let e0 = find_cell_edge(m, &CellRay::through_site(p, first))?;
        store_edge(m, starter, &e0);
        store_edge(m, current, &e0);
        if p < e0.q {
            visit(m, e0)?;
        }
        let mut closed = false;
        m.arena.set(c_guard, Cell::Int(0));
        // counterclockwise from the starter
        loop {
            let cur = load_edge(m, p, current);
            let Some(r) = cur.hi else { break };
            bump_guard(m, c_guard, p)?;
            let e = find_cell_edge(m, &CellRay::through_vertex(p, cur.q, r))?;
            debug_assert_eq!(e.q, r);
            if e.q == m.arena.site(s_q).expect("starter") {
                closed = true;
                break;
            }
            store_edge(m, current, &e);
            if p < e.q {
                visit(m, e)?;
            }
        }
        if !closed {
            // unbounded cell: clockwise from the starter's lower vertex
            let s = load_edge(m, p, starter);
            store_edge(m, current, &s);
            loop {
                let cur = load_edge(m, p, current);
                let Some(r) = cur.lo else { break };
                bump_guard(m, c_guard, p)?;
                let e = find_cell_edge(m, &CellRay::through_vertex(p, cur.q, r))?;
                debug_assert_eq!(e.q, r);
                store_edge(m, current, &e);
                if p < e.q {
                    visit(m, e)?;
                }
            }
        }
    }
    m.free_frame(frame)
}

fn bump_guard(m: &mut Machine, c_guard: Handle, p: usize) -> Result<()> {
    let g = m.arena.int(c_guard) + 1;
    if g as usize > m.n() {
        // a cell has at most n - 1 edges; more means a predicate bug
        return Err(Error::RayMissesBoundary { site: p });
    }
    m.arena.set(c_guard, Cell::Int(g));
    Ok(())
}

/// Emits every Voronoi edge exactly once.
pub fn enumerate_voronoi_edges(m: &mut Machine, out: &mut OutputStream<VoronoiEdge>) -> Result<()> {
    walk_voronoi_edges(m, |_, e| {
        out.emit(e.canonical());
        Ok(())
    })
}

/// Emits every Delaunay edge `(i, j)`, `i < j`, exactly once.
pub fn enumerate_delaunay_edges(m: &mut Machine, out: &mut OutputStream<SiteEdge>) -> Result<()> {
    walk_voronoi_edges(m, |_, e| {
        out.emit(SiteEdge(e.p, e.q));
        Ok(())
    })
}

/// Given the Delaunay edge `pq`, returns `r` such that `pr` is the next
/// Delaunay edge around `p` in clockwise order (wrapping around).
pub fn clockwise_next_delaunay_edge(m: &mut Machine, p: usize, q: usize) -> Result<usize> {
    let ps = m.input();
    ps.check_index(p)?;
    ps.check_index(q)?;
    if p == q {
        return Err(Error::NotADelaunayEdge { p, q });
    }
    let trimmed = trim_bisector(m, p, q)?;
    if trimmed.empty {
        return Err(Error::NotADelaunayEdge { p, q });
    }
    if let Some(r) = trimmed.lo {
        return Ok(r);
    }
    // pq is a hull edge with every site to its left; the clockwise
    // successor is the other hull neighbour of p
    let frame @ [c_k, c_r] = m.frame::<2>()?;
    let pp = m.read(p);
    let first = if p == 0 { 1 } else { 0 };
    m.arena.set(c_r, Cell::site(first));
    let mut rr = m.read(first);
    for k in 0..m.n() {
        m.arena.set(c_k, Cell::Int(k as i64));
        if k == p {
            continue;
        }
        let kk = m.read(k);
        m.steps.tick();
        if kernel::orient(pp, rr, kk) == Sign::Positive {
            m.arena.set(c_r, Cell::site(k));
            rr = kk;
        }
    }
    let r = m.arena.site(c_r).expect("hull neighbour");
    m.free_frame(frame)?;
    Ok(r)
}
