//! Constant-workspace Euclidean minimum spanning tree.
//!
//! A Delaunay edge `e = pq` belongs to the EMST iff `p` and `q` are not
//! joined by a path of strictly shorter Delaunay edges. That is decided by
//! walking the boundary of the face of `DT_{<e}` that contains `e`: start
//! at `p`, leave along the first shorter edge clockwise after `e`, and at
//! every vertex turn to the next shorter edge clockwise after the one we
//! arrived on. The walk stops the first time `e` is passed. Passing it at
//! `q` means `q` lies on the same boundary, so `e` is not in the tree;
//! passing it at `p` means the boundary closed without meeting `q`.

use std::cmp::Ordering;

use crate::error::{Error, Result, Violation};
use crate::geom::kernel;
use crate::voronoi::{clockwise_next_delaunay_edge, walk_voronoi_edges, SiteEdge};
use crate::workspace::{Cell, Machine, OutputStream};

/// Outcome of one face walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceWalk {
    pub in_emst: bool,
    /// Edges of `DT_{<e}` traversed.
    pub steps: usize,
}

/// Runs the face walk for the Delaunay edge `pq`.
pub fn face_walk(m: &mut Machine, p: usize, q: usize) -> Result<FaceWalk> {
    let n = m.n();
    let ps = m.input();
    ps.check_index(p)?;
    ps.check_index(q)?;
    if p == q {
        return Err(Error::NotADelaunayEdge { p, q });
    }
    let bound = 2 * n;
    // |pq|^2 is kept next to the two cells that determine it
    let frame @ [c_p, c_q, c_u, c_w, c_r, c_steps] = m.frame::<6>()?;
    m.arena.set(c_p, Cell::site(p));
    m.arena.set(c_q, Cell::site(q));
    let (pp, qq) = (m.read(p), m.read(q));
    m.steps.tick();
    let len = kernel::dist2(pp, qq);
    m.arena.set(c_u, Cell::site(p));
    m.arena.set(c_w, Cell::site(q));
    m.arena.set(c_steps, Cell::Int(0));
    loop {
        let u = m.arena.site(c_u).expect("vertex");
        let mut r = m.arena.site(c_w).expect("vertex");
        // rotate clockwise at u to the next edge shorter than e, or to e
        loop {
            r = clockwise_next_delaunay_edge(m, u, r)?;
            m.arena.set(c_r, Cell::site(r));
            if (u == p && r == q) || (u == q && r == p) {
                let steps = m.arena.int(c_steps) as usize;
                m.free_frame(frame)?;
                return Ok(FaceWalk { in_emst: u == p, steps });
            }
            let (uu, rr) = (m.read(u), m.read(r));
            m.steps.tick();
            let d = kernel::dist2(uu, rr);
            match d.cmp(&len) {
                Ordering::Less => break,
                Ordering::Equal => {
                    let a = (p.min(q), p.max(q));
                    let b = (u.min(r), u.max(r));
                    let mut pair = [a, b];
                    pair.sort_unstable();
                    return Err(Error::GeneralPosition(Violation::EqualLength(pair)));
                }
                Ordering::Greater => {}
            }
        }
        let steps = m.arena.int(c_steps) as usize + 1;
        if steps > bound {
            return Err(Error::WalkBoundExceeded { p, q, bound });
        }
        m.arena.set(c_steps, Cell::Int(steps as i64));
        m.arena.set(c_w, Cell::site(u));
        m.arena.set(c_u, Cell::site(r));
    }
}

/// Is the Delaunay edge `pq` an EMST edge?
pub fn is_emst_edge(m: &mut Machine, p: usize, q: usize) -> Result<bool> {
    Ok(face_walk(m, p, q)?.in_emst)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EmstStats {
    /// Face walks run (one per Delaunay edge).
    pub walks: u64,
    pub longest_walk: usize,
}

/// Emits the `n - 1` EMST edges, in the order the Delaunay edges are
/// enumerated (not sorted by length).
pub fn enumerate_emst(m: &mut Machine, out: &mut OutputStream<SiteEdge>) -> Result<EmstStats> {
    let mut stats = EmstStats::default();
    walk_voronoi_edges(m, |m, e| {
        let walk = face_walk(m, e.p, e.q)?;
        stats.walks += 1;
        stats.longest_walk = stats.longest_walk.max(walk.steps);
        if walk.in_emst {
            out.emit(SiteEdge(e.p, e.q));
        }
        Ok(())
    })?;
    Ok(stats)
}
