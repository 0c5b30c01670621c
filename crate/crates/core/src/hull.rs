//! Gift-wrapping convex hull in constant workspace.

use crate::error::{Error, Result};
use crate::geom::kernel::{self, IntPoint};
use crate::num::Sign;
use crate::voronoi::SiteEdge;
use crate::workspace::{Cell, Machine, OutputStream};

fn lex_less(a: &IntPoint, b: &IntPoint) -> bool {
    (&a.x, &a.y) < (&b.x, &b.y)
}

/// Emits the hull edges `(u, v)` in counterclockwise order, starting at the
/// lexicographically smallest site. Sites in the relative interior of a
/// hull edge are not hull vertices. Coincident sites are rejected by a
/// pairwise scan first, which stays within the quadratic time bound.
pub fn gift_wrap_hull(m: &mut Machine, out: &mut OutputStream<SiteEdge>) -> Result<()> {
    let n = m.n();
    if n < 2 {
        return Ok(());
    }
    let frame @ [c_start, c_cur, c_next, c_k] = m.frame::<4>()?;

    for i in 0..n {
        m.arena.set(c_cur, Cell::site(i));
        for j in i + 1..n {
            m.arena.set(c_k, Cell::Int(j as i64));
            m.steps.tick();
            if m.read(i) == m.read(j) {
                return Err(Error::DuplicatePoints(i, j));
            }
        }
    }
    m.arena.set(c_start, Cell::site(0));
    for k in 1..n {
        m.arena.set(c_k, Cell::Int(k as i64));
        let s = m.arena.site(c_start).expect("start");
        let (a, b) = (m.read(k), m.read(s));
        m.steps.tick();
        if lex_less(a, b) {
            m.arena.set(c_start, Cell::site(k));
        }
    }
    let start = m.arena.site(c_start).expect("start");
    m.arena.set(c_cur, Cell::site(start));
    loop {
        let cur = m.arena.site(c_cur).expect("current");
        let pc = m.read(cur);
        m.arena.set(c_next, Cell::site(if cur == 0 { 1 } else { 0 }));
        for k in 0..n {
            m.arena.set(c_k, Cell::Int(k as i64));
            let nx = m.arena.site(c_next).expect("candidate");
            if k == cur || k == nx {
                continue;
            }
            let (pn, pk) = (m.read(nx), m.read(k));
            m.steps.tick();
            // keep the candidate with every site on its left; among
            // collinear ones the farthest
            let better = match kernel::orient(pc, pn, pk) {
                Sign::Negative => true,
                Sign::Zero => {
                    m.steps.tick();
                    kernel::dist2(pc, pk) > kernel::dist2(pc, pn)
                }
                Sign::Positive => false,
            };
            if better {
                m.arena.set(c_next, Cell::site(k));
            }
        }
        let nx = m.arena.site(c_next).expect("candidate");
        out.emit(SiteEdge(cur, nx));
        if nx == start {
            break;
        }
        m.arena.set(c_cur, Cell::site(nx));
    }
    m.free_frame(frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::PointSet;
    use crate::voronoi::CONSTANT_BUDGET;
    use crate::workspace::Collector;

    fn hull(coords: &[(i64, i64)]) -> Result<Vec<SiteEdge>> {
        let ps = PointSet::from_ints(coords);
        let mut m = Machine::new(&ps, CONSTANT_BUDGET);
        let (col, mut out) = Collector::new();
        gift_wrap_hull(&mut m, &mut out)?;
        assert_eq!(m.arena.live(), 0);
        drop(out);
        Ok(col.into_inner())
    }

    #[test]
    fn triangle() {
        assert_eq!(
            hull(&[(0, 4), (4, 0), (0, 0)]).unwrap(),
            vec![SiteEdge(2, 1), SiteEdge(1, 0), SiteEdge(0, 2)]
        );
    }

    #[test]
    fn interior_and_boundary_points_are_skipped() {
        let h = hull(&[(0, 0), (4, 0), (0, 4), (1, 1), (2, 0), (0, 2)]).unwrap();
        assert_eq!(h, vec![SiteEdge(0, 1), SiteEdge(1, 2), SiteEdge(2, 0)]);
    }

    #[test]
    fn small_inputs() {
        assert!(hull(&[(3, 3)]).unwrap().is_empty());
        assert_eq!(hull(&[(3, 3), (1, 5)]).unwrap(), vec![SiteEdge(1, 0), SiteEdge(0, 1)]);
        assert_eq!(
            hull(&[(0, 0), (2, 2), (1, 1)]).unwrap(),
            vec![SiteEdge(0, 1), SiteEdge(1, 0)]
        );
    }

    #[test]
    fn duplicates_are_rejected() {
        assert!(matches!(hull(&[(0, 0), (4, 0), (0, 0)]), Err(Error::DuplicatePoints(0, 2))));
        assert!(matches!(
            hull(&[(0, 0), (4, 0), (0, 4), (4, 0)]),
            Err(Error::DuplicatePoints(1, 3))
        ));
        assert!(matches!(
            hull(&[(1, 1), (0, 0), (4, 0), (0, 4), (1, 1)]),
            Err(Error::DuplicatePoints(0, 4))
        ));
    }
}
