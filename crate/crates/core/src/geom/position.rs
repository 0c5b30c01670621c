//! General-position checks.

use std::cmp::Ordering;

use super::kernel::{self, IntPoint};
use super::PointSet;
use crate::error::{Error, Violation};
use crate::num::{Frac, Sign};
use crate::triangulation::Triangulation;

fn duplicates(ps: &PointSet) -> Result<(), Violation> {
    let mut idx: Vec<usize> = (0..ps.len()).collect();
    idx.sort_by(|&a, &b| {
        let (p, q) = (ps.grid(a), ps.grid(b));
        p.x.cmp(&q.x).then_with(|| p.y.cmp(&q.y)).then(a.cmp(&b))
    });
    for w in idx.windows(2) {
        if ps.grid(w[0]) == ps.grid(w[1]) {
            return Err(Violation::Duplicate([w[0].min(w[1]), w[0].max(w[1])]));
        }
    }
    Ok(())
}

/// Directions folded into the half-open upper half plane so that parallel
/// directions compare equal.
fn folded(v: IntPoint) -> IntPoint {
    if v.y.is_negative() || (v.y.is_zero() && v.x.is_negative()) {
        IntPoint { x: -&v.x, y: -&v.y }
    } else {
        v
    }
}

fn collinear(ps: &PointSet) -> Result<(), Violation> {
    let n = ps.len();
    let mut first: Option<[usize; 3]> = None;
    for i in 0..n {
        let mut dirs: Vec<(IntPoint, usize)> =
            (i + 1..n).map(|j| (folded(ps.grid(j).sub(ps.grid(i))), j)).collect();
        dirs.sort_by(|(u, a), (v, b)| match u.cross(v).sign() {
            Sign::Positive => Ordering::Less,
            Sign::Negative => Ordering::Greater,
            Sign::Zero => a.cmp(b),
        });
        for w in dirs.windows(2) {
            if w[0].0.cross(&w[1].0).is_zero() {
                let mut t = [i, w[0].1, w[1].1];
                t.sort_unstable();
                if first.map_or(true, |f| t < f) {
                    first = Some(t);
                }
            }
        }
    }
    first.map_or(Ok(()), |t| Err(Violation::Collinear(t)))
}

/// Exact full check: no coincident sites, no three collinear, no four
/// cocircular. Cocircularity is tested for every pair by sorting the
/// circumcenters of all later sites along the pair's bisector, so the cost
/// is cubic in `n`.
pub fn check_general_position(ps: &PointSet) -> Result<(), Violation> {
    duplicates(ps)?;
    collinear(ps)?;
    let n = ps.len();
    for i in 0..n {
        for j in i + 1..n {
            let (p, q) = (ps.grid(i), ps.grid(j));
            let mut ts: Vec<(Frac, usize)> = (j + 1..n)
                .map(|k| {
                    let (_, t) = kernel::clip_bound(p, q, ps.grid(k))
                        .expect("collinear triples already excluded");
                    (t, k)
                })
                .collect();
            ts.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
            if let Some(w) = ts.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(Violation::Cocircular([i, j, w[0].1, w[1].1]));
            }
        }
    }
    Ok(())
}

/// Check restricted to the degeneracies that affect the Voronoi diagram of
/// the whole set: coincident sites, collinear triples, and sites lying on
/// the circumcircle of a Delaunay triangle. Runs in `O(n^2 log n)`, so it
/// is usable where the cubic full check is not.
pub fn check_local_general_position(ps: &PointSet) -> Result<(), Violation> {
    duplicates(ps)?;
    collinear(ps)?;
    if ps.len() < 4 {
        return Ok(());
    }
    let all: Vec<usize> = (0..ps.len()).collect();
    let tri = Triangulation::new(ps, &all).map_err(|e| match e {
        Error::GeneralPosition(v) => v,
        other => unreachable!("triangulation failed: {other}"),
    })?;
    for e in tri.edges() {
        if let (Some(l), Some(r)) = (e.left, e.right) {
            let [a, b, c, d] = [e.a, e.b, l, r].map(|v| tri.site(v));
            if kernel::incircle(ps.grid(a), ps.grid(b), ps.grid(c), ps.grid(d)) == Sign::Zero {
                let mut q = [a, b, c, d];
                q.sort_unstable();
                return Err(Violation::Cocircular(q));
            }
        }
    }
    Ok(())
}

/// Pairwise-distinct squared distances over all pairs.
pub fn check_distinct_lengths(ps: &PointSet) -> Result<(), Violation> {
    let n = ps.len();
    let mut lens = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            lens.push((kernel::dist2(ps.grid(i), ps.grid(j)), (i, j)));
        }
    }
    lens.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    match lens.windows(2).find(|w| w[0].0 == w[1].0) {
        Some(w) => Err(Violation::EqualLength([w[0].1, w[1].1])),
        None => Ok(()),
    }
}
