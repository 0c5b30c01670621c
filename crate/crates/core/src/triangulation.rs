//! Incremental Delaunay triangulation (Bowyer-Watson with an infinite
//! vertex) in exact integer arithmetic.
//!
//! Sites are inserted in lexicographic order and located by a visibility
//! walk from the most recently created triangle. Ties in the incircle test
//! are resolved as "not in conflict", which keeps the construction valid for
//! subsets that contain cocircular quadruples.

use crate::error::{Error, Result, Violation};
use crate::geom::kernel::{self, IntPoint};
use crate::geom::PointSet;
use crate::num::Sign;

const INF: u32 = u32::MAX;
const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Tri {
    v: [u32; 3],
    n: [u32; 3],
    alive: bool,
}

impl Tri {
    fn inf_slot(&self) -> Option<usize> {
        self.v.iter().position(|&x| x == INF)
    }
}

/// Delaunay triangulation of a subset of a [`PointSet`].
#[derive(Clone, Debug)]
pub struct Triangulation {
    /// Global site index of every local vertex, ascending.
    sites: Vec<usize>,
    /// Local adjacency lists.
    adj: Vec<Vec<u32>>,
    /// Finite edges `(a, b)` with local `a < b`, plus the third vertex of
    /// the triangle on the left of `a -> b` and on the right.
    edges: Vec<TriEdge>,
    triangles: Vec<[u32; 3]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriEdge {
    pub a: usize,
    pub b: usize,
    pub left: Option<usize>,
    pub right: Option<usize>,
}

struct Builder<'a> {
    pts: Vec<&'a IntPoint>,
    tris: Vec<Tri>,
    free: Vec<u32>,
    last: u32,
}

impl<'a> Builder<'a> {
    fn p(&self, v: u32) -> &IntPoint {
        self.pts[v as usize]
    }

    fn push(&mut self, t: Tri) -> u32 {
        if let Some(slot) = self.free.pop() {
            self.tris[slot as usize] = t;
            slot
        } else {
            self.tris.push(t);
            (self.tris.len() - 1) as u32
        }
    }

    fn conflicts(&self, t: u32, x: u32) -> bool {
        let tri = &self.tris[t as usize];
        let xp = self.p(x);
        match tri.inf_slot() {
            Some(k) => {
                let a = self.p(tri.v[(k + 1) % 3]);
                let b = self.p(tri.v[(k + 2) % 3]);
                match kernel::orient(a, b, xp) {
                    Sign::Positive => true,
                    Sign::Negative => false,
                    // on the hull line: conflict only strictly inside the segment
                    Sign::Zero => {
                        let ab = b.sub(a);
                        let ax = xp.sub(a);
                        ax.dot(&ab).is_positive() && ax.dot(&ab) < ab.norm2()
                    }
                }
            }
            None => {
                let [a, b, c] = tri.v;
                kernel::incircle(self.p(a), self.p(b), self.p(c), xp) == Sign::Positive
            }
        }
    }

    fn locate(&self, x: u32) -> u32 {
        let mut t = self.last;
        if let Some(k) = self.tris[t as usize].inf_slot() {
            t = self.tris[t as usize].n[k];
        }
        let xp = self.p(x);
        let mut off = 0usize;
        'walk: loop {
            let tri = &self.tris[t as usize];
            if tri.inf_slot().is_some() {
                return t;
            }
            off = (off + 1) % 3;
            for k in 0..3 {
                let i = (k + off) % 3;
                let a = self.p(tri.v[(i + 1) % 3]);
                let b = self.p(tri.v[(i + 2) % 3]);
                if kernel::orient(a, b, xp) == Sign::Negative {
                    t = tri.n[i];
                    continue 'walk;
                }
            }
            return t;
        }
    }

    fn insert(&mut self, x: u32) {
        let seed = self.locate(x);
        debug_assert!(self.conflicts(seed, x));
        let mut cavity = vec![seed];
        let mut in_cavity = std::collections::HashSet::new();
        in_cavity.insert(seed);
        let mut boundary: Vec<(u32, u32, u32)> = Vec::new();
        let mut i = 0;
        while i < cavity.len() {
            let t = cavity[i];
            i += 1;
            for k in 0..3 {
                let nb = self.tris[t as usize].n[k];
                if in_cavity.contains(&nb) {
                    continue;
                }
                if self.conflicts(nb, x) {
                    in_cavity.insert(nb);
                    cavity.push(nb);
                } else {
                    let v = self.tris[t as usize].v;
                    boundary.push((v[(k + 1) % 3], v[(k + 2) % 3], nb));
                }
            }
        }

        for &t in &cavity {
            self.tris[t as usize].alive = false;
            self.free.push(t);
        }
        let mut by_start = std::collections::HashMap::with_capacity(boundary.len());
        let mut by_end = std::collections::HashMap::with_capacity(boundary.len());
        let mut created = Vec::with_capacity(boundary.len());
        for &(a, b, nb) in &boundary {
            let id = self.push(Tri { v: [a, b, x], n: [NONE, NONE, nb], alive: true });
            let outer = &mut self.tris[nb as usize];
            for k in 0..3 {
                if outer.v[(k + 1) % 3] == b && outer.v[(k + 2) % 3] == a {
                    outer.n[k] = id;
                }
            }
            by_start.insert(a, id);
            by_end.insert(b, id);
            created.push(id);
        }
        for &id in &created {
            let [a, b, _] = self.tris[id as usize].v;
            self.tris[id as usize].n[0] = by_start[&b];
            self.tris[id as usize].n[1] = by_end[&a];
        }
        self.last = created[0];
    }
}

impl Triangulation {
    /// Triangulates the given distinct sites. No three may be collinear.
    pub fn new(points: &PointSet, sites: &[usize]) -> Result<Self> {
        let mut sites = sites.to_vec();
        sites.sort_unstable();
        sites.dedup();
        let m = sites.len();
        let mut order: Vec<u32> = (0..m as u32).collect();
        order.sort_by(|&a, &b| {
            let (pa, pb) = (points.grid(sites[a as usize]), points.grid(sites[b as usize]));
            pa.x.cmp(&pb.x).then_with(|| pa.y.cmp(&pb.y))
        });
        for w in order.windows(2) {
            if points.grid(sites[w[0] as usize]) == points.grid(sites[w[1] as usize]) {
                let (a, b) = (sites[w[0] as usize], sites[w[1] as usize]);
                return Err(Error::GeneralPosition(Violation::Duplicate([a.min(b), a.max(b)])));
            }
        }
        let mut adj = vec![Vec::new(); m];
        if m < 3 {
            let mut edges = Vec::new();
            if m == 2 {
                adj[0].push(1);
                adj[1].push(0);
                edges.push(TriEdge { a: 0, b: 1, left: None, right: None });
            }
            return Ok(Triangulation { sites, adj, edges, triangles: Vec::new() });
        }

        let pts: Vec<&IntPoint> = sites.iter().map(|&s| points.grid(s)).collect();
        let mut b = Builder { pts, tris: Vec::with_capacity(2 * m + 4), free: Vec::new(), last: 0 };
        let (v0, v1, v2) = (order[0], order[1], order[2]);
        let (a, c) = match kernel::orient(b.p(v0), b.p(v1), b.p(v2)) {
            Sign::Positive => (v1, v2),
            Sign::Negative => (v2, v1),
            Sign::Zero => {
                let mut t = [sites[v0 as usize], sites[v1 as usize], sites[v2 as usize]];
                t.sort_unstable();
                return Err(Error::GeneralPosition(Violation::Collinear(t)));
            }
        };
        // finite (v0, a, c) plus ghosts across each of its edges
        b.tris.push(Tri { v: [v0, a, c], n: [2, 3, 1], alive: true });
        b.tris.push(Tri { v: [a, v0, INF], n: [3, 2, 0], alive: true });
        b.tris.push(Tri { v: [c, a, INF], n: [1, 3, 0], alive: true });
        b.tris.push(Tri { v: [v0, c, INF], n: [2, 1, 0], alive: true });
        for &x in &order[3..] {
            b.insert(x);
        }

        let mut edges = Vec::new();
        let mut triangles = Vec::new();
        let mut left_of = std::collections::HashMap::new();
        for t in b.tris.iter().filter(|t| t.alive) {
            if t.inf_slot().is_none() {
                triangles.push(t.v);
            }
            for k in 0..3 {
                let (p, q, r) = (t.v[k], t.v[(k + 1) % 3], t.v[(k + 2) % 3]);
                if p == INF || q == INF {
                    continue;
                }
                adj[p as usize].push(q);
                left_of.insert((p, q), r);
            }
        }
        for (&(p, q), &r) in &left_of {
            if p < q {
                let right = left_of[&(q, p)];
                let opt = |v: u32| (v != INF).then_some(v as usize);
                edges.push(TriEdge { a: p as usize, b: q as usize, left: opt(r), right: opt(right) });
            }
        }
        edges.sort_unstable_by_key(|e| (e.a, e.b));
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        Ok(Triangulation { sites, adj, edges, triangles })
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    /// Global indices of the vertices, ascending.
    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn site(&self, local: usize) -> usize {
        self.sites[local]
    }

    pub fn local(&self, global: usize) -> Option<usize> {
        self.sites.binary_search(&global).ok()
    }

    pub fn neighbors(&self, local: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[local].iter().map(|&v| v as usize)
    }

    pub fn degree(&self, local: usize) -> usize {
        self.adj[local].len()
    }

    /// Finite edges in local indices.
    pub fn edges(&self) -> &[TriEdge] {
        &self.edges
    }

    /// Finite triangles in local indices, counterclockwise.
    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn square_with_center() {
        let ps = PointSet::from_ints(&[(0, 0), (10, 1), (11, 10), (1, 11), (5, 5)]);
        let t = Triangulation::new(&ps, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(t.triangles().len(), 4);
        assert_eq!(t.edges().len(), 8);
        assert_eq!(t.degree(4), 4);
    }

    #[test]
    fn two_and_one_sites() {
        let ps = PointSet::from_ints(&[(0, 0), (2, 0)]);
        let t = Triangulation::new(&ps, &[0, 1]).unwrap();
        assert_eq!(t.edges(), &[TriEdge { a: 0, b: 1, left: None, right: None }]);
        let t = Triangulation::new(&ps, &[1]).unwrap();
        assert!(t.edges().is_empty());
    }

    #[test]
    fn collinear_start_is_reported() {
        let ps = PointSet::from_ints(&[(0, 0), (1, 1), (2, 2), (5, 0)]);
        assert!(matches!(
            Triangulation::new(&ps, &[0, 1, 2, 3]),
            Err(Error::GeneralPosition(Violation::Collinear([0, 1, 2])))
        ));
    }

    #[test]
    fn random_sets_satisfy_empty_circle_and_euler() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [3usize, 4, 10, 60, 200] {
            let coords: Vec<(i64, i64)> =
                (0..n).map(|_| (rng.gen_range(0..1000), rng.gen_range(0..1000))).collect();
            let ps = PointSet::from_ints(&coords);
            if crate::geom::check_general_position(&ps).is_err() {
                continue;
            }
            let all: Vec<usize> = (0..n).collect();
            let t = Triangulation::new(&ps, &all).unwrap();
            for tri in t.triangles() {
                let [a, b, c] = tri.map(|v| ps.grid(v as usize));
                assert_eq!(kernel::orient(a, b, c), Sign::Positive);
                for d in 0..n {
                    assert_ne!(kernel::incircle(a, b, c, ps.grid(d)), Sign::Positive);
                }
            }
            // V - E + F = 2 counting the outer face
            let hull = t.edges().iter().filter(|e| e.left.is_none() || e.right.is_none()).count();
            assert_eq!(n as i64 - t.edges().len() as i64 + t.triangles().len() as i64 + 1, 2);
            assert_eq!(t.edges().len(), 3 * n - 3 - hull);
        }
    }
}
