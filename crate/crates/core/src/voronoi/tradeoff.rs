//! Time-space trade-off Voronoi enumeration.
//!
//! With room for `O(s)` cells the input is scanned in batches of `s`
//! consecutive sites. [`batch_find_edges`] answers up to `s` ray queries at
//! once: per batch it builds the diagram of the query sites together with
//! the batch and only inspects Delaunay neighbours in that diagram.
//! [`tradeoff_voronoi`] keeps `s` cell walks in the workspace and advances
//! all of them by one edge per call, then finishes the walks still running
//! when the input is exhausted by trimming the diagram of the remaining
//! sites against every batch.
//!
//! Cell charges (all against the machine's arena):
//!
//! | structure                   | cells                      |
//! |-----------------------------|----------------------------|
//! | walk state of a site in `V` | [`WALK_CELLS`]             |
//! | pending ray query           | [`RAY_CELLS`]              |
//! | small diagram on `m` sites  | `m *` [`DIAGRAM_CELLS_PER_SITE`] |
//! | residual edge               | [`EDGE_CELLS`]             |
//!
//! A run with parameter `s` fits in [`tradeoff_budget`]`(s)` cells.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::cws::{CellRay, Trimmed};
use super::{CellEdge, VoronoiEdge};
use crate::error::{Error, Result, Violation};
use crate::geom::kernel::{self, Side};
use crate::num::Frac;
use crate::triangulation::Triangulation;
use crate::workspace::{Machine, OutputStream, Reservation};

/// Site reference, starter edge (3), current edge (3), phase, two sweep
/// fronts, and the entry in the ordered index over `V`, rounded up.
pub const WALK_CELLS: usize = 12;
/// Ray target, nearest bisector and its tie marker, both ends of the
/// trimmed bisector with their tie markers.
pub const RAY_CELLS: usize = 8;
/// A triangulation on `m` vertices has at most `2m` triangles of three
/// vertex and three neighbour references each, plus a site reference and
/// an incident triangle per vertex: `14m`, rounded up.
pub const DIAGRAM_CELLS_PER_SITE: usize = 16;
/// Both sites, both ends, and a tie marker per end.
pub const EDGE_CELLS: usize = 6;
/// Cells per unit of `s` granted to a trade-off run.
pub const SPACE_CONSTANT: usize = 128;

/// Workspace granted to a trade-off run with parameter `s`.
pub fn tradeoff_budget(s: usize) -> usize {
    SPACE_CONSTANT * s.max(1)
}

/// Declared step cost of building a small diagram on `m` sites.
pub fn small_voronoi_cost(m: usize) -> u64 {
    if m < 2 {
        return m as u64;
    }
    let log = usize::BITS - (m - 1).leading_zeros();
    m as u64 * (1 + log as u64)
}

/// A Voronoi diagram of at most `2s` sites held in the workspace.
#[derive(Debug)]
pub struct SmallDiagram {
    tri: Triangulation,
    cells: Reservation,
}

impl SmallDiagram {
    pub fn sites(&self) -> &[usize] {
        self.tri.sites()
    }

    /// Sites whose cells share an edge with the cell of `site`.
    pub fn neighbors(&self, site: usize) -> impl Iterator<Item = usize> + '_ {
        let local = self.tri.local(site).expect("site belongs to the diagram");
        self.tri.neighbors(local).map(|v| self.tri.site(v))
    }

    pub fn edges(&self) -> impl Iterator<Item = VoronoiEdge> + '_ {
        let site = |v: Option<usize>| v.map(|v| self.tri.site(v));
        self.tri.edges().iter().map(move |e| VoronoiEdge {
            i: self.tri.site(e.a),
            j: self.tri.site(e.b),
            lo: site(e.right),
            hi: site(e.left),
        })
    }

    pub fn release(self, m: &mut Machine) {
        m.arena.release(self.cells);
    }
}

/// Builds the diagram of `sites` (duplicates in the list are merged).
pub fn small_voronoi(m: &mut Machine, sites: &[usize]) -> Result<SmallDiagram> {
    let mut list = sites.to_vec();
    list.sort_unstable();
    list.dedup();
    for &i in &list {
        m.input().check_index(i)?;
    }
    let cells = m.arena.reserve(list.len() * DIAGRAM_CELLS_PER_SITE)?;
    for &i in &list {
        m.read(i);
    }
    m.steps.add(small_voronoi_cost(list.len()));
    match Triangulation::new(m.input(), &list) {
        Ok(tri) => Ok(SmallDiagram { tri, cells }),
        Err(e) => {
            m.arena.release(cells);
            Err(e)
        }
    }
}

/// Closest bisector along a ray, over several batches. A vertex ray ties
/// its excluded bisector with the one it should continue on; the excluded
/// site loses such ties.
struct Nearest {
    along: Option<usize>,
    best: Option<(Frac, usize)>,
    tie: bool,
}

impl Nearest {
    fn offer(&mut self, t: Frac, k: usize) {
        let demoted = |x: usize| Some(x) == self.along;
        let ord = match &self.best {
            None => Ordering::Less,
            Some((bt, bk)) if *bk == k => {
                debug_assert!(t == *bt);
                return;
            }
            Some((bt, bk)) => t.cmp(bt).then(demoted(k).cmp(&demoted(*bk))),
        };
        match ord {
            Ordering::Less => {
                self.best = Some((t, k));
                self.tie = false;
            }
            Ordering::Equal => self.tie = true,
            Ordering::Greater => {}
        }
    }
}

/// Running ends of a bisector being trimmed batch by batch.
#[derive(Default)]
struct Bounds {
    lo: Option<(Frac, usize)>,
    hi: Option<(Frac, usize)>,
    lo_tie: Option<usize>,
    hi_tie: Option<usize>,
}

impl Bounds {
    fn offer(&mut self, side: Side, t: Frac, k: usize) {
        let (end, tie, tighter) = match side {
            Side::Lo => (&mut self.lo, &mut self.lo_tie, Ordering::Greater),
            Side::Hi => (&mut self.hi, &mut self.hi_tie, Ordering::Less),
        };
        let ord = match end {
            None => tighter,
            Some((_, bk)) if *bk == k => return,
            Some((bt, _)) => t.cmp(bt),
        };
        if ord == tighter {
            *end = Some((t, k));
            *tie = None;
        } else if ord == Ordering::Equal {
            *tie = Some(k);
        }
    }

    fn finish(self, p: usize, q: usize) -> Result<Trimmed> {
        let empty = match (&self.lo, &self.hi) {
            (Some((a, _)), Some((b, _))) => a >= b,
            _ => false,
        };
        let lo = self.lo.map(|(_, k)| k);
        let hi = self.hi.map(|(_, k)| k);
        if !empty {
            for (end, tie) in [(lo, self.lo_tie), (hi, self.hi_tie)] {
                if let (Some(a), Some(b)) = (end, tie) {
                    let mut t = [p, q, a, b];
                    t.sort_unstable();
                    return Err(Error::GeneralPosition(Violation::Cocircular(t)));
                }
            }
        }
        Ok(Trimmed { lo, hi, empty })
    }
}

/// Clips `B(p, q)` by the neighbours of `p` in `d`, skipping `q`.
fn clip_by_neighbors(
    m: &mut Machine,
    d: &SmallDiagram,
    p: usize,
    q: usize,
    bounds: &mut Bounds,
) -> Result<()> {
    let (pp, qq) = (m.input().grid(p), m.input().grid(q));
    for r in d.neighbors(p) {
        if r == q {
            continue;
        }
        let rr = m.read(r);
        m.steps.tick();
        let (side, t) = kernel::clip_bound(pp, qq, rr).ok_or_else(|| {
            let mut t = [p, q, r];
            t.sort_unstable();
            Error::GeneralPosition(Violation::Collinear(t))
        })?;
        bounds.offer(side, t, r);
    }
    Ok(())
}

fn batches(n: usize, s: usize) -> impl Iterator<Item = std::ops::Range<usize>> {
    (0..n).step_by(s).map(move |lo| lo..(lo + s).min(n))
}

fn with_batch(base: &[usize], batch: std::ops::Range<usize>) -> Vec<usize> {
    let mut v: Vec<usize> = base.iter().copied().chain(batch).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// For every ray, the edge of the ray site's cell that the ray meets.
/// The rays must start at distinct sites and there may be at most `s` of
/// them. Two passes over the `ceil(n / s)` batches of `s` consecutive
/// sites (the last batch may be smaller).
pub fn batch_find_edges(m: &mut Machine, rays: &[CellRay], s: usize) -> Result<Vec<CellEdge>> {
    let n = m.n();
    if s == 0 || rays.len() > s {
        return Err(Error::InvalidArgument(format!("{} rays with batch size {s}", rays.len())));
    }
    let mut v: Vec<usize> = rays.iter().map(|r| r.site).collect();
    v.sort_unstable();
    if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument(format!("two rays start at site {}", w[0])));
    }
    for &i in &v {
        m.input().check_index(i)?;
    }
    let cells = m.arena.reserve(rays.len() * RAY_CELLS)?;
    let mut dirs = Vec::with_capacity(rays.len());
    for r in rays {
        dirs.push(r.direction(m)?);
    }

    // pass 1: nearest bisector crossed by each ray
    let mut nearest: Vec<Nearest> = rays
        .iter()
        .map(|r| Nearest { along: r.excluded(), best: None, tie: false })
        .collect();
    for batch in batches(n, s) {
        let d = small_voronoi(m, &with_batch(&v, batch))?;
        for (i, ray) in rays.iter().enumerate() {
            let p = m.input().grid(ray.site);
            for k in d.neighbors(ray.site) {
                let kk = m.read(k);
                m.steps.tick();
                if let Some(t) = kernel::ray_hit(p, &dirs[i], kk) {
                    nearest[i].offer(t, k);
                }
            }
        }
        d.release(m);
    }
    let mut targets = Vec::with_capacity(rays.len());
    for (ray, near) in rays.iter().zip(&nearest) {
        let p = ray.site;
        match near.best {
            _ if near.tie => return Err(Error::DegenerateRay { site: p }),
            None => return Err(Error::RayMissesBoundary { site: p }),
            Some((_, q)) if Some(q) == near.along => return Err(Error::DegenerateRay { site: p }),
            Some((_, q)) => targets.push(q),
        }
    }
    drop(nearest);

    // pass 2: trim each nearest bisector to the cell
    let mut bounds: Vec<Bounds> = rays.iter().map(|_| Bounds::default()).collect();
    for batch in batches(n, s) {
        let d = small_voronoi(m, &with_batch(&v, batch))?;
        for (i, ray) in rays.iter().enumerate() {
            clip_by_neighbors(m, &d, ray.site, targets[i], &mut bounds[i])?;
        }
        d.release(m);
    }
    let mut out = Vec::with_capacity(rays.len());
    for ((ray, q), b) in rays.iter().zip(targets).zip(bounds) {
        let p = ray.site;
        let trimmed = b.finish(p, q)?;
        if trimmed.empty {
            return Err(Error::RayMissesBoundary { site: p });
        }
        out.push(CellEdge { p, q, lo: trimmed.lo, hi: trimmed.hi });
    }
    m.arena.release(cells);
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct TradeoffConfig {
    /// Workspace parameter: at most `s` walks at once, batches of `s`.
    pub s: usize,
    /// Stop after this many rounds of the first phase and skip the second
    /// (for inspecting intermediate output).
    pub stop_after_rounds: Option<usize>,
}

impl TradeoffConfig {
    pub fn new(s: usize) -> Self {
        TradeoffConfig { s, stop_after_rounds: None }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TradeoffStats {
    /// Rounds of the first phase (one batched query each).
    pub rounds: usize,
    pub phase1_edges: u64,
    pub phase2_edges: u64,
    /// Sites still walking when the first phase ended.
    pub residual_sites: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Phase {
    Start,
    Ccw,
    Cw,
    Done,
}

/// Walk state of a site in `V`.
#[derive(Debug)]
struct Walk {
    site: usize,
    starter: CellEdge,
    current: CellEdge,
    phase: Phase,
    ccw_front: usize,
    cw_front: usize,
    cells: Reservation,
}

impl Walk {
    fn new(m: &mut Machine, site: usize) -> Result<Self> {
        let cells = m.arena.reserve(WALK_CELLS)?;
        let none = CellEdge { p: site, q: site, lo: None, hi: None };
        Ok(Walk {
            site,
            starter: none,
            current: none,
            phase: Phase::Start,
            ccw_front: site,
            cw_front: site,
            cells,
        })
    }

    fn next_ray(&self) -> Option<CellRay> {
        let p = self.site;
        let cur = &self.current;
        match self.phase {
            Phase::Start => Some(CellRay::through_site(p, if p == 0 { 1 } else { 0 })),
            Phase::Ccw => Some(CellRay::through_vertex(p, cur.q, cur.hi.expect("bounded"))),
            Phase::Cw => Some(CellRay::through_vertex(p, cur.q, cur.lo.expect("bounded"))),
            Phase::Done => None,
        }
    }

    fn record(&mut self, e: CellEdge) {
        self.current = e;
        match self.phase {
            Phase::Start => {
                self.starter = e;
                self.ccw_front = e.q;
                self.cw_front = e.q;
                self.phase = Phase::Ccw;
                self.settle_ccw();
            }
            Phase::Ccw => {
                self.ccw_front = e.q;
                self.settle_ccw();
            }
            Phase::Cw => {
                self.cw_front = e.q;
                if e.lo.is_none() {
                    self.phase = Phase::Done;
                }
            }
            Phase::Done => unreachable!("finished walks get no rays"),
        }
    }

    fn settle_ccw(&mut self) {
        match self.current.hi {
            Some(r) if r == self.starter.q => self.phase = Phase::Done,
            Some(_) => {}
            None if self.starter.lo.is_none() => self.phase = Phase::Done,
            None => {
                self.phase = Phase::Cw;
                self.current = self.starter;
            }
        }
    }

    /// Has this walk already passed the edge shared with site `x`?
    fn swept(&self, m: &mut Machine, x: usize) -> bool {
        match self.phase {
            Phase::Start => false,
            Phase::Done => true,
            Phase::Ccw | Phase::Cw => {
                if x == self.starter.q {
                    return true;
                }
                let ps = m.input();
                let [c, q0, a, b, xx] =
                    [self.site, self.starter.q, self.ccw_front, self.cw_front, x].map(|i| ps.grid(i));
                m.steps.add(2);
                kernel::in_ccw_arc(c, q0, a, xx) || kernel::in_ccw_arc(c, b, q0, xx)
            }
        }
    }
}

/// Emits every Voronoi edge exactly once using `O(s)` cells.
pub fn tradeoff_voronoi(
    m: &mut Machine,
    cfg: &TradeoffConfig,
    out: &mut OutputStream<VoronoiEdge>,
) -> Result<TradeoffStats> {
    let n = m.n();
    let s = cfg.s;
    if s == 0 || s > n.max(1) {
        return Err(Error::InvalidArgument(format!("s = {s} outside 1..={n}")));
    }
    let mut stats = TradeoffStats::default();
    if n < 2 {
        return Ok(stats);
    }

    // phase 1: s walks advanced one edge per round
    let mut v: BTreeMap<usize, Walk> = BTreeMap::new();
    let mut watermark = 0;
    while watermark < s {
        v.insert(watermark, Walk::new(m, watermark)?);
        watermark += 1;
    }
    loop {
        let rays: Vec<CellRay> = v.values().filter_map(Walk::next_ray).collect();
        let found = batch_find_edges(m, &rays, s)?;
        for e in found {
            let j = e.q;
            let report = if j >= watermark {
                true
            } else if let Some(w) = v.get(&j) {
                !w.swept(m, e.p)
            } else {
                false
            };
            if report {
                out.emit(e.canonical());
                stats.phase1_edges += 1;
            }
            v.get_mut(&e.p).expect("walking site").record(e);
        }
        stats.rounds += 1;
        if cfg.stop_after_rounds == Some(stats.rounds) {
            for (_, w) in std::mem::take(&mut v) {
                m.arena.release(w.cells);
            }
            return Ok(stats);
        }
        let done: Vec<usize> =
            v.values().filter(|w| w.phase == Phase::Done).map(|w| w.site).collect();
        for site in done {
            let w = v.remove(&site).expect("finished site");
            m.arena.release(w.cells);
            if watermark < n {
                v.insert(watermark, Walk::new(m, watermark)?);
                watermark += 1;
            }
        }
        if v.len() < s {
            break;
        }
    }

    // phase 2: the residual diagram, trimmed against every batch
    let residual: Vec<usize> = v.keys().copied().collect();
    stats.residual_sites = residual.len();
    let d = small_voronoi(m, &residual)?;
    let candidates: Vec<(usize, usize)> = d.edges().map(|e| (e.i, e.j)).collect();
    d.release(m);
    let cells = m.arena.reserve(candidates.len() * EDGE_CELLS)?;
    let mut bounds: Vec<Bounds> = candidates.iter().map(|_| Bounds::default()).collect();
    for batch in batches(n, s) {
        let d = small_voronoi(m, &with_batch(&residual, batch))?;
        for (&(a, b), bd) in candidates.iter().zip(bounds.iter_mut()) {
            clip_by_neighbors(m, &d, a, b, bd)?;
        }
        d.release(m);
    }
    for ((a, b), bd) in candidates.into_iter().zip(bounds) {
        let trimmed = bd.finish(a, b)?;
        if trimmed.empty || v[&a].swept(m, b) || v[&b].swept(m, a) {
            continue;
        }
        out.emit(VoronoiEdge { i: a, j: b, lo: trimmed.lo, hi: trimmed.hi });
        stats.phase2_edges += 1;
    }
    m.arena.release(cells);
    for (_, w) in v {
        m.arena.release(w.cells);
    }
    Ok(stats)
}

/// Rays of the standard cell walk starters (through the lowest-indexed
/// other site), for the given sites.
pub fn starter_rays(sites: &[usize]) -> Vec<CellRay> {
    sites.iter().map(|&p| CellRay::through_site(p, if p == 0 { 1 } else { 0 })).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::PointSet;
    use crate::voronoi::{enumerate_voronoi_edges, find_cell_edge, CONSTANT_BUDGET};
    use crate::workspace::Collector;

    fn sorted(mut v: Vec<VoronoiEdge>) -> Vec<VoronoiEdge> {
        v.sort();
        v
    }

    fn tradeoff(ps: &PointSet, s: usize) -> Vec<VoronoiEdge> {
        let mut m = Machine::new(ps, tradeoff_budget(s));
        let (col, mut out) = Collector::new();
        tradeoff_voronoi(&mut m, &TradeoffConfig::new(s), &mut out).unwrap();
        assert_eq!(m.arena.live(), 0);
        drop(out);
        sorted(col.into_inner())
    }

    fn cws(ps: &PointSet) -> Vec<VoronoiEdge> {
        let mut m = Machine::new(ps, CONSTANT_BUDGET);
        let (col, mut out) = Collector::new();
        enumerate_voronoi_edges(&mut m, &mut out).unwrap();
        drop(out);
        sorted(col.into_inner())
    }

    fn pentagon() -> PointSet {
        PointSet::from_ints(&[(0, 0), (10, 1), (11, 10), (1, 11), (5, 5), (20, 3), (-7, 9)])
    }

    #[test]
    fn declared_cost() {
        assert_eq!(small_voronoi_cost(1), 1);
        assert_eq!(small_voronoi_cost(2), 4);
        assert_eq!(small_voronoi_cost(8), 32);
        assert_eq!(small_voronoi_cost(9), 45);
    }

    #[test]
    fn small_diagram_examples() {
        let ps = PointSet::from_ints(&[(0, 0), (4, 0), (0, 4)]);
        let mut m = Machine::new(&ps, 64);
        let d = small_voronoi(&mut m, &[0, 1, 2]).unwrap();
        assert_eq!(m.arena.live(), 3 * DIAGRAM_CELLS_PER_SITE);
        let edges: Vec<_> = d.edges().collect();
        assert_eq!(edges.len(), 3);
        assert!(edges.iter().all(|e| e.lo.is_none() != e.hi.is_none()));
        d.release(&mut m);
        let d = small_voronoi(&mut m, &[0, 2]).unwrap();
        assert_eq!(d.edges().collect::<Vec<_>>(), vec![VoronoiEdge { i: 0, j: 2, lo: None, hi: None }]);
        d.release(&mut m);
        assert_eq!(m.arena.live(), 0);
        let mut tight = Machine::new(&ps, 2 * DIAGRAM_CELLS_PER_SITE);
        assert!(matches!(small_voronoi(&mut tight, &[0, 1, 2]), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn batch_matches_single_queries() {
        let ps = pentagon();
        let all: Vec<usize> = (0..ps.len()).collect();
        for s in [1, 2, 3, 7] {
            for chunk in all.chunks(s) {
                let rays = starter_rays(chunk);
                let mut m = Machine::new(&ps, tradeoff_budget(s));
                let got = batch_find_edges(&mut m, &rays, s).unwrap();
                for (ray, e) in rays.iter().zip(got) {
                    let mut m1 = Machine::new(&ps, CONSTANT_BUDGET);
                    assert_eq!(find_cell_edge(&mut m1, ray).unwrap(), e);
                }
            }
        }
    }

    #[test]
    fn vertex_rays_continue_past_their_bisector() {
        let ps = pentagon();
        let mut m = Machine::new(&ps, CONSTANT_BUDGET);
        let e = find_cell_edge(&mut m, &CellRay::through_site(4, 0)).unwrap();
        let r = e.hi.unwrap();
        let ray = CellRay::through_vertex(4, e.q, r);
        let single = find_cell_edge(&mut m, &ray).unwrap();
        assert_eq!(single.q, r);
        for s in 1..=7 {
            let mut mb = Machine::new(&ps, tradeoff_budget(s));
            assert_eq!(batch_find_edges(&mut mb, &[ray.clone()], s).unwrap(), vec![single]);
        }
    }

    #[test]
    fn right_triangle_any_s() {
        let ps = PointSet::from_ints(&[(0, 0), (4, 0), (0, 4)]);
        let expect = cws(&ps);
        assert_eq!(expect.len(), 3);
        for s in 1..=3 {
            assert_eq!(tradeoff(&ps, s), expect, "s = {s}");
        }
    }

    #[test]
    fn matches_constant_workspace_for_every_s() {
        let ps = pentagon();
        let expect = cws(&ps);
        for s in 1..=ps.len() {
            assert_eq!(tradeoff(&ps, s), expect, "s = {s}");
        }
    }

    #[test]
    fn snapshot_is_partial_output() {
        let ps = pentagon();
        let expect = cws(&ps);
        let mut m = Machine::new(&ps, tradeoff_budget(2));
        let (col, mut out) = Collector::new();
        let cfg = TradeoffConfig { s: 2, stop_after_rounds: Some(2) };
        let stats = tradeoff_voronoi(&mut m, &cfg, &mut out).unwrap();
        assert_eq!(stats.rounds, 2);
        drop(out);
        let got = col.into_inner();
        assert!(!got.is_empty() && got.len() < expect.len());
        assert!(got.iter().all(|e| expect.contains(e)));
        assert_eq!(m.arena.live(), 0);
    }

    #[test]
    fn rejects_bad_parameters() {
        let ps = pentagon();
        let mut m = Machine::new(&ps, tradeoff_budget(8));
        let mut out = OutputStream::counting();
        assert!(matches!(
            tradeoff_voronoi(&mut m, &TradeoffConfig::new(8), &mut out),
            Err(Error::InvalidArgument(_))
        ));
        let rays = starter_rays(&[0, 1]);
        assert!(batch_find_edges(&mut m, &rays, 1).is_err());
        let twice = vec![rays[0].clone(), rays[0].clone()];
        assert!(batch_find_edges(&mut m, &twice, 2).is_err());
    }
}
