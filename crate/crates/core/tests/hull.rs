mod common;

use std::collections::BTreeSet;

use common::instance;
use limws::geom::{orientation, Orientation};
use limws::hull::gift_wrap_hull;
use limws::oracle::oracle_hull;
use limws::voronoi::{SiteEdge, CONSTANT_BUDGET};
use limws::workspace::{Collector, Machine};
use limws::PointSet;

fn hull(ps: &PointSet) -> (Vec<SiteEdge>, usize) {
    let mut m = Machine::new(ps, CONSTANT_BUDGET);
    let (col, mut out) = Collector::new();
    gift_wrap_hull(&mut m, &mut out).unwrap();
    drop(out);
    (col.into_inner(), m.arena.peak())
}

#[test]
fn matches_monotone_chain() {
    for seed in 0..10 {
        let ps = instance(200, seed);
        let (edges, _) = hull(&ps);
        let want = oracle_hull(&ps).unwrap();
        let got: Vec<usize> = edges.iter().map(|e| e.0).collect();
        assert_eq!(got, want, "seed {seed}");
        for (k, e) in edges.iter().enumerate() {
            assert_eq!(e.1, edges[(k + 1) % edges.len()].0);
        }
    }
}

#[test]
fn every_other_site_is_strictly_left() {
    let ps = instance(150, 77);
    let (edges, _) = hull(&ps);
    let on_hull: BTreeSet<usize> = edges.iter().map(|e| e.0).collect();
    for e in &edges {
        for k in 0..ps.len() {
            if k != e.0 && k != e.1 {
                assert_eq!(orientation(ps.site(e.0), ps.site(e.1), ps.site(k)), Orientation::Ccw);
            }
        }
    }
    assert_eq!(on_hull.len(), edges.len());
}

#[test]
fn workspace_is_constant() {
    let peaks: BTreeSet<usize> = [8, 64, 512].iter().map(|&n| hull(&instance(n, 3)).1).collect();
    assert_eq!(peaks.len(), 1);
}
