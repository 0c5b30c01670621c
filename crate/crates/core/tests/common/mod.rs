#![allow(dead_code)]

use limws::generate::{generate, Guard};
use limws::voronoi::{SiteEdge, VoronoiEdge};
use limws::workspace::{Collector, Machine, OutputStream};
use limws::{PointSet, Result};

pub fn instance(n: usize, seed: u64) -> PointSet {
    generate(n, seed, Guard::default()).expect("generator")
}

pub fn emst_instance(n: usize, seed: u64) -> PointSet {
    generate(n, seed, Guard { distinct_lengths: true }).expect("generator")
}

/// Runs `f` with a collecting stream and returns the records, sorted.
pub fn collect_sorted<T, F>(m: &mut Machine, f: F) -> Result<Vec<T>>
where
    T: Ord + Send + 'static,
    F: FnOnce(&mut Machine, &mut OutputStream<T>) -> Result<()>,
{
    let (col, mut out) = Collector::new();
    f(m, &mut out)?;
    drop(out);
    let mut v = col.into_inner();
    v.sort();
    Ok(v)
}

pub fn sorted_pairs(v: &[VoronoiEdge]) -> Vec<SiteEdge> {
    v.iter().map(|e| SiteEdge(e.i, e.j)).collect()
}
