//! Single runs with optional oracle verification, and benchmark sweeps.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::emst::enumerate_emst;
use crate::error::{Error, Result};
use crate::generate::{generate, Guard};
use crate::geom::PointSet;
use crate::hull::gift_wrap_hull;
use crate::oracle::{oracle_delaunay, oracle_emst, oracle_hull, oracle_voronoi};
use crate::voronoi::tradeoff::{tradeoff_budget, tradeoff_voronoi, TradeoffConfig};
use crate::voronoi::{
    enumerate_delaunay_edges, enumerate_voronoi_edges, EdgeRecord, SiteEdge, VoronoiEdge,
    CONSTANT_BUDGET,
};
use crate::workspace::{Collector, Machine};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algo {
    VoronoiCws,
    VoronoiTradeoff,
    Emst,
    Hull,
    Delaunay,
}

impl Algo {
    pub const ALL: [Algo; 5] =
        [Algo::VoronoiCws, Algo::VoronoiTradeoff, Algo::Emst, Algo::Hull, Algo::Delaunay];

    pub fn name(self) -> &'static str {
        match self {
            Algo::VoronoiCws => "voronoi-cws",
            Algo::VoronoiTradeoff => "voronoi-tradeoff",
            Algo::Emst => "emst",
            Algo::Hull => "hull",
            Algo::Delaunay => "delaunay",
        }
    }

    /// Guard for generated instances of this algorithm.
    pub fn guard(self) -> Guard {
        Guard { distinct_lengths: self == Algo::Emst }
    }

    pub fn budget(self, s: Option<usize>) -> Result<usize> {
        match (self, s) {
            (Algo::VoronoiTradeoff, Some(s)) if s >= 1 => Ok(tradeoff_budget(s)),
            (Algo::VoronoiTradeoff, _) => {
                Err(Error::InvalidArgument("voronoi-tradeoff needs a space parameter s >= 1".into()))
            }
            _ => Ok(CONSTANT_BUDGET),
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Verified,
    /// The first record where output and oracle differ.
    Mismatch(String),
    Skipped,
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verification::Verified => f.write_str("verified"),
            Verification::Mismatch(_) => f.write_str("mismatch"),
            Verification::Skipped => f.write_str("skipped"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub algo: Algo,
    pub n: usize,
    pub s: Option<usize>,
    pub budget: usize,
    pub peak_cells: usize,
    pub steps: u64,
    pub wall_ns: u128,
    pub outputs: u64,
    pub verification: Verification,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.algo, self.n)?;
        if let Some(s) = self.s {
            write!(f, " s={s}")?;
        }
        write!(
            f,
            " budget={} peak_cells={} steps={} outputs={} wall_ns={} status={}",
            self.budget, self.peak_cells, self.steps, self.outputs, self.wall_ns, self.verification
        )
    }
}

/// Output of one run, in emission order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunOutput {
    Voronoi(Vec<VoronoiEdge>),
    Edges(Vec<SiteEdge>),
}

impl RunOutput {
    /// One text line per record.
    pub fn lines(&self, ps: &PointSet) -> Vec<String> {
        match self {
            RunOutput::Voronoi(v) => v.iter().map(|e| e.resolve(ps).to_string()).collect(),
            RunOutput::Edges(v) => v.iter().map(|e| e.to_string()).collect(),
        }
    }
}

/// Runs `algo` on its machine. Returns the report (verification skipped)
/// and the collected output.
pub fn execute(ps: &PointSet, algo: Algo, s: Option<usize>) -> Result<(RunReport, RunOutput)> {
    let budget = algo.budget(s)?;
    let mut m = Machine::new(ps, budget);
    let start = Instant::now();
    let output = match algo {
        Algo::VoronoiCws | Algo::VoronoiTradeoff => {
            let (col, mut out) = Collector::new();
            if algo == Algo::VoronoiCws {
                enumerate_voronoi_edges(&mut m, &mut out)?;
            } else {
                let cfg = TradeoffConfig::new(s.expect("checked by budget"));
                tradeoff_voronoi(&mut m, &cfg, &mut out)?;
            }
            drop(out);
            RunOutput::Voronoi(col.into_inner())
        }
        Algo::Emst | Algo::Hull | Algo::Delaunay => {
            let (col, mut out) = Collector::new();
            match algo {
                Algo::Emst => {
                    enumerate_emst(&mut m, &mut out)?;
                }
                Algo::Hull => gift_wrap_hull(&mut m, &mut out)?,
                _ => enumerate_delaunay_edges(&mut m, &mut out)?,
            }
            drop(out);
            RunOutput::Edges(col.into_inner())
        }
    };
    let wall_ns = start.elapsed().as_nanos();
    let outputs = match &output {
        RunOutput::Voronoi(v) => v.len(),
        RunOutput::Edges(v) => v.len(),
    } as u64;
    let report = RunReport {
        algo,
        n: ps.len(),
        s: (algo == Algo::VoronoiTradeoff).then_some(s).flatten(),
        budget,
        peak_cells: m.arena.peak(),
        steps: m.steps.steps(),
        wall_ns,
        outputs,
        verification: Verification::Skipped,
    };
    Ok((report, output))
}

fn first_difference<T: PartialEq + fmt::Display>(got: &[T], want: &[T]) -> Option<String> {
    for (k, (g, w)) in got.iter().zip(want).enumerate() {
        if g != w {
            return Some(format!("record {k}: got `{g}`, oracle `{w}`"));
        }
    }
    match got.len().cmp(&want.len()) {
        std::cmp::Ordering::Less => Some(format!("missing `{}`", want[got.len()])),
        std::cmp::Ordering::Greater => Some(format!("extra `{}`", got[want.len()])),
        std::cmp::Ordering::Equal => None,
    }
}

/// Compares an output with the matching oracle. Voronoi and graph outputs
/// are compared as sorted lists (so repeated records are caught); hull
/// output is compared in order.
pub fn verify(ps: &PointSet, algo: Algo, output: &RunOutput) -> Result<Verification> {
    let diff = match (algo, output) {
        (Algo::VoronoiCws | Algo::VoronoiTradeoff, RunOutput::Voronoi(v)) => {
            let mut got: Vec<EdgeRecord> = v.iter().map(|e| e.resolve(ps)).collect();
            got.sort();
            let mut want = oracle_voronoi(ps)?.records;
            want.sort();
            first_difference(&got, &want)
        }
        (Algo::Hull, RunOutput::Edges(v)) => {
            let h = oracle_hull(ps)?;
            let want: Vec<SiteEdge> = if h.len() < 2 {
                Vec::new()
            } else {
                (0..h.len()).map(|k| SiteEdge(h[k], h[(k + 1) % h.len()])).collect()
            };
            first_difference(v, &want)
        }
        (Algo::Emst | Algo::Delaunay, RunOutput::Edges(v)) => {
            let mut got: Vec<SiteEdge> = v.iter().map(|e| e.sorted()).collect();
            got.sort();
            let want = if algo == Algo::Emst { oracle_emst(ps)? } else { oracle_delaunay(ps)? };
            first_difference(&got, &want)
        }
        _ => unreachable!("output kind follows the algorithm"),
    };
    Ok(diff.map_or(Verification::Verified, Verification::Mismatch))
}

/// [`execute`] followed by [`verify`] when requested.
pub fn run(
    ps: &PointSet,
    algo: Algo,
    s: Option<usize>,
    check: bool,
) -> Result<(RunReport, RunOutput)> {
    let (mut report, output) = execute(ps, algo, s)?;
    if check {
        report.verification = verify(ps, algo, &output)?;
    }
    Ok((report, output))
}

pub const CSV_HEADER: [&str; 7] = ["algo", "n", "s", "seed", "steps", "peak_cells", "wall_ns"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub algo: Algo,
    pub n: usize,
    pub s: Option<usize>,
    /// `None` when the instance came from a file.
    pub seed: Option<u64>,
    pub steps: u64,
    pub peak_cells: usize,
    pub wall_ns: u128,
}

/// Where benchmark instances come from.
#[derive(Clone, Debug)]
pub enum Instances {
    File(PointSet),
    /// Generated: every size in `ns`, `reps` seeds starting at `seed`.
    Generated { ns: Vec<usize>, seed: u64, reps: usize },
}

/// Runs every (instance, s) cell, concurrently. Rows come back ordered by
/// `(n, seed, s)` whatever the scheduling.
pub fn bench(algo: Algo, instances: &Instances, s_list: &[Option<usize>]) -> Result<Vec<BenchRow>> {
    let sets: Vec<(Option<u64>, PointSet)> = match instances {
        Instances::File(ps) => vec![(None, ps.clone())],
        Instances::Generated { ns, seed, reps } => ns
            .iter()
            .flat_map(|&n| (0..*reps as u64).map(move |r| (n, seed + r)))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(n, sd)| Ok((Some(sd), generate(n, sd, algo.guard())?)))
            .collect::<Result<_>>()?,
    };
    let cells: Vec<(usize, Option<usize>)> =
        (0..sets.len()).flat_map(|k| s_list.iter().map(move |&s| (k, s))).collect();
    let mut rows: Vec<BenchRow> = cells
        .into_par_iter()
        .map(|(k, s)| {
            let (seed, ps) = &sets[k];
            let (report, _) = execute(ps, algo, s)?;
            Ok(BenchRow {
                algo,
                n: ps.len(),
                s: report.s,
                seed: *seed,
                steps: report.steps,
                peak_cells: report.peak_cells,
                wall_ns: report.wall_ns,
            })
        })
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| (r.n, r.seed, r.s));
    Ok(rows)
}

/// Writes rows under the fixed header.
pub fn write_csv(rows: &[BenchRow], w: impl std::io::Write) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    let opt = |v: Option<String>| v.unwrap_or_default();
    for r in rows {
        out.write_record([
            r.algo.name().to_string(),
            r.n.to_string(),
            opt(r.s.map(|s| s.to_string())),
            opt(r.seed.map(|s| s.to_string())),
            r.steps.to_string(),
            r.peak_cells.to_string(),
            r.wall_ns.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
