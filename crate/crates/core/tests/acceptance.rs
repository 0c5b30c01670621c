//! Acceptance suite. Every criterion prints one PASS/FAIL line; the binary
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::Instant;

use limws::emst::face_walk;
use limws::generate::generate;
use limws::io::parse_points;
use limws::oracle::{oracle_delaunay, oracle_emst, oracle_voronoi};
use limws::run::{execute, loglog_slope, Algo, RunOutput, RunReport};
use limws::voronoi::tradeoff::{batch_find_edges, starter_rays, tradeoff_budget, SPACE_CONSTANT};
use limws::voronoi::{find_cell_edge, CellRay, EdgeEnd, SiteEdge, VoronoiEdge, CONSTANT_BUDGET};
use limws::workspace::Machine;
use limws::{Point, PointSet};
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn instance(n: usize, seed: u64, algo: Algo) -> PointSet {
    generate(n, seed, algo.guard()).expect("generator")
}

fn exec(ps: &PointSet, algo: Algo, s: Option<usize>) -> Result<(RunReport, RunOutput), String> {
    execute(ps, algo, s).map_err(|e| format!("{algo} n={} s={s:?}: {e}", ps.len()))
}

fn voronoi(out: RunOutput) -> Vec<VoronoiEdge> {
    match out {
        RunOutput::Voronoi(mut v) => {
            v.sort();
            v
        }
        RunOutput::Edges(_) => unreachable!("voronoi algorithms emit voronoi edges"),
    }
}

fn site_edges(out: RunOutput) -> Vec<SiteEdge> {
    match out {
        RunOutput::Edges(v) => {
            let mut v: Vec<SiteEdge> = v.into_iter().map(SiteEdge::sorted).collect();
            v.sort();
            v
        }
        RunOutput::Voronoi(_) => unreachable!("graph algorithms emit site edges"),
    }
}

const VORONOI_SIZES: [usize; 3] = [10, 50, 200];
const EMST_SIZES: [usize; 3] = [10, 50, 100];

fn c1_oracle_voronoi() -> Outcome {
    let results: Vec<Result<(), String>> = (0..100u64)
        .into_par_iter()
        .map(|seed| {
            let n = VORONOI_SIZES[seed as usize % 3];
            let ps = instance(n, seed, Algo::VoronoiCws);
            let vd = oracle_voronoi(&ps).map_err(|e| e.to_string())?;
            let got = voronoi(exec(&ps, Algo::VoronoiCws, None)?.1);
            ensure(got == vd.edges, || format!("seed {seed} n={n}: edge pairs differ"))?;
            let records: Vec<_> = got.iter().map(|e| e.resolve(&ps)).collect();
            ensure(records == vd.records, || format!("seed {seed} n={n}: endpoints differ"))
        })
        .collect();
    results.into_iter().collect::<Result<Vec<()>, String>>()?;
    Ok("100 instances, n in {10, 50, 200}, pairs and rational endpoints equal".into())
}

fn c2_tradeoff_invariance() -> Outcome {
    let ps = instance(100, 2024, Algo::VoronoiTradeoff);
    let want = oracle_voronoi(&ps).map_err(|e| e.to_string())?.edges;
    let sets: Vec<Result<(usize, Vec<VoronoiEdge>), String>> = [1, 5, 10, 50, 100]
        .into_par_iter()
        .map(|s| Ok((s, voronoi(exec(&ps, Algo::VoronoiTradeoff, Some(s))?.1))))
        .collect();
    for r in sets {
        let (s, got) = r?;
        ensure(got == want, || format!("s = {s}: {} edges, oracle {}", got.len(), want.len()))?;
    }
    Ok(format!("n=100, s in {{1, 5, 10, 50, 100}}, all {} edges equal the oracle", want.len()))
}

fn emst_instances() -> Vec<PointSet> {
    (0..100u64).map(|seed| instance(EMST_SIZES[seed as usize % 3], 1000 + seed, Algo::Emst)).collect()
}

fn c3_emst() -> Outcome {
    let results: Vec<Result<(), String>> = emst_instances()
        .into_par_iter()
        .enumerate()
        .map(|(k, ps)| {
            let n = ps.len();
            let got = site_edges(exec(&ps, Algo::Emst, None)?.1);
            let want = oracle_emst(&ps).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("instance {k} n={n}: tree differs from Kruskal"))?;
            ensure(got.len() == n - 1, || format!("instance {k}: {} edges", got.len()))?;
            let mut uf = UnionFind::<usize>::new(n);
            for e in &got {
                ensure(uf.union(e.0, e.1), || format!("instance {k}: cycle through {e}"))?;
            }
            let root = uf.find(0);
            ensure((0..n).all(|v| uf.find(v) == root), || format!("instance {k}: not spanning"))
        })
        .collect();
    results.into_iter().collect::<Result<Vec<()>, String>>()?;
    Ok("100 instances, n in {10, 50, 100}, equal to Kruskal, spanning, acyclic, n-1 edges".into())
}

const SCALING_SIZES: [usize; 5] = [1 << 7, 1 << 8, 1 << 9, 1 << 10, 1 << 11];

/// (n, steps, peak) for every scaling size, computed once and shared.
fn scaling_runs(algo: Algo) -> &'static Result<Vec<(usize, u64, usize)>, String> {
    static CWS: OnceLock<Result<Vec<(usize, u64, usize)>, String>> = OnceLock::new();
    static EMST: OnceLock<Result<Vec<(usize, u64, usize)>, String>> = OnceLock::new();
    static HULL: OnceLock<Result<Vec<(usize, u64, usize)>, String>> = OnceLock::new();
    let cell = match algo {
        Algo::VoronoiCws => &CWS,
        Algo::Emst => &EMST,
        _ => &HULL,
    };
    cell.get_or_init(|| {
        SCALING_SIZES
            .into_par_iter()
            .map(|n| {
                let (r, _) = exec(&instance(n, 7, algo), algo, None)?;
                Ok((n, r.steps, r.peak_cells))
            })
            .collect()
    })
}

fn c4_constant_workspace() -> Outcome {
    let mut line = Vec::new();
    for algo in [Algo::VoronoiCws, Algo::Emst, Algo::Hull] {
        let runs = scaling_runs(algo).clone()?;
        let peaks: BTreeSet<usize> = runs.iter().map(|r| r.2).collect();
        ensure(peaks.len() == 1, || format!("{algo}: peaks {:?} over n = 2^7..2^11", runs.iter().map(|r| r.2).collect::<Vec<_>>()))?;
        line.push(format!("{algo}={}", runs[0].2));
    }
    Ok(format!("identical peaks over n = 2^7..2^11: {}", line.join(" ")))
}

/// (s, steps, peak) for s = 1, 2, 4, ..., 1024 at n = 1024.
fn tradeoff_sweep() -> &'static Result<Vec<(usize, u64, usize)>, String> {
    static SWEEP: OnceLock<Result<Vec<(usize, u64, usize)>, String>> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let ps = instance(1024, 5, Algo::VoronoiTradeoff);
        (0..=10)
            .into_par_iter()
            .map(|k| {
                let s = 1usize << k;
                let (r, _) = exec(&ps, Algo::VoronoiTradeoff, Some(s))?;
                Ok((s, r.steps, r.peak_cells))
            })
            .collect()
    })
}

fn c5_linear_space() -> Outcome {
    let sweep = tradeoff_sweep().clone()?;
    let mut parts = Vec::new();
    for s in [1, 32, 1024] {
        let &(_, _, peak) = sweep.iter().find(|r| r.0 == s).expect("swept s");
        ensure(peak <= SPACE_CONSTANT * s, || format!("s={s}: peak {peak} > {}", SPACE_CONSTANT * s))?;
        parts.push(format!("s={s}:{peak}"));
    }
    Ok(format!("n=1024, C={SPACE_CONSTANT}, peak cells {}", parts.join(" ")))
}

fn c6_time_exponents() -> Outcome {
    let cws = scaling_runs(Algo::VoronoiCws).clone()?;
    let cws_slope = loglog_slope(&cws.iter().map(|r| (r.0 as f64, r.1 as f64)).collect::<Vec<_>>());
    const SEEDS: u64 = 8;
    let emst: Vec<Result<(f64, f64), String>> = [32usize, 64, 128, 256]
        .into_par_iter()
        .map(|n| {
            let mut total = 0u64;
            for seed in 0..SEEDS {
                total += exec(&instance(n, 500 + seed, Algo::Emst), Algo::Emst, None)?.0.steps;
            }
            Ok((n as f64, total as f64 / SEEDS as f64))
        })
        .collect();
    let emst = emst.into_iter().collect::<Result<Vec<_>, String>>()?;
    let emst_slope = loglog_slope(&emst);
    let msg = format!("voronoi-cws slope {cws_slope:.3} (want 1.8..2.2), emst slope {emst_slope:.3} (want 2.7..3.3)");
    ensure((1.8..=2.2).contains(&cws_slope) && (2.7..=3.3).contains(&emst_slope), || msg.clone())?;
    Ok(msg)
}

fn c7_tradeoff_monotone() -> Outcome {
    let sweep = tradeoff_sweep().clone()?;
    for w in sweep.windows(2) {
        ensure(w[1].1 <= w[0].1, || format!("steps rise from s={} ({}) to s={} ({})", w[0].0, w[0].1, w[1].0, w[1].1))?;
    }
    let ratio = sweep[0].1 as f64 / sweep[10].1 as f64;
    let need = 1024.0 / 40.0;
    ensure(ratio >= need, || format!("step(1)/step(1024) = {ratio:.1} < {need}"))?;
    Ok(format!("n=1024, steps non-increasing over s=1..1024, step(1)/step(1024) = {ratio:.1} >= {need}"))
}

fn c8_fixtures() -> Outcome {
    let tri = PointSet::from_ints(&[(0, 0), (4, 0), (0, 4)]);
    let center = EdgeEnd::Vertex(Point::from_ints(2, 2));
    let edges = voronoi(exec(&tri, Algo::VoronoiCws, None)?.1);
    ensure(edges.len() == 3, || format!("{} voronoi edges", edges.len()))?;
    for e in &edges {
        let r = e.resolve(&tri);
        ensure(r.a == center || r.b == center, || format!("{r} misses (2,2)"))?;
    }
    let hull = site_edges(exec(&tri, Algo::Hull, None)?.1);
    let on_hull: BTreeSet<usize> = hull.iter().flat_map(|e| [e.0, e.1]).collect();
    ensure(on_hull.len() == 3 && hull.len() == 3, || format!("hull {hull:?}"))?;
    let scalene = parse_points("0 0\n2 0\n11/10 2\n").map_err(|e| e.to_string())?;
    let tree = site_edges(exec(&scalene, Algo::Emst, None)?.1);
    ensure(tree == vec![SiteEdge(0, 1), SiteEdge(1, 2)], || format!("emst {tree:?}"))?;
    Ok("right triangle: 3 edges through (2,2), hull of 3; scalene EMST {0-1, 1-2}".into())
}

fn c9_batch_equivalence() -> Outcome {
    let results: Vec<Result<(), String>> = (0..50u64)
        .into_par_iter()
        .map(|seed| {
            let ps = instance(64, 3000 + seed, Algo::VoronoiCws);
            let mut rays = starter_rays(&(0..64).collect::<Vec<_>>());
            rays.extend((0..64).map(|p| CellRay::through_site(p, (p * 7 + 3) % 64)));
            let single: Vec<_> = rays
                .iter()
                .map(|r| find_cell_edge(&mut Machine::new(&ps, CONSTANT_BUDGET), r))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            for s in [1, 8, 64] {
                for (k, chunk) in rays.chunks(s).enumerate() {
                    let mut m = Machine::new(&ps, tradeoff_budget(s));
                    let got = batch_find_edges(&mut m, chunk, s).map_err(|e| e.to_string())?;
                    ensure(got[..] == single[k * s..k * s + chunk.len()], || format!("seed {seed} s={s}: batch {k} differs"))?;
                }
            }
            Ok(())
        })
        .collect();
    results.into_iter().collect::<Result<Vec<()>, String>>()?;
    Ok("50 instances, n=64, s in {1, 8, 64}, 128 rays each, batched equals single".into())
}

fn c10_walk_bound() -> Outcome {
    let longest: Vec<Result<(usize, usize), String>> = emst_instances()
        .into_par_iter()
        .map(|ps| {
            let n = ps.len();
            let mut longest = 0;
            for e in oracle_delaunay(&ps).map_err(|e| e.to_string())? {
                let mut m = Machine::new(&ps, CONSTANT_BUDGET);
                let w = face_walk(&mut m, e.0, e.1).map_err(|e| e.to_string())?;
                ensure(w.steps <= 2 * n, || format!("n={n}: walk for {e} took {} steps", w.steps))?;
                longest = longest.max(w.steps);
            }
            Ok((n, longest))
        })
        .collect();
    let longest = longest.into_iter().collect::<Result<Vec<_>, String>>()?;
    let worst = longest.iter().map(|&(n, l)| l as f64 / n as f64).fold(0.0, f64::max);
    Ok(format!("100 instances, every Delaunay edge walked, longest walk {worst:.2}n <= 2n"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("voronoi oracle equivalence", c1_oracle_voronoi),
        ("trade-off output invariance", c2_tradeoff_invariance),
        ("emst oracle equivalence", c3_emst),
        ("constant workspace", c4_constant_workspace),
        ("linear space scaling", c5_linear_space),
        ("time exponents", c6_time_exponents),
        ("trade-off monotonicity", c7_tradeoff_monotone),
        ("analytic fixtures", c8_fixtures),
        ("batched query equivalence", c9_batch_equivalence),
        ("face-walk bound", c10_walk_bound),
    ];
    let start = Instant::now();
    let outcomes: Vec<(Outcome, f64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| {
                scope.spawn(move || {
                    let t = Instant::now();
                    (f(), t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| (Err("panicked".into()), 0.0))).collect()
    });
    let mut failed = 0;
    for (k, ((name, _), (outcome, secs))) in criteria.iter().zip(outcomes).enumerate() {
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {status}: {name}: {detail} [{secs:.1}s]", k + 1);
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
