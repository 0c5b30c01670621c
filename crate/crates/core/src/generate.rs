//! Seeded random instances in general position.

use std::collections::HashSet;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result, Violation};
use crate::geom::{
    check_distinct_lengths, check_general_position, check_local_general_position, PointSet,
};

/// Coordinates are integers in `[0, 2^COORD_BITS)`.
pub const COORD_BITS: u32 = 24;
/// Above this size the cubic cocircularity check is replaced by the check
/// against the Delaunay triangles of the whole set.
pub const FULL_CHECK_MAX_N: usize = 256;

/// Extra conditions beyond general position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Guard {
    /// Require pairwise distinct squared distances (needed by the EMST).
    pub distinct_lengths: bool,
}

/// Redraws allowed before giving up.
pub fn redraw_limit(n: usize) -> usize {
    16 * n + 64
}

/// The degeneracy check used for an instance of size `n`.
pub fn check_position(ps: &PointSet) -> std::result::Result<(), Violation> {
    if ps.len() <= FULL_CHECK_MAX_N {
        check_general_position(ps)
    } else {
        check_local_general_position(ps)
    }
}

fn culprit(v: &Violation) -> usize {
    match *v {
        Violation::Duplicate(t) => t[1],
        Violation::Collinear(t) => t[2],
        Violation::Cocircular(t) => t[3],
        Violation::EqualLength([(a, b), (c, d)]) => a.max(b).max(c).max(d),
    }
}

/// Reduced direction of `b - a`, folded so that opposite directions agree.
fn line_dir(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let g = dx.gcd(&dy);
    let (dx, dy) = (dx / g, dy / g);
    if dy < 0 || (dy == 0 && dx < 0) {
        (-dx, -dy)
    } else {
        (dx, dy)
    }
}

fn dist2(a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - b.0).pow(2) + (a.1 - b.1).pow(2)
}

/// Sites placed so far, with the lines through each site and the squared
/// lengths in use, so that a candidate is checked against all earlier sites
/// in linear time.
struct Draft {
    guard: Guard,
    coords: Vec<Option<(i64, i64)>>,
    taken: HashSet<(i64, i64)>,
    lines: Vec<HashSet<(i64, i64)>>,
    lengths: HashSet<i64>,
}

impl Draft {
    fn new(n: usize, guard: Guard) -> Self {
        Draft {
            guard,
            coords: vec![None; n],
            taken: HashSet::new(),
            lines: vec![HashSet::new(); n],
            lengths: HashSet::new(),
        }
    }

    fn placed(&self, skip: usize) -> impl Iterator<Item = (usize, (i64, i64))> + '_ {
        self.coords.iter().enumerate().filter(move |&(j, _)| j != skip).filter_map(|(j, c)| c.map(|c| (j, c)))
    }

    /// Places `c` as site `i` unless it is a duplicate, collinear with two
    /// placed sites, or (under the guard) repeats a squared length.
    fn try_place(&mut self, i: usize, c: (i64, i64)) -> bool {
        if self.taken.contains(&c) {
            return false;
        }
        let mut dirs = HashSet::new();
        let mut lens = HashSet::new();
        for (j, p) in self.placed(i) {
            let d = line_dir(p, c);
            if self.lines[j].contains(&d) || !dirs.insert(d) {
                return false;
            }
            if self.guard.distinct_lengths {
                let l = dist2(p, c);
                if self.lengths.contains(&l) || !lens.insert(l) {
                    return false;
                }
            }
        }
        let others: Vec<(usize, (i64, i64))> = self.placed(i).collect();
        for (j, p) in others {
            let d = line_dir(p, c);
            self.lines[j].insert(d);
            self.lines[i].insert(d);
        }
        self.lengths.extend(lens);
        self.taken.insert(c);
        self.coords[i] = Some(c);
        true
    }

    fn remove(&mut self, i: usize) {
        let Some(c) = self.coords[i].take() else { return };
        self.taken.remove(&c);
        self.lines[i].clear();
        let others: Vec<(usize, (i64, i64))> = self.placed(i).collect();
        for (j, p) in others {
            self.lines[j].remove(&line_dir(p, c));
            if self.guard.distinct_lengths {
                self.lengths.remove(&dist2(p, c));
            }
        }
    }
}

/// `n` sites drawn uniformly from the integer grid. Sites are placed in
/// index order and a draw is repeated while it forms a forbidden tuple with
/// earlier sites, so the redrawn site is always the highest-indexed one.
/// Cocircularity is checked once all sites are placed, again redrawing the
/// highest-indexed site. Identical `(n, seed, guard)` give identical
/// instances.
pub fn generate(n: usize, seed: u64, guard: Guard) -> Result<PointSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = 1i64 << COORD_BITS;
    let mut draw = move || (rng.gen_range(0..side), rng.gen_range(0..side));
    let limit = redraw_limit(n);
    let mut redraws = 0;
    let mut draft = Draft::new(n, guard);
    let mut place = |draft: &mut Draft, i: usize| -> Result<()> {
        while !draft.try_place(i, draw()) {
            redraws += 1;
            if redraws > limit {
                return Err(Error::GuardExhausted(limit));
            }
        }
        Ok(())
    };
    for i in 0..n {
        place(&mut draft, i)?;
    }
    loop {
        let coords: Vec<(i64, i64)> = draft.coords.iter().map(|c| c.expect("placed")).collect();
        let ps = PointSet::from_ints(&coords);
        let found = check_position(&ps)
            .and_then(|()| if guard.distinct_lengths { check_distinct_lengths(&ps) } else { Ok(()) })
            .err();
        match found {
            None => return Ok(ps),
            Some(v) => {
                let k = culprit(&v);
                draft.remove(k);
                place(&mut draft, k)?;
            }
        }
    }
}
