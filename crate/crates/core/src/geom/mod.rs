//! Exact planar geometry: rational points, the read-only [`PointSet`],
//! predicates, bisectors and their intersections.

pub mod kernel;
mod position;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::Int;
pub use kernel::IntPoint;
pub use position::{
    check_distinct_lengths, check_general_position, check_local_general_position,
};

/// A point (or vector) with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

pub type Site = Point;

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point { x: BigRational::from_integer(x.into()), y: BigRational::from_integer(y.into()) }
    }

    pub fn from_ratios(x: (i64, i64), y: (i64, i64)) -> Self {
        Point {
            x: BigRational::new(x.0.into(), x.1.into()),
            y: BigRational::new(y.0.into(), y.1.into()),
        }
    }

    pub fn dist2(&self, o: &Point) -> BigRational {
        let dx = &self.x - &o.x;
        let dy = &self.y - &o.y;
        &dx * &dx + &dy * &dy
    }

    /// Rescales a nonzero direction so that its largest component has
    /// magnitude one.
    pub fn normalized_direction(&self) -> Point {
        let m = std::cmp::max(self.x.abs(), self.y.abs());
        debug_assert!(!m.is_zero());
        Point { x: &self.x / &m, y: &self.y / &m }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InCircle {
    Inside,
    Outside,
    Cocircular,
}

fn cross(a: &Point, b: &Point, c: &Point) -> BigRational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

pub fn orientation(a: &Point, b: &Point, c: &Point) -> Orientation {
    let d = cross(a, b, c);
    if d.is_positive() {
        Orientation::Ccw
    } else if d.is_negative() {
        Orientation::Cw
    } else {
        Orientation::Collinear
    }
}

/// Classifies `d` against the circle through `a, b, c`.
pub fn incircle(a: &Point, b: &Point, c: &Point, d: &Point) -> Result<InCircle> {
    let o = orientation(a, b, c);
    if o == Orientation::Collinear {
        return Err(Error::CollinearBase);
    }
    let lift = |p: &Point| {
        let dx = &p.x - &d.x;
        let dy = &p.y - &d.y;
        let l = &dx * &dx + &dy * &dy;
        (dx, dy, l)
    };
    let (ax, ay, al) = lift(a);
    let (bx, by, bl) = lift(b);
    let (cx, cy, cl) = lift(c);
    let mut det = &al * (&bx * &cy - &by * &cx) - &bl * (&ax * &cy - &ay * &cx)
        + &cl * (&ax * &by - &ay * &bx);
    if o == Orientation::Cw {
        det = -det;
    }
    Ok(if det.is_positive() {
        InCircle::Inside
    } else if det.is_negative() {
        InCircle::Outside
    } else {
        InCircle::Cocircular
    })
}

/// Read-only input: an indexed sequence of sites.
///
/// Alongside the rational coordinates the set keeps an integer image of
/// every site, obtained by multiplying through by the least common multiple
/// of all denominators. Algorithms compute in that integer frame.
#[derive(Clone, Debug)]
pub struct PointSet {
    sites: Vec<Site>,
    grid: Vec<IntPoint>,
    scale: BigInt,
}

impl PointSet {
    pub fn new(sites: Vec<Site>) -> Self {
        let scale = sites.iter().fold(BigInt::one(), |acc, s| {
            acc.lcm(s.x.denom()).lcm(s.y.denom())
        });
        let grid = sites
            .iter()
            .map(|s| {
                let gx = s.x.numer() * (&scale / s.x.denom());
                let gy = s.y.numer() * (&scale / s.y.denom());
                IntPoint { x: Int::from_big(gx), y: Int::from_big(gy) }
            })
            .collect();
        PointSet { sites, grid, scale }
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Self {
        Self::new(coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn site(&self, i: usize) -> &Site {
        &self.sites[i]
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    /// Integer image of site `i`.
    pub fn grid(&self, i: usize) -> &IntPoint {
        &self.grid[i]
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// Maps an integer-frame point `(x / w, y / w)` back to input coordinates.
    pub fn from_frame(&self, x: &Int, y: &Int, w: &Int) -> Point {
        let den = w.to_big() * &self.scale;
        Point {
            x: BigRational::new(x.to_big(), den.clone()),
            y: BigRational::new(y.to_big(), den),
        }
    }

    /// Maps an integer-frame vector back to a normalized input direction.
    pub fn direction_from_frame(&self, v: &IntPoint) -> Point {
        Point {
            x: BigRational::from_integer(v.x.to_big()),
            y: BigRational::from_integer(v.y.to_big()),
        }
        .normalized_direction()
    }

    /// Exact circumcenter of three sites, in input coordinates.
    pub fn circumcenter(&self, i: usize, j: usize, k: usize) -> Point {
        let (x, y, w) = kernel::circumcenter(self.grid(i), self.grid(j), self.grid(k));
        self.from_frame(&x, &y, &w)
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(i))
        }
    }
}

/// Perpendicular bisector of sites `i` and `j`: the line `a x + b y = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bisector {
    pub i: usize,
    pub j: usize,
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
}

impl Bisector {
    pub fn contains(&self, p: &Point) -> bool {
        &self.a * &p.x + &self.b * &p.y == self.c
    }
}

pub fn bisector(points: &PointSet, i: usize, j: usize) -> Result<Bisector> {
    points.check_index(i)?;
    points.check_index(j)?;
    let (p, q) = (points.site(i), points.site(j));
    if i == j || p == q {
        return Err(Error::DuplicateSites(i, j));
    }
    let two = BigRational::from_integer(2.into());
    let a = &two * (&q.x - &p.x);
    let b = &two * (&q.y - &p.y);
    let c = (&q.x * &q.x + &q.y * &q.y) - (&p.x * &p.x + &p.y * &p.y);
    Ok(Bisector { i, j, a, b, c })
}

/// A ray `origin + t * direction`, `t >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub origin: Point,
    pub direction: Point,
}

impl Ray {
    pub fn new(origin: Point, direction: Point) -> Self {
        assert!(
            !(direction.x.is_zero() && direction.y.is_zero()),
            "ray direction must be nonzero"
        );
        Ray { origin, direction }
    }

    pub fn at(&self, t: &BigRational) -> Point {
        Point {
            x: &self.origin.x + t * &self.direction.x,
            y: &self.origin.y + t * &self.direction.y,
        }
    }
}

/// First point where the ray meets the bisector line, with its parameter.
pub fn ray_line_intersection(r: &Ray, b: &Bisector) -> Option<(Point, BigRational)> {
    let denom = &b.a * &r.direction.x + &b.b * &r.direction.y;
    let gap = &b.c - (&b.a * &r.origin.x + &b.b * &r.origin.y);
    if denom.is_zero() {
        return gap.is_zero().then(|| (r.origin.clone(), BigRational::zero()));
    }
    let t = gap / denom;
    if t.is_negative() {
        return None;
    }
    Some((r.at(&t), t))
}

pub fn line_line_intersection(b1: &Bisector, b2: &Bisector) -> Option<Point> {
    let det = &b1.a * &b2.b - &b1.b * &b2.a;
    if det.is_zero() {
        return None;
    }
    let x = (&b1.c * &b2.b - &b1.b * &b2.c) / &det;
    let y = (&b1.a * &b2.c - &b1.c * &b2.a) / &det;
    Some(Point { x, y })
}
