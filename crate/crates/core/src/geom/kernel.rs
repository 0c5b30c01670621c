//! Integer-frame predicates and constructions used on the hot paths.
//!
//! Every site of a [`PointSet`](super::PointSet) is mapped to integer
//! coordinates by a common positive scale. All predicates below are
//! invariant under that scaling, so they can work on integers alone.
//!
//! Positions along a bisector `B(p, q)` use the parametrisation
//! `x = (p + q) / 2 + t * rot(q - p)` where `rot` turns a vector a quarter
//! turn counterclockwise. Increasing `t` moves counterclockwise around `p`.

use crate::num::{Frac, Int, Sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoint {
    pub x: Int,
    pub y: Int,
}

impl IntPoint {
    pub fn new(x: impl Into<Int>, y: impl Into<Int>) -> Self {
        IntPoint { x: x.into(), y: y.into() }
    }

    pub fn sub(&self, o: &IntPoint) -> IntPoint {
        IntPoint { x: &self.x - &o.x, y: &self.y - &o.y }
    }

    pub fn dot(&self, o: &IntPoint) -> Int {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &IntPoint) -> Int {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> Int {
        self.dot(self)
    }

    /// Quarter turn counterclockwise.
    pub fn rot(&self) -> IntPoint {
        IntPoint { x: -&self.y, y: self.x.clone() }
    }

    pub fn scale(&self, k: &Int) -> IntPoint {
        IntPoint { x: &self.x * k, y: &self.y * k }
    }

    pub fn add(&self, o: &IntPoint) -> IntPoint {
        IntPoint { x: &self.x + &o.x, y: &self.y + &o.y }
    }
}

/// Sign of the signed area of `a, b, c`; positive when counterclockwise.
pub fn orient(a: &IntPoint, b: &IntPoint, c: &IntPoint) -> Sign {
    b.sub(a).cross(&c.sub(a)).sign()
}

/// Positive when `d` lies strictly inside the circle through `a, b, c`
/// given that `a, b, c` is counterclockwise.
pub fn incircle(a: &IntPoint, b: &IntPoint, c: &IntPoint, d: &IntPoint) -> Sign {
    let (ad, bd, cd) = (a.sub(d), b.sub(d), c.sub(d));
    let (al, bl, cl) = (ad.norm2(), bd.norm2(), cd.norm2());
    let det = &al * &bd.cross(&cd) - &bl * &ad.cross(&cd) + &cl * &ad.cross(&bd);
    det.sign()
}

pub fn dist2(a: &IntPoint, b: &IntPoint) -> Int {
    a.sub(b).norm2()
}

/// Where the ray `p + t * dir` meets the bisector of `p` and `q`, as the
/// ray parameter. `None` when the bisector is parallel or behind.
pub fn ray_hit(p: &IntPoint, dir: &IntPoint, q: &IntPoint) -> Option<Frac> {
    let u = q.sub(p);
    let dot = u.dot(dir);
    if !dot.is_positive() {
        return None;
    }
    Some(Frac::new(u.norm2(), dot.double()))
}

/// Which end of the bisector `B(p, q)` a third site constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Bounds `t` from below (the site lies right of `p -> q`).
    Lo,
    /// Bounds `t` from above (the site lies left of `p -> q`).
    Hi,
}

/// The bound that site `r` places on `B(p, q)`: the part of the bisector
/// closer to `p` than to `r`. `None` when `p, q, r` are collinear.
pub fn clip_bound(p: &IntPoint, q: &IntPoint, r: &IntPoint) -> Option<(Side, Frac)> {
    let u = q.sub(p);
    let w = r.sub(p);
    let c = u.cross(&w);
    let k = w.norm2() - w.dot(&u);
    match c.sign() {
        Sign::Zero => None,
        Sign::Positive => Some((Side::Hi, Frac::new(k, c.double()))),
        Sign::Negative => Some((Side::Lo, Frac::new(k, c.double()))),
    }
}

/// Direction from `p` towards the point at parameter `t` on `B(p, q)`.
pub fn direction_to_param(p: &IntPoint, q: &IntPoint, t: &Frac) -> IntPoint {
    let u = q.sub(p);
    u.scale(&t.den).add(&u.rot().scale(&t.num.double()))
}

/// Circumcenter of three non-collinear points as `(X, Y, W)` with the
/// center at `(X / W, Y / W)` and `W != 0`.
pub fn circumcenter(p: &IntPoint, q: &IntPoint, r: &IntPoint) -> (Int, Int, Int) {
    let u = q.sub(p);
    let w = r.sub(p);
    let d = u.cross(&w).double();
    let (uu, ww) = (u.norm2(), w.norm2());
    let nx = &w.y * &uu - &u.y * &ww;
    let ny = &u.x * &ww - &w.x * &uu;
    (&p.x * &d + nx, &p.y * &d + ny, d)
}

/// Is `x` inside the counterclockwise angular arc from `a` to `b` around
/// `center`? Endpoints count as inside. Requires that no three of the
/// points involved are collinear.
pub fn in_ccw_arc(center: &IntPoint, a: &IntPoint, b: &IntPoint, x: &IntPoint) -> bool {
    if x == a || x == b {
        return true;
    }
    if a == b {
        return false;
    }
    if orient(center, a, b) == Sign::Positive {
        orient(center, a, x) == Sign::Positive && orient(center, x, b) == Sign::Positive
    } else {
        !(orient(center, b, x) == Sign::Positive && orient(center, x, a) == Sign::Positive)
    }
}
