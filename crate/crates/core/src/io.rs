//! Point files and edge records.
//!
//! A point file has one site per line, `x y`, each coordinate an integer,
//! a decimal (`-1.25`) or a fraction (`3/7`). `#` starts a comment; blank
//! lines are skipped. Site indices are 0-based line order of the points.

use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geom::{Point, PointSet};

fn parse_number(tok: &str) -> Option<BigRational> {
    if let Some((p, q)) = tok.split_once('/') {
        let (p, q) = (BigInt::from_str(p).ok()?, BigInt::from_str(q).ok()?);
        return (!q.is_zero()).then(|| BigRational::new(p, q));
    }
    let (neg, body) = match tok.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, tok.strip_prefix('+').unwrap_or(tok)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !digits(int) || !digits(frac) {
        return None;
    }
    let mut num = BigInt::from_str(&format!("0{int}{frac}")).ok()?;
    if neg {
        num = -num;
    }
    let den = num_traits::pow(BigInt::from(10), frac.len());
    Some(BigRational::new(num, den))
}

/// Parses the contents of a point file.
pub fn parse_points(text: &str) -> Result<PointSet> {
    let mut sites = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let err = |msg: String| Error::Parse { line: k + 1, msg };
        if toks.len() != 2 {
            return Err(err(format!("expected two coordinates, found {}", toks.len())));
        }
        let x = parse_number(toks[0]).ok_or_else(|| err(format!("bad number {:?}", toks[0])))?;
        let y = parse_number(toks[1]).ok_or_else(|| err(format!("bad number {:?}", toks[1])))?;
        sites.push(Point::new(x, y));
    }
    Ok(PointSet::new(sites))
}

pub fn read_points(path: &Path) -> Result<PointSet> {
    parse_points(&std::fs::read_to_string(path)?)
}

/// Writes a point file that [`parse_points`] reads back exactly.
pub fn write_points(ps: &PointSet, mut w: impl Write) -> Result<()> {
    for p in ps.sites() {
        writeln!(w, "{p}")?;
    }
    Ok(())
}
