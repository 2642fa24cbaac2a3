//! Ordinary tropical lines of finite point sets.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::geometry::{dual_point, Axis, Colour, Point, TropLine};
use crate::newton::build_subdivision_with_origins;
use crate::rational::{self, Rational};

/// Pairwise distinct points, optionally coloured.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    points: Vec<Point>,
    colours: Option<Vec<Colour>>,
}

impl PointConfig {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p) {
                return Err(Error::DuplicatePoint(Box::new(p.clone())));
            }
        }
        Ok(PointConfig { points, colours: None })
    }

    pub fn coloured(points: Vec<(Point, Colour)>) -> Result<Self> {
        let (pts, cols): (Vec<_>, Vec<_>) = points.into_iter().unzip();
        let mut cfg = PointConfig::new(pts)?;
        cfg.colours = Some(cols);
        Ok(cfg)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn colours(&self) -> Option<&[Colour]> {
        self.colours.as_deref()
    }

    pub fn colour_of(&self, i: usize) -> Option<Colour> {
        self.colours.as_ref().map(|c| c[i])
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The dual arrangement, carrying colours over.
    pub fn dual_arrangement(&self) -> Result<Arrangement> {
        let lines = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| TropLine {
                colour: self.colour_of(i),
                ..dual_point(p)
            })
            .collect();
        Arrangement::new(lines)
    }

    /// Indices of the points on `line`.
    pub fn incident(&self, line: &TropLine) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| line.contains(&self.points[i]))
            .collect()
    }

    pub fn has_coaxial_pair(&self) -> bool {
        let n = self.points.len();
        (0..n).any(|i| {
            (i + 1..n).any(|j| {
                crate::geometry::coaxial(&self.points[i], &self.points[j])
                    .ok()
                    .flatten()
                    .is_some()
            })
        })
    }
}

/// `n - 3` if `3 | n`, else `n - 1`.
pub fn ordinary_line_count_lower_bound(n: u32) -> u32 {
    crate::newton::parallelogram_lower_bound(n)
}

/// True if a single tropical line contains every point.
pub fn tropically_collinear(points: &[Point]) -> bool {
    let Ok(arr) = Arrangement::from_centers(points.iter().map(|p| -p)) else {
        return false;
    };
    arr.vertices().iter().any(|x| arr.lines().iter().all(|l| l.contains(x)))
}

/// A line through exactly two of the points.
pub fn determines_ordinary_line(cfg: &PointConfig) -> Result<TropLine> {
    let n = cfg.len();
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    if n == 3 && tropically_collinear(cfg.points()) {
        return Err(Error::NoOrdinaryLineGuaranteed);
    }
    let line = if cfg.has_coaxial_pair() {
        coaxial_branch(cfg.points())
    } else {
        dual_branch(cfg)?
    };
    match line {
        Some(l) if cfg.incident(&l).len() == 2 => Ok(l),
        Some(l) => Err(Error::Internal(alloc::format!(
            "candidate centered {} is not ordinary",
            l.center
        ))),
        None => Err(Error::Internal("no ordinary line found".into())),
    }
}

/// `(x, y) -> (-x, y - x)`, exchanging the `E1` and `E2` directions.
fn sigma(p: &Point) -> Point {
    Point::new(-&p.x, &p.y - &p.x)
}

/// `(x, y) -> (x - y, -y)`, exchanging the `E1` and `E3` directions.
fn tau(p: &Point) -> Point {
    Point::new(&p.x - &p.y, -&p.y)
}

/// Lines through the two topmost points of some class of points sharing an axis, one per axis and class,
/// each avoiding all other points. Returns the candidate with the smallest center.
pub fn coaxial_branch(points: &[Point]) -> Option<TropLine> {
    let mut best: Option<Point> = None;
    for axis in Axis::ALL {
        let map = |p: &Point| match axis {
            Axis::E1 => p.clone(),
            Axis::E2 => sigma(p),
            Axis::E3 => tau(p),
        };
        let mapped: Vec<Point> = points.iter().map(map).collect();
        for c in e1_candidates(&mapped) {
            let c = map(&c);
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        }
    }
    best.map(TropLine::new)
}

/// Candidate centers for lines through the top two points of each `E1` class.
fn e1_candidates(points: &[Point]) -> Vec<Point> {
    let mut classes: BTreeMap<Rational, Vec<&Point>> = BTreeMap::new();
    for p in points {
        classes.entry(&p.x - &p.y).or_default().push(p);
    }
    let mut out = Vec::new();
    for class in classes.values_mut() {
        if class.len() < 2 {
            continue;
        }
        class.sort();
        let q1 = class[class.len() - 2];
        let mut blocked: Vec<Rational> = Vec::new();
        for p in &class[..class.len() - 2] {
            blocked.push(&q1.x - &p.x);
        }
        for p in points {
            if &p.x - &p.y == &q1.x - &q1.y {
                continue;
            }
            let s = &q1.y - &p.y;
            if s.is_positive() && p.x <= &q1.x - &s {
                blocked.push(s);
            }
            let s = &q1.x - &p.x;
            if s.is_positive() && p.y <= &q1.y - &s {
                blocked.push(s);
            }
        }
        let eps = blocked
            .into_iter()
            .filter(|s| s.is_positive())
            .min()
            .map(|s| s / rational::int(2))
            .unwrap_or_else(rational::one);
        debug_assert!(!eps.is_zero());
        out.push(q1.along(Axis::E1, &-eps));
    }
    out
}

/// Ordinary lines dual to the parallelograms of the dual subdivision, sorted by center.
pub fn ordinary_lines_via_duality(cfg: &PointConfig) -> Result<Vec<TropLine>> {
    let (sub, origins) = build_subdivision_with_origins(&cfg.dual_arrangement()?)?;
    let mut out: Vec<TropLine> = Vec::new();
    for (f, x) in sub.faces().iter().zip(origins) {
        if f.profile()?.is_parallelogram() {
            out.push(TropLine::new(-&x));
        }
    }
    out.sort();
    Ok(out)
}

fn dual_branch(cfg: &PointConfig) -> Result<Option<TropLine>> {
    Ok(ordinary_lines_via_duality(cfg)?.into_iter().next())
}
