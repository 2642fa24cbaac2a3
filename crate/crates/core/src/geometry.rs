//! Points, tropical lines, axes, duality and incidence.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point::new(rational::int(x), rational::int(y))
    }

    pub fn origin() -> Self {
        Point::int(0, 0)
    }

    pub fn scale(&self, s: &Rational) -> Point {
        Point::new(&self.x * s, &self.y * s)
    }

    /// `self + s * axis.direction()`.
    pub fn along(&self, axis: Axis, s: &Rational) -> Point {
        let (dx, dy) = axis.direction();
        Point::new(&self.x + s * rational::int(dx), &self.y + s * rational::int(dy))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-&self.x, -&self.y)
    }
}

/// One of the three ray directions of a tropical line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    E1,
    E2,
    E3,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::E1, Axis::E2, Axis::E3];

    /// `(1,1)`, `(-1,0)` and `(0,-1)` respectively.
    pub fn direction(self) -> (i64, i64) {
        match self {
            Axis::E1 => (1, 1),
            Axis::E2 => (-1, 0),
            Axis::E3 => (0, -1),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Axis::E1 => 0,
            Axis::E2 => 1,
            Axis::E3 => 2,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axis::E1 => "E1",
            Axis::E2 => "E2",
            Axis::E3 => "E3",
        };
        f.write_str(s)
    }
}

/// A subset of `{E1, E2, E3}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AxisSet(u8);

impl AxisSet {
    pub const EMPTY: AxisSet = AxisSet(0);
    pub const FULL: AxisSet = AxisSet(0b111);

    pub fn single(a: Axis) -> Self {
        AxisSet(1 << a.index())
    }

    pub fn contains(self, a: Axis) -> bool {
        self.0 & (1 << a.index()) != 0
    }

    pub fn insert(&mut self, a: Axis) {
        self.0 |= 1 << a.index();
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Axis> {
        Axis::ALL.into_iter().filter(move |a| self.contains(*a))
    }
}

impl fmt::Debug for AxisSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Axis> for AxisSet {
    fn from_iter<I: IntoIterator<Item = Axis>>(iter: I) -> Self {
        let mut s = AxisSet::EMPTY;
        for a in iter {
            s.insert(a);
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub fn swap(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Colour::Red => "red",
            Colour::Blue => "blue",
        })
    }
}

/// The corner locus of `max{x - a, y - b, 0}`, centered at `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TropLine {
    pub center: Point,
    pub colour: Option<Colour>,
}

impl TropLine {
    pub fn new(center: Point) -> Self {
        TropLine { center, colour: None }
    }

    pub fn coloured(center: Point, colour: Colour) -> Self {
        TropLine {
            center,
            colour: Some(colour),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        line_contains(self, p).is_some()
    }
}

/// The set of axes whose closed ray contains `p`, or `None` if `p` is off the line.
pub fn line_contains(line: &TropLine, p: &Point) -> Option<AxisSet> {
    let d = p - &line.center;
    if d.x.is_zero() && d.y.is_zero() {
        return Some(AxisSet::FULL);
    }
    ray_of(&d).map(AxisSet::single)
}

/// The axis whose open ray from the origin contains the nonzero vector `d`.
pub(crate) fn ray_of(d: &Point) -> Option<Axis> {
    if d.x == d.y && d.x.is_positive() {
        Some(Axis::E1)
    } else if d.y.is_zero() && d.x.is_negative() {
        Some(Axis::E2)
    } else if d.x.is_zero() && d.y.is_negative() {
        Some(Axis::E3)
    } else {
        None
    }
}

/// The axis shared by two distinct points, if any.
pub fn coaxial(p: &Point, q: &Point) -> Result<Option<Axis>> {
    if p == q {
        return Err(Error::DegeneratePair);
    }
    Ok(if p.y == q.y {
        Some(Axis::E2)
    } else if p.x == q.x {
        Some(Axis::E3)
    } else if &p.x - &q.x == &p.y - &q.y {
        Some(Axis::E1)
    } else {
        None
    })
}

pub fn dual_point(p: &Point) -> TropLine {
    TropLine::new(-p)
}

pub fn dual_line(l: &TropLine) -> Point {
    -&l.center
}

/// The lines through two coaxial points.
///
/// Every member has center `apex - s * axis.direction()` for some `s >= 0`;
/// the apex is the point from which the other is reached along `axis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoaxialFamily {
    pub axis: Axis,
    pub apex: Point,
}

impl CoaxialFamily {
    /// The member centered at the apex.
    pub fn canonical(&self) -> TropLine {
        TropLine::new(self.apex.clone())
    }

    pub fn member(&self, s: &Rational) -> TropLine {
        TropLine::new(self.apex.along(self.axis, &-s))
    }

    pub fn contains_center(&self, c: &Point) -> bool {
        let d = &self.apex - c;
        (d.x.is_zero() && d.y.is_zero()) || ray_of(&d) == Some(self.axis)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineThrough {
    Unique(TropLine),
    Coaxial(CoaxialFamily),
}

pub fn line_through(p: &Point, q: &Point) -> Result<LineThrough> {
    if let Some(axis) = coaxial(p, q)? {
        let (dx, dy) = axis.direction();
        let d = q - p;
        // q = p + t * dir with t > 0 means q lies on p's ray, so p is the apex.
        let t_pos = if dx != 0 {
            (&d.x * rational::int(dx)).is_positive()
        } else {
            (&d.y * rational::int(dy)).is_positive()
        };
        let apex = if t_pos { p.clone() } else { q.clone() };
        return Ok(LineThrough::Coaxial(CoaxialFamily { axis, apex }));
    }
    let candidates = axis_assignment_centers(p, q);
    match candidates.as_slice() {
        [c] => Ok(LineThrough::Unique(TropLine::new(c.clone()))),
        _ => Err(Error::Internal(alloc::format!(
            "{} consistent centers for non-coaxial pair",
            candidates.len()
        ))),
    }
}

/// Centers `c` with `p = c + s*e_i`, `q = c + t*e_j` for `s, t >= 0` and `i != j`.
fn axis_assignment_centers(p: &Point, q: &Point) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    for i in Axis::ALL {
        for j in Axis::ALL {
            if i == j {
                continue;
            }
            let (a1, a2) = i.direction();
            let (b1, b2) = j.direction();
            // s*e_i - t*e_j = p - q
            let det = a1 * (-b2) - (-b1) * a2;
            let d = p - q;
            let det = rational::int(det);
            let s = (&d.x * rational::int(-b2) - rational::int(-b1) * &d.y) / &det;
            let t = (rational::int(a1) * &d.y - rational::int(a2) * &d.x) / &det;
            if s.is_negative() || t.is_negative() {
                continue;
            }
            let c = p.along(i, &-s);
            let line = TropLine::new(c.clone());
            if line.contains(p) && line.contains(q) && !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

/// How two lines with distinct centers meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection {
    Point(Point),
    /// The lines share the closed ray `start + t * axis.direction()`, `t >= 0`;
    /// `start` is the center lying on the other line's ray.
    Overlap {
        axis: Axis,
        start: Point,
        other: Point,
    },
}

pub fn intersect(l1: &TropLine, l2: &TropLine) -> Result<Intersection> {
    if l1.center == l2.center {
        return Err(Error::IdenticalLines);
    }
    match line_through(&dual_line(l1), &dual_line(l2))? {
        LineThrough::Unique(l) => Ok(Intersection::Point(dual_line(&l))),
        LineThrough::Coaxial(_) => {
            let axis = coaxial(&l1.center, &l2.center)?.expect("coaxial centers");
            let (start, other) = if l2.contains(&l1.center) {
                (l1.center.clone(), l2.center.clone())
            } else {
                (l2.center.clone(), l1.center.clone())
            };
            Ok(Intersection::Overlap { axis, start, other })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn pt(x: i64, y: i64) -> Point {
        Point::int(x, y)
    }

    #[test]
    fn containment() {
        let l = TropLine::new(pt(0, 0));
        assert_eq!(line_contains(&l, &pt(2, 2)), Some(AxisSet::single(Axis::E1)));
        assert_eq!(line_contains(&l, &pt(0, 0)), Some(AxisSet::FULL));
        assert_eq!(line_contains(&l, &pt(1, 2)), None);
        let l = TropLine::new(pt(1, 0));
        assert_eq!(line_contains(&l, &pt(2, 1)), Some(AxisSet::single(Axis::E1)));
    }

    #[test]
    fn coaxial_cases() {
        assert_eq!(coaxial(&pt(0, 0), &pt(3, 3)), Ok(Some(Axis::E1)));
        assert_eq!(coaxial(&pt(0, 0), &pt(5, 0)), Ok(Some(Axis::E2)));
        assert_eq!(coaxial(&pt(0, 0), &pt(0, -5)), Ok(Some(Axis::E3)));
        assert_eq!(coaxial(&pt(0, 0), &pt(2, 1)), Ok(None));
        assert_eq!(coaxial(&pt(1, 1), &pt(1, 1)), Err(Error::DegeneratePair));
    }

    #[test]
    fn duality() {
        assert_eq!(dual_point(&pt(1, 2)).center, pt(-1, -2));
        let p = Point::new(frac(1, 3), frac(-2, 7));
        assert_eq!(dual_line(&dual_point(&p)), p);
    }

    #[test]
    fn through_generic_pair() {
        assert_eq!(
            line_through(&pt(0, 0), &pt(2, 1)),
            Ok(LineThrough::Unique(TropLine::new(pt(1, 0))))
        );
    }

    #[test]
    fn through_coaxial_pair() {
        match line_through(&pt(0, 0), &pt(-3, 0)).unwrap() {
            LineThrough::Coaxial(f) => {
                assert_eq!(f.axis, Axis::E2);
                assert_eq!(f.apex, pt(0, 0));
                assert!(f.member(&rational::int(2)).contains(&pt(-3, 0)));
                assert!(f.contains_center(&pt(4, 0)));
            }
            other => panic!("{other:?}"),
        }
        match line_through(&pt(1, 1), &pt(0, 0)).unwrap() {
            LineThrough::Coaxial(f) => {
                assert_eq!(f.axis, Axis::E1);
                assert_eq!(f.apex, pt(0, 0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn intersections() {
        let a = TropLine::new(pt(0, 0));
        assert_eq!(
            intersect(&a, &TropLine::new(pt(2, 1))),
            Ok(Intersection::Point(pt(1, 1)))
        );
        assert_eq!(
            intersect(&a, &TropLine::new(pt(0, 5))),
            Ok(Intersection::Overlap {
                axis: Axis::E3,
                start: pt(0, 0),
                other: pt(0, 5)
            })
        );
        assert_eq!(
            intersect(&a, &TropLine::new(pt(1, 0))),
            Ok(Intersection::Overlap {
                axis: Axis::E2,
                start: pt(0, 0),
                other: pt(1, 0)
            })
        );
        assert_eq!(intersect(&a, &a.clone()), Err(Error::IdenticalLines));
    }
}
