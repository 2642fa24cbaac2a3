//! Finite arrangements of tropical lines.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{intersect, line_contains, Axis, Colour, Intersection, Point, TropLine};

/// Number of lines centered at a point (`c`) and passing through it on the
/// open `E1`, `E2`, `E3` rays (`w1`, `w2`, `w3`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LocalProfile {
    pub c: u32,
    pub w1: u32,
    pub w2: u32,
    pub w3: u32,
}

impl LocalProfile {
    pub const fn new(c: u32, w1: u32, w2: u32, w3: u32) -> Self {
        LocalProfile { c, w1, w2, w3 }
    }

    pub fn w(&self, axis: Axis) -> u32 {
        match axis {
            Axis::E1 => self.w1,
            Axis::E2 => self.w2,
            Axis::E3 => self.w3,
        }
    }

    pub fn total(&self) -> u32 {
        self.c + self.w1 + self.w2 + self.w3
    }

    pub fn as_array(&self) -> [u32; 4] {
        [self.c, self.w1, self.w2, self.w3]
    }

    /// Twice the area of the cell `P_{c,w1,w2,w3}`.
    pub fn double_area(&self) -> u64 {
        let (c, a, b, d) = (self.c as u64, self.w1 as u64, self.w2 as u64, self.w3 as u64);
        c * c + 2 * c * (a + b + d) + 2 * (a * b + a * d + b * d)
    }

    pub fn is_triangle(&self) -> bool {
        self.c > 0 && self.w1 == 0 && self.w2 == 0 && self.w3 == 0
    }

    pub fn is_parallelogram(&self) -> bool {
        self.c == 0 && [self.w1, self.w2, self.w3].iter().filter(|w| **w > 0).count() == 2
    }

    pub fn is_hexagon(&self) -> bool {
        self.c == 0 && self.w1 > 0 && self.w2 > 0 && self.w3 > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    lines: Vec<TropLine>,
}

impl Arrangement {
    pub fn new(lines: Vec<TropLine>) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::EmptyArrangement);
        }
        let mut seen = BTreeSet::new();
        for l in &lines {
            if !seen.insert(&l.center) {
                return Err(Error::DuplicateCenter(Box::new(l.center.clone())));
            }
        }
        let coloured = lines.iter().filter(|l| l.colour.is_some()).count();
        if coloured != 0 && coloured != lines.len() {
            return Err(Error::MixedColouring);
        }
        Ok(Arrangement { lines })
    }

    pub fn from_centers(centers: impl IntoIterator<Item = Point>) -> Result<Self> {
        Arrangement::new(centers.into_iter().map(TropLine::new).collect())
    }

    pub fn lines(&self) -> &[TropLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn is_coloured(&self) -> bool {
        self.lines[0].colour.is_some()
    }

    pub fn translate(&self, v: &Point) -> Arrangement {
        Arrangement {
            lines: self
                .lines
                .iter()
                .map(|l| TropLine {
                    center: &l.center + v,
                    colour: l.colour,
                })
                .collect(),
        }
    }

    pub fn swap_colours(&self) -> Arrangement {
        Arrangement {
            lines: self
                .lines
                .iter()
                .map(|l| TropLine {
                    center: l.center.clone(),
                    colour: l.colour.map(Colour::swap),
                })
                .collect(),
        }
    }

    /// True if some two centers are coaxial.
    pub fn has_coaxial_centers(&self) -> bool {
        let n = self.lines.len();
        (0..n).any(|i| {
            (i + 1..n).any(|j| {
                crate::geometry::coaxial(&self.lines[i].center, &self.lines[j].center)
                    .ok()
                    .flatten()
                    .is_some()
            })
        })
    }

    /// Centers together with all isolated pairwise intersection points.
    pub fn vertices(&self) -> BTreeSet<Point> {
        let mut out: BTreeSet<Point> = self.lines.iter().map(|l| l.center.clone()).collect();
        for (i, a) in self.lines.iter().enumerate() {
            for b in &self.lines[i + 1..] {
                if let Ok(Intersection::Point(p)) = intersect(a, b) {
                    out.insert(p);
                }
            }
        }
        out
    }

    pub fn lines_through<'a>(&'a self, p: &'a Point) -> impl Iterator<Item = &'a TropLine> + 'a {
        self.lines.iter().filter(move |l| l.contains(p))
    }

    pub fn local_profile(&self, p: &Point) -> Result<LocalProfile> {
        let mut prof = LocalProfile::default();
        for l in &self.lines {
            match line_contains(l, p) {
                None => {}
                Some(axes) if axes.len() == 3 => prof.c += 1,
                Some(axes) => match axes.iter().next().expect("nonempty") {
                    Axis::E1 => prof.w1 += 1,
                    Axis::E2 => prof.w2 += 1,
                    Axis::E3 => prof.w3 += 1,
                },
            }
        }
        if prof.total() == 0 {
            return Err(Error::NotOnArrangement(Box::new(p.clone())));
        }
        Ok(prof)
    }

    /// Vertices lying on exactly two lines.
    pub fn ordinary_points(&self) -> BTreeSet<Point> {
        self.vertices()
            .into_iter()
            .filter(|p| self.lines_through(p).count() == 2)
            .collect()
    }

    /// Vertices on at least two lines, all of one colour.
    pub fn monochromatic_points(&self) -> Result<BTreeSet<Point>> {
        if !self.is_coloured() {
            return Err(Error::Uncoloured);
        }
        Ok(self
            .vertices()
            .into_iter()
            .filter(|p| {
                let cols: Vec<_> = self.lines_through(p).map(|l| l.colour).collect();
                cols.len() >= 2 && cols.iter().all(|c| *c == cols[0])
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(cs: &[(i64, i64)]) -> Arrangement {
        Arrangement::from_centers(cs.iter().map(|&(x, y)| Point::int(x, y))).unwrap()
    }

    #[test]
    fn vertex_sets() {
        let a = arr(&[(0, 0), (2, 1)]);
        let v: Vec<_> = a.vertices().into_iter().collect();
        assert_eq!(v, [Point::int(0, 0), Point::int(1, 1), Point::int(2, 1)]);
        assert_eq!(arr(&[(0, 0)]).vertices().len(), 1);
        assert_eq!(arr(&[(0, 0), (2, 1), (5, -3)]).vertices().len(), 6);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Arrangement::new(Vec::new()), Err(Error::EmptyArrangement));
        assert_eq!(
            Arrangement::from_centers([Point::int(1, 1), Point::int(1, 1)]),
            Err(Error::DuplicateCenter(Box::new(Point::int(1, 1))))
        );
        let mixed = [
            TropLine::new(Point::int(0, 0)),
            TropLine::coloured(Point::int(1, 3), Colour::Red),
        ];
        assert_eq!(Arrangement::new(mixed.to_vec()), Err(Error::MixedColouring));
    }

    #[test]
    fn profiles() {
        let a = arr(&[(0, 0)]);
        assert_eq!(a.local_profile(&Point::int(0, 0)), Ok(LocalProfile::new(1, 0, 0, 0)));
        // E1 ray of (0,0) crosses the E3 ray of (3,5) at (3,3)
        let a = arr(&[(0, 0), (3, 5)]);
        assert_eq!(a.local_profile(&Point::int(3, 3)), Ok(LocalProfile::new(0, 1, 0, 1)));
        // center (0,0) on the E2 ray of (4,0)
        let a = arr(&[(0, 0), (4, 0)]);
        assert_eq!(a.local_profile(&Point::int(0, 0)), Ok(LocalProfile::new(1, 0, 1, 0)));
        assert!(a.local_profile(&Point::int(1, 5)).is_err());
    }

    #[test]
    fn ordinary_and_monochromatic() {
        let a = arr(&[(0, 0), (2, 1)]);
        assert_eq!(a.ordinary_points().into_iter().collect::<Vec<_>>(), [Point::int(1, 1)]);
        let red = |x, y| TropLine::coloured(Point::int(x, y), Colour::Red);
        let blue = |x, y| TropLine::coloured(Point::int(x, y), Colour::Blue);
        let a = Arrangement::new([red(0, 0), red(2, 1)].to_vec()).unwrap();
        assert_eq!(a.monochromatic_points().unwrap().len(), 1);
        let a = Arrangement::new([red(0, 0), blue(2, 1)].to_vec()).unwrap();
        assert!(a.monochromatic_points().unwrap().is_empty());
        assert_eq!(arr(&[(0, 0)]).monochromatic_points(), Err(Error::Uncoloured));
    }
}
