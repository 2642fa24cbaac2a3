//! Integer lattice points and the six edge directions of linear subdivisions.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use crate::geometry::Axis;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    pub fn cross(self, o: LatticePoint) -> i64 {
        self.x * o.y - self.y * o.x
    }

    /// Lattice length of the segment `0 -> self`.
    pub fn lattice_length(self) -> i64 {
        self.x.abs().gcd(&self.y.abs())
    }

    /// `(y, -x)`: the clockwise quarter turn.
    pub fn rot_cw(self) -> LatticePoint {
        LatticePoint::new(self.y, -self.x)
    }

    /// `(-y, x)`: the counterclockwise quarter turn.
    pub fn rot_ccw(self) -> LatticePoint {
        LatticePoint::new(-self.y, self.x)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.x, -self.y)
    }
}

impl Mul<LatticePoint> for i64 {
    type Output = LatticePoint;
    fn mul(self, p: LatticePoint) -> LatticePoint {
        LatticePoint::new(self * p.x, self * p.y)
    }
}

/// Counterclockwise angular order of nonzero vectors, starting at the positive x-axis.
pub fn angle_cmp(a: LatticePoint, b: LatticePoint) -> Ordering {
    let half = |v: LatticePoint| if v.y > 0 || (v.y == 0 && v.x > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&a.cross(b)))
}

/// `ē1 = (-1,1)`, `ē2 = (0,-1)`, `ē3 = (1,0)` and their negatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeDir {
    E1,
    E2,
    E3,
    NegE1,
    NegE2,
    NegE3,
}

impl EdgeDir {
    /// In counterclockwise angular order.
    pub const CCW: [EdgeDir; 6] = [
        EdgeDir::E3,
        EdgeDir::NegE2,
        EdgeDir::E1,
        EdgeDir::NegE3,
        EdgeDir::E2,
        EdgeDir::NegE1,
    ];

    pub fn vector(self) -> LatticePoint {
        match self {
            EdgeDir::E1 => LatticePoint::new(-1, 1),
            EdgeDir::E2 => LatticePoint::new(0, -1),
            EdgeDir::E3 => LatticePoint::new(1, 0),
            EdgeDir::NegE1 => LatticePoint::new(1, -1),
            EdgeDir::NegE2 => LatticePoint::new(0, 1),
            EdgeDir::NegE3 => LatticePoint::new(-1, 0),
        }
    }

    pub fn positive(axis: Axis) -> EdgeDir {
        match axis {
            Axis::E1 => EdgeDir::E1,
            Axis::E2 => EdgeDir::E2,
            Axis::E3 => EdgeDir::E3,
        }
    }

    pub fn negative(axis: Axis) -> EdgeDir {
        EdgeDir::positive(axis).reverse()
    }

    pub fn axis(self) -> Axis {
        match self {
            EdgeDir::E1 | EdgeDir::NegE1 => Axis::E1,
            EdgeDir::E2 | EdgeDir::NegE2 => Axis::E2,
            EdgeDir::E3 | EdgeDir::NegE3 => Axis::E3,
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, EdgeDir::E1 | EdgeDir::E2 | EdgeDir::E3)
    }

    pub fn reverse(self) -> EdgeDir {
        match self {
            EdgeDir::E1 => EdgeDir::NegE1,
            EdgeDir::E2 => EdgeDir::NegE2,
            EdgeDir::E3 => EdgeDir::NegE3,
            EdgeDir::NegE1 => EdgeDir::E1,
            EdgeDir::NegE2 => EdgeDir::E2,
            EdgeDir::NegE3 => EdgeDir::E3,
        }
    }

    /// Direction and lattice length of a nonzero vector, if it is a multiple of some `±ē_i`.
    pub fn classify(v: LatticePoint) -> Option<(EdgeDir, i64)> {
        let len = v.lattice_length();
        if len == 0 {
            return None;
        }
        let u = LatticePoint::new(v.x / len, v.y / len);
        EdgeDir::CCW.into_iter().find(|d| d.vector() == u).map(|d| (d, len))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directions() {
        assert_eq!(EdgeDir::classify(LatticePoint::new(-2, 2)), Some((EdgeDir::E1, 2)));
        assert_eq!(EdgeDir::classify(LatticePoint::new(0, 3)), Some((EdgeDir::NegE2, 3)));
        assert_eq!(EdgeDir::classify(LatticePoint::new(1, 1)), None);
        for w in EdgeDir::CCW.windows(2) {
            assert_eq!(angle_cmp(w[0].vector(), w[1].vector()), Ordering::Less);
        }
    }

    #[test]
    fn rotation_matches_axes() {
        for a in Axis::ALL {
            let (x, y) = a.direction();
            assert_eq!(LatticePoint::new(x, y).rot_ccw(), EdgeDir::positive(a).vector());
        }
    }
}
