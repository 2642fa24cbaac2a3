//! Polyhedral subdivisions of the lattice triangle `Δ_n`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arrangement::LocalProfile;
use crate::error::{Error, Result};
use crate::lattice::{angle_cmp, EdgeDir, LatticePoint};

/// A segment between two vertices of a subdivision, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub a: LatticePoint,
    pub b: LatticePoint,
}

impl Edge {
    pub fn new(p: LatticePoint, q: LatticePoint) -> Self {
        if p <= q {
            Edge { a: p, b: q }
        } else {
            Edge { a: q, b: p }
        }
    }

    pub fn lattice_length(&self) -> i64 {
        (self.b - self.a).lattice_length()
    }

    /// Direction of `a -> b`.
    pub fn dir(&self) -> Option<EdgeDir> {
        EdgeDir::classify(self.b - self.a).map(|(d, _)| d)
    }

    pub fn contains_vertex(&self, v: LatticePoint) -> bool {
        self.a == v || self.b == v
    }

    pub fn other(&self, v: LatticePoint) -> LatticePoint {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

/// A convex polygon given by its corners in counterclockwise order, smallest corner first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub cycle: Vec<LatticePoint>,
}

impl Face {
    /// Normalizes an arbitrary counterclockwise or clockwise cycle: drops repeated and
    /// collinear points, orients counterclockwise, rotates to the smallest corner.
    pub fn from_cycle(points: &[LatticePoint]) -> Result<Face> {
        let mut pts: Vec<LatticePoint> = Vec::with_capacity(points.len());
        for &p in points {
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        if double_area(&pts) < 0 {
            pts.reverse();
        }
        let mut changed = true;
        while changed && pts.len() >= 3 {
            changed = false;
            let k = pts.len();
            for i in 0..k {
                let (p, q, r) = (pts[(i + k - 1) % k], pts[i], pts[(i + 1) % k]);
                if (q - p).cross(r - q) == 0 {
                    pts.remove(i);
                    changed = true;
                    break;
                }
            }
        }
        if pts.len() < 3 {
            return Err(Error::InvalidSubdivision(String::from("degenerate face")));
        }
        let k = pts.len();
        for i in 0..k {
            let (p, q, r) = (pts[i], pts[(i + 1) % k], pts[(i + 2) % k]);
            if (q - p).cross(r - q) <= 0 {
                return Err(Error::InvalidSubdivision(format!(
                    "face through {p}, {q}, {r} is not convex"
                )));
            }
        }
        let start = (0..k).min_by_key(|&i| pts[i]).expect("nonempty");
        pts.rotate_left(start);
        Ok(Face { cycle: pts })
    }

    /// Counterclockwise directed sides.
    pub fn sides(&self) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
        let k = self.cycle.len();
        (0..k).map(move |i| (self.cycle[i], self.cycle[(i + 1) % k]))
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.sides().map(|(p, q)| Edge::new(p, q))
    }

    pub fn double_area(&self) -> i64 {
        double_area(&self.cycle)
    }

    /// Lattice length of the side in each of the six directions (zero if absent),
    /// or `None` if some side is not parallel to any `±ē_i`.
    pub fn side_lengths(&self) -> Option<BTreeMap<EdgeDir, i64>> {
        let mut out: BTreeMap<EdgeDir, i64> = EdgeDir::CCW.iter().map(|d| (*d, 0)).collect();
        for (p, q) in self.sides() {
            let (d, len) = EdgeDir::classify(q - p)?;
            *out.get_mut(&d).expect("all directions present") += len;
        }
        Some(out)
    }

    /// The unique profile `(c, w1, w2, w3)` with `self = P_{c,w1,w2,w3}`.
    pub fn profile(&self) -> Result<LocalProfile> {
        let lens = self
            .side_lengths()
            .ok_or_else(|| Error::NotLinearFace(format!("{:?} has a side in a foreign direction", self.cycle)))?;
        let l = |d: EdgeDir| lens[&d];
        let c1 = l(EdgeDir::E1) - l(EdgeDir::NegE1);
        let c2 = l(EdgeDir::E2) - l(EdgeDir::NegE2);
        let c3 = l(EdgeDir::E3) - l(EdgeDir::NegE3);
        if c1 != c2 || c2 != c3 || c1 < 0 {
            return Err(Error::NotLinearFace(format!(
                "{:?} has side lengths {:?}",
                self.cycle, lens
            )));
        }
        let u = |v: i64| u32::try_from(v).expect("nonnegative length");
        Ok(LocalProfile::new(
            u(c1),
            u(l(EdgeDir::NegE1)),
            u(l(EdgeDir::NegE2)),
            u(l(EdgeDir::NegE3)),
        ))
    }

    pub fn contains_point(&self, p: LatticePoint) -> bool {
        self.sides().all(|(a, b)| (b - a).cross(p - a) >= 0)
    }
}

pub(crate) fn double_area(pts: &[LatticePoint]) -> i64 {
    let k = pts.len();
    (0..k).map(|i| pts[i].cross(pts[(i + 1) % k])).sum()
}

/// Tiling of `Δ_n = {x >= 0, y >= 0, x + y <= n}` by convex lattice polygons meeting face to face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonSubdivision {
    n: u32,
    vertices: BTreeSet<LatticePoint>,
    edges: BTreeSet<Edge>,
    faces: Vec<Face>,
}

impl NewtonSubdivision {
    /// Builds and validates a subdivision from face cycles.
    pub fn from_faces(n: u32, cycles: impl IntoIterator<Item = Vec<LatticePoint>>) -> Result<Self> {
        let mut faces = cycles
            .into_iter()
            .map(|c| Face::from_cycle(&c))
            .collect::<Result<Vec<_>>>()?;
        faces.sort();
        let vertices = faces.iter().flat_map(|f| f.cycle.iter().copied()).collect();
        let edges = faces.iter().flat_map(|f| f.edges()).collect();
        let sub = NewtonSubdivision {
            n,
            vertices,
            edges,
            faces,
        };
        sub.validate()?;
        Ok(sub)
    }

    /// Builds a subdivision by tracing the bounded faces of a planar straight-line graph.
    ///
    /// Segments are split at any endpoint lying in their relative interior.
    pub fn from_edges(n: u32, segments: impl IntoIterator<Item = (LatticePoint, LatticePoint)>) -> Result<Self> {
        let segs: BTreeSet<Edge> = segments
            .into_iter()
            .filter(|(p, q)| p != q)
            .map(|(p, q)| Edge::new(p, q))
            .collect();
        let points: BTreeSet<LatticePoint> = segs.iter().flat_map(|e| [e.a, e.b]).collect();
        let mut adj: BTreeMap<LatticePoint, Vec<LatticePoint>> = BTreeMap::new();
        for e in &segs {
            let d = e.b - e.a;
            let mut inner: Vec<LatticePoint> = points
                .iter()
                .copied()
                .filter(|&p| {
                    let w = p - e.a;
                    p != e.a && p != e.b && d.cross(w) == 0 && {
                        let dot = d.x * w.x + d.y * w.y;
                        dot > 0 && dot < d.x * d.x + d.y * d.y
                    }
                })
                .collect();
            inner.push(e.a);
            inner.push(e.b);
            inner.sort();
            for w in inner.windows(2) {
                adj.entry(w[0]).or_default().push(w[1]);
                adj.entry(w[1]).or_default().push(w[0]);
            }
        }
        for (v, nbrs) in adj.iter_mut() {
            nbrs.sort_by(|a, b| angle_cmp(*a - *v, *b - *v));
            nbrs.dedup();
        }
        let mut used: BTreeSet<(LatticePoint, LatticePoint)> = BTreeSet::new();
        let mut cycles = Vec::new();
        for (&u, nbrs) in &adj {
            for &v in nbrs {
                if used.contains(&(u, v)) {
                    continue;
                }
                let mut cycle = Vec::new();
                let (mut a, mut b) = (u, v);
                while used.insert((a, b)) {
                    cycle.push(a);
                    let around = &adj[&b];
                    let i = around.iter().position(|&w| w == a).expect("symmetric adjacency");
                    let next = around[(i + around.len() - 1) % around.len()];
                    a = b;
                    b = next;
                }
                if double_area(&cycle) > 0 {
                    cycles.push(cycle);
                }
            }
        }
        NewtonSubdivision::from_faces(n, cycles)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertices(&self) -> &BTreeSet<LatticePoint> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn is_boundary_point(&self, p: LatticePoint) -> bool {
        p.x == 0 || p.y == 0 || p.x + p.y == self.n as i64
    }

    pub fn is_boundary_edge(&self, e: &Edge) -> bool {
        let n = self.n as i64;
        (e.a.x == 0 && e.b.x == 0) || (e.a.y == 0 && e.b.y == 0) || (e.a.x + e.a.y == n && e.b.x + e.b.y == n)
    }

    /// The interior edges `E_N`, in sorted order.
    pub fn interior_edges(&self) -> Vec<Edge> {
        self.edges
            .iter()
            .copied()
            .filter(|e| !self.is_boundary_edge(e))
            .collect()
    }

    /// The interior vertices `V_N`, in sorted order.
    pub fn interior_vertices(&self) -> Vec<LatticePoint> {
        self.vertices
            .iter()
            .copied()
            .filter(|v| !self.is_boundary_point(*v))
            .collect()
    }

    /// For each edge, the faces on its left and right when traversed `a -> b`.
    pub fn edge_faces(&self) -> BTreeMap<Edge, [Option<usize>; 2]> {
        let mut out: BTreeMap<Edge, [Option<usize>; 2]> = BTreeMap::new();
        for (i, f) in self.faces.iter().enumerate() {
            for (p, q) in f.sides() {
                let e = Edge::new(p, q);
                let slot = if e.a == p { 0 } else { 1 };
                out.entry(e).or_default()[slot] = Some(i);
            }
        }
        out
    }

    pub fn face_index(&self, cycle_start: LatticePoint, contains: LatticePoint) -> Option<usize> {
        self.faces
            .iter()
            .position(|f| f.cycle[0] == cycle_start && f.cycle.contains(&contains))
    }

    /// Faces whose classification fails are reported as errors.
    pub fn profiles(&self) -> Result<Vec<LocalProfile>> {
        self.faces.iter().map(Face::profile).collect()
    }

    pub fn is_linear(&self) -> bool {
        self.faces.iter().all(|f| f.profile().is_ok())
    }

    pub fn is_semiuniform(&self) -> bool {
        self.faces.iter().all(|f| match f.profile() {
            Ok(p) => is_semiuniform_profile(&p),
            Err(_) => false,
        })
    }

    /// Checks that the faces tile `Δ_n` face to face.
    pub fn validate(&self) -> Result<()> {
        let n = self.n as i64;
        let bad = |m: String| Err(Error::InvalidSubdivision(m));
        if n < 1 {
            return bad(String::from("side length must be positive"));
        }
        for v in &self.vertices {
            if v.x < 0 || v.y < 0 || v.x + v.y > n {
                return bad(format!("vertex {v} outside the triangle"));
            }
        }
        let mut directed: BTreeMap<(LatticePoint, LatticePoint), usize> = BTreeMap::new();
        for f in &self.faces {
            for s in f.sides() {
                *directed.entry(s).or_default() += 1;
            }
        }
        let mut boundary_length = 0;
        for (&(p, q), &count) in &directed {
            if count != 1 {
                return bad(format!("side {p}-{q} used by {count} faces"));
            }
            let e = Edge::new(p, q);
            if self.is_boundary_edge(&e) {
                let d = q - p;
                let ccw = (p.y == 0 && q.y == 0 && d.x > 0)
                    || (p.x + p.y == n && q.x + q.y == n && d.x < 0)
                    || (p.x == 0 && q.x == 0 && d.y < 0);
                if !ccw || directed.contains_key(&(q, p)) {
                    return bad(format!("boundary side {p}-{q} badly oriented"));
                }
                boundary_length += d.lattice_length();
            } else if !directed.contains_key(&(q, p)) {
                return bad(format!("interior side {p}-{q} has no matching neighbour side"));
            }
        }
        if boundary_length != 3 * n {
            return bad(format!("boundary length {boundary_length}, expected {}", 3 * n));
        }
        let area: i64 = self.faces.iter().map(Face::double_area).sum();
        if area != n * n {
            return bad(format!("total double area {area}, expected {}", n * n));
        }
        Ok(())
    }
}

pub fn is_semiuniform_profile(p: &LocalProfile) -> bool {
    *p == LocalProfile::new(1, 0, 0, 0) || (p.c == 0 && p.w1 <= 1 && p.w2 <= 1 && p.w3 <= 1 && p.total() >= 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn face(pts: &[(i64, i64)]) -> Face {
        Face::from_cycle(&pts.iter().map(|&(x, y)| lp(x, y)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn classify_shapes() {
        assert_eq!(
            face(&[(0, 0), (1, 0), (0, 1)]).profile(),
            Ok(LocalProfile::new(1, 0, 0, 0))
        );
        assert_eq!(
            face(&[(0, 0), (1, 0), (1, 1), (0, 1)]).profile(),
            Ok(LocalProfile::new(0, 0, 1, 1))
        );
        let hex = face(&[(1, 0), (2, 0), (2, 1), (1, 2), (0, 2), (0, 1)]);
        assert_eq!(hex.profile(), Ok(LocalProfile::new(0, 1, 1, 1)));
        assert_eq!(hex.double_area(), 6);
        let big = face(&[(0, 0), (2, 0), (0, 2)]);
        assert_eq!(big.profile(), Ok(LocalProfile::new(2, 0, 0, 0)));
        assert!(face(&[(0, 0), (1, 0), (0, 2)]).profile().is_err());
        assert!(face(&[(0, 0), (2, 0), (2, 1), (0, 1)]).profile().is_ok());
        assert!(face(&[(0, 0), (1, 0), (1, 1), (0, 2)]).profile().is_ok());
        assert!(face(&[(1, 0), (1, 1), (0, 1)]).profile().is_err());
    }

    #[test]
    fn normalizes_cycles() {
        let f = face(&[(0, 1), (0, 0), (1, 0), (2, 0), (1, 1)]);
        assert_eq!(f.cycle, [lp(0, 0), lp(2, 0), lp(1, 1), lp(0, 1)]);
        let cw = face(&[(0, 0), (0, 1), (1, 0)]);
        assert_eq!(cw.cycle, [lp(0, 0), lp(1, 0), lp(0, 1)]);
    }

    #[test]
    fn trace_and_validate() {
        let s = NewtonSubdivision::from_edges(
            2,
            [
                (lp(0, 0), lp(2, 0)),
                (lp(2, 0), lp(0, 2)),
                (lp(0, 2), lp(0, 0)),
                (lp(1, 0), lp(1, 1)),
                (lp(0, 1), lp(1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(s.faces().len(), 3);
        assert_eq!(s.interior_edges().len(), 2);
        assert!(s.interior_vertices().is_empty());
        assert!(s.is_semiuniform());
    }

    #[test]
    fn rejects_overlaps_and_gaps() {
        let t = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| [lp(a.0, a.1), lp(b.0, b.1), lp(c.0, c.1)].to_vec();
        assert!(NewtonSubdivision::from_faces(1, [t((0, 0), (1, 0), (0, 1))]).is_ok());
        assert!(NewtonSubdivision::from_faces(2, [t((0, 0), (1, 0), (0, 1))]).is_err());
        let full = t((0, 0), (2, 0), (0, 2));
        assert!(NewtonSubdivision::from_faces(2, [full.clone(), t((0, 0), (1, 0), (0, 1))]).is_err());
        let split = [
            t((0, 0), (1, 0), (0, 1)),
            [lp(1, 0), lp(2, 0), lp(0, 2), lp(0, 1)].to_vec(),
        ];
        assert!(NewtonSubdivision::from_faces(2, split).is_ok());
        let t_junction = [
            [lp(0, 0), lp(3, 0), lp(2, 1), lp(0, 1)].to_vec(),
            t((0, 1), (1, 1), (0, 2)),
            [lp(1, 1), lp(2, 1), lp(0, 3), lp(0, 2)].to_vec(),
        ];
        assert!(NewtonSubdivision::from_faces(3, t_junction).is_err());
    }
}
