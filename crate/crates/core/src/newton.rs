//! Newton subdivisions of arrangements, face census and the parallelogram bound.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::arrangement::{Arrangement, LocalProfile};
use crate::error::{Error, Result};
use crate::geometry::{Point, TropLine};
use crate::lattice::LatticePoint;
use crate::subdivision::{Face, NewtonSubdivision};

const fn lp(x: i64, y: i64) -> LatticePoint {
    LatticePoint::new(x, y)
}

/// Convex hull in counterclockwise order without collinear corners.
pub fn convex_hull(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2
            && (lower[lower.len() - 1] - lower[lower.len() - 2]).cross(p - lower[lower.len() - 1]) <= 0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && (upper[upper.len() - 1] - upper[upper.len() - 2]).cross(p - upper[upper.len() - 1]) <= 0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn minkowski(a: &[LatticePoint], b: &[LatticePoint]) -> Vec<LatticePoint> {
    let sums: Vec<LatticePoint> = a.iter().flat_map(|&p| b.iter().map(move |&q| p + q)).collect();
    convex_hull(&sums)
}

/// Convex hull of the gradients of the pieces of `max{x - a, y - b, 0}` maximal at `p`.
pub fn local_newton_cell(line: &TropLine, p: &Point) -> Vec<LatticePoint> {
    let d = p - &line.center;
    let (x, y) = (&d.x, &d.y);
    if x.is_zero() && y.is_zero() {
        vec![lp(0, 0), lp(1, 0), lp(0, 1)]
    } else if x == y && x.is_positive() {
        vec![lp(1, 0), lp(0, 1)]
    } else if y.is_zero() && x.is_negative() {
        vec![lp(0, 0), lp(0, 1)]
    } else if x.is_zero() && y.is_negative() {
        vec![lp(0, 0), lp(1, 0)]
    } else if x > y && x.is_positive() {
        vec![lp(1, 0)]
    } else if y > x && y.is_positive() {
        vec![lp(0, 1)]
    } else {
        vec![lp(0, 0)]
    }
}

/// The Newton subdivision dual to `arr`.
pub fn build_subdivision(arr: &Arrangement) -> Result<NewtonSubdivision> {
    build_subdivision_with_origins(arr).map(|(s, _)| s)
}

/// As [`build_subdivision`], also returning the arrangement vertex dual to each face.
pub fn build_subdivision_with_origins(arr: &Arrangement) -> Result<(NewtonSubdivision, Vec<Point>)> {
    let n = u32::try_from(arr.len()).map_err(|_| Error::Internal("too many lines".into()))?;
    let mut by_face: BTreeMap<Face, Point> = BTreeMap::new();
    for p in arr.vertices() {
        let mut cell = vec![lp(0, 0)];
        for l in arr.lines() {
            cell = minkowski(&cell, &local_newton_cell(l, &p));
        }
        let face = Face::from_cycle(&cell)?;
        if let Some(q) = by_face.insert(face, p.clone()) {
            return Err(Error::Internal(alloc::format!("vertices {q} and {p} share a cell")));
        }
    }
    let sub = NewtonSubdivision::from_faces(n, by_face.keys().map(|f| f.cycle.clone()))?;
    let origins = sub.faces().iter().map(|f| by_face[f].clone()).collect();
    Ok((sub, origins))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Census {
    pub triangles: usize,
    pub parallelograms: usize,
    pub hexagons: usize,
    pub other: usize,
}

/// Counts faces by shape in a semiuniform subdivision.
pub fn face_census(sub: &NewtonSubdivision) -> Result<Census> {
    if !sub.is_semiuniform() {
        return Err(Error::NotSemiuniform);
    }
    let mut c = Census::default();
    for p in sub.profiles()? {
        if p.is_triangle() {
            c.triangles += 1;
        } else if p.is_parallelogram() {
            c.parallelograms += 1;
        } else if p.is_hexagon() {
            c.hexagons += 1;
        } else {
            c.other += 1;
        }
    }
    Ok(c)
}

/// `n - 3` if `3 | n`, else `n - 1`.
pub fn parallelogram_lower_bound(n: u32) -> u32 {
    if n.is_multiple_of(3) {
        n - 3
    } else {
        n - 1
    }
}

pub fn check_parallelogram_bound(sub: &NewtonSubdivision) -> Result<bool> {
    let c = face_census(sub)?;
    Ok(c.parallelograms as u32 >= parallelogram_lower_bound(sub.n()))
}

/// The small lattice triangles of `Δ_n`: `Up(i,j) = conv{(i,j),(i+1,j),(i,j+1)}` and
/// `Down(i,j) = conv{(i+1,j),(i,j+1),(i+1,j+1)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    Up(i64, i64),
    Down(i64, i64),
}

impl Cell {
    fn in_triangle(self, n: i64) -> bool {
        match self {
            Cell::Up(i, j) => i >= 0 && j >= 0 && i + j < n,
            Cell::Down(i, j) => i >= 0 && j >= 0 && i + j < n - 1,
        }
    }
}

/// A semiuniform tile as the set of small triangles it covers.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Tile {
    cells: Vec<Cell>,
    corners: Vec<LatticePoint>,
}

fn hexagon_at(x: i64, y: i64) -> Tile {
    Tile {
        cells: vec![
            Cell::Up(x, y),
            Cell::Up(x - 1, y),
            Cell::Up(x, y - 1),
            Cell::Down(x - 1, y - 1),
            Cell::Down(x, y - 1),
            Cell::Down(x - 1, y),
        ],
        corners: vec![
            lp(x, y - 1),
            lp(x + 1, y - 1),
            lp(x + 1, y),
            lp(x, y + 1),
            lp(x - 1, y + 1),
            lp(x - 1, y),
        ],
    }
}

fn triangle_at(i: i64, j: i64) -> Tile {
    Tile {
        cells: vec![Cell::Up(i, j)],
        corners: vec![lp(i, j), lp(i + 1, j), lp(i, j + 1)],
    }
}

/// The three parallelograms containing `Down(i,j)`, paired with `Up(i,j)`, `Up(i+1,j)`, `Up(i,j+1)`.
fn parallelograms_with_down(i: i64, j: i64) -> [Tile; 3] {
    [
        Tile {
            cells: vec![Cell::Down(i, j), Cell::Up(i, j)],
            corners: vec![lp(i, j), lp(i + 1, j), lp(i + 1, j + 1), lp(i, j + 1)],
        },
        Tile {
            cells: vec![Cell::Down(i, j), Cell::Up(i + 1, j)],
            corners: vec![lp(i + 1, j), lp(i + 2, j), lp(i + 1, j + 1), lp(i, j + 1)],
        },
        Tile {
            cells: vec![Cell::Down(i, j), Cell::Up(i, j + 1)],
            corners: vec![lp(i + 1, j), lp(i + 1, j + 1), lp(i, j + 2), lp(i, j + 1)],
        },
    ]
}

fn all_tiles(n: i64) -> Vec<Tile> {
    let mut tiles = Vec::new();
    for j in 0..n {
        for i in 0..n - j {
            tiles.push(triangle_at(i, j));
            for t in parallelograms_with_down(i, j) {
                tiles.push(t);
            }
            tiles.push(hexagon_at(i, j));
        }
    }
    tiles.retain(|t| t.cells.iter().all(|c| c.in_triangle(n)));
    tiles
}

fn cells_in_order(n: i64) -> Vec<Cell> {
    let mut out = Vec::new();
    for j in 0..n {
        for i in 0..n - j {
            out.push(Cell::Up(i, j));
            if i + j < n - 1 {
                out.push(Cell::Down(i, j));
            }
        }
    }
    out
}

/// The hexagon-packed semiuniform subdivision with the fewest parallelograms.
///
/// Hexagons are centered at the interior points with `x ≡ y (mod 3)`. The remaining
/// downward triangles are matched to upward neighbours, preferring the square partner
/// except along the hypotenuse, where the partner above is preferred below the diagonal
/// and the partner to the right above it. Unmatched upward triangles stay triangles.
pub fn optimal_subdivision(n: u32) -> Result<NewtonSubdivision> {
    let ni = n as i64;
    if ni < 1 {
        return Err(Error::InvalidSubdivision("side length must be positive".into()));
    }
    let mut covered: BTreeSet<Cell> = BTreeSet::new();
    let mut faces: Vec<Vec<LatticePoint>> = Vec::new();
    for y in 1..ni {
        for x in 1..ni {
            if x + y < ni && (x - y).rem_euclid(3) == 0 {
                let h = hexagon_at(x, y);
                covered.extend(h.cells.iter().copied());
                faces.push(h.corners);
            }
        }
    }
    let downs: Vec<(i64, i64)> = cells_in_order(ni)
        .into_iter()
        .filter_map(|c| match c {
            Cell::Down(i, j) if !covered.contains(&c) => Some((i, j)),
            _ => None,
        })
        .collect();
    let options: Vec<Vec<Tile>> = downs
        .iter()
        .map(|&(i, j)| {
            let [sq, right, up] = parallelograms_with_down(i, j);
            let order = if i + j == ni - 2 {
                if i >= j {
                    [up, sq, right]
                } else {
                    [right, sq, up]
                }
            } else {
                [sq, right, up]
            };
            order
                .into_iter()
                .filter(|t| t.cells.iter().all(|c| c.in_triangle(ni) && !covered.contains(c)))
                .collect()
        })
        .collect();
    let assignment =
        match_downs(&options).ok_or_else(|| Error::Internal("no perfect pairing of downward triangles".into()))?;
    for (k, &choice) in assignment.iter().enumerate() {
        let t = &options[k][choice];
        covered.extend(t.cells.iter().copied());
        faces.push(t.corners.clone());
    }
    for c in cells_in_order(ni) {
        if let Cell::Up(i, j) = c {
            if !covered.contains(&c) {
                faces.push(triangle_at(i, j).corners);
            }
        }
    }
    NewtonSubdivision::from_faces(n, faces)
}

/// Kuhn's augmenting-path matching of downward triangles to upward partners.
fn match_downs(options: &[Vec<Tile>]) -> Option<Vec<usize>> {
    let mut owner: BTreeMap<Cell, usize> = BTreeMap::new();
    let mut choice: Vec<Option<usize>> = vec![None; options.len()];
    fn partner(t: &Tile) -> Cell {
        t.cells[1]
    }
    fn augment(
        k: usize,
        options: &[Vec<Tile>],
        owner: &mut BTreeMap<Cell, usize>,
        choice: &mut [Option<usize>],
        seen: &mut BTreeSet<Cell>,
    ) -> bool {
        for (c, t) in options[k].iter().enumerate() {
            let u = partner(t);
            if !seen.insert(u) {
                continue;
            }
            let free = match owner.get(&u).copied() {
                None => true,
                Some(other) => augment(other, options, owner, choice, seen),
            };
            if free {
                owner.insert(u, k);
                choice[k] = Some(c);
                return true;
            }
        }
        false
    }
    for k in 0..options.len() {
        let mut seen = BTreeSet::new();
        if !augment(k, options, &mut owner, &mut choice, &mut seen) {
            return None;
        }
    }
    choice.into_iter().collect()
}

/// Every semiuniform subdivision of `Δ_n`, by corner-first backtracking.
pub fn enumerate_semiuniform(n: u32) -> Result<Vec<NewtonSubdivision>> {
    let ni = n as i64;
    let order = cells_in_order(ni);
    let tiles = all_tiles(ni);
    let mut by_cell: BTreeMap<Cell, Vec<usize>> = BTreeMap::new();
    for (k, t) in tiles.iter().enumerate() {
        for c in &t.cells {
            by_cell.entry(*c).or_default().push(k);
        }
    }
    let mut out = Vec::new();
    let mut covered = BTreeSet::new();
    let mut chosen = Vec::new();
    fn go(
        order: &[Cell],
        tiles: &[Tile],
        by_cell: &BTreeMap<Cell, Vec<usize>>,
        covered: &mut BTreeSet<Cell>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(first) = order.iter().find(|c| !covered.contains(*c)) else {
            out.push(chosen.clone());
            return;
        };
        for &k in by_cell.get(first).map(Vec::as_slice).unwrap_or(&[]) {
            let t = &tiles[k];
            if t.cells.iter().any(|c| covered.contains(c)) {
                continue;
            }
            covered.extend(t.cells.iter().copied());
            chosen.push(k);
            go(order, tiles, by_cell, covered, chosen, out);
            chosen.pop();
            for c in &t.cells {
                covered.remove(c);
            }
        }
    }
    go(&order, &tiles, &by_cell, &mut covered, &mut chosen, &mut out);
    out.into_iter()
        .map(|ks| NewtonSubdivision::from_faces(n, ks.into_iter().map(|k| tiles[k].corners.clone())))
        .collect()
}

/// Profile of every face, keyed by the face's smallest corner and cycle.
pub fn profile_table(sub: &NewtonSubdivision) -> Result<Vec<(Face, LocalProfile)>> {
    sub.faces().iter().map(|f| Ok((f.clone(), f.profile()?))).collect()
}
