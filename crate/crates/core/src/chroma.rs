//! Two-coloured arrangements and plausibly coloured subdivisions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::geometry::{line_contains, Colour, Point, TropLine};
use crate::lattice::{EdgeDir, LatticePoint};
use crate::newton::build_subdivision_with_origins;
use crate::sg::PointConfig;
use crate::subdivision::{Edge, Face, NewtonSubdivision};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredSubdivision {
    pub base: NewtonSubdivision,
    pub colours: BTreeMap<Edge, Colour>,
}

impl ColouredSubdivision {
    /// Every edge gets `colour`.
    pub fn uniform(base: NewtonSubdivision, colour: Colour) -> Self {
        let colours = base.edges().iter().map(|e| (*e, colour)).collect();
        ColouredSubdivision { base, colours }
    }

    pub fn colour(&self, e: &Edge) -> Colour {
        self.colours[e]
    }

    pub fn swap_colours(&self) -> Self {
        ColouredSubdivision {
            base: self.base.clone(),
            colours: self.colours.iter().map(|(e, c)| (*e, c.swap())).collect(),
        }
    }

    fn face_colours<'a>(&'a self, f: &'a Face) -> impl Iterator<Item = (EdgeDir, Colour)> + 'a {
        f.sides().map(move |(a, b)| {
            let (d, _) = EdgeDir::classify(b - a).expect("linear face");
            (d, self.colours[&Edge::new(a, b)])
        })
    }
}

/// Colours each edge by the lines whose axis segment it is dual to.
pub fn lift_colours(arr: &Arrangement) -> Result<ColouredSubdivision> {
    if !arr.is_coloured() {
        return Err(Error::Uncoloured);
    }
    let (base, origins) = build_subdivision_with_origins(arr)?;
    let mut colours: BTreeMap<Edge, Colour> = BTreeMap::new();
    for (f, p) in base.faces().iter().zip(&origins) {
        for (a, b) in f.sides() {
            let Some((dir, _)) = EdgeDir::classify(b - a) else {
                return Err(Error::NotLinear);
            };
            let axis = dir.axis();
            let sources: BTreeSet<Colour> = arr
                .lines()
                .iter()
                .filter(|l| match line_contains(l, p) {
                    Some(axes) if axes.len() == 3 => dir.is_positive(),
                    Some(axes) => axes.contains(axis),
                    None => false,
                })
                .filter_map(|l| l.colour)
                .collect();
            let e = Edge::new(a, b);
            let colour = match sources.len() {
                1 => *sources.first().expect("one colour"),
                _ => return Err(Error::OverlapColourConflict(e.a, e.b)),
            };
            if let Some(prev) = colours.insert(e, colour) {
                if prev != colour {
                    return Err(Error::OverlapColourConflict(e.a, e.b));
                }
            }
        }
    }
    Ok(ColouredSubdivision { base, colours })
}

/// Triangles are monochrome and parallel sides of every other face agree.
pub fn is_plausibly_coloured(cs: &ColouredSubdivision) -> bool {
    if cs.base.edges().iter().any(|e| !cs.colours.contains_key(e)) {
        return false;
    }
    cs.base.faces().iter().all(|f| {
        let Ok(p) = f.profile() else { return false };
        let cols: Vec<(EdgeDir, Colour)> = cs.face_colours(f).collect();
        if p.is_triangle() {
            cols.iter().all(|(_, c)| *c == cols[0].1)
        } else {
            cols.iter()
                .all(|(d, c)| cols.iter().all(|(d2, c2)| *d2 != d.reverse() || c2 == c))
        }
    })
}

/// Indices of non-triangle faces whose sides all share one colour.
pub fn monochromatic_cells(cs: &ColouredSubdivision) -> Vec<usize> {
    cs.base
        .faces()
        .iter()
        .enumerate()
        .filter(|(_, f)| {
            f.profile().map(|p| !p.is_triangle()).unwrap_or(false) && {
                let cols: Vec<Colour> = cs.face_colours(f).map(|(_, c)| c).collect();
                cols.iter().all(|c| *c == cols[0])
            }
        })
        .map(|(i, _)| i)
        .collect()
}

/// A chain: one `-ē1` edge of colour `first`, `n` edges along `ē3` of that colour, `m` edges
/// along `ē2` of the other colour, and a final `-ē1` edge of the other colour.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arm {
    pub n: usize,
    pub m: usize,
    pub first: Colour,
    pub path: Vec<LatticePoint>,
}

pub fn find_arms(cs: &ColouredSubdivision) -> Vec<Arm> {
    let mut step: BTreeMap<(LatticePoint, EdgeDir), (LatticePoint, Colour)> = BTreeMap::new();
    for (e, c) in &cs.colours {
        if let Some((d, _)) = EdgeDir::classify(e.b - e.a) {
            step.insert((e.a, d), (e.b, *c));
            step.insert((e.b, d.reverse()), (e.a, *c));
        }
    }
    let walk = |v: LatticePoint, d: EdgeDir, c: Colour| step.get(&(v, d)).filter(|(_, c2)| *c2 == c).map(|(w, _)| *w);
    let mut arms = Vec::new();
    for &start in cs.base.vertices() {
        for first in [Colour::Red, Colour::Blue] {
            let second = first.swap();
            let Some(p1) = walk(start, EdgeDir::NegE1, first) else {
                continue;
            };
            let mut path = alloc::vec![start, p1];
            let mut n = 0;
            loop {
                let corner = *path.last().expect("nonempty");
                let mut inner = path.clone();
                let mut m = 0;
                loop {
                    let here = *inner.last().expect("nonempty");
                    if let Some(end) = walk(here, EdgeDir::NegE1, second) {
                        let mut full = inner.clone();
                        full.push(end);
                        arms.push(Arm {
                            n,
                            m,
                            first,
                            path: full,
                        });
                    }
                    match walk(here, EdgeDir::E2, second) {
                        Some(w) => {
                            inner.push(w);
                            m += 1;
                        }
                        None => break,
                    }
                }
                match walk(corner, EdgeDir::E3, first) {
                    Some(w) => {
                        path.push(w);
                        n += 1;
                    }
                    None => break,
                }
            }
        }
    }
    arms.sort();
    arms
}

/// Every plausible colouring of a linear subdivision.
pub fn plausible_colourings(sub: &NewtonSubdivision) -> Result<Vec<ColouredSubdivision>> {
    let edges: Vec<Edge> = sub.edges().iter().copied().collect();
    let index: BTreeMap<Edge, usize> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for f in sub.faces() {
        let prof = f.profile()?;
        let sides: Vec<(EdgeDir, usize)> = f
            .sides()
            .map(|(a, b)| (EdgeDir::classify(b - a).expect("linear").0, index[&Edge::new(a, b)]))
            .collect();
        for &(d, i) in &sides {
            for &(d2, j) in &sides {
                if prof.is_triangle() || d2 == d.reverse() {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
    }
    let roots: Vec<usize> = (0..edges.len()).map(|i| find(&mut parent, i)).collect();
    let classes: Vec<usize> = roots.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let class_of: BTreeMap<usize, usize> = classes.iter().enumerate().map(|(k, r)| (*r, k)).collect();
    if classes.len() > 24 {
        return Err(Error::Internal("too many colour classes to enumerate".into()));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << classes.len()) {
        let colours = edges
            .iter()
            .zip(&roots)
            .map(|(e, r)| {
                (
                    *e,
                    if mask >> class_of[r] & 1 == 1 {
                        Colour::Blue
                    } else {
                        Colour::Red
                    },
                )
            })
            .collect();
        out.push(ColouredSubdivision {
            base: sub.clone(),
            colours,
        });
    }
    Ok(out)
}

/// A line through at least two points, all of one colour.
pub fn determines_monochromatic_line(cfg: &PointConfig) -> Result<TropLine> {
    if cfg.colours().is_none() {
        return Err(Error::Uncoloured);
    }
    if cfg.len() < 4 {
        return Err(Error::TooFewPoints {
            needed: 4,
            got: cfg.len(),
        });
    }
    if cfg.has_coaxial_pair() {
        return Err(Error::HypothesisViolated("two points are coaxial".into()));
    }
    let arr = cfg.dual_arrangement()?;
    let cs = lift_colours(&arr)?;
    let (_, origins) = build_subdivision_with_origins(&arr)?;
    let mut lines: Vec<TropLine> = monochromatic_cells(&cs)
        .into_iter()
        .map(|i| TropLine::new(-&origins[i]))
        .collect();
    lines.sort();
    for l in lines {
        let on = cfg.incident(&l);
        if on.len() >= 2 && on.iter().all(|&i| cfg.colour_of(i) == cfg.colour_of(on[0])) {
            return Ok(TropLine {
                colour: cfg.colour_of(on[0]),
                ..l
            });
        }
    }
    Err(Error::Internal("no monochromatic cell in the dual subdivision".into()))
}

/// Seven lines, every unbounded edge of which is shared by a red and a blue line.
pub fn coaxial_counterexample() -> Arrangement {
    let red = [(0, 0), (-1, 0), (0, -1), (1, 1)];
    let blue = [(0, 1), (1, 0), (-1, -1)];
    let lines = red
        .iter()
        .map(|&(x, y)| TropLine::coloured(Point::int(x, y), Colour::Red))
        .chain(
            blue.iter()
                .map(|&(x, y)| TropLine::coloured(Point::int(x, y), Colour::Blue)),
        )
        .collect();
    Arrangement::new(lines).expect("distinct centers")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    #[test]
    fn counterexample_has_no_monochromatic_point() {
        let arr = coaxial_counterexample();
        assert_eq!(arr.len(), 7);
        assert!(arr.monochromatic_points().unwrap().is_empty());
        assert!(matches!(lift_colours(&arr), Err(Error::OverlapColourConflict(..))));
    }

    #[test]
    fn corner_square_arm() {
        let faces = [
            [lp(0, 0), lp(1, 0), lp(1, 1), lp(0, 1)].to_vec(),
            [lp(1, 0), lp(2, 0), lp(1, 1)].to_vec(),
            [lp(0, 1), lp(1, 1), lp(0, 2)].to_vec(),
        ];
        let sub = NewtonSubdivision::from_faces(2, faces).unwrap();
        let red = [
            Edge::new(lp(0, 0), lp(1, 0)),
            Edge::new(lp(0, 1), lp(1, 1)),
            Edge::new(lp(1, 1), lp(0, 2)),
            Edge::new(lp(0, 1), lp(0, 2)),
        ];
        let colours = sub
            .edges()
            .iter()
            .map(|e| (*e, if red.contains(e) { Colour::Red } else { Colour::Blue }))
            .collect();
        let cs = ColouredSubdivision { base: sub, colours };
        assert!(is_plausibly_coloured(&cs));
        assert!(monochromatic_cells(&cs).is_empty());
        let arms = find_arms(&cs);
        assert_eq!(arms.len(), 1);
        assert_eq!((arms[0].n, arms[0].m), (0, 0));
        assert_eq!(arms[0].path, [lp(0, 2), lp(1, 1), lp(2, 0)]);
    }

    #[test]
    fn generic_lift_is_plausible() {
        let arr = Arrangement::new(
            [
                TropLine::coloured(Point::int(0, 0), Colour::Red),
                TropLine::coloured(Point::int(3, 1), Colour::Red),
                TropLine::coloured(Point::int(5, 7), Colour::Blue),
            ]
            .to_vec(),
        )
        .unwrap();
        let cs = lift_colours(&arr).unwrap();
        assert!(is_plausibly_coloured(&cs));
        let mono = monochromatic_cells(&cs);
        assert_eq!(mono.len(), 1);
    }
}
