//! Seeded random instances. Every generator draws from a caller-supplied [`ChaCha8Rng`], so a
//! fixed seed reproduces the same instances on every platform.

use std::collections::BTreeSet;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tropline_core::geometry::coaxial;
use tropline_core::rational::{frac, int};
use tropline_core::realization::{exactness_system, is_realizable, ExactMetric, Realizability};
use tropline_core::sg::PointConfig;
use tropline_core::solve::elim::{Echelon, SparseRow};
use tropline_core::universality::LinearSystemSpec;
use tropline_core::{Arrangement, Colour, NewtonSubdivision, Point, Rational, TropLine};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with numerator in `[-60, 60]` and denominator in `1..=4`.
pub fn rational(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.random_range(-60..=60), rng.random_range(1..=4))
}

pub fn point(rng: &mut ChaCha8Rng) -> Point {
    Point::new(rational(rng), rational(rng))
}

fn is_coaxial_with_any(p: &Point, others: &[Point]) -> bool {
    others.iter().any(|q| p == q || matches!(coaxial(p, q), Ok(Some(_))))
}

/// `n` distinct points with no two on a common axis.
pub fn coaxial_free_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = point(rng);
        if !is_coaxial_with_any(&p, &pts) {
            pts.push(p);
        }
    }
    pts
}

/// `n >= 2` distinct points, at least two of which share an axis.
pub fn points_with_coaxial_pair(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point> {
    assert!(n >= 2);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    let p = point(rng);
    let (dx, dy) = *[(1, 0), (0, 1), (1, 1)].choose(rng).expect("nonempty");
    let mut s = rational(rng);
    while s == int(0) {
        s = rational(rng);
    }
    pts.push(p.clone());
    pts.push(Point::new(&p.x + &s * int(dx), &p.y + &s * int(dy)));
    let mut seen: BTreeSet<Point> = pts.iter().cloned().collect();
    while pts.len() < n {
        let q = point(rng);
        if seen.insert(q.clone()) {
            pts.push(q);
        }
    }
    pts.shuffle(rng);
    pts
}

pub fn point_config(rng: &mut ChaCha8Rng, n: usize, coaxial_pair: bool) -> PointConfig {
    let pts = if coaxial_pair {
        points_with_coaxial_pair(rng, n)
    } else {
        coaxial_free_points(rng, n)
    };
    PointConfig::new(pts).expect("distinct points")
}

fn colour(rng: &mut ChaCha8Rng) -> Colour {
    if rng.random_bool(0.5) {
        Colour::Red
    } else {
        Colour::Blue
    }
}

/// Coaxial-free points, each coloured uniformly at random.
pub fn coloured_config(rng: &mut ChaCha8Rng, n: usize) -> PointConfig {
    let pts = coaxial_free_points(rng, n);
    let coloured = pts.into_iter().map(|p| (p, colour(rng))).collect();
    PointConfig::coloured(coloured).expect("distinct points")
}

/// An arrangement of `n` lines with pairwise non-coaxial centers.
pub fn arrangement(rng: &mut ChaCha8Rng, n: usize) -> Arrangement {
    Arrangement::from_centers(coaxial_free_points(rng, n)).expect("distinct centers")
}

pub fn coloured_arrangement(rng: &mut ChaCha8Rng, n: usize) -> Arrangement {
    let lines = coaxial_free_points(rng, n)
        .into_iter()
        .map(|c| TropLine::coloured(c, colour(rng)))
        .collect();
    Arrangement::new(lines).expect("distinct centers")
}

fn small(rng: &mut ChaCha8Rng, range: i64) -> Rational {
    frac(rng.random_range(-range * 8..=range * 8), 8)
}

/// Points of `V` sampled by rejection from a box in the kernel of the equalities.
///
/// Returns fewer than `count` points if `V` is empty or too thin to hit.
pub fn sample_v(rng: &mut ChaCha8Rng, sys: &LinearSystemSpec, count: usize) -> Vec<Vec<Rational>> {
    let mut ech = Echelon::new(sys.m);
    for f in &sys.equalities {
        let row: SparseRow = f
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (i, int(*c)))
            .collect();
        ech.push(row);
    }
    let k = ech.kernel();
    let mut out = Vec::with_capacity(count);
    let mut tries = 0;
    while out.len() < count && tries < 200 * count.max(1) {
        tries += 1;
        let t: Vec<Rational> = (0..k.dim()).map(|_| small(rng, 10)).collect();
        let v = k.eval(&t);
        if sys.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Exact metrics on `sub` scattered around a scaled witness; `None` if `sub` is not realizable.
pub fn sample_metrics(
    rng: &mut ChaCha8Rng,
    sub: &NewtonSubdivision,
    count: usize,
) -> tropline_core::Result<Option<Vec<ExactMetric>>> {
    let Realizability::Witness(w) = is_realizable(sub)? else {
        return Ok(None);
    };
    let sys = exactness_system(sub)?;
    let x0 = sys.vector(&w)?;
    let k = sys.kernel();
    let t0: Vec<Rational> = k.free.iter().map(|c| x0[*c].clone()).collect();
    let mut out = Vec::with_capacity(count);
    let mut spread = int(1);
    while out.len() < count {
        let scale = int(rng.random_range(1..=6));
        let t: Vec<Rational> = t0.iter().map(|v| v * &scale + small(rng, 1) * &spread).collect();
        let x = k.eval(&t);
        if x.iter().all(|v| *v > int(0)) {
            out.push(sys.metric(&x));
        } else {
            spread /= int(2);
        }
    }
    Ok(Some(out))
}
