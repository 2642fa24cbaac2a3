//! Linear Newton subdivisions with prescribed realization spaces.
//!
//! An integer system of equalities and strict inequalities on the positive orthant is
//! rewritten as an intervallic specification (equalities between sums of consecutive
//! coordinates), which is then realized by gluing one bar construction per constraint
//! onto the subdivision of lines sharing a vertical axis.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::rational::{self, Rational};
use crate::realization::{exactness_system, is_exact_metric, ExactMetric};
use crate::solve::fm::{Constraint, Relation};
use crate::subdivision::{Edge, NewtonSubdivision};

/// Indices `(a', b', a, b)` with `a < b`, `a' < b'`, `a' < a`, `b' < b`, encoding
/// `Σ_{a'<=j<b'} v_j = Σ_{a<=j<b} v_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleTuple {
    pub a_prime: usize,
    pub b_prime: usize,
    pub a: usize,
    pub b: usize,
}

impl AdmissibleTuple {
    pub fn new(a_prime: usize, b_prime: usize, a: usize, b: usize, m: usize) -> Result<Self> {
        if a < b && a_prime < b_prime && a_prime < a && b_prime < b && b <= m {
            Ok(AdmissibleTuple { a_prime, b_prime, a, b })
        } else {
            Err(Error::InadmissibleTuple(a_prime, b_prime, a, b, m))
        }
    }

    /// The tuple equating the sums over `[p, q)` and `[r, s)`, in admissible order.
    pub fn equating(p: usize, q: usize, r: usize, s: usize, m: usize) -> Result<Self> {
        if (p, q) <= (r, s) {
            AdmissibleTuple::new(p, q, r, s, m)
        } else {
            AdmissibleTuple::new(r, s, p, q, m)
        }
    }

    /// Coefficients of `Σ_{[a,b)} - Σ_{[a',b')}` in dimension `m`.
    pub fn form(&self, m: usize) -> Vec<Rational> {
        let mut c = vec![Rational::zero(); m];
        for x in &mut c[self.a..self.b] {
            *x += rational::one();
        }
        for x in &mut c[self.a_prime..self.b_prime] {
            *x -= rational::one();
        }
        c
    }

    pub fn holds(&self, v: &[Rational]) -> bool {
        let lhs: Rational = v[self.a..self.b].iter().sum();
        let rhs: Rational = v[self.a_prime..self.b_prime].iter().sum();
        lhs == rhs
    }
}

/// A subset of the positive orthant cut out by interval equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervallicSpec {
    pub m: usize,
    pub tuples: Vec<AdmissibleTuple>,
}

impl IntervallicSpec {
    pub fn orthant(m: usize) -> Self {
        IntervallicSpec { m, tuples: Vec::new() }
    }

    pub fn validate(&self) -> Result<()> {
        for t in &self.tuples {
            AdmissibleTuple::new(t.a_prime, t.b_prime, t.a, t.b, self.m)?;
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.m && v.iter().all(Signed::is_positive) && self.tuples.iter().all(|t| t.holds(v))
    }

    pub fn constraints(&self) -> Vec<Constraint> {
        let mut rows: Vec<Constraint> = (0..self.m).map(|i| Constraint::positive(self.m, i)).collect();
        rows.extend(
            self.tuples
                .iter()
                .map(|t| Constraint::new(t.form(self.m), Relation::Eq, Rational::zero())),
        );
        rows
    }
}

/// `{v > 0 : f(v) = 0 for f in equalities, f(v) > 0 for f in strict}` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystemSpec {
    pub m: usize,
    pub equalities: Vec<Vec<i64>>,
    pub strict: Vec<Vec<i64>>,
}

impl LinearSystemSpec {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::IndexOutOfRange { index: 0, dim: 0 });
        }
        for f in self.equalities.iter().chain(&self.strict) {
            if f.len() != self.m {
                return Err(Error::IndexOutOfRange {
                    index: f.len(),
                    dim: self.m,
                });
            }
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let eval = |f: &Vec<i64>| -> Rational { f.iter().zip(v).map(|(c, x)| rational::int(*c) * x).sum() };
        v.len() == self.m
            && v.iter().all(Signed::is_positive)
            && self.equalities.iter().all(|f| eval(f).is_zero())
            && self.strict.iter().all(|f| eval(f).is_positive())
    }

    pub fn constraints(&self) -> Vec<Constraint> {
        let row = |f: &Vec<i64>| f.iter().map(|c| rational::int(*c)).collect::<Vec<_>>();
        let mut rows: Vec<Constraint> = (0..self.m).map(|i| Constraint::positive(self.m, i)).collect();
        rows.extend(
            self.equalities
                .iter()
                .map(|f| Constraint::new(row(f), Relation::Eq, Rational::zero())),
        );
        rows.extend(
            self.strict
                .iter()
                .map(|f| Constraint::new(row(f), Relation::Gt, Rational::zero())),
        );
        rows
    }
}

/// A subdivision whose left side carries vertices `v_{-1}` (the apex) down to `v_m`, with
/// each `v_i`, `0 <= i < m`, on exactly one interior horizontal edge `ℓ_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensibleSubdivision {
    pub base: NewtonSubdivision,
    pub m: usize,
    pub left: Vec<LatticePoint>,
    pub marked: Vec<Edge>,
}

impl ExtensibleSubdivision {
    /// `v_i` for `-1 <= i <= m`.
    pub fn v(&self, i: isize) -> LatticePoint {
        self.left[(i + 1) as usize]
    }

    /// `(d(ℓ_0), ..., d(ℓ_{m-1}))`.
    pub fn pi(&self, d: &ExactMetric) -> Result<Vec<Rational>> {
        self.marked
            .iter()
            .map(|e| d.get(e).cloned().ok_or(Error::MissingEdgeLength(e.a, e.b)))
            .collect()
    }

    /// Checks the defining incidences.
    pub fn check(&self) -> Result<()> {
        let n = self.base.n() as i64;
        let bad = |m: alloc::string::String| Err(Error::ConstructionInvalid(m));
        if self.left.len() != self.m + 2
            || self.left[0] != LatticePoint::new(0, n)
            || *self.left.last().unwrap() != LatticePoint::new(0, 0)
        {
            return bad("left side does not run from the apex to the origin".into());
        }
        let verts: BTreeSet<LatticePoint> = self.base.vertices().iter().copied().filter(|p| p.x == 0).collect();
        if verts != self.left.iter().copied().collect() {
            return bad("left side vertices differ from the recorded ones".into());
        }
        let interior: BTreeSet<Edge> = self.base.interior_edges().into_iter().collect();
        for i in 0..self.m {
            let v = self.left[i + 1];
            let horiz: Vec<&Edge> = interior
                .iter()
                .filter(|e| e.contains_vertex(v) && e.a.y == e.b.y)
                .collect();
            if horiz.len() != 1 || *horiz[0] != self.marked[i] {
                return bad(format!("vertex v_{i} does not meet exactly its marked edge"));
            }
        }
        Ok(())
    }
}

/// Lines sharing a vertical axis: `Δ_{m+1}` cut by the full-width horizontals `y = 1..m`.
pub fn base_subdivision(m: usize) -> Result<ExtensibleSubdivision> {
    if m == 0 {
        return Err(Error::IndexOutOfRange { index: 0, dim: 0 });
    }
    let n = m as i64 + 1;
    let lp = LatticePoint::new;
    let mut faces = Vec::new();
    for k in 0..n - 1 {
        faces.push(vec![lp(0, k), lp(n - k, k), lp(n - k - 1, k + 1), lp(0, k + 1)]);
    }
    faces.push(vec![lp(0, n - 1), lp(1, n - 1), lp(0, n)]);
    let base = NewtonSubdivision::from_faces(n as u32, faces)?;
    let left = (0..=n).rev().map(|y| lp(0, y)).collect();
    let marked = (0..m as i64)
        .map(|i| Edge::new(lp(0, n - 1 - i), lp(i + 1, n - 1 - i)))
        .collect();
    let out = ExtensibleSubdivision { base, m, left, marked };
    out.check()?;
    Ok(out)
}

/// Corner cycles of the new faces of an extension that are not parallelograms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialFaces {
    pub a: Vec<LatticePoint>,
    pub a_prime: Vec<LatticePoint>,
    pub b: Vec<LatticePoint>,
    pub c: Vec<LatticePoint>,
    pub d: Vec<LatticePoint>,
    pub i: Vec<LatticePoint>,
}

impl SpecialFaces {
    pub fn all(&self) -> [(&'static str, &[LatticePoint]); 6] {
        [
            ("A", &self.a),
            ("A'", &self.a_prime),
            ("B", &self.b),
            ("C", &self.c),
            ("D", &self.d),
            ("I", &self.i),
        ]
    }
}

/// Bookkeeping for one application of [`extend`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub tuple: AdmissibleTuple,
    pub shift: LatticePoint,
    pub prev_interior: Vec<Edge>,
    pub prev_marked: Vec<Edge>,
    /// Vertical chains of new vertices, top to bottom, tagged by row `i` in `-1..=m`.
    pub chains: Vec<Vec<(isize, LatticePoint)>>,
    pub special: SpecialFaces,
}

/// Glues the bar construction for `t` to the left side of `prev`.
pub fn extend(prev: &ExtensibleSubdivision, t: AdmissibleTuple) -> Result<(ExtensibleSubdivision, Extension)> {
    let m = prev.m;
    AdmissibleTuple::new(t.a_prime, t.b_prime, t.a, t.b, m)?;
    let shift = LatticePoint::new(4, 0);
    let (ap, bp, a, b) = (t.a_prime as isize, t.b_prime as isize, t.a as isize, t.b as isize);
    let mi = m as isize;
    let v = |i: isize| prev.v(i) + shift;
    let off = |i: isize, dx: i64, dy: i64| v(i) + LatticePoint::new(dx, dy);
    let mut bar = [
        BTreeMap::new(),
        BTreeMap::new(),
        BTreeMap::new(),
        BTreeMap::new(),
        BTreeMap::new(),
    ];
    let mut links: Vec<(LatticePoint, LatticePoint)> = Vec::new();
    for i in -1..=mi {
        if i >= 0 {
            bar[0].insert(i, v(i));
        }
        let v1 = if i < bp { off(i, -1, 1) } else { off(i, -1, 0) };
        bar[1].insert(i, v1);
        if i >= 0 {
            links.push((v(i), v1));
        }
        if i < ap {
            let v3 = off(i, -3, 3);
            bar[3].insert(i, v3);
            links.push((v1, v3));
            let v4 = if i == -1 { off(i, -4, 4) } else { off(i, -4, 3) };
            bar[4].insert(i, v4);
            links.push((v3, v4));
        } else if i < b {
            let v2 = off(i, -2, 1);
            bar[2].insert(i, v2);
            links.push((v1, v2));
            if i < a {
                let v3 = off(i, -3, 2);
                bar[3].insert(i, v3);
                links.push((v2, v3));
                let v4 = off(i, -4, 2);
                bar[4].insert(i, v4);
                links.push((v3, v4));
            } else {
                let v4 = off(i, -4, 1);
                bar[4].insert(i, v4);
                links.push((v2, v4));
            }
        } else {
            let v4 = off(i, -4, 0);
            bar[4].insert(i, v4);
            links.push((v1, v4));
        }
    }
    let apex = v(-1);
    let mut segments: Vec<(LatticePoint, LatticePoint)> = prev
        .base
        .edges()
        .iter()
        .filter(|e| !e.contains_vertex(prev.v(-1)))
        .map(|e| (e.a + shift, e.b + shift))
        .collect();
    let hyp = prev
        .base
        .edges()
        .iter()
        .find(|e| e.contains_vertex(prev.v(-1)) && e.a.x + e.a.y == e.b.x + e.b.y)
        .ok_or_else(|| Error::ConstructionInvalid("apex has no hypotenuse edge".into()))?;
    segments.push((hyp.other(prev.v(-1)) + shift, bar[1][&-1]));
    let _ = apex;
    segments.extend(links.iter().copied());
    let split = |bar: &BTreeMap<isize, LatticePoint>, lo: isize, hi: isize| -> Vec<(isize, LatticePoint)> {
        bar.range(lo..=hi).map(|(i, p)| (*i, *p)).collect()
    };
    let chains = vec![
        split(&bar[0], 0, mi),
        split(&bar[1], -1, bp - 1),
        split(&bar[1], bp, mi),
        split(&bar[2], ap, b - 1),
        split(&bar[3], -1, a - 1),
        split(&bar[4], -1, mi),
    ];
    for ch in &chains {
        for w in ch.windows(2) {
            segments.push((w[0].1, w[1].1));
        }
    }
    let n = prev.base.n() + 4;
    let base = NewtonSubdivision::from_edges(n, segments).map_err(|e| Error::ConstructionInvalid(format!("{e}")))?;
    if !base.is_linear() {
        return Err(Error::ConstructionInvalid("extension has a non-linear face".into()));
    }
    let left: Vec<LatticePoint> = bar[4].values().copied().collect();
    let marked = (0..mi)
        .map(|i| {
            let right = if i < a {
                bar[3][&i]
            } else if i < b {
                bar[2][&i]
            } else {
                bar[1][&i]
            };
            Edge::new(bar[4][&i], right)
        })
        .collect();
    let next = ExtensibleSubdivision { base, m, left, marked };
    next.check()?;
    let p = |k: usize, i: isize| -> LatticePoint {
        if k == 0 {
            v(i)
        } else {
            bar[k][&i]
        }
    };
    // each face is located by points on it, then recorded by its full corner cycle
    let face = |pts: &[LatticePoint]| -> Result<Vec<LatticePoint>> {
        let mut hits = next
            .base
            .faces()
            .iter()
            .filter(|f| pts.iter().all(|q| f.contains_point(*q)));
        match (hits.next(), hits.next()) {
            (Some(f), None) => Ok(f.cycle.clone()),
            _ => Err(Error::ConstructionInvalid(format!("no unique face through {pts:?}"))),
        }
    };
    let special = SpecialFaces {
        a: face(&[p(4, -1), p(3, -1), p(3, 0), p(4, 0)])?,
        a_prime: face(&[p(0, 0), p(1, 0), p(1, -1)])?,
        b: face(&[p(4, a - 1), p(4, a), p(2, a), p(2, a - 1), p(3, a - 1)])?,
        c: face(&[p(4, b - 1), p(4, b), p(1, b), p(1, b - 1), p(2, b - 1)])?,
        d: face(&[p(3, ap - 1), p(3, ap), p(2, ap), p(1, ap), p(1, ap - 1)])?,
        i: face(&[p(2, bp - 1), p(2, bp), p(1, bp), p(0, bp), p(0, bp - 1), p(1, bp - 1)])?,
    };
    let ext = Extension {
        tuple: t,
        shift,
        prev_interior: prev.base.interior_edges(),
        prev_marked: prev.marked.clone(),
        chains,
        special,
    };
    Ok((next, ext))
}

/// The map `σ`: restriction of a metric on the extension to the edges of the original.
pub fn restrict_metric(ext: &Extension, d: &ExactMetric) -> Result<ExactMetric> {
    let mut lengths = BTreeMap::new();
    for e in &ext.prev_interior {
        let s = Edge::new(e.a + ext.shift, e.b + ext.shift);
        let len = d.get(&s).ok_or(Error::MissingEdgeLength(s.a, s.b))?;
        lengths.insert(*e, len.clone());
    }
    Ok(ExactMetric { lengths })
}

/// The unique exact extension of `d` to `next`, or `None` when none exists.
///
/// Horizontal rows inherit `d(ℓ_i)`; vertical bar edges follow `d(down) = d(up) + κ d(ℓ_i)`
/// from a free end, where `κ` is `[left edge along ē1] - [right edge along -ē1]`.
pub fn lift_metric(ext: &Extension, next: &ExtensibleSubdivision, d: &ExactMetric) -> Result<Option<ExactMetric>> {
    let pi: Vec<Rational> = ext
        .prev_marked
        .iter()
        .map(|e| d.get(e).cloned().ok_or(Error::MissingEdgeLength(e.a, e.b)))
        .collect::<Result<_>>()?;
    let m = pi.len() as isize;
    let mut lengths: BTreeMap<Edge, Rational> = BTreeMap::new();
    for e in &ext.prev_interior {
        let len = d.get(e).ok_or(Error::MissingEdgeLength(e.a, e.b))?;
        lengths.insert(Edge::new(e.a + ext.shift, e.b + ext.shift), len.clone());
    }
    let interior: BTreeSet<Edge> = next.base.interior_edges().into_iter().collect();
    let mut neighbours: BTreeMap<LatticePoint, Vec<LatticePoint>> = BTreeMap::new();
    for e in next.base.edges() {
        neighbours.entry(e.a).or_default().push(e.b);
        neighbours.entry(e.b).or_default().push(e.a);
    }
    for e in &interior {
        if e.a.y == e.b.y || (e.b - e.a).x == -(e.b - e.a).y {
            let row = row_of(ext, e);
            if let Some(i) = row {
                lengths.entry(*e).or_insert_with(|| pi[i as usize].clone());
            }
        }
    }
    let kappa = |u: LatticePoint| -> i64 {
        let mut k = 0;
        for w in &neighbours[&u] {
            let dv = *w - u;
            if dv.x < 0 && dv.y > 0 {
                k += 1;
            }
            if dv.x > 0 && dv.y < 0 {
                k -= 1;
            }
        }
        k
    };
    let is_interior_row = |i: isize| i >= 0 && i < m;
    for ch in &ext.chains[..5] {
        if ch.len() < 2 {
            continue;
        }
        let step = |i: isize, u: LatticePoint| rational::int(kappa(u)) * &pi[i as usize];
        let k = ch.len() - 1;
        let mut vals = vec![Rational::zero(); k];
        if is_interior_row(ch[0].0) {
            let mut up = Rational::zero();
            for j in 0..k {
                vals[j] = &up + step(ch[j].0, ch[j].1);
                up = vals[j].clone();
            }
            if is_interior_row(ch[k].0) && !(&up + step(ch[k].0, ch[k].1)).is_zero() {
                return Ok(None);
            }
        } else if is_interior_row(ch[k].0) {
            let mut down = Rational::zero();
            for j in (1..=k).rev() {
                vals[j - 1] = &down - step(ch[j].0, ch[j].1);
                down = vals[j - 1].clone();
            }
        } else {
            return Err(Error::Internal("bar without a free end".into()));
        }
        for j in 0..k {
            if !vals[j].is_positive() {
                return Ok(None);
            }
            lengths.insert(Edge::new(ch[j].1, ch[j + 1].1), vals[j].clone());
        }
    }
    let lengths: BTreeMap<Edge, Rational> = lengths.into_iter().filter(|(e, _)| interior.contains(e)).collect();
    let out = ExactMetric { lengths };
    if out.lengths.len() != interior.len() || !is_exact_metric(&next.base, &out)? {
        return Err(Error::Internal("bar lift is not an exact metric".into()));
    }
    Ok(Some(out))
}

/// Row index of a non-vertical new edge: the row of its bar endpoints.
fn row_of(ext: &Extension, e: &Edge) -> Option<isize> {
    ext.chains
        .iter()
        .flatten()
        .find(|(_, p)| *p == e.a || *p == e.b)
        .map(|(i, _)| *i)
        .filter(|i| *i >= 0)
}

/// The subdivision for an intervallic specification with its tower of extensions.
#[derive(Debug, Clone)]
pub struct IntervallicBuild {
    pub stages: Vec<ExtensibleSubdivision>,
    pub extensions: Vec<Extension>,
}

impl IntervallicBuild {
    pub fn result(&self) -> &ExtensibleSubdivision {
        self.stages.last().expect("at least the base")
    }

    /// The exact metric with `π = v`, if `v` lies in the specification's set.
    pub fn lift(&self, v: &[Rational]) -> Result<Option<ExactMetric>> {
        let first = &self.stages[0];
        if v.len() != first.m || !v.iter().all(Signed::is_positive) {
            return Ok(None);
        }
        let mut d = ExactMetric {
            lengths: first.marked.iter().copied().zip(v.iter().cloned()).collect(),
        };
        for (ext, next) in self.extensions.iter().zip(&self.stages[1..]) {
            match lift_metric(ext, next, &d)? {
                Some(l) => d = l,
                None => return Ok(None),
            }
        }
        Ok(Some(d))
    }
}

pub fn build_intervallic(spec: &IntervallicSpec) -> Result<IntervallicBuild> {
    spec.validate()?;
    let mut stages = vec![base_subdivision(spec.m)?];
    let mut extensions = Vec::new();
    for t in &spec.tuples {
        let (next, ext) = extend(stages.last().expect("nonempty"), *t)?;
        stages.push(next);
        extensions.push(ext);
    }
    Ok(IntervallicBuild { stages, extensions })
}

/// Adds coordinates `m, m+1, m+2` equal to `v_a`, `v_b` and `v_a + v_b`.
pub fn encode_addition(spec: &IntervallicSpec, a: usize, b: usize) -> Result<IntervallicSpec> {
    let m = spec.m;
    for i in [a, b] {
        if i >= m {
            return Err(Error::IndexOutOfRange { index: i, dim: m });
        }
    }
    let mut tuples = spec.tuples.clone();
    tuples.push(AdmissibleTuple::equating(m, m + 1, a, a + 1, m + 3)?);
    tuples.push(AdmissibleTuple::equating(m + 1, m + 2, b, b + 1, m + 3)?);
    tuples.push(AdmissibleTuple::equating(m + 2, m + 3, m, m + 2, m + 3)?);
    Ok(IntervallicSpec { m: m + 3, tuples })
}

/// An intervallic specification together with, for every coordinate, the linear function of
/// the first `base` coordinates it equals on the specified set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedFunctions {
    pub spec: IntervallicSpec,
    pub base: usize,
    pub coordinate_functions: Vec<Vec<u64>>,
    /// Coordinate representing each requested function, in input order.
    pub index: Vec<usize>,
}

/// Represents every nonzero nonnegative integer function in `functions` by a coordinate.
pub fn encode_functions(spec: &IntervallicSpec, functions: &[Vec<u64>]) -> Result<EncodedFunctions> {
    let base = spec.m;
    let mut enc = EncodedFunctions {
        spec: spec.clone(),
        base,
        coordinate_functions: (0..base)
            .map(|i| {
                let mut f = vec![0; base];
                f[i] = 1;
                f
            })
            .collect(),
        index: Vec::new(),
    };
    let mut memo: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    for i in 0..base {
        memo.insert(enc.coordinate_functions[i].clone(), i);
    }
    fn represent(f: &[u64], enc: &mut EncodedFunctions, memo: &mut BTreeMap<Vec<u64>, usize>) -> Result<usize> {
        if let Some(&i) = memo.get(f) {
            return Ok(i);
        }
        let a = f.iter().position(|c| *c > 0).ok_or(Error::ZeroFunction)?;
        let mut rest = f.to_vec();
        rest[a] -= 1;
        let b = represent(&rest, enc, memo)?;
        let m = enc.spec.m;
        enc.spec = encode_addition(&enc.spec, a, b)?;
        let fa = enc.coordinate_functions[a].clone();
        let fb = enc.coordinate_functions[b].clone();
        enc.coordinate_functions.push(fa);
        enc.coordinate_functions.push(fb);
        enc.coordinate_functions.push(f.to_vec());
        memo.insert(f.to_vec(), m + 2);
        Ok(m + 2)
    }
    for f in functions {
        if f.len() != base {
            return Err(Error::IndexOutOfRange {
                index: f.len(),
                dim: base,
            });
        }
        let i = represent(f, &mut enc, &mut memo)?;
        enc.index.push(i);
    }
    Ok(enc)
}

/// An intervallic specification whose projection to the first `m` coordinates is `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedSystem {
    pub system: LinearSystemSpec,
    pub spec: IntervallicSpec,
    /// `m` plus one slack per strict inequality.
    pub slack_dim: usize,
    pub functions: EncodedFunctions,
    pub equated: Vec<(usize, usize)>,
}

impl EncodedSystem {
    /// The point of the intervallic set over `v`; slacks take the values of the strict forms.
    pub fn lift(&self, v: &[Rational]) -> Vec<Rational> {
        let mut base: Vec<Rational> = v.to_vec();
        for f in &self.system.strict {
            base.push(f.iter().zip(v).map(|(c, x)| rational::int(*c) * x).sum());
        }
        self.functions
            .coordinate_functions
            .iter()
            .map(|g| g.iter().zip(&base).map(|(c, x)| rational::int(*c as i64) * x).sum())
            .collect()
    }
}

/// Rewrites each equality `f = 0` as `f⁺ = f⁻` and each strict `f > 0` as `f⁺ = f⁻ + s_f`
/// with a fresh slack `s_f`, then equates the coordinates representing the two sides.
pub fn encode_system(sys: &LinearSystemSpec) -> Result<EncodedSystem> {
    sys.validate()?;
    let m = sys.m;
    let slack_dim = m + sys.strict.len();
    let mut sides: Vec<(Vec<u64>, Vec<u64>)> = Vec::new();
    let split = |f: &Vec<i64>| -> (Vec<u64>, Vec<u64>) {
        let mut plus = vec![0u64; slack_dim];
        let mut minus = vec![0u64; slack_dim];
        for (i, c) in f.iter().enumerate() {
            if *c > 0 {
                plus[i] = *c as u64;
            } else {
                minus[i] = c.unsigned_abs();
            }
        }
        (plus, minus)
    };
    for f in &sys.equalities {
        if f.iter().all(|c| *c == 0) {
            continue;
        }
        sides.push(split(f));
    }
    for (k, f) in sys.strict.iter().enumerate() {
        let (plus, mut minus) = split(f);
        minus[m + k] += 1;
        sides.push((plus, minus));
    }
    for (plus, minus) in sides.iter_mut() {
        if plus.iter().all(|c| *c == 0) || minus.iter().all(|c| *c == 0) {
            plus[0] += 1;
            minus[0] += 1;
        }
    }
    let functions: Vec<Vec<u64>> = sides.iter().flat_map(|(p, q)| [p.clone(), q.clone()]).collect();
    let enc = encode_functions(&IntervallicSpec::orthant(slack_dim), &functions)?;
    let mut spec = enc.spec.clone();
    let mut equated = Vec::new();
    for k in 0..sides.len() {
        let (a, b) = (enc.index[2 * k], enc.index[2 * k + 1]);
        let (lo, hi) = (a.min(b), a.max(b));
        spec.tuples.push(AdmissibleTuple::new(lo, lo + 1, hi, hi + 1, spec.m)?);
        equated.push((a, b));
    }
    Ok(EncodedSystem {
        system: sys.clone(),
        spec,
        slack_dim,
        functions: enc,
        equated,
    })
}

/// A subdivision whose realization space maps isomorphically onto `V`.
#[derive(Debug, Clone)]
pub struct Compiled {
    pub encoded: EncodedSystem,
    pub build: IntervallicBuild,
}

impl Compiled {
    pub fn subdivision(&self) -> &NewtonSubdivision {
        &self.build.result().base
    }

    /// The interior edges whose lengths are the coordinates of `V`.
    pub fn coordinate_edges(&self) -> &[Edge] {
        &self.build.result().marked[..self.encoded.system.m]
    }

    /// The isomorphism `R(N) -> V`.
    pub fn to_v(&self, d: &ExactMetric) -> Result<Vec<Rational>> {
        Ok(self.build.result().pi(d)?[..self.encoded.system.m].to_vec())
    }

    /// Its inverse, or `None` outside `V`.
    pub fn from_v(&self, v: &[Rational]) -> Result<Option<ExactMetric>> {
        if !self.encoded.system.contains(v) {
            return Ok(None);
        }
        self.build.lift(&self.encoded.lift(v))
    }

    /// `0/1` matrix of the isomorphism, one row per coordinate of `V`, one column per interior edge.
    pub fn iso_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let sys = exactness_system(self.subdivision())?;
        let idx = sys.edge_index();
        Ok(self
            .coordinate_edges()
            .iter()
            .map(|e| {
                let mut row = vec![0; sys.variables()];
                row[idx[e]] = 1;
                row
            })
            .collect())
    }
}

pub fn compile(sys: &LinearSystemSpec) -> Result<Compiled> {
    let encoded = encode_system(sys)?;
    let build = build_intervallic(&encoded.spec)?;
    Ok(Compiled { encoded, build })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subdivision::Face;

    #[test]
    fn base_is_extensible() {
        let n1 = base_subdivision(1).unwrap();
        assert_eq!(n1.base.n(), 2);
        assert_eq!(n1.base.interior_edges().len(), 1);
        let n3 = base_subdivision(3).unwrap();
        assert_eq!(n3.marked.len(), 3);
        assert!(exactness_system(&n3.base).unwrap().rows.is_empty());
    }

    #[test]
    fn admissibility() {
        assert!(AdmissibleTuple::new(0, 1, 1, 2, 2).is_ok());
        assert!(AdmissibleTuple::new(1, 2, 0, 1, 2).is_err());
        assert!(AdmissibleTuple::new(0, 1, 1, 3, 2).is_err());
        assert_eq!(
            AdmissibleTuple::equating(3, 4, 0, 1, 5).unwrap(),
            AdmissibleTuple::new(0, 1, 3, 4, 5).unwrap()
        );
    }

    #[test]
    fn addition_lift() {
        let s = encode_addition(&IntervallicSpec::orthant(2), 0, 1).unwrap();
        let v: Vec<Rational> = [2, 3, 2, 3, 5].iter().map(|&x| rational::int(x)).collect();
        assert!(s.contains(&v));
    }

    #[test]
    fn function_encoding_dimensions() {
        let o = IntervallicSpec::orthant(2);
        assert_eq!(encode_functions(&o, &[vec![1, 0]]).unwrap().spec.m, 2);
        assert_eq!(encode_functions(&o, &[vec![1, 1]]).unwrap().spec.m, 5);
        assert_eq!(encode_functions(&o, &[vec![2, 0]]).unwrap().spec.m, 5);
    }

    #[test]
    fn single_extension() {
        let n = base_subdivision(2).unwrap();
        let t = AdmissibleTuple::new(0, 1, 1, 2, 2).unwrap();
        let (next, ext) = extend(&n, t).unwrap();
        assert!(next.base.is_linear());
        let ones = ExactMetric {
            lengths: n.marked.iter().map(|e| (*e, rational::int(1))).collect(),
        };
        let lifted = lift_metric(&ext, &next, &ones).unwrap().unwrap();
        assert_eq!(restrict_metric(&ext, &lifted).unwrap(), ones);
        let skew = ExactMetric {
            lengths: n
                .marked
                .iter()
                .zip([1, 2])
                .map(|(e, v)| (*e, rational::int(v)))
                .collect(),
        };
        assert_eq!(lift_metric(&ext, &next, &skew).unwrap(), None);
    }

    #[test]
    fn special_faces_have_their_shapes() {
        let (next, ext) = extend(
            &base_subdivision(10).unwrap(),
            AdmissibleTuple::new(2, 5, 7, 10, 10).unwrap(),
        )
        .unwrap();
        let profile = |c: &[LatticePoint]| Face::from_cycle(c).unwrap().profile().unwrap().as_array();
        let s = &ext.special;
        assert_eq!(profile(&s.a), [1, 0, 1, 0]);
        assert_eq!(profile(&s.a_prime), [1, 1, 0, 0]);
        assert_eq!(profile(&s.b), [1, 0, 1, 1]);
        assert_eq!(profile(&s.c), [1, 0, 1, 2]);
        assert_eq!(profile(&s.d), [1, 1, 1, 0]);
        assert_eq!(profile(&s.i), [0, 1, 1, 1]);
        for (_, c) in s.all() {
            assert!(next.base.faces().iter().any(|f| f.cycle == c));
        }
    }
}
