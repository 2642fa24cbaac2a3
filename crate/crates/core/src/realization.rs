//! Exact metrics, realizability and reconstruction of arrangements.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::lattice::LatticePoint;
use crate::newton::build_subdivision_with_origins;
use crate::rational::{self, Rational};
use crate::solve::elim::{self, Echelon, SparseRow};
use crate::solve::fm::{self, Constraint, Relation};
use crate::solve::simplex::{phase1, Phase1};
use crate::subdivision::{Edge, NewtonSubdivision};

/// A length for every interior edge.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExactMetric {
    pub lengths: BTreeMap<Edge, Rational>,
}

impl ExactMetric {
    pub fn get(&self, e: &Edge) -> Option<&Rational> {
        self.lengths.get(e)
    }

    pub fn scale(&self, s: &Rational) -> ExactMetric {
        ExactMetric {
            lengths: self.lengths.iter().map(|(e, v)| (*e, v * s)).collect(),
        }
    }
}

/// The exactness equations: two rows per interior vertex over one variable per interior edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationSystem {
    pub edges: Vec<Edge>,
    pub vertices: Vec<LatticePoint>,
    pub rows: Vec<SparseRow>,
}

impl RealizationSystem {
    pub fn variables(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self) -> BTreeMap<Edge, usize> {
        self.edges.iter().enumerate().map(|(i, e)| (*e, i)).collect()
    }

    pub fn vector(&self, d: &ExactMetric) -> Result<Vec<Rational>> {
        self.edges
            .iter()
            .map(|e| d.get(e).cloned().ok_or(Error::MissingEdgeLength(e.a, e.b)))
            .collect()
    }

    pub fn metric(&self, x: &[Rational]) -> ExactMetric {
        ExactMetric {
            lengths: self.edges.iter().copied().zip(x.iter().cloned()).collect(),
        }
    }

    pub fn residual(&self, x: &[Rational]) -> Vec<Rational> {
        self.rows.iter().map(|r| elim::dot(r, x)).collect()
    }

    /// `x = M t` for all solutions of the equations.
    pub fn kernel(&self) -> elim::Parametrization {
        self.kernel_with_priority(vec![0; self.variables()])
    }

    pub fn kernel_with_priority(&self, priority: Vec<u32>) -> elim::Parametrization {
        let mut e = Echelon::with_priority(self.variables(), priority);
        for r in &self.rows {
            e.push(r.clone());
        }
        e.kernel()
    }
}

fn primitive(v: LatticePoint) -> LatticePoint {
    let g = v.lattice_length();
    LatticePoint::new(v.x / g, v.y / g)
}

pub fn exactness_system(sub: &NewtonSubdivision) -> Result<RealizationSystem> {
    if !sub.is_linear() {
        return Err(Error::NotLinear);
    }
    let edges = sub.interior_edges();
    let vertices = sub.interior_vertices();
    let vindex: BTreeMap<LatticePoint, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut rows = vec![SparseRow::new(); 2 * vertices.len()];
    for (j, e) in edges.iter().enumerate() {
        for (v, w) in [(e.a, e.b), (e.b, e.a)] {
            if let Some(&i) = vindex.get(&v) {
                let u = primitive(w - v);
                if u.x != 0 {
                    rows[2 * i].insert(j, rational::int(u.x));
                }
                if u.y != 0 {
                    rows[2 * i + 1].insert(j, rational::int(u.y));
                }
            }
        }
    }
    Ok(RealizationSystem { edges, vertices, rows })
}

pub fn is_exact_metric(sub: &NewtonSubdivision, d: &ExactMetric) -> Result<bool> {
    let sys = exactness_system(sub)?;
    let x = sys.vector(d)?;
    Ok(x.iter().all(Signed::is_positive) && sys.residual(&x).iter().all(Zero::is_zero))
}

/// Multipliers `u` on the exactness equations whose combination `uᵀA` is nonnegative and
/// nonzero, ruling out any positive solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub multipliers: Vec<Rational>,
}

impl Certificate {
    pub fn combination(&self, sys: &RealizationSystem) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); sys.variables()];
        for (u, row) in self.multipliers.iter().zip(&sys.rows) {
            for (&j, a) in row {
                out[j] += u * a;
            }
        }
        out
    }

    pub fn verify(&self, sys: &RealizationSystem) -> bool {
        let c = self.combination(sys);
        self.multipliers.len() == sys.rows.len()
            && c.iter().all(|v| !v.is_negative())
            && c.iter().any(|v| v.is_positive())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realizability {
    Witness(ExactMetric),
    Infeasible(Certificate),
}

/// Decides whether `N` carries an exact metric, returning a verified witness or certificate.
pub fn is_realizable(sub: &NewtonSubdivision) -> Result<Realizability> {
    let sys = exactness_system(sub)?;
    let k = sys.variables();
    if k == 0 {
        return Ok(Realizability::Witness(ExactMetric::default()));
    }
    let m = sys.kernel();
    let r = m.dim();
    let dense = m.dense();
    // y >= 0, Mᵀ y = 0, 1ᵀ y = 1 is feasible iff no t has M t > 0
    let mut bmat: Vec<Vec<Rational>> = (0..r).map(|j| (0..k).map(|i| dense[i][j].clone()).collect()).collect();
    bmat.push(vec![Rational::one(); k]);
    let mut b = vec![Rational::zero(); r];
    b.push(Rational::one());
    match phase1(&bmat, &b) {
        Phase1::Feasible(y) => {
            let at: Vec<SparseRow> = {
                let mut cols = vec![SparseRow::new(); k];
                for (i, row) in sys.rows.iter().enumerate() {
                    for (&j, a) in row {
                        cols[j].insert(i, a.clone());
                    }
                }
                cols
            };
            let u = elim::solve(sys.rows.len(), &at, &y)
                .ok_or_else(|| Error::Internal("dual ray outside the row space".into()))?;
            let cert = Certificate { multipliers: u };
            if !cert.verify(&sys) {
                return Err(Error::Internal("certificate failed verification".into()));
            }
            Ok(Realizability::Infeasible(cert))
        }
        Phase1::Infeasible(z) => {
            let lambda = &z[r];
            let scale = -(Rational::one() / lambda);
            let t: Vec<Rational> = z[..r].iter().map(|v| v * &scale).collect();
            let x = m.eval(&t);
            let d = sys.metric(&x);
            if !x.iter().all(|v| *v >= Rational::one()) || !sys.residual(&x).iter().all(Zero::is_zero) {
                return Err(Error::Internal("witness failed verification".into()));
            }
            Ok(Realizability::Witness(d))
        }
    }
}

/// Independent decision of realizability by Fourier–Motzkin elimination.
pub fn is_realizable_fm(sub: &NewtonSubdivision) -> Result<bool> {
    let sys = exactness_system(sub)?;
    let k = sys.variables();
    let mut rows: Vec<Constraint> = sys
        .rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let mut c = vec![Rational::zero(); k];
            for (&j, a) in r {
                c[j] = a.clone();
            }
            Constraint::new(c, Relation::Eq, Rational::zero())
        })
        .collect();
    rows.extend((0..k).map(|i| Constraint::positive(k, i)));
    Ok(fm::feasible(rows, k))
}

/// Canonical form of the image of `R(N)` under `d -> (d(coords[0]), ...)`.
pub fn projected_realization_space(sub: &NewtonSubdivision, coords: &[Edge]) -> Result<fm::Canonical> {
    let sys = exactness_system(sub)?;
    let idx = sys.edge_index();
    let cols: Vec<usize> = coords
        .iter()
        .map(|e| idx.get(e).copied().ok_or(Error::MissingEdgeLength(e.a, e.b)))
        .collect::<Result<_>>()?;
    let m = cols.len();
    let mut priority = vec![0; sys.variables()];
    for &c in &cols {
        priority[c] = 1;
    }
    let k = sys.kernel_with_priority(priority);
    // free parameters that are coordinates keep their index, the others follow
    let mut var_of: Vec<usize> = Vec::with_capacity(k.dim());
    let mut extra = m;
    for f in &k.free {
        match cols.iter().position(|c| c == f) {
            Some(i) => var_of.push(i),
            None => {
                var_of.push(extra);
                extra += 1;
            }
        }
    }
    let nvars = extra;
    let form = |j: usize| -> Vec<Rational> {
        let mut c = vec![Rational::zero(); nvars];
        for (&t, v) in &k.rows[j] {
            c[var_of[t]] += v;
        }
        c
    };
    let mut rows: Vec<Constraint> = Vec::new();
    for j in 0..sys.variables() {
        rows.push(Constraint::new(form(j), Relation::Gt, Rational::zero()));
    }
    for (i, &c) in cols.iter().enumerate() {
        let mut f = form(c);
        f[i] -= Rational::one();
        rows.push(Constraint::new(f, Relation::Eq, Rational::zero()));
    }
    let keep: Vec<usize> = (0..m).collect();
    let Some(rows) = fm::project(rows, nvars, &keep) else {
        return Ok(fm::Canonical::Empty);
    };
    let rows = rows
        .into_iter()
        .map(|r| Constraint::new(r.coeffs[..m].to_vec(), r.rel, r.rhs))
        .collect();
    Ok(fm::canonical(rows, m))
}

/// Direction of the arrangement edge dual to the ccw side `a -> b` of a face.
fn dual_direction(a: LatticePoint, b: LatticePoint) -> LatticePoint {
    primitive(b - a).rot_cw()
}

/// The subdivision of `arr` together with the lengths of its bounded edges.
pub fn measure(arr: &Arrangement) -> Result<(NewtonSubdivision, ExactMetric)> {
    let (sub, origins) = build_subdivision_with_origins(arr)?;
    let mut lengths = BTreeMap::new();
    for (e, [left, right]) in sub.edge_faces() {
        let (Some(l), Some(r)) = (left, right) else { continue };
        let w = dual_direction(e.a, e.b);
        let delta = &origins[r] - &origins[l];
        let len = if w.x != 0 {
            &delta.x / rational::int(w.x)
        } else {
            &delta.y / rational::int(w.y)
        };
        if offset(&Point::origin(), w, &len) != delta {
            return Err(Error::Internal(format!("edge {}-{} not dual to its segment", e.a, e.b)));
        }
        lengths.insert(e, len);
    }
    Ok((sub, ExactMetric { lengths }))
}

/// `p + s·w`.
fn offset(p: &Point, w: LatticePoint, s: &Rational) -> Point {
    Point::new(&p.x + s * rational::int(w.x), &p.y + s * rational::int(w.y))
}

/// Places one arrangement vertex per face by walking the face adjacency graph from face 0
/// at the origin, then reads off the centers from the triangle-type faces.
pub fn reconstruct(sub: &NewtonSubdivision, d: &ExactMetric) -> Result<Arrangement> {
    if !is_exact_metric(sub, d)? {
        return Err(Error::NotExact("lengths violate positivity or exactness".into()));
    }
    let faces = sub.faces();
    let mut crossings: Vec<Vec<(usize, LatticePoint, Rational)>> = vec![Vec::new(); faces.len()];
    for (e, [left, right]) in sub.edge_faces() {
        let (Some(l), Some(r)) = (left, right) else { continue };
        let len = d.get(&e).ok_or(Error::MissingEdgeLength(e.a, e.b))?;
        let w = dual_direction(e.a, e.b);
        crossings[l].push((r, w, len.clone()));
        crossings[r].push((l, -w, len.clone()));
    }
    let mut pos: Vec<Option<Point>> = vec![None; faces.len()];
    pos[0] = Some(Point::origin());
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        let here = pos[f].clone().expect("placed");
        for (g, w, len) in &crossings[f] {
            let there = offset(&here, *w, len);
            match &pos[*g] {
                Some(p) if *p != there => {
                    return Err(Error::InconsistentPlacement(format!(
                        "face {g} placed at {p} and {there}"
                    )));
                }
                Some(_) => {}
                None => {
                    pos[*g] = Some(there);
                    queue.push_back(*g);
                }
            }
        }
    }
    let mut centers = Vec::new();
    for (f, p) in faces.iter().zip(pos) {
        let p = p.ok_or_else(|| Error::InconsistentPlacement("disconnected face graph".into()))?;
        match f.profile()?.c {
            0 => {}
            1 => centers.push(p),
            c => {
                return Err(Error::InconsistentPlacement(format!(
                    "{c} lines would share the center {p}"
                )))
            }
        }
    }
    Arrangement::from_centers(centers)
}
