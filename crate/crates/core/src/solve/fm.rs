//! Fourier–Motzkin elimination and canonical forms of polyhedra with strict inequalities.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::elim::{Echelon, SparseRow};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Eq,
    Ge,
    Gt,
}

/// `coeffs · x  rel  rhs`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, rel: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, rel, rhs }
    }

    /// `x_i > 0` in dimension `n`.
    pub fn positive(n: usize, i: usize) -> Self {
        let mut c = alloc::vec![Rational::zero(); n];
        c[i] = Rational::one();
        Constraint::new(c, Relation::Gt, Rational::zero())
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        match self.rel {
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Gt => lhs > self.rhs,
        }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn trivially_true(&self) -> bool {
        let z = Rational::zero();
        match self.rel {
            Relation::Eq => self.rhs == z,
            Relation::Ge => z >= self.rhs,
            Relation::Gt => z > self.rhs,
        }
    }

    /// Scales by a positive factor to a primitive integer row (equalities: first nonzero positive).
    fn normalized(&self) -> Constraint {
        let entries = self.coeffs.iter().chain(core::iter::once(&self.rhs));
        let lcm = entries.clone().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = entries
            .map(|q| (q * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if g.is_zero() {
            return self.clone();
        }
        let mut g = Rational::from_integer(g);
        if self.rel == Relation::Eq {
            if let Some(first) = ints.iter().find(|v| !v.is_zero()) {
                if first.is_negative() {
                    g = -g;
                }
            }
        }
        let mut scaled: Vec<Rational> = ints.into_iter().map(|v| Rational::from_integer(v) / &g).collect();
        let rhs = scaled.pop().expect("rhs");
        Constraint::new(scaled, self.rel, rhs)
    }

    fn negation(&self) -> Constraint {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        let rel = match self.rel {
            Relation::Ge => Relation::Gt,
            Relation::Gt => Relation::Ge,
            Relation::Eq => panic!("negation of an equality is not convex"),
        };
        Constraint::new(coeffs, rel, -&self.rhs)
    }
}

/// Drops trivially true rows and duplicates, and keeps only the tightest of parallel inequalities.
fn simplify(rows: Vec<Constraint>) -> Option<Vec<Constraint>> {
    let mut out: Vec<Constraint> = Vec::new();
    let mut seen: BTreeSet<Constraint> = BTreeSet::new();
    for r in rows {
        if r.is_trivial() {
            if !r.trivially_true() {
                return None;
            }
            continue;
        }
        let r = r.normalized();
        if seen.insert(r.clone()) {
            out.push(r);
        }
    }
    // among inequalities with identical left-hand sides keep the tightest
    out.sort_by(|a, b| {
        a.coeffs
            .cmp(&b.coeffs)
            .then_with(|| b.rhs.cmp(&a.rhs))
            .then_with(|| b.rel.cmp(&a.rel))
    });
    let mut kept: Vec<Constraint> = Vec::new();
    for r in out {
        if r.rel != Relation::Eq {
            if let Some(last) = kept.last() {
                if last.rel != Relation::Eq && last.coeffs == r.coeffs {
                    continue;
                }
            }
        }
        kept.push(r);
    }
    Some(kept)
}

/// Eliminates variable `v`; `None` signals a trivially infeasible row.
pub fn eliminate(rows: Vec<Constraint>, v: usize) -> Option<Vec<Constraint>> {
    if let Some(k) = rows
        .iter()
        .position(|r| r.rel == Relation::Eq && !r.coeffs[v].is_zero())
    {
        let eq = rows[k].clone();
        let out = rows
            .into_iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, r)| {
                if r.coeffs[v].is_zero() {
                    return r;
                }
                let f = &r.coeffs[v] / &eq.coeffs[v];
                let coeffs = r.coeffs.iter().zip(&eq.coeffs).map(|(a, b)| a - &f * b).collect();
                Constraint::new(coeffs, r.rel, &r.rhs - &f * &eq.rhs)
            })
            .collect();
        return simplify(out);
    }
    let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        if r.coeffs[v].is_positive() {
            pos.push(r);
        } else if r.coeffs[v].is_negative() {
            neg.push(r);
        } else {
            rest.push(r);
        }
    }
    for p in &pos {
        for q in &neg {
            let (a, b) = (&p.coeffs[v], -&q.coeffs[v]);
            let coeffs = p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| x * &b + y * a).collect();
            let rel = if p.rel == Relation::Gt || q.rel == Relation::Gt {
                Relation::Gt
            } else {
                Relation::Ge
            };
            rest.push(Constraint::new(coeffs, rel, &p.rhs * &b + &q.rhs * a));
        }
    }
    simplify(rest)
}

fn elimination_order(rows: &[Constraint], vars: &BTreeSet<usize>) -> Option<usize> {
    if let Some(v) = vars
        .iter()
        .copied()
        .find(|&v| rows.iter().any(|r| r.rel == Relation::Eq && !r.coeffs[v].is_zero()))
    {
        return Some(v);
    }
    vars.iter().copied().min_by_key(|&v| {
        let p = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
        let n = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
        p * n
    })
}

/// Projects onto the variables in `keep` by eliminating all others; `None` if empty.
pub fn project(rows: Vec<Constraint>, nvars: usize, keep: &[usize]) -> Option<Vec<Constraint>> {
    let mut vars: BTreeSet<usize> = (0..nvars).filter(|v| !keep.contains(v)).collect();
    let mut rows = simplify(rows)?;
    while let Some(v) = elimination_order(&rows, &vars) {
        vars.remove(&v);
        rows = eliminate(rows, v)?;
    }
    Some(rows)
}

pub fn feasible(rows: Vec<Constraint>, nvars: usize) -> bool {
    project(rows, nvars, &[]).is_some()
}

/// Irredundant description of a nonempty polyhedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Canonical {
    Empty,
    Polyhedron {
        equalities: Vec<Constraint>,
        inequalities: Vec<Constraint>,
    },
}

/// Canonical form: reduced equalities (including implicit ones), then inequalities reduced
/// modulo the equalities, normalized, deduplicated, stripped of redundant rows and sorted.
pub fn canonical(rows: Vec<Constraint>, nvars: usize) -> Canonical {
    let Some(mut rows) = simplify(rows) else {
        return Canonical::Empty;
    };
    if !feasible(rows.clone(), nvars) {
        return Canonical::Empty;
    }
    loop {
        let mut changed = false;
        for i in 0..rows.len() {
            if rows[i].rel != Relation::Ge {
                continue;
            }
            let mut probe = rows.clone();
            probe[i].rel = Relation::Gt;
            if !feasible(probe, nvars) {
                rows[i].rel = Relation::Eq;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut ech = Echelon::new(nvars + 1);
    for r in rows.iter().filter(|r| r.rel == Relation::Eq) {
        ech.push(to_sparse(r, nvars));
    }
    let rref = ech.rref();
    let equalities: Vec<Constraint> = rref.values().map(|row| from_sparse(row, nvars, Relation::Eq)).collect();
    let mut ineqs: Vec<Constraint> = Vec::new();
    for r in rows.iter().filter(|r| r.rel != Relation::Eq) {
        let mut s = to_sparse(r, nvars);
        for (p, row) in &rref {
            if let Some(f) = s.get(p).cloned() {
                super::elim::axpy(&mut s, &-f, row);
            }
        }
        ineqs.push(from_sparse(&s, nvars, r.rel));
    }
    let Some(mut ineqs) = simplify(ineqs) else {
        return Canonical::Empty;
    };
    ineqs.sort();
    let mut i = 0;
    while i < ineqs.len() {
        let mut probe: Vec<Constraint> = equalities.clone();
        probe.extend(
            ineqs
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, r)| r.clone()),
        );
        probe.push(ineqs[i].negation());
        if implied_by_positivity(&ineqs, i) || !feasible(probe, nvars) {
            ineqs.remove(i);
        } else {
            i += 1;
        }
    }
    let mut equalities = equalities;
    equalities.sort();
    Canonical::Polyhedron {
        equalities,
        inequalities: ineqs,
    }
}

/// `g · x > r` with `g >= 0`, `r <= 0` and `x_i > 0` present for all `i` in the support of `g`.
fn implied_by_positivity(rows: &[Constraint], i: usize) -> bool {
    let g = &rows[i];
    if g.rhs.is_positive() || g.coeffs.iter().any(Signed::is_negative) {
        return false;
    }
    let n = g.coeffs.len();
    g.coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_positive())
        .all(|(k, _)| {
            rows.iter()
                .enumerate()
                .any(|(j, r)| j != i && *r == Constraint::positive(n, k))
        })
}

/// Row `coeffs · x - rhs`, with the constant in column `nvars`.
fn to_sparse(r: &Constraint, nvars: usize) -> SparseRow {
    let mut s: SparseRow = r
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect();
    if !r.rhs.is_zero() {
        s.insert(nvars, -&r.rhs);
    }
    s
}

fn from_sparse(s: &SparseRow, nvars: usize, rel: Relation) -> Constraint {
    let mut coeffs = alloc::vec![Rational::zero(); nvars];
    let mut rhs = Rational::zero();
    for (&c, v) in s {
        if c == nvars {
            rhs = -v;
        } else {
            coeffs[c] = v.clone();
        }
    }
    Constraint::new(coeffs, rel, rhs).normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn c(coeffs: &[i64], rel: Relation, rhs: i64) -> Constraint {
        Constraint::new(coeffs.iter().map(|&v| int(v)).collect(), rel, int(rhs))
    }

    #[test]
    fn strictness_matters() {
        assert!(feasible(
            [c(&[1], Relation::Ge, 0), c(&[-1], Relation::Ge, 0)].to_vec(),
            1
        ));
        assert!(!feasible(
            [c(&[1], Relation::Gt, 0), c(&[-1], Relation::Ge, 0)].to_vec(),
            1
        ));
    }

    #[test]
    fn projection() {
        // x > y > 0 projects to x > 0
        let rows = [c(&[1, -1], Relation::Gt, 0), c(&[0, 1], Relation::Gt, 0)].to_vec();
        let p = project(rows, 2, &[0]).unwrap();
        assert_eq!(p, [c(&[1, 0], Relation::Gt, 0)]);
    }

    #[test]
    fn canonical_forms_agree() {
        let a = [
            c(&[1, 0], Relation::Gt, 0),
            c(&[0, 1], Relation::Gt, 0),
            c(&[2, 2], Relation::Gt, 0),
            c(&[1, -1], Relation::Eq, 0),
        ];
        let b = [c(&[3, 0], Relation::Gt, 0), c(&[-2, 2], Relation::Eq, 0)];
        assert_eq!(canonical(a.to_vec(), 2), canonical(b.to_vec(), 2));
        let implicit = [
            c(&[1, -1], Relation::Ge, 0),
            c(&[-1, 1], Relation::Ge, 0),
            c(&[1, 0], Relation::Gt, 0),
        ];
        assert_eq!(canonical(implicit.to_vec(), 2), canonical(b.to_vec(), 2));
        assert_eq!(
            canonical([c(&[1], Relation::Gt, 0), c(&[-1], Relation::Gt, 0)].to_vec(), 1),
            Canonical::Empty
        );
    }
}
