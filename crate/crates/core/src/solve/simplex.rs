//! Phase-one simplex with Bland's rule over the rationals.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Outcome of deciding `{y : B y = b, y >= 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Phase1 {
    Feasible(Vec<Rational>),
    /// `z` with `Bᵀ z >= 0` and `bᵀ z < 0`.
    Infeasible(Vec<Rational>),
}

/// Decides feasibility of `B y = b, y >= 0` for dense `B` (rows x cols).
pub fn phase1(bmat: &[Vec<Rational>], b: &[Rational]) -> Phase1 {
    let m = bmat.len();
    let k = if m == 0 { 0 } else { bmat[0].len() };
    let width = k + m + 1;
    let mut flip = vec![false; m];
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        flip[i] = b[i].is_negative();
        let s = if flip[i] { -Rational::one() } else { Rational::one() };
        let mut row = vec![Rational::zero(); width];
        for j in 0..k {
            row[j] = &bmat[i][j] * &s;
        }
        row[k + i] = Rational::one();
        row[width - 1] = &b[i] * &s;
        t.push(row);
    }
    // reduced costs of the phase-one objective (sum of artificials), rhs holds minus its value
    let mut obj = vec![Rational::zero(); width];
    for j in (0..k).chain(core::iter::once(width - 1)) {
        obj[j] = -t.iter().map(|r| r[j].clone()).sum::<Rational>();
    }
    let mut basis: Vec<usize> = (k..k + m).collect();
    while let Some(enter) = (0..k + m).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((l, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // unbounded below is impossible for a sum of nonnegative artificials
            unreachable!("phase-one objective is bounded");
        };
        let inv = Rational::one() / &t[r][enter];
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, p) in obj.iter_mut().zip(&pivot) {
                *x -= &f * p;
            }
        }
        basis[r] = enter;
    }
    if obj[width - 1].is_zero() {
        let mut y = vec![Rational::zero(); k];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < k {
                y[bv] = t[i][width - 1].clone();
            }
        }
        Phase1::Feasible(y)
    } else {
        // duals pi_i = 1 - (reduced cost of artificial i); z = -pi in the original row signs
        let z = (0..m)
            .map(|i| {
                let pi = Rational::one() - &obj[k + i];
                if flip[i] {
                    pi
                } else {
                    -pi
                }
            })
            .collect();
        Phase1::Infeasible(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn feasible_point() {
        let b = mat(&[&[1, 1, 0], &[0, 1, 1]]);
        match phase1(&b, &[int(2), int(3)]) {
            Phase1::Feasible(y) => {
                assert_eq!(&y[0] + &y[1], int(2));
                assert_eq!(&y[1] + &y[2], int(3));
                assert!(y.iter().all(|v| !v.is_negative()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn farkas_certificate() {
        // y0 - y1 = 1, y1 - y0 = 1 is infeasible
        let b = mat(&[&[1, -1], &[-1, 1]]);
        let rhs = [int(1), int(1)];
        match phase1(&b, &rhs) {
            Phase1::Infeasible(z) => {
                for j in 0..2 {
                    let s: Rational = b.iter().zip(&z).map(|(row, zi)| &row[j] * zi).sum();
                    assert!(!s.is_negative());
                }
                let s: Rational = (0..2).map(|i| &rhs[i] * &z[i]).sum();
                assert!(s.is_negative());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_rhs() {
        let b = mat(&[&[1]]);
        match phase1(&b, &[int(-1)]) {
            Phase1::Infeasible(z) => {
                assert!(!(&b[0][0] * &z[0]).is_negative());
                assert!((&int(-1) * &z[0]).is_negative());
            }
            other => panic!("{other:?}"),
        }
    }
}
