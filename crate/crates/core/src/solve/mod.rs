//! Exact linear algebra: sparse elimination, phase-one simplex and Fourier–Motzkin.

pub mod elim;
pub mod fm;
pub mod simplex;

pub use elim::{Echelon, Parametrization, SparseRow};
