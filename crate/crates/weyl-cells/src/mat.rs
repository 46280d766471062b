//! Tiny exact matrix helpers for the lattice computations.
//!
//! Everything here works on dense row-major `Vec<Vec<i64>>` matrices of
//! dimension at most rank+1 (<= 9), so no attempt is made at being clever.

use num::rational::Rational64;
use num::{One, Zero};

pub(crate) type IMat = Vec<Vec<i64>>;
pub(crate) type QMat = Vec<Vec<Rational64>>;

pub(crate) fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub(crate) fn mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for t in 0..k {
            let a_it = a[i][t];
            if a_it == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += a_it * b[t][j];
            }
        }
    }
    out
}

pub(crate) fn mat_vec(a: &IMat, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub(crate) fn transpose(a: &IMat) -> IMat {
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

/// Exact inverse over the rationals by Gauss-Jordan; `None` when singular.
pub(crate) fn inv_rational(a: &IMat) -> Option<QMat> {
    let n = a.len();
    let mut m: QMat = a
        .iter()
        .map(|row| row.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect();
    let mut inv: QMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational64::one()
                    } else {
                        Rational64::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col];
        for j in 0..n {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col];
            for j in 0..n {
                let mj = m[col][j];
                let ij = inv[col][j];
                m[r][j] -= f * mj;
                inv[r][j] -= f * ij;
            }
        }
    }
    Some(inv)
}

/// Inverse of an integer matrix with determinant of absolute value 1
/// (every Weyl-group action matrix is of this kind).
pub(crate) fn inv_unimodular(a: &IMat) -> IMat {
    let inv = inv_rational(a).expect("matrix must be invertible");
    inv.iter()
        .map(|row| {
            row.iter()
                .map(|q| {
                    assert!(q.is_integer(), "matrix is not unimodular");
                    q.to_integer()
                })
                .collect()
        })
        .collect()
}
