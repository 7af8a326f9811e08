//! Exact Gauss-Jordan elimination over ℚ.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Rational;

pub type QMatrix = Vec<Vec<Rational>>;

pub fn from_integers(rows: &[Vec<i64>]) -> QMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
        .collect()
}

pub fn identity(n: usize) -> QMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Row-reduces in place and returns the pivot columns.
fn reduce(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &QMatrix) -> usize {
    reduce(&mut m.clone()).len()
}

/// Exact inverse; `Singular` names the rank when it falls short.
pub fn inverse(a: &QMatrix) -> Result<QMatrix> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::Singular(format!("{n}-row system is not square")));
    }
    let mut aug: QMatrix = a
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    let pivots = reduce(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return Err(Error::Singular(format!("rank {} of {n}", rank(a))));
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}
