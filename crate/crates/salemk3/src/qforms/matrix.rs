//! Small exact matrix helpers over `Q`, enough for Gram matrix work.

use num::Zero;

use crate::arith::Rat;

pub fn is_symmetric(m: &[Vec<Rat>]) -> bool {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return false;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if m[i][j] != m[j][i] {
                return false;
            }
        }
    }
    true
}

pub fn identity_gram(n: usize) -> Vec<Vec<Rat>> {
    let mut g = vec![vec![Rat::zero(); n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = Rat::from_integer(1.into());
    }
    g
}

pub fn transpose(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = vec![vec![Rat::zero(); rows]; cols];
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out[j][i] = v.clone();
        }
    }
    out
}

pub fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let k = if n == 0 { 0 } else { a[0].len() };
    let m = if b.is_empty() { 0 } else { b[0].len() };
    assert_eq!(k, b.len(), "inner dimensions must agree");
    let mut out = vec![vec![Rat::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if b[t][j].is_zero() {
                    continue;
                }
                let v = &out[i][j] + &(&a[i][t] * &b[t][j]);
                out[i][j] = v;
            }
        }
    }
    out
}

/// Exact determinant by Gaussian elimination with pivot search.
pub fn det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    if n == 0 {
        return Rat::from_integer(1.into());
    }
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut sign = false;
    let mut acc = Rat::from_integer(1.into());
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rat::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        let pivot = a[k][k].clone();
        acc *= &pivot;
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let v = &a[i][j] - &(&f * &a[k][j]);
                a[i][j] = v;
            }
        }
    }
    if sign {
        -acc
    } else {
        acc
    }
}

/// Block-diagonal concatenation of two square matrices.
pub fn block_diag(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let na = a.len();
    let nb = b.len();
    let n = na + nb;
    let mut out = vec![vec![Rat::zero(); n]; n];
    for (i, row) in a.iter().enumerate() {
        out[i][..na].clone_from_slice(row);
    }
    for (i, row) in b.iter().enumerate() {
        out[na + i][na..].clone_from_slice(row);
    }
    out
}
