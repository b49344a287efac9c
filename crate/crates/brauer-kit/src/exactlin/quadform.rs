//! Exact signature and definiteness of rational symmetric matrices.

use num_traits::{Signed, Zero};

use super::mat::QMat;
use super::Error;

/// Congruence diagonalization: returns (r, d) with r * g * r^T = d diagonal
/// and r invertible over Q. Symmetric row/column elimination; when the
/// remaining diagonal is all zero, a row addition creates a nonzero pivot.
pub fn congruence_diagonalize(g: &QMat) -> Result<(QMat, QMat), Error> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = g.rows();
    let mut d = g.clone();
    let mut r = QMat::identity(n);
    for t in 0..n {
        if d[(t, t)].is_zero() {
            // Prefer swapping in a later nonzero diagonal entry.
            if let Some(p) = (t + 1..n).find(|&i| !d[(i, i)].is_zero()) {
                d.swap_rows(t, p);
                swap_cols(&mut d, t, p);
                r.swap_rows(t, p);
            } else if let Some(p) = (t + 1..n).find(|&i| !d[(t, i)].is_zero()) {
                // All remaining diagonal entries vanish but row t does not:
                // (e_t + e_p) has nonzero square 2 * d[t][p].
                add_row_col(&mut d, t, p);
                for c in 0..n {
                    let t_val = r[(p, c)].clone();
                    r[(t, c)] += t_val;
                }
            } else {
                // Row t is zero on and after the diagonal; by symmetry the
                // column is zero too, so it contributes a zero eigenvalue.
                continue;
            }
        }
        for i in t + 1..n {
            if d[(i, t)].is_zero() {
                continue;
            }
            let q = &d[(i, t)] / &d[(t, t)];
            for c in 0..n {
                let step = &q * &d[(t, c)];
                d[(i, c)] -= step;
                let step = &q * &r[(t, c)];
                r[(i, c)] -= step;
            }
            for rr in 0..n {
                let step = &q * &d[(rr, t)];
                d[(rr, i)] -= step;
            }
        }
    }
    Ok((r, d))
}

fn swap_cols(m: &mut QMat, i: usize, j: usize) {
    for r in 0..m.rows() {
        let a = m[(r, i)].clone();
        let b = m[(r, j)].clone();
        m[(r, i)] = b;
        m[(r, j)] = a;
    }
}

/// Symmetric row+column addition: row t += row p, then col t += col p.
fn add_row_col(m: &mut QMat, t: usize, p: usize) {
    let n = m.cols();
    for c in 0..n {
        let v = m[(p, c)].clone();
        m[(t, c)] += v;
    }
    for r in 0..m.rows() {
        let v = m[(r, p)].clone();
        m[(r, t)] += v;
    }
}

/// Signature (positive, negative, zero) of a symmetric rational matrix.
pub fn exact_signature(g: &QMat) -> Result<(usize, usize, usize), Error> {
    let (_, d) = congruence_diagonalize(g)?;
    let mut sig = (0usize, 0usize, 0usize);
    for i in 0..d.rows() {
        let v = &d[(i, i)];
        if v.is_zero() {
            sig.2 += 1;
        } else if v.is_positive() {
            sig.0 += 1;
        } else {
            sig.1 += 1;
        }
    }
    Ok(sig)
}

/// Sylvester criterion with exact rational minors.
pub fn is_positive_definite(g: &QMat) -> Result<bool, Error> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    for k in 1..=g.rows() {
        let minor = QMat::from_fn(k, k, |i, j| g[(i, j)].clone());
        if !minor.det().is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_negative_definite(g: &QMat) -> Result<bool, Error> {
    is_positive_definite(&g.neg())
}
