//! Row Hermite normal form and integer kernels.
//!
//! Conventions: the HNF is the row-style echelon form h = u * m with u
//! unimodular, pivots positive, entries above each pivot reduced into
//! [0, pivot), and zero rows collected at the bottom. The integer kernel of
//! an m x n matrix A is the lattice {x in Z^n : A x = 0}; it is always
//! saturated, which is what makes it the workhorse behind saturation and
//! subspace intersections elsewhere in the crate.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::mat::{Int, IntMat};

/// Quotient rounded to the nearest integer, ties toward negative infinity.
/// Used during elimination so entries shrink as fast as in the gcd algorithm.
fn div_round(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_mod_floor(b);
    // r is in [0, |b|); bump the quotient when the remainder passes |b|/2.
    if &r + &r > b.abs() {
        q + 1
    } else {
        q
    }
}

/// Row Hermite normal form. Returns (h, u) with u * m = h and det u = ±1.
pub fn hnf(m: &IntMat) -> (IntMat, IntMat) {
    let mut h = m.clone();
    let mut u = IntMat::identity(m.rows());
    let (rows, cols) = (h.rows(), h.cols());
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        // Gcd out the column below pr using min-abs pivoting.
        loop {
            let mut best: Option<usize> = None;
            for r in pr..rows {
                if h[(r, col)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(r),
                    Some(b) => {
                        if h[(r, col)].abs() < h[(b, col)].abs() {
                            best = Some(r);
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pr, b);
            u.swap_rows(pr, b);
            let mut clean = true;
            for r in pr + 1..rows {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = div_round(&h[(r, col)], &h[(pr, col)]);
                h.row_sub_mul(r, pr, &q);
                u.row_sub_mul(r, pr, &q);
                if !h[(r, col)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(pr, col)].is_zero() {
            continue;
        }
        if h[(pr, col)].is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        // Reduce the entries above the pivot into [0, pivot).
        for r in 0..pr {
            let q = h[(r, col)].div_floor(&h[(pr, col)]);
            h.row_sub_mul(r, pr, &q);
            u.row_sub_mul(r, pr, &q);
        }
        pr += 1;
    }
    (h, u)
}

/// The Hermite form alone, with zero rows dropped. Rows form the canonical
/// basis of the row span lattice of m.
pub fn hnf_basis(m: &IntMat) -> IntMat {
    let (h, _) = hnf(m);
    let nonzero: Vec<usize> = (0..h.rows()).filter(|&i| !h.row_is_zero(i)).collect();
    let mut out = IntMat::zero(nonzero.len(), h.cols());
    for (i, &r) in nonzero.iter().enumerate() {
        for c in 0..h.cols() {
            out[(i, c)] = h[(r, c)].clone();
        }
    }
    out
}

/// Basis (as rows) of {x in Z^n : A x = 0} for an m x n matrix A.
/// The result is saturated: any integer vector killed by A is an integer
/// combination of the rows.
pub fn integer_kernel(a: &IntMat) -> IntMat {
    let (h, u) = hnf(&a.transpose());
    // u * a^T = h, so rows of u facing zero rows of h are killed by a.
    let zero_rows: Vec<usize> = (0..h.rows()).filter(|&i| h.row_is_zero(i)).collect();
    let mut out = IntMat::zero(zero_rows.len(), a.cols());
    for (i, &r) in zero_rows.iter().enumerate() {
        for c in 0..a.cols() {
            out[(i, c)] = u[(r, c)].clone();
        }
    }
    out
}

/// Number of linearly independent rows, read off the Hermite form.
pub fn row_rank(m: &IntMat) -> usize {
    hnf_basis(m).rows()
}
