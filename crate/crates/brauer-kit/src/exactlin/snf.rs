//! Smith normal form over Z.
//!
//! Returns u * m * v = d with u, v unimodular and d diagonal with
//! d1 | d2 | ... | dk >= 0. The divisibility chain is enforced inside the
//! pivot loop: whenever some remaining entry is not divisible by the current
//! pivot, its row is added to the pivot row and elimination restarts, which
//! strictly decreases the pivot's absolute value and so terminates.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::mat::{Int, IntMat};

pub struct Snf {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl Snf {
    /// Nonzero diagonal entries d1 | d2 | ... (including any 1s).
    pub fn nonzero_diagonal(&self) -> Vec<Int> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).take_while(|v| !v.is_zero()).collect()
    }
}

fn min_abs_pivot(d: &IntMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            if d[(i, j)].is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some(b) => {
                    if d[(i, j)].abs() < d[b].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

pub fn snf(m: &IntMat) -> Snf {
    let mut d = m.clone();
    let mut u = IntMat::identity(m.rows());
    let mut v = IntMat::identity(m.cols());
    let k = d.rows().min(d.cols());
    let mut t = 0;
    while t < k {
        let Some((pi, pj)) = min_abs_pivot(&d, t) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        'reduce: loop {
            // Clear the pivot column.
            let mut dirty = false;
            for r in t + 1..d.rows() {
                if d[(r, t)].is_zero() {
                    continue;
                }
                let q = d[(r, t)].div_floor(&d[(t, t)]);
                d.row_sub_mul(r, t, &q);
                u.row_sub_mul(r, t, &q);
                if !d[(r, t)].is_zero() {
                    // Remainder is smaller than the pivot: promote it.
                    d.swap_rows(t, r);
                    u.swap_rows(t, r);
                    dirty = true;
                }
            }
            if dirty {
                continue 'reduce;
            }
            // Clear the pivot row.
            for c in t + 1..d.cols() {
                if d[(t, c)].is_zero() {
                    continue;
                }
                let q = d[(t, c)].div_floor(&d[(t, t)]);
                d.col_sub_mul(c, t, &q);
                v.col_sub_mul(c, t, &q);
                if !d[(t, c)].is_zero() {
                    d.swap_cols(t, c);
                    v.swap_cols(t, c);
                    continue 'reduce;
                }
            }
            // Pivot divides everything in its row and column; now force it
            // to divide the rest of the submatrix.
            for i in t + 1..d.rows() {
                for j in t + 1..d.cols() {
                    if !d[(i, j)].is_multiple_of(&d[(t, t)]) {
                        // Row addition preserves unimodularity and puts a
                        // non-divisible entry into the pivot row.
                        for c in 0..d.cols() {
                            let w = d[(i, c)].clone();
                            d[(t, c)] += w;
                        }
                        for c in 0..u.cols() {
                            let w = u[(i, c)].clone();
                            u[(t, c)] += w;
                        }
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Snf { u, d, v }
}
