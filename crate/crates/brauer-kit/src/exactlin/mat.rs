//! Dense matrices over Z and Q with arbitrary-precision entries.
//!
//! These are the carriers for every computation in the crate: complex
//! structures J, Gram matrices, lattice bases, structure constants.
//! Problem sizes are small (dimension at most a few dozen), so everything
//! is dense and clone-friendly; exactness is the only performance contract.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision integer scalar.
pub type Int = BigInt;
/// Arbitrary-precision rational scalar, always stored reduced with a
/// positive denominator (the `BigRational` constructor guarantees both).
pub type Rat = BigRational;

/// Shorthand for an integer literal scalar.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Shorthand for a rational literal scalar.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Dense row-major matrix over Z.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

/// Dense row-major matrix over Q.
#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl IntMat {
    /// Zero matrix of the given shape. Zero-row and zero-column shapes are legal.
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Builds a matrix from machine-integer rows; panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = Int::from(*v);
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Int) -> Self {
        let mut m = IntMat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> IntMat {
        IntMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..=i).all(|j| {
                    let neg = -self[(j, i)].clone();
                    self[(i, j)] == neg
                })
            })
    }

    pub fn neg(&self) -> IntMat {
        IntMat::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        IntMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        IntMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut m = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    m[(i, j)] += t;
                }
            }
        }
        m
    }

    pub fn scale(&self, c: &Int) -> IntMat {
        IntMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    /// Matrix-vector product over Z.
    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Direct sum along the diagonal.
    pub fn block_diag(blocks: &[&IntMat]) -> IntMat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = IntMat::zero(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[&IntMat]) -> IntMat {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols), "shape mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut m = IntMat::zero(rows, cols);
        let mut r0 = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..cols {
                    m[(r0 + i, j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
        }
        m
    }

    /// Gcd of all entries; zero for the zero matrix.
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for v in &self.data {
            g = num_integer::gcd(g, v.abs());
        }
        g
    }

    /// Determinant by the fraction-free Bareiss algorithm. Exact.
    pub fn det(&self) -> Int {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.clone();
        let mut sign = 1i64;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
                a[(i, k)] = Int::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            let (a, b) = (i * self.cols + c, j * self.cols + c);
            self.data.swap(a, b);
        }
    }

    /// row_i -= q * row_j
    pub fn row_sub_mul(&mut self, i: usize, j: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let t = q * &self[(j, c)];
            self[(i, c)] -= t;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self[(i, c)].clone();
            self[(i, c)] = v;
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            let (a, b) = (r * self.cols + i, r * self.cols + j);
            self.data.swap(a, b);
        }
    }

    /// col_i -= q * col_j
    pub fn col_sub_mul(&mut self, i: usize, j: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let t = q * &self[(r, j)];
            self[(r, i)] -= t;
        }
    }

    pub fn negate_col(&mut self, i: usize) {
        for r in 0..self.rows {
            let v = -self[(r, i)].clone();
            self[(r, i)] = v;
        }
    }

    /// Flattens the matrix row-major into a single vector.
    pub fn flatten(&self) -> Vec<Int> {
        self.data.clone()
    }

    /// Inverse of the row-major flattening.
    pub fn from_flat(rows: usize, cols: usize, data: Vec<Int>) -> Self {
        assert_eq!(data.len(), rows * cols, "shape mismatch");
        IntMat { rows, cols, data }
    }

    pub fn to_qmat(&self) -> QMat {
        QMat::from_fn(self.rows, self.cols, |i, j| Rat::from(self[(i, j)].clone()))
    }
}

impl Index<(usize, usize)> for IntMat {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = QMat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from (numerator, denominator) machine-integer rows.
    pub fn from_ratios(rows: &[Vec<(i64, i64)>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMat::from_fn(r, c, |i, j| {
            let (n, d) = rows[i][j];
            rat(n, d)
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> QMat {
        QMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn neg(&self) -> QMat {
        QMat::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        QMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        QMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut m = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    m[(i, j)] += t;
                }
            }
        }
        m
    }

    pub fn scale(&self, c: &Rat) -> QMat {
        QMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn block_diag(blocks: &[&QMat]) -> QMat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = QMat::zero(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn vstack(blocks: &[&QMat]) -> QMat {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols), "shape mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut m = QMat::zero(rows, cols);
        let mut r0 = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..cols {
                    m[(r0 + i, j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
        }
        m
    }

    /// Clears denominators: returns (B, s) with s > 0 minimal such that
    /// s * self = B is integral, and gcd(content(B), s) = 1.
    pub fn clear_denominators(&self) -> (IntMat, Int) {
        let mut s = Int::one();
        for v in &self.data {
            s = num_integer::lcm(s, v.denom().clone());
        }
        let b = IntMat::from_fn(self.rows, self.cols, |i, j| {
            let v = &self[(i, j)];
            v.numer() * (&s / v.denom())
        });
        (b, s)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|v| v.denom().is_one())
    }

    /// Converts to an integer matrix; panics if any entry has a denominator.
    pub fn to_intmat(&self) -> IntMat {
        IntMat::from_fn(self.rows, self.cols, |i, j| {
            let v = &self[(i, j)];
            assert!(v.denom().is_one(), "non-integral entry");
            v.numer().clone()
        })
    }

    /// Rank over Q by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(rank, p);
            for r in rank + 1..rows {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let q = &a[(r, col)] / &a[(rank, col)];
                for c in col..cols {
                    let t = &q * &a[(rank, c)];
                    a[(r, c)] -= t;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            let (a, b) = (i * self.cols + c, j * self.cols + c);
            self.data.swap(a, b);
        }
    }

    /// Determinant by Gaussian elimination over Q.
    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[(r, k)].is_zero()) else {
                return Rat::zero();
            };
            if p != k {
                a.swap_rows(k, p);
                det = -det;
            }
            det *= a[(k, k)].clone();
            for r in k + 1..n {
                if a[(r, k)].is_zero() {
                    continue;
                }
                let q = &a[(r, k)] / &a[(k, k)];
                for c in k..n {
                    let t = &q * &a[(k, c)];
                    a[(r, c)] -= t;
                }
            }
        }
        det
    }

    /// Exact inverse; None when singular.
    pub fn inverse(&self) -> Option<QMat> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMat::identity(n);
        for k in 0..n {
            let p = (k..n).find(|&r| !a[(r, k)].is_zero())?;
            a.swap_rows(k, p);
            inv.swap_rows(k, p);
            let piv = a[(k, k)].clone();
            for c in 0..n {
                a[(k, c)] /= piv.clone();
                inv[(k, c)] /= piv.clone();
            }
            for r in 0..n {
                if r == k || a[(r, k)].is_zero() {
                    continue;
                }
                let q = a[(r, k)].clone();
                for c in 0..n {
                    let t = &q * &a[(k, c)];
                    a[(r, c)] -= t;
                    let t = &q * &inv[(k, c)];
                    inv[(r, c)] -= t;
                }
            }
        }
        Some(inv)
    }

    /// Solves self * x = b for a single column vector; None when there is no
    /// solution or the solution is not unique along the column space.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len(), "shape mismatch");
        let (rows, cols) = (self.rows, self.cols);
        let mut a = QMat::from_fn(rows, cols + 1, |i, j| {
            if j < cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(rank, p);
            let piv = a[(rank, col)].clone();
            for c in col..=cols {
                a[(rank, c)] /= piv.clone();
            }
            for r in 0..rows {
                if r == rank || a[(r, col)].is_zero() {
                    continue;
                }
                let q = a[(r, col)].clone();
                for c in col..=cols {
                    let t = &q * &a[(rank, c)];
                    a[(r, c)] -= t;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        // Inconsistent system: a zero row with nonzero right-hand side.
        for r in rank..rows {
            if !a[(r, cols)].is_zero() {
                return None;
            }
        }
        // Free columns would make the solution non-unique; reject them so
        // callers can rely on exactness of coordinates.
        if rank < cols {
            return None;
        }
        let mut x = vec![Rat::zero(); cols];
        for (r, &col) in pivots.iter().enumerate() {
            x[col] = a[(r, cols)].clone();
        }
        Some(x)
    }

    pub fn flatten(&self) -> Vec<Rat> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "shape mismatch");
        QMat { rows, cols, data }
    }
}

impl Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_bareiss_matches_cofactor_cases() {
        let m = IntMat::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(m.det(), int(-8));
        let m = IntMat::from_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]);
        assert_eq!(m.det(), int(-3));
        let m = IntMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det(), int(-1));
        assert_eq!(IntMat::identity(4).det(), int(1));
        let singular = IntMat::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.det(), int(0));
    }

    #[test]
    fn qmat_inverse_round_trip() {
        let m = QMat::from_ratios(&[vec![(1, 2), (1, 3)], vec![(0, 1), (2, 1)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMat::identity(2));
        assert_eq!(inv.mul(&m), QMat::identity(2));
    }

    #[test]
    fn qmat_solve_unique_and_inconsistent() {
        let a = QMat::from_ratios(&[vec![(1, 1), (1, 1)], vec![(0, 1), (1, 1)]]);
        let b = vec![rat(3, 1), rat(1, 1)];
        assert_eq!(a.solve(&b).unwrap(), vec![rat(2, 1), rat(1, 1)]);
        let a = QMat::from_ratios(&[vec![(1, 1)], vec![(2, 1)]]);
        assert!(a.solve(&[rat(1, 1), rat(3, 1)]).is_none());
    }

    #[test]
    fn clear_denominators_is_canonical() {
        let m = QMat::from_ratios(&[vec![(1, 2), (3, 4)]]);
        let (b, s) = m.clear_denominators();
        assert_eq!(s, int(4));
        assert_eq!(b, IntMat::from_rows(&[vec![2, 3]]));
    }

    #[test]
    fn content_and_blocks() {
        let m = IntMat::from_rows(&[vec![4, 6], vec![8, 0]]);
        assert_eq!(m.content(), int(2));
        let d = IntMat::block_diag(&[&IntMat::identity(1), &m]);
        assert_eq!(d.rows(), 3);
        assert_eq!(d[(1, 1)], int(4));
        assert_eq!(d[(0, 0)], int(1));
        assert_eq!(d[(0, 1)], int(0));
    }
}
