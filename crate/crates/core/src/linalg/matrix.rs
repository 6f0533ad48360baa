use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{fmt_rational, Rational};

/// Dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| super::int(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = x.clone();
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, r: &Rational) -> Self {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * r).collect() }
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Fraction-free (Bareiss) row echelon form of the integer matrix obtained
    /// by clearing denominators row by row. Pivots are chosen as the first
    /// nonzero entry scanning rows in order, column by column.
    ///
    /// Returns the echelon rows (nonzero rows only), the pivot columns and the
    /// sign of the row permutation.
    fn bareiss(&self) -> (Vec<Vec<BigInt>>, Vec<usize>, i32) {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut sign = 1;
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else { continue };
            if p != r {
                a.swap(p, r);
                sign = -sign;
            }
            let (top, bottom) = a.split_at_mut(r + 1);
            let prow = &top[r];
            let piv = prow[c].clone();
            for row in bottom.iter_mut() {
                let factor = row[c].clone();
                for j in (c + 1)..self.cols {
                    let v = &piv * &row[j] - &factor * &prow[j];
                    row[j] = if prev.is_one() { v } else { v / &prev };
                }
                row[c] = BigInt::zero();
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        (a, pivots, sign)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().1.len()
    }

    /// Determinant via fraction-free elimination.
    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        if self.rows == 0 {
            return Rational::one();
        }
        let scale = (0..self.rows).fold(BigInt::one(), |acc, i| {
            acc * self.row(i).iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
        });
        let (a, pivots, sign) = self.bareiss();
        if pivots.len() < self.rows {
            return Rational::zero();
        }
        let last = a[self.rows - 1][self.cols - 1].clone();
        Rational::new(last * BigInt::from(sign), scale)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let (a, pivots, _) = self.bareiss();
        let mut rows: Vec<Vec<Rational>> = a
            .into_iter()
            .zip(&pivots)
            .map(|(row, &p)| {
                let lead = Rational::from_integer(row[p].clone());
                row.into_iter().map(|x| Rational::from_integer(x) / &lead).collect()
            })
            .collect();
        for k in (0..rows.len()).rev() {
            let p = pivots[k];
            let (upper, rest) = rows.split_at_mut(k);
            let prow = &rest[0];
            for row in upper.iter_mut() {
                let f = row[p].clone();
                if f.is_zero() {
                    continue;
                }
                for j in p..self.cols {
                    if !prow[j].is_zero() {
                        let d = &f * &prow[j];
                        row[j] -= d;
                    }
                }
            }
        }
        let mut m = RatMatrix::zeros(rows.len(), self.cols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                m.data[i * self.cols + j] = x;
            }
        }
        (m, pivots)
    }

    /// Basis of the right kernel `{x : M x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| *self.get(i, j) == -self.get(j, i).clone()))
    }

    /// Flattened entries in row-major order.
    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn from_entries(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols);
        RatMatrix { rows, cols, data }
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<'a> Mul<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &'a RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &'a RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &'a RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Incrementally maintained reduced row echelon basis of a subspace of `Q^n`.
///
/// Rows are kept fully reduced, so the coordinates of a vector of the span
/// with respect to the stored basis are its entries at the pivot columns.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    dim: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(dim: usize) -> Self {
        RowEchelon { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors(dim: usize, vs: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let mut e = Self::new(dim);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Subtract the span's contribution at every pivot column. The result is
    /// zero exactly when `v` lies in the span.
    pub fn reduce(&self, v: &mut [Rational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Add `v` to the span. Returns `true` when the rank grew.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        assert_eq!(v.len(), self.dim);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let lead = v[p].clone();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x /= &lead;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Coordinates of a vector of the span in the stored basis.
    pub fn coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Columns that carry no pivot: a basis of a complement of the span.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.dim).filter(|&c| !is_pivot[c]).collect()
    }

    /// The vector `sum_i coords[i] * basis[i]`.
    pub fn combine(&self, coords: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        out
    }
}

fn commutant_equations(mats: &[RatMatrix], n: usize) -> RowEchelon {
    let mut eqs = RowEchelon::new(n * n);
    for a in mats {
        assert_eq!((a.rows(), a.cols()), (n, n));
        for i in 0..n {
            for j in 0..n {
                // (XA - AX)_{ij} = sum_k X_ik A_kj - A_ik X_kj
                let mut row = vec![Rational::zero(); n * n];
                for k in 0..n {
                    if !a.get(k, j).is_zero() {
                        row[i * n + k] += a.get(k, j);
                    }
                    if !a.get(i, k).is_zero() {
                        row[k * n + j] -= a.get(i, k);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    eqs.insert(row);
                }
            }
        }
    }
    eqs
}

/// Basis of `{X : X A = A X for every A in mats}` for square `n x n`
/// matrices, each `X` flattened row-major.
pub fn commutant_basis(mats: &[RatMatrix], n: usize) -> Vec<Vec<Rational>> {
    let eqs = commutant_equations(mats, n);
    if eqs.rank() == 0 {
        return RatMatrix::identity(n * n).row_vecs();
    }
    RatMatrix::from_rows(eqs.basis().to_vec()).kernel_basis()
}

pub fn commutant_dimension(mats: &[RatMatrix], n: usize) -> usize {
    n * n - commutant_equations(mats, n).rank()
}
