use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::Scalar;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Kernel basis with its elimination data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullspaceBasis<T> {
    pub vectors: Vec<Vec<T>>,
    pub rank: usize,
    /// Free (non-pivot) columns, ascending; `vectors[k]` has a 1 at `free[k]`.
    pub free: Vec<usize>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Build from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<T>) {
        assert_eq!(row.len(), self.cols, "row length");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn extend_rows(&mut self, other: Matrix<T>) {
        assert_eq!(other.cols, self.cols, "column count");
        self.data.extend(other.data);
        self.rows += other.rows;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Fraction-free forward elimination with pivot columns tried in `order`.
    /// Returns the echelon rows and the pivot column of each.
    fn bareiss(&self, order: &[usize]) -> (Vec<Vec<T>>, Vec<usize>) {
        let mut a: Vec<Vec<T>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut prev = T::one();
        let mut r = 0;
        for &c in order {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let (top, rest) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pv = pivot_row[c].clone();
            for row in rest.iter_mut() {
                let f = row[c].clone();
                for j in 0..self.cols {
                    let x = pv.clone() * row[j].clone() - f.clone() * pivot_row[j].clone();
                    row[j] = if x.is_zero() { x } else { x / prev.clone() };
                }
            }
            prev = pv;
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        let order: Vec<usize> = (0..self.cols).collect();
        self.bareiss(&order).1.len()
    }

    /// Reduced echelon form with pivots chosen scanning columns from the
    /// last to the first, so the free parameters are the earliest columns.
    pub fn rref_late_pivots(&self) -> (Vec<Vec<T>>, Vec<usize>) {
        let order: Vec<usize> = (0..self.cols).rev().collect();
        self.rref_with(&order)
    }

    /// Reduced echelon form with pivots scanned left to right.
    pub fn rref(&self) -> (Vec<Vec<T>>, Vec<usize>) {
        let order: Vec<usize> = (0..self.cols).collect();
        self.rref_with(&order)
    }

    fn rref_with(&self, order: &[usize]) -> (Vec<Vec<T>>, Vec<usize>) {
        let (mut a, pivots) = self.bareiss(order);
        for k in (0..pivots.len()).rev() {
            let c = pivots[k];
            let pv = a[k][c].clone();
            for x in a[k].iter_mut() {
                if !x.is_zero() {
                    *x = x.clone() / pv.clone();
                }
            }
            let pivot_row = a[k].clone();
            for row in a[..k].iter_mut() {
                let f = row[c].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x = x.clone() - f.clone() * p.clone();
                    }
                }
            }
        }
        (a, pivots)
    }

    /// Exact kernel basis. Pivots are taken from the last column backwards,
    /// free parameters are the non-pivot columns in ascending order.
    pub fn nullspace(&self) -> NullspaceBasis<T> {
        let (r, pivots) = self.rref_late_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors = free
            .iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (row, &p) in r.iter().zip(&pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect();
        NullspaceBasis { vectors, rank: pivots.len(), free }
    }

    /// One solution of `self * x = b`, free variables set to zero.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let aug = Matrix::from_rows(
            self.cols + 1,
            (0..self.rows).map(|i| [self.row(i).to_vec(), vec![b[i].clone()]].concat()).collect(),
        );
        let order: Vec<usize> = (0..=self.cols).collect();
        let (r, pivots) = aug.rref_with(&order);
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (row, &p) in r.iter().zip(&pivots) {
            x[p] = row[self.cols].clone();
        }
        Some(x)
    }

    /// Rows as CSV with exact `p/q` entries.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> = (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect();
        json!({ "rows": self.rows, "cols": self.cols, "entries": rows })
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> NullspaceBasis<T> {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn to_csv(&self) -> String {
        let cols = self.vectors.first().map_or(0, Vec::len);
        Matrix::from_rows(cols, self.vectors.clone()).to_csv()
    }
}

/// Incrementally maintained reduced row echelon form. Pivots are the last
/// nonzero column of each row, matching [`Matrix::rref_late_pivots`].
#[derive(Clone, Debug)]
pub struct RowReducer<T> {
    cols: usize,
    /// `(pivot column, row)` with the pivot entry equal to one.
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: Scalar> RowReducer<T> {
    pub fn new(cols: usize) -> Self {
        RowReducer { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Add a row; returns whether it increased the rank.
    pub fn insert(&mut self, mut row: Vec<T>) -> bool {
        assert_eq!(row.len(), self.cols, "row length");
        for (p, r) in &self.rows {
            let f = row[*p].clone();
            if !f.is_zero() {
                for (x, y) in row.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                }
            }
        }
        let Some(p) = (0..self.cols).rev().find(|&c| !row[c].is_zero()) else { return false };
        let pv = row[p].clone();
        for x in row.iter_mut().filter(|x| !x.is_zero()) {
            *x = x.clone() / pv.clone();
        }
        for (_, r) in self.rows.iter_mut() {
            let f = r[p].clone();
            if !f.is_zero() {
                for (x, y) in r.iter_mut().zip(&row) {
                    if !y.is_zero() {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                }
            }
        }
        self.rows.push((p, row));
        true
    }

    /// Kernel basis in the same convention as [`Matrix::nullspace`].
    pub fn nullspace(&self) -> NullspaceBasis<T> {
        let pivots: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors = free
            .iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (p, row) in &self.rows {
                    v[*p] = -row[f].clone();
                }
                v
            })
            .collect();
        NullspaceBasis { vectors, rank: pivots.len(), free }
    }
}
