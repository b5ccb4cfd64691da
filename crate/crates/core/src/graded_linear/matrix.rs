//! Dense rational matrices and exact Gaussian elimination.

use super::scalar::{height, is_zero_vec, one, zero, zero_vec, Scalar};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Scalar>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: &Scalar) {
        if !x.is_zero() {
            self.data[i * self.cols + j] += x;
        }
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        let mut out = zero_vec(self.rows);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| c * a).collect(),
        }
    }

    /// Columns of `self` restricted to `cols`, rows restricted to `rows`.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                let x = self.get(i, j);
                if !x.is_zero() {
                    m.set(a, b, x.clone());
                }
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        kernel(self)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        inverse(self)
    }

    /// Direct sum `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Stacks `[self | other]` horizontally.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Stacks `self` over `other`.
    pub fn vcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }
}

/// Reduced row echelon form and pivot columns. Among the candidate rows of
/// each column the entry of smallest height is chosen as pivot.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !a.get(i, c).is_zero())
            .min_by_key(|&i| height(a.get(i, c)));
        let Some(p) = best else { continue };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = one() / a.get(r, c);
        for j in c..cols {
            let x = &a.data[r * cols + j] * &inv;
            a.data[r * cols + j] = x;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let x = a.get(r, j);
                if !x.is_zero() {
                    let y = &f * x;
                    a.data[i * cols + j] -= y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn kernel(m: &Matrix) -> Vec<Vec<Scalar>> {
    let (r, pivots) = rref(m);
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = zero_vec(n);
        v[f] = one();
        for (row, &p) in pivots.iter().enumerate() {
            let x = r.get(row, f);
            if !x.is_zero() {
                v[p] = -x.clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// One solution of `m x = b`, if any.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(m.rows, b.len(), "right-hand side length");
    let aug = m.hcat(&Matrix::from_cols(&[b.to_vec()], m.rows));
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = zero_vec(m.cols);
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r.get(row, m.cols).clone();
    }
    Some(x)
}

/// Solves `m X = b` column by column.
pub fn solve_matrix(m: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(m.rows, b.rows);
    let aug = m.hcat(b);
    let (r, pivots) = rref(&aug);
    if pivots.iter().any(|&p| p >= m.cols) {
        return None;
    }
    let mut x = Matrix::zeros(m.cols, b.cols);
    for (row, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(p, j, r.get(row, m.cols + j).clone());
        }
    }
    Some(x)
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if m.rows != m.cols {
        return None;
    }
    let x = solve_matrix(m, &Matrix::identity(m.rows))?;
    if m.rank() == m.rows {
        Some(x)
    } else {
        None
    }
}

/// Indices of a maximal independent subfamily, chosen greedily in order.
pub fn independent_subset(vectors: &[Vec<Scalar>], n: usize) -> Vec<usize> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_cols(vectors, n);
    rref(&m).1
}

/// Extends independent `vectors` in `K^n` to a basis using unit vectors;
/// returns the added vectors.
pub fn complete_basis(vectors: &[Vec<Scalar>], n: usize) -> Vec<Vec<Scalar>> {
    let mut all = vectors.to_vec();
    for i in 0..n {
        all.push(super::scalar::unit_vec(n, i));
    }
    independent_subset(&all, n)
        .into_iter()
        .filter(|&i| i >= vectors.len())
        .map(|i| all[i].clone())
        .collect()
}

/// Coordinates of `v` in the span of independent `basis`, if it lies there.
pub fn coordinates(basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    if basis.is_empty() {
        return if is_zero_vec(v) { Some(Vec::new()) } else { None };
    }
    solve(&Matrix::from_cols(basis, v.len()), v)
}

/// Basis of the span of the given vectors.
pub fn span_basis(vectors: &[Vec<Scalar>], n: usize) -> Vec<Vec<Scalar>> {
    independent_subset(vectors, n)
        .into_iter()
        .map(|i| vectors[i].clone())
        .collect()
}

/// Basis of the intersection of two subspaces given by spanning bases.
pub fn intersection(a: &[Vec<Scalar>], b: &[Vec<Scalar>], n: usize) -> Vec<Vec<Scalar>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let ma = Matrix::from_cols(a, n);
    let mb = Matrix::from_cols(b, n);
    let k = kernel(&ma.hcat(&mb.scale(&-one())));
    let vs: Vec<Vec<Scalar>> = k.iter().map(|x| ma.apply(&x[..a.len()])).collect();
    span_basis(&vs, n)
}

#[cfg(test)]
mod tests {
    use super::super::scalar::{frac, int};
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(is_zero_vec(&a.apply(&k[0])));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve(&a, &[int(1), int(1)]), Some(vec![frac(1, 2), frac(1, 3)]));
        let s = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve(&s, &[int(1), int(2)]), None);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn basis_completion_and_intersection() {
        let v = vec![vec![int(1), int(1), int(0)]];
        let c = complete_basis(&v, 3);
        assert_eq!(c.len(), 2);
        let a = vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]];
        let b = vec![vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]];
        let i = intersection(&a, &b, 3);
        assert_eq!(i.len(), 1);
        assert_eq!(i[0][0], int(0));
        assert_eq!(i[0][2], int(0));
    }
}
