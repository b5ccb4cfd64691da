use super::matrix::Matrix;
use super::scalar::{zero_vec, Scalar};
use num_traits::Zero;

/// Structure constants of a bilinear map `K^n × K^m → K^k`, stored sparsely:
/// `table[i * m + j]` lists the nonzero coordinates of `e_i · e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Bilinear {
    left: usize,
    right: usize,
    out: usize,
    table: Vec<Vec<(usize, Scalar)>>,
}

impl Bilinear {
    pub fn zero(left: usize, right: usize, out: usize) -> Self {
        Bilinear {
            left,
            right,
            out,
            table: vec![Vec::new(); left * right],
        }
    }

    pub fn square(n: usize) -> Self {
        Self::zero(n, n, n)
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.left, self.right, self.out)
    }

    pub fn get(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.right + j]
    }

    pub fn get_dense(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut v = zero_vec(self.out);
        for (k, c) in self.get(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    pub fn set_dense(&mut self, i: usize, j: usize, v: &[Scalar]) {
        self.table[i * self.right + j] = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect();
    }

    pub fn add(&mut self, i: usize, j: usize, k: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = &mut self.table[i * self.right + j];
        if let Some(pos) = entry.iter().position(|(kk, _)| *kk == k) {
            entry[pos].1 += c;
            if entry[pos].1.is_zero() {
                entry.remove(pos);
            }
        } else {
            entry.push((k, c.clone()));
            entry.sort_by_key(|(kk, _)| *kk);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.out);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let entry = self.get(i, j);
                if entry.is_empty() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in entry {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    /// `e_i · y` for a basis vector on the left.
    pub fn apply_left_basis(&self, i: usize, y: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.out);
        for (j, b) in y.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for (k, c) in self.get(i, j) {
                out[*k] += b * c;
            }
        }
        out
    }

    /// Re-expresses the structure constants in new bases: `x·y` becomes
    /// `q(p_l x · p_r y)` where the columns of `p_l, p_r` are the new basis
    /// vectors and `q` maps output coordinates.
    pub fn transform(&self, p_left: &Matrix, p_right: &Matrix, q_out: &Matrix) -> Bilinear {
        let mut b = Bilinear::zero(p_left.cols(), p_right.cols(), q_out.rows());
        let lc: Vec<Vec<Scalar>> = (0..p_left.cols()).map(|i| p_left.col(i)).collect();
        let rc: Vec<Vec<Scalar>> = (0..p_right.cols()).map(|j| p_right.col(j)).collect();
        for (i, x) in lc.iter().enumerate() {
            for (j, y) in rc.iter().enumerate() {
                let v = q_out.apply(&self.apply(x, y));
                b.set_dense(i, j, &v);
            }
        }
        b
    }

    pub fn scale(&self, c: &Scalar) -> Bilinear {
        let mut b = self.clone();
        for entry in &mut b.table {
            for (_, x) in entry.iter_mut() {
                *x *= c;
            }
            entry.retain(|(_, x)| !x.is_zero());
        }
        b
    }
}
