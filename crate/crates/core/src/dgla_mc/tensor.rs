//! The tensor DGLA `L ⊗ A` of a DGLA with a nilpotent dg-algebra.
//!
//! Basis `x⊗a` is stored at index `x·dim A + a`. Signs:
//! `[x⊗a, y⊗b] = (−1)^{|a||y|}[x,y]⊗ab` and
//! `d(x⊗a) = dx⊗a + (−1)^{|x|} x⊗da`.

use super::dgla::Dgla;
use crate::artin_dg::NilpotentDgAlgebra;
use crate::error::{Error, Result};
use crate::graded_linear::{sign, zero_vec, Bilinear, GradedSpace, Matrix, Scalar};
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct TensorDgla {
    pub lie: Dgla,
    pub algebra: NilpotentDgAlgebra,
    pub dgla: Dgla,
}

impl TensorDgla {
    pub fn new(lie: &Dgla, algebra: &NilpotentDgAlgebra) -> Self {
        let (nl, na) = (lie.dim(), algebra.dim());
        let n = nl * na;
        let space = GradedSpace::new(
            (0..nl)
                .flat_map(|x| (0..na).map(move |a| (x, a)))
                .map(|(x, a)| {
                    (
                        format!("{}⊗{}", lie.space.name(x), algebra.space.name(a)),
                        lie.degree(x) + algebra.degree(a),
                    )
                })
                .collect(),
        )
        .expect("distinct product names");
        let idx = |x: usize, a: usize| x * na + a;
        let mut bracket = Bilinear::square(n);
        for x in 0..nl {
            for y in 0..nl {
                let xy = lie.bracket.get(x, y);
                if xy.is_empty() {
                    continue;
                }
                for a in 0..na {
                    let s = sign(algebra.degree(a) * lie.degree(y));
                    for b in 0..na {
                        for (c, ab) in algebra.mult.get(a, b) {
                            for (z, k) in xy {
                                bracket.add(idx(x, a), idx(y, b), idx(*z, *c), &(&s * k * ab));
                            }
                        }
                    }
                }
            }
        }
        let mut d = Matrix::zeros(n, n);
        for x in 0..nl {
            for a in 0..na {
                let col = idx(x, a);
                for z in 0..nl {
                    let c = lie.d.get(z, x);
                    if !c.is_zero() {
                        d.add_at(idx(z, a), col, c);
                    }
                }
                let s = sign(lie.degree(x));
                for b in 0..na {
                    let c = algebra.d.get(b, a);
                    if !c.is_zero() {
                        d.add_at(idx(x, b), col, &(&s * c));
                    }
                }
            }
        }
        TensorDgla {
            lie: lie.clone(),
            algebra: algebra.clone(),
            dgla: Dgla { space, bracket, d },
        }
    }

    pub fn dim(&self) -> usize {
        self.dgla.dim()
    }

    pub fn index(&self, x: usize, a: usize) -> usize {
        x * self.algebra.dim() + a
    }

    /// `l ⊗ e_a`.
    pub fn tensor_basis(&self, l: &[Scalar], a: usize) -> Vec<Scalar> {
        let mut v = zero_vec(self.dim());
        for (x, c) in l.iter().enumerate() {
            if !c.is_zero() {
                v[self.index(x, a)] = c.clone();
            }
        }
        v
    }

    /// `Σ_a l_a ⊗ e_a` from one `L`-vector per algebra basis element.
    pub fn from_components(&self, parts: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
        if parts.len() != self.algebra.dim() || parts.iter().any(|p| p.len() != self.lie.dim()) {
            return Err(Error::Shape("one L-vector per algebra basis element".into()));
        }
        let mut v = zero_vec(self.dim());
        for (a, l) in parts.iter().enumerate() {
            for (x, c) in l.iter().enumerate() {
                v[self.index(x, a)] = c.clone();
            }
        }
        Ok(v)
    }

    /// Inverse of [`from_components`](Self::from_components).
    pub fn components(&self, v: &[Scalar]) -> Vec<Vec<Scalar>> {
        let (nl, na) = (self.lie.dim(), self.algebra.dim());
        (0..na).map(|a| (0..nl).map(|x| v[self.index(x, a)].clone()).collect()).collect()
    }

    /// `Id ⊗ f` for a linear map `f: A → A'` (columns in `A'`).
    pub fn algebra_map(&self, f: &Matrix) -> Matrix {
        let (nl, na, nb) = (self.lie.dim(), self.algebra.dim(), f.rows());
        let mut m = Matrix::zeros(nl * nb, nl * na);
        for x in 0..nl {
            for a in 0..na {
                for b in 0..nb {
                    let c = f.get(b, a);
                    if !c.is_zero() {
                        m.set(x * nb + b, x * na + a, c.clone());
                    }
                }
            }
        }
        m
    }

    /// `g ⊗ Id` for a linear map `g: L → L'` (columns in `L'`).
    pub fn lie_map(&self, g: &Matrix) -> Matrix {
        let (nl, na, nm) = (self.lie.dim(), self.algebra.dim(), g.rows());
        let mut m = Matrix::zeros(nm * na, nl * na);
        for x in 0..nl {
            for y in 0..nm {
                let c = g.get(y, x);
                if c.is_zero() {
                    continue;
                }
                for a in 0..na {
                    m.set(y * na + a, x * na + a, c.clone());
                }
            }
        }
        m
    }

    /// Upper bound on the length of nonvanishing brackets: `A^N = 0`
    /// forces brackets of `N` elements to vanish.
    pub fn bracket_length_bound(&self) -> usize {
        self.algebra.nilpotency_index().unwrap_or(self.algebra.dim() + 2).saturating_sub(1).max(1)
    }
}
