//! Truncated free dg-algebras `R/R^{n+1} = ⊕_{1≤k≤n} ⊙^k V` described by
//! the components of the differential on generators.

use crate::artin_dg::{check_morphism, FreeTruncated, NilpotentDgAlgebra, Polynomial};
use crate::error::{Error, Result};
use crate::graded_linear::{cohomology, int, Complex, GradedSpace, Matrix, Scalar};
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct QuasismoothTrunc {
    pub generators: GradedSpace,
    pub order: usize,
    /// `d(v_i)`, normalized: canonical monomials of length `1..=order`.
    pub d: Vec<Polynomial>,
    free: FreeTruncated,
}

impl PartialEq for QuasismoothTrunc {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.order == other.order && self.d == other.d
    }
}

impl QuasismoothTrunc {
    /// Checks homogeneity (`|d v| = |v| + 1`), absence of constant terms and
    /// `d² = 0` on the truncation.
    pub fn new(generators: &GradedSpace, d: &[Polynomial], order: usize) -> Result<Self> {
        let r = Self::unchecked(generators, d, order)?;
        if !r.free.algebra.d.mul(&r.free.algebra.d).is_zero() {
            return Err(Error::NotComplex("d∘d ≠ 0 on the truncation".into()));
        }
        Ok(r)
    }

    pub(crate) fn unchecked(generators: &GradedSpace, d: &[Polynomial], order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Invalid("order must be at least 1".into()));
        }
        if d.len() != generators.dim() {
            return Err(Error::Shape("one differential per generator".into()));
        }
        let degrees = generators.degrees();
        for (i, p) in d.iter().enumerate() {
            for (m, c) in p {
                if c.is_zero() {
                    continue;
                }
                if m.is_empty() {
                    return Err(Error::Invalid(format!("d({}) has a constant term", generators.name(i))));
                }
                if m.iter().any(|&g| g >= generators.dim()) {
                    return Err(Error::Shape("monomial names an unknown generator".into()));
                }
                let deg: i64 = m.iter().map(|&g| degrees[g]).sum();
                if deg != degrees[i] + 1 {
                    return Err(Error::Degree(format!(
                        "d({}) has a term of degree {deg}, expected {}",
                        generators.name(i),
                        degrees[i] + 1
                    )));
                }
            }
        }
        let free = FreeTruncated::new(generators, d, order)?;
        let d = (0..generators.dim())
            .map(|i| to_polynomial(&free, &free.algebra.d.col(free.index_of(&[i]).expect("generator"))))
            .collect();
        Ok(QuasismoothTrunc {
            generators: generators.clone(),
            order,
            d,
            free,
        })
    }

    /// Zero differential.
    pub fn trivial(generators: &GradedSpace, order: usize) -> Result<Self> {
        Self::new(generators, &vec![Vec::new(); generators.dim()], order)
    }

    pub fn algebra(&self) -> &NilpotentDgAlgebra {
        &self.free.algebra
    }

    pub fn free(&self) -> &FreeTruncated {
        &self.free
    }

    pub fn dim(&self) -> usize {
        self.free.monomials.len()
    }

    pub fn num_generators(&self) -> usize {
        self.generators.dim()
    }

    /// Index of generator `i` in the monomial basis.
    pub fn generator_index(&self, i: usize) -> usize {
        self.free.index_of(&[i]).expect("generator")
    }

    /// `d_k: V → ⊙^k V` as a matrix whose rows are the length-`k`
    /// monomials (in basis order).
    pub fn component(&self, k: usize) -> Matrix {
        let rows = self.free.of_length(k);
        let mut m = Matrix::zeros(rows.len(), self.num_generators());
        for (i, p) in self.d.iter().enumerate() {
            for (mono, c) in p {
                if mono.len() == k {
                    let r = rows.iter().position(|&x| x == self.free.index_of(mono).expect("basis")).expect("length");
                    m.set(r, i, c.clone());
                }
            }
        }
        m
    }

    /// `(V, d₁)`.
    pub fn linear_complex(&self) -> Complex {
        Complex::new(self.generators.clone(), self.component(1)).expect("d₁² = 0 follows from d² = 0")
    }

    /// Same generators and differential, cut at a lower order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        Self::unchecked(&self.generators, &self.d, order)
    }

    /// `true` iff `d = 0` on the truncation.
    pub fn has_zero_differential(&self) -> bool {
        self.d.iter().all(|p| p.is_empty())
    }

    /// Coordinates of a polynomial.
    pub fn embed(&self, p: &Polynomial) -> Vec<Scalar> {
        self.free.embed(p)
    }

    pub fn polynomial(&self, v: &[Scalar]) -> Polynomial {
        to_polynomial(&self.free, v)
    }
}

/// Polynomial with the coordinates of `v` in the monomial basis.
pub fn to_polynomial(free: &FreeTruncated, v: &[Scalar]) -> Polynomial {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (free.monomials[i].clone(), c.clone()))
        .collect()
}

/// Drops monomials longer than `order`.
pub fn truncate_polynomial(p: &Polynomial, order: usize) -> Polynomial {
    p.iter().filter(|(m, _)| m.len() <= order).cloned().collect()
}

/// The algebra map from a truncated free algebra determined by the images
/// of the generators. Products are formed left to right in the target, so
/// the result is multiplicative whenever products of more than `order`
/// images vanish there.
pub fn free_algebra_map(free: &FreeTruncated, target: &NilpotentDgAlgebra, images: &[Vec<Scalar>]) -> Matrix {
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(free.monomials.len());
    for m in &free.monomials {
        // Monomials are listed by length, so the prefix is already computed.
        let v = if m.len() == 1 {
            images[m[0]].clone()
        } else {
            let prefix = free.index_of(&m[..m.len() - 1]).expect("prefix of a canonical monomial is canonical");
            target.mul(&cols[prefix], &images[m[m.len() - 1]])
        };
        cols.push(v);
    }
    Matrix::from_cols(&cols, target.dim())
}

/// Dimension of `T^i[R, −] = H^{i−1}((R/R²)∨)`, the cohomology of the dual
/// of `(V, d₁)`.
pub fn h_r_tangent(r: &QuasismoothTrunc, i: i64) -> Result<usize> {
    let v = r.linear_complex();
    let dual_space = GradedSpace::new(
        (0..v.dim())
            .map(|k| (format!("{}∨", v.space.name(k)), -v.space.degree(k)))
            .collect(),
    )?;
    let dual = Complex::new(dual_space, v.d.transpose())?;
    Ok(cohomology(&dual)?.dim(i - 1))
}

pub fn is_minimal(r: &QuasismoothTrunc) -> bool {
    r.d.iter().all(|p| p.iter().all(|(m, _)| m.len() >= 2))
}

/// Re-expresses `r` in new generators, given as elements of `R` whose
/// linear parts form a basis of `V`. Returns the algebra in the new
/// generators and the isomorphism `φ` from it to `r`.
pub fn change_generators(
    r: &QuasismoothTrunc,
    names: &GradedSpace,
    elements: &[Vec<Scalar>],
) -> Result<(QuasismoothTrunc, Matrix)> {
    if elements.len() != names.dim() || names.dim() != r.num_generators() {
        return Err(Error::Shape("one element per generator".into()));
    }
    let bare = QuasismoothTrunc::unchecked(names, &vec![Vec::new(); names.dim()], r.order)?;
    let phi = free_algebra_map(bare.free(), r.algebra(), elements);
    check_morphism_shape(bare.algebra(), r.algebra(), &phi)?;
    let inv = phi
        .inverse()
        .ok_or_else(|| Error::Invalid("new generators do not span V modulo R²".into()))?;
    let d_new = inv.mul(&r.algebra().d).mul(&phi);
    let d: Vec<Polynomial> = (0..names.dim())
        .map(|i| to_polynomial(bare.free(), &d_new.col(bare.generator_index(i))))
        .collect();
    let out = QuasismoothTrunc::new(names, &d, r.order)?;
    debug_assert_eq!(out.algebra().d, d_new);
    Ok((out, phi))
}

fn check_morphism_shape(a: &NilpotentDgAlgebra, b: &NilpotentDgAlgebra, f: &Matrix) -> Result<()> {
    crate::graded_linear::check_homogeneous(&a.space, &b.space, 0, f)
}

/// Checks that a matrix is a dg-algebra morphism between truncations.
pub fn is_morphism(source: &QuasismoothTrunc, target: &QuasismoothTrunc, f: &Matrix) -> bool {
    check_morphism(source.algebra(), target.algebra(), f).is_ok()
}

/// Tensor product with free acyclic pairs `u ↦ du`, one per given degree
/// of `u`.
pub fn with_acyclic_pairs(r: &QuasismoothTrunc, degrees: &[i64]) -> Result<QuasismoothTrunc> {
    let mut basis = r.generators.basis();
    let n = basis.len();
    let mut d = r.d.clone();
    for (k, &deg) in degrees.iter().enumerate() {
        basis.push((format!("u{k}"), deg));
        basis.push((format!("du{k}"), deg + 1));
        d.push(vec![(vec![n + 2 * k + 1], int(1))]);
        d.push(Vec::new());
    }
    let names: Vec<String> = crate::graded_linear::uniquify(basis.iter().map(|(s, _)| s.clone()).collect());
    let space = GradedSpace::new(names.into_iter().zip(basis.iter().map(|(_, k)| *k)).collect())?;
    QuasismoothTrunc::new(&space, &d, r.order)
}
