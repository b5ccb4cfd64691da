//! Cochain complexes, cohomology with explicit contraction data, and the
//! connecting homomorphism.

use super::matrix::{complete_basis, kernel, rref, solve, span_basis, Matrix};
use super::scalar::{is_zero_vec, sign, unit_vec, Scalar};
use super::space::GradedSpace;
use crate::error::{Error, Result};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Homogeneous linear map of a fixed degree between graded spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub source: GradedSpace,
    pub target: GradedSpace,
    pub degree: i64,
    pub matrix: Matrix,
}

impl GradedMap {
    pub fn new(source: GradedSpace, target: GradedSpace, degree: i64, matrix: Matrix) -> Result<Self> {
        check_homogeneous(&source, &target, degree, &matrix)?;
        Ok(GradedMap {
            source,
            target,
            degree,
            matrix,
        })
    }

    pub fn zero(source: GradedSpace, target: GradedSpace, degree: i64) -> Self {
        let matrix = Matrix::zeros(target.dim(), source.dim());
        GradedMap {
            source,
            target,
            degree,
            matrix,
        }
    }
}

pub fn check_homogeneous(source: &GradedSpace, target: &GradedSpace, degree: i64, m: &Matrix) -> Result<()> {
    if m.rows() != target.dim() || m.cols() != source.dim() {
        return Err(Error::Shape(format!(
            "matrix is {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            target.dim(),
            source.dim()
        )));
    }
    for j in 0..m.rows() {
        for i in 0..m.cols() {
            if !m.get(j, i).is_zero() && target.degree(j) != source.degree(i) + degree {
                return Err(Error::Inhomogeneous {
                    degree,
                    row: j,
                    col: i,
                    from: source.degree(i),
                    to: target.degree(j),
                });
            }
        }
    }
    Ok(())
}

/// Finite cochain complex with differential of degree +1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub space: GradedSpace,
    pub d: Matrix,
}

impl Complex {
    pub fn new(space: GradedSpace, d: Matrix) -> Result<Self> {
        check_homogeneous(&space, &space, 1, &d)?;
        if !d.mul(&d).is_zero() {
            return Err(Error::NotComplex("d∘d ≠ 0".into()));
        }
        Ok(Complex { space, d })
    }

    pub fn zero_differential(space: GradedSpace) -> Self {
        let n = space.dim();
        Complex {
            space,
            d: Matrix::zeros(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `C[n]`: degrees lowered by `n`, differential scaled by `(-1)^n`.
    pub fn shift(&self, n: i64) -> Complex {
        Complex {
            space: self.space.shift(n),
            d: self.d.scale(&sign(n)),
        }
    }

    pub fn direct_sum(&self, other: &Complex) -> Complex {
        Complex {
            space: self.space.direct_sum(&other.space, "'"),
            d: self.d.block_diag(&other.d),
        }
    }
}

/// Mapping cone of a chain map `f: A → B`: `B ⊕ A[1]` with differential
/// `(b, a) ↦ (d b + f a, −d a)`.
pub fn mapping_cone(a: &Complex, b: &Complex, f: &Matrix) -> Result<Complex> {
    if !b.d.mul(f).sub(&f.mul(&a.d)).is_zero() {
        return Err(Error::NotChainMap);
    }
    let shifted = a.shift(1);
    let space = b.space.direct_sum(&shifted.space, "'");
    let (nb, na) = (b.dim(), a.dim());
    let mut d = Matrix::zeros(nb + na, nb + na);
    for i in 0..nb {
        for j in 0..nb {
            d.set(i, j, b.d.get(i, j).clone());
        }
        for j in 0..na {
            d.set(i, nb + j, f.get(i, j).clone());
        }
    }
    for i in 0..na {
        for j in 0..na {
            d.set(nb + i, nb + j, shifted.d.get(i, j).clone());
        }
    }
    Complex::new(space, d)
}

/// Splitting `C = B ⊕ H ⊕ U` with `d: U ≅ B` and homotopy `σ` satisfying
/// `dσ + σd = Id − ιπ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    /// Harmonic representatives, one column per class.
    pub inclusion: Matrix,
    /// Coordinates of the harmonic component, `dim H × dim C`.
    pub projection: Matrix,
    /// Homotopy of degree −1.
    pub sigma: Matrix,
    pub harmonic: GradedSpace,
}

impl Contraction {
    pub fn harmonic_projector(&self) -> Matrix {
        self.inclusion.mul(&self.projection)
    }

    pub fn class_of(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection.apply(v)
    }

    /// Checks `dσ + σd = Id − ιπ` and `πι = Id` exactly.
    pub fn verify(&self, c: &Complex) -> bool {
        let n = c.dim();
        let lhs = c.d.mul(&self.sigma).add(&self.sigma.mul(&c.d));
        let rhs = Matrix::identity(n).sub(&self.harmonic_projector());
        lhs == rhs
            && self.projection.mul(&self.inclusion) == Matrix::identity(self.harmonic.dim())
            && c.d.mul(&self.inclusion).is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub dims: BTreeMap<i64, usize>,
    pub cocycle_dims: BTreeMap<i64, usize>,
    pub boundary_dims: BTreeMap<i64, usize>,
    pub contraction: Contraction,
}

impl Cohomology {
    pub fn dim(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }
}

pub fn cohomology(c: &Complex) -> Result<Cohomology> {
    if !c.d.mul(&c.d).is_zero() {
        return Err(Error::NotComplex("d∘d ≠ 0".into()));
    }
    let n = c.dim();
    let degrees = c.space.occurring_degrees();
    let mut dims = BTreeMap::new();
    let mut cocycle_dims = BTreeMap::new();
    let mut boundary_dims = BTreeMap::new();
    // Per degree: U-basis (complement of cocycles) and images d(U) = B^{k+1}.
    let mut u_basis: BTreeMap<i64, Vec<Vec<Scalar>>> = BTreeMap::new();
    for &k in &degrees {
        let idx = c.space.indices_in_degree(k);
        let next = c.space.indices_in_degree(k + 1);
        let dk = c.d.submatrix(&next, &idx);
        let (_, pivots) = rref(&dk);
        let us = pivots
            .iter()
            .map(|&p| embed(&unit_vec(idx.len(), p), &idx, n))
            .collect();
        u_basis.insert(k, us);
    }
    let mut harmonic_vecs: Vec<Vec<Scalar>> = Vec::new();
    let mut harmonic_basis: Vec<(String, i64)> = Vec::new();
    let mut sigma = Matrix::zeros(n, n);
    let mut projection_rows: Vec<Vec<Scalar>> = Vec::new();
    for &k in &degrees {
        let idx = c.space.indices_in_degree(k);
        let next = c.space.indices_in_degree(k + 1);
        let dk = c.d.submatrix(&next, &idx);
        let z: Vec<Vec<Scalar>> = kernel(&dk);
        let empty = Vec::new();
        let prev_u = u_basis.get(&(k - 1)).unwrap_or(&empty);
        let b: Vec<Vec<Scalar>> = prev_u
            .iter()
            .map(|u| restrict(&c.d.apply(u), &idx))
            .collect();
        let mut zb = b.clone();
        zb.extend(z.iter().cloned());
        let zb_basis = span_basis(&zb, idx.len());
        let h: Vec<Vec<Scalar>> = zb_basis[b.len()..].to_vec();
        let u_here: Vec<Vec<Scalar>> = u_basis[&k].iter().map(|u| restrict(u, &idx)).collect();
        cocycle_dims.insert(k, z.len());
        boundary_dims.insert(k, b.len());
        dims.insert(k, h.len());
        // Change of basis [B | H | U] on C^k.
        let mut cols = b.clone();
        cols.extend(h.iter().cloned());
        cols.extend(u_here.iter().cloned());
        debug_assert_eq!(cols.len(), idx.len());
        let p = Matrix::from_cols(&cols, idx.len());
        let pinv = p.inverse().ok_or_else(|| Error::Invalid("degenerate splitting".into()))?;
        for (r, hv) in h.iter().enumerate() {
            let global = embed(hv, &idx, n);
            harmonic_basis.push((format!("h{}", harmonic_vecs.len()), k));
            harmonic_vecs.push(global);
            let row = pinv.row(b.len() + r).to_vec();
            projection_rows.push(embed(&row, &idx, n));
        }
        // σ sends d(u_j) to u_j and kills H and U.
        for (jb, u) in prev_u.iter().enumerate() {
            for (a, &col) in idx.iter().enumerate() {
                let coeff = pinv.get(jb, a);
                if coeff.is_zero() {
                    continue;
                }
                for (row, x) in u.iter().enumerate() {
                    if !x.is_zero() {
                        sigma.add_at(row, col, &(coeff * x));
                    }
                }
            }
        }
    }
    let harmonic = GradedSpace::new(harmonic_basis).expect("generated names");
    let inclusion = Matrix::from_cols(&harmonic_vecs, n);
    let projection = Matrix::from_rows(projection_rows, n);
    Ok(Cohomology {
        dims,
        cocycle_dims,
        boundary_dims,
        contraction: Contraction {
            inclusion,
            projection,
            sigma,
            harmonic,
        },
    })
}

fn embed(v: &[Scalar], idx: &[usize], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (x, &i) in v.iter().zip(idx) {
        out[i] = x.clone();
    }
    out
}

fn restrict(v: &[Scalar], idx: &[usize]) -> Vec<Scalar> {
    idx.iter().map(|&i| v[i].clone()).collect()
}

fn is_chain_map(a: &Complex, b: &Complex, f: &Matrix) -> bool {
    b.d.mul(f) == f.mul(&a.d)
}

/// Matrix of `H(f): H(A) → H(B)` in harmonic coordinates.
pub fn induced_on_cohomology(a: &Complex, b: &Complex, f: &Matrix) -> Result<(Matrix, Cohomology, Cohomology)> {
    if f.rows() != b.dim() || f.cols() != a.dim() {
        return Err(Error::Shape("chain map shape".into()));
    }
    if !is_chain_map(a, b, f) {
        return Err(Error::NotChainMap);
    }
    let ha = cohomology(a)?;
    let hb = cohomology(b)?;
    let m = hb.contraction.projection.mul(f).mul(&ha.contraction.inclusion);
    Ok((m, ha, hb))
}

pub fn is_quasiiso(a: &Complex, b: &Complex, f: &Matrix) -> Result<bool> {
    check_homogeneous(&a.space, &b.space, 0, f)?;
    let (m, ha, hb) = induced_on_cohomology(a, b, f)?;
    if ha.dims.iter().filter(|(_, &v)| v > 0).collect::<Vec<_>>()
        != hb.dims.iter().filter(|(_, &v)| v > 0).collect::<Vec<_>>()
    {
        return Ok(false);
    }
    Ok(m.rank() == ha.contraction.harmonic.dim())
}

/// Degreewise short exact sequence `0 → A →i B →p C → 0` of complexes.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub i: Matrix,
    pub p: Matrix,
}

impl ShortExactSequence {
    pub fn check(&self) -> Result<()> {
        check_homogeneous(&self.a.space, &self.b.space, 0, &self.i)?;
        check_homogeneous(&self.b.space, &self.c.space, 0, &self.p)?;
        if !is_chain_map(&self.a, &self.b, &self.i) || !is_chain_map(&self.b, &self.c, &self.p) {
            return Err(Error::NotChainMap);
        }
        if self.i.rank() != self.a.dim() {
            return Err(Error::NotExact("inclusion not injective".into()));
        }
        if self.p.rank() != self.c.dim() {
            return Err(Error::NotExact("projection not surjective".into()));
        }
        if !self.p.mul(&self.i).is_zero() || self.a.dim() + self.c.dim() != self.b.dim() {
            return Err(Error::NotExact("image of inclusion differs from kernel".into()));
        }
        Ok(())
    }
}

/// Connecting map `H(C) → H(A)` of degree +1 in harmonic coordinates.
pub fn connecting_hom(ses: &ShortExactSequence) -> Result<Matrix> {
    ses.check()?;
    let hc = cohomology(&ses.c)?;
    let ha = cohomology(&ses.a)?;
    let mut cols = Vec::new();
    for j in 0..hc.contraction.harmonic.dim() {
        let z = hc.contraction.inclusion.col(j);
        let b = solve(&ses.p, &z).expect("surjective");
        let db = ses.b.d.apply(&b);
        let a = solve(&ses.i, &db).ok_or_else(|| Error::NotExact("d(lift) outside image".into()))?;
        cols.push(ha.contraction.projection.apply(&a));
    }
    Ok(Matrix::from_cols(&cols, ha.contraction.harmonic.dim()))
}

/// Checks exactness of the long exact cohomology sequence at every node:
/// consecutive maps compose to zero and `dim ker = rank` of the incoming map.
pub fn long_exact_sequence_is_exact(ses: &ShortExactSequence) -> Result<bool> {
    let (istar, ha, hb) = induced_on_cohomology(&ses.a, &ses.b, &ses.i)?;
    let (pstar, _, hc) = induced_on_cohomology(&ses.b, &ses.c, &ses.p)?;
    let delta = connecting_hom(ses)?;
    let maps = [(&istar, &pstar), (&pstar, &delta), (&delta, &istar)];
    for (f, g) in maps {
        if !g.mul(f).is_zero() {
            return Ok(false);
        }
        let ker_g = g.cols() - g.rank();
        if ker_g != f.rank() {
            return Ok(false);
        }
    }
    let _ = (ha, hb, hc);
    Ok(true)
}

/// Basis of the image of a matrix.
pub fn image_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let cols: Vec<Vec<Scalar>> = (0..m.cols()).map(|j| m.col(j)).collect();
    span_basis(&cols, m.rows())
}

/// `true` when `v` lies in the image of `m`.
pub fn in_image(m: &Matrix, v: &[Scalar]) -> bool {
    is_zero_vec(v) || solve(m, v).is_some()
}

pub fn complement_in(sub: &[Vec<Scalar>], n: usize) -> Vec<Vec<Scalar>> {
    complete_basis(&span_basis(sub, n), n)
}
