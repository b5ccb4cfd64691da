//! Differential graded Lie algebras by structure constants, their axioms,
//! morphisms, the extension by a formal differential and derivation DGLAs.

use crate::artin_dg::{NilpotentDgAlgebra, ValidationReport, Violation};
use crate::error::{Error, Result};
use crate::graded_linear::{
    check_homogeneous, coordinates, inverse, sign, unit_vec, Bilinear, Complex, GradedSpace, Matrix, Scalar,
};
use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, ToPrimitive, Zero};
use std::collections::BTreeMap;

const MAX_WITNESSES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dgla {
    pub space: GradedSpace,
    pub bracket: Bilinear,
    pub d: Matrix,
}

type Sparse = BTreeMap<usize, Scalar>;

fn sparse_add(acc: &mut Sparse, k: usize, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(k).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&k);
    }
}

impl Dgla {
    pub fn new(space: GradedSpace, bracket: Bilinear, d: Matrix) -> Result<Self> {
        let n = space.dim();
        if bracket.dims() != (n, n, n) || d.rows() != n || d.cols() != n {
            return Err(Error::Shape("bracket or differential does not match the basis".into()));
        }
        Ok(Dgla { space, bracket, d })
    }

    /// `new` followed by `validate`.
    pub fn checked(space: GradedSpace, bracket: Bilinear, d: Matrix) -> Result<Self> {
        let l = Self::new(space, bracket, d)?;
        l.validate().into_result()?;
        Ok(l)
    }

    /// Abelian DGLA on a complex.
    pub fn abelian(c: &Complex) -> Self {
        let n = c.dim();
        Dgla {
            space: c.space.clone(),
            bracket: Bilinear::square(n),
            d: c.d.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.space.degree(i)
    }

    pub fn br(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.bracket.apply(x, y)
    }

    pub fn diff(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.d.apply(x)
    }

    pub fn complex(&self) -> Complex {
        Complex {
            space: self.space.clone(),
            d: self.d.clone(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        unit_vec(self.dim(), i)
    }

    /// `ad_x` as a matrix.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| self.br(x, &self.basis_vector(j))).collect();
        Matrix::from_cols(&cols, n)
    }

    fn br_left_sparse(&self, i: usize, v: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (k, c) in v {
            for (t, c2) in self.bracket.get(i, *k) {
                sparse_add(&mut out, *t, c * c2);
            }
        }
        out
    }

    fn br_right_sparse(&self, v: &Sparse, j: usize) -> Sparse {
        let mut out = Sparse::new();
        for (k, c) in v {
            for (t, c2) in self.bracket.get(*k, j) {
                sparse_add(&mut out, *t, c * c2);
            }
        }
        out
    }

    /// Triples failing graded Jacobi. Every term is a product of two
    /// structure constants, so clearing one common denominator lets the
    /// check run in integers: `i128` first, `BigInt` on overflow.
    fn jacobi_failures(&self, sorted: bool) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let mut den = BigInt::one();
        for i in 0..n {
            for j in 0..n {
                for (_, c) in self.bracket.get(i, j) {
                    den = &den * Scalar::new(c.denom().clone(), den.clone()).numer();
                }
            }
        }
        let scaled: Vec<Vec<(usize, BigInt)>> = (0..n * n)
            .map(|ij| {
                self.bracket
                    .get(ij / n, ij % n)
                    .iter()
                    .map(|(k, c)| (*k, c.numer() * (&den / c.denom())))
                    .collect()
            })
            .collect();
        let small: Option<Vec<Vec<(usize, i128)>>> = scaled
            .iter()
            .map(|e| e.iter().map(|(k, c)| c.to_i64().map(|v| (*k, v as i128))).collect())
            .collect();
        let odd: Vec<bool> = (0..n).map(|i| self.degree(i).rem_euclid(2) == 1).collect();
        if let Some(table) = small {
            if let Some(found) = jacobi_scan(n, &table, &odd, sorted) {
                return found;
            }
        }
        jacobi_scan(n, &scaled, &odd, sorted).expect("big integers do not overflow")
    }

    fn entry(&self, i: usize, j: usize) -> Sparse {
        self.bracket.get(i, j).iter().map(|(k, c)| (*k, c.clone())).collect()
    }

    /// Checks degrees, graded antisymmetry, graded Jacobi, Leibniz and
    /// `d² = 0` on all basis pairs and triples.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut violations = Vec::new();
        let name = |i: usize| self.space.name(i).to_string();
        let push = |axiom: &str, witness: Vec<String>, v: &mut Vec<Violation>| {
            if v.len() < MAX_WITNESSES {
                v.push(Violation {
                    axiom: axiom.to_string(),
                    witness,
                });
            }
        };
        if check_homogeneous(&self.space, &self.space, 1, &self.d).is_err() {
            push("differential has degree +1", vec![], &mut violations);
        }
        if !self.d.mul(&self.d).is_zero() {
            push("d∘d = 0", vec![], &mut violations);
        }
        for i in 0..n {
            for j in 0..n {
                for (k, _) in self.bracket.get(i, j) {
                    if self.degree(*k) != self.degree(i) + self.degree(j) {
                        push("bracket is homogeneous", vec![name(i), name(j)], &mut violations);
                    }
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let s = sign(self.degree(i) * self.degree(j));
                let mut sum = self.entry(i, j);
                for (k, c) in self.bracket.get(j, i) {
                    sparse_add(&mut sum, *k, &s * c);
                }
                if !sum.is_empty() {
                    push("graded antisymmetry", vec![name(i), name(j)], &mut violations);
                }
            }
        }
        // [x,[y,z]] = [[x,y],z] + (-1)^{xy}[y,[x,z]]. Under graded
        // antisymmetry the defect is graded antisymmetric in all three
        // slots, so sorted triples suffice.
        let sorted = violations.is_empty();
        let triples = self.jacobi_failures(sorted);
        for (i, j, k) in triples {
            push("graded Jacobi", vec![name(i), name(j), name(k)], &mut violations);
        }
        // d[x,y] = [dx,y] + (-1)^x [x,dy], with sparse columns of d.
        let dcols: Vec<Sparse> = (0..n)
            .map(|j| (0..n).filter(|&r| !self.d.get(r, j).is_zero()).map(|r| (r, self.d.get(r, j).clone())).collect())
            .collect();
        for i in 0..n {
            let s = sign(self.degree(i));
            for j in 0..n {
                let mut acc = Sparse::new();
                for (k, c) in self.bracket.get(i, j) {
                    for (r, e) in &dcols[*k] {
                        sparse_add(&mut acc, *r, c * e);
                    }
                }
                for (t, c) in self.br_right_sparse(&dcols[i], j) {
                    sparse_add(&mut acc, t, -c);
                }
                for (t, c) in self.br_left_sparse(i, &dcols[j]) {
                    sparse_add(&mut acc, t, -(&s * c));
                }
                if !acc.is_empty() {
                    push("Leibniz rule", vec![name(i), name(j)], &mut violations);
                }
            }
        }
        ValidationReport {
            violations,
            nilpotency_index: None,
        }
    }

    /// Re-expresses the DGLA in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix, names: Vec<String>) -> Result<Self> {
        let pinv = inverse(p).ok_or_else(|| Error::Invalid("basis change is singular".into()))?;
        let degrees: Vec<i64> = (0..p.cols())
            .map(|j| crate::artin_dg::vector_degree(&self.space, &p.col(j)).unwrap_or(0))
            .collect();
        let space = GradedSpace::new(names.into_iter().zip(degrees).collect())?;
        Ok(Dgla {
            space,
            bracket: self.bracket.transform(p, p, &pinv),
            d: pinv.mul(&self.d).mul(p),
        })
    }

    /// Direct product `L × M`.
    pub fn product(&self, other: &Dgla) -> Dgla {
        let (n, m) = (self.dim(), other.dim());
        let mut b = Bilinear::square(n + m);
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.bracket.get(i, j) {
                    b.add(i, j, *k, c);
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for (k, c) in other.bracket.get(i, j) {
                    b.add(n + i, n + j, n + k, c);
                }
            }
        }
        Dgla {
            space: self.space.direct_sum(&other.space, "'"),
            bracket: b,
            d: self.d.block_diag(&other.d),
        }
    }

    /// Lower central series of the degree-0 Lie algebra `L⁰`: returns its
    /// nilpotency class (number of nonzero terms), or `None`.
    pub fn degree_zero_class(&self) -> Option<usize> {
        let idx = self.space.indices_in_degree(0);
        let n = self.dim();
        let l0: Vec<Vec<Scalar>> = idx.iter().map(|&i| self.basis_vector(i)).collect();
        let mut cur = l0.clone();
        let mut class = 0;
        while !cur.is_empty() {
            class += 1;
            if class > n + 1 {
                return None;
            }
            let mut next = Vec::new();
            for x in &l0 {
                for y in &cur {
                    next.push(self.br(x, y));
                }
            }
            cur = crate::graded_linear::span_basis(&next, n);
        }
        Some(class)
    }
}

/// Checks that `f: L → M` has degree 0, commutes with `d` and preserves brackets.
pub fn check_dgla_morphism(l: &Dgla, m: &Dgla, f: &Matrix) -> Result<()> {
    check_homogeneous(&l.space, &m.space, 0, f)?;
    if m.d.mul(f) != f.mul(&l.d) {
        return Err(Error::NotMorphism("does not commute with differentials".into()));
    }
    let cols: Vec<Vec<Scalar>> = (0..l.dim()).map(|j| f.col(j)).collect();
    for i in 0..l.dim() {
        for j in 0..l.dim() {
            if f.apply(&l.bracket.get_dense(i, j)) != m.br(&cols[i], &cols[j]) {
                return Err(Error::NotMorphism(format!(
                    "bracket not preserved on ({}, {})",
                    l.space.name(i),
                    l.space.name(j)
                )));
            }
        }
    }
    Ok(())
}

/// `L_d = L ⊕ K·δ` with `δ` of degree 1, `[a + αδ, b + βδ] = [a,b] + α d(b)
/// − (−1)^{ā} β d(a)` and differential `[δ, −]`.
pub fn extended_dgla(l: &Dgla) -> Dgla {
    let n = l.dim();
    let mut basis = l.space.basis();
    let mut dname = "δ".to_string();
    while l.space.index_of(&dname).is_some() {
        dname.push('\'');
    }
    basis.push((dname, 1));
    let space = GradedSpace::new(basis).expect("fresh name");
    let mut b = Bilinear::square(n + 1);
    for i in 0..n {
        for j in 0..n {
            for (k, c) in l.bracket.get(i, j) {
                b.add(i, j, *k, c);
            }
        }
        for (k, c) in l.d.col(i).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            b.add(n, i, k, c);
            b.add(i, n, k, &-(sign(l.degree(i)) * c));
        }
    }
    let mut d = Matrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            d.set(i, j, l.d.get(i, j).clone());
        }
    }
    Dgla { space, bracket: b, d }
}

/// Graded derivations `Der*(A, A)` of a nilpotent dg-algebra with the
/// graded commutator and differential `[d_A, −]`.
pub fn derivation_dgla(a: &NilpotentDgAlgebra) -> Result<Dgla> {
    let n = a.dim();
    let mut shifts: Vec<i64> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            shifts.push(a.degree(j) - a.degree(i));
        }
    }
    shifts.sort_unstable();
    shifts.dedup();
    // Each derivation as an n×n matrix flattened row-major.
    let mut basis: Vec<(Matrix, i64)> = Vec::new();
    for &k in &shifts {
        let entries: Vec<(usize, usize)> = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .filter(|&(r, c)| a.degree(r) == a.degree(c) + k)
            .collect();
        // δ(e_p e_q) − δ(e_p) e_q − (−1)^{k|p|} e_p δ(e_q) = 0
        let mut sys = Matrix::zeros(n * n * n, entries.len());
        for (u, &(r, c)) in entries.iter().enumerate() {
            let mut delta = Matrix::zeros(n, n);
            delta.set(r, c, Scalar::from_integer(1.into()));
            for p in 0..n {
                for q in 0..n {
                    let lhs = delta.apply(&a.mult.get_dense(p, q));
                    let t1 = a.mul(&delta.col(p), &a.basis_vector(q));
                    let t2 = a.mul(&a.basis_vector(p), &delta.col(q));
                    let s = sign(k * a.degree(p));
                    for t in 0..n {
                        let v = &lhs[t] - &t1[t] - &s * &t2[t];
                        if !v.is_zero() {
                            sys.add_at((p * n + q) * n + t, u, &v);
                        }
                    }
                }
            }
        }
        for sol in sys.kernel() {
            let mut m = Matrix::zeros(n, n);
            for (u, &(r, c)) in entries.iter().enumerate() {
                m.set(r, c, sol[u].clone());
            }
            basis.push((m, k));
        }
    }
    let flat = |m: &Matrix| -> Vec<Scalar> { (0..n).flat_map(|r| m.row(r).to_vec()).collect() };
    let flats: Vec<Vec<Scalar>> = basis.iter().map(|(m, _)| flat(m)).collect();
    let dim = basis.len();
    let space = GradedSpace::new(basis.iter().enumerate().map(|(i, (_, k))| (format!("D{i}"), *k)).collect())?;
    let coords = |m: &Matrix| -> Result<Vec<Scalar>> {
        coordinates(&flats, &flat(m)).ok_or_else(|| Error::Invalid("derivations not closed".into()))
    };
    let mut bracket = Bilinear::square(dim);
    for (i, (x, kx)) in basis.iter().enumerate() {
        for (j, (y, ky)) in basis.iter().enumerate() {
            let c = x.mul(y).sub(&y.mul(x).scale(&sign(kx * ky)));
            bracket.set_dense(i, j, &coords(&c)?);
        }
    }
    let mut d = Matrix::zeros(dim, dim);
    for (j, (x, k)) in basis.iter().enumerate() {
        let c = a.d.mul(x).sub(&x.mul(&a.d).scale(&sign(*k)));
        for (i, v) in coords(&c)?.into_iter().enumerate() {
            d.set(i, j, v);
        }
    }
    Dgla::new(space, bracket, d)
}

/// `sl₂` with basis `e, f, h` in degree 0 and zero differential.
pub fn sl2() -> Dgla {
    let space = GradedSpace::new(vec![("e".into(), 0), ("f".into(), 0), ("h".into(), 0)]).expect("distinct");
    let mut b = Bilinear::square(3);
    let one = Scalar::from_integer(1.into());
    let two = Scalar::from_integer(2.into());
    let (e, f, h) = (0, 1, 2);
    b.add(e, f, h, &one);
    b.add(f, e, h, &-one.clone());
    b.add(h, e, e, &two);
    b.add(e, h, e, &-two.clone());
    b.add(h, f, f, &-two.clone());
    b.add(f, h, f, &two);
    Dgla::new(space, b, Matrix::zeros(3, 3)).expect("shape")
}

/// Jacobi defects over an integer table `t[i·n + j] = [e_i, e_j]`; `None`
/// when the arithmetic overflows.
fn jacobi_scan<T>(n: usize, t: &[Vec<(usize, T)>], odd: &[bool], sorted: bool) -> Option<Vec<(usize, usize, usize)>>
where
    T: Clone + Zero + CheckedAdd + CheckedSub + CheckedMul,
{
    let mut found = Vec::new();
    let mut acc = vec![T::zero(); n];
    let mut touched: Vec<usize> = Vec::new();
    for i in 0..n {
        for j in (if sorted { i } else { 0 })..n {
            let xy = &t[i * n + j];
            // [x,[y,z]] − [[x,y],z] − (-1)^{xy}[y,[x,z]]
            let minus_last = !(odd[i] && odd[j]);
            for k in (if sorted { j } else { 0 })..n {
                let (yz, xz) = (&t[j * n + k], &t[i * n + k]);
                if xy.is_empty() && yz.is_empty() && xz.is_empty() {
                    continue;
                }
                let mut terms = Vec::new();
                for (m, c) in yz {
                    terms.extend(t[i * n + m].iter().map(|(o, c2)| (*o, c, c2, true)));
                }
                for (m, c) in xy {
                    terms.extend(t[m * n + k].iter().map(|(o, c2)| (*o, c, c2, false)));
                }
                for (m, c) in xz {
                    terms.extend(t[j * n + m].iter().map(|(o, c2)| (*o, c, c2, !minus_last)));
                }
                for (o, c, c2, plus) in terms {
                    let v = c.checked_mul(c2)?;
                    touched.push(o);
                    acc[o] = if plus { acc[o].checked_add(&v)? } else { acc[o].checked_sub(&v)? };
                }
                if touched.iter().any(|&o| !acc[o].is_zero()) {
                    found.push((i, j, k));
                }
                for o in touched.drain(..) {
                    acc[o] = T::zero();
                }
            }
        }
    }
    Some(found)
}
