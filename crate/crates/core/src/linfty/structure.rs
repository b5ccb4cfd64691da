//! L∞ structures by Taylor coefficients, their coderivations, the
//! generalized Jacobi check, the DGLA dictionary and the MC equation.

use super::coalgebra::{sparse_add, Coalgebra, Sparse, SymCoalgebra};
use crate::artin_dg::NilpotentDgAlgebra;
use crate::dgla_mc::Dgla;
use crate::error::{Error, Result};
use crate::graded_linear::{
    factorial, is_zero_vec, koszul_sign, sign, unshuffles, zero_vec, Bilinear, GradedSpace, Matrix, Scalar,
};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Taylor coefficients `Q¹_k: ⊙^k(V[1]) → V[1]`, `1 ≤ k ≤ order`.
#[derive(Clone, Debug)]
pub struct LInftyStructure {
    pub coalgebra: SymCoalgebra,
    /// `taylor[k−1]` has one row per basis vector of `V` and one column per
    /// monomial of length `k`, in the order of `coalgebra.of_length(k)`.
    pub taylor: Vec<Matrix>,
}

impl PartialEq for LInftyStructure {
    fn eq(&self, other: &Self) -> bool {
        self.coalgebra.base == other.coalgebra.base && self.taylor == other.taylor
    }
}

/// A nonzero component of `(Q²)¹` on one monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiDefect {
    pub arity: usize,
    pub monomial: String,
    pub value: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LInftyReport {
    pub defects: Vec<JacobiDefect>,
}

impl LInftyReport {
    pub fn is_valid(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn arities(&self) -> Vec<usize> {
        let mut a: Vec<usize> = self.defects.iter().map(|d| d.arity).collect();
        a.dedup();
        a
    }
}

impl LInftyStructure {
    pub fn new(space: &GradedSpace, order: usize, taylor: Vec<Matrix>) -> Result<Self> {
        let coalgebra = SymCoalgebra::new(space, order);
        if taylor.len() > order {
            return Err(Error::Shape(format!("{} Taylor coefficients beyond order {order}", taylor.len())));
        }
        let mut taylor = taylor;
        for k in 1..=order {
            let cols = coalgebra.of_length(k);
            if taylor.len() < k {
                taylor.push(Matrix::zeros(space.dim(), cols.len()));
            }
            let m = &taylor[k - 1];
            if m.rows() != space.dim() || m.cols() != cols.len() {
                return Err(Error::Shape(format!("Q¹_{k} must be {}×{}", space.dim(), cols.len())));
            }
            for (j, &c) in cols.iter().enumerate() {
                for r in 0..space.dim() {
                    if !m.get(r, j).is_zero() && coalgebra.shifted.degree(r) != coalgebra.degree(c) + 1 {
                        return Err(Error::Degree(format!(
                            "Q¹_{k} sends {} to {} but must have degree 1",
                            coalgebra.coalgebra.space.name(c),
                            space.name(r)
                        )));
                    }
                }
            }
        }
        Ok(LInftyStructure { coalgebra, taylor })
    }

    pub fn zero(space: &GradedSpace, order: usize) -> Self {
        Self::new(space, order, Vec::new()).expect("zero maps")
    }

    pub fn order(&self) -> usize {
        self.coalgebra.order
    }

    pub fn space(&self) -> &GradedSpace {
        &self.coalgebra.base
    }

    pub fn is_minimal(&self) -> bool {
        self.taylor[0].is_zero()
    }

    /// Position of monomial `i` among those of its length.
    fn column(&self, i: usize) -> usize {
        let k = self.coalgebra.monomials[i].len();
        i - self.coalgebra.of_length(k)[0]
    }

    /// `Q¹_k` on one monomial.
    pub fn taylor_on(&self, i: usize) -> Vec<Scalar> {
        let k = self.coalgebra.monomials[i].len();
        self.taylor[k - 1].col(self.column(i))
    }

    /// The coderivation `Q` on a sparse vector of the truncated coalgebra.
    pub fn coderivation(&self, v: &Sparse) -> Sparse {
        let c = &self.coalgebra;
        let mut out = Sparse::new();
        for (&i, x) in v {
            let m = &c.monomials[i];
            let degs: Vec<i64> = m.iter().map(|&l| c.shifted.degree(l)).collect();
            for k in 1..=m.len() {
                for sigma in unshuffles(k, m.len() - k) {
                    let first: Vec<usize> = sigma[..k].iter().map(|&p| m[p]).collect();
                    let head = self.taylor_on(c.index_of(&first).expect("sub-monomial"));
                    if is_zero_vec(&head) {
                        continue;
                    }
                    let e = Scalar::from_integer(koszul_sign(&sigma, &degs).expect("unshuffle").into());
                    let rest: Vec<usize> = sigma[k..].iter().map(|&p| m[p]).collect();
                    for (r, y) in head.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let mut word = vec![r];
                        word.extend(&rest);
                        if let Some((s, idx)) = c.monomial(&word) {
                            sparse_add(&mut out, idx, x * &e * y * s);
                        }
                    }
                }
            }
        }
        out
    }

    /// `Q` as a matrix on the truncation.
    pub fn coderivation_matrix(&self) -> Matrix {
        let n = self.coalgebra.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for (i, x) in self.coderivation(&Sparse::from([(j, Scalar::from_integer(1.into()))])) {
                m.set(i, j, x);
            }
        }
        m
    }

    /// `(Q²)¹` on every monomial; the structure is L∞ iff all vanish.
    pub fn check(&self) -> LInftyReport {
        let c = &self.coalgebra;
        let mut defects = Vec::new();
        for i in 0..c.dim() {
            let q = self.coderivation(&Sparse::from([(i, Scalar::from_integer(1.into()))]));
            let qq = self.coderivation(&q);
            let mut value = zero_vec(c.base.dim());
            for (j, x) in qq {
                if c.monomials[j].len() == 1 {
                    value[c.monomials[j][0]] = x;
                }
            }
            if !is_zero_vec(&value) {
                defects.push(JacobiDefect {
                    arity: c.monomials[i].len(),
                    monomial: c.coalgebra.space.name(i).to_string(),
                    value,
                });
            }
        }
        LInftyReport { defects }
    }

    /// Checks the coderivation identity `ΔQ = (Q⊗Id + Id⊗Q)Δ` on every monomial.
    pub fn coleibniz_holds(&self) -> bool {
        let mut co = self.coalgebra.coalgebra.clone();
        co.codifferential = self.coderivation_matrix();
        co.coleibniz_failures().is_empty()
    }
}

/// `Q¹₁(w[1]) = −(dw)[1]` and `Q¹₂(w₁[1]⊙w₂[1]) = (−1)^{w̄₁}[w₁,w₂][1]`.
pub fn dgla_to_linfty(l: &Dgla, order: usize) -> LInftyStructure {
    let order = order.max(2);
    let c = SymCoalgebra::new(&l.space, order);
    let q1 = l.d.scale(&-Scalar::from_integer(1.into()));
    let pairs = c.of_length(2);
    let mut q2 = Matrix::zeros(l.dim(), pairs.len());
    for (j, &p) in pairs.iter().enumerate() {
        let (a, b) = (c.monomials[p][0], c.monomials[p][1]);
        let s = sign(l.degree(a));
        for (k, x) in l.bracket.get(a, b) {
            q2.set(*k, j, &s * x);
        }
    }
    LInftyStructure::new(&l.space, order, vec![q1, q2]).expect("bracket has degree 0")
}

/// Inverse of [`dgla_to_linfty`]; requires `Q¹_k = 0` for `k ≥ 3`.
pub fn linfty_to_dgla(s: &LInftyStructure) -> Result<Dgla> {
    if let Some(k) = (3..=s.order()).find(|&k| !s.taylor[k - 1].is_zero()) {
        return Err(Error::Invalid(format!("Q¹_{k} is nonzero, not a DGLA")));
    }
    let space = s.space().clone();
    let n = space.dim();
    let d = s.taylor[0].scale(&-Scalar::from_integer(1.into()));
    let mut bracket = Bilinear::square(n);
    if s.order() >= 2 {
        for a in 0..n {
            for b in 0..n {
                if let Some((sg, idx)) = s.coalgebra.monomial(&[a, b]) {
                    let v = s.taylor_on(idx);
                    let f = sg * sign(space.degree(a));
                    for (k, x) in v.iter().enumerate() {
                        if !x.is_zero() {
                            bracket.add(a, b, k, &(&f * x));
                        }
                    }
                }
            }
        }
    }
    Dgla::new(space, bracket, d)
}

/// `Φ(l⊗a) = (−1)^{l̄+1} l[1]⊗a`, carrying `(L⊗A)` to `(L[1]⊗A)` with the
/// same index layout; it maps DGLA MC defects to L∞ MC defects.
pub fn shift_element(space: &GradedSpace, a: &NilpotentDgAlgebra, x: &[Scalar]) -> Vec<Scalar> {
    let na = a.dim();
    x.iter()
        .enumerate()
        .map(|(i, c)| -(sign(space.degree(i / na))) * c)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LInftyMc {
    pub is_mc: bool,
    /// `Σ_n (1/n!) (Q¹_n⊗Id)(mⁿ) − (Id⊗d_A)(m)` in `V[1]⊗A`.
    pub defect: Vec<Scalar>,
}

/// The MC equation for `m ∈ (V[1]⊗A)⁰`, stored at index `x·dim A + a`.
pub fn linfty_mc_check(s: &LInftyStructure, a: &NilpotentDgAlgebra, m: &[Scalar]) -> Result<LInftyMc> {
    let c = &s.coalgebra;
    let (nv, na) = (c.base.dim(), a.dim());
    if m.len() != nv * na {
        return Err(Error::Shape(format!("expected {} coordinates", nv * na)));
    }
    for (i, x) in m.iter().enumerate() {
        if !x.is_zero() && c.shifted.degree(i / na) + a.degree(i % na) != 0 {
            return Err(Error::Degree(format!("component {i} of m is not in total degree 0")));
        }
    }
    let terms: Vec<(usize, usize, Scalar)> = m
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i / na, i % na, x.clone()))
        .collect();
    let mut defect = zero_vec(nv * na);
    // −(Id⊗d_A)(m) with the Koszul sign of d_A passing w[1].
    for (x, ai, v) in &terms {
        let s_k = sign(c.shifted.degree(*x));
        for (b, y) in a.d.col(*ai).iter().enumerate() {
            if !y.is_zero() {
                defect[x * na + b] -= &s_k * v * y;
            }
        }
    }
    // Powers mⁿ in ⊙(V[1])⊗A, keyed by (monomial, algebra index).
    let mut power: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    for (x, ai, v) in &terms {
        let idx = c.index_of(&[*x]).expect("letter");
        sparse_add(&mut power, (idx, *ai), v.clone());
    }
    for n in 1..=c.order {
        if power.is_empty() {
            break;
        }
        let inv = Scalar::from_integer(1.into()) / factorial(n);
        for (&(mono, ai), v) in &power {
            let q = s.taylor_on(mono);
            for (r, y) in q.iter().enumerate() {
                if !y.is_zero() {
                    defect[r * na + ai] += &inv * v * y;
                }
            }
        }
        if n == c.order {
            break;
        }
        let mut next = BTreeMap::new();
        for (&(mono, ai), v) in &power {
            for (x, bi, w) in &terms {
                let prod = a.mult.get(ai, *bi);
                if prod.is_empty() {
                    continue;
                }
                let mut word = c.monomials[mono].clone();
                word.push(*x);
                let Some((sg, idx)) = c.monomial(&word) else { continue };
                let k = sign(a.degree(ai) * c.shifted.degree(*x));
                for (t, z) in prod {
                    sparse_add(&mut next, (idx, *t), &sg * &k * v * w * z);
                }
            }
        }
        power = next;
    }
    Ok(LInftyMc {
        is_mc: is_zero_vec(&defect),
        defect,
    })
}

/// `θ = Σ_n (1/n!) m_n Δ^{n−1}` for a degree-0 map `m: C → V[1]` (one
/// column per basis element of `C`), landing in `C(V)` truncated at its order.
pub fn coalgebra_morphism_from_linear(source: &Coalgebra, target: &SymCoalgebra, m: &Matrix) -> Result<Matrix> {
    if m.rows() != target.base.dim() || m.cols() != source.dim() {
        return Err(Error::Shape("m must map the source coalgebra to V[1]".into()));
    }
    crate::graded_linear::check_homogeneous(&source.space, &target.shifted, 0, m)?;
    let mut theta = Matrix::zeros(target.dim(), source.dim());
    for col in 0..source.dim() {
        for n in 1..=target.order {
            let words = source.iterated_coproduct(col, n);
            if words.is_empty() {
                break;
            }
            let inv = Scalar::from_integer(1.into()) / factorial(n);
            for (w, x) in words {
                // Expand m(c₁)⊗…⊗m(cₙ) letter by letter.
                let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), &inv * x)];
                for &ci in &w {
                    let image = m.col(ci);
                    let mut next = Vec::new();
                    for (pw, px) in &partial {
                        for (r, y) in image.iter().enumerate() {
                            if !y.is_zero() {
                                let mut v = pw.clone();
                                v.push(r);
                                next.push((v, px * y));
                            }
                        }
                    }
                    partial = next;
                }
                for (word, x) in partial {
                    if let Some((s, idx)) = target.monomial(&word) {
                        theta.add_at(idx, col, &(s * x));
                    }
                }
            }
        }
    }
    Ok(theta)
}

/// `Δθ = (θ⊗θ)Δ` on every basis element of the source, for a degree-0 `θ`.
pub fn is_coalgebra_morphism(source: &Coalgebra, target: &Coalgebra, theta: &Matrix) -> bool {
    (0..source.dim()).all(|c| {
        let mut lhs = BTreeMap::new();
        for (k, x) in theta.col(c).iter().enumerate() {
            if !x.is_zero() {
                for (&p, y) in &target.coproduct[k] {
                    sparse_add(&mut lhs, p, x * y);
                }
            }
        }
        let mut rhs = BTreeMap::new();
        for (&(a, b), x) in &source.coproduct[c] {
            let (ta, tb) = (theta.col(a), theta.col(b));
            for (i, y) in ta.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                for (j, z) in tb.iter().enumerate() {
                    if !z.is_zero() {
                        sparse_add(&mut rhs, (i, j), x * y * z);
                    }
                }
            }
        }
        lhs == rhs
    })
}

/// The linear map `A∨ → V[1]` encoded by `m ∈ V[1]⊗A`: `a∨ ↦ Σ_x m_{x,a} w_x[1]`.
pub fn element_as_linear_map(nv: usize, a: &NilpotentDgAlgebra, m: &[Scalar]) -> Matrix {
    let na = a.dim();
    let mut out = Matrix::zeros(nv, na);
    for (i, x) in m.iter().enumerate() {
        if !x.is_zero() {
            out.set(i / na, i % na, x.clone());
        }
    }
    out
}
