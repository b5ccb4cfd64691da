//! Coalgebras by structure constants: the truncated reduced symmetric
//! coalgebra `C(V) = ⊕_{k≤n} ⊙^k(V[1])` and duals of nilpotent dg-algebras.

use crate::artin_dg::NilpotentDgAlgebra;
use crate::error::{Error, Result};
use crate::graded_linear::{canonical_monomial, koszul_sign, monomial_name, sign, unshuffles, Bilinear, GradedSpace, Matrix, Scalar};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

pub type Sparse = BTreeMap<usize, Scalar>;
pub type SparsePairs = BTreeMap<(usize, usize), Scalar>;

pub(crate) fn sparse_add<K: Ord>(acc: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(k) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// Graded coalgebra with a degree-0 coproduct and a degree-1 codifferential,
/// both by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    pub space: GradedSpace,
    /// `Δ(e_c) = Σ coproduct[c][(a, b)] e_a ⊗ e_b`.
    pub coproduct: Vec<SparsePairs>,
    pub codifferential: Matrix,
}

impl Coalgebra {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn delta_pairs(&self, v: &SparsePairs, left: bool) -> BTreeMap<(usize, usize, usize), Scalar> {
        let mut out = BTreeMap::new();
        for (&(a, b), c) in v {
            let (split, keep) = if left { (a, b) } else { (b, a) };
            for (&(x, y), e) in &self.coproduct[split] {
                let key = if left { (x, y, keep) } else { (keep, x, y) };
                sparse_add(&mut out, key, c * e);
            }
        }
        out
    }

    /// Basis elements where `(Δ⊗Id)Δ ≠ (Id⊗Δ)Δ`.
    pub fn coassociativity_failures(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&c| self.delta_pairs(&self.coproduct[c], true) != self.delta_pairs(&self.coproduct[c], false))
            .collect()
    }

    /// Basis elements where `τΔ ≠ Δ` for the Koszul twist `τ`.
    pub fn cocommutativity_failures(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&c| {
                let mut twisted = SparsePairs::new();
                for (&(a, b), x) in &self.coproduct[c] {
                    sparse_add(&mut twisted, (b, a), sign(self.space.degree(a) * self.space.degree(b)) * x);
                }
                twisted != self.coproduct[c]
            })
            .collect()
    }

    /// Basis elements where `Δδ ≠ (δ⊗Id + Id⊗δ)Δ`.
    pub fn coleibniz_failures(&self) -> Vec<usize> {
        let d = &self.codifferential;
        (0..self.dim())
            .filter(|&c| {
                let mut lhs = SparsePairs::new();
                for (k, x) in d.col(c).iter().enumerate() {
                    if !x.is_zero() {
                        for (&p, y) in &self.coproduct[k] {
                            sparse_add(&mut lhs, p, x * y);
                        }
                    }
                }
                let mut rhs = SparsePairs::new();
                for (&(a, b), x) in &self.coproduct[c] {
                    for (r, y) in d.col(a).iter().enumerate() {
                        sparse_add(&mut rhs, (r, b), x * y);
                    }
                    let s = sign(self.space.degree(a));
                    for (r, y) in d.col(b).iter().enumerate() {
                        sparse_add(&mut rhs, (a, r), &s * x * y);
                    }
                }
                lhs != rhs
            })
            .collect()
    }

    /// `Δ^{n−1}(e_c)` as a sum of words of length `n`.
    pub fn iterated_coproduct(&self, c: usize, n: usize) -> BTreeMap<Vec<usize>, Scalar> {
        let mut cur: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        cur.insert(vec![c], Scalar::from_integer(1.into()));
        for _ in 1..n {
            let mut next = BTreeMap::new();
            for (w, x) in &cur {
                let last = *w.last().expect("nonempty word");
                for (&(a, b), y) in &self.coproduct[last] {
                    let mut v = w[..w.len() - 1].to_vec();
                    v.push(a);
                    v.push(b);
                    sparse_add(&mut next, v, x * y);
                }
            }
            cur = next;
            if cur.is_empty() {
                break;
            }
        }
        cur
    }
}

/// `C(V)` truncated at word length `order`, on the shifted space `V[1]`.
#[derive(Clone, Debug)]
pub struct SymCoalgebra {
    /// `V` before the shift.
    pub base: GradedSpace,
    pub shifted: GradedSpace,
    pub order: usize,
    /// Canonical monomials, grouped by length.
    pub monomials: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    pub coalgebra: Coalgebra,
}

impl SymCoalgebra {
    pub fn new(base: &GradedSpace, order: usize) -> Self {
        let shifted = base.shift(1);
        let degrees = shifted.degrees().to_vec();
        let monomials: Vec<Vec<usize>> = (1..=order)
            .flat_map(|k| crate::graded_linear::symmetric_monomials(&degrees, k))
            .collect();
        let index: HashMap<Vec<usize>, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let space = GradedSpace::new(
            monomials
                .iter()
                .map(|m| (monomial_name(base, m, "⊙"), m.iter().map(|&i| degrees[i]).sum()))
                .collect(),
        )
        .expect("distinct monomials");
        let mut coproduct = Vec::with_capacity(monomials.len());
        for m in &monomials {
            let degs: Vec<i64> = m.iter().map(|&i| degrees[i]).collect();
            let mut delta = SparsePairs::new();
            for r in 1..m.len() {
                for sigma in unshuffles(r, m.len() - r) {
                    let e = koszul_sign(&sigma, &degs).expect("unshuffle");
                    let left: Vec<usize> = sigma[..r].iter().map(|&k| m[k]).collect();
                    let right: Vec<usize> = sigma[r..].iter().map(|&k| m[k]).collect();
                    sparse_add(&mut delta, (index[&left], index[&right]), Scalar::from_integer(e.into()));
                }
            }
            coproduct.push(delta);
        }
        let n = monomials.len();
        SymCoalgebra {
            base: base.clone(),
            shifted,
            order,
            monomials,
            index,
            coalgebra: Coalgebra {
                space,
                coproduct,
                codifferential: Matrix::zeros(n, n),
            },
        }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.coalgebra.space.degree(i)
    }

    pub fn index_of(&self, m: &[usize]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Indices of the monomials of length `k`.
    pub fn of_length(&self, k: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.monomials[i].len() == k).collect()
    }

    /// The product of letters as `(sign, monomial index)`; `None` if it
    /// vanishes or exceeds the truncation.
    pub fn monomial(&self, word: &[usize]) -> Option<(Scalar, usize)> {
        if word.len() > self.order || word.is_empty() {
            return None;
        }
        let (s, m) = canonical_monomial(word, self.shifted.degrees())?;
        Some((Scalar::from_integer(s.into()), self.index[&m]))
    }

    /// `Δ` on one monomial.
    pub fn coproduct(&self, i: usize) -> &SparsePairs {
        &self.coalgebra.coproduct[i]
    }
}

/// `A∨` with coproduct and codifferential transposed from `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCoalgebra {
    pub coalgebra: Coalgebra,
}

impl DualCoalgebra {
    /// Basis `a∨` in degree `−|a|`; `Δ(c∨) = Σ μ_{ab}^c a∨⊗b∨`, `δ = dᵀ`.
    pub fn new(a: &NilpotentDgAlgebra) -> Self {
        let n = a.dim();
        let space = GradedSpace::new(
            (0..n)
                .map(|i| (format!("{}∨", a.space.name(i)), -a.degree(i)))
                .collect(),
        )
        .expect("distinct names");
        let mut coproduct = vec![SparsePairs::new(); n];
        for x in 0..n {
            for y in 0..n {
                for (c, v) in a.mult.get(x, y) {
                    sparse_add(&mut coproduct[*c], (x, y), v.clone());
                }
            }
        }
        DualCoalgebra {
            coalgebra: Coalgebra {
                space,
                coproduct,
                codifferential: a.d.transpose(),
            },
        }
    }

    /// Dualizes back: multiplication transposed from `Δ`, `d = δᵀ`.
    pub fn to_algebra(&self) -> Result<NilpotentDgAlgebra> {
        let c = &self.coalgebra;
        let n = c.dim();
        let names = c
            .space
            .names()
            .iter()
            .map(|s| s.strip_suffix('∨').unwrap_or(s).to_string())
            .collect();
        let space = GradedSpace::new(
            crate::graded_linear::uniquify(names)
                .into_iter()
                .zip(c.space.degrees().iter().map(|d| -d))
                .collect(),
        )?;
        let mut mult = Bilinear::square(n);
        for (k, delta) in c.coproduct.iter().enumerate() {
            for (&(x, y), v) in delta {
                mult.add(x, y, k, v);
            }
        }
        if c.codifferential.rows() != n {
            return Err(Error::Shape("codifferential".into()));
        }
        NilpotentDgAlgebra::new(space, mult, c.codifferential.transpose())
    }
}
