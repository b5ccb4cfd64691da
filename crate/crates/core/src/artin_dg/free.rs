//! Truncated free graded-commutative algebras `⊕_{1≤k≤n} ⊙^k V` with a
//! derivation given on generators.

use super::algebra::NilpotentDgAlgebra;
use crate::error::Result;
use crate::graded_linear::{canonical_monomial, int, monomial_name, symmetric_monomials, Bilinear, GradedSpace, Matrix, Scalar};
use num_traits::Zero;
use std::collections::HashMap;

/// A polynomial in the generators: canonical monomials with coefficients.
pub type Polynomial = Vec<(Vec<usize>, Scalar)>;

#[derive(Clone, Debug)]
pub struct FreeTruncated {
    pub generators: GradedSpace,
    pub order: usize,
    /// Basis monomials, by length then lexicographically.
    pub monomials: Vec<Vec<usize>>,
    pub algebra: NilpotentDgAlgebra,
    index: HashMap<Vec<usize>, usize>,
}

impl FreeTruncated {
    /// `d` is the image of each generator; terms longer than `order` are
    /// dropped. The result is not validated (d² = 0 is the caller's claim).
    pub fn new(generators: &GradedSpace, d: &[Polynomial], order: usize) -> Result<Self> {
        let degrees = generators.degrees().to_vec();
        let mut monomials = Vec::new();
        for k in 1..=order {
            monomials.extend(symmetric_monomials(&degrees, k));
        }
        let index: HashMap<Vec<usize>, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let space = GradedSpace::new(
            monomials
                .iter()
                .map(|m| (monomial_name(generators, m, "*"), m.iter().map(|&i| degrees[i]).sum()))
                .collect(),
        )?;
        let n = monomials.len();
        let mut mult = Bilinear::square(n);
        for (i, a) in monomials.iter().enumerate() {
            for (j, b) in monomials.iter().enumerate() {
                if a.len() + b.len() > order {
                    continue;
                }
                let word: Vec<usize> = a.iter().chain(b).copied().collect();
                if let Some((s, m)) = canonical_monomial(&word, &degrees) {
                    mult.add(i, j, index[&m], &int(s));
                }
            }
        }
        let mut dm = Matrix::zeros(n, n);
        for (j, m) in monomials.iter().enumerate() {
            let mut prefix_deg = 0i64;
            for p in 0..m.len() {
                let s = crate::graded_linear::sign(prefix_deg);
                for (term, c) in &d[m[p]] {
                    if m.len() - 1 + term.len() > order {
                        continue;
                    }
                    let word: Vec<usize> = m[..p].iter().chain(term).chain(&m[p + 1..]).copied().collect();
                    if let Some((t, canon)) = canonical_monomial(&word, &degrees) {
                        dm.add_at(index[&canon], j, &(&s * c * int(t)));
                    }
                }
                prefix_deg += degrees[m[p]];
            }
        }
        let algebra = NilpotentDgAlgebra::new(space, mult, dm)?;
        Ok(FreeTruncated {
            generators: generators.clone(),
            order,
            monomials,
            algebra,
            index,
        })
    }

    pub fn index_of(&self, monomial: &[usize]) -> Option<usize> {
        self.index.get(monomial).copied()
    }

    /// Coordinates of a polynomial (terms beyond the order are dropped).
    pub fn embed(&self, p: &Polynomial) -> Vec<Scalar> {
        let degrees = self.generators.degrees();
        let mut v = vec![Scalar::zero(); self.monomials.len()];
        for (m, c) in p {
            if m.len() > self.order || m.is_empty() {
                continue;
            }
            if let Some((s, canon)) = canonical_monomial(m, degrees) {
                v[self.index[&canon]] += c * int(s);
            }
        }
        v
    }

    /// Indices of basis monomials of exactly length `k`.
    pub fn of_length(&self, k: usize) -> Vec<usize> {
        (0..self.monomials.len()).filter(|&i| self.monomials[i].len() == k).collect()
    }
}
