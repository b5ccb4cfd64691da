//! Koszul signs, unshuffles and graded-symmetric monomials.

use super::matrix::Matrix;
use super::scalar::{odd, Scalar};
use super::space::GradedSpace;
use crate::error::{Error, Result};

pub fn check_permutation(sigma: &[usize]) -> Result<()> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(Error::Permutation(format!("{sigma:?}")));
        }
        seen[s] = true;
    }
    Ok(())
}

/// The sign `ε` with `σ(v_1⊗…⊗v_n) = ε · v_{σ(1)}⊗…⊗v_{σ(n)}`, where each
/// adjacent transposition of factors `x, y` contributes `(-1)^{|x||y|}`.
///
/// The word `v_{σ(1)}…v_{σ(n)}` is reached from `v_1…v_n` by bubble sort.
pub fn koszul_sign(sigma: &[usize], degrees: &[i64]) -> Result<i64> {
    check_permutation(sigma)?;
    if sigma.len() != degrees.len() {
        return Err(Error::Permutation(format!(
            "{} slots but {} degrees",
            sigma.len(),
            degrees.len()
        )));
    }
    let n = sigma.len();
    let mut pos = vec![0usize; n];
    for (p, &s) in sigma.iter().enumerate() {
        pos[s] = p;
    }
    // word[k] = original index currently in slot k; sort by target slot.
    let mut word: Vec<usize> = (0..n).collect();
    let mut parity = 0i64;
    for end in (1..n).rev() {
        for k in 0..end {
            if pos[word[k]] > pos[word[k + 1]] {
                parity += degrees[word[k]] * degrees[word[k + 1]];
                word.swap(k, k + 1);
            }
        }
    }
    Ok(if odd(parity) { -1 } else { 1 })
}

/// Permutations of `p+q` increasing on the first `p` and last `q` slots,
/// as 0-based images `σ(0..p+q)`.
pub fn unshuffles(p: usize, q: usize) -> Vec<Vec<usize>> {
    let n = p + q;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(p);
    fn rec(start: usize, n: usize, p: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if chosen.len() == p {
            let mut sigma = chosen.clone();
            sigma.extend((0..n).filter(|i| !chosen.contains(i)));
            out.push(sigma);
            return;
        }
        for i in start..n {
            chosen.push(i);
            rec(i + 1, n, p, chosen, out);
            chosen.pop();
        }
    }
    rec(0, n, p, &mut chosen, &mut out);
    out
}

/// Sorts a word of basis indices into canonical (non-decreasing) order.
/// Returns the Koszul sign of the reordering, or `None` when an odd factor
/// repeats (the monomial vanishes).
pub fn canonical_monomial(word: &[usize], degrees: &[i64]) -> Option<(i64, Vec<usize>)> {
    let mut w = word.to_vec();
    let mut parity = 0i64;
    let n = w.len();
    for end in (1..n).rev() {
        for k in 0..end {
            if w[k] > w[k + 1] {
                parity += degrees[w[k]] * degrees[w[k + 1]];
                w.swap(k, k + 1);
            }
        }
    }
    if w.windows(2).any(|p| p[0] == p[1] && odd(degrees[p[0]])) {
        return None;
    }
    Some((if odd(parity) { -1 } else { 1 }, w))
}

/// Canonical monomials of word length `n` over generators of the given degrees.
pub fn symmetric_monomials(degrees: &[i64], n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(start: usize, degrees: &[i64], n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..degrees.len() {
            if cur.last() == Some(&i) && odd(degrees[i]) {
                continue;
            }
            cur.push(i);
            rec(i, degrees, n, cur, out);
            cur.pop();
        }
    }
    if n > 0 {
        rec(0, degrees, n, &mut cur, &mut out);
    }
    out
}

/// All words of length `n` in lexicographic order (basis of the tensor power).
pub fn tensor_words(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * dim);
        for w in &out {
            for i in 0..dim {
                let mut v = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

pub fn monomial_name(space: &GradedSpace, m: &[usize], sep: &str) -> String {
    m.iter()
        .map(|&i| space.name(i).to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// The symmetric power `⊙^n V` with its projection from `V^{⊗n}` and the
/// symmetrizer `⊙^n V → V^{⊗n}`.
#[derive(Clone, Debug)]
pub struct SymmetricPower {
    pub space: GradedSpace,
    pub monomials: Vec<Vec<usize>>,
    pub projection: Matrix,
    pub symmetrizer: Matrix,
}

pub fn symmetric_power(v: &GradedSpace, n: usize) -> SymmetricPower {
    let degrees = v.degrees().to_vec();
    let monomials = symmetric_monomials(&degrees, n);
    let index = |m: &Vec<usize>| monomials.binary_search(m).expect("canonical monomial");
    let words = tensor_words(v.dim(), n);
    let mut projection = Matrix::zeros(monomials.len(), words.len());
    for (j, w) in words.iter().enumerate() {
        if let Some((s, m)) = canonical_monomial(w, &degrees) {
            projection.set(index(&m), j, Scalar::from_integer(s.into()));
        }
    }
    let perms = all_permutations(n);
    let mut symmetrizer = Matrix::zeros(words.len(), monomials.len());
    for (j, m) in monomials.iter().enumerate() {
        let degs: Vec<i64> = m.iter().map(|&i| degrees[i]).collect();
        for sigma in &perms {
            let e = koszul_sign(sigma, &degs).expect("valid permutation");
            let word: Vec<usize> = sigma.iter().map(|&k| m[k]).collect();
            let row = word.iter().fold(0usize, |acc, &i| acc * v.dim() + i);
            symmetrizer.add_at(row, j, &Scalar::from_integer(e.into()));
        }
    }
    let space = GradedSpace::new(
        monomials
            .iter()
            .map(|m| {
                (
                    monomial_name(v, m, "*"),
                    m.iter().map(|&i| degrees[i]).sum::<i64>(),
                )
            })
            .collect(),
    )
    .expect("distinct monomial names");
    SymmetricPower {
        space,
        monomials,
        projection,
        symmetrizer,
    }
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(n);
    fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                rec(n, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, &mut cur, &mut out);
    out
}
