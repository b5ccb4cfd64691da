//! Baker–Campbell–Hausdorff product through the Dynkin series.
//!
//! `log(e^X e^Y) = Σ_n (−1)^{n−1}/n Σ [X^{r₁}Y^{s₁}…X^{rₙ}Y^{sₙ}] / (m · Π rᵢ! sᵢ!)`
//! where `m` is the word length and `[w]` is the right-nested bracket of
//! the word. Coefficients are grouped by word and cached per length bound.

use super::dgla::Dgla;
use crate::error::{Error, Result};
use crate::graded_linear::{factorial, int, is_zero_vec, vec_add, vec_scale, zero_vec, Scalar};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

/// A word in the letters `X = false`, `Y = true`.
type Word = Vec<bool>;

fn dynkin_terms(max_len: usize) -> Vec<(Word, Scalar)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<(Word, Scalar)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache").get(&max_len) {
        return v.clone();
    }
    let mut acc: BTreeMap<Word, Scalar> = BTreeMap::new();
    // Enumerate sequences of (r_i, s_i) with r_i + s_i ≥ 1 and total ≤ max_len.
    fn rec(
        pairs: &mut Vec<(usize, usize)>,
        total: usize,
        max_len: usize,
        acc: &mut BTreeMap<Word, Scalar>,
    ) {
        if !pairs.is_empty() {
            let n = pairs.len() as i64;
            let mut denom = int(total as i64);
            let mut word = Word::new();
            for &(r, s) in pairs.iter() {
                denom *= factorial(r) * factorial(s);
                word.extend(std::iter::repeat(false).take(r));
                word.extend(std::iter::repeat(true).take(s));
            }
            let sign = if n % 2 == 1 { int(1) } else { int(-1) };
            let c = sign / (int(n) * denom);
            *acc.entry(word).or_insert_with(Scalar::zero) += c;
        }
        for r in 0..=(max_len - total) {
            for s in 0..=(max_len - total - r) {
                if r + s == 0 {
                    continue;
                }
                pairs.push((r, s));
                rec(pairs, total + r + s, max_len, acc);
                pairs.pop();
            }
        }
    }
    rec(&mut Vec::new(), 0, max_len, &mut acc);
    let terms: Vec<(Word, Scalar)> = acc
        .into_iter()
        .filter(|(w, c)| !c.is_zero() && valid_word(w))
        .collect();
    cache.lock().expect("cache").insert(max_len, terms.clone());
    terms
}

/// Right-nested brackets ending in a repeated letter vanish identically.
fn valid_word(w: &[bool]) -> bool {
    w.len() == 1 || w[w.len() - 1] != w[w.len() - 2]
}

fn nested(l: &Dgla, w: &[bool], x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let letter = |b: bool| if b { y } else { x };
    let mut acc = letter(w[w.len() - 1]).to_vec();
    for &b in w[..w.len() - 1].iter().rev() {
        acc = l.br(letter(b), &acc);
        if is_zero_vec(&acc) {
            break;
        }
    }
    acc
}

/// `u ∗ w` for degree-0 elements, assuming brackets of more than `bound`
/// letters vanish. The bound is certified: all right-nested brackets of
/// length `bound + 1` in `u, w` must vanish.
pub fn bch_with_bound(l: &Dgla, u: &[Scalar], w: &[Scalar], bound: usize) -> Result<Vec<Scalar>> {
    for (v, name) in [(u, "u"), (w, "w")] {
        if v.iter().enumerate().any(|(i, c)| !c.is_zero() && l.degree(i) != 0) {
            return Err(Error::Degree(format!("{name} must have degree 0")));
        }
    }
    let bound = bound.max(1);
    if !all_vanish(l, u, w, bound + 1) {
        return Err(Error::NotNilpotent(format!("brackets of length {} do not vanish", bound + 1)));
    }
    let mut out = zero_vec(l.dim());
    for (word, c) in dynkin_terms(bound) {
        let t = nested(l, &word, u, w);
        if !is_zero_vec(&t) {
            out = vec_add(&out, &vec_scale(&c, &t));
        }
    }
    Ok(out)
}

/// Longest bracket length tried before declaring the pair non-nilpotent.
pub const MAX_BCH_LENGTH: usize = 12;

fn all_vanish(l: &Dgla, u: &[Scalar], w: &[Scalar], len: usize) -> bool {
    (0..(1u64 << len)).all(|code| {
        let word: Vec<bool> = (0..len).map(|k| code >> k & 1 == 1).collect();
        !valid_word(&word) || is_zero_vec(&nested(l, &word, u, w))
    })
}

/// `u ∗ w` for degree-0 elements, truncated at the nilpotency class of the
/// Lie subalgebra they generate (found by testing bracket lengths).
pub fn bch(l: &Dgla, u: &[Scalar], w: &[Scalar]) -> Result<Vec<Scalar>> {
    for k in 1..=MAX_BCH_LENGTH {
        if all_vanish(l, u, w, k + 1) {
            return bch_with_bound(l, u, w, k);
        }
    }
    Err(Error::NotNilpotent(format!(
        "brackets of length {} do not vanish",
        MAX_BCH_LENGTH + 1
    )))
}
