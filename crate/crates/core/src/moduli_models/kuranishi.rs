//! Order-by-order construction of a minimal algebra `R` and a versal
//! Maurer–Cartan element `ξ ∈ (L ⊗ R)¹`.
//!
//! Generators `t_k` of `V` are dual to the shifted harmonic classes, with
//! `|t_k| = 1 − |h_k|`, and `ξ` starts as `Σ h_k ⊗ t_k`. At each order the
//! defect `F = dξ + ½[ξ, ξ]` lives in `L ⊗ ⊙^{k+1}V` and splits as
//! `ιπF + dσF`. Then `ξ ← ξ − σF` and
//! `d_{k+1}(t_c) = −(−1)^{|h_c|}·(coefficient of h_c in πF)`.

use super::quasismooth::{is_minimal, QuasismoothTrunc};
use crate::artin_dg::Polynomial;
use crate::dgla_mc::{mc_defect, Dgla, TensorDgla};
use crate::error::{Error, Result};
use crate::graded_linear::{frac, sign, uniquify, vec_sub, Contraction, GradedSpace, Scalar};
use num_traits::Zero;
use std::collections::BTreeMap;

/// `ξ` over the truncation `base`, stored in coordinates of `L ⊗ R`.
#[derive(Clone, Debug)]
pub struct VersalElement {
    pub lie: Dgla,
    pub base: QuasismoothTrunc,
    pub xi: Vec<Scalar>,
}

impl VersalElement {
    pub fn tensor(&self) -> TensorDgla {
        TensorDgla::new(&self.lie, self.base.algebra())
    }

    /// MC defect of `ξ` in `L ⊗ R/R^{n+1}`.
    pub fn defect(&self) -> Vec<Scalar> {
        mc_defect(&self.tensor().dgla, &self.xi)
    }
}

#[derive(Clone, Debug)]
pub struct Prorepresentation {
    pub base: QuasismoothTrunc,
    pub versal: VersalElement,
}

/// `ξ` as `L`-vectors indexed by monomials.
type Components = BTreeMap<Vec<usize>, Vec<Scalar>>;

fn to_tensor(t: &TensorDgla, r: &QuasismoothTrunc, xi: &Components) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); t.dim()];
    for (m, l) in xi {
        let Some(a) = r.free().index_of(m) else { continue };
        for (x, c) in l.iter().enumerate() {
            v[t.index(x, a)] += c;
        }
    }
    v
}

/// Runs the recursion up to `order`, asserting `d² = 0`, the vanishing MC
/// defect, `d₁ = 0`, and that `d₂` is dual to the bracket induced on the
/// harmonic space.
pub fn kuranishi_prorepresent(lie: &Dgla, contraction: &Contraction, order: usize) -> Result<Prorepresentation> {
    let complex = lie.complex();
    if contraction.inclusion.rows() != lie.dim() || !contraction.verify(&complex) {
        return Err(Error::Invalid("contraction is inconsistent with L".into()));
    }
    if order == 0 {
        return Err(Error::Invalid("order must be at least 1".into()));
    }
    let harm = &contraction.harmonic;
    let m = harm.dim();
    let reps: Vec<Vec<Scalar>> = (0..m).map(|k| contraction.inclusion.col(k)).collect();
    let names = uniquify(
        reps.iter()
            .enumerate()
            .map(|(k, h)| {
                let nz: Vec<usize> = (0..lie.dim()).filter(|&i| !h[i].is_zero()).collect();
                if nz.len() == 1 && h[nz[0]] == crate::graded_linear::one() {
                    format!("t_{}", lie.space.name(nz[0]))
                } else {
                    format!("t{k}")
                }
            })
            .collect(),
    );
    let generators = GradedSpace::new(names.into_iter().zip((0..m).map(|k| 1 - harm.degree(k))).collect())?;
    let mut d: Vec<Polynomial> = vec![Vec::new(); m];
    let mut xi: Components = (0..m).map(|k| (vec![k], reps[k].clone())).collect();
    for k in 1..order {
        let r = QuasismoothTrunc::unchecked(&generators, &d, k + 1)?;
        let t = TensorDgla::new(lie, r.algebra());
        let f = mc_defect(&t.dgla, &to_tensor(&t, &r, &xi));
        let parts = t.components(&f);
        for (a, part) in parts.iter().enumerate() {
            let mono = &r.free().monomials[a];
            if part.iter().all(|c| c.is_zero()) {
                continue;
            }
            if mono.len() != k + 1 {
                return Err(Error::Invalid(format!("defect survives below order {}", k + 1)));
            }
            let exact = contraction.sigma.apply(part);
            if exact.iter().any(|c| !c.is_zero()) {
                let e = xi.entry(mono.clone()).or_insert_with(|| vec![Scalar::zero(); lie.dim()]);
                *e = vec_sub(e, &exact);
            }
            let classes = contraction.projection.apply(part);
            for (c, coeff) in classes.iter().enumerate() {
                if !coeff.is_zero() {
                    d[c].push((mono.clone(), -sign(harm.degree(c)) * coeff));
                }
            }
        }
    }
    let base = QuasismoothTrunc::new(&generators, &d, order)?;
    let tensor = TensorDgla::new(lie, base.algebra());
    let versal = VersalElement {
        lie: lie.clone(),
        base: base.clone(),
        xi: to_tensor(&tensor, &base, &xi),
    };
    if versal.defect().iter().any(|c| !c.is_zero()) {
        return Err(Error::Invalid("MC defect of ξ does not vanish".into()));
    }
    if !is_minimal(&base) {
        return Err(Error::Invalid("d₁ ≠ 0".into()));
    }
    if order >= 2 && base.component(2) != quadratic_from_bracket(lie, contraction, &base) {
        return Err(Error::Invalid("d₂ is not dual to the induced bracket".into()));
    }
    Ok(Prorepresentation { base, versal })
}

/// `d₂(t_c) = −(−1)^{|h_c|} ½ Σ_{a,b} (−1)^{|t_a||h_b|} B^c_{ab} t_a t_b`
/// for the bracket `B` induced on harmonic classes, as a matrix with rows
/// indexed by length-2 monomials.
pub fn quadratic_from_bracket(
    lie: &Dgla,
    contraction: &Contraction,
    base: &QuasismoothTrunc,
) -> crate::graded_linear::Matrix {
    let harm = &contraction.harmonic;
    let m = harm.dim();
    let mut d: Vec<Polynomial> = vec![Vec::new(); m];
    for a in 0..m {
        for b in 0..m {
            let br = lie.br(&contraction.inclusion.col(a), &contraction.inclusion.col(b));
            let classes = contraction.projection.apply(&br);
            let ta = 1 - harm.degree(a);
            for (c, coeff) in classes.iter().enumerate() {
                if !coeff.is_zero() {
                    let s = -sign(harm.degree(c)) * sign(ta * harm.degree(b)) * frac(1, 2);
                    d[c].push((vec![a, b], s * coeff));
                }
            }
        }
    }
    let cols: Vec<Vec<Scalar>> = d.iter().map(|p| base.embed(p)).collect();
    let rows = base.free().of_length(2);
    let full = crate::graded_linear::Matrix::from_cols(&cols, base.dim());
    full.submatrix(&rows, &(0..m).collect::<Vec<_>>())
}
