//! Primary obstructions through `0 → K·uv → (u,v)/(u²,v²) → Ku ⊕ Kv → 0`
//! and the graded Lie bracket they induce on the tangent space of `Def_L`.
//!
//! Sign conventions. With `u, v` of degrees `−i, −j` and cocycles `x, y` of
//! degrees `1+i, 1+j`, the canonical lift of `x⊗u + y⊗v` has defect
//! `(−1)^{i(1+j)} [x,y]⊗uv`; the raw primary obstruction is the class of
//! the `L`-factor. The tangent bracket is `[x,y]_T = (−1)^{i(1+j)}·raw`,
//! which is exactly the bracket induced on `H(L)`, and the arity-2 Taylor
//! coefficient on `H[1]` is `Q¹₂(x[1]⊙y[1]) = (−1)^{x̄}[x,y]_T`.

use super::classes::obstruction_class;
use crate::artin_dg::SmallExtension;
use crate::dgla_mc::{Dgla, TensorDgla};
use crate::error::{Error, Result};
use crate::fixtures::primary_algebra;
use crate::graded_linear::{cohomology, is_zero_vec, sign, unit_vec, vec_add, Bilinear, Cohomology, GradedSpace, Matrix, Scalar};
use crate::linfty::{dgla_to_linfty, LInftyStructure};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryObstruction {
    /// Harmonic coordinates in `H^{2+i+j}(L)`.
    pub class: Vec<Scalar>,
    /// Cocycle of `L` representing it.
    pub representative: Vec<Scalar>,
}

/// The extension `0 → K·uv → (u,v)/(u²,v²) → Ku ⊕ Kv → 0`.
pub fn primary_extension(i: i64, j: i64) -> SmallExtension {
    let a = primary_algebra(i, j);
    SmallExtension::from_ideal(&a, &[unit_vec(3, 2)]).expect("uv spans a small ideal")
}

/// `Q¹_ij(x, y)`: the obstruction to lifting `x⊗u + y⊗v`, read in `H(L)`.
pub fn primary_obstruction(lie: &Dgla, i: i64, j: i64, x: &[Scalar], y: &[Scalar]) -> Result<PrimaryObstruction> {
    let h = cohomology(&lie.complex())?;
    primary_with(lie, &h, i, j, x, y)
}

fn primary_with(
    lie: &Dgla,
    h: &Cohomology,
    i: i64,
    j: i64,
    x: &[Scalar],
    y: &[Scalar],
) -> Result<PrimaryObstruction> {
    crate::dgla_mc::check_degree(lie, x, 1 + i)?;
    crate::dgla_mc::check_degree(lie, y, 1 + j)?;
    if !is_zero_vec(&lie.diff(x)) || !is_zero_vec(&lie.diff(y)) {
        return Err(Error::Invalid("representatives must be cocycles".into()));
    }
    let ext = primary_extension(i, j);
    let ta = TensorDgla::new(lie, &ext.algebra);
    let over_a = vec_add(&ta.tensor_basis(x, 0), &ta.tensor_basis(y, 1));
    let xb = ta.algebra_map(&ext.projection).apply(&over_a);
    let ob = obstruction_class(lie, &ext, &xb)?;
    // L⊗I has one kernel vector k = c·uv, so l⊗k = (c·l)⊗uv.
    let c = ext.kernel[0][2].clone();
    let representative: Vec<Scalar> = ob.representative.iter().map(|v| v * &c).collect();
    Ok(PrimaryObstruction {
        class: h.contraction.class_of(&representative),
        representative,
    })
}

/// Graded Lie bracket on `T = H(L)` assembled from primary obstructions,
/// with the minimal L∞ structure it defines on `T[1]`.
#[derive(Clone, Debug)]
pub struct TangentBracket {
    pub lie: Dgla,
    pub cohomology: Cohomology,
    /// Harmonic basis of `H(L)` with the degrees of `L`.
    pub space: GradedSpace,
    /// Raw primary obstructions `Q¹_ij` on harmonic basis pairs.
    pub raw: Bilinear,
    pub bracket: Bilinear,
    /// Arity-2 structure on `H[1]`, truncated at order 3.
    pub linfty: LInftyStructure,
}

pub fn tangent_bracket(lie: &Dgla) -> Result<TangentBracket> {
    let h = cohomology(&lie.complex())?;
    let c = &h.contraction;
    let n = c.harmonic.dim();
    let space = c.harmonic.clone();
    let reps: Vec<Vec<Scalar>> = (0..n).map(|k| c.inclusion.col(k)).collect();
    let mut raw = Bilinear::square(n);
    let mut bracket = Bilinear::square(n);
    for p in 0..n {
        for q in 0..n {
            let (i, j) = (space.degree(p) - 1, space.degree(q) - 1);
            let ob = primary_with(lie, &h, i, j, &reps[p], &reps[q])?;
            let s = sign(i * (1 + j));
            for (k, v) in ob.class.iter().enumerate() {
                if !v.is_zero() {
                    raw.add(p, q, k, v);
                    bracket.add(p, q, k, &(&s * v));
                }
            }
        }
    }
    let on_h = Dgla::new(space.clone(), bracket.clone(), Matrix::zeros(n, n))?;
    let linfty = dgla_to_linfty(&on_h, 3);
    Ok(TangentBracket {
        lie: lie.clone(),
        cohomology: h,
        space,
        raw,
        bracket,
        linfty,
    })
}

impl TangentBracket {
    pub fn as_dgla(&self) -> Dgla {
        let n = self.space.dim();
        Dgla {
            space: self.space.clone(),
            bracket: self.bracket.clone(),
            d: Matrix::zeros(n, n),
        }
    }

    /// Graded antisymmetry and Jacobi, checked both directly and as
    /// vanishing of all arity-3 defects of the L∞ structure.
    pub fn is_graded_lie(&self) -> bool {
        self.as_dgla().validate().is_valid() && self.linfty.check().is_valid()
    }

    /// Compares with the bracket induced on `H(L)` by `[−,−]` of `L`.
    pub fn matches_cohomology_bracket(&self) -> bool {
        let c = &self.cohomology.contraction;
        let n = self.space.dim();
        (0..n).all(|p| {
            (0..n).all(|q| {
                let direct = c.class_of(&self.lie.br(&c.inclusion.col(p), &c.inclusion.col(q)));
                direct == self.bracket.get_dense(p, q)
            })
        })
    }
}
