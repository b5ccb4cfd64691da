//! Lifting morphisms out of a truncated free algebra through a small
//! extension, one linear solve per extension.
//!
//! With images `a_i` chosen over `b_i`, the defects
//! `e_i = ψ(dv_i) − d a_i` lie in `I`. Shifting `a_i` by `s_i ∈ I` changes
//! the defect by `Σ_j c_ij s_j − d s_i` (`c` the linear part of `d`), because
//! `I` is killed by `A`. The lift exists iff that system is solvable.

use super::quasismooth::{free_algebra_map, QuasismoothTrunc};
use crate::artin_dg::{check_morphism, vector_degree, SmallExtension};
use crate::error::{Error, Result};
use crate::graded_linear::{solve, vec_add, vec_sub, Matrix, Scalar};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismLift {
    /// Generator images in `A` and the induced morphism `R → A`.
    Lifted { images: Vec<Vec<Scalar>>, map: Matrix },
    /// Defects `e_i` (kernel coordinates) of the section lift; no
    /// correction inside `I` removes them.
    Obstructed { defects: Vec<Vec<Scalar>> },
}

/// Lifts the morphism `R → B` with generator images `images` (coordinates
/// of `B = ext.quotient`) to `R → A`.
pub fn morphism_lift(source: &QuasismoothTrunc, ext: &SmallExtension, images: &[Vec<Scalar>]) -> Result<MorphismLift> {
    let ng = source.num_generators();
    if images.len() != ng {
        return Err(Error::Shape("one image per generator".into()));
    }
    let a = &ext.algebra;
    match a.nilpotency_index() {
        Some(k) if k <= source.order + 1 => {}
        _ => {
            return Err(Error::Invalid(format!(
                "products of {} elements must vanish in the target",
                source.order + 1
            )))
        }
    }
    let psi_b = free_algebra_map(source.free(), &ext.quotient, images);
    check_morphism(source.algebra(), &ext.quotient, &psi_b)?;
    let lifted: Vec<Vec<Scalar>> = images.iter().map(|b| ext.section.apply(b)).collect();
    let psi_a = free_algebra_map(source.free(), a, &lifted);
    let mut defects: Vec<Vec<Scalar>> = Vec::with_capacity(ng);
    for i in 0..ng {
        let g = source.generator_index(i);
        let e = vec_sub(&psi_a.apply(&source.algebra().d.col(g)), &a.diff(&lifted[i]));
        defects.push(
            ext.kernel_coords(&e)
                .ok_or_else(|| Error::Invalid("defect outside the kernel".into()))?,
        );
    }
    let ni = ext.kernel.len();
    let kd = &ext.kernel_complex.d;
    let kdeg: Vec<Option<i64>> = ext.kernel.iter().map(|v| vector_degree(&a.space, v)).collect();
    // Unknowns: coefficient of kernel vector r in s_j, for matching degrees.
    let unknowns: Vec<(usize, usize)> = (0..ng)
        .flat_map(|j| (0..ni).map(move |r| (j, r)))
        .filter(|&(j, r)| kdeg[r] == Some(source.generators.degree(j)))
        .collect();
    let linear = source.component(1);
    let mut m = Matrix::zeros(ng * ni, unknowns.len());
    for (col, &(j, r)) in unknowns.iter().enumerate() {
        for k in 0..ni {
            let c = kd.get(k, r);
            if !c.is_zero() {
                m.add_at(j * ni + k, col, c);
            }
        }
        // d v_i ∋ c_ij v_j contributes −c_ij s_j to equation i.
        for i in 0..ng {
            let c = linear.get(j, i);
            if !c.is_zero() {
                m.add_at(i * ni + r, col, &-c);
            }
        }
    }
    let rhs: Vec<Scalar> = defects.iter().flatten().cloned().collect();
    let Some(x) = solve(&m, &rhs) else {
        return Ok(MorphismLift::Obstructed { defects });
    };
    let mut out = lifted;
    for (col, &(j, r)) in unknowns.iter().enumerate() {
        if !x[col].is_zero() {
            let shift: Vec<Scalar> = ext.kernel[r].iter().map(|c| c * &x[col]).collect();
            out[j] = vec_add(&out[j], &shift);
        }
    }
    let map = free_algebra_map(source.free(), a, &out);
    check_morphism(source.algebra(), a, &map)?;
    Ok(MorphismLift::Lifted { images: out, map })
}
