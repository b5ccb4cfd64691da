//! Truncated quasismooth algebras: minimality, smoothness, minimal models
//! and the prorepresenting algebra of `Def_L`.
//!
//! Everything is computed on `R/R^{n+1}` for an explicit order `n`.

mod kuranishi;
mod lifting;
mod minimal;
mod quasismooth;

pub use kuranishi::{kuranishi_prorepresent, quadratic_from_bracket, Prorepresentation, VersalElement};
pub use lifting::{morphism_lift, MorphismLift};
pub use minimal::{compare_minimal_models, minimalize, MinimalModel};
pub use quasismooth::{
    change_generators, free_algebra_map, h_r_tangent, is_minimal, is_morphism, to_polynomial, truncate_polynomial,
    with_acyclic_pairs, QuasismoothTrunc,
};

use crate::artin_dg::{Polynomial, SmallExtension};
use crate::error::{Error, Result};
use crate::graded_linear::Scalar;

/// Why a minimal algebra with `d ≠ 0` is not smooth: `π: S → S/S^n` (equal
/// to `R/R^n` for `R` the same generators with zero differential, `n` the
/// least length with `d_n ≠ 0`) has no lift to `R/R^{n+1}`, since
/// `f(dx) = π(dx) ≠ 0` while `df(x) = 0`.
#[derive(Clone, Debug)]
pub struct SmoothnessWitness {
    pub length: usize,
    pub generator: usize,
    /// The length-`n` part of `dx`.
    pub obstruction: Polynomial,
    /// `R/R^{n+1} → R/R^n`.
    pub extension: SmallExtension,
    /// Images of the generators in `R/R^n`.
    pub projection_images: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug)]
pub enum Smoothness {
    Smooth,
    NotSmooth(Box<SmoothnessWitness>),
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Smoothness::Smooth)
    }
}

pub fn is_smooth_minimal(s: &QuasismoothTrunc) -> Result<Smoothness> {
    if !is_minimal(s) {
        return Err(Error::Invalid("algebra is not minimal (d₁ ≠ 0)".into()));
    }
    let Some((length, generator)) = (2..=s.order)
        .flat_map(|k| (0..s.num_generators()).map(move |g| (k, g)))
        .find(|&(k, g)| s.d[g].iter().any(|(m, _)| m.len() == k))
    else {
        return Ok(Smoothness::Smooth);
    };
    let obstruction: Polynomial = s.d[generator].iter().filter(|(m, _)| m.len() == length).cloned().collect();
    let flat = QuasismoothTrunc::trivial(&s.generators, length)?;
    let ideal: Vec<Vec<Scalar>> = flat
        .free()
        .of_length(length)
        .into_iter()
        .map(|i| crate::graded_linear::unit_vec(flat.dim(), i))
        .collect();
    let extension = SmallExtension::from_ideal(flat.algebra(), &ideal)?;
    let projection_images = (0..s.num_generators())
        .map(|g| extension.projection.apply(&flat.embed(&vec![(vec![g], crate::graded_linear::one())])))
        .collect();
    Ok(Smoothness::NotSmooth(Box::new(SmoothnessWitness {
        length,
        generator,
        obstruction,
        extension,
        projection_images,
    })))
}
