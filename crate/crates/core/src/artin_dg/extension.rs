//! Small extensions `0 → I → A → B → 0` (with `A·I = 0`) and the
//! factorization of a surjection into a chain of them.

use super::algebra::{check_morphism, graded_span, vector_degree, NilpotentDgAlgebra};
use crate::error::{Error, Result};
use crate::graded_linear::{cohomology, coordinates, inverse, span_basis, Complex, GradedSpace, Matrix, Scalar};
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct SmallExtension {
    pub algebra: NilpotentDgAlgebra,
    pub quotient: NilpotentDgAlgebra,
    /// Basis of `I`, in coordinates of `A`.
    pub kernel: Vec<Vec<Scalar>>,
    /// `A → B`.
    pub projection: Matrix,
    /// Linear (not multiplicative) section `B → A`.
    pub section: Matrix,
    /// `I` with its restricted differential.
    pub kernel_complex: Complex,
}

impl SmallExtension {
    /// `A → A/I` for a differential ideal `I` with `A·I = 0`.
    pub fn from_ideal(a: &NilpotentDgAlgebra, ideal: &[Vec<Scalar>]) -> Result<Self> {
        let ideal = graded_span(&a.space, ideal);
        if !a.is_ideal(&ideal) {
            return Err(Error::Invalid("kernel is not a differential ideal".into()));
        }
        for v in &ideal {
            for i in 0..a.dim() {
                if a.mul(&a.basis_vector(i), v).iter().any(|c| !c.is_zero()) {
                    return Err(Error::Invalid(format!(
                        "not small: {}·(kernel vector) ≠ 0",
                        a.space.name(i)
                    )));
                }
            }
        }
        let (quotient, projection, section) = a.quotient(&ideal)?;
        let names: Vec<(String, i64)> = ideal
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let nz: Vec<usize> = (0..a.dim()).filter(|&j| !v[j].is_zero()).collect();
                let name = if nz.len() == 1 && v[nz[0]] == crate::graded_linear::one() {
                    a.space.name(nz[0]).to_string()
                } else {
                    format!("i{k}")
                };
                (name, vector_degree(&a.space, v).unwrap_or(0))
            })
            .collect();
        let names: Vec<(String, i64)> = {
            let (n, d): (Vec<String>, Vec<i64>) = names.into_iter().unzip();
            crate::graded_linear::uniquify(n).into_iter().zip(d).collect()
        };
        let space = GradedSpace::new(names)?;
        let cols: Vec<Vec<Scalar>> = ideal
            .iter()
            .map(|v| coordinates(&ideal, &a.diff(v)).expect("d-stable"))
            .collect();
        let d = Matrix::from_cols(&cols, ideal.len());
        let kernel_complex = Complex::new(space, d)?;
        Ok(SmallExtension {
            algebra: a.clone(),
            quotient,
            kernel: ideal,
            projection,
            section,
            kernel_complex,
        })
    }

    /// Inclusion `I → A`.
    pub fn inclusion(&self) -> Matrix {
        Matrix::from_cols(&self.kernel, self.algebra.dim())
    }

    /// Coordinates in `I` of an element of `A` lying in `I`.
    pub fn kernel_coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        coordinates(&self.kernel, v)
    }

    pub fn is_acyclic(&self) -> bool {
        cohomology(&self.kernel_complex).map(|h| h.total_dim() == 0).unwrap_or(false)
    }
}

/// Homogeneous basis of the intersection of two homogeneous subspaces.
pub fn graded_intersection(space: &GradedSpace, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = space.dim();
    let mut out = Vec::new();
    for k in space.occurring_degrees() {
        let of = |s: &[Vec<Scalar>]| -> Vec<Vec<Scalar>> {
            s.iter().filter(|v| vector_degree(space, v) == Some(k)).cloned().collect()
        };
        let (ak, bk) = (of(a), of(b));
        if ak.is_empty() || bk.is_empty() {
            continue;
        }
        out.extend(crate::graded_linear::intersection(&ak, &bk, n));
    }
    out
}

/// `A = A₀ → A₁ → … → A_m ≅ B` with each step a small extension.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub steps: Vec<SmallExtension>,
    /// Isomorphism `A_m → B`.
    pub to_target: Matrix,
}

impl Factorization {
    /// Composite projection `A → A_k`.
    pub fn projection_to(&self, k: usize) -> Matrix {
        let n = self.steps.first().map(|s| s.algebra.dim()).unwrap_or(0);
        let mut p = Matrix::identity(n);
        for s in &self.steps[..k] {
            p = s.projection.mul(&p);
        }
        p
    }

    pub fn source(&self) -> Option<&NilpotentDgAlgebra> {
        self.steps.first().map(|s| &s.algebra)
    }
}

/// Factors a surjective morphism `f: A → B` by repeatedly dividing out
/// `ker ∩ Ann(A)`, which is nonzero while the kernel is.
pub fn factor_into_small_extensions(
    a: &NilpotentDgAlgebra,
    b: &NilpotentDgAlgebra,
    f: &Matrix,
) -> Result<Factorization> {
    check_morphism(a, b, f)?;
    if f.rank() != b.dim() {
        return Err(Error::NotSurjective);
    }
    let mut cur = a.clone();
    let mut map = f.clone();
    let mut kernel = graded_span(&a.space, &f.kernel());
    let mut steps = Vec::new();
    while !kernel.is_empty() {
        let ann = cur.annihilator();
        let j = graded_intersection(&cur.space, &kernel, &ann);
        if j.is_empty() {
            return Err(Error::NotNilpotent("kernel meets no annihilator".into()));
        }
        let step = SmallExtension::from_ideal(&cur, &j)?;
        let next_kernel: Vec<Vec<Scalar>> = kernel.iter().map(|v| step.projection.apply(v)).collect();
        let next_kernel = span_basis(&next_kernel, step.quotient.dim());
        map = map.mul(&step.section);
        cur = step.quotient.clone();
        kernel = graded_span(&cur.space, &next_kernel);
        steps.push(step);
    }
    let to_target = if steps.is_empty() { f.clone() } else { map };
    if inverse(&to_target).is_none() && to_target.rows() > 0 {
        return Err(Error::Invalid("factorization did not end at the target".into()));
    }
    Ok(Factorization { steps, to_target })
}
