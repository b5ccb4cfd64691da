//! Obstruction classes of MC elements along small extensions and the
//! twisting of an extension by a morphism `B → I[1]`.

use crate::artin_dg::SmallExtension;
use crate::dgla_mc::{mc_check, mc_defect, Dgla, KernelTensor, TensorDgla};
use crate::error::{Error, Result};
use crate::graded_linear::{is_zero_vec, kernel, sign, Matrix, Scalar};
use num_traits::Zero;

/// An obstruction in `H²(L⊗I)` with its cocycle representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionClass {
    /// Harmonic coordinates of the class.
    pub class: Vec<Scalar>,
    /// Defect of the chosen lift, in `L⊗I`.
    pub representative: Vec<Scalar>,
    /// `t ∈ (L⊗I)¹` with `dt` equal to the representative, when the class vanishes.
    pub certificate: Option<Vec<Scalar>>,
    /// The set-theoretic lift over `A` whose defect was taken.
    pub lift: Vec<Scalar>,
}

impl ObstructionClass {
    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.class)
    }
}

/// Obstruction to lifting `x ∈ MC_L(B)` through `ext`, using the lift given
/// by the section of `ext`.
pub fn obstruction_class(lie: &Dgla, ext: &SmallExtension, x: &[Scalar]) -> Result<ObstructionClass> {
    let tb = TensorDgla::new(lie, &ext.quotient);
    let y = tb.algebra_map(&ext.section).apply(x);
    obstruction_class_from_lift(lie, ext, x, &y)
}

/// Same, for an arbitrary lift `y` of `x` over `A`.
pub fn obstruction_class_from_lift(
    lie: &Dgla,
    ext: &SmallExtension,
    x: &[Scalar],
    y: &[Scalar],
) -> Result<ObstructionClass> {
    let tb = TensorDgla::new(lie, &ext.quotient);
    if !mc_check(&tb.dgla, x)?.is_mc {
        return Err(Error::Invalid("element is not Maurer–Cartan over the base".into()));
    }
    let ta = TensorDgla::new(lie, &ext.algebra);
    crate::dgla_mc::check_degree(&ta.dgla, y, 1)?;
    if ta.algebra_map(&ext.projection).apply(y) != x {
        return Err(Error::Invalid("lift does not map to the element".into()));
    }
    let kt = KernelTensor::new(lie, ext)?;
    let representative = kt.restrict(&mc_defect(&ta.dgla, y))?;
    if !is_zero_vec(&kt.tensor.dgla.diff(&representative)) {
        return Err(Error::Invalid("defect is not a cocycle".into()));
    }
    let class = kt.class_of(&representative);
    let certificate = is_zero_vec(&class).then(|| kt.cohomology.contraction.sigma.apply(&representative));
    Ok(ObstructionClass {
        class,
        representative,
        certificate,
        lift: y.to_vec(),
    })
}

/// Basis of the degree-`k` linear maps `φ: B → I` vanishing on `B²`, as
/// matrices with one row per kernel basis vector.
pub fn maps_killing_products(ext: &SmallExtension, k: i64) -> Vec<Matrix> {
    let (b, ni) = (&ext.quotient, ext.kernel.len());
    let nb = b.dim();
    let entries: Vec<(usize, usize)> = (0..ni)
        .flat_map(|r| (0..nb).map(move |c| (r, c)))
        .filter(|&(r, c)| ext.kernel_complex.space.degree(r) == b.degree(c) + k)
        .collect();
    let products: Vec<Vec<Scalar>> = (0..nb)
        .flat_map(|p| (0..nb).map(move |q| (p, q)))
        .map(|(p, q)| b.mult.get_dense(p, q))
        .filter(|v| !is_zero_vec(v))
        .collect();
    let mut sys = Matrix::zeros(products.len() * ni, entries.len());
    for (u, &(r, c)) in entries.iter().enumerate() {
        for (pi, v) in products.iter().enumerate() {
            if !v[c].is_zero() {
                sys.set(pi * ni + r, u, v[c].clone());
            }
        }
    }
    kernel(&sys)
        .into_iter()
        .map(|sol| {
            let mut m = Matrix::zeros(ni, nb);
            for (u, &(r, c)) in entries.iter().enumerate() {
                m.set(r, c, sol[u].clone());
            }
            m
        })
        .collect()
}

/// Basis of the dg-algebra morphisms `B → I[1]`: degree-1 maps `φ: B → I`
/// killing `B²` with `d_I φ + φ d_B = 0`.
pub fn twisting_morphisms(ext: &SmallExtension) -> Vec<Matrix> {
    let cands = maps_killing_products(ext, 1);
    let di = &ext.kernel_complex.d;
    let db = &ext.quotient.d;
    let images: Vec<Matrix> = cands.iter().map(|p| di.mul(p).add(&p.mul(db))).collect();
    let n = di.rows() * db.cols();
    let cols: Vec<Vec<Scalar>> = images
        .iter()
        .map(|m| (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect())
        .collect();
    if cols.is_empty() {
        return Vec::new();
    }
    kernel(&Matrix::from_cols(&cols, n))
        .into_iter()
        .map(|coef| {
            cands
                .iter()
                .zip(&coef)
                .fold(Matrix::zeros(di.rows(), db.cols()), |acc, (m, c)| acc.add(&m.scale(c)))
        })
        .collect()
}

/// Checks that `φ` (rows: kernel basis, columns: `B`) is a dg-algebra
/// morphism `B → I[1]`.
pub fn check_twisting_morphism(ext: &SmallExtension, phi: &Matrix) -> Result<()> {
    let (ni, nb) = (ext.kernel.len(), ext.quotient.dim());
    if phi.rows() != ni || phi.cols() != nb {
        return Err(Error::Shape(format!("φ must be {ni}×{nb}")));
    }
    crate::graded_linear::check_homogeneous(&ext.quotient.space, &ext.kernel_complex.space, 1, phi)?;
    let b = &ext.quotient;
    for p in 0..nb {
        for q in 0..nb {
            if !is_zero_vec(&phi.apply(&b.mult.get_dense(p, q))) {
                return Err(Error::NotMorphism(format!(
                    "φ does not vanish on {}·{}",
                    b.space.name(p),
                    b.space.name(q)
                )));
            }
        }
    }
    if !ext.kernel_complex.d.mul(phi).add(&phi.mul(&b.d)).is_zero() {
        return Err(Error::NotMorphism("φ does not commute with the differentials of B and I[1]".into()));
    }
    Ok(())
}

/// `e_φ`: the same graded extension with differential `d + ιφα` on `A`.
pub fn twist_extension(ext: &SmallExtension, phi: &Matrix) -> Result<SmallExtension> {
    check_twisting_morphism(ext, phi)?;
    let mut out = ext.clone();
    let correction = ext.inclusion().mul(phi).mul(&ext.projection);
    out.algebra.d = ext.algebra.d.add(&correction);
    debug_assert!(out.algebra.d.mul(&out.algebra.d).is_zero());
    Ok(out)
}

/// `Σ (−1)^{l̄} l⊗φ(b)` for `x = Σ l⊗b`, in `L⊗I`: the shift of `ob_e`
/// under twisting by `φ`.
pub fn phi_push(lie: &Dgla, ext: &SmallExtension, phi: &Matrix, x: &[Scalar]) -> Vec<Scalar> {
    let (nb, ni) = (ext.quotient.dim(), ext.kernel.len());
    let mut out = vec![Scalar::zero(); lie.dim() * ni];
    for (idx, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (l, b) = (idx / nb, idx % nb);
        let s = sign(lie.degree(l));
        for r in 0..ni {
            let p = phi.get(r, b);
            if !p.is_zero() {
                out[l * ni + r] += &s * c * p;
            }
        }
    }
    out
}
