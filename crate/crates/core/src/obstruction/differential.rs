//! Lifting a differential through a small extension of graded algebras:
//! the defect `d² = ιδα`, its null-homotopies and the auxiliary acyclic
//! extension `A × I[1] → B`.

use super::classes::maps_killing_products;
use crate::artin_dg::{NilpotentDgAlgebra, SmallExtension};
use crate::error::{Error, Result};
use crate::graded_linear::{sign, solve, Bilinear, GradedSpace, Matrix, Scalar};
use num_traits::Zero;

/// Checks that `d` is a derivation of degree `k` of the graded algebra `a`.
pub fn is_derivation(a: &NilpotentDgAlgebra, d: &Matrix, k: i64) -> bool {
    let n = a.dim();
    (0..n).all(|p| {
        (0..n).all(|q| {
            let lhs = d.apply(&a.mult.get_dense(p, q));
            let t1 = a.mul(&d.col(p), &a.basis_vector(q));
            let t2 = a.mul(&a.basis_vector(p), &d.col(q));
            let s = sign(k * a.degree(p));
            lhs.iter().zip(t1.iter().zip(&t2)).all(|(l, (x, y))| *l == x + &s * y)
        })
    })
}

#[derive(Clone, Debug)]
pub struct LiftingDefect {
    /// The extension, with `A` carrying the chosen (possibly non-square-zero) lift.
    pub extension: SmallExtension,
    /// `δ: B → I[2]`, rows indexed by the kernel basis.
    pub delta: Matrix,
    /// `h: B → I` of degree 1 killing `B²` with `δ = d_I h + h d_B`, if any.
    pub homotopy: Option<Matrix>,
    /// `A` with the square-zero lift `d − ιhα`.
    pub corrected: Option<NilpotentDgAlgebra>,
}

impl LiftingDefect {
    pub fn is_null_homotopic(&self) -> bool {
        self.homotopy.is_some()
    }
}

/// `a` carries a degree-1 derivation `d` lifting a differential on
/// `B = A/I` and restricting to a differential on the ideal `I`, which
/// must satisfy `A·I = 0`.
pub fn lifting_defect(a: &NilpotentDgAlgebra, ideal: &[Vec<Scalar>]) -> Result<LiftingDefect> {
    if !is_derivation(a, &a.d, 1) {
        return Err(Error::Invalid("the chosen lift is not a derivation".into()));
    }
    let ext = SmallExtension::from_ideal(a, ideal)?;
    let b = &ext.quotient;
    if !b.d.mul(&b.d).is_zero() {
        return Err(Error::Invalid("the lift does not induce a differential on the quotient".into()));
    }
    let incl = ext.inclusion();
    let d2 = a.d.mul(&a.d);
    let image = d2.mul(&ext.section);
    let cols: Vec<Vec<Scalar>> = (0..b.dim())
        .map(|c| solve(&incl, &image.col(c)).ok_or_else(|| Error::Invalid("d² leaves the ideal".into())))
        .collect::<Result<_>>()?;
    let delta = Matrix::from_cols(&cols, ext.kernel.len());
    let homotopy = null_homotopy(&ext, &delta);
    let corrected = homotopy.as_ref().map(|h| {
        let mut c = a.clone();
        c.d = a.d.sub(&incl.mul(h).mul(&ext.projection));
        c
    });
    Ok(LiftingDefect {
        extension: ext,
        delta,
        homotopy,
        corrected,
    })
}

/// Solves `δ = d_I h + h d_B` over degree-1 maps killing `B²`.
fn null_homotopy(ext: &SmallExtension, delta: &Matrix) -> Option<Matrix> {
    let basis = maps_killing_products(ext, 1);
    let di = &ext.kernel_complex.d;
    let db = &ext.quotient.d;
    let flat = |m: &Matrix| -> Vec<Scalar> { (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect() };
    let n = delta.rows() * delta.cols();
    if basis.is_empty() {
        return delta.is_zero().then(|| Matrix::zeros(delta.rows(), delta.cols()));
    }
    let cols: Vec<Vec<Scalar>> = basis.iter().map(|h| flat(&di.mul(h).add(&h.mul(db)))).collect();
    let coef = solve(&Matrix::from_cols(&cols, n), &flat(delta))?;
    Some(
        basis
            .iter()
            .zip(&coef)
            .fold(Matrix::zeros(delta.rows(), delta.cols()), |acc, (h, c)| acc.add(&h.scale(c))),
    )
}

/// `C = A × I[1]` with `d_C = [[d, ι], [−d², d_{I[1]}]]` and the acyclic
/// small extension `C → B`, `(a, t) ↦ α(a)`.
pub fn acyclic_resolution(defect: &LiftingDefect) -> Result<SmallExtension> {
    let ext = &defect.extension;
    let a = &ext.algebra;
    let (na, ni) = (a.dim(), ext.kernel.len());
    let n = na + ni;
    let mut basis = a.space.basis();
    for r in 0..ni {
        let sp = &ext.kernel_complex.space;
        basis.push((format!("{}[1]", sp.name(r)), sp.degree(r) - 1));
    }
    let names = crate::graded_linear::uniquify(basis.iter().map(|(s, _)| s.clone()).collect());
    let space = GradedSpace::new(names.into_iter().zip(basis.iter().map(|(_, d)| *d)).collect())?;
    let mut mult = Bilinear::square(n);
    for p in 0..na {
        for q in 0..na {
            for (k, c) in a.mult.get(p, q) {
                mult.add(p, q, *k, c);
            }
        }
    }
    let mut d = Matrix::zeros(n, n);
    let incl = ext.inclusion();
    let minus_d2 = defect.delta.mul(&ext.projection).scale(&-Scalar::from_integer(1.into()));
    for c in 0..na {
        for r in 0..na {
            d.set(r, c, a.d.get(r, c).clone());
        }
        for r in 0..ni {
            d.set(na + r, c, minus_d2.get(r, c).clone());
        }
    }
    for c in 0..ni {
        for r in 0..na {
            d.set(r, na + c, incl.get(r, c).clone());
        }
        for r in 0..ni {
            let v = ext.kernel_complex.d.get(r, c);
            if !v.is_zero() {
                d.set(na + r, na + c, -v.clone());
            }
        }
    }
    let algebra = NilpotentDgAlgebra::checked(space, mult, d)?;
    let mut ker: Vec<Vec<Scalar>> = ext
        .kernel
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.extend(std::iter::repeat(Scalar::zero()).take(ni));
            w
        })
        .collect();
    for r in 0..ni {
        ker.push(crate::graded_linear::unit_vec(n, na + r));
    }
    SmallExtension::from_ideal(&algebra, &ker)
}
