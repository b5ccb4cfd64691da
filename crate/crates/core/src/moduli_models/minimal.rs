//! Minimal models of truncated quasismooth algebras.
//!
//! Split `(V, d₁) = H ⊕ U ⊕ d₁U`, take generators `h_j, u_i, w_i = d u_i`
//! (the full differential), and divide by the ideal `(u, w)`. The section
//! `γ` is built order by order: each stage lifts through the acyclic small
//! extension whose kernel is the part of `⊙^{k+1}V` touching `u, w`. In
//! generators `γ(h_j), u_i, w_i` the algebra splits as `S ⊗ ⊙(u, w)`, which
//! gives the homotopy `γ(h_j) ↦ γ(h_j)`, `u_i ↦ u_i t`, `w_i ↦ d(u_i t)`.

use super::lifting::{morphism_lift, MorphismLift};
use super::quasismooth::{change_generators, free_algebra_map, is_minimal, QuasismoothTrunc};
use crate::artin_dg::{check_homotopy, check_morphism, graded_span, DeRham, Homotopy, Polynomial, SmallExtension};
use crate::error::{Error, Result};
use crate::graded_linear::{
    cohomology, image_basis, one, sign, unit_vec, uniquify, vec_add, vec_scale, Cohomology, GradedSpace,
    Matrix, Scalar,
};
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct MinimalModel {
    pub minimal: QuasismoothTrunc,
    /// `π: R → S`.
    pub projection: Matrix,
    /// `γ: S → R` with `πγ = Id`.
    pub section: Matrix,
    /// For each order `k = 1..=n`, a homotopy on `R/R^{k+1}` from `γπ`
    /// (at `t = 0`) to the identity (at `t = 1`).
    pub homotopies: Vec<Homotopy>,
    /// Cohomology of `(V, d₁)`; its harmonic basis indexes the generators of `S`.
    pub linear_cohomology: Cohomology,
}

impl MinimalModel {
    /// Re-runs every postcondition.
    pub fn verify(&self, r: &QuasismoothTrunc) -> bool {
        let s = &self.minimal;
        is_minimal(s)
            && check_morphism(r.algebra(), s.algebra(), &self.projection).is_ok()
            && check_morphism(s.algebra(), r.algebra(), &self.section).is_ok()
            && self.projection.mul(&self.section) == Matrix::identity(s.dim())
            && self.homotopies.len() == r.order
            && self.homotopies.iter().enumerate().all(|(k, h)| {
                let (nr, ns) = (h.source.dim(), truncated_dim(s, k + 1));
                let gp = self
                    .section
                    .submatrix(&(0..nr).collect::<Vec<_>>(), &(0..ns).collect::<Vec<_>>())
                    .mul(&self.projection.submatrix(&(0..ns).collect::<Vec<_>>(), &(0..nr).collect::<Vec<_>>()));
                check_homotopy(h, &gp, &Matrix::identity(nr))
            })
    }
}

fn truncated_dim(r: &QuasismoothTrunc, order: usize) -> usize {
    r.free().monomials.iter().filter(|m| m.len() <= order).count()
}

fn prefix(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn minimalize(r: &QuasismoothTrunc) -> Result<MinimalModel> {
    if !r.algebra().d.mul(&r.algebra().d).is_zero() {
        return Err(Error::NotComplex("d∘d ≠ 0 on the truncation".into()));
    }
    let v = r.linear_complex();
    let coh = cohomology(&v)?;
    let c = &coh.contraction;
    let n = r.num_generators();
    if is_minimal(r) {
        let homotopies = (1..=r.order)
            .map(|k| {
                let rk = r.truncate(k)?;
                let id = Matrix::identity(rk.dim());
                Ok(Homotopy::constant(rk.algebra(), DeRham::new(rk.algebra(), &one())?, &id))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(MinimalModel {
            minimal: r.clone(),
            projection: Matrix::identity(r.dim()),
            section: Matrix::identity(r.dim()),
            homotopies,
            linear_cohomology: coh,
        });
    }
    // Adapted basis of V: harmonic h, complement u = σ(B), and d₁u.
    let hs: Vec<Vec<Scalar>> = (0..c.harmonic.dim()).map(|j| c.inclusion.col(j)).collect();
    let us = graded_span(&v.space, &image_basis(&c.sigma));
    let nh = hs.len();
    let nu = us.len();
    let lin = |x: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); r.dim()];
        for (i, c) in x.iter().enumerate() {
            out[r.generator_index(i)] = c.clone();
        }
        out
    };
    let name_of = |x: &[Scalar], fallback: String| -> String {
        let nz: Vec<usize> = (0..n).filter(|&i| !x[i].is_zero()).collect();
        if nz.len() == 1 && x[nz[0]] == one() {
            v.space.name(nz[0]).to_string()
        } else {
            fallback
        }
    };
    let degree_of = |x: &[Scalar]| crate::artin_dg::vector_degree(&v.space, x).expect("homogeneous");
    let mut elements: Vec<Vec<Scalar>> = hs.iter().map(|h| lin(h)).collect();
    let mut basis: Vec<(String, i64)> = hs
        .iter()
        .enumerate()
        .map(|(j, h)| (name_of(h, format!("s{j}")), degree_of(h)))
        .collect();
    for (i, u) in us.iter().enumerate() {
        elements.push(lin(u));
        basis.push((format!("u{i}"), degree_of(u)));
    }
    for (i, u) in us.iter().enumerate() {
        elements.push(r.algebra().diff(&lin(u)));
        basis.push((format!("du{i}"), degree_of(u) + 1));
    }
    let names = uniquify(basis.iter().map(|(s, _)| s.clone()).collect());
    let space = GradedSpace::new(names.into_iter().zip(basis.iter().map(|(_, k)| *k)).collect())?;
    let (rp, phi) = change_generators(r, &space, &elements)?;
    debug_assert!(rp.d[nh..nh + nu]
        .iter()
        .enumerate()
        .all(|(i, p)| *p == vec![(vec![nh + nu + i], one())]));
    // S = R'/(u, w): keep the pure-h part of d(h_j).
    let s_space = GradedSpace::new(space.basis()[..nh].to_vec())?;
    let s_d: Vec<Polynomial> = rp.d[..nh]
        .iter()
        .map(|p| p.iter().filter(|(m, _)| m.iter().all(|&g| g < nh)).cloned().collect())
        .collect();
    let s = QuasismoothTrunc::new(&s_space, &s_d, r.order)?;
    // γ stage by stage.
    let mut images: Vec<Polynomial> = (0..nh).map(|j| vec![(vec![j], one())]).collect();
    for k in 1..r.order {
        let a = rp.truncate(k + 1)?;
        let ideal: Vec<Vec<Scalar>> = a
            .free()
            .of_length(k + 1)
            .into_iter()
            .filter(|&i| a.free().monomials[i].iter().any(|&g| g >= nh))
            .map(|i| unit_vec(a.dim(), i))
            .collect();
        let ext = SmallExtension::from_ideal(a.algebra(), &ideal)?;
        let b_images: Vec<Vec<Scalar>> = images.iter().map(|p| ext.projection.apply(&a.embed(p))).collect();
        match morphism_lift(&s, &ext, &b_images)? {
            MorphismLift::Lifted { images: lifted, .. } => {
                images = lifted.iter().map(|x| a.polynomial(x)).collect();
            }
            MorphismLift::Obstructed { .. } => {
                return Err(Error::Invalid("acyclic stage reported an obstruction".into()));
            }
        }
    }
    let gamma_p = free_algebra_map(s.free(), rp.algebra(), &images.iter().map(|p| rp.embed(p)).collect::<Vec<_>>());
    check_morphism(s.algebra(), rp.algebra(), &gamma_p)?;
    let mut pi_p = Matrix::zeros(s.dim(), rp.dim());
    for (i, m) in rp.free().monomials.iter().enumerate() {
        if m.iter().all(|&g| g < nh) {
            pi_p.set(s.free().index_of(m).expect("pure monomial"), i, one());
        }
    }
    let phi_inv = phi.inverse().expect("change of generators is invertible");
    let projection = pi_p.mul(&phi_inv);
    let section = phi.mul(&gamma_p);
    check_morphism(r.algebra(), s.algebra(), &projection)?;
    // Split generators γ(h_j), u_i, w_i, as elements of R.
    let split: Vec<Vec<Scalar>> = (0..n)
        .map(|g| {
            if g < nh {
                section.col(s.generator_index(g))
            } else {
                phi.col(rp.generator_index(g))
            }
        })
        .collect();
    let (_, psi) = change_generators(r, &space, &split)?;
    let psi_inv = psi.inverse().expect("invertible");
    let mut homotopies = Vec::with_capacity(r.order);
    for k in 1..=r.order {
        let rk = r.truncate(k)?;
        let nk = rk.dim();
        let target = DeRham::new(rk.algebra(), &one())?;
        let cut = |x: &[Scalar]| x[..nk].to_vec();
        let mut gen_images = Vec::with_capacity(n);
        for (g, x) in split.iter().enumerate() {
            let x = cut(x);
            let img = if g < nh {
                target.inclusion().apply(&x)
            } else if g < nh + nu {
                target.embed(&x, 1, false)?
            } else {
                let u = cut(&split[g - nu]);
                let su = sign(space.degree(g - nu));
                vec_add(&target.embed(&x, 1, false)?, &vec_scale(&su, &target.embed(&u, 1, true)?))
            };
            gen_images.push(img);
        }
        let free_k = rp.truncate(k)?;
        let h_free = free_algebra_map(free_k.free(), &target.algebra, &gen_images);
        let map = h_free.mul(&psi_inv.submatrix(&prefix(nk), &prefix(nk)));
        let h = Homotopy {
            source: rk.algebra().clone(),
            target,
            map,
        };
        let ns = truncated_dim(&s, k);
        let gp = section.submatrix(&prefix(nk), &prefix(ns)).mul(&projection.submatrix(&prefix(ns), &prefix(nk)));
        if !check_homotopy(&h, &gp, &Matrix::identity(nk)) {
            return Err(Error::Invalid(format!("homotopy fails at order {k}")));
        }
        homotopies.push(h);
    }
    Ok(MinimalModel {
        minimal: s,
        projection,
        section,
        homotopies,
        linear_cohomology: coh,
    })
}

/// Isomorphism `S₁ → S₂` between minimal models of `R₁` and `R₂`, given a
/// dg-isomorphism `f: R₁ → R₂`: the composite `π₂∘f∘γ₁`, returned when it
/// is a dg-morphism with invertible matrix.
pub fn compare_minimal_models(m1: &MinimalModel, m2: &MinimalModel, f: &Matrix) -> Option<Matrix> {
    let g = m2.projection.mul(f).mul(&m1.section);
    check_morphism(m1.minimal.algebra(), m2.minimal.algebra(), &g).ok()?;
    g.inverse().map(|_| g)
}
