//! Fiber products, mapping cones, derived inverse cones and chain homotopies
//! between objects with trivial multiplication.

use super::algebra::{check_morphism, graded_kernel, vector_degree, NilpotentDgAlgebra};
use crate::error::{Error, Result};
use crate::graded_linear::{
    coordinates, one, sign, solve, solve_matrix, Bilinear, GradedSpace, Matrix, Scalar,
};
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub algebra: NilpotentDgAlgebra,
    /// Inclusion into `A × B`.
    pub inclusion: Matrix,
    pub proj_a: Matrix,
    pub proj_b: Matrix,
}

/// `A ×_C B` as the kernel of `(a, b) ↦ α(a) − β(b)` inside `A × B`.
pub fn fiber_product(
    a: &NilpotentDgAlgebra,
    b: &NilpotentDgAlgebra,
    c: &NilpotentDgAlgebra,
    alpha: &Matrix,
    beta: &Matrix,
) -> Result<FiberProduct> {
    if alpha.rows() != c.dim() || beta.rows() != c.dim() {
        return Err(Error::Shape("morphisms have different targets".into()));
    }
    check_morphism(a, c, alpha)?;
    check_morphism(b, c, beta)?;
    let ab = a.product(b);
    let diff = alpha.hcat(&beta.scale(&-one()));
    let ker = graded_kernel(&ab.space, &c.space, &diff, 0);
    let (algebra, inclusion) = ab.subalgebra(&ker)?;
    let (n, m) = (a.dim(), b.dim());
    let pa = Matrix::identity(n).hcat(&Matrix::zeros(n, m));
    let pb = Matrix::zeros(m, n).hcat(&Matrix::identity(m));
    Ok(FiberProduct {
        proj_a: pa.mul(&inclusion),
        proj_b: pb.mul(&inclusion),
        algebra,
        inclusion,
    })
}

impl FiberProduct {
    /// The unique `u: D → A ×_C B` with `proj_a∘u = p` and `proj_b∘u = q`,
    /// if it exists.
    pub fn mediate(&self, p: &Matrix, q: &Matrix) -> Option<Matrix> {
        let stacked = p.vcat(q);
        solve_matrix(&self.inclusion, &stacked)
    }
}

#[derive(Clone, Debug)]
pub struct MappingCone {
    pub algebra: NilpotentDgAlgebra,
    /// `A → C`, a dg-algebra morphism.
    pub inclusion: Matrix,
    /// `C → I[1]`, a derivation.
    pub projection: Matrix,
    /// Degrees of `I[1]`.
    pub shifted: GradedSpace,
}

/// Mapping cone `C = A ⊕ I[1]` of the inclusion of a square-zero differential
/// ideal `I ⊂ A` (spanned by homogeneous `ideal` vectors) with product
/// `(a, m)(b, n) = (ab, an + mb)` and differential `(a, m) ↦ (da + m, −dm)`.
pub fn mapping_cone(a: &NilpotentDgAlgebra, ideal: &[Vec<Scalar>]) -> Result<MappingCone> {
    if !a.is_ideal(ideal) {
        return Err(Error::Invalid("not a differential ideal".into()));
    }
    let n = a.dim();
    let k = ideal.len();
    for x in ideal {
        for y in ideal {
            if a.mul(x, y).iter().any(|c| !c.is_zero()) {
                return Err(Error::Invalid("f(M)·M ≠ 0".into()));
            }
        }
    }
    let coords = |v: &[Scalar]| coordinates(ideal, v).expect("inside ideal");
    let ideal_deg: Vec<i64> = ideal.iter().map(|v| vector_degree(&a.space, v).unwrap_or(0)).collect();
    let names: Vec<(String, i64)> = ideal
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let nz: Vec<usize> = (0..n).filter(|&j| !v[j].is_zero()).collect();
            let base = if nz.len() == 1 && v[nz[0]] == one() {
                a.space.name(nz[0]).to_string()
            } else {
                format!("i{i}")
            };
            (format!("{base}[1]"), ideal_deg[i] - 1)
        })
        .collect();
        let names: Vec<(String, i64)> = {
            let (n, d): (Vec<String>, Vec<i64>) = names.into_iter().unzip();
            crate::graded_linear::uniquify(n).into_iter().zip(d).collect()
        };
    let shifted = GradedSpace::new(names)?;
    let space = a.space.direct_sum(&shifted, "'");
    let mut mult = Bilinear::square(n + k);
    for i in 0..n {
        for j in 0..n {
            for (t, c) in a.mult.get(i, j) {
                mult.add(i, j, *t, c);
            }
        }
        let e = a.basis_vector(i);
        for (j, m) in ideal.iter().enumerate() {
            // a·m[1] = (-1)^{|a|} (am)[1], m[1]·a = (ma)[1]
            let am = coords(&a.mul(&e, m));
            let ma = coords(&a.mul(m, &e));
            for (t, c) in am.iter().enumerate() {
                mult.add(i, n + j, n + t, &(sign(a.degree(i)) * c));
            }
            for (t, c) in ma.iter().enumerate() {
                mult.add(n + j, i, n + t, c);
            }
        }
    }
    let mut d = Matrix::zeros(n + k, n + k);
    for i in 0..n {
        for j in 0..n {
            d.set(i, j, a.d.get(i, j).clone());
        }
    }
    for (j, m) in ideal.iter().enumerate() {
        for (i, c) in m.iter().enumerate() {
            d.set(i, n + j, c.clone());
        }
        let dm = coords(&a.diff(m));
        for (t, c) in dm.iter().enumerate() {
            d.set(n + t, n + j, -c.clone());
        }
    }
    let algebra = NilpotentDgAlgebra::new(space, mult, d)?;
    let inclusion = Matrix::identity(n).vcat(&Matrix::zeros(k, n));
    let projection = Matrix::zeros(k, n).hcat(&Matrix::identity(k));
    Ok(MappingCone {
        algebra,
        inclusion,
        projection,
        shifted,
    })
}

/// A dg-module over a nilpotent algebra: left action structure constants.
#[derive(Clone, Debug)]
pub struct DgModule {
    pub space: GradedSpace,
    pub d: Matrix,
    /// `action[b, n]` = coordinates of `e_b · e_n`.
    pub action: Bilinear,
}

impl DgModule {
    pub fn trivial(space: GradedSpace, d: Matrix, over_dim: usize) -> Self {
        let n = space.dim();
        DgModule {
            space,
            d,
            action: Bilinear::zero(over_dim, n, n),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DerivedInverseCone {
    pub algebra: NilpotentDgAlgebra,
    /// `D → B`, a dg-algebra morphism.
    pub projection: Matrix,
    /// `N[−1] → D`.
    pub inclusion: Matrix,
}

/// `D = B ⊕ N[−1]` with differential `(b, n) ↦ (db, h(b) − dn)` for a
/// degree-0 derivation `h: B → N`.
pub fn derived_inverse_cone(b: &NilpotentDgAlgebra, module: &DgModule, h: &Matrix) -> Result<DerivedInverseCone> {
    let (nb, nn) = (b.dim(), module.space.dim());
    if h.rows() != nn || h.cols() != nb {
        return Err(Error::Shape("h: B → N".into()));
    }
    crate::graded_linear::check_homogeneous(&b.space, &module.space, 0, h)?;
    if module.d.mul(h) != h.mul(&b.d) {
        return Err(Error::Invalid("h does not commute with differentials".into()));
    }
    let act = |bi: usize, v: &[Scalar]| module.action.apply_left_basis(bi, v);
    for i in 0..nb {
        for j in 0..nb {
            let lhs = h.apply(&b.mult.get_dense(i, j));
            // h(b b') = h(b)·b' + b·h(b'), with n·b' = (-1)^{|n||b'|} b'·n
            let hb = h.col(i);
            let hbp = h.col(j);
            let mut rhs = act(j, &hb);
            let s = sign(b.degree(i) * b.degree(j));
            for x in rhs.iter_mut() {
                *x *= &s;
            }
            for (x, y) in rhs.iter_mut().zip(act(i, &hbp)) {
                *x += y;
            }
            if lhs != rhs {
                return Err(Error::Invalid(format!(
                    "h is not a derivation on ({}, {})",
                    b.space.name(i),
                    b.space.name(j)
                )));
            }
        }
    }
    let shifted = GradedSpace::new(
        module
            .space
            .basis()
            .into_iter()
            .map(|(nm, dg)| (format!("{nm}[-1]"), dg + 1))
            .collect(),
    )?;
    let space = b.space.direct_sum(&shifted, "'");
    let mut mult = Bilinear::square(nb + nn);
    for i in 0..nb {
        for j in 0..nb {
            for (t, c) in b.mult.get(i, j) {
                mult.add(i, j, *t, c);
            }
        }
        for j in 0..nn {
            let bn = act(i, &crate::graded_linear::unit_vec(nn, j));
            // b·n[−1] = (-1)^{|b|} (bn)[−1]; n[−1]·b = (nb)[−1] = (-1)^{|n||b|}(bn)[−1]
            let s_left = sign(b.degree(i));
            let s_right = sign(module.space.degree(j) * b.degree(i));
            for (t, c) in bn.iter().enumerate() {
                mult.add(i, nb + j, nb + t, &(&s_left * c));
                mult.add(nb + j, i, nb + t, &(&s_right * c));
            }
        }
    }
    let mut d = Matrix::zeros(nb + nn, nb + nn);
    for i in 0..nb {
        for j in 0..nb {
            d.set(i, j, b.d.get(i, j).clone());
        }
    }
    for i in 0..nn {
        for j in 0..nb {
            d.set(nb + i, j, h.get(i, j).clone());
        }
        for j in 0..nn {
            d.set(nb + i, nb + j, -module.d.get(i, j).clone());
        }
    }
    let algebra = NilpotentDgAlgebra::new(space, mult, d)?;
    Ok(DerivedInverseCone {
        algebra,
        projection: Matrix::identity(nb).hcat(&Matrix::zeros(nb, nn)),
        inclusion: Matrix::zeros(nb, nn).vcat(&Matrix::identity(nn)),
    })
}

/// For `A² = 0 = B²`: a degree −1 map `σ` with `f − g = dσ + σd`, if any.
pub fn chain_homotopic(
    a: &NilpotentDgAlgebra,
    b: &NilpotentDgAlgebra,
    f: &Matrix,
    g: &Matrix,
) -> Result<Option<Matrix>> {
    if !a.has_trivial_product() || !b.has_trivial_product() {
        return Err(Error::Invalid("chain homotopy decision needs trivial products".into()));
    }
    let (n, m) = (a.dim(), b.dim());
    // Unknowns: σ(j, i) with deg_B(j) = deg_A(i) − 1.
    let mut unknowns = Vec::new();
    for j in 0..m {
        for i in 0..n {
            if b.degree(j) == a.degree(i) - 1 {
                unknowns.push((j, i));
            }
        }
    }
    let target = f.sub(g);
    let mut sys = Matrix::zeros(m * n, unknowns.len());
    for (u, &(j, i)) in unknowns.iter().enumerate() {
        // (d_B σ)(r, i) += d_B(r, j); (σ d_A)(j, c) += d_A(i, c)
        for r in 0..m {
            let x = b.d.get(r, j);
            if !x.is_zero() {
                sys.add_at(r * n + i, u, x);
            }
        }
        for c in 0..n {
            let x = a.d.get(i, c);
            if !x.is_zero() {
                sys.add_at(j * n + c, u, x);
            }
        }
    }
    let rhs: Vec<Scalar> = (0..m).flat_map(|r| (0..n).map(move |c| (r, c))).map(|(r, c)| target.get(r, c).clone()).collect();
    Ok(solve(&sys, &rhs).map(|x| {
        let mut sigma = Matrix::zeros(m, n);
        for (u, &(j, i)) in unknowns.iter().enumerate() {
            sigma.set(j, i, x[u].clone());
        }
        sigma
    }))
}
