//! Maurer–Cartan elements, the gauge action, tangent spaces, lifting
//! through small extensions and gauge-equivalence decisions.

use super::dgla::Dgla;
use super::tensor::TensorDgla;
use crate::artin_dg::{factor_into_small_extensions, graded_kernel, NilpotentDgAlgebra, SmallExtension};
use crate::error::{Error, Result};
use crate::graded_linear::{
    cohomology, factorial, frac, inverse, is_zero_vec, solve, vec_add, vec_scale, vec_sub, zero_vec, Cohomology, Matrix,
    Scalar,
};
use num_traits::Zero;

/// Rejects vectors with a nonzero coordinate outside degree `deg`.
pub fn check_degree(l: &Dgla, v: &[Scalar], deg: i64) -> Result<()> {
    if v.len() != l.dim() {
        return Err(Error::Shape(format!("expected {} coordinates, got {}", l.dim(), v.len())));
    }
    if let Some(i) = (0..v.len()).find(|&i| !v[i].is_zero() && l.degree(i) != deg) {
        return Err(Error::Degree(format!(
            "component {} has degree {}, expected {deg}",
            l.space.name(i),
            l.degree(i)
        )));
    }
    Ok(())
}

/// `dx + ½[x,x]`.
pub fn mc_defect(l: &Dgla, x: &[Scalar]) -> Vec<Scalar> {
    vec_add(&l.diff(x), &vec_scale(&frac(1, 2), &l.br(x, x)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McCheck {
    pub is_mc: bool,
    pub defect: Vec<Scalar>,
}

pub fn mc_check(l: &Dgla, x: &[Scalar]) -> Result<McCheck> {
    check_degree(l, x, 1)?;
    let defect = mc_defect(l, x);
    Ok(McCheck {
        is_mc: is_zero_vec(&defect),
        defect,
    })
}

/// `e^a·x = Σ_n ad_a^n(x)/n! + Σ_{n≥1} ad_a^{n−1}(−da)/n!`, i.e.
/// `exp(ad_a)(x + d) − d` in the extended algebra.
pub fn gauge_act(l: &Dgla, a: &[Scalar], x: &[Scalar]) -> Result<Vec<Scalar>> {
    check_degree(l, a, 0)?;
    check_degree(l, x, 1)?;
    let mut out = x.to_vec();
    let mut ad_x = x.to_vec();
    let mut ad_da = vec_scale(&-Scalar::from_integer(1.into()), &l.diff(a));
    let limit = l.dim() + 2;
    for n in 1..=limit {
        ad_x = l.br(a, &ad_x);
        let inv = Scalar::from_integer(1.into()) / factorial(n);
        out = vec_add(&out, &vec_scale(&inv, &vec_add(&ad_x, &ad_da)));
        ad_da = l.br(a, &ad_da);
        if is_zero_vec(&ad_x) && is_zero_vec(&ad_da) {
            return Ok(out);
        }
    }
    Err(Error::NotNilpotent("ad_a is not nilpotent".into()))
}

/// `[b, c] + dc`, an element of the Lie algebra stabilizing `b`.
pub fn stabilizer_element(l: &Dgla, b: &[Scalar], c: &[Scalar]) -> Vec<Scalar> {
    vec_add(&l.br(b, c), &l.diff(c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tangent {
    pub degree: i64,
    pub dim: usize,
    /// Harmonic cocycle representatives in `L`.
    pub representatives: Vec<Vec<Scalar>>,
}

/// `T^i Def_L = H^i(L)` with harmonic representatives.
pub fn def_tangent(l: &Dgla, i: i64) -> Result<Tangent> {
    let h = cohomology(&l.complex())?;
    let c = &h.contraction;
    let representatives: Vec<Vec<Scalar>> = (0..c.harmonic.dim())
        .filter(|&k| c.harmonic.degree(k) == i)
        .map(|k| c.inclusion.col(k))
        .collect();
    Ok(Tangent {
        degree: i,
        dim: h.dim(i),
        representatives,
    })
}

/// `L ⊗ I` for the kernel of a small extension, with its inclusion into
/// `L ⊗ A` and a contraction.
#[derive(Clone, Debug)]
pub struct KernelTensor {
    pub tensor: TensorDgla,
    /// `L⊗I → L⊗A`.
    pub inclusion: Matrix,
    pub cohomology: Cohomology,
}

impl KernelTensor {
    pub fn new(lie: &Dgla, ext: &SmallExtension) -> Result<Self> {
        let kernel = NilpotentDgAlgebra::trivial(&ext.kernel_complex);
        let tensor = TensorDgla::new(lie, &kernel);
        let inclusion = tensor.algebra_map(&ext.inclusion());
        let cohomology = cohomology(&tensor.dgla.complex())?;
        Ok(KernelTensor {
            tensor,
            inclusion,
            cohomology,
        })
    }

    /// Coordinates in `L⊗I` of an element of `L⊗A` known to lie there.
    pub fn restrict(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        solve(&self.inclusion, v).ok_or_else(|| Error::Invalid("element does not lie in L⊗I".into()))
    }

    pub fn class_of(&self, v_i: &[Scalar]) -> Vec<Scalar> {
        self.cohomology.contraction.class_of(v_i)
    }

    /// Basis of `Z^k(L⊗I)`.
    pub fn cocycles(&self, k: i64) -> Vec<Vec<Scalar>> {
        let sp = &self.tensor.dgla.space;
        graded_kernel(sp, sp, &self.tensor.dgla.d, 1)
            .into_iter()
            .filter(|v| crate::artin_dg::vector_degree(sp, v) == Some(k))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftResult {
    /// A lift over `A`; all lifts are `lift + incl(z)` for `z ∈ Z¹(L⊗I)`,
    /// whose images in `L⊗A` are listed in `torsor`.
    Lifted { lift: Vec<Scalar>, torsor: Vec<Vec<Scalar>> },
    /// Nonzero class of the defect in `H²(L⊗I)`.
    Obstructed {
        class: Vec<Scalar>,
        representative: Vec<Scalar>,
    },
}

/// Lifts an MC element over `B` through a small extension `A → B`.
pub fn mc_lift(lie: &Dgla, ext: &SmallExtension, x: &[Scalar]) -> Result<LiftResult> {
    let tb = TensorDgla::new(lie, &ext.quotient);
    if !mc_check(&tb.dgla, x)?.is_mc {
        return Err(Error::Invalid("element is not Maurer–Cartan over the base".into()));
    }
    let ta = TensorDgla::new(lie, &ext.algebra);
    let y = tb.algebra_map(&ext.section).apply(x);
    lift_with(lie, ext, &ta, &y)
}

/// Lifting step for a chosen set-theoretic lift `y` of an MC element.
pub fn lift_with(lie: &Dgla, ext: &SmallExtension, ta: &TensorDgla, y: &[Scalar]) -> Result<LiftResult> {
    let kt = KernelTensor::new(lie, ext)?;
    let h = mc_defect(&ta.dgla, y);
    let h_i = kt.restrict(&h)?;
    if !is_zero_vec(&kt.tensor.dgla.diff(&h_i)) {
        return Err(Error::Invalid("defect is not a cocycle".into()));
    }
    let class = kt.class_of(&h_i);
    if !is_zero_vec(&class) {
        return Ok(LiftResult::Obstructed {
            class,
            representative: h_i,
        });
    }
    let s = kt.cohomology.contraction.sigma.apply(&h_i);
    let lift = vec_sub(y, &kt.inclusion.apply(&s));
    debug_assert!(is_zero_vec(&mc_defect(&ta.dgla, &lift)));
    let torsor = kt.cocycles(1).iter().map(|z| kt.inclusion.apply(z)).collect();
    Ok(LiftResult::Lifted { lift, torsor })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StagedLift {
    /// `complete` records whether every stage was decided exactly.
    Lifted { lift: Vec<Scalar>, complete: bool },
    /// No MC element over `A` maps to `x`; the defect of the canonical lift
    /// at the failing stage is recorded with its class.
    Obstructed {
        stage: usize,
        class: Vec<Scalar>,
        representative: Vec<Scalar>,
    },
    Unknown { stage: usize },
}

/// Lifts an MC element along a surjection `f: A → B` by factoring it into
/// small extensions and tracking the affine family of all lifts while the
/// quadratic part of the defect vanishes on it.
pub fn lift_through_surjection(
    lie: &Dgla,
    a: &NilpotentDgAlgebra,
    b: &NilpotentDgAlgebra,
    f: &Matrix,
    x: &[Scalar],
) -> Result<StagedLift> {
    let tb = TensorDgla::new(lie, b);
    if !mc_check(&tb.dgla, x)?.is_mc {
        return Err(Error::Invalid("element is not Maurer–Cartan over the base".into()));
    }
    let fac = factor_into_small_extensions(a, b, f)?;
    let last = fac.steps.last().map(|s| s.quotient.clone()).unwrap_or_else(|| a.clone());
    let back = inverse(&fac.to_target).unwrap_or_else(|| Matrix::zeros(0, 0));
    let mut base = TensorDgla::new(lie, b).algebra_map(&back).apply(x);
    if last.dim() == 0 {
        base = Vec::new();
    }
    let mut dirs: Vec<Vec<Scalar>> = Vec::new();
    let mut complete = true;
    for k in (0..fac.steps.len()).rev() {
        let step = &fac.steps[k];
        let tq = TensorDgla::new(lie, &step.quotient);
        let ta = TensorDgla::new(lie, &step.algebra);
        let kt = KernelTensor::new(lie, step)?;
        let sec = tq.algebra_map(&step.section);
        let sy0 = sec.apply(&base);
        let sz: Vec<Vec<Scalar>> = dirs.iter().map(|z| sec.apply(z)).collect();
        let h0 = mc_defect(&ta.dgla, &sy0);
        let lin: Vec<Vec<Scalar>> = sz
            .iter()
            .map(|z| vec_add(&ta.dgla.diff(z), &ta.dgla.br(&sy0, z)))
            .collect();
        let quadratic_vanishes = sz
            .iter()
            .all(|z| sz.iter().all(|w| is_zero_vec(&ta.dgla.br(z, w))));
        let deg1: Vec<usize> = kt.tensor.dgla.space.indices_in_degree(1);
        let d_incl: Vec<Vec<Scalar>> = deg1
            .iter()
            .map(|&j| kt.inclusion.apply(&kt.tensor.dgla.d.col(j)))
            .collect();
        let use_family = quadratic_vanishes && !sz.is_empty();
        let nc = if use_family { sz.len() } else { 0 };
        // Unknowns (c, t): Σ c_j lin_j − incl(d t) = −h0.
        let mut cols: Vec<Vec<Scalar>> = lin[..nc].to_vec();
        cols.extend(d_incl.iter().map(|v| vec_scale(&-Scalar::from_integer(1.into()), v)));
        let sys = Matrix::from_cols(&cols, ta.dim());
        let rhs = vec_scale(&-Scalar::from_integer(1.into()), &h0);
        let assemble = |sol: &[Scalar]| -> Vec<Scalar> {
            let mut y = sy0.clone();
            for j in 0..nc {
                y = vec_add(&y, &vec_scale(&sol[j], &sz[j]));
            }
            let mut t = zero_vec(kt.tensor.dim());
            for (u, &j) in deg1.iter().enumerate() {
                t[j] = sol[nc + u].clone();
            }
            vec_sub(&y, &kt.inclusion.apply(&t))
        };
        match solve(&sys, &rhs) {
            Some(sol) => {
                if !quadratic_vanishes {
                    complete = false;
                }
                base = assemble(&sol);
                let kernel = sys.kernel();
                dirs = kernel
                    .iter()
                    .map(|v| {
                        let y = (0..nc).fold(zero_vec(ta.dim()), |acc, j| vec_add(&acc, &vec_scale(&v[j], &sz[j])));
                        let mut t = zero_vec(kt.tensor.dim());
                        for (u, &j) in deg1.iter().enumerate() {
                            t[j] = v[nc + u].clone();
                        }
                        vec_sub(&y, &kt.inclusion.apply(&t))
                    })
                    .collect();
                if !complete {
                    // Only the torsor directions of this stage are certain.
                    dirs = kt.cocycles(1).iter().map(|z| kt.inclusion.apply(z)).collect();
                }
            }
            None => {
                if complete && quadratic_vanishes {
                    let h_i = kt.restrict(&h0)?;
                    return Ok(StagedLift::Obstructed {
                        stage: k,
                        class: kt.class_of(&h_i),
                        representative: h_i,
                    });
                }
                return Ok(StagedLift::Unknown { stage: k });
            }
        }
    }
    let ta = TensorDgla::new(lie, a);
    debug_assert!(is_zero_vec(&mc_defect(&ta.dgla, &base)));
    Ok(StagedLift::Lifted { lift: base, complete })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaugeMode {
    /// Check a proposed witness `a`.
    Verify(Vec<Scalar>),
    Decide,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaugeVerdict {
    Yes(Vec<Scalar>),
    /// In verify mode: the witness does not carry `x` to `y`.
    No,
    Unknown,
}

/// Decides or verifies `e^a x = y` in `L ⊗ A`.
pub fn gauge_equivalent(t: &TensorDgla, x: &[Scalar], y: &[Scalar], mode: &GaugeMode) -> Result<GaugeVerdict> {
    let l = &t.dgla;
    check_degree(l, x, 1)?;
    check_degree(l, y, 1)?;
    match mode {
        GaugeMode::Verify(a) => Ok(if gauge_act(l, a, x)? == y {
            GaugeVerdict::Yes(a.clone())
        } else {
            GaugeVerdict::No
        }),
        GaugeMode::Decide => {
            // Abelian tensor DGLA: e^a x = x − da.
            if t.algebra.has_trivial_product() || t.lie.is_abelian() {
                return Ok(match exact_primitive(l, &vec_sub(x, y)) {
                    Some(a) => GaugeVerdict::Yes(a),
                    None => GaugeVerdict::No,
                });
            }
            let a = &t.algebra;
            let fac = factor_into_small_extensions(a, &NilpotentDgAlgebra::zero(), &Matrix::zeros(0, a.dim()))?;
            let m = fac.steps.len();
            let mut g: Vec<Scalar> = Vec::new();
            for k in (0..m).rev() {
                let step = &fac.steps[k];
                let tk = TensorDgla::new(&t.lie, &step.algebra);
                let tq = TensorDgla::new(&t.lie, &step.quotient);
                let proj = t.algebra_map(&fac.projection_to(k));
                let (xk, yk) = (proj.apply(x), proj.apply(y));
                let lifted = tq.algebra_map(&step.section).apply(&g);
                let r = vec_sub(&yk, &gauge_act(&tk.dgla, &lifted, &xk)?);
                // e^{a'+c} x = e^{a'} x − dc for central c ∈ L⊗J.
                let kt = KernelTensor::new(&t.lie, step)?;
                let deg0 = kt.tensor.dgla.space.indices_in_degree(0);
                let cols: Vec<Vec<Scalar>> = deg0
                    .iter()
                    .map(|&j| kt.inclusion.apply(&kt.tensor.dgla.d.col(j)))
                    .collect();
                let sys = Matrix::from_cols(&cols, tk.dim());
                match solve(&sys, &vec_scale(&-Scalar::from_integer(1.into()), &r)) {
                    Some(sol) => {
                        let mut c = zero_vec(kt.tensor.dim());
                        for (u, &j) in deg0.iter().enumerate() {
                            c[j] = sol[u].clone();
                        }
                        g = vec_add(&lifted, &kt.inclusion.apply(&c));
                    }
                    None if k + 1 == m => return Ok(GaugeVerdict::No),
                    None => return Ok(GaugeVerdict::Unknown),
                }
            }
            if m == 0 {
                return Ok(GaugeVerdict::Yes(Vec::new()));
            }
            debug_assert_eq!(gauge_act(l, &g, x)?, y);
            Ok(GaugeVerdict::Yes(g))
        }
    }
}

/// Some `a ∈ L⁰` with `da = v`, if any.
fn exact_primitive(l: &Dgla, v: &[Scalar]) -> Option<Vec<Scalar>> {
    let deg0 = l.space.indices_in_degree(0);
    let cols: Vec<Vec<Scalar>> = deg0.iter().map(|&j| l.d.col(j)).collect();
    let sys = Matrix::from_cols(&cols, l.dim());
    solve(&sys, v).map(|sol| {
        let mut a = zero_vec(l.dim());
        for (u, &j) in deg0.iter().enumerate() {
            a[j] = sol[u].clone();
        }
        a
    })
}
