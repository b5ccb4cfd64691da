//! Named example objects and seeded random generators shared by the test
//! suites and the command line.
//!
//! Random generators take an explicit RNG; `rng_from_env` seeds it from the
//! `DEFALG_SEED` environment variable when present.

use crate::artin_dg::{factor_into_small_extensions, FreeTruncated, NilpotentDgAlgebra, Polynomial};
use crate::dgla_mc::{derivation_dgla, gauge_act, lift_with, sl2, Dgla, LiftResult, TensorDgla};
use crate::graded_linear::{frac, int, one, vec_add, vec_scale, zero_vec, Bilinear, Complex, GradedSpace, Matrix, Scalar};
use crate::graded_linear::cohomology;
use crate::moduli_models::{change_generators, kuranishi_prorepresent, with_acyclic_pairs, QuasismoothTrunc};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub const SEED_VAR: &str = "DEFALG_SEED";

/// The seed in `DEFALG_SEED`, or `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}

pub fn rng_from_env(default: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed_from_env(default))
}

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn space(basis: &[(&str, i64)]) -> GradedSpace {
    GradedSpace::new(basis.iter().map(|(n, d)| (n.to_string(), *d)).collect()).expect("distinct names")
}

/// `A = Ku ⊕ Kv ⊕ Kw ⊕ K·dw`, generators in degree 1, `uv = uw = dw`,
/// `vw = 0`, `d(w) = dw`.
pub fn lifting_counterexample_algebra() -> NilpotentDgAlgebra {
    let s = space(&[("u", 1), ("v", 1), ("w", 1), ("dw", 2)]);
    let mut m = Bilinear::square(4);
    for &(a, b) in &[(0usize, 1usize), (0, 2)] {
        m.add(a, b, 3, &one());
        m.add(b, a, 3, &-one());
    }
    let mut d = Matrix::zeros(4, 4);
    d.set(3, 2, one());
    NilpotentDgAlgebra::new(s, m, d).expect("valid shape")
}

/// `B = Ku ⊕ Kv` with zero product, and the projection `A → B` from
/// [`lifting_counterexample_algebra`].
pub fn lifting_counterexample_quotient() -> (NilpotentDgAlgebra, Matrix) {
    let b = NilpotentDgAlgebra::trivial(&Complex::zero_differential(space(&[("u", 1), ("v", 1)])));
    let mut p = Matrix::zeros(2, 4);
    p.set(0, 0, one());
    p.set(1, 1, one());
    (b, p)
}

/// `(u, v)/(u², v²)` with `u, v` of degrees `−i, −j`: basis `u, v, uv`.
pub fn primary_algebra(i: i64, j: i64) -> NilpotentDgAlgebra {
    let s = space(&[("u", -i), ("v", -j), ("uv", -i - j)]);
    let mut m = Bilinear::square(3);
    m.add(0, 1, 2, &one());
    m.add(1, 0, 2, &crate::graded_linear::sign(i * j));
    NilpotentDgAlgebra::new(s, m, Matrix::zeros(3, 3)).expect("valid shape")
}

/// `span(t, …, t^n)` in degree 0 with `t^a t^b = t^{a+b}`.
pub fn truncated_line(n: usize) -> NilpotentDgAlgebra {
    let names: Vec<(String, i64)> = (1..=n).map(|k| (if k == 1 { "t".into() } else { format!("t{k}") }, 0)).collect();
    let s = GradedSpace::new(names).expect("distinct");
    let mut m = Bilinear::square(n);
    for a in 0..n {
        for b in 0..n {
            if a + b + 2 <= n {
                m.add(a, b, a + b + 1, &one());
            }
        }
    }
    NilpotentDgAlgebra::new(s, m, Matrix::zeros(n, n)).expect("valid shape")
}

pub fn small_int(rng: &mut TestRng, r: i64) -> Scalar {
    int(rng.gen_range(-r..=r))
}

/// A small rational, mostly integer.
pub fn small_scalar(rng: &mut TestRng) -> Scalar {
    if rng.gen_bool(0.2) {
        frac(rng.gen_range(-3..=3), rng.gen_range(1..=3))
    } else {
        small_int(rng, 2)
    }
}

/// Random degree-preserving automorphism of `space` with determinant ±1
/// blocks (unipotent lower times unipotent upper, then a permutation-free
/// sign flip).
pub fn random_graded_automorphism(rng: &mut TestRng, space: &GradedSpace) -> Matrix {
    let n = space.dim();
    let mut p = Matrix::identity(n);
    for k in space.occurring_degrees() {
        let idx = space.indices_in_degree(k);
        let m = idx.len();
        let mut lo = Matrix::identity(m);
        let mut up = Matrix::identity(m);
        for a in 0..m {
            for b in 0..m {
                if a > b {
                    lo.set(a, b, small_int(rng, 1));
                } else if a < b {
                    up.set(a, b, small_int(rng, 1));
                }
            }
        }
        let block = lo.mul(&up);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                p.set(i, j, block.get(a, b).clone());
            }
        }
    }
    p
}

/// Random degrees in `lo..=hi`.
pub fn random_degrees(rng: &mut TestRng, n: usize, lo: i64, hi: i64) -> Vec<i64> {
    let mut d: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    d.sort();
    d
}

/// Random complex of dimension `n`: a standard differential pairing some
/// basis vectors of adjacent degrees, conjugated by a graded automorphism.
pub fn random_complex(rng: &mut TestRng, n: usize, lo: i64, hi: i64) -> Complex {
    let degrees = random_degrees(rng, n, lo, hi);
    let space = GradedSpace::anonymous("c", &degrees);
    let mut d = Matrix::zeros(n, n);
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] || !rng.gen_bool(0.6) {
            continue;
        }
        if let Some(j) = (0..n).find(|&j| !used[j] && j != i && degrees[j] == degrees[i] + 1) {
            d.set(j, i, one());
            used[i] = true;
            used[j] = true;
        }
    }
    let p = random_graded_automorphism(rng, &space);
    let pinv = p.inverse().expect("automorphism");
    Complex::new(space, p.mul(&d).mul(&pinv)).expect("conjugate of a square-zero map")
}

/// Truncated free algebra on generators `x_i` (and `dx_i` for the paired
/// ones) with linear differential `x_i ↦ dx_i`.
pub fn random_free_algebra(rng: &mut TestRng, max_dim: usize) -> NilpotentDgAlgebra {
    loop {
        let paired = rng.gen_range(0..=1usize);
        let closed = rng.gen_range(if paired == 0 { 1 } else { 0 }..=2usize);
        let order = rng.gen_range(2..=3usize);
        let mut basis = Vec::new();
        let mut d: Vec<Polynomial> = Vec::new();
        for p in 0..paired {
            let k = rng.gen_range(0..=1i64);
            basis.push((format!("x{p}"), k));
            basis.push((format!("dx{p}"), k + 1));
            let idx = basis.len() - 1;
            d.push(vec![(vec![idx], one())]);
            d.push(vec![]);
        }
        for c in 0..closed {
            basis.push((format!("y{c}"), rng.gen_range(0..=2i64)));
            d.push(vec![]);
        }
        let gens = GradedSpace::new(basis).expect("distinct");
        let free = FreeTruncated::new(&gens, &d, order).expect("valid construction");
        if free.algebra.dim() <= max_dim && free.algebra.dim() > 0 {
            return free.algebra;
        }
    }
}

/// Random object of the base category with dimension at most `max_dim`:
/// a truncated free algebra, a trivial-product complex or a quotient of a
/// line, expressed in a random homogeneous basis.
pub fn random_algebra(rng: &mut TestRng, max_dim: usize) -> NilpotentDgAlgebra {
    let raw = match rng.gen_range(0..3) {
        0 => random_free_algebra(rng, max_dim),
        1 => {
            let n = rng.gen_range(1..=max_dim.min(5));
            NilpotentDgAlgebra::trivial(&random_complex(rng, n, 0, 2))
        }
        _ => truncated_line(rng.gen_range(1..=max_dim.min(4))),
    };
    let p = random_graded_automorphism(rng, &raw.space);
    let names = (0..raw.dim()).map(|i| format!("a{i}")).collect();
    raw.change_basis(&p, names).expect("automorphism")
}

/// Heisenberg algebra `[x, y] = z` in degree 0.
pub fn heisenberg() -> Dgla {
    let s = space(&[("x", 0), ("y", 0), ("z", 0)]);
    let mut b = Bilinear::square(3);
    b.add(0, 1, 2, &one());
    b.add(1, 0, 2, &-one());
    Dgla::new(s, b, Matrix::zeros(3, 3)).expect("shape")
}

/// Strictly upper triangular `n×n` matrices under the commutator, basis
/// `E_ij` (`i < j`) in lexicographic order.
pub fn upper_triangular(n: usize) -> Dgla {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let s = GradedSpace::new(pairs.iter().map(|(i, j)| (format!("E{i}{j}"), 0)).collect()).expect("distinct");
    let at = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j));
    let mut b = Bilinear::square(pairs.len());
    for (u, &(i, j)) in pairs.iter().enumerate() {
        for (v, &(k, l)) in pairs.iter().enumerate() {
            if j == k {
                b.add(u, v, at(i, l).expect("upper"), &one());
            }
            if l == i {
                b.add(u, v, at(k, j).expect("upper"), &-one());
            }
        }
    }
    Dgla::new(s, b, Matrix::zeros(pairs.len(), pairs.len())).expect("shape")
}

/// `End(V)` of a complex with the graded commutator and `[d, −]`.
pub fn endomorphism_dgla(c: &Complex) -> Dgla {
    derivation_dgla(&NilpotentDgAlgebra::trivial(c)).expect("linear maps form a DGLA")
}

/// Random DGLA of dimension at most `max_dim` (at least 3): abelian,
/// classical, endomorphisms of a complex, derivations or `g ⊗ A`, in a
/// random homogeneous basis.
pub fn random_dgla(rng: &mut TestRng, max_dim: usize) -> Dgla {
    let max_dim = max_dim.max(3);
    let raw = loop {
        let l = match rng.gen_range(0..7) {
            0 => {
                let n = rng.gen_range(1..=max_dim.min(5));
                Dgla::abelian(&random_complex(rng, n, -1, 2))
            }
            1 => sl2(),
            2 => heisenberg(),
            3 => upper_triangular(3),
            4 => {
                let n = rng.gen_range(1..=2);
                endomorphism_dgla(&random_complex(rng, n, 0, 1))
            }
            5 => match derivation_dgla(&random_algebra(rng, 3)) {
                Ok(l) => l,
                Err(_) => continue,
            },
            _ => {
                let g = [heisenberg(), sl2(), Dgla::abelian(&random_complex(rng, 2, 0, 1))][rng.gen_range(0..3)].clone();
                TensorDgla::new(&g, &random_algebra(rng, 2)).dgla
            }
        };
        if l.dim() > 0 && l.dim() <= max_dim {
            break l;
        }
    };
    let p = random_graded_automorphism(rng, &raw.space);
    let names = (0..raw.dim()).map(|i| format!("l{i}")).collect();
    raw.change_basis(&p, names).expect("automorphism")
}

/// Random element supported in degree `deg`.
pub fn random_in_degree(rng: &mut TestRng, space: &GradedSpace, deg: i64) -> Vec<Scalar> {
    (0..space.dim())
        .map(|i| if space.degree(i) == deg { small_scalar(rng) } else { Scalar::from_integer(0.into()) })
        .collect()
}

/// Random Maurer–Cartan element of `L ⊗ A`, built by lifting through a
/// tower of small extensions with random torsor choices, then moved by a
/// random gauge transformation.
pub fn random_mc(rng: &mut TestRng, t: &TensorDgla) -> Vec<Scalar> {
    let a = &t.algebra;
    let fac = factor_into_small_extensions(a, &NilpotentDgAlgebra::zero(), &Matrix::zeros(0, a.dim()))
        .expect("every algebra maps onto zero");
    let mut x = zero_vec(t.dim());
    'attempt: for _ in 0..8 {
        let mut base: Vec<Scalar> = Vec::new();
        for step in fac.steps.iter().rev() {
            let tq = TensorDgla::new(&t.lie, &step.quotient);
            let ta = TensorDgla::new(&t.lie, &step.algebra);
            let y = tq.algebra_map(&step.section).apply(&base);
            match lift_with(&t.lie, step, &ta, &y) {
                Ok(LiftResult::Lifted { lift, torsor }) => {
                    base = lift;
                    for z in torsor {
                        if rng.gen_bool(0.5) {
                            base = vec_add(&base, &vec_scale(&small_scalar(rng), &z));
                        }
                    }
                }
                _ => continue 'attempt,
            }
        }
        if !fac.steps.is_empty() {
            x = base;
        }
        break;
    }
    let g = random_in_degree(rng, &t.dgla.space, 0);
    gauge_act(&t.dgla, &g, &x).unwrap_or(x)
}

/// A minimal algebra from a random DGLA, tensored with acyclic pairs and
/// twisted by a random filtration-preserving change of generators.
pub fn random_quasismooth(rng: &mut TestRng, order: usize, max_generators: usize) -> QuasismoothTrunc {
    let s = loop {
        let l = random_dgla(rng, 4);
        let c = cohomology(&l.complex()).expect("valid construction").contraction;
        let h = c.harmonic.dim();
        if h >= 2 && h + 2 <= max_generators {
            break kuranishi_prorepresent(&l, &c, order).expect("valid construction").base;
        }
    };
    let pairs: Vec<i64> = (0..rng.gen_range(1..=((max_generators - s.num_generators()) / 2).max(1)))
        .map(|_| rng.gen_range(-1..=1))
        .collect();
    let r = with_acyclic_pairs(&s, &pairs).expect("valid construction");
    random_change(rng, &r).0
}

/// `r` in new generators: a random graded automorphism of `V` plus random
/// quadratic terms. Also returns the isomorphism from the new algebra to `r`.
pub fn random_change(rng: &mut TestRng, r: &QuasismoothTrunc) -> (QuasismoothTrunc, Matrix) {
    let n = r.num_generators();
    let p = random_graded_automorphism(rng, &r.generators);
    let quadratic = r.free().of_length(2);
    let elements: Vec<Vec<Scalar>> = (0..n)
        .map(|g| {
            let mut v = vec![Scalar::zero(); r.dim()];
            for i in 0..n {
                v[r.generator_index(i)] = p.get(i, g).clone();
            }
            for &q in &quadratic {
                if r.algebra().degree(q) == r.generators.degree(g) && rng.gen_bool(0.5) {
                    v[q] = small_int(rng, 2);
                }
            }
            v
        })
        .collect();
    let names = GradedSpace::new((0..n).map(|g| (format!("y{g}"), r.generators.degree(g))).collect()).expect("valid construction");
    change_generators(r, &names, &elements).expect("valid construction")
}
