//! Differential graded Lie algebras and their Maurer–Cartan theory: tensor
//! DGLAs `L ⊗ A`, the gauge action through the BCH product, tangent spaces
//! and lifting along small extensions.

mod bch;
mod dgla;
mod mc;
mod tensor;

pub use bch::{bch, bch_with_bound, MAX_BCH_LENGTH};
pub use dgla::{check_dgla_morphism, derivation_dgla, extended_dgla, sl2, Dgla};
pub use mc::{
    check_degree, def_tangent, gauge_act, gauge_equivalent, lift_through_surjection, lift_with, mc_check, mc_defect,
    mc_lift, stabilizer_element, GaugeMode, GaugeVerdict, KernelTensor, LiftResult, McCheck, StagedLift, Tangent,
};
pub use tensor::TensorDgla;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin_dg::{factor_into_small_extensions, SmallExtension};
    use crate::fixtures::*;
    use crate::graded_linear::{factorial, frac, int, one, vec_add, vec_sub, zero_vec, Matrix, Scalar};
    use proptest::prelude::*;

    fn abelian_line() -> Dgla {
        // K·p in degree 0, K·q in degree 1, dp = q.
        let space = crate::graded_linear::GradedSpace::new(vec![("p".into(), 0), ("q".into(), 1)]).unwrap();
        let mut d = Matrix::zeros(2, 2);
        d.set(1, 0, one());
        Dgla::abelian(&crate::graded_linear::Complex::new(space, d).unwrap())
    }

    #[test]
    fn classical_examples_validate() {
        for l in [sl2(), heisenberg(), upper_triangular(4), abelian_line()] {
            assert!(l.validate().is_valid(), "{:?}", l.validate().violations);
        }
        let der = derivation_dgla(&lifting_counterexample_algebra()).unwrap();
        assert!(der.validate().is_valid());
        assert!(extended_dgla(&abelian_line()).validate().is_valid());
    }

    #[test]
    fn broken_jacobi_is_reported() {
        let mut l = heisenberg();
        l.bracket.add(0, 2, 0, &one());
        l.bracket.add(2, 0, 0, &-one());
        assert!(!l.validate().is_valid());
    }

    #[test]
    fn jacobi_check_survives_huge_constants() {
        // Constants beyond i64 after clearing denominators.
        let big = Scalar::from_integer(num_bigint::BigInt::from(10u8).pow(30));
        let mut p = Matrix::identity(3);
        p.set(0, 0, big.clone());
        p.set(2, 2, one() / &big);
        let names = vec!["a".into(), "b".into(), "c".into()];
        let l = sl2().change_basis(&p, names).unwrap();
        assert!(l.validate().is_valid());
        let mut broken = l.clone();
        broken.bracket.add(0, 1, 0, &big);
        broken.bracket.add(1, 0, 0, &-big);
        let report = broken.validate();
        assert!(report.violations.iter().any(|v| v.axiom == "graded Jacobi"));
    }

    #[test]
    fn tensor_with_zero_product_algebra_is_abelian() {
        let (b, _) = lifting_counterexample_quotient();
        let t = TensorDgla::new(&sl2(), &b);
        assert!(t.dgla.is_abelian());
        assert_eq!(t.dim(), 6);
        let x = t.tensor_basis(&[int(1), int(2), int(3)], 0);
        assert!(mc_check(&t.dgla, &x).unwrap().is_mc);
    }

    #[test]
    fn mc_check_rejects_wrong_degree() {
        let t = TensorDgla::new(&sl2(), &truncated_line(2));
        assert!(mc_check(&t.dgla, &t.tensor_basis(&[one(), int(0), int(0)], 0)).is_err());
    }

    #[test]
    fn other_sl2_pairs_lift() {
        // a = e, b = f: c = −2e − h solves c + [a,c] + [a,b] = 0.
        let a = lifting_counterexample_algebra();
        let (b, p) = lifting_counterexample_quotient();
        let tb = TensorDgla::new(&sl2(), &b);
        let x = vec_add(&tb.tensor_basis(&[one(), int(0), int(0)], 0), &tb.tensor_basis(&[int(0), one(), int(0)], 1));
        match lift_through_surjection(&sl2(), &a, &b, &p, &x).unwrap() {
            StagedLift::Lifted { lift, .. } => {
                let ta = TensorDgla::new(&sl2(), &a);
                assert!(mc_check(&ta.dgla, &lift).unwrap().is_mc);
                assert_eq!(ta.algebra_map(&p).apply(&lift), x);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn counterexample_square_defect() {
        // x = e⊗u + f⊗v over A: ½[x,x] = [e,f]⊗uv = h⊗dw.
        let a = lifting_counterexample_algebra();
        let t = TensorDgla::new(&sl2(), &a);
        let x = vec_add(&t.tensor_basis(&[one(), int(0), int(0)], 0), &t.tensor_basis(&[int(0), one(), int(0)], 1));
        let r = mc_check(&t.dgla, &x).unwrap();
        assert!(!r.is_mc);
        assert_eq!(r.defect, t.tensor_basis(&[int(0), int(0), one()], 3));
    }

    #[test]
    fn abelian_gauge_subtracts_differential() {
        let l = abelian_line();
        let a = vec![int(3), int(0)];
        let x = vec![int(0), int(5)];
        assert_eq!(gauge_act(&l, &a, &x).unwrap(), vec![int(0), int(2)]);
    }

    #[test]
    fn tangent_of_sl2_is_adjoint() {
        let t = def_tangent(&sl2(), 0).unwrap();
        assert_eq!(t.dim, 3);
        assert_eq!(def_tangent(&abelian_line(), 0).unwrap().dim, 0);
        assert_eq!(def_tangent(&abelian_line(), 1).unwrap().dim, 0);
    }

    #[test]
    fn counterexample_does_not_lift() {
        // x = (−h/2)⊗u + e⊗v over B: c + [−h/2, c] = e has no solution.
        let a = lifting_counterexample_algebra();
        let (b, p) = lifting_counterexample_quotient();
        let tb = TensorDgla::new(&sl2(), &b);
        let x = vec_add(&tb.tensor_basis(&[int(0), int(0), frac(-1, 2)], 0), &tb.tensor_basis(&[one(), int(0), int(0)], 1));
        match lift_through_surjection(&sl2(), &a, &b, &p, &x).unwrap() {
            StagedLift::Obstructed { .. } => {}
            other => panic!("expected an obstruction, got {other:?}"),
        }
        // Abelian coefficients lift everything.
        let ab = Dgla::abelian(&crate::graded_linear::Complex::zero_differential(
            crate::graded_linear::GradedSpace::new(vec![("e".into(), 0)]).unwrap(),
        ));
        let tb = TensorDgla::new(&ab, &b);
        let x = tb.tensor_basis(&[one()], 0);
        assert!(matches!(
            lift_through_surjection(&ab, &a, &b, &p, &x).unwrap(),
            StagedLift::Lifted { complete: true, .. }
        ));
    }

    #[test]
    fn gauge_decides_zero_product_case() {
        // K·p in degree −1, K·q in degree 0, dp = q.
        let space = crate::graded_linear::GradedSpace::new(vec![("p".into(), -1), ("q".into(), 0)]).unwrap();
        let mut d = Matrix::zeros(2, 2);
        d.set(1, 0, one());
        let l = Dgla::abelian(&crate::graded_linear::Complex::new(space, d).unwrap());
        let (b, _) = lifting_counterexample_quotient();
        let t = TensorDgla::new(&l, &b);
        // q⊗u = d(p⊗u) is exact, so it is equivalent to 0.
        let x = t.tensor_basis(&[int(0), one()], 0);
        let z = zero_vec(t.dim());
        match gauge_equivalent(&t, &x, &z, &GaugeMode::Decide).unwrap() {
            GaugeVerdict::Yes(a) => assert_eq!(gauge_act(&t.dgla, &a, &x).unwrap(), z),
            v => panic!("{v:?}"),
        }
        let sl = TensorDgla::new(&sl2(), &b);
        let y = sl.tensor_basis(&[one(), int(0), int(0)], 0);
        let z = zero_vec(sl.dim());
        assert_eq!(gauge_equivalent(&sl, &y, &z, &GaugeMode::Decide).unwrap(), GaugeVerdict::No);
        assert_eq!(gauge_equivalent(&sl, &y, &z, &GaugeMode::Verify(z.clone())).unwrap(), GaugeVerdict::No);
    }

    fn mat_of(n: usize, v: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, v[k].clone());
                k += 1;
            }
        }
        m
    }

    fn exp_nil(m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut out = Matrix::identity(n);
        let mut p = Matrix::identity(n);
        for k in 1..n {
            p = p.mul(m);
            out = out.add(&p.scale(&(one() / factorial(k))));
        }
        out
    }

    fn log_unipotent(m: &Matrix) -> Matrix {
        let n = m.rows();
        let nil = m.sub(&Matrix::identity(n));
        let mut out = Matrix::zeros(n, n);
        let mut p = Matrix::identity(n);
        for k in 1..n {
            p = p.mul(&nil);
            let c = if k % 2 == 1 { frac(1, k as i64) } else { frac(-1, k as i64) };
            out = out.add(&p.scale(&c));
        }
        out
    }

    fn gen_case(seed: u64, max_dim: usize) -> (TestRng, TensorDgla) {
        let mut r = rng(seed);
        let l = random_dgla(&mut r, max_dim);
        let a = random_algebra(&mut r, 3);
        (r, TensorDgla::new(&l, &a))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn random_dglas_satisfy_axioms(seed in any::<u64>()) {
            let mut r = rng(seed);
            let l = random_dgla(&mut r, 8);
            prop_assert!(l.validate().is_valid());
            prop_assert!(extended_dgla(&l).validate().is_valid());
            let a = random_algebra(&mut r, 3);
            prop_assert!(TensorDgla::new(&l, &a).dgla.validate().is_valid());
        }

        #[test]
        fn bch_matches_matrix_logarithm(seed in any::<u64>()) {
            let mut r = rng(seed);
            let n = 4;
            let l = upper_triangular(n);
            let u = random_in_degree(&mut r, &l.space, 0);
            let w = random_in_degree(&mut r, &l.space, 0);
            let got = mat_of(n, &bch(&l, &u, &w).unwrap());
            let want = log_unipotent(&exp_nil(&mat_of(n, &u)).mul(&exp_nil(&mat_of(n, &w))));
            prop_assert_eq!(got, want);
        }

        #[test]
        fn gauge_preserves_mc_and_composes(seed in any::<u64>()) {
            let (mut r, t) = gen_case(seed, 6);
            let x = random_mc(&mut r, &t);
            prop_assert!(mc_check(&t.dgla, &x).unwrap().is_mc);
            let a = random_in_degree(&mut r, &t.dgla.space, 0);
            let b = random_in_degree(&mut r, &t.dgla.space, 0);
            let y = gauge_act(&t.dgla, &b, &x).unwrap();
            prop_assert!(mc_check(&t.dgla, &y).unwrap().is_mc);
            let lhs = gauge_act(&t.dgla, &a, &y).unwrap();
            let rhs = gauge_act(&t.dgla, &bch(&t.dgla, &a, &b).unwrap(), &x).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(gauge_act(&t.dgla, &zero_vec(t.dim()), &x).unwrap(), x.clone());
            // Stabilizer elements fix x.
            let c = random_in_degree(&mut r, &t.dgla.space, -1);
            let s = stabilizer_element(&t.dgla, &x, &c);
            prop_assert_eq!(gauge_act(&t.dgla, &s, &x).unwrap(), x);
        }

        #[test]
        fn gauge_is_conjugation_in_extended_algebra(seed in any::<u64>()) {
            let (mut r, t) = gen_case(seed, 6);
            let ext = extended_dgla(&t.dgla);
            let n = t.dim();
            let x = random_in_degree(&mut r, &t.dgla.space, 1);
            let a = random_in_degree(&mut r, &t.dgla.space, 0);
            let mut a_ext = a.clone();
            a_ext.push(int(0));
            let mut v = x.clone();
            v.push(one());
            let mut acc = v.clone();
            let mut term = v;
            for k in 1..=n + 2 {
                term = ext.br(&a_ext, &term);
                acc = vec_add(&acc, &crate::graded_linear::vec_scale(&(one() / factorial(k)), &term));
            }
            let mut delta = zero_vec(n + 1);
            delta[n] = one();
            let got = vec_sub(&acc, &delta);
            let mut want = gauge_act(&t.dgla, &a, &x).unwrap();
            want.push(int(0));
            prop_assert_eq!(got, want);
        }

        #[test]
        fn lifts_are_mc_and_canonical_ones_agree(seed in any::<u64>()) {
            let (mut r, t) = gen_case(seed, 6);
            let a = &t.algebra;
            let fac = factor_into_small_extensions(a, &crate::artin_dg::NilpotentDgAlgebra::zero(), &Matrix::zeros(0, a.dim())).unwrap();
            prop_assume!(!fac.steps.is_empty());
            let step: &SmallExtension = &fac.steps[0];
            let x = random_mc(&mut r, &t);
            let xq = t.algebra_map(&step.projection).apply(&x);
            match mc_lift(&t.lie, step, &xq).unwrap() {
                LiftResult::Lifted { lift, torsor } => {
                    prop_assert!(mc_check(&t.dgla, &lift).unwrap().is_mc);
                    prop_assert_eq!(t.algebra_map(&step.projection).apply(&lift), xq.clone());
                    for z in torsor {
                        prop_assert!(mc_check(&t.dgla, &vec_add(&lift, &z)).unwrap().is_mc);
                    }
                }
                LiftResult::Obstructed { .. } => prop_assert!(false, "x itself is a lift"),
            }
        }

        #[test]
        fn gauge_decision_finds_constructed_witnesses(seed in any::<u64>()) {
            let (mut r, t) = gen_case(seed, 6);
            let x = random_mc(&mut r, &t);
            let a = random_in_degree(&mut r, &t.dgla.space, 0);
            let y = gauge_act(&t.dgla, &a, &x).unwrap();
            match gauge_equivalent(&t, &x, &y, &GaugeMode::Decide).unwrap() {
                GaugeVerdict::Yes(g) => prop_assert_eq!(gauge_act(&t.dgla, &g, &x).unwrap(), y.clone()),
                GaugeVerdict::No => prop_assert!(false, "equivalent elements reported inequivalent"),
                GaugeVerdict::Unknown => {}
            }
            prop_assert_eq!(gauge_equivalent(&t, &x, &y, &GaugeMode::Verify(a.clone())).unwrap(), GaugeVerdict::Yes(a));
        }
    }
}
