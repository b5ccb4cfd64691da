//! L∞ algebras as square-zero coderivations of truncated symmetric
//! coalgebras, with the dictionary to DGLAs and the MC equation over
//! nilpotent dg-algebras.

mod coalgebra;
mod structure;

pub use coalgebra::{Coalgebra, DualCoalgebra, Sparse, SparsePairs, SymCoalgebra};
pub use structure::{
    coalgebra_morphism_from_linear, dgla_to_linfty, element_as_linear_map, is_coalgebra_morphism, linfty_mc_check,
    linfty_to_dgla, shift_element, JacobiDefect, LInftyMc, LInftyReport, LInftyStructure,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin_dg::{fiber_product, NilpotentDgAlgebra};
    use crate::dgla_mc::{mc_check, sl2, TensorDgla};
    use crate::fixtures::*;
    use crate::graded_linear::{one, zero_vec, GradedSpace, Matrix, Scalar};
    use num_traits::Zero;
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn coproduct_of_letters_and_pairs() {
        let v = GradedSpace::new(vec![("a".into(), 0), ("b".into(), 2)]).unwrap();
        let c = SymCoalgebra::new(&v, 3);
        for i in c.of_length(1) {
            assert!(c.coproduct(i).is_empty());
        }
        // a[1], b[1] are odd: Δ(a⊙b) = a⊗b − b⊗a.
        let ab = c.index_of(&[0, 1]).unwrap();
        let (a, b) = (c.index_of(&[0]).unwrap(), c.index_of(&[1]).unwrap());
        let want = SparsePairs::from([((a, b), one()), ((b, a), -one())]);
        assert_eq!(c.coproduct(ab), &want);
    }

    #[test]
    fn zero_structure_is_valid_and_q_vanishes() {
        let v = GradedSpace::anonymous("v", &[-1, 0, 1]);
        let s = LInftyStructure::zero(&v, 3);
        assert!(s.check().is_valid());
        assert!(s.coderivation_matrix().is_zero());
        assert!(s.is_minimal());
    }

    #[test]
    fn wrong_degree_taylor_rejected() {
        let v = GradedSpace::anonymous("v", &[0, 0]);
        let mut q1 = Matrix::zeros(2, 2);
        q1.set(0, 1, one());
        assert!(LInftyStructure::new(&v, 2, vec![q1]).is_err());
    }

    #[test]
    fn sl2_structure_is_minimal_and_mutation_hits_arity_three() {
        let s = dgla_to_linfty(&sl2(), 3);
        assert!(s.is_minimal());
        assert!(s.check().is_valid());
        let mut bad = s.clone();
        // Perturb the coefficient of e in Q¹₂(e⊙h) (degrees allow it).
        let col = bad.coalgebra.of_length(2).iter().position(|&i| bad.coalgebra.monomials[i] == vec![0, 2]).unwrap();
        let old = bad.taylor[1].get(0, col).clone();
        bad.taylor[1].set(0, col, old + one());
        let report = bad.check();
        assert_eq!(report.arities(), vec![3]);
        assert!(!linfty_to_dgla(&bad).unwrap().validate().is_valid());
    }

    #[test]
    fn abelian_dgla_has_no_quadratic_part() {
        let l = crate::dgla_mc::Dgla::abelian(&random_complex(&mut rng(3), 4, 0, 2));
        assert!(dgla_to_linfty(&l, 3).taylor[1].is_zero());
    }

    #[test]
    fn dual_of_primary_algebra() {
        for (i, j) in [(-1, -1), (0, -1), (1, 2)] {
            let a = primary_algebra(i, j);
            let d = DualCoalgebra::new(&a);
            assert_eq!(d.coalgebra.dim(), 3);
            let want = SparsePairs::from([((0, 1), one()), ((1, 0), crate::graded_linear::sign(i * j))]);
            assert_eq!(d.coalgebra.coproduct[2], want);
            assert!(d.coalgebra.coproduct[0].is_empty());
            assert_eq!(d.to_algebra().unwrap(), a);
        }
        let trivial = NilpotentDgAlgebra::trivial(&random_complex(&mut rng(1), 3, 0, 1));
        assert!(DualCoalgebra::new(&trivial).coalgebra.coproduct.iter().all(|c| c.is_empty()));
    }

    #[test]
    fn theta_of_zero_and_of_primitive_coalgebras() {
        let a = NilpotentDgAlgebra::trivial(&random_complex(&mut rng(2), 3, 0, 1));
        let c = DualCoalgebra::new(&a).coalgebra;
        let v = c.space.shift(-1);
        let target = SymCoalgebra::new(&v, 3);
        let zero = Matrix::zeros(v.dim(), c.dim());
        assert!(coalgebra_morphism_from_linear(&c, &target, &zero).unwrap().is_zero());
        // Δ = 0: θ = m.
        let m = Matrix::identity(c.dim());
        let theta = coalgebra_morphism_from_linear(&c, &target, &m).unwrap();
        for col in 0..c.dim() {
            let mut want = zero_vec(target.dim());
            want[target.index_of(&[col]).unwrap()] = one();
            assert_eq!(theta.col(col), want);
        }
    }

    #[test]
    fn fiber_products_dualize_to_pushouts() {
        let mut r = rng(11);
        for _ in 0..10 {
            let a = random_algebra(&mut r, 4);
            let b = random_algebra(&mut r, 4);
            let c = NilpotentDgAlgebra::zero();
            let fp = fiber_product(&a, &b, &c, &Matrix::zeros(0, a.dim()), &Matrix::zeros(0, b.dim())).unwrap();
            let dual = DualCoalgebra::new(&fp.algebra);
            assert_eq!(dual.coalgebra.dim(), a.dim() + b.dim() - c.dim());
            assert!(dual.coalgebra.coassociativity_failures().is_empty());
        }
    }

    fn random_structure(r: &mut TestRng, dim: usize, order: usize) -> LInftyStructure {
        let degrees = random_degrees(r, dim, -1, 2);
        let v = GradedSpace::anonymous("v", &degrees);
        let c = SymCoalgebra::new(&v, order);
        let taylor = (1..=order)
            .map(|k| {
                let cols = c.of_length(k);
                let mut m = Matrix::zeros(dim, cols.len());
                for (j, &col) in cols.iter().enumerate() {
                    for row in 0..dim {
                        if c.shifted.degree(row) == c.degree(col) + 1 && r.gen_bool(0.5) {
                            m.set(row, j, small_int(r, 2));
                        }
                    }
                }
                m
            })
            .collect();
        LInftyStructure::new(&v, order, taylor).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]

        #[test]
        fn symmetric_coalgebra_axioms(seed in any::<u64>()) {
            let mut r = rng(seed);
            let n = r.gen_range(1..=3);
            let v = GradedSpace::anonymous("v", &random_degrees(&mut r, n, -1, 2));
            let c = SymCoalgebra::new(&v, 4);
            prop_assert!(c.coalgebra.coassociativity_failures().is_empty());
            prop_assert!(c.coalgebra.cocommutativity_failures().is_empty());
        }

        #[test]
        fn coderivations_are_coderivations(seed in any::<u64>()) {
            let mut r = rng(seed);
            let s = random_structure(&mut r, 3, 3);
            prop_assert!(s.coleibniz_holds());
            // Q never raises word length.
            let q = s.coderivation_matrix();
            for col in 0..s.coalgebra.dim() {
                for row in 0..s.coalgebra.dim() {
                    if !q.get(row, col).is_zero() {
                        prop_assert!(s.coalgebra.monomials[row].len() <= s.coalgebra.monomials[col].len());
                    }
                }
            }
        }

        #[test]
        fn linear_part_squares_to_zero_iff_differential(seed in any::<u64>()) {
            let mut r = rng(seed);
            let dim = r.gen_range(1..=4);
            let degrees = random_degrees(&mut r, dim, 0, 2);
            let v = GradedSpace::anonymous("v", &degrees);
            let mut q1 = Matrix::zeros(dim, dim);
            for i in 0..dim {
                for j in 0..dim {
                    if degrees[i] == degrees[j] + 1 && r.gen_bool(0.5) {
                        q1.set(i, j, small_int(&mut r, 1));
                    }
                }
            }
            let squares = q1.mul(&q1).is_zero();
            let s = LInftyStructure::new(&v, 3, vec![q1]).unwrap();
            prop_assert_eq!(s.check().is_valid(), squares);
        }

        #[test]
        fn dictionary_matches_dgla_axioms(seed in any::<u64>()) {
            let mut r = rng(seed);
            let l = random_dgla(&mut r, 6);
            let s = dgla_to_linfty(&l, 3);
            prop_assert!(s.check().is_valid());
            prop_assert_eq!(linfty_to_dgla(&s).unwrap(), l.clone());
            // Mutate one admissible constant of Q¹₁ or Q¹₂.
            let mut bad = s.clone();
            let k = r.gen_range(0..2usize);
            let cols = bad.coalgebra.of_length(k + 1);
            let spots: Vec<(usize, usize)> = (0..l.dim())
                .flat_map(|row| (0..cols.len()).map(move |j| (row, j)))
                .filter(|&(row, j)| bad.coalgebra.shifted.degree(row) == bad.coalgebra.degree(cols[j]) + 1)
                .collect();
            prop_assume!(!spots.is_empty());
            let (row, j) = spots[r.gen_range(0..spots.len())];
            let old = bad.taylor[k].get(row, j).clone();
            bad.taylor[k].set(row, j, old + one());
            let dg = linfty_to_dgla(&bad).unwrap();
            prop_assert_eq!(bad.check().is_valid(), dg.validate().is_valid());
        }

        #[test]
        fn mc_equations_agree(seed in any::<u64>()) {
            let mut r = rng(seed);
            let l = random_dgla(&mut r, 5);
            let a = random_algebra(&mut r, 3);
            let t = TensorDgla::new(&l, &a);
            let s = dgla_to_linfty(&l, 3);
            let x = if r.gen_bool(0.5) { random_mc(&mut r, &t) } else { random_in_degree(&mut r, &t.dgla.space, 1) };
            let dg = mc_check(&t.dgla, &x).unwrap();
            let li = linfty_mc_check(&s, &a, &shift_element(&l.space, &a, &x)).unwrap();
            prop_assert_eq!(li.is_mc, dg.is_mc);
            prop_assert_eq!(li.defect, shift_element(&l.space, &a, &dg.defect));
        }

        #[test]
        fn mc_elements_are_dg_coalgebra_morphisms(seed in any::<u64>()) {
            let mut r = rng(seed);
            let l = random_dgla(&mut r, 4);
            let a = random_algebra(&mut r, 3);
            let t = TensorDgla::new(&l, &a);
            let s = dgla_to_linfty(&l, 3);
            let x = if r.gen_bool(0.5) { random_mc(&mut r, &t) } else { random_in_degree(&mut r, &t.dgla.space, 1) };
            let m = shift_element(&l.space, &a, &x);
            let dual = DualCoalgebra::new(&a).coalgebra;
            let lin = element_as_linear_map(l.dim(), &a, &m);
            let theta = coalgebra_morphism_from_linear(&dual, &s.coalgebra, &lin).unwrap();
            prop_assert!(is_coalgebra_morphism(&dual, &s.coalgebra.coalgebra, &theta));
            // π∘θ = m.
            for col in 0..dual.dim() {
                for row in 0..l.dim() {
                    prop_assert_eq!(theta.get(s.coalgebra.index_of(&[row]).unwrap(), col), lin.get(row, col));
                }
            }
            let q = s.coderivation_matrix();
            let commutes = q.mul(&theta) == theta.mul(&dual.codifferential);
            prop_assert_eq!(commutes, linfty_mc_check(&s, &a, &m).unwrap().is_mc);
        }

        #[test]
        fn square_zero_mc_is_cocycle(seed in any::<u64>()) {
            let mut r = rng(seed);
            let l = random_dgla(&mut r, 5);
            let n = r.gen_range(1..=3);
            let a = NilpotentDgAlgebra::trivial(&random_complex(&mut r, n, 0, 2));
            let t = TensorDgla::new(&l, &a);
            let x = random_in_degree(&mut r, &t.dgla.space, 1);
            let s = dgla_to_linfty(&l, 3);
            let li = linfty_mc_check(&s, &a, &shift_element(&l.space, &a, &x)).unwrap();
            prop_assert_eq!(li.is_mc, t.dgla.diff(&x).iter().all(Scalar::is_zero));
        }

        #[test]
        fn dual_coalgebras_of_random_algebras(seed in any::<u64>()) {
            let mut r = rng(seed);
            let a = random_algebra(&mut r, 5);
            let d = DualCoalgebra::new(&a);
            prop_assert!(d.coalgebra.coassociativity_failures().is_empty());
            prop_assert!(d.coalgebra.cocommutativity_failures().is_empty());
            prop_assert!(d.coalgebra.coleibniz_failures().is_empty());
            prop_assert_eq!(d.to_algebra().unwrap(), a);
        }
    }
}
