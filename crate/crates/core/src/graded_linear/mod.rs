//! Exact graded linear algebra over the rationals: graded spaces, Koszul
//! signs, unshuffles, symmetric powers, complexes and cohomology.
//!
//! Everything is single-graded with differentials of degree +1.

mod bilinear;
mod complex;
mod matrix;
mod scalar;
mod signs;
mod space;

pub use bilinear::Bilinear;
pub use complex::{
    check_homogeneous, cohomology, complement_in, connecting_hom, image_basis, in_image, induced_on_cohomology,
    is_quasiiso, long_exact_sequence_is_exact, mapping_cone, Cohomology, Complex, Contraction, GradedMap,
    ShortExactSequence,
};
pub use matrix::{
    complete_basis, coordinates, independent_subset, intersection, inverse, kernel, rref, solve, solve_matrix,
    span_basis, Matrix,
};
pub use scalar::{
    add_scaled, binomial, factorial, frac, int, is_zero_vec, odd, one, parse_scalar, sign, unit_vec, vec_add,
    vec_scale, vec_sub, zero, zero_vec, Scalar,
};
pub use signs::{
    all_permutations, canonical_monomial, check_permutation, koszul_sign, monomial_name, symmetric_monomials,
    symmetric_power, tensor_words, unshuffles, SymmetricPower,
};
pub use space::{uniquify, GradedSpace};
