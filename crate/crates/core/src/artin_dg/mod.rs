//! Nilpotent commutative dg-algebras (the test objects of deformation
//! problems), their morphisms, de Rham extensions and small extensions.

mod algebra;
mod constructions;
mod derham;
mod extension;
mod free;

pub use algebra::{
    check_morphism, graded_complement, graded_kernel, graded_span, vector_degree, DgAlgebraMorphism,
    NilpotentDgAlgebra, ValidationReport, Violation,
};
pub use constructions::{
    chain_homotopic, derived_inverse_cone, fiber_product, mapping_cone, DerivedInverseCone, DgModule, FiberProduct,
    MappingCone,
};
pub use derham::{
    ceil_mul, check_homotopy, epsilon_threshold, filtration_basis, polynomial_de_rham_complex, DeRham, Homotopy,
};
pub use extension::{factor_into_small_extensions, graded_intersection, Factorization, SmallExtension};
pub use free::{FreeTruncated, Polynomial};
