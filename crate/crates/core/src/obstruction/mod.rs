//! Obstruction calculus for `Def_L` along small extensions: obstruction
//! classes, twisted extensions, lifting defects of differentials, primary
//! obstructions and the tangent bracket.

mod classes;
mod differential;
mod primary;

pub use classes::{
    check_twisting_morphism, maps_killing_products, obstruction_class, obstruction_class_from_lift, phi_push,
    twist_extension, twisting_morphisms, ObstructionClass,
};
pub use differential::{acyclic_resolution, is_derivation, lifting_defect, LiftingDefect};
pub use primary::{primary_extension, primary_obstruction, tangent_bracket, PrimaryObstruction, TangentBracket};
