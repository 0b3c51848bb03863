//! Finitely generated `Zp[G]`-modules in reduced lattice form, homomorphisms,
//! and the basic constructions on them.

pub mod hom;
pub mod lattice;
pub mod module;
pub mod ops;
pub mod presentation;
pub mod resolution;

pub use hom::ModuleHom;
pub use lattice::{preimage_of_zero, subquotient, Projector, Subquotient};
pub use module::{ElementVector, PresentedModule};
pub use ops::{
    augmentation_ideal, augmentation_ideal_coordinates, augmentation_inclusion, direct_sum,
    direct_sum_all, direct_sum_with_maps, fixed_points, free_module, hom_from_free, image_contains,
    image_of, integers_trivial, is_exact_at, is_injective, is_surjective, kernel_of,
    quotient_by_elements, quotient_by_image, scalar_action_hom, submodule_generated,
    trivial_module, DirectSum, FixedPoints, Quotient, Submodule,
};
pub use presentation::{GroupRingPresentation, Realized};
pub use resolution::{
    free_cover, minimal_generator_count, minimal_generators, radical_quotient, solve_preimage,
    syzygy, syzygy_power, FreeCover,
};
