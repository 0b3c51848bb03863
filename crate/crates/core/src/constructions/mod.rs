//! Splitting modules, the `J_e` family, and the pipeline that builds a module
//! with prescribed cohomology from a lattice `C`.

pub mod extension;
pub mod jmodule;
pub mod lemma2;
pub mod theorem1;

pub use extension::{cocycle_from_section, splitting_module, ExtensionData, SplittingModule};
pub use jmodule::{
    h_isomorphism, j_module, j_submodule, lemma3_resolution, predicted_unit_structure,
    HIsomorphism, Lemma3Resolution,
};
pub use lemma2::{lemma2_pipeline, Lemma2Output, ShiftWitness, Theorem1Input};
pub use theorem1::{theorem1_verify, Theorem1Report};
