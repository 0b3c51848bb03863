//! Fixed-precision `Zp` arithmetic, the group ring `Zp[G]` for cyclic `G`,
//! and Smith normal form.

pub mod group_ring;
pub mod matrix;
pub mod padic;
pub mod snf;

pub use group_ring::{
    augmentation, ring_mul, GroupParams, GroupRingElement, ParamSpec, DEFAULT_GUARD, DEFAULT_PRECISION,
};
pub use matrix::Matrix;
pub use padic::{padic_mul, padic_unit_inverse, PadicInt, PadicRing, Valuation};
pub use snf::{kernel, smith_normal_form, SnfResult};
