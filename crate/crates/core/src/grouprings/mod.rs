//! Exact arithmetic in `ℚG` and in the finite rings `(ℤ/m)G`.

mod algebra;
mod modular;

pub use algebra::{component_kernel, GroupAlgebraElement};
pub use modular::{unit_group_mod, ModularGroupRing, UnitGroup, EXHAUSTIVE_RING_BOUND, PERM_UNIT_GROUP_BOUND};
