//! Finite permutation groups with full element enumeration.

mod catalog;
pub mod constructors;
mod group;
mod iso;
mod lattice;
#[allow(clippy::module_inception)]
mod perm;
mod subgroup;
pub mod traits;

pub use catalog::{
    catalog_load, epimorphic_images_in, epimorphic_images_in_detailed, normalize_name, parse_cycles, Catalog,
    CatalogEntry, EpimorphicImages, Tier, CATALOG_FILE, DATA_DIR_ENV,
};
pub use group::{PermGroup, DEFAULT_ENUMERATION_BOUND};
pub use iso::{GroupSignature, IsoOutcome, DEFAULT_ISO_NODE_LIMIT};
pub use lattice::{Quotient, DEFAULT_NORMAL_SUBGROUP_BOUND, DEFAULT_SUBGROUP_BOUND};
pub use perm::Perm;
pub use subgroup::Subgroup;
pub use traits::FiniteGroup;
