//! Finitely generated abelian groups, direct limits of eventually periodic
//! sequences and exactness checks.

mod catalog;
mod group;
mod intmat;
mod seq;

pub use catalog::{catalog_entries, catalog_lookup, catalog_map, CatalogEntry, CatalogKey, CatalogMap};
pub use group::{group_name, FgAbGroup, GroupHom};
pub use intmat::{smith_normal_form, IntMatrix, Smith};
pub use seq::{
    chain_from_json, colimit, exactness_check, group_json, shift_invariance_check, tensor_z_half,
    ColimResult, GroupSeq,
};
