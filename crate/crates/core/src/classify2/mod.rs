//! The complete theory for two generators: the residual system, the case
//! families, the classification procedure and the witness catalog.

mod catalog;
mod classify;
mod families;
mod label;

pub use catalog::{catalog_formulas, witness_catalog, witness_catalog_with, CatalogEntry};
pub use classify::{classify, classify_reduced, Classification, Step};
pub use families::{
    crisscross_equations_n2, families, family, instantiate_case, sample_values, CaseFamily, CaseId, Param, Params,
    RESIDUAL_LABELS,
};
pub use label::{canonical_tuple, ClassLabel};

