//! Finite rings as formal matrix rings over local corners: structure,
//! socles, annihilator duality and QF/Frobenius classification.

pub mod bimodule;
pub mod cardinality;
pub mod corpus;
pub mod dsl;
pub mod error;
#[cfg(test)]
mod fixtures;
pub mod formal;
pub mod gallery;
pub mod ideal;
pub mod lattice;
pub mod local;
pub mod module;
pub mod report;
pub mod ring;
pub mod socle;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use formal::{
    build_formal_matrix, corner_elements, corner_ring, BimoduleSpec, FormalMatrixSpec, Layout,
    ProductTable,
};
pub use local::{make_local, LocalRingSpec};
pub use ring::{build_table_ring, Elem, FiniteRing, Provenance, Side};
