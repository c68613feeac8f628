//! The local-global obstruction for realizing an isometry with prescribed
//! characteristic polynomial and real signature data on an even unimodular
//! lattice.

mod classes;
mod conditions;
mod index;
mod vanishing;

pub use classes::{
    delta, equivalence_classes, primed_symbol_set, DeltaPair, EdgeCertificate, EquivalenceClasses,
    Side,
};
pub(crate) use conditions::Setup;
pub use conditions::{check_sign, check_square, SquareCheck};
pub use index::{enumerate_index_maps, eta_infinity, validate_index_map, IndexMap};
pub use vanishing::{
    construct_vanishing_index, construct_vanishing_index_seeded, obstruction_map,
    obstruction_map_seeded, Guarantee, ObstructionReport, VanishingIndex,
};
