//! Graph homomorphism complexes, twisted products and test-graph families,
//! with exact simplicial homology for checking topological claims on small
//! instances.

pub mod bitset;
pub mod error;
pub mod graph;
pub mod poset;
pub mod action;
pub mod hom;
pub mod families;
pub mod homology;
pub mod harness;

pub use bitset::BitSet;
pub use error::{Error, Guards, Result};
pub use graph::{Extended, Graph, StandardGraph, VertexMap};
pub use poset::{Poset, PosetMap, SimplicialComplex};
