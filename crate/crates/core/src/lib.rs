//! Exact invariants of finite simple hypergraphs: independence complexes,
//! vertex decomposability, matching and bouquet numbers, and graded Betti
//! numbers of the associated Stanley–Reisner rings.

pub mod complex;
pub mod bouquets;
pub mod cycles;
pub mod decomposition;
pub mod generators;
pub mod error;
pub mod homology;
pub mod hypergraph;
pub mod limits;
pub mod matchings;
pub mod rank;
pub mod report;
pub mod vd;
pub mod verify;
pub mod vertex_set;

pub use complex::{ComplexKind, SimplicialComplex};
pub use cycles::CycleWitness;
pub use error::{Error, Result};
pub use hypergraph::{CoverList, Hypergraph, HypergraphJson, UniformityProfile, VertexId};
pub use limits::Limits;
pub use vd::{VdCertificate, VdOracle, VdTree};
pub use vertex_set::VertexSet;
