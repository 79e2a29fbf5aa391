//! Combinatorics of connected half-edge graphs and the structures built on
//! them: graph maps with their inert–active factorization, Segal checks for
//! set-valued presheaves, cyclic orders, genus-graded graphs, and an exact
//! evaluator for 2D TQFTs given by commutative Frobenius algebras.

pub mod canon;
pub mod cyclic;
pub mod enumerate;
pub mod factorize;
pub mod field;
pub mod frobenius;
pub mod genus;
pub mod graph;
pub mod hom;
pub mod io;
pub mod laws;
pub mod linear;
pub mod morphism;
pub mod segal;
pub mod tensor;
pub mod tqft;

pub use graph::{dagger, ArcId, EdgeId, Elementary, End, Graph, GraphError, VertexId};
pub use morphism::{GraphMap, MapClass, MapError, MapFilter};
