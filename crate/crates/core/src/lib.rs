//! Star graphs: intersection graphs of the maximal induced stars of a graph.
//!
//! The crate covers the star operator and its iterates, the triangle-free
//! bridge to graph squares, star-partitioned edge clique covers, star
//! criticality, the structural properties of star graphs, and an exhaustive
//! census of small star graphs driven by one-vertex augmentation.

pub mod augment;
pub mod canon;
pub mod cli;
pub mod cover;
pub mod critical;
pub mod error;
pub mod graph;
pub mod props;
pub mod recognition;
pub mod squares;
pub mod stars;

pub use canon::{are_isomorphic, canonical_form, CanonicalCode};
pub use error::{Error, Result};
pub use graph::{Graph, Length};
pub use stars::{maximal_stars, star_graph, MaximalStar, StarGraphResult};
