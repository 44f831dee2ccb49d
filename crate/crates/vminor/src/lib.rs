//! Vertex-minor problems on graph states.

pub mod error;
pub mod graph;
pub mod ops;
pub mod oracle;
pub mod dh;
pub mod dh_star;
pub mod circle;
pub mod soet;
pub mod ksoet;
pub mod small;
pub mod stab;
pub mod io;
pub mod bench;

pub use error::{Error, Result};
pub use graph::{LabeledGraph, Shape, VertexId};
pub use ops::{Basis, Move, TransformationPlan};
