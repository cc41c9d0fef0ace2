pub mod catalog;
pub mod constructions;
pub mod criticality;
pub mod enumerate;
pub mod cycles;
pub mod error;
pub mod frustration;
pub mod graph;
pub mod iso;
pub mod limits;
pub mod planar;
pub mod random;
pub mod reproduce;
pub mod structure;
pub mod subdivision;

pub use error::{Error, Result};
pub use graph::{Cycle, Edge, EdgeCut, EdgeId, EdgeSet, GraphBuilder, Sign, SignedGraph, SwitchSet, VertexId};
