//! r-homotopy invariants of finite quasimetric spaces and digraphs.

pub mod catalog;
pub mod complex;
pub mod digraph;
pub mod error;
pub mod geometry;
pub mod homology;
pub mod interval;
pub mod linalg;
pub mod lowdim;
pub mod minimal_model;
pub mod scalar;
pub mod space;
pub mod spectral;

pub use digraph::{Digraph, Subdigraph};
pub use error::{Error, Result};
pub use homology::{Coefficients, HomologyGroup};
pub use interval::{Interval, LeftRay};
pub use minimal_model::{jumping_points, minimal_model, JumpingOptions, RetractionResult, SearchOptions};
pub use scalar::{Backend, ExtDist, Scalar, DEFAULT_TAU};
pub use space::{HomotopyChain, QMetSpace, ShortMap};
pub use spectral::{sh, Provenance, SHQuery, SHResult};
