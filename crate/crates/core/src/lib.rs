//! Extraction and certification of dense complete multipartite structure
//! in graphs above the Turán edge count.
//!
//! A graph on `n` vertices with more than `t_r(n)` edges contains a
//! complete `r`-partite subgraph with an extra edge inside its first part
//! (written `K_r^+(s_1, ..., s_r)`). This crate turns that existence
//! statement, and the companion stability statement for near-extremal
//! graphs, into executable extraction pipelines whose outputs are explicit
//! vertex-set certificates. Every certificate is re-verified directly
//! against the host graph, and exponential-time oracles provide
//! independent ground truth at desk scale.
//!
//! Modules:
//! - [`graph`], [`generate`], [`formats`]: graph representation, exact
//!   Turán arithmetic, instance generators, file formats.
//! - [`clique`]: exact clique enumeration, joint sizes, codegree queries,
//!   minimum-codegree pruning.
//! - [`bipartite`], [`witness`]: the witness shapes.
//! - [`oracle`]: brute-force ground truth (built first, frozen).
//! - [`extract`]: the constructive pipelines.

mod bits;

pub mod bipartite;
pub mod clique;
pub mod extract;
pub mod formats;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod ratio;
pub mod witness;

pub use bipartite::{BipartiteGraph, KstWitness};
pub use clique::{Clique, CliqueSet, JointReport};
pub use extract::{Branch, ExtractError, Extraction, PipelineConfig};
pub use generate::PartSpec;
pub use graph::{Graph, GraphError, VertexSet};
pub use ratio::Ratio;
pub use witness::KrPlusWitness;
