//! The certified output of the extraction pipelines: a complete
//! `r`-partite subgraph with one extra edge inside the first part.

use crate::graph::VertexSet;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Disjoint parts `S_1, ..., S_r` with every cross pair adjacent in the
/// host graph, plus one adjacent pair inside `S_1`.
///
/// Validity is established by [`crate::oracle::verify_krplus`], which
/// checks the witness directly against a graph, independent of how the
/// witness was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KrPlusWitness {
    pub parts: Vec<VertexSet>,
    pub extra_edge: (usize, usize),
}

impl KrPlusWitness {
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.len()).collect()
    }

    /// Smallest size among all parts but the last.
    pub fn s_achieved(&self) -> usize {
        self.parts
            .iter()
            .take(self.parts.len().saturating_sub(1))
            .map(|p| p.len())
            .min()
            .unwrap_or(0)
    }

    /// Size of the last part.
    pub fn t_achieved(&self) -> usize {
        self.parts.last().map(|p| p.len()).unwrap_or(0)
    }
}

impl fmt::Display for KrPlusWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "K{}+({}) edge ({}, {})",
            self.parts.len(),
            self.part_sizes()
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(","),
            self.extra_edge.0,
            self.extra_edge.1
        )
    }
}

/// The first clause of the witness contract that a candidate violates.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum WitnessViolation {
    #[error("witness has no parts")]
    NoParts,
    #[error("part {part} is empty")]
    EmptyPart { part: usize },
    #[error("vertex {vertex} out of range for order {order}")]
    OutOfRange { vertex: usize, order: usize },
    #[error("parts {a} and {b} share vertex {vertex}")]
    PartsOverlap { a: usize, b: usize, vertex: usize },
    #[error("missing cross edge between {u} (part {pu}) and {v} (part {pv})")]
    MissingCrossEdge {
        u: usize,
        v: usize,
        pu: usize,
        pv: usize,
    },
    #[error("first part too small: |S1| = {size} < 2")]
    FirstPartTooSmall { size: usize },
    #[error("extra edge endpoint {vertex} lies outside the first part")]
    ExtraEdgeOutsideFirstPart { vertex: usize },
    #[error("extra edge ({u}, {v}) is not an edge of the graph")]
    ExtraEdgeMissing { u: usize, v: usize },
}
