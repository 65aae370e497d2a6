//! The constructive extraction pipelines.
//!
//! Five entry points, bottom to top:
//! - [`bipartite_kst`]: dense bipartite graphs contain large complete
//!   bipartite subgraphs (dependent-choice bound, exact search).
//! - [`covered_multipartite`]: a large set of `r`-cliques covers a
//!   complete `r`-partite subgraph.
//! - [`mindeg_krplus`]: minimum degree above `(1 - 1/r - 1/r^4)n` plus one
//!   `K_{r+1}` yields a witness, via pivot edge, codegree pruning, covered
//!   multipartite extraction, and a final part swap.
//! - [`turan_inverted`]: any graph above the Turán count yields a witness,
//!   by branching on a dense-or-min-degree induced subgraph.
//! - [`stability_decompose`]: near-extremal graphs yield either a witness
//!   or an induced, almost-spanning r-partite subgraph of large minimum
//!   degree.

mod covered;
mod dichotomy;
mod kst;
mod mindeg;
mod stability;
mod trace;
mod turan;

pub use covered::covered_multipartite;
pub use dichotomy::{dichotomy_subgraph, DichotomyOutcome};
pub use kst::bipartite_kst;
pub use mindeg::mindeg_krplus;
pub use stability::{stability_decompose, Decomposition, Stability, StabilityOutcome};
pub use trace::{ExtractionTrace, TraceBipartite};
pub use turan::{assemble_krplus, turan_inverted};

use crate::clique::CliqueError;
use crate::graph::GraphError;
use crate::witness::{KrPlusWitness, WitnessViolation};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which branch of the dichotomy produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Branch {
    Dense,
    Mindeg,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Branch::Dense => write!(f, "DENSE"),
            Branch::Mindeg => write!(f, "MINDEG"),
        }
    }
}

/// Knobs for the search stages. All pipelines are deterministic for a
/// fixed config; randomized stages draw from a generator seeded with
/// `seed`, never from global state.
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    /// Exhaustive subset search is used while `C(m, s)` stays at or below
    /// this; beyond it the biclique stage samples restarts instead.
    pub exact_subset_budget: u64,
    /// Restarts for the randomized biclique stage.
    pub randomized_restarts: u32,
    /// Node budget for backtracking covered-multipartite search.
    pub covered_search_budget: u64,
    /// Seed for randomized stages.
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            exact_subset_budget: 1_000_000,
            randomized_restarts: 200,
            covered_search_budget: 2_000_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("part count r={r} unsupported (need 2 <= r <= 7 for exact thresholds)")]
    UnsupportedR { r: usize },
    #[error("edge count {edges} below required {required}")]
    EdgeCountTooLow { edges: usize, required: usize },
    #[error("graph contains no clique of size {size}")]
    NoCliqueOfSize { size: usize },
    #[error("minimum degree {min_degree} not above (1 - 1/{r} - 1/{r}^4) * {order}")]
    MinDegreeTooLow {
        min_degree: usize,
        order: usize,
        r: usize,
    },
    #[error("requested part size is zero: c ln n = {c} * ln {n} < 1")]
    TargetSizeNotPositive { c: f64, n: usize },
    #[error("alpha must lie in (0, 1/r)")]
    AlphaOutOfRange,
    #[error("bipartite density precondition failed: e(F) = {edges} < alpha * m * n = {required}")]
    KstDensityTooLow { edges: usize, required: f64 },
    #[error("biclique size precondition failed: need 1 <= c ln n <= alpha m / 2 + 1, got c ln n = {c_ln_n:.6}, alpha m / 2 + 1 = {cap:.6}")]
    KstSizeOutOfRange { c_ln_n: f64, cap: f64 },
    #[error("no witness found at requested size (stage: {stage}): {detail}")]
    NotFound {
        stage: &'static str,
        detail: String,
        trace: Option<Box<ExtractionTrace>>,
    },
    #[error("dichotomy not certified: reached order {order} (floor {order_floor}) with min degree {min_degree} and {edges} edges, neither branch holds")]
    DichotomyNotCertified {
        order: usize,
        order_floor: usize,
        min_degree: usize,
        edges: usize,
    },
    #[error("stability not certified: {detail}")]
    StabilityNotCertified { detail: String },
    #[error("cannot assemble witness: {reason}")]
    InvalidAssembly { reason: String },
    #[error("emitted witness failed verification: {0} (internal bug)")]
    WitnessRejected(WitnessViolation),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Clique(#[from] CliqueError),
}

impl ExtractError {
    /// Distinguishes "searched and did not find at this size" from hard
    /// precondition or internal errors; drives the CLI exit-code contract.
    pub fn is_not_found(&self) -> bool {
        matches!(
            self,
            ExtractError::NotFound { .. }
                | ExtractError::DichotomyNotCertified { .. }
                | ExtractError::StabilityNotCertified { .. }
        )
    }
}

/// A witness together with how it was found.
#[derive(Clone, Debug, Serialize)]
pub struct Extraction {
    pub witness: KrPlusWitness,
    pub branch: Branch,
    pub s_target: usize,
    /// Pipeline intermediates (min-degree branch only).
    pub trace: Option<ExtractionTrace>,
    /// When the trace refers to an induced subgraph, the map from its
    /// vertex indices back to the input graph.
    pub trace_domain: Option<Vec<usize>>,
}

/// `floor(c ln n)` with a guard: values within 1e-9 of an integer yield
/// both candidates, larger first.
pub fn target_sizes(c: f64, n: usize) -> Vec<usize> {
    let x = c * (n as f64).ln();
    if !x.is_finite() || x < 1.0 - 1e-9 {
        return Vec::new();
    }
    let nearest = x.round();
    let mut out = Vec::new();
    if (x - nearest).abs() < 1e-9 {
        let k = nearest as usize;
        out.push(k);
        if k > 1 {
            out.push(k - 1);
        }
    } else {
        out.push(x.floor() as usize);
    }
    out.retain(|&s| s >= 1);
    out
}

/// A `c` whose target size at order `n` is exactly `s` (with slack against
/// rounding).
pub fn c_for_target(s: usize, n: usize) -> f64 {
    (s as f64 + 0.5) / (n as f64).ln()
}

/// The admissible constant `r^-((r+7)(r+1))` for the balanced headline
/// statement; astronomically small, so its target size floors to zero for
/// any representable order. Exposed for reporting.
pub fn paper_c_balanced(r: usize) -> f64 {
    (r as f64).powi(-(((r + 7) * (r + 1)) as i32))
}

/// Half the balanced constant, as used by the stability statement.
pub fn paper_c_stability(r: usize) -> f64 {
    paper_c_balanced(r) / 2.0
}

/// Target size of the last part, `ceil(n^(1 - sqrt(c)))`, for reporting.
pub fn paper_t_target(n: usize, c: f64) -> usize {
    if c <= 0.0 {
        return n;
    }
    let expo = 1.0 - c.sqrt();
    if expo <= 0.0 {
        1
    } else {
        (n as f64).powf(expo).ceil() as usize
    }
}

pub(crate) fn check_r(r: usize) -> Result<(), ExtractError> {
    if (2..=7).contains(&r) {
        Ok(())
    } else {
        Err(ExtractError::UnsupportedR { r })
    }
}

/// `r^(r+8)`, exact; fits in u64 for the supported range.
pub(crate) fn r_pow_r8(r: usize) -> u64 {
    (r as u64).pow(r as u32 + 8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_sizes_guard() {
        // 2 / ln 8 * ln 8 == 2 up to float rounding: both 2 and 1 attempted
        let c = 2.0 / (8f64).ln();
        assert_eq!(target_sizes(c, 8), vec![2, 1]);
        assert_eq!(target_sizes(0.5, 8), vec![1]);
        assert_eq!(target_sizes(0.01, 8), Vec::<usize>::new());
        assert_eq!(target_sizes(c_for_target(3, 20), 20), vec![3]);
    }

    #[test]
    fn paper_constants_floor_to_zero_at_desk_scale() {
        for r in 2..=4 {
            let c = paper_c_balanced(r);
            assert!(target_sizes(c, 1_000_000).is_empty());
        }
    }

    #[test]
    fn exact_threshold_power() {
        assert_eq!(r_pow_r8(2), 1024);
        assert_eq!(r_pow_r8(3), 177_147);
    }
}
