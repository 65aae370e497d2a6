//! Audit trail of the min-degree pipeline's intermediate objects.

use crate::clique::CliqueSet;
use crate::graph::{Graph, VertexSet};
use crate::ratio::Ratio;
use serde::Serialize;

/// The bipartite graph of the final stage, recorded for audit: side A is a
/// list of cliques, side B a list of vertices, edges index into both.
#[derive(Clone, Debug, Serialize)]
pub struct TraceBipartite {
    pub side_a: Vec<Vec<usize>>,
    pub side_b: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// Intermediates of the min-degree extraction, in pipeline order:
/// pivot edge, its common neighborhood `B`, the clique set `X` meeting `B`
/// in at least `r-1` vertices, the pruned fixpoint `Y`, the covered
/// multipartite parts `H`, the selected transversal cliques, the parts of
/// the induced subgraph `H*`, and the bipartite graph of the last stage.
#[derive(Clone, Debug, Serialize)]
pub struct ExtractionTrace {
    pub pivot_edge: (usize, usize),
    pub set_b: VertexSet,
    pub set_x: CliqueSet,
    pub set_y: CliqueSet,
    pub theta: Ratio,
    /// True when theta came from the caller rather than the default rule.
    pub theta_overridden: bool,
    pub covered_parts: Vec<VertexSet>,
    pub selected_cliques: Vec<VertexSet>,
    pub star_parts: Vec<VertexSet>,
    pub bipartite: Option<TraceBipartite>,
}

impl ExtractionTrace {
    /// Re-checks the defining predicates of the recorded objects against
    /// the graph the pipeline ran on. Returns the first failure.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let (u, v) = self.pivot_edge;
        if !g.has_edge(u, v) {
            return Err(format!("pivot ({u}, {v}) is not an edge"));
        }
        let b = g
            .common_neighborhood(&VertexSet::new(vec![u, v]))
            .map_err(|e| e.to_string())?;
        if b != self.set_b {
            return Err("recorded B differs from the pivot's common neighborhood".into());
        }
        let r = self.set_x.size();
        for member in self.set_x.iter() {
            let inside = member.vertices().iter().filter(|&w| b.contains(w)).count();
            if inside + 1 < r {
                return Err(format!(
                    "X member {:?} meets B in only {} vertices",
                    member.as_slice(),
                    inside
                ));
            }
        }
        for member in self.set_y.iter() {
            if !self.set_x.contains_vertices(member.as_slice()) {
                return Err("Y is not a subset of X".into());
            }
        }
        // every (r-1)-subclique of a member of Y has codegree > theta in Y
        let subs = crate::clique::shadow(&self.set_y, r.saturating_sub(1).max(1))
            .map_err(|e| e.to_string())?;
        if r >= 2 {
            for sub in subs.iter() {
                let d = self.set_y.codegree_of_slice(sub.as_slice());
                if self.theta.cmp_int(d as u64) != std::cmp::Ordering::Less {
                    return Err(format!(
                        "codegree of {:?} in Y is {} <= theta = {}",
                        sub.as_slice(),
                        d,
                        self.theta
                    ));
                }
            }
        }
        Ok(())
    }
}
