//! Complete bipartite subgraph extraction from dense bipartite graphs.
//!
//! If `e(F) >= alpha m n` and `1 <= c ln n <= alpha m / 2 + 1`, then `F`
//! contains a `K_2(s, t)` with `s = floor(c ln n)` on side A and
//! `t > n (alpha/2)^s`. The search is exhaustive over `s`-subsets of A
//! while `C(m, s)` fits the budget, and degree-biased randomized restarts
//! beyond that.

use super::{ExtractError, PipelineConfig};
use crate::bipartite::{BipartiteGraph, KstWitness};
use crate::bits;
use crate::graph::VertexSet;
use crate::ratio::Ratio;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Extracts a `K_2(s, t)` witness under the density and size
/// preconditions, which are both checked (density exactly); the returned
/// `T` is the full common neighborhood of `S`.
///
/// In exact mode the witness also satisfies `t > n (alpha/2)^s`; failing
/// that bound with the preconditions intact indicates a bug and is
/// reported as an internal fault rather than silently accepted.
pub fn bipartite_kst(
    f: &BipartiteGraph,
    alpha: Ratio,
    c: f64,
    cfg: &PipelineConfig,
) -> Result<KstWitness, ExtractError> {
    let m = f.side_a_size();
    let n = f.side_b_size();

    if alpha.is_zero() || alpha.cmp_int(1) == std::cmp::Ordering::Greater {
        return Err(ExtractError::AlphaOutOfRange);
    }
    // e(F) >= alpha * m * n, exactly
    if !alpha.scaled_le((m * n) as u64, f.edge_count() as u64) {
        return Err(ExtractError::KstDensityTooLow {
            edges: f.edge_count(),
            required: alpha.to_f64() * (m * n) as f64,
        });
    }
    let c_ln_n = c * (n as f64).ln();
    let cap = alpha.to_f64() * m as f64 / 2.0 + 1.0;
    if !(c_ln_n >= 1.0 - 1e-9 && c_ln_n <= cap + 1e-9) {
        return Err(ExtractError::KstSizeOutOfRange { c_ln_n, cap });
    }

    let mut last = None;
    for s in super::target_sizes(c, n) {
        if s > m {
            continue;
        }
        match kst_at_size(f, alpha, s, cfg, true) {
            Ok(w) => return Ok(w),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or(ExtractError::KstSizeOutOfRange { c_ln_n, cap }))
}

/// `t > n (alpha/2)^s`, compared exactly: `t (2 den)^s > n num^s`.
pub(crate) fn exceeds_kst_bound(t: usize, n: usize, alpha: Ratio, s: usize) -> bool {
    let lhs = (t as u128).checked_mul((2 * alpha.den() as u128).checked_pow(s as u32).unwrap_or(u128::MAX));
    let rhs = (n as u128).checked_mul((alpha.num() as u128).checked_pow(s as u32).unwrap_or(u128::MAX));
    match (lhs, rhs) {
        (Some(l), Some(r)) => l > r,
        // overflow means the bound side is astronomically small or large;
        // fall back to logarithms
        _ => {
            (t as f64).ln() + s as f64 * ((2.0 * alpha.den() as f64).ln())
                > (n as f64).ln() + s as f64 * (alpha.num() as f64).ln()
        }
    }
}

/// Extraction at an explicit subset size `s`; used by the pipelines,
/// which fix `s` upstream. When `enforce_bound` is set, exact-mode results
/// must clear the `n (alpha/2)^s` bound.
pub(crate) fn kst_at_size(
    f: &BipartiteGraph,
    alpha: Ratio,
    s: usize,
    cfg: &PipelineConfig,
    enforce_bound: bool,
) -> Result<KstWitness, ExtractError> {
    let n = f.side_b_size();
    let exact = subsets_within_budget(f.side_a_size(), s, cfg.exact_subset_budget);
    let (t, subset) = best_kst_subset(f, s, cfg).ok_or(ExtractError::NotFound {
        stage: "biclique",
        detail: format!("side A has no {s}-subset"),
        trace: None,
    })?;

    if t == 0 {
        return Err(ExtractError::NotFound {
            stage: "biclique",
            detail: format!("every {s}-subset of side A has empty common neighborhood"),
            trace: None,
        });
    }
    if enforce_bound && !exceeds_kst_bound(t, n, alpha, s) {
        if exact {
            return Err(ExtractError::Internal(format!(
                "exact biclique optimum t = {t} fails the bound n (alpha/2)^s with n = {n}, alpha = {alpha}, s = {s}"
            )));
        }
        return Err(ExtractError::NotFound {
            stage: "biclique",
            detail: format!("randomized search reached t = {t}, below the density bound"),
            trace: None,
        });
    }
    let witness = KstWitness::for_side_a(f, subset).map_err(ExtractError::Graph)?;
    debug_assert_eq!(witness.t(), t);
    Ok(witness)
}

/// Best `s`-subset of side A by common-neighborhood size, exhaustive when
/// the subset count fits the budget and randomized otherwise.
pub(crate) fn best_kst_subset(
    f: &BipartiteGraph,
    s: usize,
    cfg: &PipelineConfig,
) -> Option<(usize, VertexSet)> {
    if subsets_within_budget(f.side_a_size(), s, cfg.exact_subset_budget) {
        best_subset_exact(f, s)
    } else {
        best_subset_randomized(f, s, cfg)
    }
}

/// Is `C(m, s) <= budget`? Computed without overflow.
pub(crate) fn subsets_within_budget(m: usize, s: usize, budget: u64) -> bool {
    if s > m {
        return true; // zero subsets
    }
    let s = s.min(m - s);
    let mut acc: u128 = 1;
    for i in 0..s {
        acc = acc * (m - i) as u128 / (i + 1) as u128;
        if acc > budget as u128 {
            return false;
        }
    }
    true
}

/// Exhaustive maximum over `s`-subsets of side A, lexicographically first
/// maximizer. Iterative combination walk, kept separate from the oracle's
/// recursive search so the two remain independent checks of each other.
fn best_subset_exact(f: &BipartiteGraph, s: usize) -> Option<(usize, VertexSet)> {
    let m = f.side_a_size();
    if s > m {
        return None;
    }
    if s == 0 {
        return Some((f.side_b_size(), VertexSet::empty()));
    }
    let mut idx: Vec<usize> = (0..s).collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    loop {
        let mut inter = bits::full_mask(f.side_b_size());
        for &i in &idx {
            bits::and_assign(&mut inter, f.row(i));
        }
        let t = bits::count(&inter);
        if best.as_ref().map_or(true, |(bt, _)| t > *bt) {
            best = Some((t, idx.clone()));
        }
        // next combination
        let mut pos = s;
        loop {
            if pos == 0 {
                return best.map(|(t, v)| (t, VertexSet::new(v)));
            }
            pos -= 1;
            if idx[pos] != pos + m - s {
                idx[pos] += 1;
                for j in pos + 1..s {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Randomized restarts sampling `s`-subsets biased toward high-degree
/// A-vertices, keeping the best; finishes with one exact attempt on the
/// `2s` highest-degree vertices.
fn best_subset_randomized(
    f: &BipartiteGraph,
    s: usize,
    cfg: &PipelineConfig,
) -> Option<(usize, VertexSet)> {
    let m = f.side_a_size();
    if s > m {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best: Option<(usize, Vec<usize>)> = None;

    let degrees: Vec<usize> = (0..m).map(|u| f.degree_a(u)).collect();
    for _ in 0..cfg.randomized_restarts {
        let subset = weighted_sample_without_replacement(&degrees, s, &mut rng);
        let mut inter = bits::full_mask(f.side_b_size());
        for &u in &subset {
            bits::and_assign(&mut inter, f.row(u));
        }
        let t = bits::count(&inter);
        if best.as_ref().map_or(true, |(bt, _)| t > *bt) {
            best = Some((t, subset));
        }
    }

    // one exact pass over the top-2s vertices by degree
    let mut by_degree: Vec<usize> = (0..m).collect();
    by_degree.sort_by_key(|&u| (std::cmp::Reverse(degrees[u]), u));
    let top: Vec<usize> = by_degree.into_iter().take(2 * s).collect();
    for combo in crate::clique::combinations(&top, s.min(top.len())) {
        if combo.len() < s {
            break;
        }
        let mut inter = bits::full_mask(f.side_b_size());
        for &u in &combo {
            bits::and_assign(&mut inter, f.row(u));
        }
        let t = bits::count(&inter);
        if best.as_ref().map_or(true, |(bt, _)| t > *bt) {
            best = Some((t, combo));
        }
    }

    best.map(|(t, v)| (t, VertexSet::new(v)))
}

fn weighted_sample_without_replacement(
    weights: &[usize],
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..weights.len()).collect();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k.min(weights.len()) {
        let total: u64 = pool.iter().map(|&u| weights[u] as u64 + 1).sum();
        let mut roll = rng.gen_range(0..total);
        let mut pick = 0;
        for (i, &u) in pool.iter().enumerate() {
            let w = weights[u] as u64 + 1;
            if roll < w {
                pick = i;
                break;
            }
            roll -= w;
        }
        out.push(pool.swap_remove(pick));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::random_graph_with_edges;
    use crate::oracle;

    fn complete_bip(a: usize, b: usize) -> BipartiteGraph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, v));
            }
        }
        BipartiteGraph::new(a, b, &edges).unwrap()
    }

    fn random_bipartite(a: usize, b: usize, m: usize, seed: u64) -> BipartiteGraph {
        // reuse the seeded graph sampler over an (a+b)-vertex pair space,
        // keeping only cross pairs until m of them accumulate
        let g = random_graph_with_edges(a * b, m, seed).unwrap();
        let mut edges: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .map(|(x, y)| (x % a, y % b))
            .collect();
        edges.truncate(m);
        BipartiteGraph::new(a, b, &edges).unwrap()
    }

    #[test]
    fn complete_case_meets_bound() {
        let f = complete_bip(8, 8);
        let c = 2.0 / (8f64).ln();
        let w = bipartite_kst(&f, Ratio::one(), c, &PipelineConfig::default()).unwrap();
        assert_eq!(w.s(), 2);
        assert_eq!(w.t(), 8);
        assert!(exceeds_kst_bound(w.t(), 8, Ratio::one(), 2)); // 8 > 8 * (1/2)^2 = 2
    }

    #[test]
    fn density_precondition_rejected() {
        let f = BipartiteGraph::new(4, 4, &[(0, 0)]).unwrap();
        let err = bipartite_kst(&f, Ratio::new(1, 2), 1.0, &PipelineConfig::default());
        assert!(matches!(err, Err(ExtractError::KstDensityTooLow { .. })));
    }

    #[test]
    fn size_precondition_rejected() {
        // alpha m / 2 + 1 = 2 but c ln n far larger
        let f = complete_bip(2, 20);
        let err = bipartite_kst(&f, Ratio::one(), 3.0, &PipelineConfig::default());
        assert!(matches!(err, Err(ExtractError::KstSizeOutOfRange { .. })));
    }

    #[test]
    fn exact_mode_matches_oracle_on_random_instances() {
        for seed in 0..20 {
            let f = random_bipartite(10, 10, 60, seed);
            for s in 1..=3 {
                if let Some((t, _)) = best_subset_exact(&f, s) {
                    let (oracle_t, _) = oracle::max_kst(&f, s).unwrap();
                    assert_eq!(t, oracle_t, "seed {seed} s {s}");
                }
            }
        }
    }

    #[test]
    fn s_one_picks_a_max_degree_vertex() {
        let f = random_bipartite(10, 10, 60, 42);
        let (t, s_set) = best_subset_exact(&f, 1).unwrap();
        let max_deg = (0..10).map(|u| f.degree_a(u)).max().unwrap();
        assert_eq!(t, max_deg);
        assert_eq!(f.degree_a(s_set.as_slice()[0]), max_deg);
    }

    #[test]
    fn budget_check() {
        assert!(subsets_within_budget(20, 2, 1000));
        assert!(!subsets_within_budget(100, 5, 1_000_000));
        assert!(subsets_within_budget(100, 0, 1));
    }

    #[test]
    fn randomized_mode_is_deterministic_for_a_seed() {
        let f = random_bipartite(12, 12, 100, 5);
        let cfg = PipelineConfig {
            exact_subset_budget: 1, // force randomized mode
            ..Default::default()
        };
        let a = best_subset_randomized(&f, 3, &cfg).unwrap();
        let b = best_subset_randomized(&f, 3, &cfg).unwrap();
        assert_eq!(a, b);
    }
}
