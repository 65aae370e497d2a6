//! Exact clique enumeration and counting, joint-size computation, codegree
//! queries over clique sets, and minimum-codegree pruning.
//!
//! Cliques are emitted in lexicographic vertex order; everything here is a
//! pure function of its inputs, so results are deterministic.

use crate::bits;
use crate::graph::{Graph, GraphError, VertexSet};
use crate::ratio::Ratio;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliqueError {
    #[error("expected a clique of size {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("vertices {u} and {v} are not adjacent")]
    NotAClique { u: usize, v: usize },
    #[error("clique sets need size >= 1, got {size}")]
    SizeTooSmall { size: usize },
    #[error("shadow size {s} exceeds member size {r}")]
    ShadowTooLarge { s: usize, r: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A set of pairwise adjacent vertices in some host graph, validated on
/// creation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(transparent)]
pub struct Clique(VertexSet);

impl Clique {
    pub fn new(host: &Graph, vertices: VertexSet) -> Result<Self, CliqueError> {
        vertices.check_range(host.order())?;
        let vs = vertices.as_slice();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !host.has_edge(u, v) {
                    return Err(CliqueError::NotAClique { u, v });
                }
            }
        }
        Ok(Clique(vertices))
    }

    /// For sub-cliques of already validated cliques.
    pub(crate) fn from_set_unchecked(vertices: VertexSet) -> Self {
        Clique(vertices)
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        self.0.as_slice()
    }
}

/// A deduplicated set of cliques of one uniform size.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliqueSet {
    size: usize,
    members: Vec<Clique>,
}

impl CliqueSet {
    /// Validates all members against `host` (uniform size, pairwise
    /// adjacency); duplicates collapse.
    pub fn new(host: &Graph, size: usize, members: Vec<VertexSet>) -> Result<Self, CliqueError> {
        if size == 0 {
            return Err(CliqueError::SizeTooSmall { size });
        }
        let mut validated = Vec::with_capacity(members.len());
        for m in members {
            if m.len() != size {
                return Err(CliqueError::SizeMismatch {
                    expected: size,
                    got: m.len(),
                });
            }
            validated.push(Clique::new(host, m)?);
        }
        validated.sort();
        validated.dedup();
        Ok(CliqueSet {
            size,
            members: validated,
        })
    }

    pub(crate) fn from_sorted_unchecked(size: usize, members: Vec<Clique>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|m| m.len() == size));
        CliqueSet { size, members }
    }

    /// The uniform member size `r`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Clique] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = &Clique> {
        self.members.iter()
    }

    pub fn contains_vertices(&self, sorted: &[usize]) -> bool {
        self.members
            .binary_search_by(|c| c.as_slice().cmp(sorted))
            .is_ok()
    }

    /// How many members contain the given `(size-1)`-clique.
    pub fn codegree(&self, sub: &Clique) -> Result<usize, CliqueError> {
        if sub.len() + 1 != self.size {
            return Err(CliqueError::SizeMismatch {
                expected: self.size - 1,
                got: sub.len(),
            });
        }
        Ok(self.codegree_of_slice(sub.as_slice()))
    }

    pub(crate) fn codegree_of_slice(&self, sub: &[usize]) -> usize {
        self.members
            .iter()
            .filter(|m| sub.iter().all(|&v| m.vertices().contains(v)))
            .count()
    }
}

impl Serialize for CliqueSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.members.len()))?;
        for m in &self.members {
            seq.serialize_element(m)?;
        }
        seq.end()
    }
}

/// An edge together with the number of `r`-cliques containing it. The edge
/// is `None` exactly when the graph has no `r`-clique through any edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct JointReport {
    pub edge: Option<(usize, usize)>,
    pub count: u64,
}

fn row_masked(g: &Graph, v: usize, mask: &[u64]) -> Vec<u64> {
    let mut row = g.row(v).to_vec();
    bits::and_assign(&mut row, mask);
    row
}

fn enumerate_rec(
    g: &Graph,
    cand: &[u64],
    prefix: &mut Vec<usize>,
    need: usize,
    out: &mut Vec<Clique>,
) {
    if need == 0 {
        out.push(Clique::from_set_unchecked(VertexSet::from_sorted_unchecked(
            prefix.clone(),
        )));
        return;
    }
    if bits::count(cand) < need {
        return;
    }
    for v in bits::iter_ones(cand) {
        let mut next = row_masked(g, v, cand);
        bits::clear_through(&mut next, v);
        prefix.push(v);
        enumerate_rec(g, &next, prefix, need - 1, out);
        prefix.pop();
    }
}

/// All `r`-cliques of `g`, in lexicographic vertex order.
pub fn enumerate_cliques(g: &Graph, r: usize) -> CliqueSet {
    assert!(r >= 1, "clique size must be at least 1");
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(r);
    let all = bits::full_mask(g.order());
    enumerate_rec(g, &all, &mut prefix, r, &mut out);
    CliqueSet::from_sorted_unchecked(r, out)
}

fn count_rec(g: &Graph, cand: &[u64], need: usize) -> u64 {
    if need == 1 {
        return bits::count(cand) as u64;
    }
    if bits::count(cand) < need {
        return 0;
    }
    let mut total = 0;
    for v in bits::iter_ones(cand) {
        let mut next = row_masked(g, v, cand);
        bits::clear_through(&mut next, v);
        total += count_rec(g, &next, need - 1);
    }
    total
}

/// `k_r(g)`, by a counting-only traversal.
pub fn count_cliques(g: &Graph, r: usize) -> u64 {
    assert!(r >= 1, "clique size must be at least 1");
    if r > g.order() {
        return 0;
    }
    count_rec(g, &bits::full_mask(g.order()), r)
}

/// Counts `r`-cliques lying inside the given vertex mask.
pub(crate) fn count_cliques_in_mask(g: &Graph, mask: &[u64], r: usize) -> u64 {
    if r == 0 {
        return 1;
    }
    count_rec(g, mask, r)
}

fn exists_rec(g: &Graph, cand: &[u64], need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if bits::count(cand) < need {
        return false;
    }
    if need == 1 {
        return true;
    }
    for v in bits::iter_ones(cand) {
        let mut next = row_masked(g, v, cand);
        bits::clear_through(&mut next, v);
        if exists_rec(g, &next, need - 1) {
            return true;
        }
    }
    false
}

/// Does `g` contain an `r`-clique? Early-exit version of enumeration.
pub fn has_clique(g: &Graph, r: usize) -> bool {
    if r == 0 {
        return true;
    }
    exists_rec(g, &bits::full_mask(g.order()), r)
}

pub(crate) fn has_clique_in_mask(g: &Graph, mask: &[u64], r: usize) -> bool {
    exists_rec(g, mask, r)
}

/// An edge maximizing the number of `r`-cliques containing it, with that
/// count. Ties break to the lexicographically smallest edge; a graph with
/// no `r`-clique reports count 0 and no edge.
pub fn joint_size(g: &Graph, r: usize) -> JointReport {
    assert!(r >= 2, "joints need clique size at least 2");
    let mut best = JointReport {
        edge: None,
        count: 0,
    };
    for u in g.vertices() {
        for v in g.neighbors(u) {
            if v <= u {
                continue;
            }
            let mut common = g.row(u).to_vec();
            bits::and_assign(&mut common, g.row(v));
            let count = count_cliques_in_mask(g, &common, r - 2);
            if count > best.count {
                best = JointReport {
                    edge: Some((u, v)),
                    count,
                };
            }
        }
    }
    best
}

/// All `s`-cliques contained in members of `m`.
pub fn shadow(m: &CliqueSet, s: usize) -> Result<CliqueSet, CliqueError> {
    if s == 0 {
        return Err(CliqueError::SizeTooSmall { size: s });
    }
    if s > m.size() {
        return Err(CliqueError::ShadowTooLarge { s, r: m.size() });
    }
    let mut seen: Vec<Clique> = Vec::new();
    for member in m.iter() {
        for combo in combinations(member.as_slice(), s) {
            seen.push(Clique::from_set_unchecked(VertexSet::from_sorted_unchecked(
                combo,
            )));
        }
    }
    seen.sort();
    seen.dedup();
    Ok(CliqueSet::from_sorted_unchecked(s, seen))
}

/// All `k`-subsets of a sorted slice, in lexicographic order.
pub(crate) fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let n = items.len();
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if idx[pos] != pos + n - k {
                idx[pos] += 1;
                for j in pos + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if pos == 0 {
                return out;
            }
        }
        if k == 0 {
            return out;
        }
    }
}

/// Result of [`prune_min_codegree`]: the surviving fixpoint and the
/// `(r-1)`-cliques eliminated, in removal order.
#[derive(Clone, Debug)]
pub struct PruneOutcome {
    pub kept: CliqueSet,
    pub removed: Vec<VertexSet>,
}

/// Repeatedly removes every member containing some `(r-1)`-subclique whose
/// live codegree is `<= theta`, until none remains.
///
/// The fixpoint is the unique maximal subset in which every
/// `(r-1)`-subclique of every member has codegree `> theta`; each logged
/// removal eliminates at most `theta` members, so
/// `|X| - |Y| <= |K_{r-1}(X)| * theta`.
pub fn prune_min_codegree(x: &CliqueSet, theta: Ratio) -> Result<PruneOutcome, CliqueError> {
    let r = x.size();
    if r < 2 {
        return Err(CliqueError::SizeTooSmall { size: r });
    }

    // (r-1)-subclique -> indices of members containing it
    let mut subs: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (idx, member) in x.iter().enumerate() {
        for combo in combinations(member.as_slice(), r - 1) {
            subs.entry(combo).or_default().push(idx);
        }
    }

    let mut alive = vec![true; x.len()];
    let mut live: BTreeMap<&[usize], usize> = BTreeMap::new();
    for (key, owners) in &subs {
        live.insert(key.as_slice(), owners.len());
    }

    let at_most_theta = |count: usize| theta.cmp_int(count as u64) != Ordering::Less;

    let mut queue: VecDeque<Vec<usize>> = subs
        .keys()
        .filter(|k| at_most_theta(subs[*k].len()))
        .cloned()
        .collect();
    let mut removed_log = Vec::new();

    while let Some(key) = queue.pop_front() {
        let count = live[key.as_slice()];
        if count == 0 {
            // no longer a subclique of any live member
            continue;
        }
        debug_assert!(at_most_theta(count));
        removed_log.push(VertexSet::from_sorted_unchecked(key.clone()));
        let owners = subs[&key].clone();
        for idx in owners {
            if !alive[idx] {
                continue;
            }
            alive[idx] = false;
            for combo in combinations(x.members()[idx].as_slice(), r - 1) {
                let entry = live.get_mut(combo.as_slice()).expect("sub registered");
                *entry -= 1;
                if *entry > 0 && at_most_theta(*entry) && combo != key {
                    queue.push_back(combo);
                }
            }
        }
        debug_assert_eq!(live[key.as_slice()], 0);
    }

    let kept: Vec<Clique> = x
        .iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(c, _)| c.clone())
        .collect();
    Ok(PruneOutcome {
        kept: CliqueSet::from_sorted_unchecked(r, kept),
        removed: removed_log,
    })
}

pub mod bounds {
    //! Exact inequality checks tying edge counts, minimum degree, clique
    //! counts, and joint sizes together. All comparisons are integer
    //! arithmetic in `u128`/`i128`.

    use super::{count_cliques, has_clique, joint_size};
    use crate::graph::Graph;
    use crate::ratio::Ratio;

    fn pow_u128(base: u128, exp: u32) -> u128 {
        base.checked_pow(exp).expect("bound arithmetic overflow")
    }

    /// Hypothesis: `e(G) > (1 - 1/r + c) n^2 / 2` with `c >= 0`.
    pub fn edge_surplus_hypothesis(g: &Graph, r: usize, c: Ratio) -> bool {
        let n = g.order() as u128;
        let e = g.edge_count() as u128;
        let (p, q) = (c.num() as u128, c.den() as u128);
        let r = r as u128;
        // 2 e r q > ((r-1) q + r p) n^2
        2 * e * r * q > ((r - 1) * q + r * p) * n * n
    }

    /// Checks `k_{r+1}(G) > c * r^2/(r+1) * (n/r)^{r+1}`, exactly. Returns
    /// `None` when the edge-surplus hypothesis fails for this `c`.
    pub fn clique_count_bound_holds(g: &Graph, r: usize, c: Ratio) -> Option<bool> {
        if r < 2 || !edge_surplus_hypothesis(g, r, c) {
            return None;
        }
        let n = g.order() as u128;
        let (p, q) = (c.num() as u128, c.den() as u128);
        let k = count_cliques(g, r + 1) as u128;
        // k q (r+1) r^{r-1} > p n^{r+1}
        let lhs = k * q * (r as u128 + 1) * pow_u128(r as u128, r as u32 - 1);
        let rhs = p * pow_u128(n, r as u32 + 1);
        Some(lhs > rhs)
    }

    /// Hypothesis: `G` contains `K_{r+1}` and `delta(G) > (1 - 1/r - 1/r^4) n`.
    pub fn mindeg_clique_hypothesis(g: &Graph, r: usize) -> bool {
        if r < 2 || g.order() == 0 {
            return false;
        }
        let n = g.order() as u128;
        let delta = g.min_degree() as u128;
        let r4 = pow_u128(r as u128, 4);
        // delta r^4 > (r^4 - r^3 - 1) n
        if delta * r4 <= (r4 - pow_u128(r as u128, 3) - 1) * n {
            return false;
        }
        has_clique(g, r + 1)
    }

    /// Checks `js_{r+1}(G) > n^{r-1} / r^{r+3}`, exactly. Returns `None`
    /// when the minimum-degree hypothesis fails.
    pub fn joint_size_bound_holds(g: &Graph, r: usize) -> Option<bool> {
        if !mindeg_clique_hypothesis(g, r) {
            return None;
        }
        let n = g.order() as u128;
        let js = joint_size(g, r + 1).count as u128;
        let lhs = js * pow_u128(r as u128, r as u32 + 3);
        let rhs = pow_u128(n, r as u32 - 1);
        Some(lhs > rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete_multipartite, turan_graph, PartSpec};

    fn k222() -> Graph {
        complete_multipartite(&PartSpec::new(vec![2, 2, 2], false).unwrap()).unwrap()
    }

    #[test]
    fn enumerates_triangles_of_k4() {
        let k4 = Graph::complete(4);
        let tris = enumerate_cliques(&k4, 3);
        assert_eq!(tris.len(), 4);
        assert_eq!(tris.members()[0].as_slice(), &[0, 1, 2]);
    }

    #[test]
    fn bipartite_graphs_have_no_triangles() {
        let k33 = turan_graph(2, 6).unwrap();
        assert!(enumerate_cliques(&k33, 3).is_empty());
        assert_eq!(count_cliques(&k33, 3), 0);
    }

    #[test]
    fn octahedron_has_eight_triangles() {
        assert_eq!(enumerate_cliques(&k222(), 3).len(), 8);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_cliques(&Graph::complete(5), 3), 10);
        let k322 = complete_multipartite(&PartSpec::new(vec![3, 2, 2], false).unwrap()).unwrap();
        assert_eq!(count_cliques(&k322, 3), 12);
    }

    #[test]
    fn count_matches_enumeration() {
        for seed in 0..5 {
            let g = crate::generate::random_graph_with_edges(10, 28, seed).unwrap();
            for r in 1..=5 {
                assert_eq!(count_cliques(&g, r), enumerate_cliques(&g, r).len() as u64);
            }
        }
    }

    #[test]
    fn joint_size_examples() {
        let k4 = Graph::complete(4);
        let j = joint_size(&k4, 3);
        assert_eq!(j.count, 2);
        assert_eq!(j.edge, Some((0, 1))); // lexicographic tie-break

        assert_eq!(joint_size(&Graph::complete(5), 4).count, 3);

        let k33 = turan_graph(2, 6).unwrap();
        let none = joint_size(&k33, 3);
        assert_eq!(none.count, 0);
        assert_eq!(none.edge, None);
    }

    #[test]
    fn codegree_examples() {
        let k4 = Graph::complete(4);
        let tris = enumerate_cliques(&k4, 3);
        let edge = Clique::new(&k4, VertexSet::new(vec![0, 1])).unwrap();
        assert_eq!(tris.codegree(&edge).unwrap(), 2);

        let empty = CliqueSet::new(&k4, 3, vec![]).unwrap();
        assert_eq!(empty.codegree(&edge).unwrap(), 0);

        let g = k222();
        let tris = enumerate_cliques(&g, 3);
        // vertices 0,1 are part 1; a cross edge is (0, 2)
        let cross = Clique::new(&g, VertexSet::new(vec![0, 2])).unwrap();
        assert_eq!(tris.codegree(&cross).unwrap(), 2);
    }

    #[test]
    fn codegree_rejects_size_mismatch() {
        let k4 = Graph::complete(4);
        let tris = enumerate_cliques(&k4, 3);
        let v = Clique::new(&k4, VertexSet::new(vec![0])).unwrap();
        assert!(tris.codegree(&v).is_err());
    }

    #[test]
    fn shadow_examples() {
        let k4 = Graph::complete(4);
        let tris = enumerate_cliques(&k4, 3);
        assert_eq!(shadow(&tris, 2).unwrap().len(), 6);
        assert_eq!(shadow(&tris, 3).unwrap(), tris); // identity case

        let one = CliqueSet::new(&k4, 3, vec![VertexSet::new(vec![0, 1, 2])]).unwrap();
        let verts = shadow(&one, 1).unwrap();
        assert_eq!(verts.len(), 3);

        assert!(shadow(&tris, 4).is_err());
    }

    #[test]
    fn prune_keeps_k4_triangles_at_theta_one() {
        let k4 = Graph::complete(4);
        let tris = enumerate_cliques(&k4, 3);
        let out = prune_min_codegree(&tris, Ratio::one()).unwrap();
        assert_eq!(out.kept, tris);
        assert!(out.removed.is_empty());
    }

    #[test]
    fn prune_empties_k4_triangles_at_theta_two() {
        let k4 = Graph::complete(4);
        let tris = enumerate_cliques(&k4, 3);
        let out = prune_min_codegree(&tris, Ratio::new(2, 1)).unwrap();
        assert!(out.kept.is_empty());
        // deletion accounting: each removed R eliminated at most theta members
        let shadow_size = shadow(&tris, 2).unwrap().len();
        let removed_members = tris.len() - out.kept.len();
        assert!(Ratio::new(2, 1).scaled_ge(shadow_size as u64, removed_members as u64));
    }

    #[test]
    fn prune_rejects_size_one() {
        let k4 = Graph::complete(4);
        let singles = enumerate_cliques(&k4, 1);
        assert!(prune_min_codegree(&singles, Ratio::one()).is_err());
    }

    #[test]
    fn clique_validation() {
        let k33 = turan_graph(2, 6).unwrap();
        assert!(Clique::new(&k33, VertexSet::new(vec![0, 1])).is_err()); // same part
        assert!(Clique::new(&k33, VertexSet::new(vec![0, 3])).is_ok());
        assert!(CliqueSet::new(&k33, 2, vec![VertexSet::new(vec![0, 3, 4])]).is_err());
    }

    #[test]
    fn combinations_are_lexicographic() {
        let items = [2, 5, 7, 9];
        let combos = combinations(&items, 2);
        assert_eq!(
            combos,
            vec![
                vec![2, 5],
                vec![2, 7],
                vec![2, 9],
                vec![5, 7],
                vec![5, 9],
                vec![7, 9]
            ]
        );
        assert_eq!(combinations(&items, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(&items, 5).is_empty());
    }

    #[test]
    fn bounds_hypotheses() {
        // Turán graph itself: zero surplus, hypothesis fails for any c >= 0
        let t = turan_graph(2, 10).unwrap();
        assert_eq!(bounds::clique_count_bound_holds(&t, 2, Ratio::zero()), None);

        // complete graph: huge surplus, bound must hold
        let k10 = Graph::complete(10);
        assert_eq!(
            bounds::clique_count_bound_holds(&k10, 2, Ratio::new(1, 4)),
            Some(true)
        );

        assert!(bounds::mindeg_clique_hypothesis(&k10, 2));
        assert_eq!(bounds::joint_size_bound_holds(&k10, 2), Some(true));
        assert!(!bounds::mindeg_clique_hypothesis(&t, 2)); // no triangle
    }
}
