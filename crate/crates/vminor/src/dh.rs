//! Distance-hereditary graphs: foliage, recognition, random generation and
//! instance reduction.

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexId};
use crate::ops::Move;
use fixedbitset::FixedBitSet;
use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FoliageReport {
    pub leaves: Vec<VertexId>,
    pub axils: Vec<VertexId>,
    /// Pairs `(u, v)`, `u < v`, with `N(u) - v == N(v) - u`; the flag is true
    /// for adjacent (true) twins.
    pub twins: Vec<(VertexId, VertexId, bool)>,
}

impl FoliageReport {
    pub fn foliage(&self) -> BTreeSet<VertexId> {
        let mut s: BTreeSet<VertexId> = self.leaves.iter().chain(&self.axils).cloned().collect();
        for (u, v, _) in &self.twins {
            s.insert(u.clone());
            s.insert(v.clone());
        }
        s
    }
}

fn closed_row(g: &LabeledGraph, i: usize) -> FixedBitSet {
    let mut r = g.row(i).clone();
    r.insert(i);
    r
}

fn twin_groups(rows: impl Iterator<Item = (usize, FixedBitSet)>) -> Vec<Vec<usize>> {
    let mut groups: HashMap<FixedBitSet, Vec<usize>> = HashMap::new();
    for (i, r) in rows {
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().filter(|g| g.len() > 1).collect();
    out.sort();
    out
}

pub fn foliage(g: &LabeledGraph) -> FoliageReport {
    let n = g.n();
    let leaves: Vec<usize> = (0..n).filter(|&i| g.degree_idx(i) == 1).collect();
    let axils: BTreeSet<usize> = leaves.iter().map(|&l| g.neighbors_idx(l).next().unwrap()).collect();
    let mut twins = Vec::new();
    for (closed, adjacent) in [(false, false), (true, true)] {
        let rows = (0..n).map(|i| (i, if closed { closed_row(g, i) } else { g.row(i).clone() }));
        for grp in twin_groups(rows) {
            for a in 0..grp.len() {
                for b in a + 1..grp.len() {
                    twins.push((g.label(grp[a]).clone(), g.label(grp[b]).clone(), adjacent));
                }
            }
        }
    }
    twins.sort();
    FoliageReport {
        leaves: leaves.iter().map(|&i| g.label(i).clone()).collect(),
        axils: axils.iter().map(|&i| g.label(i).clone()).collect(),
        twins,
    }
}

/// Some vertex of `alive` that is a leaf or has a twin, preferring small indices.
fn prunable(rows: &[FixedBitSet], alive: &FixedBitSet) -> Option<usize> {
    let mut best: Option<usize> = alive.ones().find(|&i| rows[i].count_ones(..) == 1);
    let mut open: HashMap<&FixedBitSet, usize> = HashMap::new();
    let mut closed: HashMap<FixedBitSet, usize> = HashMap::new();
    for i in alive.ones() {
        if best.is_some_and(|b| b < i) {
            break;
        }
        let mut c = rows[i].clone();
        c.insert(i);
        if let Some(&j) = open.get(&rows[i]).or(closed.get(&c)) {
            best = Some(best.map_or(j, |b| b.min(j)));
            break;
        }
        open.insert(&rows[i], i);
        closed.insert(c, i);
    }
    best
}

/// Recognition by pruning: a connected graph is distance-hereditary iff
/// repeatedly deleting a leaf or one vertex of a twin pair ends at one vertex.
pub fn is_distance_hereditary(g: &LabeledGraph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.n();
    let mut rows: Vec<FixedBitSet> = (0..n).map(|i| g.row(i).clone()).collect();
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    for _ in 1..n {
        let Some(v) = prunable(&rows, &alive) else {
            return Ok(false);
        };
        alive.set(v, false);
        let nb: Vec<usize> = rows[v].ones().collect();
        for u in nb {
            rows[u].set(v, false);
        }
        rows[v].clear();
    }
    Ok(true)
}

/// Definition check: every connected induced subgraph preserves distances.
/// Exponential in the number of vertices; meant for small graphs.
pub fn is_distance_hereditary_by_distances(g: &LabeledGraph) -> bool {
    let n = g.n();
    assert!(n <= 20, "exhaustive check is for small graphs");
    let dist: Vec<Vec<usize>> = (0..n).map(|i| g.bfs_idx(i)).collect();
    for mask in 1u32..(1 << n) {
        let keep: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let h = g.induced_idx(&keep);
        if !h.is_connected() {
            continue;
        }
        for a in 0..keep.len() {
            let d = h.bfs_idx(a);
            for b in a + 1..keep.len() {
                if d[b] != dist[keep[a]][keep[b]] {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GrowthOp {
    Leaf,
    FalseTwin,
    TrueTwin,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthStep {
    pub op: GrowthOp,
    pub anchor: VertexId,
    pub vertex: VertexId,
}

/// Relative weights of leaf, false-twin and true-twin steps.
#[derive(Clone, Copy, Debug)]
pub struct GrowthWeights(pub [f64; 3]);

impl Default for GrowthWeights {
    fn default() -> Self {
        GrowthWeights([1.0, 1.0, 1.0])
    }
}

/// Random connected distance-hereditary graph on `0..n`, grown from a single
/// vertex by leaf and twin additions at uniformly chosen anchors. A false twin
/// of the lone first vertex would disconnect the graph, so that step is taken
/// as a leaf.
pub fn random_dh<R: Rng + ?Sized>(n: usize, rng: &mut R, weights: GrowthWeights) -> (LabeledGraph, Vec<GrowthStep>) {
    let mut g = LabeledGraph::with_size(n);
    let mut trace = Vec::new();
    let dist = WeightedIndex::new(weights.0).expect("weights must be non-negative and not all zero");
    for k in 1..n {
        let a = rng.gen_range(0..k);
        let mut op = [GrowthOp::Leaf, GrowthOp::FalseTwin, GrowthOp::TrueTwin][dist.sample(rng)];
        if op == GrowthOp::FalseTwin && g.degree_idx(a) == 0 {
            op = GrowthOp::Leaf;
        }
        let nb: Vec<usize> = g.neighbors_idx(a).collect();
        match op {
            GrowthOp::Leaf => g.set_edge_idx(k, a, true),
            GrowthOp::FalseTwin | GrowthOp::TrueTwin => {
                for u in nb {
                    g.set_edge_idx(k, u, true);
                }
                if op == GrowthOp::TrueTwin {
                    g.set_edge_idx(k, a, true);
                }
            }
        }
        trace.push(GrowthStep { op, anchor: g.label(a).clone(), vertex: g.label(k).clone() });
    }
    (g, trace)
}

/// Strips foliage vertices outside `keep` while preserving which graphs on
/// `keep` are vertex-minors. Leaves and twins are measured in Z; an axil `v`
/// with leaf `w` gets LC at `v`, LC at `w`, then Z at `v`. The least eligible
/// label goes first. Returns the reduced graph and the prefix moves.
pub fn reduce_instance(g: &LabeledGraph, keep: &[VertexId]) -> Result<(LabeledGraph, Vec<Move>)> {
    for k in keep {
        g.idx(k)?;
    }
    let keep: BTreeSet<&VertexId> = keep.iter().collect();
    let mut cur = g.clone();
    let mut moves = Vec::new();
    loop {
        let rep = foliage(&cur);
        let mut deletable: BTreeSet<VertexId> = rep.leaves.iter().cloned().collect();
        for (u, v, _) in &rep.twins {
            deletable.insert(u.clone());
            deletable.insert(v.clone());
        }
        let del = deletable.into_iter().find(|v| !keep.contains(v));
        let axil = rep.axils.iter().find(|v| !keep.contains(v)).cloned();
        let pick = match (del, axil) {
            (Some(d), Some(a)) if a < d => Err(a),
            (Some(d), _) => Ok(d),
            (None, Some(a)) => Err(a),
            (None, None) => break,
        };
        match pick {
            Ok(v) => {
                cur = cur.delete_vertex(&v)?;
                moves.push(Move::MeasZ { v });
            }
            Err(v) => {
                let w = cur
                    .neighbors(&v)?
                    .into_iter()
                    .find(|w| cur.degree(w).unwrap() == 1)
                    .ok_or_else(|| Error::Internal("axil without leaf".into()))?;
                cur = cur.local_complement(&v)?.local_complement(&w)?.delete_vertex(&v)?;
                moves.push(Move::Lc { v: v.clone() });
                moves.push(Move::Lc { v: w });
                moves.push(Move::MeasZ { v });
            }
        }
    }
    Ok((cur, moves))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{v, vs};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn foliage_of_paw() {
        // triangle 0,1,2 with pendant 3 on 2
        let g = LabeledGraph::from_edge_list([(v(0), v(1)), (v(1), v(2)), (v(0), v(2)), (v(2), v(3))]).unwrap();
        let f = foliage(&g);
        assert_eq!(f.leaves, vs(&[3]));
        assert_eq!(f.axils, vs(&[2]));
        assert_eq!(f.twins, vec![(v(0), v(1), true)]);
    }

    #[test]
    fn c5_is_not_dh_but_c4_is() {
        let c5 = LabeledGraph::cycle(&vs(&[0, 1, 2, 3, 4]));
        assert!(!is_distance_hereditary(&c5).unwrap());
        assert!(!is_distance_hereditary_by_distances(&c5));
        let c4 = LabeledGraph::cycle(&vs(&[0, 1, 2, 3]));
        assert!(is_distance_hereditary(&c4).unwrap());
    }

    #[test]
    fn disconnected_rejected() {
        assert_eq!(is_distance_hereditary(&LabeledGraph::with_size(2)), Err(Error::NotConnected));
    }

    #[test]
    fn random_dh_two_vertices_is_edge() {
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (g, t) = random_dh(2, &mut rng, GrowthWeights([0.0, 1.0, 0.0]));
            assert_eq!(g.edge_count(), 1);
            assert_eq!(t.len(), 1);
        }
    }

    #[test]
    fn random_dh_is_connected_and_dh() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..12 {
            let (g, trace) = random_dh(n, &mut rng, GrowthWeights::default());
            assert_eq!(trace.len(), n.saturating_sub(1));
            assert!(g.is_connected());
            assert!(is_distance_hereditary(&g).unwrap());
            assert!(is_distance_hereditary_by_distances(&g));
        }
    }

    #[test]
    fn reduce_keeps_targets_and_replays() {
        let g = LabeledGraph::path(&vs(&[0, 1, 2, 3, 4, 5]));
        let keep = vs(&[1, 4]);
        let (h, moves) = reduce_instance(&g, &keep).unwrap();
        assert!(h.contains(&v(1)) && h.contains(&v(4)));
        assert_eq!(crate::ops::apply_moves(&g, &moves).unwrap(), h);
        assert!(h.n() < g.n());
    }
}
