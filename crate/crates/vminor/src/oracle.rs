//! Exhaustive reference solvers: LC orbits and brute-force vertex-minor search.

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexId};
use crate::ops::{Move, TransformationPlan};
use std::collections::{HashMap, HashSet, VecDeque};

pub const DEFAULT_LC_CAP: usize = 8;
pub const DEFAULT_BRUTE_BUDGET: u64 = 43_046_721; // 3^16
const DENSE_CAP: usize = 32;

pub(crate) fn lc_mask(rows: &mut [u32], i: usize) {
    let nv = rows[i];
    let mut m = nv;
    while m != 0 {
        let u = m.trailing_zeros() as usize;
        rows[u] ^= nv & !(1 << u);
        m &= m - 1;
    }
}

fn delete_mask(rows: &mut [u32], i: usize) {
    let mut m = rows[i];
    while m != 0 {
        let u = m.trailing_zeros() as usize;
        rows[u] &= !(1 << i);
        m &= m - 1;
    }
    rows[i] = 0;
}

/// Every labeled graph reachable by local complementations, with BFS parents.
pub struct LcOrbit {
    labels: Vec<VertexId>,
    root: Vec<u32>,
    parent: HashMap<Vec<u32>, (Vec<u32>, usize)>,
}

impl LcOrbit {
    pub fn new(g: &LabeledGraph, cap: usize) -> Result<Self> {
        if g.n() > cap.min(DENSE_CAP) {
            return Err(Error::SizeCapExceeded { size: g.n(), cap: cap.min(DENSE_CAP) });
        }
        let root = g.to_masks();
        let mut parent = HashMap::new();
        parent.insert(root.clone(), (root.clone(), usize::MAX));
        let mut q = VecDeque::from([root.clone()]);
        while let Some(cur) = q.pop_front() {
            for i in 0..cur.len() {
                if cur[i] == 0 {
                    continue;
                }
                let mut next = cur.clone();
                lc_mask(&mut next, i);
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), (cur.clone(), i));
                    q.push_back(next);
                }
            }
        }
        Ok(LcOrbit { labels: g.vertices().to_vec(), root, parent })
    }

    pub fn size(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> LabeledGraph {
        LabeledGraph::from_masks(&self.labels, &self.root)
    }

    pub fn contains(&self, g: &LabeledGraph) -> bool {
        g.vertices() == self.labels.as_slice() && self.parent.contains_key(&g.to_masks())
    }

    /// LC sequence turning `g` into the orbit root, if `g` is in the orbit.
    pub fn witness_to_root(&self, g: &LabeledGraph) -> Option<Vec<VertexId>> {
        if g.vertices() != self.labels.as_slice() {
            return None;
        }
        self.witness_masks(&g.to_masks())
            .map(|w| w.into_iter().map(|i| self.labels[i].clone()).collect())
    }

    fn witness_masks(&self, rows: &[u32]) -> Option<Vec<usize>> {
        let mut cur = rows.to_vec();
        let mut out = Vec::new();
        loop {
            let (p, i) = self.parent.get(&cur)?;
            if *i == usize::MAX {
                return Some(out);
            }
            out.push(*i);
            cur = p.clone();
        }
    }

    pub fn members(&self) -> Vec<LabeledGraph> {
        self.parent.keys().map(|r| LabeledGraph::from_masks(&self.labels, r)).collect()
    }

    /// Least adjacency key over the orbit; equal for LC-equivalent graphs.
    pub fn canonical_key(&self) -> Vec<u64> {
        self.parent
            .keys()
            .map(|r| LabeledGraph::from_masks(&self.labels, r).adjacency_key())
            .min()
            .unwrap()
    }
}

pub fn lc_orbit(g: &LabeledGraph, cap: usize) -> Result<LcOrbit> {
    LcOrbit::new(g, cap)
}

/// LC sequence taking `g1` to `g2`, or `None` if they are not LC-equivalent.
pub fn lc_equivalent(g1: &LabeledGraph, g2: &LabeledGraph, cap: usize) -> Result<Option<Vec<VertexId>>> {
    if g1.vertices() != g2.vertices() {
        return Ok(None);
    }
    if g1.n() > cap {
        return Err(Error::SizeCapExceeded { size: g1.n(), cap });
    }
    // isolated vertices stay isolated under LC
    if (0..g1.n()).any(|i| (g1.degree_idx(i) == 0) != (g2.degree_idx(i) == 0)) {
        return Ok(None);
    }
    Ok(LcOrbit::new(g2, cap)?.witness_to_root(g1))
}

#[derive(Clone, Debug)]
pub struct BruteOptions {
    /// Elimination order of the non-target vertices; ascending by default.
    pub order: Option<Vec<VertexId>>,
    pub budget: u64,
    pub lc_cap: usize,
}

impl Default for BruteOptions {
    fn default() -> Self {
        BruteOptions { order: None, budget: DEFAULT_BRUTE_BUDGET, lc_cap: DEFAULT_LC_CAP }
    }
}

struct Search<'a> {
    order: &'a [usize],
    targets: &'a [usize],
    isolated: &'a [usize],
    orbit: &'a LcOrbit,
    seen: HashSet<(usize, Vec<u32>)>,
    trail: Vec<(usize, u8, Option<usize>)>,
}

impl Search<'_> {
    fn restrict(&self, rows: &[u32]) -> Vec<u32> {
        self.targets
            .iter()
            .map(|&t| {
                self.targets
                    .iter()
                    .enumerate()
                    .fold(0u32, |m, (b, &s)| if rows[t] >> s & 1 == 1 { m | 1 << b } else { m })
            })
            .collect()
    }

    fn run(&mut self, depth: usize, rows: Vec<u32>) -> Option<Vec<usize>> {
        if depth == self.order.len() {
            if self.isolated.iter().any(|&i| rows[i] != 0) {
                return None;
            }
            return self.orbit.witness_masks(&self.restrict(&rows));
        }
        if !self.seen.insert((depth, rows.clone())) {
            return None;
        }
        let e = self.order[depth];
        let choices: &[u8] = if rows[e] == 0 { &[2] } else { &[0, 1, 2] };
        for &c in choices {
            let mut next = rows.clone();
            let mut partner = None;
            match c {
                0 => {
                    let p = rows[e].trailing_zeros() as usize;
                    partner = Some(p);
                    lc_mask(&mut next, p);
                    lc_mask(&mut next, e);
                    lc_mask(&mut next, p);
                }
                1 => lc_mask(&mut next, e),
                _ => {}
            }
            delete_mask(&mut next, e);
            self.trail.push((e, c, partner));
            if let Some(w) = self.run(depth + 1, next) {
                return Some(w);
            }
            self.trail.pop();
        }
        None
    }
}

/// Decides whether `target` is a vertex-minor of `g` by trying every Pauli
/// basis on every non-target vertex, then testing LC-equivalence on the
/// targets. Returns a replayable plan when it is.
pub fn vertex_minor_bruteforce(
    g: &LabeledGraph,
    target: &LabeledGraph,
    opts: &BruteOptions,
) -> Result<Option<TransformationPlan>> {
    for t in target.vertices() {
        if !g.contains(t) {
            return Err(Error::InvalidTarget(format!("{t} is not a vertex of the input graph")));
        }
    }
    if g.n() > DENSE_CAP {
        return Err(Error::SizeCapExceeded { size: g.n(), cap: DENSE_CAP });
    }
    let order: Vec<usize> = match &opts.order {
        Some(o) => {
            let idx = o.iter().map(|v| g.idx(v)).collect::<Result<Vec<_>>>()?;
            let mut sorted: Vec<usize> = idx.clone();
            sorted.sort();
            sorted.dedup();
            let expect: Vec<usize> = (0..g.n()).filter(|&i| !target.contains(g.label(i))).collect();
            if sorted != expect || idx.len() != expect.len() {
                return Err(Error::InvalidTarget("elimination order must list each non-target vertex once".into()));
            }
            idx
        }
        None => (0..g.n()).filter(|&i| !target.contains(g.label(i))).collect(),
    };
    let m = order.len() as u32;
    if 3u64.checked_pow(m).is_none_or(|c| c > opts.budget) {
        return Err(Error::BudgetExceeded);
    }
    // LC never changes whether a vertex is isolated, so isolated target
    // vertices are checked directly and kept out of the orbit.
    let iso: Vec<VertexId> =
        (0..target.n()).filter(|&i| target.degree_idx(i) == 0).map(|i| target.label(i).clone()).collect();
    let core_labels: Vec<VertexId> = target.vertices().iter().filter(|v| !iso.contains(v)).cloned().collect();
    let core = target.induced_subgraph(&core_labels)?;
    let orbit = LcOrbit::new(&core, opts.lc_cap)?;
    let targets: Vec<usize> = core_labels.iter().map(|v| g.idx(v)).collect::<Result<_>>()?;
    let isolated: Vec<usize> = iso.iter().map(|v| g.idx(v)).collect::<Result<_>>()?;
    let mut s = Search { order: &order, targets: &targets, isolated: &isolated, orbit: &orbit, seen: HashSet::new(), trail: Vec::new() };
    let Some(witness) = s.run(0, g.to_masks()) else {
        return Ok(None);
    };
    let mut moves = Vec::new();
    for &(e, c, partner) in &s.trail {
        let v = g.label(e).clone();
        moves.push(match c {
            0 => Move::MeasX { v, partner: partner.map(|p| g.label(p).clone()) },
            1 => Move::MeasY { v },
            _ => Move::MeasZ { v },
        });
    }
    for i in witness {
        moves.push(Move::Lc { v: core.label(i).clone() });
    }
    Ok(Some(TransformationPlan::new(moves, g, target.vertices().to_vec())))
}

pub fn is_vertex_minor(g: &LabeledGraph, target: &LabeledGraph) -> Result<bool> {
    Ok(vertex_minor_bruteforce(g, target, &BruteOptions::default())?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{v, vs};

    // Orbit sizes of small labeled graphs, counted by hand: the edge K2 is
    // fixed by LC; P3 and K3 share an orbit of 4 (three stars and the triangle).
    #[test]
    fn small_orbit_sizes() {
        let k2 = LabeledGraph::path(&vs(&[0, 1]));
        assert_eq!(lc_orbit(&k2, 8).unwrap().size(), 1);
        let p3 = LabeledGraph::path(&vs(&[0, 1, 2]));
        assert_eq!(lc_orbit(&p3, 8).unwrap().size(), 4);
        let e3 = LabeledGraph::with_size(3);
        assert_eq!(lc_orbit(&e3, 8).unwrap().size(), 1);
    }

    #[test]
    fn star_orbit_contains_complete_and_all_stars() {
        let s = LabeledGraph::star(v(0), vs(&[1, 2, 3]));
        let o = lc_orbit(&s, 8).unwrap();
        assert!(o.contains(&LabeledGraph::complete(vs(&[0, 1, 2, 3]))));
        for c in 0..4 {
            assert!(o.contains(&LabeledGraph::star(v(c), vs(&[0, 1, 2, 3]))));
        }
        assert_eq!(o.size(), 5);
    }

    #[test]
    fn lc_witness_replays() {
        let c5 = LabeledGraph::cycle(&vs(&[0, 1, 2, 3, 4]));
        let h = c5.local_complement(&v(0)).unwrap().local_complement(&v(2)).unwrap();
        let w = lc_equivalent(&c5, &h, 8).unwrap().unwrap();
        let mut g = c5.clone();
        for x in &w {
            g = g.local_complement(x).unwrap();
        }
        assert_eq!(g, h);
        let p5 = LabeledGraph::path(&vs(&[0, 1, 2, 3, 4]));
        assert_eq!(lc_equivalent(&c5, &p5, 8).unwrap(), None);
    }

    #[test]
    fn cap_enforced() {
        let g = LabeledGraph::cycle(&vs(&[0, 1, 2, 3, 4, 5, 6, 7, 8]));
        assert!(matches!(lc_orbit(&g, 8), Err(Error::SizeCapExceeded { .. })));
    }

    #[test]
    fn p4_contains_star_on_three() {
        let g = LabeledGraph::path(&vs(&[0, 1, 2, 3]));
        let t = LabeledGraph::star(v(0), vs(&[2, 3]));
        let plan = vertex_minor_bruteforce(&g, &t, &BruteOptions::default()).unwrap().unwrap();
        assert_eq!(plan.result_on_targets(&g).unwrap(), t);
    }

    #[test]
    fn edge_is_not_a_vertex_minor_of_disconnected_pair() {
        let g = LabeledGraph::from_edges(vs(&[0, 1, 2, 3]), [(v(0), v(1)), (v(2), v(3))]).unwrap();
        let t = LabeledGraph::path(&vs(&[0, 2]));
        assert!(vertex_minor_bruteforce(&g, &t, &BruteOptions::default()).unwrap().is_none());
    }

    #[test]
    fn isolated_targets_are_checked() {
        let g = LabeledGraph::path(&vs(&[0, 1]));
        let t = LabeledGraph::with_size(2);
        assert!(!is_vertex_minor(&g, &t).unwrap());
        let g3 = LabeledGraph::path(&vs(&[0, 1, 2]));
        let t = LabeledGraph::new(vs(&[0, 2]));
        let plan = vertex_minor_bruteforce(&g3, &t, &BruteOptions::default()).unwrap().unwrap();
        assert_eq!(plan.result_on_targets(&g3).unwrap(), t);
    }

    #[test]
    fn budget_is_distinct() {
        let g = LabeledGraph::path(&vs(&[0, 1, 2, 3, 4]));
        let t = LabeledGraph::path(&vs(&[0, 4]));
        let opts = BruteOptions { budget: 26, ..Default::default() };
        assert_eq!(vertex_minor_bruteforce(&g, &t, &opts).unwrap_err(), Error::BudgetExceeded);
    }

    #[test]
    fn custom_order_must_cover_non_targets() {
        let g = LabeledGraph::path(&vs(&[0, 1, 2, 3]));
        let t = LabeledGraph::path(&vs(&[0, 3]));
        let opts = BruteOptions { order: Some(vs(&[2, 1])), ..Default::default() };
        assert!(vertex_minor_bruteforce(&g, &t, &opts).unwrap().is_some());
        let bad = BruteOptions { order: Some(vs(&[2])), ..Default::default() };
        assert!(vertex_minor_bruteforce(&g, &t, &bad).is_err());
    }
}
