//! Deciding whether a 4-regular multigraph has a tour that passes `k` marked
//! vertices in the same order twice, by splitting each marked vertex in two
//! and routing edge-disjoint paths between the halves.

use crate::circle::{EulerianTour, MultiGraph};
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::soet::{is_soet, SoetWitness};

pub const DEFAULT_MAX_MARKED: usize = 5;
pub const DEFAULT_STEP_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug)]
pub struct KSoetOptions {
    pub max_marked: usize,
    /// Total path-search steps across all splittings and orders.
    pub step_budget: u64,
    /// Skip splittings that differ only by swapping every a/b label.
    pub dedup: bool,
}

impl Default for KSoetOptions {
    fn default() -> Self {
        KSoetOptions { max_marked: DEFAULT_MAX_MARKED, step_budget: DEFAULT_STEP_BUDGET, dedup: true }
    }
}

const PAIRINGS: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];

/// Each marked vertex replaced by two degree-two vertices `v/a` and `v/b`.
/// Edge order matches the original graph, so edge indices carry over.
#[derive(Clone, Debug)]
pub struct SoetSplitting {
    pub graph: MultiGraph,
    /// Per marked vertex: which of the three half-edge pairings, and whether
    /// the a/b labels are swapped.
    pub choice: Vec<(usize, bool)>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    /// Original vertex index for every vertex of the split graph.
    pub origin: Vec<usize>,
}

pub fn split_label(v: &VertexId, side: char) -> VertexId {
    VertexId::Name(format!("{v}/{side}"))
}

fn build_splitting(f: &MultiGraph, marked: &[usize], choice: &[(usize, bool)]) -> SoetSplitting {
    // side of every half-edge at a marked vertex
    let mut side: std::collections::HashMap<(usize, u8), char> = std::collections::HashMap::new();
    for (k, &x) in marked.iter().enumerate() {
        let h = f.half_edges(x);
        let (c, swap) = choice[k];
        let p = PAIRINGS[c];
        let (s1, s2) = if swap { ('b', 'a') } else { ('a', 'b') };
        side.insert(h[p[0]], s1);
        side.insert(h[p[1]], s1);
        side.insert(h[p[2]], s2);
        side.insert(h[p[3]], s2);
    }
    let end_label = |e: usize, end: u8| -> VertexId {
        let x = f.endpoint(e, end);
        match side.get(&(e, end)) {
            Some(&s) => split_label(f.label(x), s),
            None => f.label(x).clone(),
        }
    };
    let edges: Vec<(u64, VertexId, VertexId)> =
        f.edges().iter().enumerate().map(|(e, ed)| (ed.id, end_label(e, 0), end_label(e, 1))).collect();
    let mut labels: Vec<VertexId> =
        (0..f.n()).filter(|x| !marked.contains(x)).map(|x| f.label(x).clone()).collect();
    for &x in marked {
        labels.push(split_label(f.label(x), 'a'));
        labels.push(split_label(f.label(x), 'b'));
    }
    let graph = MultiGraph::new(labels, &edges).unwrap();
    let a = marked.iter().map(|&x| graph.idx(&split_label(f.label(x), 'a')).unwrap()).collect();
    let b = marked.iter().map(|&x| graph.idx(&split_label(f.label(x), 'b')).unwrap()).collect();
    let mut origin = vec![0; graph.n()];
    for x in 0..f.n() {
        if marked.contains(&x) {
            origin[graph.idx(&split_label(f.label(x), 'a')).unwrap()] = x;
            origin[graph.idx(&split_label(f.label(x), 'b')).unwrap()] = x;
        } else {
            origin[graph.idx(f.label(x)).unwrap()] = x;
        }
    }
    SoetSplitting { graph, choice: choice.to_vec(), a, b, origin }
}

/// All splittings of the marked vertices: 6 per vertex, or `3 * 6^(k-1)`
/// with `dedup`, since swapping every a/b label maps SOETs to SOETs.
pub fn soet_splittings(f: &MultiGraph, marked: &[VertexId], dedup: bool) -> Result<Vec<SoetSplitting>> {
    f.require_four_regular()?;
    let idx = marked_indices(f, marked)?;
    let k = idx.len();
    let mut out = Vec::new();
    let mut choice = vec![(0usize, false); k];
    let per = |i: usize| if dedup && i == 0 { 3 } else { 6 };
    let mut code = vec![0usize; k];
    loop {
        for i in 0..k {
            choice[i] = if per(i) == 3 { (code[i], false) } else { (code[i] / 2, code[i] % 2 == 1) };
        }
        out.push(build_splitting(f, &idx, &choice));
        let mut i = 0;
        while i < k && code[i] + 1 == per(i) {
            code[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
        code[i] += 1;
    }
    Ok(out)
}

fn marked_indices(f: &MultiGraph, marked: &[VertexId]) -> Result<Vec<usize>> {
    let mut idx: Vec<usize> = marked.iter().map(|v| f.idx(v)).collect::<Result<_>>()?;
    idx.sort();
    idx.dedup();
    Ok(idx)
}

struct PathSearch<'a> {
    g: &'a MultiGraph,
    used: Vec<bool>,
    steps: u64,
    budget: u64,
}

impl PathSearch<'_> {
    fn reachable(&self, s: usize, t: usize) -> bool {
        let mut seen = vec![false; self.g.n()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            if x == t && x != s {
                return true;
            }
            for &(e, _) in self.g.half_edges(x) {
                if self.used[e] {
                    continue;
                }
                let y = self.g.other_end(e, x);
                if y == t {
                    return true;
                }
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    /// Edge-disjoint paths for `pairs[i..]`; a pair `(s, s)` asks for a cycle.
    fn solve(&mut self, pairs: &[(usize, usize)], i: usize, out: &mut Vec<Vec<usize>>) -> Result<bool> {
        if i == pairs.len() {
            return Ok(true);
        }
        if pairs[i..].iter().any(|&(s, t)| !self.reachable(s, t)) {
            return Ok(false);
        }
        let (s, t) = pairs[i];
        let mut on_path = vec![false; self.g.n()];
        on_path[s] = true;
        let mut path = Vec::new();
        self.extend(pairs, i, s, t, &mut on_path, &mut path, out)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &mut self,
        pairs: &[(usize, usize)],
        i: usize,
        x: usize,
        t: usize,
        on_path: &mut Vec<bool>,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<bool> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::BudgetExceeded);
        }
        let mut tried: Vec<usize> = Vec::new();
        let half: Vec<usize> = self.g.half_edges(x).iter().map(|&(e, _)| e).collect();
        for e in half {
            if self.used[e] {
                continue;
            }
            let y = self.g.other_end(e, x);
            // parallel unused edges are interchangeable
            if tried.contains(&y) {
                continue;
            }
            tried.push(y);
            if y != t && on_path[y] {
                continue;
            }
            self.used[e] = true;
            path.push(e);
            if y == t {
                out.push(path.clone());
                if self.solve(pairs, i + 1, out)? {
                    return Ok(true);
                }
                out.pop();
            } else {
                on_path[y] = true;
                if self.extend(pairs, i, y, t, on_path, path, out)? {
                    return Ok(true);
                }
                on_path[y] = false;
            }
            path.pop();
            self.used[e] = false;
        }
        Ok(false)
    }
}

/// Edge-disjoint simple paths joining each pair, as edge lists from the first
/// vertex of the pair; `Ok(None)` if none exist.
pub fn disjoint_paths(g: &MultiGraph, pairs: &[(usize, usize)], budget: u64) -> Result<Option<Vec<Vec<usize>>>> {
    let mut s = PathSearch { g, used: vec![false; g.edge_count()], steps: 0, budget };
    let mut out = Vec::new();
    Ok(s.solve(pairs, 0, &mut out)?.then_some(out))
}

/// Closed trail through every unused edge reachable from `start`, marking
/// them used. Steps are `(vertex, edge leaving it)`.
fn closed_trail(g: &MultiGraph, start: usize, used: &mut [bool]) -> Vec<(usize, usize)> {
    let mut stack: Vec<(usize, usize)> = vec![(start, usize::MAX)];
    let mut circuit = Vec::new();
    while let Some(&(x, ein)) = stack.last() {
        if let Some(&(e, _)) = g.half_edges(x).iter().find(|&&(e, _)| !used[e]) {
            used[e] = true;
            stack.push((g.other_end(e, x), e));
        } else {
            stack.pop();
            circuit.push((x, ein));
        }
    }
    circuit.reverse();
    // circuit: (start, -), (x1, e1), ..., (start, em); re-pair as leaving edges
    let mut out = Vec::new();
    for w in circuit.windows(2) {
        out.push((w[0].0, w[1].1));
    }
    out
}

/// Joins the a-paths and b-paths into one trail of the original graph and
/// splices the remaining edges in as closed sub-trails.
fn stitch(f: &MultiGraph, sp: &SoetSplitting, paths: &[Vec<usize>], starts: &[usize]) -> Result<EulerianTour> {
    let mut steps: Vec<(usize, usize)> = Vec::new();
    let mut used = vec![false; f.edge_count()];
    for (p, &s) in paths.iter().zip(starts) {
        let mut x = s;
        for &e in p {
            steps.push((sp.origin[x], e));
            used[e] = true;
            x = sp.graph.other_end(e, x);
        }
    }
    while let Some(pos) = steps.iter().position(|&(x, _)| f.half_edges(x).iter().any(|&(e, _)| !used[e])) {
        let x = steps[pos].0;
        let sub = closed_trail(f, x, &mut used);
        steps.splice(pos..pos, sub);
    }
    if used.iter().any(|&u| !u) {
        return Err(Error::Internal("leftover edges unreachable from the stitched trail".into()));
    }
    let t = EulerianTour { verts: steps.iter().map(|s| s.0).collect(), edges: steps.iter().map(|s| s.1).collect() };
    t.validate(f)?;
    Ok(t)
}

/// Cyclic orders of `0..k` with 0 first and, for `k >= 3`, the second entry
/// below the last: the routing problem is the same for an order and its
/// reversal.
fn cyclic_orders(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut rest: Vec<usize> = (1..k).collect();
    let mut out = Vec::new();
    loop {
        if k < 3 || rest[0] < rest[k - 2] {
            out.push(std::iter::once(0).chain(rest.iter().copied()).collect());
        }
        if !crate::circle::next_permutation(&mut rest) {
            break;
        }
    }
    out
}

/// Routes the `2k` paths of one splitting for one cyclic order.
fn try_order(f: &MultiGraph, sp: &SoetSplitting, order: &[usize], budget: u64) -> Result<(Option<EulerianTour>, u64)> {
    let k = order.len();
    let mut pairs = Vec::with_capacity(2 * k);
    for side in [&sp.a, &sp.b] {
        for i in 0..k {
            pairs.push((side[order[i]], side[order[(i + 1) % k]]));
        }
    }
    let mut s = PathSearch { g: &sp.graph, used: vec![false; sp.graph.edge_count()], steps: 0, budget };
    let mut out = Vec::new();
    let found = s.solve(&pairs, 0, &mut out)?;
    if !found {
        return Ok((None, s.steps));
    }
    let starts: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    Ok((Some(stitch(f, sp, &out, &starts)?), s.steps))
}

/// Searches for a tour of `f` that is a SOET on `marked`, trying every
/// splitting and cyclic order. `BudgetExceeded` means no answer either way.
pub fn k_soet(f: &MultiGraph, marked: &[VertexId], opts: &KSoetOptions) -> Result<Option<SoetWitness>> {
    f.require_four_regular()?;
    let idx = marked_indices(f, marked)?;
    let k = idx.len();
    if k > opts.max_marked {
        return Err(Error::BudgetExceeded);
    }
    let labels: Vec<VertexId> = idx.iter().map(|&x| f.label(x).clone()).collect();
    if k == 0 {
        let t = crate::circle::eulerian_tour(f)?;
        return Ok(Some(SoetWitness { tour: t, order: vec![] }));
    }
    let mut remaining = opts.step_budget;
    for sp in soet_splittings(f, &labels, opts.dedup)? {
        for order in cyclic_orders(k) {
            let (t, used) = match try_order(f, &sp, &order, remaining) {
                Err(Error::BudgetExceeded) => return Err(Error::BudgetExceeded),
                r => r?,
            };
            remaining -= used.min(remaining);
            if let Some(t) = t {
                let w = is_soet(f, &t, &labels)?
                    .ok_or_else(|| Error::Internal("stitched tour is not a SOET".into()))?;
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// SOET with a prescribed cyclic order of the marked vertices, if any.
pub fn k_soet_with_order(f: &MultiGraph, order: &[VertexId], opts: &KSoetOptions) -> Result<Option<SoetWitness>> {
    f.require_four_regular()?;
    let mut sorted = order.to_vec();
    sorted.sort();
    let pos: Vec<usize> = order.iter().map(|v| sorted.binary_search(v).unwrap()).collect();
    let mut remaining = opts.step_budget;
    for sp in soet_splittings(f, &sorted, opts.dedup)? {
        let (t, used) = try_order(f, &sp, &pos, remaining)?;
        remaining -= used.min(remaining);
        if let Some(t) = t {
            return is_soet(f, &t, &sorted);
        }
    }
    Ok(None)
}

/// Reference answer: enumerate every tour class and test each.
pub fn soet_exhaustive(f: &MultiGraph, marked: &[VertexId], max_vertices: usize) -> Result<Option<SoetWitness>> {
    for t in crate::circle::enumerate_tours(f, max_vertices)? {
        if let Some(w) = is_soet(f, &t, marked)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{multigraph_from_word, DoubleOccurrenceWord};

    fn word_graph(s: &str) -> MultiGraph {
        multigraph_from_word(&DoubleOccurrenceWord::parse(s).unwrap()).0
    }

    #[test]
    fn splitting_counts() {
        let f = word_graph("abcabc");
        let m: Vec<VertexId> = ["a", "b"].iter().map(|s| VertexId::name(s)).collect();
        assert_eq!(soet_splittings(&f, &m, false).unwrap().len(), 36);
        assert_eq!(soet_splittings(&f, &m, true).unwrap().len(), 18);
        assert_eq!(soet_splittings(&f, &m[..1], true).unwrap().len(), 3);
        for sp in soet_splittings(&f, &m, true).unwrap() {
            for &x in sp.a.iter().chain(&sp.b) {
                assert_eq!(sp.graph.degree(x), 2);
            }
        }
    }

    #[test]
    fn cyclic_order_counts() {
        assert_eq!(cyclic_orders(1).len(), 1);
        assert_eq!(cyclic_orders(2).len(), 1);
        assert_eq!(cyclic_orders(3).len(), 1);
        assert_eq!(cyclic_orders(4).len(), 3);
        assert_eq!(cyclic_orders(5).len(), 12);
    }

    #[test]
    fn word_soet_found() {
        // abcabc already reads s s for s = abc
        let f = word_graph("abcabc");
        let m: Vec<VertexId> = ["a", "b", "c"].iter().map(|s| VertexId::name(s)).collect();
        let w = k_soet(&f, &m, &KSoetOptions::default()).unwrap().unwrap();
        assert_eq!(w.order.len(), 3);
    }

    #[test]
    fn too_many_marked_is_budget() {
        let f = word_graph("abcdaebced");
        let m = f.vertices().to_vec();
        let opts = KSoetOptions { max_marked: 4, ..Default::default() };
        assert_eq!(k_soet(&f, &m, &opts).unwrap_err(), Error::BudgetExceeded);
    }

    #[test]
    fn disjoint_paths_basics() {
        let f = word_graph("abab");
        // four parallel a-b edges carry at most four edge-disjoint a-b paths
        assert!(disjoint_paths(&f, &[(0, 1); 4], 1000).unwrap().is_some());
        assert!(disjoint_paths(&f, &[(0, 1); 5], 1000).unwrap().is_none());
    }
}
