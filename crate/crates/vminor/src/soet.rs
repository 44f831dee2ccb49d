//! Tours whose marked vertices read `s s` for a sequence `s`, and the
//! triangular expansion of cubic graphs that ties them to Hamiltonicity.

use crate::circle::{eulerian_tour, EulerianTour, MultiGraph};
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexId};
use crate::ops::{Move, TransformationPlan};
use serde::Serialize;
use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};

/// A tour together with the order `s` in which it passes the marked vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoetWitness {
    pub tour: EulerianTour,
    pub order: Vec<VertexId>,
}

fn marked_positions(g: &MultiGraph, tour: &EulerianTour, marked: &[VertexId]) -> Result<Vec<usize>> {
    let idx: HashSet<usize> = marked.iter().map(|v| g.idx(v)).collect::<Result<_>>()?;
    Ok((0..tour.verts.len()).filter(|&i| idx.contains(&tour.verts[i])).collect())
}

/// Whether the marked letters of the tour's word read `s s`.
pub fn is_soet(g: &MultiGraph, tour: &EulerianTour, marked: &[VertexId]) -> Result<Option<SoetWitness>> {
    let mut uniq = marked.to_vec();
    uniq.sort();
    uniq.dedup();
    let pos = marked_positions(g, tour, &uniq)?;
    let k = uniq.len();
    if pos.len() != 2 * k {
        return Ok(None);
    }
    let w: Vec<usize> = pos.iter().map(|&p| tour.verts[p]).collect();
    if (0..k).any(|i| w[i] != w[i + k]) {
        return Ok(None);
    }
    Ok(Some(SoetWitness { tour: tour.clone(), order: w[..k].iter().map(|&i| g.label(i).clone()).collect() }))
}

/// The stretch of a tour strictly between two cyclically consecutive marked
/// visits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subword {
    pub from: VertexId,
    pub to: VertexId,
    /// Tour positions strictly between the two marked visits.
    pub positions: Vec<usize>,
}

/// All `2k` maximal sub-words, starting after the first marked visit.
pub fn maximal_subwords(g: &MultiGraph, tour: &EulerianTour, marked: &[VertexId]) -> Result<Vec<Subword>> {
    let pos = marked_positions(g, tour, marked)?;
    let m = tour.verts.len();
    let r = pos.len();
    Ok((0..r)
        .map(|t| {
            let (a, b) = (pos[t], pos[(t + 1) % r]);
            let len = (b + m - a) % m;
            let len = if len == 0 { m } else { len };
            Subword {
                from: g.label(tour.verts[a]).clone(),
                to: g.label(tour.verts[b]).clone(),
                positions: (1..len).map(|s| (a + s) % m).collect(),
            }
        })
        .collect())
}

/// Pairs `(s_i, s_{i+1})` of a SOET, including the wrap `(s_k, s_1)`.
pub fn consecutive_pairs(w: &SoetWitness) -> Vec<(VertexId, VertexId)> {
    let k = w.order.len();
    (0..k).map(|i| (w.order[i].clone(), w.order[(i + 1) % k].clone())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Role {
    Original(VertexId),
    /// `v^(w)`: the corner of v's triangle facing neighbor w.
    Outer { at: VertexId, toward: VertexId },
    /// `ṽ^(w)`: inner vertex of v's triangle next to the corner facing w.
    Inner { at: VertexId, toward: VertexId },
}

/// Replaces each vertex of a cubic graph by a small 4-regular gadget; each
/// original edge becomes a double edge between gadget corners.
#[derive(Clone, Debug)]
pub struct TriangularExpansion {
    pub cubic: LabeledGraph,
    pub graph: MultiGraph,
    pub roles: HashMap<VertexId, Role>,
}

pub fn outer_label(v: &VertexId, w: &VertexId) -> VertexId {
    VertexId::Name(format!("{v}^{w}"))
}

pub fn inner_label(v: &VertexId, w: &VertexId) -> VertexId {
    VertexId::Name(format!("{v}~{w}"))
}

fn require_cubic(r: &LabeledGraph) -> Result<()> {
    if (0..r.n()).any(|i| r.degree_idx(i) != 3) {
        return Err(Error::NotCubic);
    }
    Ok(())
}

pub fn triangular_expansion(r: &LabeledGraph) -> Result<TriangularExpansion> {
    require_cubic(r)?;
    let mut roles = HashMap::new();
    let mut edges: Vec<(u64, VertexId, VertexId)> = Vec::new();
    let push = |a: &VertexId, b: &VertexId, edges: &mut Vec<(u64, VertexId, VertexId)>| {
        edges.push((edges.len() as u64, a.clone(), b.clone()));
    };
    for v in r.vertices() {
        let nb = r.neighbors(v)?;
        let (j, j2, jh) = (&nb[0], &nb[1], &nb[2]);
        let (ij, ij2) = (inner_label(v, j), inner_label(v, j2));
        let (oj, oj2, ojh) = (outer_label(v, j), outer_label(v, j2), outer_label(v, jh));
        roles.insert(v.clone(), Role::Original(v.clone()));
        for w in &nb {
            roles.insert(outer_label(v, w), Role::Outer { at: v.clone(), toward: w.clone() });
        }
        for w in [j, j2] {
            roles.insert(inner_label(v, w), Role::Inner { at: v.clone(), toward: w.clone() });
        }
        for (a, b) in [
            (v, &ij),
            (v, &ij2),
            (v, &oj),
            (v, &oj2),
            (&ij, &ij2),
            (&oj, &ij),
            (&oj2, &ij2),
            (&ojh, &ij),
            (&ojh, &ij2),
        ] {
            push(a, b, &mut edges);
        }
    }
    for (v, w) in r.edges() {
        for _ in 0..2 {
            push(&outer_label(&v, &w), &outer_label(&w, &v), &mut edges);
        }
    }
    let graph = MultiGraph::new(roles.keys().cloned(), &edges)?;
    Ok(TriangularExpansion { cubic: r.clone(), graph, roles })
}

/// A Hamiltonian cycle by backtracking from the least vertex, or `None`.
pub fn hamiltonian_cycle(r: &LabeledGraph) -> Option<Vec<VertexId>> {
    let n = r.n();
    if n < 3 {
        return None;
    }
    fn go(r: &LabeledGraph, path: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = r.n();
        let last = *path.last().unwrap();
        if path.len() == n {
            return r.has_edge_idx(last, path[0]);
        }
        let nb: Vec<usize> = r.neighbors_idx(last).collect();
        for y in nb {
            if !used[y] {
                used[y] = true;
                path.push(y);
                if go(r, path, used) {
                    return true;
                }
                path.pop();
                used[y] = false;
            }
        }
        false
    }
    let mut path = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    go(r, &mut path, &mut used).then(|| path.into_iter().map(|i| r.label(i).clone()).collect())
}

fn check_cycle(r: &LabeledGraph, cycle: &[VertexId]) -> Result<()> {
    let n = r.n();
    let set: BTreeSet<&VertexId> = cycle.iter().collect();
    if cycle.len() != n || set.len() != n || cycle.iter().any(|v| !r.contains(v)) {
        return Err(Error::NotHamiltonianCycle("must list every vertex once".into()));
    }
    for i in 0..n {
        let (a, b) = (&cycle[i], &cycle[(i + 1) % n]);
        if !r.has_edge(a, b) {
            return Err(Error::NotHamiltonianCycle(format!("{a} and {b} are not adjacent")));
        }
    }
    Ok(())
}

/// The two trails through `v`'s gadget, from the corner facing `p` to the
/// corner facing `nx`, where `h` is the third neighbor. Together they use the
/// nine gadget edges and each passes `v` once.
fn gadget_trails(r: &LabeledGraph, v: &VertexId, p: &VertexId, nx: &VertexId) -> Result<[Vec<VertexId>; 2]> {
    let nb = r.neighbors(v)?;
    let h = nb.iter().find(|x| *x != p && *x != nx).unwrap();
    let o = |w: &VertexId| outer_label(v, w);
    let i = |w: &VertexId| inner_label(v, w);
    let hat = &nb[2];
    Ok(if hat == h {
        [vec![o(p), i(p), o(h), i(nx), v.clone(), o(nx)], vec![o(p), v.clone(), i(p), i(nx), o(nx)]]
    } else if hat == nx {
        [vec![o(p), v.clone(), o(h), i(h), o(nx)], vec![o(p), i(p), v.clone(), i(h), i(p), o(nx)]]
    } else {
        [vec![o(p), i(h), o(h), v.clone(), o(nx)], vec![o(p), i(nx), i(h), v.clone(), i(nx), o(nx)]]
    })
}

/// Tour of the closed vertex sequence `seq`, choosing the lowest unused edge
/// between consecutive vertices.
pub fn tour_from_sequence(g: &MultiGraph, seq: &[VertexId]) -> Result<EulerianTour> {
    let m = seq.len();
    let verts: Vec<usize> = seq.iter().map(|v| g.idx(v)).collect::<Result<_>>()?;
    let mut used = vec![false; g.edge_count()];
    let mut edges = Vec::with_capacity(m);
    for t in 0..m {
        let (a, b) = (verts[t], verts[(t + 1) % m]);
        let e = g
            .half_edges(a)
            .iter()
            .map(|&(e, _)| e)
            .find(|&e| !used[e] && g.other_end(e, a) == b)
            .ok_or_else(|| Error::InvalidTour(format!("no unused edge {} - {}", seq[t], seq[(t + 1) % m])))?;
        used[e] = true;
        edges.push(e);
    }
    let t = EulerianTour { verts, edges };
    t.validate(g)?;
    Ok(t)
}

/// A tour of the expansion that passes the original vertices as `s s`, where
/// `s` follows the given Hamiltonian cycle, and whose consecutive pairs are
/// all edges of the cubic graph.
pub fn soet_from_hamiltonian(exp: &TriangularExpansion, cycle: &[VertexId]) -> Result<EulerianTour> {
    let r = &exp.cubic;
    check_cycle(r, cycle)?;
    let n = cycle.len();
    let mut halves: [Vec<VertexId>; 2] = [Vec::new(), Vec::new()];
    for (k, v) in cycle.iter().enumerate() {
        let p = &cycle[(k + n - 1) % n];
        let nx = &cycle[(k + 1) % n];
        let [a, b] = gadget_trails(r, v, p, nx)?;
        halves[0].extend(a);
        halves[1].extend(b);
    }
    let mut seq: Vec<VertexId> = halves.concat();
    // chords: bounce across the doubled edge at the first visit of the corner
    let on_cycle: HashSet<(VertexId, VertexId)> =
        (0..n).map(|k| (cycle[k].clone(), cycle[(k + 1) % n].clone())).collect();
    let mut done: HashSet<(VertexId, VertexId)> = HashSet::new();
    let mut out = Vec::with_capacity(seq.len() + 2 * n);
    for x in seq.drain(..) {
        out.push(x.clone());
        if let Some(Role::Outer { at, toward }) = exp.roles.get(&x) {
            let key = if at < toward { (at.clone(), toward.clone()) } else { (toward.clone(), at.clone()) };
            let chord = !on_cycle.contains(&(at.clone(), toward.clone())) && !on_cycle.contains(&(toward.clone(), at.clone()));
            if chord && done.insert(key) {
                out.push(outer_label(toward, at));
                out.push(x.clone());
            }
        }
    }
    let tour = tour_from_sequence(&exp.graph, &out)?;
    let originals: Vec<VertexId> = r.vertices().to_vec();
    if is_soet(&exp.graph, &tour, &originals)?.is_none() {
        return Err(Error::Internal("constructed tour is not a SOET".into()));
    }
    Ok(tour)
}

/// Whether the tour is a SOET on the originals whose consecutive pairs are
/// all edges of the cubic graph.
pub fn is_hamsoet(exp: &TriangularExpansion, tour: &EulerianTour) -> Result<bool> {
    Ok(match is_soet(&exp.graph, tour, exp.cubic.vertices())? {
        Some(w) => bad_pairs(exp, &w).is_empty(),
        None => false,
    })
}

fn bad_pairs(exp: &TriangularExpansion, w: &SoetWitness) -> BTreeSet<(VertexId, VertexId)> {
    consecutive_pairs(w)
        .into_iter()
        .filter(|(a, b)| !exp.cubic.has_edge(a, b))
        .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
        .collect()
}

/// A maximal sub-word that enters the gadget of `at` and leaves it without
/// touching `at` itself. `via` lists the neighbors whose double edges it
/// crosses, in order; the skip is true when it leaves toward a different
/// neighbor than it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkipReport {
    pub subword: usize,
    pub from: VertexId,
    pub to: VertexId,
    pub at: VertexId,
    pub via: Vec<VertexId>,
    pub true_skip: bool,
}

/// Skips of every maximal sub-word of a SOET on the originals.
pub fn detect_skips(exp: &TriangularExpansion, tour: &EulerianTour) -> Result<Vec<SkipReport>> {
    let g = &exp.graph;
    let originals = exp.cubic.vertices();
    if is_soet(g, tour, originals)?.is_none() {
        return Err(Error::NotSoet);
    }
    let m = tour.verts.len();
    let mut out = Vec::new();
    for (si, sw) in maximal_subwords(g, tour, originals)?.into_iter().enumerate() {
        let mut crossings: Vec<(VertexId, VertexId)> = Vec::new();
        for &p in &sw.positions {
            let q = (p + 1) % m;
            if !sw.positions.contains(&q) {
                continue;
            }
            let (a, b) = (g.label(tour.verts[p]), g.label(tour.verts[q]));
            if let (Some(Role::Outer { at: a1, toward: a2 }), Some(Role::Outer { at: b1, .. })) =
                (exp.roles.get(a), exp.roles.get(b))
            {
                if a1 != b1 {
                    // crossing a double edge: out of a1's gadget into a2's
                    crossings.push((a2.clone(), a1.clone()));
                }
            }
        }
        for w in originals {
            if *w == sw.from || *w == sw.to {
                continue;
            }
            let via: Vec<VertexId> = crossings.iter().filter(|(into, _)| into == w).map(|(_, x)| x.clone()).collect();
            let exits: Vec<VertexId> =
                crossings.iter().filter(|(_, from)| from == w).map(|(into, _)| into.clone()).collect();
            if via.is_empty() || exits.is_empty() {
                continue;
            }
            let true_skip = via.iter().zip(&exits).any(|(a, b)| a != b);
            let mut path = Vec::new();
            for (a, b) in via.iter().zip(&exits) {
                path.push(a.clone());
                path.push(b.clone());
            }
            out.push(SkipReport { subword: si, from: sw.from.clone(), to: sw.to.clone(), at: w.clone(), via: path, true_skip });
        }
    }
    Ok(out)
}

/// Rewrites a SOET on the originals into one whose consecutive pairs are all
/// edges of the cubic graph. Each non-adjacent pair `(u, v)` has two sub-words
/// that truly skip gadgets `s` and `s'`; two κ-transforms at the corners where
/// those sub-words enter and leave the skipped gadgets swap the order so that
/// the pair is split by the skipped vertex. Configurations outside this
/// template are reported as malformed.
pub fn hamsoet_normalize(exp: &TriangularExpansion, tour: &EulerianTour) -> Result<EulerianTour> {
    let g = &exp.graph;
    let originals = exp.cubic.vertices();
    let mut cur = tour.clone();
    loop {
        let w = is_soet(g, &cur, originals)?.ok_or(Error::NotSoet)?;
        let bad = bad_pairs(exp, &w);
        let Some((u, v)) = bad.iter().next().cloned() else {
            return Ok(cur);
        };
        let skips = detect_skips(exp, &cur)?;
        let on_pair: Vec<&SkipReport> = skips
            .iter()
            .filter(|s| s.true_skip && ((s.from == u && s.to == v) || (s.from == v && s.to == u)))
            .collect();
        let mut cands: Vec<VertexId> = on_pair.iter().map(|s| s.at.clone()).collect();
        cands.sort();
        cands.dedup();
        if cands.is_empty() {
            return Err(Error::MalformedWitness(format!("pair ({u}, {v}) is not adjacent but has no true skip")));
        }
        let mut next = None;
        'search: for s1 in &cands {
            for s2 in &cands {
                for (a, b) in [(&u, &v), (&v, &u)] {
                    let options = [
                        [outer_label(b, s1), outer_label(s2, a)],
                        [outer_label(s1, a), outer_label(b, s2)],
                    ];
                    for [x, y] in options {
                        for (p, q) in [(&x, &y), (&y, &x)] {
                            let Ok(t1) = cur.kappa(g, p) else { continue };
                            let Ok(t2) = t1.kappa(g, q) else { continue };
                            if let Some(w2) = is_soet(g, &t2, originals)? {
                                let nb = bad_pairs(exp, &w2);
                                if nb.len() < bad.len() && nb.is_subset(&bad) {
                                    next = Some(t2);
                                    break 'search;
                                }
                            }
                        }
                    }
                }
            }
        }
        match next {
            Some(t) => cur = t,
            None => {
                return Err(Error::MalformedWitness(format!(
                    "no template move clears the pair ({u}, {v}) skipping {cands:?}"
                )))
            }
        }
    }
}

/// Reads a Hamiltonian cycle off a tour whose consecutive pairs are edges.
pub fn hamiltonian_cycle_from_hamsoet(exp: &TriangularExpansion, tour: &EulerianTour) -> Result<Vec<VertexId>> {
    let w = is_soet(&exp.graph, tour, exp.cubic.vertices())?.ok_or(Error::NotSoet)?;
    if !bad_pairs(exp, &w).is_empty() {
        return Err(Error::MalformedWitness("tour has non-adjacent consecutive pairs".into()));
    }
    check_cycle(&exp.cubic, &w.order)?;
    Ok(w.order)
}

/// Star vertex-minor instance equivalent to Hamiltonicity of a cubic graph:
/// the alternance graph of a fixed tour of the expansion, targets = originals.
#[derive(Clone, Debug)]
pub struct CubHamInstance {
    pub graph: LabeledGraph,
    pub targets: Vec<VertexId>,
    pub expansion: TriangularExpansion,
    pub base_tour: EulerianTour,
}

pub fn reduce_cubham_to_starvm(r: &LabeledGraph) -> Result<CubHamInstance> {
    let expansion = triangular_expansion(r)?;
    let base_tour = eulerian_tour(&expansion.graph)?;
    let graph = base_tour.alternance_graph(&expansion.graph)?;
    Ok(CubHamInstance { graph, targets: r.vertices().to_vec(), expansion, base_tour })
}

/// Sequence of vertices whose κ-transforms take `from` to a tour equivalent
/// to `to`. Best-first search on the number of vertices with differing
/// transitions; gives up after `budget` expanded tours.
pub fn kappa_path(g: &MultiGraph, from: &EulerianTour, to: &EulerianTour, budget: usize) -> Result<Vec<VertexId>> {
    let goal = to.canonical_key();
    let target = to.transitions(g);
    let diff = |t: &EulerianTour| t.transitions(g).iter().zip(&target).filter(|(a, b)| a != b).count();
    let mut parent: HashMap<Vec<(usize, usize)>, (Vec<(usize, usize)>, usize)> = HashMap::new();
    let start = from.canonical_key();
    parent.insert(start.clone(), (Vec::new(), usize::MAX));
    let mut heap = BinaryHeap::new();
    let mut tours: HashMap<Vec<(usize, usize)>, EulerianTour> = HashMap::new();
    heap.push(Reverse((diff(from), 0usize, start.clone())));
    tours.insert(start, from.clone());
    let mut expanded = 0;
    while let Some(Reverse((_, depth, key))) = heap.pop() {
        if key == goal {
            let mut path = Vec::new();
            let mut k = key;
            loop {
                let (p, x) = parent[&k].clone();
                if x == usize::MAX {
                    break;
                }
                path.push(g.label(x).clone());
                k = p;
            }
            path.reverse();
            return Ok(path);
        }
        expanded += 1;
        if expanded > budget {
            return Err(Error::BudgetExceeded);
        }
        let t = tours[&key].clone();
        for x in 0..g.n() {
            let nt = t.kappa_idx(x);
            let nk = nt.canonical_key();
            if parent.contains_key(&nk) {
                continue;
            }
            parent.insert(nk.clone(), (key.clone(), x));
            heap.push(Reverse((diff(&nt), depth + 1, nk.clone())));
            tours.insert(nk, nt);
        }
    }
    Err(Error::Internal("tours are not κ-connected".into()))
}

/// Plan on the reduced instance derived from a SOET on the originals: the
/// κ-path from the base tour becomes LCs, everything else is measured in Z,
/// which leaves a complete graph on the targets, and one more LC turns it into
/// a star.
pub fn plan_from_soet(inst: &CubHamInstance, soet: &EulerianTour, budget: usize) -> Result<TransformationPlan> {
    let g = &inst.expansion.graph;
    if is_soet(g, soet, &inst.targets)?.is_none() {
        return Err(Error::NotSoet);
    }
    let path = kappa_path(g, &inst.base_tour, soet, budget)?;
    let mut moves: Vec<Move> = path.into_iter().map(|v| Move::Lc { v }).collect();
    let keep: BTreeSet<&VertexId> = inst.targets.iter().collect();
    for v in inst.graph.vertices() {
        if !keep.contains(v) {
            moves.push(Move::MeasZ { v: v.clone() });
        }
    }
    if inst.targets.len() > 2 {
        moves.push(Move::Lc { v: inst.targets[0].clone() });
    }
    Ok(TransformationPlan::new(moves, &inst.graph, inst.targets.clone()))
}

pub fn k4() -> LabeledGraph {
    LabeledGraph::complete((0..4).map(VertexId::Num))
}

pub fn k33() -> LabeledGraph {
    let mut g = LabeledGraph::with_size(6);
    for a in 0..3 {
        for b in 3..6 {
            g.set_edge_idx(a, b, true);
        }
    }
    g
}

/// Triangular prism: two triangles joined by a matching.
pub fn prism() -> LabeledGraph {
    let e = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)];
    LabeledGraph::from_edge_list(e.iter().map(|&(a, b)| (VertexId::Num(a), VertexId::Num(b)))).unwrap()
}

pub fn petersen() -> LabeledGraph {
    let mut e = Vec::new();
    for i in 0..5u64 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    LabeledGraph::from_edge_list(e.into_iter().map(|(a, b)| (VertexId::Num(a), VertexId::Num(b)))).unwrap()
}

/// Cubic graph with a bridge, hence not Hamiltonian: two copies of K4 minus
/// an edge whose degree-two vertices attach to the two ends of the bridge.
pub fn bridged_cubic() -> LabeledGraph {
    let e = [
        (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
        (4, 6), (4, 7), (5, 6), (5, 7), (6, 7),
        (8, 0), (8, 1), (9, 4), (9, 5), (8, 9),
    ];
    LabeledGraph::from_edge_list(e.iter().map(|&(a, b)| (VertexId::Num(a), VertexId::Num(b)))).unwrap()
}

/// Random simple cubic graph on `n` (even) vertices by the pairing model with
/// rejection.
pub fn random_cubic<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> LabeledGraph {
    use rand::seq::SliceRandom;
    assert!(n >= 4 && n % 2 == 0);
    'retry: loop {
        let mut pts: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
        pts.shuffle(rng);
        let mut g = LabeledGraph::with_size(n);
        for c in pts.chunks(2) {
            if c[0] == c[1] || g.has_edge_idx(c[0], c[1]) {
                continue 'retry;
            }
            g.set_edge_idx(c[0], c[1], true);
        }
        return g;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_sizes() {
        for r in [k4(), k33(), prism(), petersen()] {
            let e = triangular_expansion(&r).unwrap();
            assert_eq!(e.graph.n(), 6 * r.n());
            assert_eq!(e.graph.edge_count(), 2 * r.edge_count() + 9 * r.n());
            assert!(e.graph.is_four_regular() && e.graph.is_connected());
        }
    }

    #[test]
    fn non_cubic_rejected() {
        assert_eq!(triangular_expansion(&LabeledGraph::cycle(&crate::graph::vs(&[0, 1, 2]))).unwrap_err(), Error::NotCubic);
    }

    #[test]
    fn hamiltonicity_of_fixtures() {
        assert!(hamiltonian_cycle(&k4()).is_some());
        assert!(hamiltonian_cycle(&k33()).is_some());
        assert!(hamiltonian_cycle(&prism()).is_some());
        assert!(hamiltonian_cycle(&petersen()).is_none());
        assert!(hamiltonian_cycle(&bridged_cubic()).is_none());
    }

    #[test]
    fn hamsoet_from_cycle() {
        for r in [k4(), k33(), prism()] {
            let e = triangular_expansion(&r).unwrap();
            let c = hamiltonian_cycle(&r).unwrap();
            let t = soet_from_hamiltonian(&e, &c).unwrap();
            assert!(is_hamsoet(&e, &t).unwrap());
            let back = hamiltonian_cycle_from_hamsoet(&e, &t).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn bad_cycle_rejected() {
        let e = triangular_expansion(&k33()).unwrap();
        let bad = crate::graph::vs(&[0, 1, 2, 3, 4, 5]);
        assert!(matches!(soet_from_hamiltonian(&e, &bad), Err(Error::NotHamiltonianCycle(_))));
    }
}
