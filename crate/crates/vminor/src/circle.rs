//! Double occurrence words, 4-regular multigraphs and their Eulerian tours.

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexId};
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

/// A cyclic word in which every letter occurs exactly twice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DoubleOccurrenceWord {
    letters: Vec<VertexId>,
}

impl DoubleOccurrenceWord {
    pub fn new(letters: Vec<VertexId>) -> Result<Self> {
        let mut count: BTreeMap<&VertexId, usize> = BTreeMap::new();
        for l in &letters {
            *count.entry(l).or_default() += 1;
        }
        if let Some((l, c)) = count.iter().find(|(_, &c)| c != 2) {
            return Err(Error::MalformedWord(format!("letter {l} occurs {c} times")));
        }
        Ok(DoubleOccurrenceWord { letters })
    }

    /// Whitespace-separated tokens, or single characters when the text has no
    /// whitespace.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let letters = if s.contains(char::is_whitespace) {
            s.split_whitespace().map(VertexId::name).collect()
        } else {
            s.chars().map(|c| VertexId::name(&c.to_string())).collect()
        };
        Self::new(letters)
    }

    pub fn letters(&self) -> &[VertexId] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Distinct letters, sorted.
    pub fn alphabet(&self) -> Vec<VertexId> {
        let mut a = self.letters.clone();
        a.sort();
        a.dedup();
        a
    }

    pub fn positions(&self, v: &VertexId) -> Result<(usize, usize)> {
        let mut it = self.letters.iter().enumerate().filter(|(_, l)| *l == v).map(|(i, _)| i);
        match (it.next(), it.next()) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::UnknownLetter(v.clone())),
        }
    }

    fn all_positions(&self) -> HashMap<&VertexId, (usize, usize)> {
        let mut pos: HashMap<&VertexId, (usize, usize)> = HashMap::new();
        for (i, l) in self.letters.iter().enumerate() {
            pos.entry(l).and_modify(|p| p.1 = i).or_insert((i, usize::MAX));
        }
        pos
    }

    /// Graph joining letters whose occurrences interleave.
    pub fn alternance_graph(&self) -> LabeledGraph {
        let alphabet = self.alphabet();
        let mut g = LabeledGraph::new(alphabet.iter().cloned());
        let pos = self.all_positions();
        for (a, u) in alphabet.iter().enumerate() {
            let (p1, p2) = pos[u];
            for v in &alphabet[a + 1..] {
                let (q1, q2) = pos[v];
                let inside = |q: usize| p1 < q && q < p2;
                if inside(q1) != inside(q2) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    /// Reverses the sub-word strictly between the two occurrences of `v`.
    pub fn local_complement(&self, v: &VertexId) -> Result<Self> {
        let (p1, p2) = self.positions(v)?;
        let mut letters = self.letters.clone();
        letters[p1 + 1..p2].reverse();
        Ok(DoubleOccurrenceWord { letters })
    }

    pub fn delete(&self, v: &VertexId) -> Result<Self> {
        self.positions(v)?;
        Ok(DoubleOccurrenceWord { letters: self.letters.iter().filter(|l| *l != v).cloned().collect() })
    }

    /// Keeps only the letters in `keep`.
    pub fn induce(&self, keep: &[VertexId]) -> Self {
        DoubleOccurrenceWord { letters: self.letters.iter().filter(|l| keep.contains(l)).cloned().collect() }
    }

    /// Least rotation or reflection.
    pub fn canonical(&self) -> Vec<VertexId> {
        let n = self.letters.len();
        let mut best = self.letters.clone();
        let mut rev = self.letters.clone();
        rev.reverse();
        for w in [&self.letters, &rev] {
            for r in 0..n {
                let cand: Vec<VertexId> = w[r..].iter().chain(&w[..r]).cloned().collect();
                if cand < best {
                    best = cand;
                }
            }
        }
        best
    }

    /// Equal up to rotation and reflection.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }
}

impl fmt::Display for DoubleOccurrenceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let short = self.letters.iter().all(|l| l.to_string().chars().count() == 1);
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(if short { "" } else { " " }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiEdge {
    pub id: u64,
    pub u: usize,
    pub v: usize,
}

/// Undirected multigraph with self-loops. Edge ids are caller-provided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    edges: Vec<MultiEdge>,
    incidence: Vec<Vec<(usize, u8)>>,
}

impl MultiGraph {
    pub fn new(vertices: impl IntoIterator<Item = VertexId>, edges: &[(u64, VertexId, VertexId)]) -> Result<Self> {
        let mut vs: Vec<VertexId> = vertices.into_iter().collect();
        for (_, a, b) in edges {
            vs.push(a.clone());
            vs.push(b.clone());
        }
        vs.sort();
        vs.dedup();
        let index: HashMap<VertexId, usize> = vs.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let mut seen = HashSet::new();
        let mut es = Vec::with_capacity(edges.len());
        let mut incidence = vec![Vec::new(); vs.len()];
        for (k, (id, a, b)) in edges.iter().enumerate() {
            if !seen.insert(*id) {
                return Err(Error::Parse(format!("duplicate edge id {id}")));
            }
            let (u, v) = (index[a], index[b]);
            es.push(MultiEdge { id: *id, u, v });
            incidence[u].push((k, 0));
            incidence[v].push((k, 1));
        }
        Ok(MultiGraph { vertices: vs, index, edges: es, incidence })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[MultiEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, i: usize) -> &VertexId {
        &self.vertices[i]
    }

    pub fn idx(&self, v: &VertexId) -> Result<usize> {
        self.index.get(v).copied().ok_or_else(|| Error::UnknownVertex(v.clone()))
    }

    /// Half-edges `(edge index, end)` at vertex `i`; a loop contributes both ends.
    pub fn half_edges(&self, i: usize) -> &[(usize, u8)] {
        &self.incidence[i]
    }

    pub fn endpoint(&self, e: usize, end: u8) -> usize {
        if end == 0 {
            self.edges[e].u
        } else {
            self.edges[e].v
        }
    }

    pub fn other_end(&self, e: usize, from: usize) -> usize {
        let ed = &self.edges[e];
        if ed.u == from {
            ed.v
        } else {
            ed.u
        }
    }

    pub fn degree(&self, i: usize) -> usize {
        self.incidence[i].len()
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        seen[0] = true;
        let mut q = VecDeque::from([0]);
        while let Some(x) = q.pop_front() {
            for &(e, _) in &self.incidence[x] {
                let y = self.other_end(e, x);
                if !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_four_regular(&self) -> bool {
        (0..self.n()).all(|i| self.degree(i) == 4)
    }

    pub fn is_eulerian(&self) -> bool {
        self.is_connected() && (0..self.n()).all(|i| self.degree(i) % 2 == 0)
    }

    pub fn require_four_regular(&self) -> Result<()> {
        if !self.is_four_regular() {
            return Err(Error::NotFourRegular);
        }
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(())
    }

    /// Edge count between `a` and `b` (loops when `a == b`).
    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        self.edges.iter().filter(|e| (e.u == a && e.v == b) || (e.u == b && e.v == a)).count()
    }
}

/// Closed walk `verts[0] e0 verts[1] e1 ... verts[m-1] e_{m-1}` using every
/// edge once; `edges[i]` joins `verts[i]` and `verts[i+1]` (cyclically).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EulerianTour {
    pub verts: Vec<usize>,
    pub edges: Vec<usize>,
}

impl EulerianTour {
    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        let m = g.edge_count();
        if self.verts.len() != m || self.edges.len() != m {
            return Err(Error::InvalidTour(format!("length {} for {m} edges", self.edges.len())));
        }
        let mut used = vec![false; m];
        for i in 0..m {
            let e = self.edges[i];
            if e >= m || std::mem::replace(&mut used[e], true) {
                return Err(Error::InvalidTour(format!("edge index {e} repeated or unknown")));
            }
            let (a, b) = (self.verts[i], self.verts[(i + 1) % m]);
            let ed = &g.edges[e];
            if !((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a)) {
                return Err(Error::InvalidTour(format!("edge {} does not join consecutive vertices", ed.id)));
            }
        }
        Ok(())
    }

    /// Vertex sequence as labels.
    pub fn word(&self, g: &MultiGraph) -> Vec<VertexId> {
        self.verts.iter().map(|&i| g.label(i).clone()).collect()
    }

    /// The double occurrence word of a tour of a 4-regular multigraph.
    pub fn dow(&self, g: &MultiGraph) -> Result<DoubleOccurrenceWord> {
        DoubleOccurrenceWord::new(self.word(g))
    }

    pub fn alternance_graph(&self, g: &MultiGraph) -> Result<LabeledGraph> {
        Ok(self.dow(g)?.alternance_graph())
    }

    /// Reverses the closed sub-trail between the first two visits of `v`.
    /// The word of the result is the word of `self` locally complemented at `v`.
    pub fn kappa(&self, g: &MultiGraph, v: &VertexId) -> Result<Self> {
        let x = g.idx(v)?;
        let mut occ = self.verts.iter().enumerate().filter(|(_, &y)| y == x).map(|(i, _)| i);
        let (Some(i), Some(j)) = (occ.next(), occ.next()) else {
            return Err(Error::UnknownLetter(v.clone()));
        };
        let mut t = self.clone();
        t.verts[i..=j].reverse();
        t.edges[i..j].reverse();
        Ok(t)
    }

    pub fn kappa_idx(&self, x: usize) -> Self {
        let mut occ = self.verts.iter().enumerate().filter(|(_, &y)| y == x).map(|(i, _)| i);
        let (i, j) = (occ.next().unwrap(), occ.next().unwrap());
        let mut t = self.clone();
        t.verts[i..=j].reverse();
        t.edges[i..j].reverse();
        t
    }

    /// Least `(vertex, edge)` step sequence over rotations and reversals.
    pub fn canonical_key(&self) -> Vec<(usize, usize)> {
        let m = self.verts.len();
        let mut best: Option<Vec<(usize, usize)>> = None;
        for r in 0..m {
            let fwd: Vec<(usize, usize)> = (0..m).map(|s| (self.verts[(r + s) % m], self.edges[(r + s) % m])).collect();
            let bwd: Vec<(usize, usize)> =
                (0..m).map(|s| (self.verts[(r + m - s) % m], self.edges[(r + 2 * m - s - 1) % m])).collect();
            for c in [fwd, bwd] {
                if best.as_ref().is_none_or(|b| c < *b) {
                    best = Some(c);
                }
            }
        }
        best.unwrap_or_default()
    }

    pub fn equivalent(&self, other: &Self) -> bool {
        self.canonical_key() == other.canonical_key()
    }

    /// Pairing of half-edges at every vertex visit; determines the tour up to
    /// rotation and reversal.
    pub fn transitions(&self, g: &MultiGraph) -> Vec<Vec<[(usize, u8); 2]>> {
        let m = self.verts.len();
        let mut out = vec![Vec::new(); g.n()];
        for i in 0..m {
            let x = self.verts[i];
            let ein = self.edges[(i + m - 1) % m];
            let eout = self.edges[i];
            let hin = half_at(g, ein, x);
            let hout = half_at(g, eout, x);
            let mut pair = [hin, hout];
            pair.sort();
            out[x].push(pair);
        }
        for t in &mut out {
            t.sort();
        }
        out
    }
}

/// The end of edge `e` sitting at `x`. Both ends of a loop map to end 0, since
/// a tour cannot tell them apart.
fn half_at(g: &MultiGraph, e: usize, x: usize) -> (usize, u8) {
    let ed = &g.edges[e];
    if ed.u == ed.v || ed.u == x {
        (e, 0)
    } else {
        (e, 1)
    }
}

/// Hierholzer's algorithm from the least vertex, edges tried in id order.
pub fn eulerian_tour(g: &MultiGraph) -> Result<EulerianTour> {
    if !g.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    if g.edge_count() == 0 {
        return Ok(EulerianTour { verts: vec![], edges: vec![] });
    }
    let mut inc: Vec<Vec<usize>> = (0..g.n()).map(|i| g.half_edges(i).iter().map(|&(e, _)| e).collect()).collect();
    for l in &mut inc {
        l.sort_by_key(|&e| (g.edges[e].id, e));
        l.dedup();
    }
    let mut used = vec![false; g.edge_count()];
    let mut ptr = vec![0usize; g.n()];
    let mut stack: Vec<(usize, usize)> = vec![(0, usize::MAX)];
    let mut circuit = Vec::new();
    while let Some(&(x, ein)) = stack.last() {
        while ptr[x] < inc[x].len() && used[inc[x][ptr[x]]] {
            ptr[x] += 1;
        }
        if ptr[x] < inc[x].len() {
            let e = inc[x][ptr[x]];
            used[e] = true;
            stack.push((g.other_end(e, x), e));
        } else {
            stack.pop();
            circuit.push((x, ein));
        }
    }
    circuit.reverse();
    let m = g.edge_count();
    let verts: Vec<usize> = circuit[..m].iter().map(|&(x, _)| x).collect();
    let edges: Vec<usize> = circuit[1..].iter().map(|&(_, e)| e).collect();
    let t = EulerianTour { verts, edges };
    t.validate(g)?;
    Ok(t)
}

/// The 4-regular multigraph whose edges join cyclically consecutive letters,
/// with the tour that reads the word back. Edge `i` joins letters `i`, `i+1`.
pub fn multigraph_from_word(w: &DoubleOccurrenceWord) -> (MultiGraph, EulerianTour) {
    let l = w.letters();
    let n = l.len();
    let edges: Vec<(u64, VertexId, VertexId)> =
        (0..n).map(|i| (i as u64, l[i].clone(), l[(i + 1) % n].clone())).collect();
    let g = MultiGraph::new(l.iter().cloned(), &edges).unwrap();
    let verts = l.iter().map(|x| g.idx(x).unwrap()).collect();
    (g, EulerianTour { verts, edges: (0..n).collect() })
}

/// Follows a transition system (a pairing of the four half-edges at each
/// vertex) and returns the tour if it is a single closed trail.
fn tour_from_pairing(g: &MultiGraph, pairing: &[[usize; 4]]) -> Option<EulerianTour> {
    let m = g.edge_count();
    // partner[(e, end)] -> (e', end') at the same vertex
    let mut partner: HashMap<(usize, u8), (usize, u8)> = HashMap::new();
    for (x, p) in pairing.iter().enumerate() {
        let h = g.half_edges(x);
        partner.insert(h[p[0]], h[p[1]]);
        partner.insert(h[p[1]], h[p[0]]);
        partner.insert(h[p[2]], h[p[3]]);
        partner.insert(h[p[3]], h[p[2]]);
    }
    let (e0, end0) = g.half_edges(0)[0];
    let mut verts = Vec::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    let mut cur = (e0, end0);
    loop {
        // leave through `cur`
        let (e, end) = cur;
        verts.push(g.endpoint(e, end));
        edges.push(e);
        let arrive = (e, 1 - end);
        cur = partner[&arrive];
        if cur == (e0, end0) {
            break;
        }
        if edges.len() > m {
            return None;
        }
    }
    (edges.len() == m).then_some(EulerianTour { verts, edges })
}

const PAIRINGS: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];

/// Every Eulerian tour of a connected 4-regular multigraph, one per
/// equivalence class, in a deterministic order.
pub fn enumerate_tours(g: &MultiGraph, max_vertices: usize) -> Result<Vec<EulerianTour>> {
    g.require_four_regular()?;
    if g.n() > max_vertices {
        return Err(Error::SizeCapExceeded { size: g.n(), cap: max_vertices });
    }
    let n = g.n();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut choice = vec![0usize; n];
    loop {
        let pairing: Vec<[usize; 4]> = choice.iter().map(|&c| PAIRINGS[c]).collect();
        if let Some(t) = tour_from_pairing(g, &pairing) {
            if seen.insert(t.canonical_key()) {
                out.push(t);
            }
        }
        let mut k = 0;
        while k < n && choice[k] == 2 {
            choice[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
        choice[k] += 1;
    }
    Ok(out)
}

/// Whether every tour class is reachable from every other by κ-transforms.
pub fn kappa_connected(g: &MultiGraph, tours: &[EulerianTour]) -> bool {
    if tours.is_empty() {
        return true;
    }
    let keys: HashMap<Vec<(usize, usize)>, usize> =
        tours.iter().enumerate().map(|(i, t)| (t.canonical_key(), i)).collect();
    let mut seen = vec![false; tours.len()];
    seen[0] = true;
    let mut q = VecDeque::from([0usize]);
    while let Some(i) = q.pop_front() {
        for x in 0..g.n() {
            let t = tours[i].kappa_idx(x);
            if let Some(&j) = keys.get(&t.canonical_key()) {
                if !seen[j] {
                    seen[j] = true;
                    q.push_back(j);
                }
            } else {
                return false;
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Connected 4-regular multigraphs (loops allowed) on `n` vertices, one per
/// isomorphism class, labeled `0..n`.
pub fn four_regular_multigraphs(n: usize) -> Vec<MultiGraph> {
    assert!((1..=6).contains(&n));
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut found: HashMap<Vec<usize>, (Vec<usize>, Vec<usize>)> = HashMap::new();
    let mut mult = vec![0usize; pairs.len()];
    let mut deg = vec![0usize; n];
    fn rec(
        k: usize,
        pairs: &[(usize, usize)],
        mult: &mut Vec<usize>,
        deg: &mut Vec<usize>,
        n: usize,
        found: &mut HashMap<Vec<usize>, (Vec<usize>, Vec<usize>)>,
    ) {
        if k == pairs.len() {
            if deg.iter().any(|&d| d % 2 == 1) {
                return;
            }
            let loops: Vec<usize> = deg.iter().map(|&d| (4 - d) / 2).collect();
            let key = iso_key(n, pairs, mult, &loops);
            found.entry(key).or_insert_with(|| (mult.clone(), loops));
            return;
        }
        let (i, j) = pairs[k];
        let room = (4 - deg[i]).min(4 - deg[j]);
        for m in 0..=room {
            mult[k] = m;
            deg[i] += m;
            deg[j] += m;
            rec(k + 1, pairs, mult, deg, n, found);
            deg[i] -= m;
            deg[j] -= m;
        }
        mult[k] = 0;
    }
    rec(0, &pairs, &mut mult, &mut deg, n, &mut found);
    let mut out: Vec<(Vec<usize>, MultiGraph)> = found
        .into_iter()
        .map(|(key, (mult, loops))| {
            let mut edges = Vec::new();
            let lab = |i: usize| VertexId::Num(i as u64);
            for (k, &(i, j)) in pairs.iter().enumerate() {
                for _ in 0..mult[k] {
                    edges.push((edges.len() as u64, lab(i), lab(j)));
                }
            }
            for (i, &l) in loops.iter().enumerate() {
                for _ in 0..l {
                    edges.push((edges.len() as u64, lab(i), lab(i)));
                }
            }
            (key, MultiGraph::new((0..n).map(lab), &edges).unwrap())
        })
        .filter(|(_, g)| g.is_connected())
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, g)| g).collect()
}

fn iso_key(n: usize, pairs: &[(usize, usize)], mult: &[usize], loops: &[usize]) -> Vec<usize> {
    let mut m = vec![vec![0usize; n]; n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        m[i][j] = mult[k];
        m[j][i] = mult[k];
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<usize>> = None;
    loop {
        let mut key: Vec<usize> = perm.iter().map(|&p| loops[p]).collect();
        for a in 0..n {
            for b in a + 1..n {
                key.push(m[perm[a]][perm[b]]);
            }
        }
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
