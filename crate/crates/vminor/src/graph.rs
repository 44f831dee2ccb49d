//! Labeled simple graphs with bitset adjacency.

use crate::error::{Error, Result};
use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

/// Vertex label. Integers sort before names; integers compare numerically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexId {
    Num(u64),
    Name(String),
}

impl VertexId {
    /// Label from a token; integer tokens become `Num`.
    pub fn name(s: &str) -> Self {
        s.parse().unwrap_or_else(|_| VertexId::Name(s.to_string()))
    }
}

impl From<u64> for VertexId {
    fn from(v: u64) -> Self {
        VertexId::Num(v)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId::name(s)
    }
}

impl FromStr for VertexId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(Error::Parse(format!("bad vertex label {s:?}")));
        }
        Ok(match s.parse::<u64>() {
            Ok(n) => VertexId::Num(n),
            Err(_) => VertexId::Name(s.to_string()),
        })
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Num(n) => write!(f, "{n}"),
            VertexId::Name(s) => write!(f, "{s}"),
        }
    }
}

impl Serialize for VertexId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            VertexId::Num(n) => s.serialize_u64(*n),
            VertexId::Name(n) => s.serialize_str(n),
        }
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(VertexId::Num(n)),
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Shape of a graph as far as the star/complete targets are concerned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Star(VertexId),
    Complete,
    Other,
}

/// Simple undirected graph on a sorted set of labels.
#[derive(Clone)]
pub struct LabeledGraph {
    labels: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    adj: Vec<FixedBitSet>,
}

impl PartialEq for LabeledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}
impl Eq for LabeledGraph {}

impl Hash for LabeledGraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.labels.hash(state);
        for row in &self.adj {
            row.as_slice().hash(state);
        }
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(f, "Graph{{V={:?}, E=[{}]}}", self.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(), edges.join(" "))
    }
}

impl LabeledGraph {
    /// Edgeless graph on the given labels (duplicates collapse).
    pub fn new<I: IntoIterator<Item = VertexId>>(vertices: I) -> Self {
        let mut labels: Vec<VertexId> = vertices.into_iter().collect();
        labels.sort();
        labels.dedup();
        let n = labels.len();
        let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        LabeledGraph { labels, index, adj: vec![FixedBitSet::with_capacity(n); n] }
    }

    /// Edgeless graph on `0..n`.
    pub fn with_size(n: usize) -> Self {
        Self::new((0..n as u64).map(VertexId::Num))
    }

    pub fn from_edges<I, E>(vertices: I, edges: E) -> Result<Self>
    where
        I: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Self::new(vertices);
        for (u, v) in edges {
            g.add_edge(&u, &v)?;
        }
        Ok(g)
    }

    /// Graph on exactly the endpoints of `edges`.
    pub fn from_edge_list<E>(edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let edges: Vec<_> = edges.into_iter().collect();
        let verts = edges.iter().flat_map(|(u, v)| [u.clone(), v.clone()]).collect::<Vec<_>>();
        Self::from_edges(verts, edges)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &VertexId {
        &self.labels[i]
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.index.contains_key(v)
    }

    pub fn idx(&self, v: &VertexId) -> Result<usize> {
        self.index_of(v).ok_or_else(|| Error::UnknownVertex(v.clone()))
    }

    pub fn add_edge(&mut self, u: &VertexId, v: &VertexId) -> Result<()> {
        let (i, j) = (self.idx(u)?, self.idx(v)?);
        if i == j {
            return Err(Error::SelfLoop(u.clone()));
        }
        self.set_edge_idx(i, j, true);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: &VertexId, v: &VertexId) -> Result<()> {
        let (i, j) = (self.idx(u)?, self.idx(v)?);
        self.set_edge_idx(i, j, false);
        Ok(())
    }

    pub fn set_edge_idx(&mut self, i: usize, j: usize, on: bool) {
        debug_assert!(i != j);
        self.adj[i].set(j, on);
        self.adj[j].set(i, on);
    }

    pub fn has_edge(&self, u: &VertexId, v: &VertexId) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.adj[i].contains(j),
            _ => false,
        }
    }

    pub fn has_edge_idx(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn row(&self, i: usize) -> &FixedBitSet {
        &self.adj[i]
    }

    pub fn degree_idx(&self, i: usize) -> usize {
        self.adj[i].count_ones(..)
    }

    pub fn degree(&self, v: &VertexId) -> Result<usize> {
        Ok(self.degree_idx(self.idx(v)?))
    }

    pub fn neighbors_idx(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].ones()
    }

    /// Neighbors in ascending label order.
    pub fn neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        let i = self.idx(v)?;
        Ok(self.adj[i].ones().map(|j| self.labels[j].clone()).collect())
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.edge_indices()
            .into_iter()
            .map(|(i, j)| (self.labels[i].clone(), self.labels[j].clone()))
            .collect()
    }

    pub fn edge_indices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in self.adj[i].ones() {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// In-place local complementation at vertex index `i`.
    pub fn local_complement_idx(&mut self, i: usize) {
        let nv = self.adj[i].clone();
        for u in nv.ones() {
            self.adj[u].symmetric_difference_with(&nv);
            self.adj[u].set(u, false);
        }
    }

    /// Local complementation: complement the subgraph induced on N(v).
    pub fn local_complement(&self, v: &VertexId) -> Result<Self> {
        let i = self.idx(v)?;
        let mut g = self.clone();
        g.local_complement_idx(i);
        Ok(g)
    }

    /// Pivot along the edge uv, i.e. LC at v, u, v.
    pub fn pivot(&self, u: &VertexId, v: &VertexId) -> Result<Self> {
        let (i, j) = (self.idx(u)?, self.idx(v)?);
        if !self.adj[i].contains(j) {
            return Err(Error::NotAnEdge(u.clone(), v.clone()));
        }
        let mut g = self.clone();
        g.local_complement_idx(j);
        g.local_complement_idx(i);
        g.local_complement_idx(j);
        Ok(g)
    }

    pub fn induced_subgraph(&self, keep: &[VertexId]) -> Result<Self> {
        let mut idx = Vec::with_capacity(keep.len());
        for v in keep {
            idx.push(self.idx(v)?);
        }
        Ok(self.induced_idx(&idx))
    }

    /// Induced subgraph on a set of vertex indices (order irrelevant).
    pub fn induced_idx(&self, keep: &[usize]) -> Self {
        let mut g = Self::new(keep.iter().map(|&i| self.labels[i].clone()));
        let map: Vec<usize> = g.labels.iter().map(|l| self.index[l]).collect();
        for (a, &i) in map.iter().enumerate() {
            for (b, &j) in map.iter().enumerate().skip(a + 1) {
                if self.adj[i].contains(j) {
                    g.set_edge_idx(a, b, true);
                }
            }
        }
        g
    }

    pub fn delete_vertex(&self, v: &VertexId) -> Result<Self> {
        let i = self.idx(v)?;
        let keep: Vec<usize> = (0..self.n()).filter(|&j| j != i).collect();
        Ok(self.induced_idx(&keep))
    }

    pub fn complement(&self) -> Self {
        let mut g = self.clone();
        for i in 0..self.n() {
            g.adj[i].toggle_range(..);
            g.adj[i].set(i, false);
        }
        g
    }

    pub fn star(center: VertexId, leaves: impl IntoIterator<Item = VertexId>) -> Self {
        let leaves: Vec<VertexId> = leaves.into_iter().filter(|l| *l != center).collect();
        let mut g = Self::new(leaves.iter().cloned().chain([center.clone()]));
        let c = g.index[&center];
        for l in &leaves {
            let j = g.index[l];
            g.set_edge_idx(c, j, true);
        }
        g
    }

    pub fn complete(vertices: impl IntoIterator<Item = VertexId>) -> Self {
        Self::new(vertices).complement()
    }

    pub fn path(vertices: &[VertexId]) -> Self {
        let mut g = Self::new(vertices.iter().cloned());
        for w in vertices.windows(2) {
            g.add_edge(&w[0], &w[1]).unwrap();
        }
        g
    }

    pub fn cycle(vertices: &[VertexId]) -> Self {
        let mut g = Self::path(vertices);
        if vertices.len() >= 3 {
            g.add_edge(&vertices[vertices.len() - 1], &vertices[0]).unwrap();
        }
        g
    }

    /// Star if exactly one vertex sees all others and the rest are independent.
    /// Graphs on at most two vertices that are complete report `Complete`.
    pub fn classify(&self) -> Shape {
        let n = self.n();
        let m = self.edge_count();
        if m == n * n.saturating_sub(1) / 2 {
            return Shape::Complete;
        }
        if n >= 3 && m == n - 1 {
            if let Some(c) = (0..n).find(|&i| self.degree_idx(i) == n - 1) {
                return Shape::Star(self.labels[c].clone());
            }
        }
        Shape::Other
    }

    pub fn is_star(&self) -> bool {
        matches!(self.classify(), Shape::Star(_)) || (self.n() <= 2 && self.classify() == Shape::Complete)
    }

    /// BFS distances from index `s`; `usize::MAX` marks unreachable.
    pub fn bfs_idx(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for y in self.adj[x].ones() {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: &VertexId, v: &VertexId) -> Result<Option<usize>> {
        let (i, j) = (self.idx(u)?, self.idx(v)?);
        let d = self.bfs_idx(i)[j];
        Ok((d != usize::MAX).then_some(d))
    }

    /// Shortest path from `s` to `t` as indices; neighbors are scanned in
    /// ascending order so the path is deterministic.
    pub fn shortest_path_idx(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n()];
        parent[s] = s;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            if x == t {
                break;
            }
            for y in self.adj[x].ones() {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    q.push_back(y);
                }
            }
        }
        if parent[t] == usize::MAX {
            return None;
        }
        let mut path = vec![t];
        while *path.last().unwrap() != s {
            path.push(parent[*path.last().unwrap()]);
        }
        path.reverse();
        Some(path)
    }

    pub fn shortest_path(&self, u: &VertexId, v: &VertexId) -> Result<Option<Vec<VertexId>>> {
        let (i, j) = (self.idx(u)?, self.idx(v)?);
        Ok(self
            .shortest_path_idx(i, j)
            .map(|p| p.into_iter().map(|k| self.labels[k].clone()).collect()))
    }

    /// Components as sorted index lists, ordered by least member.
    pub fn components_idx(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let d = self.bfs_idx(s);
            let comp: Vec<usize> = (0..self.n()).filter(|&i| d[i] != usize::MAX).collect();
            for &i in &comp {
                seen[i] = true;
            }
            out.push(comp);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        self.components_idx()
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.labels[i].clone()).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.bfs_idx(0).iter().all(|&d| d != usize::MAX)
    }

    /// Articulation points in ascending order.
    pub fn cut_vertices(&self) -> Vec<VertexId> {
        let n = self.n();
        let base = self.components_idx().len();
        (0..n)
            .filter(|&i| {
                let keep: Vec<usize> = (0..n).filter(|&j| j != i).collect();
                self.induced_idx(&keep).components_idx().len() > base - usize::from(self.degree_idx(i) == 0)
            })
            .map(|i| self.labels[i].clone())
            .collect()
    }

    /// Upper-triangle adjacency bits, row-major. Used as a hashable key.
    pub fn adjacency_key(&self) -> Vec<u64> {
        let n = self.n();
        let mut key = vec![0u64; (n * n).div_ceil(64).max(1)];
        let mut bit = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                if self.adj[i].contains(j) {
                    key[bit / 64] |= 1 << (bit % 64);
                }
                bit += 1;
            }
        }
        key
    }

    /// Rows as `u32` masks; requires at most 32 vertices.
    pub fn to_masks(&self) -> Vec<u32> {
        assert!(self.n() <= 32);
        self.adj
            .iter()
            .map(|r| r.ones().fold(0u32, |m, j| m | (1 << j)))
            .collect()
    }

    pub fn from_masks(labels: &[VertexId], rows: &[u32]) -> Self {
        let mut g = Self::new(labels.iter().cloned());
        assert_eq!(g.labels.as_slice(), labels, "labels must be sorted and distinct");
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..labels.len() {
                if j != i && r >> j & 1 == 1 {
                    g.adj[i].insert(j);
                }
            }
        }
        g
    }

    /// Relabel vertices through `f`; `f` must be injective.
    pub fn relabel(&self, f: impl Fn(&VertexId) -> VertexId) -> Self {
        let new: Vec<VertexId> = self.labels.iter().map(&f).collect();
        let mut g = Self::new(new.iter().cloned());
        for (i, j) in self.edge_indices() {
            let (a, b) = (g.index[&new[i]], g.index[&new[j]]);
            g.set_edge_idx(a, b, true);
        }
        g
    }
}

/// Shorthand for numeric labels.
pub fn v(n: u64) -> VertexId {
    VertexId::Num(n)
}

pub fn vs(ns: &[u64]) -> Vec<VertexId> {
    ns.iter().map(|&n| VertexId::Num(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> LabeledGraph {
        LabeledGraph::path(&vs(&[0, 1, 2, 3]))
    }

    #[test]
    fn labels_sort_numbers_before_names() {
        let mut ls = vec![VertexId::name("b"), v(10), v(2), VertexId::name("a")];
        ls.sort();
        assert_eq!(ls, vec![v(2), v(10), VertexId::name("a"), VertexId::name("b")]);
    }

    #[test]
    fn local_complement_on_path_center() {
        let g = LabeledGraph::path(&vs(&[0, 1, 2]));
        let h = g.local_complement(&v(1)).unwrap();
        assert!(h.has_edge(&v(0), &v(2)));
        assert_eq!(h.classify(), Shape::Complete);
        assert_eq!(h.local_complement(&v(1)).unwrap(), g);
    }

    #[test]
    fn star_and_complete_swap_under_center_lc() {
        let s = LabeledGraph::star(v(0), vs(&[1, 2, 3]));
        assert_eq!(s.classify(), Shape::Star(v(0)));
        let k = s.local_complement(&v(0)).unwrap();
        assert_eq!(k.classify(), Shape::Complete);
        assert_eq!(k.local_complement(&v(2)).unwrap().classify(), Shape::Star(v(2)));
    }

    #[test]
    fn pivot_requires_edge() {
        let g = path4();
        assert!(matches!(g.pivot(&v(0), &v(2)), Err(Error::NotAnEdge(..))));
        let h = g.pivot(&v(1), &v(2)).unwrap();
        assert_eq!(h, g.pivot(&v(2), &v(1)).unwrap());
        // 0 and 3 lie in the two private neighborhoods, so their edge toggles
        // and the labels 1, 2 trade places
        let expect = LabeledGraph::from_edge_list([(v(0), v(2)), (v(2), v(1)), (v(1), v(3)), (v(0), v(3))]).unwrap();
        assert_eq!(h, expect);
    }

    #[test]
    fn shortest_path_and_components() {
        let g = path4();
        assert_eq!(g.shortest_path(&v(0), &v(3)).unwrap().unwrap(), vs(&[0, 1, 2, 3]));
        assert_eq!(g.distance(&v(0), &v(3)).unwrap(), Some(3));
        assert_eq!(g.cut_vertices(), vs(&[1, 2]));
        let h = g.delete_vertex(&v(1)).unwrap();
        assert_eq!(h.connected_components(), vec![vs(&[0]), vs(&[2, 3])]);
        assert!(!h.is_connected());
    }

    #[test]
    fn classify_edge_cases() {
        assert_eq!(LabeledGraph::with_size(1).classify(), Shape::Complete);
        assert_eq!(LabeledGraph::with_size(2).classify(), Shape::Other);
        assert_eq!(path4().classify(), Shape::Other);
        assert!(LabeledGraph::path(&vs(&[0, 1])).is_star());
    }

    #[test]
    fn masks_roundtrip() {
        let g = path4();
        assert_eq!(LabeledGraph::from_masks(g.vertices(), &g.to_masks()), g);
    }

    #[test]
    fn vertex_id_json() {
        let ids = vec![v(3), VertexId::name("x")];
        let s = serde_json::to_string(&ids).unwrap();
        assert_eq!(s, r#"[3,"x"]"#);
        let back: Vec<VertexId> = serde_json::from_str(r#"[3,"x","7"]"#).unwrap();
        assert_eq!(back, vec![v(3), VertexId::name("x"), v(7)]);
    }
}
