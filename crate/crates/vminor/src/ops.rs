//! Measurements, moves and transformation plans.

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    X,
    Y,
    Z,
}

/// One step of a plan. Serialized as `{"op": "LC"|"MX"|"MY"|"MZ", "v": .., "partner": ..}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op")]
pub enum Move {
    #[serde(rename = "LC")]
    Lc { v: VertexId },
    #[serde(rename = "MX")]
    MeasX {
        v: VertexId,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        partner: Option<VertexId>,
    },
    #[serde(rename = "MY")]
    MeasY { v: VertexId },
    #[serde(rename = "MZ")]
    MeasZ { v: VertexId },
}

impl Move {
    pub fn lc(v: impl Into<VertexId>) -> Self {
        Move::Lc { v: v.into() }
    }

    pub fn vertex(&self) -> &VertexId {
        match self {
            Move::Lc { v } | Move::MeasX { v, .. } | Move::MeasY { v } | Move::MeasZ { v } => v,
        }
    }

    pub fn basis(&self) -> Option<Basis> {
        match self {
            Move::Lc { .. } => None,
            Move::MeasX { .. } => Some(Basis::X),
            Move::MeasY { .. } => Some(Basis::Y),
            Move::MeasZ { .. } => Some(Basis::Z),
        }
    }

    pub fn is_measurement(&self) -> bool {
        !matches!(self, Move::Lc { .. })
    }
}

/// Graph transformation of a Pauli measurement on vertex `v`, outcome ignored.
/// For X the partner defaults to the least neighbor of `v`.
pub fn measure(g: &LabeledGraph, v: &VertexId, basis: Basis, partner: Option<&VertexId>) -> Result<LabeledGraph> {
    let mut h = g.clone();
    let i = h.idx(v)?;
    match basis {
        Basis::Z => {}
        Basis::Y => h.local_complement_idx(i),
        Basis::X => {
            if let Some(j) = x_partner(g, i, partner)? {
                h.local_complement_idx(j);
                h.local_complement_idx(i);
                h.local_complement_idx(j);
            }
        }
    }
    h.delete_vertex(v)
}

/// Resolves the pivot partner of an X measurement at index `i`.
pub(crate) fn x_partner(g: &LabeledGraph, i: usize, partner: Option<&VertexId>) -> Result<Option<usize>> {
    match partner {
        Some(p) => {
            let j = g.idx(p)?;
            if !g.has_edge_idx(i, j) {
                return Err(Error::InvalidPartner { v: g.label(i).clone(), partner: p.clone() });
            }
            Ok(Some(j))
        }
        None => Ok(g.neighbors_idx(i).next()),
    }
}

pub fn apply_move(g: &LabeledGraph, m: &Move) -> Result<LabeledGraph> {
    match m {
        Move::Lc { v } => g.local_complement(v),
        Move::MeasX { v, partner } => measure(g, v, Basis::X, partner.as_ref()),
        Move::MeasY { v } => measure(g, v, Basis::Y, None),
        Move::MeasZ { v } => measure(g, v, Basis::Z, None),
    }
}

/// Applies moves in order. A failing move is reported with its index.
pub fn apply_moves(g: &LabeledGraph, moves: &[Move]) -> Result<LabeledGraph> {
    let mut h = g.clone();
    for (index, m) in moves.iter().enumerate() {
        h = apply_move(&h, m).map_err(|e| Error::InvalidMove { index, reason: e.to_string() })?;
    }
    Ok(h)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformationPlan {
    pub moves: Vec<Move>,
    pub source_vertices: Vec<VertexId>,
    pub target_vertices: Vec<VertexId>,
}

impl TransformationPlan {
    pub fn new(moves: Vec<Move>, source: &LabeledGraph, target_vertices: Vec<VertexId>) -> Self {
        let mut target_vertices = target_vertices;
        target_vertices.sort();
        TransformationPlan { moves, source_vertices: source.vertices().to_vec(), target_vertices }
    }

    pub fn measured(&self) -> Vec<VertexId> {
        self.moves.iter().filter(|m| m.is_measurement()).map(|m| m.vertex().clone()).collect()
    }

    pub fn lc_count(&self) -> usize {
        self.moves.iter().filter(|m| !m.is_measurement()).count()
    }

    /// Each vertex measured at most once, never touched afterwards, and no
    /// target vertex measured.
    pub fn validate(&self) -> Result<()> {
        let targets: BTreeSet<&VertexId> = self.target_vertices.iter().collect();
        let mut gone = BTreeSet::new();
        for (index, m) in self.moves.iter().enumerate() {
            let v = m.vertex();
            if gone.contains(v) {
                return Err(Error::InvalidMove { index, reason: format!("{v} was already measured") });
            }
            if let Move::MeasX { partner: Some(p), .. } = m {
                if gone.contains(p) {
                    return Err(Error::InvalidMove { index, reason: format!("partner {p} was already measured") });
                }
            }
            if m.is_measurement() {
                if targets.contains(v) {
                    return Err(Error::InvalidPlan(format!("target vertex {v} is measured")));
                }
                gone.insert(v.clone());
            }
        }
        Ok(())
    }

    /// Replays the plan and returns the graph on the unmeasured vertices.
    pub fn apply(&self, g: &LabeledGraph) -> Result<LabeledGraph> {
        self.validate()?;
        apply_moves(g, &self.moves)
    }

    /// Replays the plan and restricts to the target vertices.
    pub fn result_on_targets(&self, g: &LabeledGraph) -> Result<LabeledGraph> {
        self.apply(g)?.induced_subgraph(&self.target_vertices)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.moves).expect("moves serialize")
    }

    pub fn moves_from_json(s: &str) -> Result<Vec<Move>> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Shorthand: measure every vertex of `g` outside `keep` in Z, then append `lcs`.
pub fn plan_with_deletions(g: &LabeledGraph, keep: &[VertexId], mut prefix: Vec<Move>) -> TransformationPlan {
    let keep_set: BTreeSet<&VertexId> = keep.iter().collect();
    for v in g.vertices() {
        if !keep_set.contains(v) {
            prefix.push(Move::MeasZ { v: v.clone() });
        }
    }
    TransformationPlan::new(prefix, g, keep.to_vec())
}
