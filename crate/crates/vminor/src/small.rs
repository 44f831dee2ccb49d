//! Constructive plans for targets on at most three vertices.

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Shape, VertexId};
use crate::ops::{apply_move, Move, TransformationPlan};

fn distinct(vs: &[&VertexId], g: &LabeledGraph) -> Result<()> {
    for (i, v) in vs.iter().enumerate() {
        g.idx(v)?;
        if vs[..i].contains(v) {
            return Err(Error::InvalidTarget(format!("{v} given twice")));
        }
    }
    Ok(())
}

fn path_moves(g: &LabeledGraph, a: &VertexId, b: &VertexId) -> Result<Vec<VertexId>> {
    let p = g.shortest_path(a, b)?.ok_or(Error::NotConnected)?;
    Ok(p[1..p.len().saturating_sub(1)].to_vec())
}

/// LCs along the interior of a shortest a–b path; afterwards a and b are
/// adjacent.
pub fn make_pair(g: &LabeledGraph, a: &VertexId, b: &VertexId) -> Result<TransformationPlan> {
    distinct(&[a, b], g)?;
    let moves: Vec<Move> = path_moves(g, a, b)?.into_iter().map(|v| Move::Lc { v }).collect();
    let plan = TransformationPlan::new(moves, g, vec![a.clone(), b.clone()]);
    if !plan.apply(g)?.has_edge(a, b) {
        return Err(Error::Internal(format!("path LCs left {a} and {b} apart")));
    }
    Ok(plan)
}

/// Connects a and b, then complements along a shortest path from c to the
/// nearer of a and b. Interior vertices of that path other than the last are
/// adjacent to neither a nor b, so the a–b edge can only be toggled by the
/// final LC, and then c has become adjacent to both.
pub fn make_triple(g: &LabeledGraph, a: &VertexId, b: &VertexId, c: &VertexId) -> Result<TransformationPlan> {
    distinct(&[a, b, c], g)?;
    let mut moves = make_pair(g, a, b)?.moves;
    let mut cur = g.clone();
    for m in &moves {
        cur = apply_move(&cur, m)?;
    }
    let dist = cur.bfs_idx(cur.idx(c)?);
    let (da, db) = (dist[cur.idx(a)?], dist[cur.idx(b)?]);
    if da == usize::MAX {
        return Err(Error::NotConnected);
    }
    let near = if da < db || (da == db && a < b) { a } else { b };
    let keep = [a.clone(), b.clone(), c.clone()];
    for x in path_moves(&cur, c, near)? {
        if cur.has_edge(a, c) || cur.has_edge(b, c) {
            break;
        }
        cur = cur.local_complement(&x)?;
        moves.push(Move::Lc { v: x });
    }
    if !cur.induced_subgraph(&keep)?.is_connected() {
        return Err(Error::Internal(format!("{{{a}, {b}, {c}}} still disconnected")));
    }
    Ok(TransformationPlan::new(moves, g, keep.to_vec()))
}

/// LCs turning a connected graph on at most three vertices into `target`
/// on the same vertex set.
fn convert_shape(cur: &LabeledGraph, target: &LabeledGraph) -> Vec<Move> {
    let lc = |v: &VertexId| Move::Lc { v: v.clone() };
    match (cur.classify(), target.classify()) {
        (Shape::Star(x), Shape::Star(c)) if x == c => vec![],
        (Shape::Star(x), Shape::Star(c)) => vec![lc(&x), lc(&c)],
        (Shape::Star(x), Shape::Complete) => vec![lc(&x)],
        (Shape::Complete, Shape::Star(c)) => vec![lc(&c)],
        _ => vec![],
    }
}

/// Plan producing a connected target on at most three vertices from the
/// component of `g` that contains it. Outside vertices are measured in
/// ascending order: Z when that keeps the component connected, Y otherwise,
/// which for a cut vertex joins its neighborhood into a clique first.
pub fn small_vertex_minor(g: &LabeledGraph, target: &LabeledGraph) -> Result<TransformationPlan> {
    if target.n() == 0 || target.n() > 3 {
        return Err(Error::InvalidTarget(format!("target has {} vertices", target.n())));
    }
    if !target.is_connected() {
        return Err(Error::InvalidTarget("target is not connected".into()));
    }
    for v in target.vertices() {
        if !g.contains(v) {
            return Err(Error::InvalidTarget(format!("{v} is not a vertex of the graph")));
        }
    }
    let t0 = g.idx(&target.vertices()[0])?;
    let dist = g.bfs_idx(t0);
    let comp: Vec<bool> = dist.iter().map(|&d| d != usize::MAX).collect();
    for v in target.vertices() {
        if !comp[g.idx(v)?] {
            return Err(Error::NotConnected);
        }
    }
    let mut moves = Vec::new();
    let mut cur = g.clone();
    // other components first; they never interact with the target
    for (i, v) in g.vertices().iter().enumerate() {
        if !comp[i] {
            moves.push(Move::MeasZ { v: v.clone() });
            cur = cur.delete_vertex(v)?;
        }
    }
    for v in g.vertices().iter().filter(|v| comp[g.idx(v).unwrap()]) {
        if target.contains(v) {
            continue;
        }
        let z = cur.delete_vertex(v)?;
        let (m, next) = if z.is_connected() {
            (Move::MeasZ { v: v.clone() }, z)
        } else {
            let y = cur.local_complement(v)?.delete_vertex(v)?;
            (Move::MeasY { v: v.clone() }, y)
        };
        if !next.is_connected() {
            return Err(Error::Internal(format!("measuring {v} disconnects the graph")));
        }
        moves.push(m);
        cur = next;
    }
    for m in convert_shape(&cur, target) {
        cur = apply_move(&cur, &m)?;
        moves.push(m);
    }
    let plan = TransformationPlan::new(moves, g, target.vertices().to_vec());
    if plan.result_on_targets(g)? != *target {
        return Err(Error::Internal("small-target plan does not replay to the target".into()));
    }
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vs;

    #[test]
    fn pair_on_a_path() {
        let g = LabeledGraph::path(&vs(&[0, 1, 2, 3]));
        let p = make_pair(&g, &vs(&[0])[0], &vs(&[3])[0]).unwrap();
        assert_eq!(p.moves, vec![Move::lc(1u64), Move::lc(2u64)]);
        assert!(p.apply(&g).unwrap().has_edge(&vs(&[0])[0], &vs(&[3])[0]));
    }

    #[test]
    fn adjacent_pair_needs_nothing() {
        let g = LabeledGraph::path(&vs(&[0, 1, 2]));
        assert!(make_pair(&g, &vs(&[1])[0], &vs(&[2])[0]).unwrap().moves.is_empty());
    }

    #[test]
    fn triangle_needs_nothing() {
        let g = LabeledGraph::complete(vs(&[0, 1, 2]));
        let [a, b, c] = [0u64, 1, 2].map(VertexId::Num);
        assert!(make_triple(&g, &a, &b, &c).unwrap().moves.is_empty());
    }

    #[test]
    fn path_on_six_cycle() {
        let g = LabeledGraph::cycle(&vs(&[0, 1, 2, 3, 4, 5]));
        let t = LabeledGraph::path(&vs(&[0, 2, 4]));
        let p = small_vertex_minor(&g, &t).unwrap();
        assert_eq!(p.result_on_targets(&g).unwrap(), t);
    }

    #[test]
    fn rejects_missing_vertex() {
        let g = LabeledGraph::path(&vs(&[0, 1]));
        let t = LabeledGraph::path(&vs(&[0, 7]));
        assert!(matches!(small_vertex_minor(&g, &t), Err(Error::InvalidTarget(_))));
    }
}
