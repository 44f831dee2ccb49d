//! Text, JSON and DOT formats for graphs, multigraphs, words and plans.
//!
//! Edge list: a line `n m`, then `n` vertex labels one per line, then `m`
//! lines `u v`. Multigraphs use the same layout with edge lines `id u v`.
//! Blank lines and lines starting with `#` are ignored.

use crate::circle::MultiGraph;
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexId};
use crate::ops::{Move, TransformationPlan};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

fn content_lines(s: &str) -> impl Iterator<Item = &str> {
    s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn header<'a>(lines: &mut impl Iterator<Item = &'a str>) -> Result<(usize, usize)> {
    let h = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
    let nums: Vec<usize> = h
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header {h:?}"))))
        .collect::<Result<_>>()?;
    match nums[..] {
        [n, m] => Ok((n, m)),
        _ => Err(Error::Parse(format!("header must be `n m`, got {h:?}"))),
    }
}

fn labels<'a>(lines: &mut impl Iterator<Item = &'a str>, n: usize) -> Result<Vec<VertexId>> {
    (0..n)
        .map(|_| lines.next().ok_or_else(|| Error::Parse("missing vertex line".into()))?.parse())
        .collect()
}

fn fields<'a>(lines: &mut impl Iterator<Item = &'a str>, k: usize) -> Result<Vec<&'a str>> {
    let l = lines.next().ok_or_else(|| Error::Parse("missing edge line".into()))?;
    let f: Vec<&str> = l.split_whitespace().collect();
    if f.len() != k {
        return Err(Error::Parse(format!("expected {k} fields in {l:?}")));
    }
    Ok(f)
}

pub fn parse_edge_list(s: &str) -> Result<LabeledGraph> {
    let mut lines = content_lines(s);
    let (n, m) = header(&mut lines)?;
    let vs = labels(&mut lines, n)?;
    let mut g = LabeledGraph::new(vs);
    if g.n() != n {
        return Err(Error::Parse("duplicate vertex label".into()));
    }
    for _ in 0..m {
        let f = fields(&mut lines, 2)?;
        let (a, b): (VertexId, VertexId) = (f[0].parse()?, f[1].parse()?);
        if g.has_edge(&a, &b) {
            return Err(Error::Parse(format!("edge {a} {b} listed twice")));
        }
        g.add_edge(&a, &b)?;
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing lines after the edges".into()));
    }
    Ok(g)
}

pub fn write_edge_list(g: &LabeledGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for v in g.vertices() {
        writeln!(out, "{v}").unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(out, "{a} {b}").unwrap();
    }
    out
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
}

pub fn graph_to_json(g: &LabeledGraph) -> serde_json::Value {
    serde_json::to_value(GraphJson { vertices: g.vertices().to_vec(), edges: g.edges() }).expect("graph serializes")
}

pub fn graph_from_json(s: &str) -> Result<LabeledGraph> {
    let j: GraphJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let n = j.vertices.len();
    let g = LabeledGraph::from_edges(j.vertices, j.edges)?;
    if g.n() != n {
        return Err(Error::Parse("duplicate vertex label".into()));
    }
    Ok(g)
}

/// Edge list or JSON, told apart by the first non-blank character.
pub fn parse_graph(s: &str) -> Result<LabeledGraph> {
    if s.trim_start().starts_with('{') {
        graph_from_json(s)
    } else {
        parse_edge_list(s)
    }
}

fn dot_id(v: &VertexId) -> String {
    format!("\"{}\"", v.to_string().replace('"', "\\\""))
}

pub fn graph_to_dot(g: &LabeledGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        writeln!(out, "  {};", dot_id(v)).unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(out, "  {} -- {};", dot_id(&a), dot_id(&b)).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn parse_multigraph(s: &str) -> Result<MultiGraph> {
    let mut lines = content_lines(s);
    let (n, m) = header(&mut lines)?;
    let vs = labels(&mut lines, n)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let f = fields(&mut lines, 3)?;
        let id = f[0].parse().map_err(|_| Error::Parse(format!("bad edge id {:?}", f[0])))?;
        edges.push((id, f[1].parse()?, f[2].parse()?));
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing lines after the edges".into()));
    }
    MultiGraph::new(vs, &edges)
}

pub fn write_multigraph(g: &MultiGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for v in g.vertices() {
        writeln!(out, "{v}").unwrap();
    }
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.id, g.label(e.u), g.label(e.v)).unwrap();
    }
    out
}

pub fn multigraph_to_dot(g: &MultiGraph) -> String {
    let mut out = String::from("graph F {\n");
    for v in g.vertices() {
        writeln!(out, "  {};", dot_id(v)).unwrap();
    }
    for e in g.edges() {
        writeln!(out, "  {} -- {} [label=\"{}\"];", dot_id(g.label(e.u)), dot_id(g.label(e.v)), e.id).unwrap();
    }
    out.push_str("}\n");
    out
}

/// A plan file is either a full plan object or a bare move list, in which
/// case source and targets come from the given graphs.
pub fn parse_plan(s: &str, source: &LabeledGraph, targets: &[VertexId]) -> Result<TransformationPlan> {
    if s.trim_start().starts_with('{') {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    } else {
        let moves: Vec<Move> = TransformationPlan::moves_from_json(s)?;
        Ok(TransformationPlan::new(moves, source, targets.to_vec()))
    }
}

pub fn write_plan(p: &TransformationPlan) -> String {
    serde_json::to_string_pretty(p).expect("plan serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{multigraph_from_word, DoubleOccurrenceWord};

    #[test]
    fn edge_list_round_trip() {
        let g = parse_edge_list("3 2\na\nb\n7\na b\nb 7\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        assert_eq!(graph_from_json(&graph_to_json(&g).to_string()).unwrap(), g);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_edge_list("2 1\na\nb\na c\n").is_err());
        assert!(parse_edge_list("2 1\na\na\n").is_err());
        assert!(parse_edge_list("2 0\na\nb\nextra\n").is_err());
        assert!(parse_edge_list("1 1\na\na a\n").is_err());
        assert!(parse_edge_list("2 2\na\nb\na b\nb a\n").is_err());
    }

    #[test]
    fn word_abab_contracts_to_four_parallel_edges() {
        let (f, _) = multigraph_from_word(&DoubleOccurrenceWord::parse("a b a b").unwrap());
        assert_eq!(f.edge_count(), 4);
        assert_eq!(f.multiplicity(0, 1), 4);
        let back = parse_multigraph(&write_multigraph(&f)).unwrap();
        assert_eq!(write_multigraph(&back), write_multigraph(&f));
    }

    #[test]
    fn dot_mentions_every_edge() {
        let g = LabeledGraph::path(&crate::graph::vs(&[0, 1, 2]));
        let d = graph_to_dot(&g);
        assert!(d.contains("\"0\" -- \"1\"") && d.contains("\"1\" -- \"2\""));
    }
}
