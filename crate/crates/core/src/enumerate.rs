//! Exhaustive generation of small signed multigraphs up to switching
//! isomorphism.
//!
//! For each vertex count the generator walks the pairs in order, choosing
//! how many positive and negative edges join them, then the number of
//! negative loops at each vertex. Positive loops are never generated: they
//! lie on no negative cycle and change nothing studied here. Graphs with
//! an isolated vertex are skipped, since they repeat a smaller graph.
//!
//! Before the canonical form is taken, a cheap switching normalization
//! discards most duplicates: for a BFS forest of the underlying graph one
//! may switch so that every forest pair carries at least as many positive
//! as negative edges, so only such graphs are kept.

use std::collections::HashSet;

use serde::Serialize;

use crate::criticality::{is_critical, is_decomposable, Method};
use crate::error::Result;
use crate::frustration::frustration_index;
use crate::graph::{Sign, SignedGraph, VertexId};
use crate::iso::{canonical_form, CanonicalForm};
use crate::limits::{check, Limits};
use crate::subdivision::is_irreducible;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumBounds {
    pub max_vertices: usize,
    pub max_multiplicity_per_pair: usize,
    pub max_negative_loops_per_vertex: usize,
    pub max_edges: usize,
    pub connected_only: bool,
}

impl EnumBounds {
    pub fn new(max_vertices: usize, mult: usize, loops: usize, max_edges: usize) -> Self {
        EnumBounds {
            max_vertices,
            max_multiplicity_per_pair: mult,
            max_negative_loops_per_vertex: loops,
            max_edges,
            connected_only: false,
        }
    }

    pub fn connected(mut self) -> Self {
        self.connected_only = true;
        self
    }
}

struct Gen<'a> {
    n: usize,
    b: &'a EnumBounds,
    pairs: Vec<(VertexId, VertexId)>,
    /// (positive, negative) per pair, then negative loops per vertex.
    chosen: Vec<(usize, usize)>,
    loops: Vec<usize>,
    edges: usize,
    seen: HashSet<CanonicalForm>,
    out: Vec<CanonicalForm>,
}

impl Gen<'_> {
    fn pairs_rec(&mut self, i: usize) -> Result<()> {
        if i == self.pairs.len() {
            return self.loops_rec(0);
        }
        let room = self.b.max_edges - self.edges;
        for m in 0..=self.b.max_multiplicity_per_pair.min(room) {
            for q in 0..=m {
                self.chosen.push((m - q, q));
                self.edges += m;
                self.pairs_rec(i + 1)?;
                self.edges -= m;
                self.chosen.pop();
            }
        }
        Ok(())
    }

    fn loops_rec(&mut self, v: usize) -> Result<()> {
        if v == self.n {
            return self.finish();
        }
        let room = self.b.max_edges - self.edges;
        for q in 0..=self.b.max_negative_loops_per_vertex.min(room) {
            self.loops.push(q);
            self.edges += q;
            self.loops_rec(v + 1)?;
            self.edges -= q;
            self.loops.pop();
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<()> {
        let n = self.n;
        let mut adj = vec![Vec::new(); n];
        for (&(a, b), &(p, q)) in self.pairs.iter().zip(&self.chosen) {
            if p + q > 0 {
                adj[a].push((b, p, q));
                adj[b].push((a, p, q));
            }
        }
        if (0..n).any(|v| adj[v].is_empty() && self.loops[v] == 0) {
            return Ok(());
        }
        // BFS forest from the lowest unvisited vertex, neighbours in id order
        let mut seen = vec![false; n];
        let mut roots = 0;
        for r in 0..n {
            if seen[r] {
                continue;
            }
            roots += 1;
            seen[r] = true;
            let mut queue = std::collections::VecDeque::from([r]);
            while let Some(u) = queue.pop_front() {
                for &(w, p, q) in &adj[u] {
                    if !seen[w] {
                        if q > p {
                            return Ok(());
                        }
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        if self.b.connected_only && roots > 1 {
            return Ok(());
        }
        let mut edges = Vec::new();
        for (&(a, b), &(p, q)) in self.pairs.iter().zip(&self.chosen) {
            edges.extend((0..p).map(|_| (a, b, Sign::Positive)));
            edges.extend((0..q).map(|_| (a, b, Sign::Negative)));
        }
        for (v, &q) in self.loops.iter().enumerate() {
            edges.extend((0..q).map(|_| (v, v, Sign::Negative)));
        }
        let cf = canonical_form(&SignedGraph::from_indexed(n, &edges))?;
        if self.seen.insert(cf.clone()) {
            self.out.push(cf);
        }
        Ok(())
    }
}

fn check_bounds(b: &EnumBounds) -> Result<()> {
    let lim = Limits::current();
    check("vertices for enumeration", b.max_vertices, lim.enumerate_vertices)?;
    check("edges for enumeration", b.max_edges, lim.enumerate_edges)
}

/// One representative per switching-isomorphism class within the bounds,
/// as canonical graphs on vertices `0..n`. Ordered by vertex count, then
/// edge count, then canonical code.
pub fn enumerate_signed_graphs(b: &EnumBounds) -> Result<Vec<SignedGraph>> {
    check_bounds(b)?;
    let mut forms = Vec::new();
    for n in 1..=b.max_vertices {
        let mut g = Gen {
            n,
            b,
            pairs: (0..n).flat_map(|a| (a + 1..n).map(move |c| (a, c))).collect(),
            chosen: Vec::new(),
            loops: Vec::new(),
            edges: 0,
            seen: HashSet::new(),
            out: Vec::new(),
        };
        g.pairs_rec(0)?;
        let mut graphs: Vec<(usize, CanonicalForm)> = g.out.into_iter().map(|cf| (edge_total(&cf), cf)).collect();
        graphs.sort();
        forms.extend(graphs.into_iter().map(|(_, cf)| cf));
    }
    Ok(forms.iter().map(CanonicalForm::to_graph).collect())
}

fn edge_total(cf: &CanonicalForm) -> usize {
    cf.code
        .iter()
        .filter(|&&s| s != u32::MAX)
        .map(|&s| ((s >> 16) + (s & 0xffff)) as usize)
        .sum()
}

/// Critically k-frustrated members of the enumeration, optionally only
/// the irreducible ones.
pub fn enumerate_critical(b: &EnumBounds, k: usize, irreducible_only: bool) -> Result<Vec<SignedGraph>> {
    let mut out = Vec::new();
    for g in enumerate_signed_graphs(b)? {
        if frustration_index(&g)?.ell != k || (irreducible_only && !is_irreducible(&g)) {
            continue;
        }
        if is_critical(&g, Method::Deletion)?.critical {
            out.push(g);
        }
    }
    Ok(out)
}

/// Keep the graphs that admit no decomposition.
pub fn non_decomposable(graphs: Vec<SignedGraph>) -> Result<Vec<SignedGraph>> {
    let mut out = Vec::new();
    for g in graphs {
        if !is_decomposable(&g)? {
            out.push(g);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_vertex_with_loops() {
        let gs = enumerate_signed_graphs(&EnumBounds::new(1, 0, 2, 2)).unwrap();
        let sg: Vec<String> = gs.iter().map(|g| g.to_sg()).collect();
        assert_eq!(sg, ["0 0 -\n", "0 0 -\n0 0 -\n"]);
    }

    #[test]
    fn two_vertices_no_loops() {
        let gs = enumerate_signed_graphs(&EnumBounds::new(2, 2, 0, 4)).unwrap();
        let sg: Vec<String> = gs.iter().map(|g| g.to_sg()).collect();
        // one edge, a positive digon, a negative digon
        assert_eq!(sg, ["0 1 +\n", "0 1 +\n0 1 +\n", "0 1 +\n0 1 -\n"]);
    }

    #[test]
    fn guard() {
        let err = enumerate_signed_graphs(&EnumBounds::new(6, 1, 0, 6)).unwrap_err();
        assert!(err.is_guard());
    }
}
