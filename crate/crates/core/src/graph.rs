//! Signed multigraphs, switching, cuts and cycles.
//!
//! Vertices and edges are addressed by dense integer ids. Edge ids follow
//! insertion order; vertex ids follow the order in which labels first
//! appear. Loops and parallel edges are allowed.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Largest edge count supported by [`EdgeSet`].
pub const MAX_EDGES: usize = 128;
/// Largest vertex count supported by switch masks.
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "+" | "+1" | "1" => Ok(Sign::Positive),
            "-" | "-1" | "\u{2212}" => Ok(Sign::Negative),
            other => Err(format!("bad sign `{other}`, expected + or -")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub sign: Sign,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite to `x`. For a loop this is `x` itself.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    /// Endpoints as an ordered pair (smaller id first).
    pub fn pair(&self) -> (VertexId, VertexId) {
        if self.u <= self.v {
            (self.u, self.v)
        } else {
            (self.v, self.u)
        }
    }
}

/// A set of edge ids stored as a 128-bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(pub u128);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub fn full(m: usize) -> EdgeSet {
        assert!(m <= MAX_EDGES);
        if m == 128 {
            EdgeSet(u128::MAX)
        } else {
            EdgeSet((1u128 << m) - 1)
        }
    }

    pub fn single(e: EdgeId) -> EdgeSet {
        EdgeSet(1u128 << e)
    }

    pub fn contains(self, e: EdgeId) -> bool {
        e < MAX_EDGES && self.0 >> e & 1 == 1
    }

    pub fn insert(&mut self, e: EdgeId) {
        self.0 |= 1u128 << e;
    }

    pub fn remove(&mut self, e: EdgeId) {
        self.0 &= !(1u128 << e);
    }

    pub fn with(self, e: EdgeId) -> EdgeSet {
        EdgeSet(self.0 | 1u128 << e)
    }

    pub fn without(self, e: EdgeId) -> EdgeSet {
        EdgeSet(self.0 & !(1u128 << e))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | o.0)
    }

    pub fn intersection(self, o: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & o.0)
    }

    pub fn difference(self, o: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & !o.0)
    }

    pub fn is_disjoint(self, o: EdgeSet) -> bool {
        self.0 & o.0 == 0
    }

    pub fn is_subset(self, o: EdgeSet) -> bool {
        self.0 & !o.0 == 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<EdgeId> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> EdgeSetIter {
        EdgeSetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<EdgeId> {
        self.iter().collect()
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<EdgeId> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        let mut s = EdgeSet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

pub struct EdgeSetIter(u128);

impl Iterator for EdgeSetIter {
    type Item = EdgeId;
    fn next(&mut self) -> Option<EdgeId> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }
}

impl Serialize for EdgeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// A vertex subset used for switching, stored as a 64-bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SwitchSet(pub u64);

impl SwitchSet {
    pub fn from_vertices<I: IntoIterator<Item = VertexId>>(vs: I) -> SwitchSet {
        let mut m = 0u64;
        for v in vs {
            m |= 1u64 << v;
        }
        SwitchSet(m)
    }

    pub fn from_labels<S: AsRef<str>>(g: &SignedGraph, labels: &[S]) -> Result<SwitchSet> {
        let mut ids = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            ids.push(g.vertex_id(l).ok_or_else(|| Error::UnknownVertex(l.to_string()))?);
        }
        Ok(SwitchSet::from_vertices(ids))
    }

    pub fn contains(self, v: VertexId) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn members(self) -> Vec<VertexId> {
        (0..64).filter(|&v| self.contains(v)).collect()
    }

    pub fn labels(self, g: &SignedGraph) -> Vec<String> {
        self.members().into_iter().map(|v| g.label(v).to_string()).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

/// The boundary of a vertex subset together with its sign counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCut {
    pub side: Vec<String>,
    pub boundary: Vec<EdgeId>,
    pub positive: usize,
    pub negative: usize,
}

impl EdgeCut {
    pub fn is_equilibrated(&self) -> bool {
        self.positive == self.negative
    }
}

/// A cycle of a signed multigraph: a connected 2-regular edge subset,
/// stored as a closed trail. `edges[i]` joins `vertices[i]` and
/// `vertices[(i + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    edges: Vec<EdgeId>,
    vertices: Vec<VertexId>,
}

impl Cycle {
    /// Validate an edge subset as a cycle of `g` and orient it as a closed
    /// trail starting at its smallest edge.
    pub fn from_edges(g: &SignedGraph, edge_ids: &[EdgeId]) -> Result<Cycle> {
        if edge_ids.is_empty() {
            return Err(Error::NotACycle("empty edge set".into()));
        }
        let mut set = EdgeSet::EMPTY;
        for &e in edge_ids {
            if e >= g.edge_count() {
                return Err(Error::UnknownEdge(e));
            }
            if set.contains(e) {
                return Err(Error::NotACycle(format!("edge {e} repeated")));
            }
            set.insert(e);
        }
        let mut deg: HashMap<VertexId, usize> = HashMap::new();
        for e in set.iter() {
            let ed = g.edge(e);
            *deg.entry(ed.u).or_default() += 1;
            *deg.entry(ed.v).or_default() += 1;
        }
        if let Some((v, d)) = deg.iter().find(|(_, &d)| d != 2) {
            return Err(Error::NotACycle(format!(
                "vertex {} has degree {d} in the edge set",
                g.label(*v)
            )));
        }
        let start = set.first().unwrap();
        let first = g.edge(start);
        let mut edges = vec![start];
        let mut vertices = vec![first.u];
        let mut at = first.other(first.u);
        let mut used = EdgeSet::single(start);
        while at != first.u {
            let next = set
                .difference(used)
                .iter()
                .find(|&e| g.edge(e).touches(at))
                .ok_or_else(|| Error::NotACycle("edge set is not closed".into()))?;
            vertices.push(at);
            edges.push(next);
            used.insert(next);
            at = g.edge(next).other(at);
        }
        if used != set {
            return Err(Error::NotACycle("edge set is not connected".into()));
        }
        Ok(Cycle { edges, vertices })
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    pub fn sign(&self, g: &SignedGraph) -> Sign {
        sign_of(g, self.edge_set())
    }
}

/// Product of the signs of an edge set.
pub fn sign_of(g: &SignedGraph, set: EdgeSet) -> Sign {
    if set.iter().filter(|&e| g.edge(e).sign.is_negative()).count() % 2 == 1 {
        Sign::Negative
    } else {
        Sign::Positive
    }
}

/// Sign of a cycle given as a list of edge ids; the list is validated.
pub fn cycle_sign(g: &SignedGraph, edge_ids: &[EdgeId]) -> Result<Sign> {
    Ok(Cycle::from_edges(g, edge_ids)?.sign(g))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
}

#[derive(Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Id of the vertex with this label, creating it if needed.
    pub fn vertex(&mut self, label: &str) -> VertexId {
        if let Some(&v) = self.index.get(label) {
            return v;
        }
        let v = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), v);
        v
    }

    pub fn edge(&mut self, u: &str, v: &str, sign: Sign) -> EdgeId {
        let u = self.vertex(u);
        let v = self.vertex(v);
        self.edges.push(Edge { u, v, sign });
        self.edges.len() - 1
    }

    pub fn build(self) -> SignedGraph {
        SignedGraph {
            labels: self.labels,
            edges: self.edges,
        }
    }
}

impl SignedGraph {
    pub fn empty() -> SignedGraph {
        SignedGraph {
            labels: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Build from labelled edges; edge ids follow the iteration order.
    pub fn from_edges<I, S>(edges: I) -> SignedGraph
    where
        I: IntoIterator<Item = (S, S, Sign)>,
        S: AsRef<str>,
    {
        let mut b = GraphBuilder::new();
        for (u, v, s) in edges {
            b.edge(u.as_ref(), v.as_ref(), s);
        }
        b.build()
    }

    /// Build from edges carrying explicit ids. The ids must be exactly
    /// `0..m` in some order.
    pub fn from_numbered_edges<S: AsRef<str>>(edges: &[(EdgeId, S, S, Sign)]) -> Result<SignedGraph> {
        let m = edges.len();
        let mut slots: Vec<Option<&(EdgeId, S, S, Sign)>> = vec![None; m];
        for item in edges {
            let id = item.0;
            if id >= m {
                return Err(Error::SparseEdgeIds((0..m).find(|&i| slots[i].is_none()).unwrap_or(0)));
            }
            if slots[id].is_some() {
                return Err(Error::DuplicateEdgeId(id));
            }
            slots[id] = Some(item);
        }
        let mut b = GraphBuilder::new();
        // vertex ids follow first appearance in the given list
        for (_, u, v, _) in edges {
            b.vertex(u.as_ref());
            b.vertex(v.as_ref());
        }
        for slot in slots {
            let (_, u, v, s) = slot.unwrap();
            b.edge(u.as_ref(), v.as_ref(), *s);
        }
        Ok(b.build())
    }

    /// Build on vertices labelled `0..n` from index triples.
    pub fn from_indexed(n: usize, edges: &[(VertexId, VertexId, Sign)]) -> SignedGraph {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let edges = edges
            .iter()
            .map(|&(u, v, sign)| {
                assert!(u < n && v < n, "vertex out of range");
                Edge { u, v, sign }
            })
            .collect();
        SignedGraph { labels, edges }
    }

    pub(crate) fn from_parts(labels: Vec<String>, edges: Vec<Edge>) -> SignedGraph {
        SignedGraph { labels, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn vertex_id(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.edges.iter().map(|e| e.sign).collect()
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    pub fn negative_edges(&self) -> Vec<EdgeId> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].sign.is_negative())
            .collect()
    }

    pub fn negative_count(&self) -> usize {
        self.edges.iter().filter(|e| e.sign.is_negative()).count()
    }

    /// Degree of `v`; a loop counts twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| (e.u == v) as usize + (e.v == v) as usize)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.labels.len()];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn incident_edges(&self, v: VertexId) -> Vec<EdgeId> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].touches(v))
            .collect()
    }

    /// Distinct neighbours of `v`, excluding `v` itself.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut ns: Vec<VertexId> = self
            .edges
            .iter()
            .filter(|e| e.touches(v) && !e.is_loop())
            .map(|e| e.other(v))
            .collect();
        ns.sort_unstable();
        ns.dedup();
        ns
    }

    /// Connected components restricted to the edges in `within`, each
    /// sorted by vertex id, listed by smallest vertex.
    pub fn components_within(&self, within: EdgeSet) -> Vec<Vec<VertexId>> {
        let n = self.labels.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut x = x;
            while p[x] != r {
                let nx = p[x];
                p[x] = r;
                x = nx;
            }
            r
        }
        for e in within.iter() {
            let ed = self.edges[e];
            let a = find(&mut parent, ed.u);
            let b = find(&mut parent, ed.v);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<VertexId>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            let i = *slot.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[i].push(v);
        }
        groups
    }

    pub fn components(&self) -> Vec<Vec<VertexId>> {
        self.components_within(self.all_edges())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Edges whose removal disconnects their endpoints.
    pub fn bridges(&self) -> Vec<EdgeId> {
        let all = self.all_edges();
        (0..self.edges.len())
            .filter(|&e| {
                let ed = self.edges[e];
                if ed.is_loop() {
                    return false;
                }
                let comps = self.components_within(all.without(e));
                !comps.iter().any(|c| c.contains(&ed.u) && c.contains(&ed.v))
            })
            .collect()
    }

    /// The graph with the given signs in place of the current ones.
    pub fn with_signs(&self, signs: &[Sign]) -> SignedGraph {
        assert_eq!(signs.len(), self.edges.len());
        let edges = self
            .edges
            .iter()
            .zip(signs)
            .map(|(e, &sign)| Edge { sign, ..*e })
            .collect();
        SignedGraph {
            labels: self.labels.clone(),
            edges,
        }
    }

    /// Switch at `x`: every non-loop edge with exactly one endpoint in `x`
    /// changes sign. Loop signs never change.
    pub fn switch(&self, x: SwitchSet) -> SignedGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                if x.contains(e.u) != x.contains(e.v) {
                    Edge {
                        sign: e.sign.flip(),
                        ..*e
                    }
                } else {
                    *e
                }
            })
            .collect();
        SignedGraph {
            labels: self.labels.clone(),
            edges,
        }
    }

    /// Switch at the vertices with the given labels.
    pub fn switch_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<SignedGraph> {
        Ok(self.switch(SwitchSet::from_labels(self, labels)?))
    }

    /// The boundary of `x` with its sign counts.
    pub fn cut(&self, x: SwitchSet) -> EdgeCut {
        let mut boundary = Vec::new();
        let (mut positive, mut negative) = (0, 0);
        for (i, e) in self.edges.iter().enumerate() {
            if x.contains(e.u) != x.contains(e.v) {
                boundary.push(i);
                match e.sign {
                    Sign::Positive => positive += 1,
                    Sign::Negative => negative += 1,
                }
            }
        }
        EdgeCut {
            side: x
                .members()
                .into_iter()
                .filter(|&v| v < self.labels.len())
                .map(|v| self.labels[v].clone())
                .collect(),
            boundary,
            positive,
            negative,
        }
    }

    /// Delete one edge; later edge ids shift down by one.
    pub fn delete_edge(&self, e: EdgeId) -> SignedGraph {
        let mut edges = self.edges.clone();
        edges.remove(e);
        SignedGraph {
            labels: self.labels.clone(),
            edges,
        }
    }

    /// The spanning subgraph on the edges of `set`, renumbered in
    /// increasing id order.
    pub fn edge_subgraph(&self, set: EdgeSet) -> SignedGraph {
        SignedGraph {
            labels: self.labels.clone(),
            edges: set.iter().map(|e| self.edges[e]).collect(),
        }
    }

    /// Drop vertices with no incident edges.
    pub fn without_isolated(&self) -> SignedGraph {
        let d = self.degrees();
        let keep: Vec<VertexId> = (0..self.labels.len()).filter(|&v| d[v] > 0).collect();
        let mut map = vec![usize::MAX; self.labels.len()];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = i;
        }
        SignedGraph {
            labels: keep.iter().map(|&v| self.labels[v].clone()).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    u: map[e.u],
                    v: map[e.v],
                    sign: e.sign,
                })
                .collect(),
        }
    }

    /// Multiplicities `(positive, negative)` for each unordered pair
    /// `(i, j)` with `i <= j`, indexed as `i * n + j`.
    pub fn pair_counts(&self) -> Vec<(u16, u16)> {
        let n = self.labels.len();
        let mut t = vec![(0u16, 0u16); n * n];
        for e in &self.edges {
            let (a, b) = e.pair();
            let c = &mut t[a * n + b];
            match e.sign {
                Sign::Positive => c.0 += 1,
                Sign::Negative => c.1 += 1,
            }
        }
        t
    }

    /// Parse the `.sg` text format: one edge `u v s` per line, `s` being
    /// `+` or `-`; `vertex u` declares a vertex, isolated ones included; `#`
    /// starts a comment. Isolated vertices are written back as `vertex` lines.
    pub fn parse_sg(text: &str) -> Result<SignedGraph> {
        let mut b = GraphBuilder::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if let ["vertex", v] = parts[..] {
                b.vertex(v);
                continue;
            }
            if parts.len() != 3 {
                return Err(Error::parse(
                    i + 1,
                    format!("expected `u v sign`, found {} fields", parts.len()),
                ));
            }
            let sign: Sign = parts[2].parse().map_err(|m: String| Error::parse(i + 1, m))?;
            b.edge(parts[0], parts[1], sign);
        }
        Ok(b.build())
    }

    pub fn to_sg(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", self.labels[e.u], self.labels[e.v], e.sign));
        }
        let deg = self.degrees();
        for (v, l) in self.labels.iter().enumerate() {
            if deg[v] == 0 {
                out.push_str(&format!("vertex {l}\n"));
            }
        }
        out
    }

    /// Same graph with labels prefixed.
    pub fn prefixed(&self, prefix: &str) -> SignedGraph {
        SignedGraph {
            labels: self.labels.iter().map(|l| format!("{prefix}{l}")).collect(),
            edges: self.edges.clone(),
        }
    }

    /// A label not yet used by the graph, built from `stem`.
    pub fn fresh_label(&self, stem: &str) -> String {
        let mut i = self.labels.len();
        loop {
            let cand = format!("{stem}{i}");
            if !self.labels.iter().any(|l| *l == cand) {
                return cand;
            }
            i += 1;
        }
    }

    pub fn edge_label(&self, e: EdgeId) -> String {
        let ed = self.edges[e];
        format!("{}{}{}", self.labels[ed.u], ed.sign, self.labels[ed.v])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_minus() -> SignedGraph {
        SignedGraph::parse_sg("a b -\na c -\na d -\nb c -\nb d -\nc d -\n").unwrap()
    }

    #[test]
    fn parse_roundtrip() {
        let g = SignedGraph::parse_sg("# comment\nx y +\n\ny y -  # loop\nx y -\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 3);
        assert!(g.edge(1).is_loop());
        assert_eq!(SignedGraph::parse_sg(&g.to_sg()).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_line() {
        let err = SignedGraph::parse_sg("a b +\na b\n").unwrap_err();
        assert_eq!(err, Error::parse(2, "expected `u v sign`, found 2 fields"));
        assert!(matches!(
            SignedGraph::parse_sg("a b *").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn numbered_edges() {
        let g = SignedGraph::from_numbered_edges(&[(1, "a", "b", Sign::Negative), (0, "b", "c", Sign::Positive)])
            .unwrap();
        assert_eq!(g.edge(0).sign, Sign::Positive);
        assert_eq!(g.label(g.edge(1).u), "a");
        assert_eq!(
            SignedGraph::from_numbered_edges(&[(0, "a", "b", Sign::Negative), (0, "b", "c", Sign::Positive)]),
            Err(Error::DuplicateEdgeId(0))
        );
        assert!(matches!(
            SignedGraph::from_numbered_edges(&[(2, "a", "b", Sign::Negative)]),
            Err(Error::SparseEdgeIds(0))
        ));
    }

    #[test]
    fn switching_leaves_loops() {
        let g = SignedGraph::parse_sg("a a -\na b +\nb b +\n").unwrap();
        let h = g.switch_labels(&["a"]).unwrap();
        assert_eq!(h.signs(), vec![Sign::Negative, Sign::Negative, Sign::Positive]);
        assert_eq!(g.switch_labels(&["q"]), Err(Error::UnknownVertex("q".into())));
    }

    #[test]
    fn cut_counts() {
        let g = k4_minus();
        let c = g.cut(SwitchSet::from_vertices([0]));
        assert_eq!(c.boundary, vec![0, 1, 2]);
        assert_eq!((c.positive, c.negative), (0, 3));
        assert_eq!(c.side, vec!["a".to_string()]);
    }

    #[test]
    fn cycles_validate() {
        let g = k4_minus();
        let c = Cycle::from_edges(&g, &[3, 0, 1]).unwrap();
        assert_eq!(c.edges(), &[0, 3, 1]);
        assert_eq!(c.sign(&g), Sign::Negative);
        assert_eq!(cycle_sign(&g, &[0, 4, 5, 1]).unwrap(), Sign::Positive);
        assert!(Cycle::from_edges(&g, &[0, 1]).is_err());
        assert!(Cycle::from_edges(&g, &[0, 1, 2]).is_err());
        assert_eq!(Cycle::from_edges(&g, &[9]), Err(Error::UnknownEdge(9)));
        let two = SignedGraph::parse_sg("a a -\na b +\na b -\n").unwrap();
        assert_eq!(cycle_sign(&two, &[0]).unwrap(), Sign::Negative);
        assert_eq!(cycle_sign(&two, &[1, 2]).unwrap(), Sign::Negative);
        // two disjoint triangles are 2-regular but not connected
        let tt = SignedGraph::parse_sg("a b +\nb c +\nc a +\nx y +\ny z +\nz x +\n").unwrap();
        assert!(Cycle::from_edges(&tt, &[0, 1, 2, 3, 4, 5]).is_err());
    }

    #[test]
    fn components_and_bridges() {
        let g = SignedGraph::parse_sg("a b +\nb c +\nc a +\nc d -\nx x -\n").unwrap();
        assert_eq!(g.components().len(), 2);
        assert_eq!(g.bridges(), vec![3]);
        assert_eq!(g.degree(4), 2);
    }

    #[test]
    fn edge_set_ops() {
        let s: EdgeSet = [3, 1, 127].into_iter().collect();
        assert_eq!(s.to_vec(), vec![1, 3, 127]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(127));
        assert_eq!(s.without(3).first(), Some(1));
        assert_eq!(EdgeSet::full(128).len(), 128);
    }
}
