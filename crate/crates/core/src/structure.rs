//! (K4,-)-subdivision detection, S*-membership and conjecture audits.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::criticality::{is_critical, is_irreducible, Method};
use crate::cycles::{cycle_sets, max_packing, packing_within};
use crate::error::{Error, Result};
use crate::frustration::{check_size, ell_within, frustration_index};
use crate::graph::{sign_of, Cycle, EdgeId, EdgeSet, SignedGraph, VertexId};
use crate::limits::{check, Limits};

/// A subdivided K4 whose four triangle images are negative cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K4Subdivision {
    pub branch: [String; 4],
    /// Paths between branch vertices in the order ab, ac, ad, bc, bd, cd.
    pub paths: Vec<Vec<EdgeId>>,
    pub edges: Vec<EdgeId>,
    #[serde(skip)]
    pub branch_ids: [VertexId; 4],
    #[serde(skip)]
    pub set: EdgeSet,
}

/// Pair order of the six branch paths.
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)];

struct PathSearch<'a, F> {
    g: &'a SignedGraph,
    adj: Vec<Vec<(EdgeId, VertexId)>>,
    quad: [VertexId; 4],
    blocked: u64,
    paths: [EdgeSet; 6],
    f: F,
    stop: bool,
}

impl<F: FnMut(&[VertexId; 4], &[EdgeSet; 6]) -> ControlFlow<()>> PathSearch<'_, F> {
    /// Triangle images completed once path `i` (in `PAIRS` order) is set.
    fn triangles_ok(&self, i: usize) -> bool {
        let tri = |a: usize, b: usize, c: usize| {
            sign_of(self.g, self.paths[a].union(self.paths[b]).union(self.paths[c])).is_negative()
        };
        match i {
            2 => tri(0, 1, 2),
            4 => tri(0, 3, 4),
            5 => tri(1, 3, 5) && tri(2, 4, 5),
            _ => true,
        }
    }

    fn next_path(&mut self, i: usize) {
        if self.stop {
            return;
        }
        if i == 6 {
            let paths = self.paths;
            if (self.f)(&self.quad, &paths).is_break() {
                self.stop = true;
            }
            return;
        }
        let (a, b) = PAIRS[i];
        let (s, t) = (self.quad[a], self.quad[b]);
        self.walk(i, s, t, EdgeSet::EMPTY, 0);
    }

    fn walk(&mut self, i: usize, at: VertexId, target: VertexId, acc: EdgeSet, internal: u64) {
        for k in 0..self.adj[at].len() {
            if self.stop {
                return;
            }
            let (e, w) = self.adj[at][k];
            if w == target {
                self.paths[i] = acc.with(e);
                if self.triangles_ok(i) {
                    let saved = self.blocked;
                    self.blocked |= internal;
                    self.next_path(i + 1);
                    self.blocked = saved;
                }
            } else if self.blocked >> w & 1 == 0 && internal >> w & 1 == 0 {
                self.walk(i, w, target, acc.with(e), internal | 1 << w);
            }
        }
    }
}

/// Visit every (K4,-)-subdivision inside `within`, quadruple by quadruple
/// in lexicographic order.
pub(crate) fn visit_k4_within(
    g: &SignedGraph,
    within: EdgeSet,
    mut f: impl FnMut(&[VertexId; 4], &[EdgeSet; 6]) -> ControlFlow<()>,
) -> Result<()> {
    check_size(g)?;
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for e in within.iter() {
        let ed = g.edge(e);
        if !ed.is_loop() {
            adj[ed.u].push((e, ed.v));
            adj[ed.v].push((e, ed.u));
        }
    }
    let cands: Vec<VertexId> = (0..n)
        .filter(|&v| adj[v].iter().map(|x| x.1).collect::<std::collections::BTreeSet<_>>().len() >= 3)
        .collect();
    let mut search = PathSearch {
        g,
        adj,
        quad: [0; 4],
        blocked: 0,
        paths: [EdgeSet::EMPTY; 6],
        f: &mut f,
        stop: false,
    };
    let c = cands.len();
    for i in 0..c {
        for j in i + 1..c {
            for k in j + 1..c {
                for l in k + 1..c {
                    let quad = [cands[i], cands[j], cands[k], cands[l]];
                    search.quad = quad;
                    search.blocked = quad.iter().fold(0u64, |m, &v| m | 1 << v);
                    search.next_path(0);
                    if search.stop {
                        return Ok(());
                    }
                }
            }
        }
    }
    Ok(())
}

fn witness(g: &SignedGraph, quad: &[VertexId; 4], paths: &[EdgeSet; 6]) -> K4Subdivision {
    let set = paths.iter().fold(EdgeSet::EMPTY, |s, p| s.union(*p));
    // report paths in ab, ac, ad, bc, bd, cd order
    let order = [0, 1, 3, 2, 4, 5];
    K4Subdivision {
        branch: quad.map(|v| g.label(v).to_string()),
        paths: order.iter().map(|&i| ordered_path(g, quad, i, paths[i])).collect(),
        edges: set.to_vec(),
        branch_ids: *quad,
        set,
    }
}

/// Edges of a branch path listed from its first branch vertex.
fn ordered_path(g: &SignedGraph, quad: &[VertexId; 4], i: usize, p: EdgeSet) -> Vec<EdgeId> {
    let mut at = quad[PAIRS[i].0];
    let mut left = p;
    let mut out = Vec::new();
    while let Some(e) = left.iter().find(|&e| g.edge(e).touches(at)) {
        out.push(e);
        left.remove(e);
        at = g.edge(e).other(at);
    }
    out
}

/// First (K4,-)-subdivision: the least branch quadruple admitting one,
/// and within it the least sorted edge-id list.
pub fn find_k4_minus_subdivision(g: &SignedGraph) -> Result<Option<K4Subdivision>> {
    let lim = Limits::current();
    check("vertex count for subdivision search", g.vertex_count(), lim.k4_vertices)?;
    check("edge count for subdivision search", g.edge_count(), lim.k4_edges)?;
    first_k4_within(g, g.all_edges())
}

pub(crate) fn first_k4_within(g: &SignedGraph, within: EdgeSet) -> Result<Option<K4Subdivision>> {
    let mut best: Option<K4Subdivision> = None;
    let mut quad: Option<[VertexId; 4]> = None;
    visit_k4_within(g, within, |q, p| {
        if quad.is_some_and(|x| x != *q) {
            return ControlFlow::Break(());
        }
        quad = Some(*q);
        let w = witness(g, q, p);
        if best.as_ref().map_or(true, |b| w.edges < b.edges) {
            best = Some(w);
        }
        ControlFlow::Continue(())
    })?;
    Ok(best)
}

fn require_critical(g: &SignedGraph, k: usize) -> Result<()> {
    let cert = is_critical(g, Method::Deletion)?;
    if cert.ell != k {
        return Err(Error::Precondition(format!("frustration index is {}, not {k}", cert.ell)));
    }
    if !cert.critical {
        return Err(Error::Precondition(format!("graph is not critically {k}-frustrated")));
    }
    Ok(())
}

/// Membership in S*(k) for an irreducible critically k-frustrated graph:
/// true when no two negative cycles are edge-disjoint.
pub fn in_s_star(g: &SignedGraph, k: usize) -> Result<bool> {
    require_critical(g, k)?;
    if !is_irreducible(g) {
        return Err(Error::Precondition("graph is not irreducible".into()));
    }
    has_no_disjoint_negative_pair(g)
}

pub(crate) fn has_no_disjoint_negative_pair(g: &SignedGraph) -> Result<bool> {
    let cyc = cycle_sets(g, g.all_edges(), true, &Limits::current())?;
    for i in 0..cyc.len() {
        for j in i + 1..cyc.len() {
            if cyc[i].is_disjoint(cyc[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GgsReport {
    /// A (K4,-)-subdivision exists, so the packing equality is not claimed.
    Subdivision { witness: K4Subdivision },
    /// No subdivision: the packing size is compared with the frustration index.
    Packing {
        ell: usize,
        packing: Vec<Vec<EdgeId>>,
        holds: bool,
    },
}

/// Without a (K4,-)-subdivision the maximum number of edge-disjoint
/// negative cycles equals the frustration index.
pub fn check_ggs(g: &SignedGraph) -> Result<GgsReport> {
    if let Some(w) = find_k4_minus_subdivision(g)? {
        return Ok(GgsReport::Subdivision { witness: w });
    }
    let ell = frustration_index(g)?.ell;
    let packing = packing_within(g, g.all_edges(), 1)?;
    Ok(GgsReport::Packing {
        ell,
        holds: packing.len() == ell,
        packing: packing.iter().map(|c| c.edges().to_vec()).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureAudit {
    pub k: usize,
    pub max_degree: usize,
    pub degree_bound: usize,
    pub degree_conforms: bool,
    /// When the degree bound is attained: whether the graph is k
    /// edge-disjoint negative cycles through one common vertex.
    pub extremal_is_cycle_bouquet: Option<bool>,
}

/// Compare the maximum degree of a critically k-frustrated graph with 2k.
pub fn audit_conjectures(g: &SignedGraph, k: usize) -> Result<ConjectureAudit> {
    require_critical(g, k)?;
    let max_degree = g.max_degree();
    let extremal = if max_degree == 2 * k {
        Some(is_cycle_bouquet(g, k)?)
    } else {
        None
    };
    Ok(ConjectureAudit {
        k,
        max_degree,
        degree_bound: 2 * k,
        degree_conforms: max_degree <= 2 * k,
        extremal_is_cycle_bouquet: extremal,
    })
}

/// True when the edge set splits into k edge-disjoint negative cycles that
/// all pass through one vertex.
fn is_cycle_bouquet(g: &SignedGraph, k: usize) -> Result<bool> {
    let cyc = cycle_sets(g, g.all_edges(), true, &Limits::current())?;
    let all = g.all_edges();
    for v in 0..g.vertex_count() {
        let through: Vec<EdgeSet> = cyc
            .iter()
            .copied()
            .filter(|c| c.iter().any(|e| g.edge(e).touches(v)))
            .collect();
        let pick = max_packing(&through, g.edge_count(), 1);
        if pick.len() == k {
            let union = pick.iter().fold(EdgeSet::EMPTY, |s, &i| s.union(through[i]));
            if union == all {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// For three negative cycles with no edge common to all three, their union
/// holds a (K4,-)-subdivision or two edge-disjoint negative cycles.
/// `None` when the hypothesis fails.
pub fn three_cycle_union_check(g: &SignedGraph, cycles: [&Cycle; 3]) -> Result<Option<bool>> {
    if cycles.iter().any(|c| c.sign(g).is_positive()) {
        return Ok(None);
    }
    let s = cycles.map(|c| c.edge_set());
    if !s[0].intersection(s[1]).intersection(s[2]).is_empty() {
        return Ok(None);
    }
    let union = s[0].union(s[1]).union(s[2]);
    if first_k4_within(g, union)?.is_some() {
        return Ok(Some(true));
    }
    let cyc = cycle_sets(g, union, true, &Limits::current())?;
    Ok(Some(max_packing(&cyc, g.edge_count(), 1).len() >= 2))
}

/// Frustration index of the subgraph formed by an edge set.
pub fn ell_of_edges(g: &SignedGraph, set: &[EdgeId]) -> Result<usize> {
    let s: EdgeSet = set.iter().copied().collect();
    ell_within(g, s, &Limits::current())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign;

    fn sg(s: &str) -> SignedGraph {
        SignedGraph::parse_sg(s).unwrap()
    }

    #[test]
    fn k4_minus_is_its_own_witness() {
        let k4 = sg("a b -\na c -\na d -\nb c -\nb d -\nc d -\n");
        let w = find_k4_minus_subdivision(&k4).unwrap().unwrap();
        assert_eq!(w.edges, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(w.branch, ["a", "b", "c", "d"].map(String::from));
        assert_eq!(w.paths, vec![vec![0], vec![1], vec![2], vec![3], vec![4], vec![5]]);
        // all-positive K4 is balanced
        let pos = k4.with_signs(&[Sign::Positive; 6]);
        assert!(find_k4_minus_subdivision(&pos).unwrap().is_none());
    }

    #[test]
    fn subdivided_k4() {
        // subdivide ab and cd of the all-negative K4
        let g = sg("a s -\ns b +\na c -\na d -\nb c -\nb d -\nc t +\nt d -\n");
        let w = find_k4_minus_subdivision(&g).unwrap().unwrap();
        assert_eq!(w.edges.len(), 8);
        assert_eq!(w.paths[0], vec![0, 1]);
        assert!(check_ggs(&g).is_ok());
    }

    #[test]
    fn packings_of_loop_unions() {
        let g = sg("a a -\nb b -\nc c -\n");
        match check_ggs(&g).unwrap() {
            GgsReport::Packing { ell, packing, holds } => {
                assert_eq!(ell, 3);
                assert_eq!(packing.len(), 3);
                assert!(holds);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn audit_on_small_graphs() {
        let k4 = sg("a b -\na c -\na d -\nb c -\nb d -\nc d -\n");
        let a = audit_conjectures(&k4, 2).unwrap();
        assert_eq!(a.max_degree, 3);
        assert!(a.degree_conforms);
        assert_eq!(a.extremal_is_cycle_bouquet, None);
        let two = sg("v v -\nv v -\n");
        let a = audit_conjectures(&two, 2).unwrap();
        assert_eq!(a.max_degree, 4);
        assert_eq!(a.extremal_is_cycle_bouquet, Some(true));
        assert!(matches!(audit_conjectures(&two, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn s_star_membership() {
        let k4 = sg("a b -\na c -\na d -\nb c -\nb d -\nc d -\n");
        assert!(in_s_star(&k4, 2).unwrap());
        let two = sg("u u -\nv v -\n");
        assert!(!in_s_star(&two, 2).unwrap());
        let path = sg("a b -\nb c +\nc a +\n");
        // a subdivided loop is critical but reducible
        assert!(matches!(in_s_star(&path, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn three_cycles_in_k4() {
        let k4 = sg("a b -\na c -\na d -\nb c -\nb d -\nc d -\n");
        let t = |ids: &[usize]| Cycle::from_edges(&k4, ids).unwrap();
        let (c1, c2, c3) = (t(&[0, 1, 3]), t(&[0, 2, 4]), t(&[3, 4, 5]));
        assert_eq!(three_cycle_union_check(&k4, [&c1, &c2, &c3]).unwrap(), Some(true));
        // no edge is common to abc, abd and acd
        let c4 = t(&[1, 2, 5]);
        assert_eq!(three_cycle_union_check(&k4, [&c1, &c2, &c4]).unwrap(), Some(true));
    }
}
