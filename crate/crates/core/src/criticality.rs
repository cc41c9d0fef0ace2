//! Criticality certificates and decompositions.
//!
//! A graph is critically k-frustrated when its frustration index is k and
//! deleting any edge lowers it to k-1. Three independent tests are offered:
//! recomputing the index after each deletion, checking that every edge is
//! negative in some minimum signature, and checking that under a minimum
//! signature every positive edge lies in an equilibrated cut. A graph with
//! index 0 is never critical.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::Serialize;

use crate::cycles::cycle_sets;
use crate::error::{Error, Result};
use crate::frustration::{ell_within, minimum_within, scans, to_minimum_signature};
use crate::graph::{EdgeCut, EdgeId, EdgeSet, SignedGraph, SwitchSet};
use crate::limits::{check, Limits};
use crate::structure::visit_k4_within;

pub use crate::subdivision::{is_irreducible, reduce_to_irreducible, reduce_with, subdivide_multiedge};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Deletion,
    Signatures,
    Cuts,
    All,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Deletion => "deletion",
            Method::Signatures => "signatures",
            Method::Cuts => "cuts",
            Method::All => "all",
        }
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "deletion" => Ok(Method::Deletion),
            "signatures" => Ok(Method::Signatures),
            "cuts" => Ok(Method::Cuts),
            "all" => Ok(Method::All),
            o => Err(format!("unknown method `{o}` (deletion, signatures, cuts, all)")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CutEntry {
    pub edge: EdgeId,
    pub cut: Option<EdgeCut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CutCertificate {
    /// The input was not a minimum signature and was switched first.
    pub auto_switched: bool,
    pub switch: Vec<String>,
    /// One entry per edge that is positive after switching.
    pub positive_edges: Vec<CutEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalityCertificate {
    pub schema: u32,
    pub ell: usize,
    pub critical: bool,
    pub verdicts: BTreeMap<String, bool>,
    /// Frustration index after deleting each edge, by edge id.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deletion: Option<Vec<usize>>,
    /// For each edge, a switch set giving a minimum signature in which the
    /// edge is negative.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signatures: Option<Vec<Option<Vec<String>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cuts: Option<CutCertificate>,
}

/// Frustration index after deleting each edge in turn.
pub fn deletion_profile(g: &SignedGraph) -> Result<Vec<usize>> {
    let lim = Limits::current();
    let all = g.all_edges();
    (0..g.edge_count())
        .map(|e| ell_within(g, all.without(e), &lim))
        .collect()
}

/// For every edge, the least switch set that yields a minimum signature in
/// which the edge is negative.
pub fn negative_witnesses(g: &SignedGraph) -> Result<Vec<Option<SwitchSet>>> {
    let lim = Limits::current();
    let all = g.all_edges();
    let neg = g
        .negative_edges()
        .into_iter()
        .fold(0u128, |m, e| m | 1 << e);
    let (_, least) = minimum_within(g, all, &lim)?;
    let mut wit: Vec<Option<u64>> = vec![None; g.edge_count()];
    for (e, ed) in g.edges().iter().enumerate() {
        if ed.is_loop() && ed.sign.is_negative() {
            wit[e] = Some(least.0);
        }
    }
    for s in scans(g, all, &lim)? {
        let (best, local_least) = s.minimum(neg);
        // other components keep their least minimizing switch
        let rest = least.0 & !local_least;
        s.run(neg, |mask, n| {
            if n.count_ones() as usize != best {
                return;
            }
            let mut bits = n;
            while bits != 0 {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let cand = rest | mask;
                if wit[e].map_or(true, |w| cand < w) {
                    wit[e] = Some(cand);
                }
            }
        });
    }
    Ok(wit.into_iter().map(|w| w.map(SwitchSet)).collect())
}

/// Lexicographic order of sorted vertex lists, for vertex sets as masks.
fn list_lex_less(mut a: u64, mut b: u64) -> bool {
    loop {
        if a == b || b == 0 {
            return false;
        }
        if a == 0 {
            return true;
        }
        let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
        if x != y {
            return x < y;
        }
        a &= a - 1;
        b &= b - 1;
    }
}

/// For every positive edge of a minimum signature, the least vertex set
/// (as a sorted list, inside the edge's component) whose boundary contains
/// the edge and is equilibrated.
fn equilibrated_masks(g: &SignedGraph) -> Result<Vec<Option<u64>>> {
    let lim = Limits::current();
    let all = g.all_edges();
    let neg = g
        .negative_edges()
        .into_iter()
        .fold(0u128, |m, e| m | 1 << e);
    let mut best: Vec<Option<u64>> = vec![None; g.edge_count()];
    for s in scans(g, all, &lim)? {
        let low = 1u64 << s.vertices.trailing_zeros();
        s.run(0, |mask, boundary| {
            if boundary == 0 {
                return;
            }
            // the side holding the component's smallest vertex sorts first
            let side = if mask & low != 0 { mask } else { s.vertices & !mask };
            let minus = (boundary & neg).count_ones();
            let plus = (boundary & !neg).count_ones();
            if minus != plus {
                return;
            }
            let mut bits = boundary & !neg;
            while bits != 0 {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if best[e].map_or(true, |b| list_lex_less(side, b)) {
                    best[e] = Some(side);
                }
            }
        });
    }
    Ok(best)
}

/// Least equilibrated cut through a positive edge of a graph given in a
/// minimum signature.
pub fn equilibrated_cut_for_edge(g: &SignedGraph, e: EdgeId) -> Result<Option<EdgeCut>> {
    if e >= g.edge_count() {
        return Err(Error::UnknownEdge(e));
    }
    if g.edge(e).sign.is_negative() {
        return Err(Error::Precondition(format!("edge {e} is negative")));
    }
    let (ell, _) = minimum_within(g, g.all_edges(), &Limits::current())?;
    if g.negative_count() != ell {
        return Err(Error::Precondition("signature is not minimum".into()));
    }
    Ok(equilibrated_masks(g)?[e].map(|m| g.cut(SwitchSet(m))))
}

/// Run the requested criticality tests and assemble a certificate.
pub fn is_critical(g: &SignedGraph, method: Method) -> Result<CriticalityCertificate> {
    let lim = Limits::current();
    let (ell, least) = minimum_within(g, g.all_edges(), &lim)?;
    let run = |m: Method| method == Method::All || method == m;
    let mut verdicts = BTreeMap::new();
    let mut cert = CriticalityCertificate {
        schema: 1,
        ell,
        critical: false,
        verdicts: BTreeMap::new(),
        deletion: None,
        signatures: None,
        cuts: None,
    };
    if run(Method::Deletion) {
        let prof = deletion_profile(g)?;
        let ok = ell > 0 && prof.iter().all(|&x| x + 1 == ell);
        verdicts.insert(Method::Deletion.name().to_string(), ok);
        cert.deletion = Some(prof);
    }
    if run(Method::Signatures) {
        let wit = negative_witnesses(g)?;
        let ok = ell > 0 && wit.iter().all(|w| w.is_some());
        verdicts.insert(Method::Signatures.name().to_string(), ok);
        cert.signatures = Some(wit.into_iter().map(|w| w.map(|s| s.labels(g))).collect());
    }
    if run(Method::Cuts) {
        let auto = g.negative_count() != ell;
        let h = g.switch(least);
        let masks = equilibrated_masks(&h)?;
        let mut entries = Vec::new();
        for (e, ed) in h.edges().iter().enumerate() {
            if ed.sign.is_positive() {
                entries.push(CutEntry {
                    edge: e,
                    cut: masks[e].map(|m| h.cut(SwitchSet(m))),
                });
            }
        }
        let ok = ell > 0 && entries.iter().all(|c| c.cut.is_some());
        verdicts.insert(Method::Cuts.name().to_string(), ok);
        cert.cuts = Some(CutCertificate {
            auto_switched: auto,
            switch: if auto { least.labels(g) } else { Vec::new() },
            positive_edges: entries,
        });
    }
    let first = *verdicts.values().next().unwrap_or(&false);
    cert.critical = first && verdicts.values().all(|&v| v == first);
    cert.verdicts = verdicts;
    Ok(cert)
}

/// True when the graph is critically frustrated, by the deletion test.
pub fn is_critically_frustrated(g: &SignedGraph) -> Result<bool> {
    Ok(is_critical(g, Method::Deletion)?.critical)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Part {
    pub k: usize,
    pub edges: Vec<EdgeId>,
}

/// An edge partition into critically frustrated parts whose indices sum to
/// the index of the whole graph. Parts are ordered by smallest edge id.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Decomposition {
    pub parts: Vec<Part>,
}

impl Decomposition {
    pub fn profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.parts.iter().map(|x| x.k).collect();
        p.sort_unstable();
        p
    }
}

type Partition = Vec<(EdgeSet, usize)>;

fn normalize(mut p: Partition) -> Partition {
    p.sort_by_key(|(s, _)| s.first());
    p
}

struct Decomposer<'a> {
    g: &'a SignedGraph,
    lim: Limits,
    /// Negative cycles of the whole graph.
    cycles: Vec<EdgeSet>,
    memo: HashMap<(EdgeSet, usize), Vec<Partition>>,
}

impl<'a> Decomposer<'a> {
    fn new(g: &'a SignedGraph) -> Result<Self> {
        let lim = Limits::current();
        let cycles = cycle_sets(g, g.all_edges(), true, &lim)?;
        Ok(Decomposer {
            g,
            lim,
            cycles,
            memo: HashMap::new(),
        })
    }

    fn ell(&self, s: EdgeSet) -> Result<usize> {
        ell_within(self.g, s, &self.lim)
    }

    fn critical_within(&self, s: EdgeSet, k: usize) -> Result<bool> {
        if k == 0 || self.ell(s)? != k {
            return Ok(false);
        }
        for e in s.iter() {
            if self.ell(s.without(e))? + 1 != k {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Parts with index 1 or 2 that can be split off `s` leaving index
    /// `k - part index`.
    fn small_parts(&self, s: EdgeSet, k: usize) -> Result<Vec<(EdgeSet, usize)>> {
        let mut out = Vec::new();
        if k >= 2 {
            for &c in &self.cycles {
                if c.is_subset(s) && c != s && self.ell(s.difference(c))? == k - 1 {
                    out.push((c, 1));
                }
            }
        }
        if k >= 3 {
            let mut subs = Vec::new();
            visit_k4_within(self.g, s, |_, paths| {
                subs.push(paths.iter().fold(EdgeSet::EMPTY, |a, p| a.union(*p)));
                ControlFlow::Continue(())
            })?;
            for p in subs {
                if p != s && self.ell(s.difference(p))? == k - 2 {
                    out.push((p, 2));
                }
            }
        }
        Ok(out)
    }

    /// Partitions of `s` into critical parts with indices summing to `k`,
    /// where every part other than possibly one is a negative cycle or a
    /// (K4,-)-subdivision. Includes the single-part partition when `s` is
    /// itself critical.
    fn refined(&mut self, s: EdgeSet, k: usize) -> Result<Vec<Partition>> {
        if let Some(r) = self.memo.get(&(s, k)) {
            return Ok(r.clone());
        }
        let mut out: BTreeSet<Vec<(EdgeSet, usize)>> = BTreeSet::new();
        if self.critical_within(s, k)? {
            out.insert(vec![(s, k)]);
        }
        for (p, kp) in self.small_parts(s, k)? {
            for mut rest in self.refined(s.difference(p), k - kp)? {
                rest.push((p, kp));
                out.insert(normalize(rest));
            }
        }
        let r: Vec<Partition> = out.into_iter().collect();
        self.memo.insert((s, k), r.clone());
        Ok(r)
    }

    /// All partitions of `s` into critical parts, by exhaustive bipartition.
    fn exhaustive(&mut self, s: EdgeSet, k: usize) -> Result<Vec<Partition>> {
        if let Some(r) = self.memo.get(&(s, k)) {
            return Ok(r.clone());
        }
        let mut out = Vec::new();
        if self.critical_within(s, k)? {
            out.push(vec![(s, k)]);
        }
        let e0 = s.first().unwrap();
        let others: Vec<EdgeId> = s.without(e0).to_vec();
        for bits in 0u64..(1u64 << others.len()) {
            let mut p = EdgeSet::single(e0);
            for (i, &e) in others.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    p.insert(e);
                }
            }
            if p == s {
                continue;
            }
            let rest = s.difference(p);
            let (kp, kr) = (self.ell(p)?, self.ell(rest)?);
            if kp == 0 || kr == 0 || kp + kr != k || !self.critical_within(p, kp)? {
                continue;
            }
            for mut tail in self.exhaustive(rest, kr)? {
                tail.push((p, kp));
                out.push(normalize(tail));
            }
        }
        self.memo.insert((s, k), out.clone());
        Ok(out)
    }
}

/// Every way of merging the parts of `p` into groups, as partitions.
fn coarsenings(p: &Partition) -> Vec<Partition> {
    fn rec(p: &Partition, i: usize, groups: &mut Vec<(EdgeSet, usize)>, out: &mut Vec<Partition>) {
        if i == p.len() {
            out.push(normalize(groups.clone()));
            return;
        }
        for gi in 0..groups.len() {
            let saved = groups[gi];
            groups[gi] = (saved.0.union(p[i].0), saved.1 + p[i].1);
            rec(p, i + 1, groups, out);
            groups[gi] = saved;
        }
        groups.push(p[i]);
        rec(p, i + 1, groups, out);
        groups.pop();
    }
    let mut out = Vec::new();
    rec(p, 0, &mut Vec::new(), &mut out);
    out
}

fn check_decomposition_guard(g: &SignedGraph, k: usize, lim: &Limits) -> Result<()> {
    check("frustration index for decomposition search", k, lim.decomposition_k)?;
    if k >= 6 {
        // parts of index 3 or more can pair up; only the exhaustive search is complete
        check("edge count for exhaustive decomposition search", g.edge_count(), lim.partition_edges)?;
    }
    Ok(())
}

/// All decompositions of a critically k-frustrated graph, up to part order.
/// A graph that is not critical has none.
pub fn find_decompositions(g: &SignedGraph, k: usize) -> Result<Vec<Decomposition>> {
    let lim = Limits::current();
    let ell = ell_within(g, g.all_edges(), &lim)?;
    if ell != k {
        return Err(Error::Precondition(format!("frustration index is {ell}, not {k}")));
    }
    check_decomposition_guard(g, k, &lim)?;
    let mut d = Decomposer::new(g)?;
    let all = g.all_edges();
    if !d.critical_within(all, k)? {
        return Ok(Vec::new());
    }
    let base = if k >= 6 { d.exhaustive(all, k)? } else { d.refined(all, k)? };
    let mut found: BTreeSet<Partition> = BTreeSet::new();
    for p in &base {
        for c in coarsenings(p) {
            if c.len() >= 2 {
                found.insert(c);
            }
        }
    }
    let mut out: Vec<Decomposition> = found
        .into_iter()
        .map(|p| Decomposition {
            parts: p
                .into_iter()
                .map(|(s, k)| Part { k, edges: s.to_vec() })
                .collect(),
        })
        .collect();
    out.sort_by(|a, b| a.parts.len().cmp(&b.parts.len()).then(a.cmp(b)));
    Ok(out)
}

/// Decompositions whose parts each induce a connected subgraph.
pub fn find_connected_decompositions(g: &SignedGraph, k: usize) -> Result<Vec<Decomposition>> {
    Ok(find_decompositions(g, k)?
        .into_iter()
        .filter(|d| {
            d.parts.iter().all(|p| {
                let s: EdgeSet = p.edges.iter().copied().collect();
                g.edge_subgraph(s).without_isolated().is_connected()
            })
        })
        .collect())
}

/// Whether a critically frustrated graph decomposes. Graphs that are not
/// critical are reported as not decomposable.
pub fn is_decomposable(g: &SignedGraph) -> Result<bool> {
    let lim = Limits::current();
    let k = ell_within(g, g.all_edges(), &lim)?;
    if k <= 1 {
        return Ok(false);
    }
    check_decomposition_guard(g, k, &lim)?;
    let mut d = Decomposer::new(g)?;
    let all = g.all_edges();
    if !d.critical_within(all, k)? {
        return Ok(false);
    }
    if k >= 6 {
        return Ok(d.exhaustive(all, k)?.iter().any(|p| p.len() >= 2));
    }
    // splitting off a part of index 1 or 2 leaves a critical remainder, and
    // below index 6 every decomposition has such a part
    for &c in &d.cycles {
        if c != all && d.ell(all.difference(c))? == k - 1 {
            return Ok(true);
        }
    }
    if k >= 3 {
        let mut hit = false;
        let mut err = None;
        visit_k4_within(g, all, |_, paths| {
            let p = paths.iter().fold(EdgeSet::EMPTY, |a, x| a.union(*x));
            match d.ell(all.difference(p)) {
                Ok(r) if r + 2 == k => {
                    hit = true;
                    ControlFlow::Break(())
                }
                Ok(_) => ControlFlow::Continue(()),
                Err(e) => {
                    err = Some(e);
                    ControlFlow::Break(())
                }
            }
        })?;
        if let Some(e) = err {
            return Err(e);
        }
        return Ok(hit);
    }
    Ok(false)
}

/// The part sets of a decomposition as a partition check: parts are
/// disjoint, cover every edge, and each is critical with its index.
pub fn verify_decomposition(g: &SignedGraph, d: &Decomposition) -> Result<bool> {
    let lim = Limits::current();
    let mut seen = EdgeSet::EMPTY;
    let mut total = 0;
    let dec = Decomposer {
        g,
        lim,
        cycles: Vec::new(),
        memo: HashMap::new(),
    };
    for p in &d.parts {
        let s: EdgeSet = p.edges.iter().copied().collect();
        if !s.is_disjoint(seen) || !dec.critical_within(s, p.k)? {
            return Ok(false);
        }
        seen = seen.union(s);
        total += p.k;
    }
    Ok(seen == g.all_edges() && total == dec.ell(g.all_edges())? && d.parts.len() >= 2)
}

/// Switch to the least minimum signature, keeping track of the switch.
pub fn minimum_signature_of(g: &SignedGraph) -> Result<SignedGraph> {
    Ok(to_minimum_signature(g)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(s: &str) -> SignedGraph {
        SignedGraph::parse_sg(s).unwrap()
    }

    fn k4() -> SignedGraph {
        sg("a b -\na c -\na d -\nb c -\nb d -\nc d -\n")
    }

    fn ghat0() -> SignedGraph {
        sg("x y +\nx z +\nx w -\ny z -\ny w +\nz w +\nx w +\ny z -\n")
    }

    #[test]
    fn methods_agree_on_small_graphs() {
        for (g, crit) in [
            (k4(), true),
            (sg("v v -\n"), true),
            (sg("v v -\nv v -\n"), true),
            (sg("a b -\na c -\na d -\nb c -\nb d -\n"), false),
            (sg("a b +\nb c +\n"), false),
            (sg("a b -\nb c +\nc a +\nc d +\n"), false),
            (ghat0(), true),
        ] {
            let c = is_critical(&g, Method::All).unwrap();
            assert_eq!(c.verdicts.len(), 3);
            assert!(c.verdicts.values().all(|&v| v == crit), "{}", g.to_sg());
            assert_eq!(c.critical, crit);
        }
    }

    #[test]
    fn cut_examples() {
        // K4 with negative edges ab and cd; edge ac lies in the boundary of {a, d}
        let g = sg("a b -\na c +\na d +\nb c +\nb d +\nc d -\n");
        let c = equilibrated_cut_for_edge(&g, 1).unwrap().unwrap();
        assert_eq!((c.positive, c.negative), (2, 2));
        assert!(c.boundary.contains(&1));
        assert_eq!(c.side, vec!["a".to_string(), "d".to_string()]);
        // negative triangle: the cut isolates one vertex of the positive edge
        let t = sg("a b -\nb c +\nc a +\n");
        let c = equilibrated_cut_for_edge(&t, 1).unwrap().unwrap();
        assert_eq!(c.boundary, vec![0, 1]);
        assert!(matches!(equilibrated_cut_for_edge(&t, 0), Err(Error::Precondition(_))));
        assert!(matches!(equilibrated_cut_for_edge(&t, 7), Err(Error::UnknownEdge(7))));
        let bal = sg("a b +\nb c +\n");
        assert_eq!(equilibrated_cut_for_edge(&bal, 0).unwrap(), None);
    }

    #[test]
    fn list_order() {
        assert!(list_lex_less(0b1001, 0b0110));
        assert!(list_lex_less(0b0001, 0b1001));
        assert!(!list_lex_less(0b1001, 0b1001));
        assert!(list_lex_less(0, 0b1));
    }

    #[test]
    fn cuts_auto_switch() {
        let c = is_critical(&k4(), Method::Cuts).unwrap();
        let cuts = c.cuts.unwrap();
        assert!(cuts.auto_switched);
        assert_eq!(cuts.positive_edges.len(), 4);
        assert!(c.critical);
    }

    #[test]
    fn ghat0_decompositions() {
        let g = ghat0();
        let ds = find_decompositions(&g, 3).unwrap();
        let fine: Vec<&Decomposition> = ds.iter().filter(|d| d.parts.len() == 3).collect();
        // xwx with either yz copy in its triangle
        assert_eq!(fine.len(), 2);
        for d in &fine {
            assert!(d.parts.iter().any(|p| p.edges == vec![2, 6]));
        }
        for d in &ds {
            assert!(verify_decomposition(&g, d).unwrap());
        }
        assert!(is_decomposable(&g).unwrap());
    }

    #[test]
    fn non_decomposable_and_loops() {
        assert!(find_decompositions(&k4(), 2).unwrap().is_empty());
        assert!(!is_decomposable(&k4()).unwrap());
        let two = sg("u u -\nv v -\n");
        let ds = find_decompositions(&two, 2).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].profile(), vec![1, 1]);
        assert!(is_decomposable(&sg("v v -\nv v -\n")).unwrap());
        assert!(matches!(find_decompositions(&two, 3), Err(Error::Precondition(_))));
        // not critical: no decompositions
        assert!(find_decompositions(&sg("v v -\nv w +\n"), 1).unwrap().is_empty());
    }

    #[test]
    fn deletion_profile_of_k4_minus_edge() {
        let g = sg("a b -\na c -\na d -\nb c -\nb d -\n");
        let c = is_critical(&g, Method::Deletion).unwrap();
        assert_eq!(c.ell, 1);
        assert!(!c.critical);
        assert!(c.deletion.unwrap().contains(&1));
    }
}
