//! Exact frustration index by exhaustive switching.
//!
//! Each connected component is scanned independently. Inside a component
//! the vertex with the largest id is never switched (switching a whole
//! component changes nothing), and the remaining `2^(c-1)` switch sets are
//! visited in Gray-code order so each step flips one vertex and updates the
//! negative-edge mask with a single XOR.

use serde::Serialize;

use crate::error::Result;
use crate::graph::{EdgeId, EdgeSet, SignedGraph, SwitchSet, MAX_EDGES, MAX_VERTICES};
use crate::limits::{check, Limits};

/// A minimum signature: switching at `switch` leaves exactly `ell`
/// negative edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinSignature {
    pub ell: usize,
    pub switch: Vec<String>,
    pub negative_edges: Vec<EdgeId>,
    #[serde(skip)]
    pub mask: SwitchSet,
}

impl MinSignature {
    fn new(g: &SignedGraph, mask: SwitchSet) -> MinSignature {
        let h = g.switch(mask);
        let negative_edges = h.negative_edges();
        MinSignature {
            ell: negative_edges.len(),
            switch: mask.labels(g),
            negative_edges,
            mask,
        }
    }
}

/// One connected component prepared for a switching scan.
pub(crate) struct Scan {
    /// Switchable vertices in Gray-code bit order.
    pub free: Vec<usize>,
    /// Non-loop edges of the scanned edge set incident to each free vertex.
    pub incident: Vec<u128>,
    /// Non-loop edges of the scanned edge set inside the component.
    pub inner: u128,
    /// Every vertex of the component, the anchor included.
    pub vertices: u64,
}

pub(crate) fn check_size(g: &SignedGraph) -> Result<()> {
    check("vertex count", g.vertex_count(), MAX_VERTICES)?;
    check("edge count", g.edge_count(), MAX_EDGES)
}

pub(crate) fn scans(g: &SignedGraph, within: EdgeSet, limits: &Limits) -> Result<Vec<Scan>> {
    check_size(g)?;
    let mut out = Vec::new();
    for comp in g.components_within(within) {
        check("component size for switching search", comp.len(), limits.switch_component_vertices)?;
        let free: Vec<usize> = comp[..comp.len() - 1].to_vec();
        let mut incident = vec![0u128; free.len()];
        let mut inner = 0u128;
        for e in within.iter() {
            let ed = g.edge(e);
            if ed.is_loop() || !comp.contains(&ed.u) {
                continue;
            }
            inner |= 1 << e;
            for (i, &v) in free.iter().enumerate() {
                if ed.touches(v) {
                    incident[i] |= 1 << e;
                }
            }
        }
        out.push(Scan {
            free,
            incident,
            inner,
            vertices: comp.iter().fold(0u64, |m, &v| m | 1 << v),
        });
    }
    Ok(out)
}

impl Scan {
    /// Visit every switch set of the component that avoids the anchor,
    /// reporting the vertex mask and the negative-edge mask after switching.
    pub fn run(&self, negative: u128, mut visit: impl FnMut(u64, u128)) {
        let mut neg = negative & self.inner;
        let mut mask = 0u64;
        visit(mask, neg);
        let k = self.free.len();
        for i in 1u64..(1u64 << k) {
            let b = i.trailing_zeros() as usize;
            mask ^= 1 << self.free[b];
            neg ^= self.incident[b];
            visit(mask, neg);
        }
    }

    /// Smallest negative count and the numerically least switch set
    /// achieving it.
    pub fn minimum(&self, negative: u128) -> (usize, u64) {
        let mut best = (usize::MAX, 0u64);
        self.run(negative, |mask, neg| {
            let c = neg.count_ones() as usize;
            if c < best.0 || (c == best.0 && mask < best.1) {
                best = (c, mask);
            }
        });
        best
    }
}

fn negative_mask(g: &SignedGraph, within: EdgeSet) -> u128 {
    within
        .iter()
        .filter(|&e| g.edge(e).sign.is_negative())
        .fold(0u128, |m, e| m | 1 << e)
}

fn negative_loops(g: &SignedGraph, within: EdgeSet) -> usize {
    within
        .iter()
        .filter(|&e| {
            let ed = g.edge(e);
            ed.is_loop() && ed.sign.is_negative()
        })
        .count()
}

/// Frustration index of the spanning subgraph on `within`, with the least
/// minimizing switch set.
pub(crate) fn minimum_within(g: &SignedGraph, within: EdgeSet, limits: &Limits) -> Result<(usize, SwitchSet)> {
    let neg = negative_mask(g, within);
    let mut ell = negative_loops(g, within);
    let mut mask = 0u64;
    for s in scans(g, within, limits)? {
        let (c, m) = s.minimum(neg);
        ell += c;
        mask |= m;
    }
    Ok((ell, SwitchSet(mask)))
}

pub(crate) fn ell_within(g: &SignedGraph, within: EdgeSet, limits: &Limits) -> Result<usize> {
    Ok(minimum_within(g, within, limits)?.0)
}

/// The frustration index together with the lexicographically least
/// minimizing switch set, vertex `i` being bit `i`.
pub fn frustration_index(g: &SignedGraph) -> Result<MinSignature> {
    let (ell, mask) = minimum_within(g, g.all_edges(), &Limits::current())?;
    let sig = MinSignature::new(g, mask);
    debug_assert_eq!(sig.ell, ell);
    Ok(sig)
}

/// Every distinct minimum negative-edge set, sorted by edge-id list. Each
/// comes with the switch set reaching it that leaves the largest vertex of
/// every component unswitched.
pub fn all_minimum_signatures(g: &SignedGraph) -> Result<Vec<MinSignature>> {
    let within = g.all_edges();
    let neg = negative_mask(g, within);
    let mut combined: Vec<u64> = vec![0];
    for s in scans(g, within, &Limits::current())? {
        let (best, _) = s.minimum(neg);
        let mut local = Vec::new();
        s.run(neg, |mask, n| {
            if n.count_ones() as usize == best {
                local.push(mask);
            }
        });
        let mut next = Vec::with_capacity(combined.len() * local.len());
        for &a in &combined {
            for &b in &local {
                next.push(a | b);
            }
        }
        combined = next;
    }
    let mut out: Vec<MinSignature> = combined
        .into_iter()
        .map(|m| MinSignature::new(g, SwitchSet(m)))
        .collect();
    out.sort_by(|a, b| a.negative_edges.cmp(&b.negative_edges));
    Ok(out)
}

/// True when the current signature has the fewest negative edges in its
/// switching class.
pub fn is_minimum_signature(g: &SignedGraph) -> Result<bool> {
    Ok(g.negative_count() == frustration_index(g)?.ell)
}

/// Switch `g` to its least minimum signature.
pub fn to_minimum_signature(g: &SignedGraph) -> Result<(SignedGraph, MinSignature)> {
    let sig = frustration_index(g)?;
    Ok((g.switch(sig.mask), sig))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign;

    /// Brute force over every subset of vertices, no anchoring.
    fn oracle(g: &SignedGraph) -> usize {
        let n = g.vertex_count();
        (0u64..1 << n)
            .map(|m| g.switch(SwitchSet(m)).negative_count())
            .min()
            .unwrap_or(0)
    }

    fn sg(s: &str) -> SignedGraph {
        SignedGraph::parse_sg(s).unwrap()
    }

    #[test]
    fn small_cases() {
        let k4 = sg("a b -\na c -\na d -\nb c -\nb d -\nc d -\n");
        let f = frustration_index(&k4).unwrap();
        assert_eq!(f.ell, 2);
        assert_eq!(f.ell, oracle(&k4));
        assert_eq!(frustration_index(&sg("v v -\n")).unwrap().ell, 1);
        assert_eq!(frustration_index(&sg("v v -\nv v -\n")).unwrap().ell, 2);
        assert_eq!(frustration_index(&sg("v v +\n")).unwrap().ell, 0);
        assert_eq!(frustration_index(&SignedGraph::empty()).unwrap().ell, 0);
        // a balanced graph switched arbitrarily
        let t = sg("a b -\nb c -\nc a +\n");
        assert_eq!(frustration_index(&t).unwrap().ell, 0);
    }

    #[test]
    fn witness_is_least_mask() {
        // path a-b-c with both edges negative: {b} and {a, c}... anchored at c
        let p = sg("a b -\nb c -\n");
        let f = frustration_index(&p).unwrap();
        assert_eq!(f.ell, 0);
        let least = (0u64..8)
            .find(|&m| p.switch(SwitchSet(m)).negative_count() == 0)
            .unwrap();
        assert_eq!(f.mask.0, least);
        assert_eq!(f.switch, vec!["b".to_string()]);
    }

    #[test]
    fn matches_oracle_on_mixed_graphs() {
        let g = sg("0 1 -\n1 2 +\n2 0 +\n2 3 -\n3 3 -\n3 4 +\n4 2 -\n4 2 -\n5 6 -\n6 5 +\n");
        assert_eq!(frustration_index(&g).unwrap().ell, oracle(&g));
    }

    #[test]
    fn all_minima() {
        let k4 = sg("a b -\na c -\na d -\nb c -\nb d -\nc d -\n");
        let all = all_minimum_signatures(&k4).unwrap();
        // the two negative edges form one of three perfect matchings
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(|s| s.ell == 2));
        assert!(all.windows(2).all(|w| w[0].negative_edges < w[1].negative_edges));
        assert_eq!(all[0].negative_edges, vec![0, 5]);
        assert!(!is_minimum_signature(&k4).unwrap());
        let (h, _) = to_minimum_signature(&k4).unwrap();
        assert!(is_minimum_signature(&h).unwrap());
        assert_eq!(h.negative_count(), 2);
        assert!(h.signs().iter().filter(|s| **s == Sign::Negative).count() == 2);
    }

    #[test]
    fn guard_refuses_large_components() {
        let edges: Vec<(usize, usize, Sign)> = (0..30).map(|i| (i, (i + 1) % 30, Sign::Negative)).collect();
        let g = SignedGraph::from_indexed(30, &edges);
        let err = minimum_within(&g, g.all_edges(), &Limits::default()).unwrap_err();
        assert!(err.is_guard());
    }
}
