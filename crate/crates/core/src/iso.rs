//! Switching isomorphism and a canonical form for switching classes.
//!
//! The canonical code of a graph is the lexicographically least upper
//! triangle of its multiplicity matrix over all vertex orders and all
//! switchings. It is built column by column: position `j` contributes the
//! slots between the vertex placed there and positions `0..=j`. Only
//! candidates producing the least column are expanded, and branches whose
//! prefix already exceeds the best code are cut.

use serde::Serialize;

use crate::error::Result;
use crate::frustration::check_size;
use crate::graph::{Sign, SignedGraph, SwitchSet, VertexId};
use crate::limits::{check, Limits};

/// Canonical code of a switching class; equal codes mean switching
/// isomorphic graphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: Vec<u32>,
}

impl CanonicalForm {
    /// The representative the code describes, on vertices `0..n` in
    /// canonical order. Within a pair, positive edges come first.
    pub fn to_graph(&self) -> SignedGraph {
        let mut edges = Vec::new();
        let mut it = self.code.iter();
        for j in 0..self.n {
            for i in 0..=j {
                let s = *it.next().expect("code length matches n");
                if s == u32::MAX {
                    continue;
                }
                let (q, p) = (s >> 16, s & 0xffff);
                edges.extend((0..p).map(|_| (i, j, Sign::Positive)));
                edges.extend((0..q).map(|_| (i, j, Sign::Negative)));
            }
        }
        SignedGraph::from_indexed(self.n, &edges)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    /// Image in the second graph of each vertex of the first, by label.
    pub mapping: Vec<(String, String)>,
    /// Switch set in the first graph applied before relabelling.
    pub switch: Vec<String>,
}

/// Slot value for a pair of vertices: fewer negative edges sort first,
/// and absent pairs sort last so that the search places adjacent vertices
/// early.
fn slot(p: u16, q: u16, flipped: bool) -> u32 {
    if p == 0 && q == 0 {
        return u32::MAX;
    }
    let (p, q) = if flipped { (q, p) } else { (p, q) };
    (q as u32) << 16 | p as u32
}

struct Canon {
    n: usize,
    counts: Vec<(u16, u16)>,
    order: Vec<VertexId>,
    bits: u64,
    used: u64,
    prefix: Vec<u32>,
    best: Option<(Vec<u32>, Vec<VertexId>, u64)>,
}

impl Canon {
    fn pair(&self, a: VertexId, b: VertexId) -> (u16, u16) {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.counts[a * self.n + b]
    }

    fn block(&self, v: VertexId, bit: bool) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.order.len() + 1);
        for &w in &self.order {
            let (p, q) = self.pair(w, v);
            out.push(slot(p, q, (self.bits >> w & 1 == 1) != bit));
        }
        let (p, q) = self.pair(v, v);
        out.push(slot(p, q, false));
        out
    }

    fn rec(&mut self) {
        let depth = self.order.len();
        if depth == self.n {
            if self.best.as_ref().map_or(true, |b| self.prefix < b.0) {
                self.best = Some((self.prefix.clone(), self.order.clone(), self.bits));
            }
            return;
        }
        let mut cands: Vec<(Vec<u32>, VertexId, bool)> = Vec::new();
        for v in 0..self.n {
            if self.used >> v & 1 == 1 {
                continue;
            }
            let bits: &[bool] = if depth == 0 { &[false] } else { &[false, true] };
            for &bit in bits {
                cands.push((self.block(v, bit), v, bit));
            }
        }
        let least = cands.iter().map(|c| &c.0).min().unwrap().clone();
        let len = self.prefix.len();
        self.prefix.extend_from_slice(&least);
        if let Some(b) = &self.best {
            if self.prefix[..] > b.0[..self.prefix.len()] {
                self.prefix.truncate(len);
                return;
            }
        }
        for (blk, v, bit) in cands {
            if blk != least {
                continue;
            }
            self.order.push(v);
            self.used |= 1 << v;
            if bit {
                self.bits |= 1 << v;
            }
            self.rec();
            self.bits &= !(1 << v);
            self.used &= !(1 << v);
            self.order.pop();
        }
        self.prefix.truncate(len);
    }
}

/// Canonical code plus the vertex order and switch bits realizing it.
fn canonical_labeling(g: &SignedGraph) -> Result<(CanonicalForm, Vec<VertexId>, u64)> {
    check_size(g)?;
    check("vertex count for canonical form", g.vertex_count(), Limits::current().canonical_vertices)?;
    let n = g.vertex_count();
    let mut c = Canon {
        n,
        counts: g.pair_counts(),
        order: Vec::new(),
        bits: 0,
        used: 0,
        prefix: Vec::new(),
        best: None,
    };
    c.rec();
    let (code, order, bits) = c.best.unwrap_or_default();
    Ok((CanonicalForm { n, code }, order, bits))
}

pub fn canonical_form(g: &SignedGraph) -> Result<CanonicalForm> {
    Ok(canonical_labeling(g)?.0)
}

/// A relabelling and switching taking `g1` onto `g2`, if one exists.
pub fn switching_isomorphism(g1: &SignedGraph, g2: &SignedGraph) -> Result<Option<IsoWitness>> {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let mut d1 = g1.degrees();
    let mut d2 = g2.degrees();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(None);
    }
    let (c1, o1, b1) = canonical_labeling(g1)?;
    let (c2, o2, b2) = canonical_labeling(g2)?;
    if c1 != c2 {
        return Ok(None);
    }
    let n = g1.vertex_count();
    let mut phi = vec![0; n];
    for pos in 0..n {
        phi[o1[pos]] = o2[pos];
    }
    let switch = SwitchSet::from_vertices((0..n).filter(|&v| (b1 >> v & 1) != (b2 >> phi[v] & 1)));
    debug_assert!(maps_onto(g1, g2, &phi, switch));
    Ok(Some(IsoWitness {
        mapping: (0..n)
            .map(|v| (g1.label(v).to_string(), g2.label(phi[v]).to_string()))
            .collect(),
        switch: switch.labels(g1),
    }))
}

pub fn switching_isomorphic(g1: &SignedGraph, g2: &SignedGraph) -> Result<bool> {
    Ok(switching_isomorphism(g1, g2)?.is_some())
}

/// Check that switching `g1` at `switch` and relabelling by `phi` gives
/// `g2` as a multigraph.
pub fn maps_onto(g1: &SignedGraph, g2: &SignedGraph, phi: &[VertexId], switch: SwitchSet) -> bool {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let h = g1.switch(switch);
    let mut counts = vec![(0u16, 0u16); n * n];
    for e in h.edges() {
        let (a, b) = (phi[e.u], phi[e.v]);
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let c = &mut counts[a * n + b];
        if e.sign.is_positive() {
            c.0 += 1;
        } else {
            c.1 += 1;
        }
    }
    counts == g2.pair_counts()
}

/// Apply a witness returned by [`switching_isomorphism`].
pub fn witness_holds(g1: &SignedGraph, g2: &SignedGraph, w: &IsoWitness) -> bool {
    let mut phi = vec![usize::MAX; g1.vertex_count()];
    for (a, b) in &w.mapping {
        match (g1.vertex_id(a), g2.vertex_id(b)) {
            (Some(x), Some(y)) => phi[x] = y,
            _ => return false,
        }
    }
    if phi.contains(&usize::MAX) {
        return false;
    }
    match SwitchSet::from_labels(g1, &w.switch) {
        Ok(s) => maps_onto(g1, g2, &phi, s),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Minimum over every permutation and every switching, by brute force.
    fn brute(g: &SignedGraph) -> Vec<u32> {
        let n = g.vertex_count();
        let counts = g.pair_counts();
        let pair = |a: usize, b: usize| {
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            counts[a * n + b]
        };
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<u32>> = None;
        loop {
            for bits in 0u64..1 << n {
                let mut code = Vec::new();
                for j in 0..n {
                    for i in 0..=j {
                        let (a, b) = (perm[i], perm[j]);
                        let (p, q) = pair(a, b);
                        let fl = i != j && ((bits >> a & 1) != (bits >> b & 1));
                        code.push(slot(p, q, fl));
                    }
                }
                if best.as_ref().map_or(true, |b| code < *b) {
                    best = Some(code);
                }
            }
            // next permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        best.unwrap_or_default()
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> SignedGraph {
        let edges: Vec<(usize, usize, Sign)> = (0..m)
            .map(|_| {
                let s = if rng.gen_bool(0.5) { Sign::Positive } else { Sign::Negative };
                (rng.gen_range(0..n), rng.gen_range(0..n), s)
            })
            .collect();
        SignedGraph::from_indexed(n, &edges)
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..150 {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(0..=7);
            let g = random_graph(&mut rng, n, m);
            assert_eq!(canonical_form(&g).unwrap().code, brute(&g), "{}", g.to_sg());
        }
    }

    #[test]
    fn witness_maps_random_relabels() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(2..=9);
            let m = rng.gen_range(n..=2 * n + 3);
            let g = random_graph(&mut rng, n, m);
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let sw = SwitchSet(rng.gen_range(0..1u64 << n));
            let h0 = g.switch(sw);
            let edges: Vec<(usize, usize, Sign)> = h0.edges().iter().rev().map(|e| (perm[e.u], perm[e.v], e.sign)).collect();
            let h = SignedGraph::from_indexed(n, &edges);
            let w = switching_isomorphism(&g, &h).unwrap().expect("isomorphic");
            assert!(witness_holds(&g, &h, &w));
        }
    }

    #[test]
    fn distinguishes_signatures() {
        let bal = SignedGraph::parse_sg("a b +\nb c +\nc a +\n").unwrap();
        let unb = SignedGraph::parse_sg("a b +\nb c +\nc a -\n").unwrap();
        let sw = SignedGraph::parse_sg("a b -\nb c -\nc a +\n").unwrap();
        assert!(!switching_isomorphic(&bal, &unb).unwrap());
        assert!(switching_isomorphic(&bal, &sw).unwrap());
        // loop signs are switching invariant
        let l1 = SignedGraph::parse_sg("v v -\n").unwrap();
        let l2 = SignedGraph::parse_sg("v v +\n").unwrap();
        assert!(!switching_isomorphic(&l1, &l2).unwrap());
    }
}
